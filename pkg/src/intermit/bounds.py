"""Converse bounds for intermittent communication: genie-aided upper bounds
built from the insertion-channel capacity loss, and capacity per unit cost
with its pulse-position lower bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .insertion import insertion_loss
from .prob import Dmc, kl_divergence


@dataclass(frozen=True)
class GenieBoundConfig:
    """Parameters of the block-position genie: the receiver learns output
    block boundaries spanning s+1 codeword symbols each; spans longer than
    b_max are truncated into the closing correction term."""

    s: int
    b_max: int
    alpha: float

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("genie span s must be >= 1")
        if self.b_max < self.s:
            raise ValueError("b_max must be >= s")
        if not self.alpha >= 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")

    @property
    def p_t(self) -> float:
        return 1.0 / self.alpha


def z_pmf(z: int, s: int, p_t: float) -> float:
    """P(genie block span = z): the span covering s+1 codeword symbols equals
    z = b+1 with probability C(b, s) p_t^{s+1} (1-p_t)^{b-s}, for z >= s+1.

    Mean (s+1)/p_t."""
    if s < 1:
        raise ValueError("genie span s must be >= 1")
    if not 0.0 < p_t <= 1.0:
        raise ValueError("p_t must lie in (0, 1]")
    if z < s + 1:
        raise ValueError(f"block span z={z} is below its minimum {s + 1}")
    b = z - 1
    return float(math.comb(b, s) * (1.0 - p_t) ** (b - s) * p_t ** (s + 1))


def z_quantile(s: int, p_t: float, tail: float = 1e-12) -> int:
    """Smallest z with P(span > z) <= tail (negative-binomial tail)."""
    if p_t >= 1.0:
        return s + 1
    extra = stats.nbinom.ppf(1.0 - tail, s + 1, p_t)
    return int(extra) + s + 1


def c1_upper(cfg: GenieBoundConfig, *, allow_large: bool = False) -> float:
    """Genie-aided upper bound on the rate (bits per codeword symbol) from
    revealing block positions:

        1 - phi(s, b_max)/(s+1)
          + (1/(s+1)) sum_{b=s}^{b_max} C(b,s) p^{s+1} (1-p)^{b-s}
                                        (phi(s, b_max) - phi(s, b)),

    where phi is the insertion-channel capacity loss and p = 1/alpha."""
    p = cfg.p_t
    phi_max = insertion_loss(cfg.s, cfg.b_max, allow_large=allow_large)
    acc = 0.0
    for b in range(cfg.s, cfg.b_max + 1):
        w = math.comb(b, cfg.s) * p ** (cfg.s + 1) * (1.0 - p) ** (b - cfg.s)
        acc += w * (phi_max - insertion_loss(cfg.s, b, allow_large=allow_large))
    return 1.0 - phi_max / (cfg.s + 1) + acc / (cfg.s + 1)


def c1_limit(s: int, b_max: int, *, allow_large: bool = False) -> float:
    """alpha -> infinity limit of `c1_upper`: 1 - phi(s, b_max)/(s+1)."""
    if s < 1 or b_max < s:
        raise ValueError("need 1 <= s <= b_max")
    return 1.0 - insertion_loss(s, b_max, allow_large=allow_large) / (s + 1)


def c2_upper(s: int, alpha: float, *, allow_large: bool = False) -> float:
    """Genie-aided upper bound from revealing per-block codeword-symbol
    counts:

        1 - (1/(s p)) sum_{a=0}^{s} C(s,a) p^a (1-p)^{s-a} phi(a, s),

    with p = 1/alpha."""
    if s < 1:
        raise ValueError("genie span s must be >= 1")
    if not alpha >= 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    p = 1.0 / alpha
    acc = 0.0
    # the a = 0 term carries no loss: an empty block reveals nothing to lose
    for a in range(1, s + 1):
        w = math.comb(s, a) * p ** a * (1.0 - p) ** (s - a)
        acc += w * insertion_loss(a, s, allow_large=allow_large)
    return 1.0 - acc / (s * p)


@dataclass(frozen=True)
class CostModel:
    """Per-symbol transmission costs; the designated noise symbol is free."""

    gamma: np.ndarray
    star: int

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float)
        if g.ndim != 1 or g.size == 0:
            raise ValueError("cost vector must be a nonempty 1-D vector")
        if g.min() < 0.0:
            raise ValueError("costs must be nonnegative")
        if not 0 <= self.star < g.size:
            raise ValueError(f"star index {self.star} out of range")
        if g[self.star] != 0.0:
            raise ValueError("the noise symbol must have zero cost")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)


@dataclass(frozen=True)
class CostCapacityBound:
    """A capacity-per-unit-cost bound (bits per unit cost) with the symbol
    attaining it.  Symbols that carry information at zero cost make the bound
    infinite; they are listed in `degenerate_symbols` rather than silently
    absorbed into the max."""

    value: float
    best_symbol: int | None
    per_symbol: tuple
    degenerate_symbols: tuple


def _ratio_bound(w: Dmc, cost: CostModel, numerator) -> CostCapacityBound:
    if w.input_size != cost.gamma.size:
        raise ValueError("cost vector does not match channel input size")
    if cost.star != w.star:
        raise ValueError("cost model and channel disagree on the noise symbol")
    ratios = []
    degenerate = []
    for x in range(w.input_size):
        if x == cost.star:
            ratios.append(0.0)
            continue
        d = numerator(x)
        if cost.gamma[x] == 0.0:
            if d > 0.0:
                degenerate.append(x)
                ratios.append(math.inf)
            else:
                ratios.append(0.0)
        else:
            ratios.append(d / cost.gamma[x])
    best = int(np.argmax(ratios))
    return CostCapacityBound(
        value=float(ratios[best]),
        best_symbol=best if ratios[best] > 0.0 else None,
        per_symbol=tuple(ratios),
        degenerate_symbols=tuple(degenerate),
    )


def cpuc_upper(w: Dmc, cost: CostModel) -> CostCapacityBound:
    """Capacity per unit cost of the intermittent channel is at most
    max_{x != star} D(W_x || W_star) / gamma(x)  (bits per unit cost)."""
    star_row = w.star_row()
    return _ratio_bound(w, cost, lambda x: kl_divergence(w.rows[x], star_row))


def cpuc_lower(w: Dmc, cost: CostModel, alpha: float) -> CostCapacityBound:
    """Achievable capacity per unit cost via bursty pulse-position modulation:

        (alpha/2) max_{x != star} D( W_x/alpha + (1-1/alpha) W_star || W_star )
                                   / gamma(x).

    Equals half the upper bound at alpha = 1."""
    if not alpha >= 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    star_row = w.star_row()

    def num(x: int) -> float:
        mix = w.rows[x] / alpha + (1.0 - 1.0 / alpha) * star_row
        return (alpha / 2.0) * kl_divergence(mix, star_row)

    return _ratio_bound(w, cost, num)


def ppm_burst_length(w: Dmc, cost: CostModel, alpha: float, n_messages: int) -> float:
    """Burst length (symbols) of the pulse-position scheme behind
    `cpuc_lower`: 2 log2(M) / (alpha * D(mix || W_star)) at the maximizing
    symbol.  Infinite when the channel cannot distinguish any paid symbol
    from noise."""
    if n_messages < 2:
        raise ValueError("need at least two messages")
    lower = cpuc_lower(w, cost, alpha)
    if lower.best_symbol is None:
        return math.inf
    x = lower.best_symbol
    mix = w.rows[x] / alpha + (1.0 - 1.0 / alpha) * w.star_row()
    d = kl_divergence(mix, w.star_row())
    if d <= 0.0:
        return math.inf
    return 2.0 * math.log2(n_messages) / (alpha * d)
