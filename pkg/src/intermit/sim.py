"""Monte-Carlo simulation of the intermittent channel.

The transmitter sends k codeword symbols, each preceded by an independent
Geometric0(1/alpha) run of noise symbols (the designated `star` input), so
the received length N is negative-binomial with mean alpha*k and the block
ends with the last codeword symbol.  Decoders: a two-message zero-rate
typicality test, exhaustive unique-typicality over all transmission-instant
patterns, and the two-stage pattern decoder.

Every trial draws from its own np.random.default_rng([seed, trial]) stream,
so results are reproducible independently of batching or worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import SizeGuardError
from .prob import Dmc, is_cond_typical, is_typical, kl_divergence

ENUM_GUARD = 1_000_000  # max number of instant patterns a decoder may scan


@dataclass(frozen=True)
class SimConfig:
    k: int
    alpha: float
    trials: int
    seed: int
    mu: float = 0.05
    epsilon: float = 0.2

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("codeword length k must be >= 1")
        if not self.alpha >= 1.0:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.mu <= 0.0:
            raise ValueError("typicality slack mu must be positive")
        if self.epsilon <= 0.0:
            raise ValueError("length-gate slack epsilon must be positive")

    @property
    def p_t(self) -> float:
        return 1.0 / self.alpha


@dataclass(frozen=True)
class TrialOutcome:
    n_received: int
    decoded: int | None  # None = no message declared
    choices_examined: int


@dataclass(frozen=True)
class SimResult:
    """Aggregate Monte-Carlo outcome with a Wilson 95% interval on the error
    rate."""

    error_rate: float
    ci_low: float
    ci_high: float
    errors: int
    trials: int
    mean_n: float
    outcomes: tuple


@dataclass(frozen=True)
class DecodeResult:
    message: int | None
    choices_examined: int
    second_stage_checks: int
    typicality_checks: int


def transmit_intermittent(codeword, alpha: float, star: int, rng,
                          *, leading_and_trailing: bool = False) -> np.ndarray:
    """Spread a codeword over a noise-padded block.

    Draws an independent Geometric0(1/alpha) number of `star` symbols before
    each codeword symbol (and after the last one too when
    `leading_and_trailing` is set, which models a trailing listening window).
    The codeword always appears as a subsequence, in order; at alpha = 1 the
    output is the codeword itself.
    """
    if not alpha >= 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    cw = np.asarray(codeword, dtype=np.int64)
    k = cw.size
    if k == 0:
        raise ValueError("codeword must be nonempty")
    p = 1.0 / alpha
    gaps = rng.geometric(p, size=k) - 1
    out = np.full(k + int(gaps.sum()), star, dtype=np.int64)
    out[np.cumsum(gaps) + np.arange(k)] = cw
    if leading_and_trailing:
        trail = int(rng.geometric(p) - 1)
        if trail:
            out = np.concatenate([out, np.full(trail, star, dtype=np.int64)])
    return out


def sample_receive_lengths(k: int, alpha: float, trials: int, rng) -> np.ndarray:
    """Received lengths N for `trials` independent transmissions, drawn
    through the same per-symbol geometric-gap mechanism as the transmitter."""
    if not alpha >= 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    gaps = rng.geometric(1.0 / alpha, size=(trials, k)) - 1
    return k + gaps.sum(axis=1)


def negbinom_pmf(n: int, k: int, p_t: float) -> float:
    """P(N = n) for the received length: C(n-1, k-1) p_t^k (1-p_t)^{n-k},
    n >= k.  Mean k/p_t = alpha*k."""
    if k < 1:
        raise ValueError("codeword length k must be >= 1")
    if not 0.0 < p_t <= 1.0:
        raise ValueError("p_t must lie in (0, 1]")
    if n < k:
        raise ValueError(f"received length n={n} is below the codeword length {k}")
    return float(math.comb(n - 1, k - 1) * p_t ** k * (1.0 - p_t) ** (n - k))


def apply_dmc(x, w: Dmc, rng) -> np.ndarray:
    """Push a symbol sequence through the channel, one output draw per input
    symbol."""
    xs = np.asarray(x, dtype=np.int64)
    if xs.size == 0:
        return xs.copy()
    cum = np.cumsum(w.rows, axis=1)[xs]
    u = rng.random(xs.size)
    return np.minimum((u[:, None] > cum).sum(axis=1), w.output_size - 1)


def wilson_interval(errors: int, trials: int, z: float = 1.96):
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    phat = errors / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials)) / denom
    return max(center - half, 0.0), min(center + half, 1.0)


def best_distinguishing_symbol(w: Dmc) -> int:
    """The input maximizing D(W_star || W_x): the symbol whose absence is
    easiest to detect against noise.  Errors out when no input differs from
    the noise row (a channel on which signalling is hopeless)."""
    star_row = w.star_row()
    best, best_d = None, 0.0
    for x in range(w.input_size):
        if x == w.star:
            continue
        d = kl_divergence(star_row, w.rows[x])
        if d > best_d:
            best, best_d = x, d
    if best is None:
        raise ValueError("degenerate channel: every input looks like the noise symbol")
    return best


def zero_rate_codebook(w: Dmc, k: int) -> np.ndarray:
    """Two-message codebook: message 0 stays silent (all star), message 1
    repeats the best distinguishing symbol."""
    x = best_distinguishing_symbol(w)
    return np.vstack([np.full(k, w.star, dtype=np.int64), np.full(k, x, dtype=np.int64)])


def decode_zero_rate(y, w: Dmc, cfg: SimConfig) -> int | None:
    """Two-message zero-rate decision: declare an error when the received
    length leaves the [alpha-eps, alpha+eps] band, otherwise answer 0 iff the
    whole block is typical for the noise output."""
    ys = np.asarray(y, dtype=np.int64)
    if abs(ys.size / cfg.k - cfg.alpha) > cfg.epsilon:
        return None
    return 0 if is_typical(ys, w.star_row(), cfg.mu) else 1


def _pattern_iter(n: int, k: int):
    count = math.comb(n, k)
    if count > ENUM_GUARD:
        raise SizeGuardError(
            f"C({n},{k}) = {count} instant patterns exceed the enumeration guard {ENUM_GUARD}"
        )
    return combinations(range(n), k)


def decode_exhaustive(y, k: int, codebook, w: Dmc, mu: float) -> DecodeResult:
    """Scan every k-subset of output instants and declare the unique message
    that admits a conditionally typical arrangement; ambiguity (two distinct
    messages each witnessed by some subset) or no witness at all is an error
    (message None)."""
    ys = np.asarray(y, dtype=np.int64)
    cb = np.asarray(codebook, dtype=np.int64)
    examined = 0
    checks = 0
    witnessed: list = []
    for pattern in _pattern_iter(ys.size, k):
        examined += 1
        ysub = ys[list(pattern)]
        for m in range(cb.shape[0]):
            if m in witnessed:
                continue
            checks += 1
            if is_cond_typical(ysub, cb[m], w, mu):
                witnessed.append(m)
                if len(witnessed) > 1:
                    return DecodeResult(None, examined, 0, checks)
    message = witnessed[0] if len(witnessed) == 1 else None
    return DecodeResult(message, examined, 0, checks)


def decode_pattern(y, k: int, codebook, w: Dmc, mu: float, input_dist) -> DecodeResult:
    """Two-stage decoder: a subset enters the second (codeword-matching)
    stage only if its subsequence is typical for the output marginal PW and
    the remaining symbols are typical for the noise output.  As with the
    exhaustive decoder, success requires a unique witnessed message."""
    ys = np.asarray(y, dtype=np.int64)
    cb = np.asarray(codebook, dtype=np.int64)
    pvec = np.asarray(
        input_dist.probs if hasattr(input_dist, "probs") else input_dist, dtype=float
    )
    pw = pvec @ w.rows
    star_row = w.star_row()
    examined = 0
    second = 0
    checks = 0
    witnessed: list = []
    mask = np.ones(ys.size, dtype=bool)
    for pattern in _pattern_iter(ys.size, k):
        examined += 1
        idx = list(pattern)
        ysub = ys[idx]
        mask[:] = True
        mask[idx] = False
        if not (is_typical(ysub, pw, mu) and is_typical(ys[mask], star_row, mu)):
            continue
        second += 1
        for m in range(cb.shape[0]):
            if m in witnessed:
                continue
            checks += 1
            if is_cond_typical(ysub, cb[m], w, mu):
                witnessed.append(m)
                if len(witnessed) > 1:
                    return DecodeResult(None, examined, second, checks)
    message = witnessed[0] if len(witnessed) == 1 else None
    return DecodeResult(message, examined, second, checks)


def monte_carlo_error(scheme: str, cfg: SimConfig, w: Dmc, *, n_messages: int = 2,
                      codebook=None, input_dist=None, keep_outcomes: bool = True,
                      leading_and_trailing: bool = False) -> SimResult:
    """Estimate the decoding error probability of a scheme by independent
    trials.

    scheme: "zero_rate", "exhaustive", or "pattern".  Messages cycle
    deterministically over trials.  For the pattern/exhaustive schemes a
    fresh codebook is drawn i.i.d. `input_dist` per trial unless a fixed
    `codebook` is supplied; `input_dist` defaults to uniform.
    """
    if scheme not in ("zero_rate", "exhaustive", "pattern"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if w.star is None:
        raise ValueError("channel must designate a noise input (star)")
    if scheme == "zero_rate":
        fixed_cb = zero_rate_codebook(w, cfg.k)
    else:
        fixed_cb = None if codebook is None else np.asarray(codebook, dtype=np.int64)
        if fixed_cb is not None and fixed_cb.shape[1] != cfg.k:
            raise ValueError("codebook width must equal the codeword length k")
    n_msg = 2 if scheme == "zero_rate" else (
        fixed_cb.shape[0] if fixed_cb is not None else n_messages
    )
    pvec = np.full(w.input_size, 1.0 / w.input_size) if input_dist is None else np.asarray(
        input_dist.probs if hasattr(input_dist, "probs") else input_dist, dtype=float
    )

    errors = 0
    total_n = 0
    outcomes = []
    for t in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, t])
        m = t % n_msg
        if fixed_cb is None:
            cb = rng.choice(w.input_size, size=(n_msg, cfg.k), p=pvec)
        else:
            cb = fixed_cb
        x = transmit_intermittent(cb[m], cfg.alpha, w.star, rng,
                                  leading_and_trailing=leading_and_trailing)
        y = apply_dmc(x, w, rng)
        if scheme == "zero_rate":
            decoded = decode_zero_rate(y, w, cfg)
            examined = 1
        elif scheme == "exhaustive":
            res = decode_exhaustive(y, cfg.k, cb, w, cfg.mu)
            decoded, examined = res.message, res.choices_examined
        else:
            res = decode_pattern(y, cfg.k, cb, w, cfg.mu, pvec)
            decoded, examined = res.message, res.choices_examined
        if decoded != m:
            errors += 1
        total_n += int(y.size)
        if keep_outcomes:
            outcomes.append(TrialOutcome(int(y.size), decoded, examined))
    lo, hi = wilson_interval(errors, cfg.trials)
    return SimResult(
        error_rate=errors / cfg.trials,
        ci_low=lo,
        ci_high=hi,
        errors=errors,
        trials=cfg.trials,
        mean_n=total_n / cfg.trials,
        outcomes=tuple(outcomes),
    )


def enumerate_exact_error(k: int, n: int, codebook, w: Dmc, mu: float,
                          input_dist=None) -> dict:
    """Exact decoder error probabilities on a deterministic channel,
    conditioned on received length n, by enumerating all C(n-1, k-1) equally
    likely instant patterns (the block always ends with the last codeword
    symbol).  Returns exact Fractions keyed by decoder name."""
    if w.star is None:
        raise ValueError("channel must designate a noise input (star)")
    rows = w.rows
    if not np.all(rows.max(axis=1) == 1.0):
        raise ValueError("exact enumeration requires a deterministic channel")
    outmap = rows.argmax(axis=1)
    cb = np.asarray(codebook, dtype=np.int64)
    if cb.shape[1] != k:
        raise ValueError("codebook width must equal the codeword length k")
    if n < k:
        raise ValueError("received length n must be at least k")
    pvec = np.full(w.input_size, 1.0 / w.input_size) if input_dist is None else np.asarray(
        input_dist.probs if hasattr(input_dist, "probs") else input_dist, dtype=float
    )
    n_msg = cb.shape[0]
    total = math.comb(n - 1, k - 1)
    err = {"exhaustive": 0, "pattern": 0}
    for m in range(n_msg):
        for front in combinations(range(n - 1), k - 1):
            idx = list(front) + [n - 1]
            x = np.full(n, w.star, dtype=np.int64)
            x[idx] = cb[m]
            y = outmap[x]
            if decode_exhaustive(y, k, cb, w, mu).message != m:
                err["exhaustive"] += 1
            if decode_pattern(y, k, cb, w, mu, pvec).message != m:
                err["pattern"] += 1
    return {name: Fraction(e, n_msg * total) for name, e in err.items()}
