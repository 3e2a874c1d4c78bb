"""Partial divergence: closed form, tilting constant, grid oracle."""

import numpy as np
import pytest

from intermit import (
    convexity_lower_bound,
    kl_divergence,
    mismatch_exponent,
    partial_divergence,
    partial_divergence_deriv,
    tilting_constant,
)

P4 = np.full(4, 0.25)
Q1 = np.array([0.1, 0.1, 0.1, 0.7])
PAIRS = [
    (np.array([0.5, 0.5]), np.array([0.25, 0.75])),
    (np.array([0.2, 0.8]), np.array([0.6, 0.4])),
    (P4, Q1),
    (np.array([0.5, 0.3, 0.2]), np.array([0.2, 0.3, 0.5])),
]


def test_rho_zero_is_exactly_zero():
    for p, q in PAIRS:
        assert partial_divergence(p, q, 0.0).value == 0.0


def test_rho_one_equals_kl_exactly():
    for p, q in PAIRS:
        assert partial_divergence(p, q, 1.0).value == kl_divergence(p, q)


def test_identical_distributions_give_zero_everywhere():
    p = np.array([0.3, 0.45, 0.25])
    for rho in np.linspace(0.01, 0.99, 33):
        r = partial_divergence(p, p, rho)
        assert abs(r.value) < 1e-12
        # optimal tilt for p == q is rho/(1-rho)
        assert r.tilt == pytest.approx(rho / (1.0 - rho), abs=1e-10)


def test_tilt_exceeds_trivial_value_when_distinct():
    for p, q in PAIRS:
        c = tilting_constant(p, q, 0.4)
        assert c > 0.4 / 0.6 + 1e-6


def test_tilting_constant_validates_input():
    with pytest.raises(ValueError):
        tilting_constant([0.5, 0.5], [1.0, 0.0], 0.3)
    with pytest.raises(ValueError):
        tilting_constant([0.5, 0.5], [0.5, 0.5], 0.0)
    with pytest.raises(ValueError):
        tilting_constant([0.5, 0.5], [0.5, 0.5], 1.0)


def test_monotone_convex_bounded():
    rhos = np.linspace(0.0, 1.0, 101)
    for p, q in PAIRS:
        d_full = kl_divergence(p, q)
        vals = np.array([partial_divergence(p, q, r).value for r in rhos])
        assert np.all(np.diff(vals) >= -1e-9)
        assert np.all(np.diff(vals, 2) >= -1e-9)
        assert np.all(vals >= -1e-12)
        assert np.all(vals <= rhos * d_full + 1e-9)


def test_derivative_matches_finite_difference():
    h = 1e-6
    for p, q in PAIRS:
        for rho in (0.1, 0.35, 0.6, 0.9):
            an = partial_divergence_deriv(p, q, rho)
            fd = (
                partial_divergence(p, q, rho + h).value
                - partial_divergence(p, q, rho - h).value
            ) / (2 * h)
            assert abs(an - fd) <= 1e-6 * max(1.0, abs(an))
            assert an >= -1e-9


def test_mixture_bound_is_a_lower_bound():
    for p, q in PAIRS:
        for rho in np.linspace(0.05, 0.95, 19):
            lb = convexity_lower_bound(p, q, rho)
            val = partial_divergence(p, q, rho).value
            assert lb <= val + 1e-9


def test_closed_form_matches_grid_oracle():
    for p, q in PAIRS:
        for rho in (0.2, 0.5, 0.8):
            closed = partial_divergence(p, q, rho)
            assert closed.method == "closed-form"
            oracle = mismatch_exponent(p, q, p, rho)
            assert closed.value == pytest.approx(oracle, abs=1e-4)


def test_oracle_endpoints():
    p = np.array([0.5, 0.3, 0.2])
    q = np.array([0.2, 0.3, 0.5])
    qa = np.array([0.4, 0.4, 0.2])
    assert mismatch_exponent(p, q, qa, 0.0) == pytest.approx(kl_divergence(p, qa), abs=1e-12)
    assert mismatch_exponent(p, q, qa, 1.0) == pytest.approx(kl_divergence(p, q), abs=1e-12)


def test_zero_entry_reference_uses_oracle_path():
    p = np.array([0.5, 0.5])
    q = np.array([1.0, 0.0])
    r = partial_divergence(p, q, 0.3)
    assert r.method == "oracle"
    assert np.isfinite(r.value)
    # mass on supp(q) is 0.5, so rho beyond it is infeasible
    assert partial_divergence(p, q, 0.7).value == np.inf


def test_point_mass_reference_value():
    # with q = point mass at symbol 0, the split must put rho * P1 = rho * delta_0,
    # leaving P2 = (p - rho*delta_0)/(1-rho); the exponent is (1-rho) D(P2 || p).
    p = np.array([0.5, 0.5])
    rho = 0.3
    p2 = np.array([0.5 - rho, 0.5]) / (1.0 - rho)
    expect = (1.0 - rho) * kl_divergence(p2, p)
    assert partial_divergence(p, np.array([1.0, 0.0]), rho).value == pytest.approx(
        expect, abs=1e-9
    )
