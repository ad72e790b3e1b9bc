import math

import numpy as np
import pytest

from intop.basis import IntervalMap, WeightFamily, build_basis
from intop.errors import NumericalError
from intop.intmat import build_integration_matrices, eigen_factorize, scale
from intop.verify import (check_derivative_range, check_half_line_pairing,
                          check_integral_chain, check_norm_bound,
                          check_positivity_identity, conjecture_scan,
                          numerical_range_sample, verify_suite)


def test_positivity_identity_complex_sample():
    rep = check_positivity_identity(
        lambda x: np.exp(1j * x) * (1.0 + x), (0.0, 1.5))
    assert rep.passed, (rep.lhs, rep.rhs)
    assert rep.lhs >= -1e-9


def test_positivity_identity_zero_mean_sample():
    # total integral 0 makes the right side exactly 0; the pairing's real
    # part must vanish too
    rep = check_positivity_identity(lambda x: np.cos(math.pi * x), (0.0, 2.0))
    assert rep.rhs < 1e-15
    assert abs(rep.lhs) < 1e-9


def test_norm_bound_on_random_polynomials():
    rep = check_norm_bound(12, (0.0, 1.0), seed=5)
    assert rep.max_ratio <= rep.bound + 1e-10
    assert len(rep.ratios) == 12 and rep.skipped == 0


def test_norm_bound_near_saturation():
    # cos(pi x/2) is the extremal input on (0, 1) with ratio 2/pi; a
    # polynomial stand-in must come close but stay under the bound
    xs = np.linspace(0.0, 1.0, 40)
    coeffs = np.polynomial.polynomial.polyfit(xs, np.cos(0.5 * math.pi * xs),
                                              9)
    rep = check_norm_bound(1, (0.0, 1.0), include=(coeffs,))
    assert rep.ratios[0] == pytest.approx(2.0 / math.pi, abs=1e-4)
    assert rep.ratios[0] <= rep.bound + 1e-10


def test_norm_bound_skips_zero_polynomial():
    rep = check_norm_bound(1, (0.0, 1.0), include=(np.zeros(3),))
    assert rep.skipped == 1
    with pytest.raises(ValueError):
        check_norm_bound(0, (0.0, 1.0))


def test_derivative_range_identity():
    f = lambda x: np.sin(x) * np.exp(1j * x)
    fp = lambda x: np.cos(x) * np.exp(1j * x) + 1j * f(x)
    rep = check_derivative_range(f, fp, (0.0, 1.2))
    assert rep.passed
    with pytest.raises(ValueError):
        check_derivative_range(lambda x: np.cos(x), lambda x: -np.sin(x),
                               (0.0, 1.0))


def test_half_line_pairing_exponential():
    rep = check_half_line_pairing(lambda y: np.exp(-y))
    assert rep.converged
    assert rep.re_target == pytest.approx(-math.pi / 4.0, abs=1e-12)
    assert rep.im_target == pytest.approx(0.5, abs=1e-12)
    re_errs = [r.re_err for r in rep.rows]
    im_errs = [r.im_err for r in rep.rows]
    assert re_errs == sorted(re_errs, reverse=True)
    assert im_errs == sorted(im_errs, reverse=True)
    # truncation error decays like 1/T, so T = 16 sits near 1e-4 / 1e-3
    assert re_errs[-1] < 1e-3 and im_errs[-1] < 1e-2


def test_half_line_pairing_linear_weighted():
    rep = check_half_line_pairing(lambda y: y * np.exp(-y))
    assert rep.converged
    assert rep.re_target == pytest.approx(-3.0 * math.pi / 8.0, abs=1e-12)
    assert rep.im_target == pytest.approx(0.5, abs=1e-12)


def test_integral_chain_flat_example():
    rep = check_integral_chain(lambda x: np.ones_like(np.asarray(x)),
                               None, (0.0, 2.0))
    assert rep.passed
    assert rep.lhs == pytest.approx(2.0, abs=1e-8)
    assert rep.mid == pytest.approx(4.0, abs=1e-8)
    assert rep.rhs == pytest.approx(8.0, abs=1e-8)


def test_integral_chain_with_weight_object():
    rep = check_integral_chain(lambda x: np.cos(x),
                               WeightFamily.chebyshev_first(), (0.0, 1.0))
    assert rep.passed
    assert rep.lhs <= rep.mid <= rep.rhs


def test_conjecture_scan_legendre():
    rep = conjecture_scan(WeightFamily.legendre(), 12)
    assert rep.min_re_overall > 0.0
    assert not rep.violations and not rep.inconclusive
    assert len(rep.per_n) == 12
    payload = rep.to_payload()
    assert payload["family"] == "legendre"
    assert payload["per_n"][0]["n"] == 1
    # n = 1: single eigenvalue is the lone quadrature entry A+ = [1]
    assert payload["per_n"][0]["eigs"][0][0] == pytest.approx(1.0, abs=1e-14)


def test_conjecture_scan_other_families_record_only():
    for fam in (WeightFamily.chebyshev_first(), WeightFamily.jacobi(0.3, -0.4)):
        rep = conjecture_scan(fam, 8)
        assert rep.min_re_overall > 0.0
        assert not rep.violations


def test_numerical_range_contains_spectrum():
    bas = build_basis(WeightFamily.legendre(), 6)
    scaled = scale(build_integration_matrices(bas), "+", IntervalMap(0.0, 1.0))
    sample = numerical_range_sample(scaled, samples=400, seed=9)
    assert sample.contained
    assert sample.points.shape == (400 + 6,)
    again = numerical_range_sample(scaled, samples=400, seed=9)
    np.testing.assert_array_equal(sample.points, again.points)


def test_numerical_range_single_node():
    # n = 1 on (0, 1): the matrix is the scalar (1/2) * 1, so the whole
    # cloud sits on one point
    bas = build_basis(WeightFamily.legendre(), 1)
    scaled = scale(build_integration_matrices(bas), "+", IntervalMap(0.0, 1.0))
    sample = numerical_range_sample(scaled, samples=50, seed=2)
    assert sample.contained
    assert sample.min_re == pytest.approx(0.5, abs=1e-12)


def test_numerical_range_goes_left_of_zero_at_moderate_n():
    # the Rayleigh cloud pokes into the left half-plane even though every
    # eigenvalue stays to the right; recorded, not asserted away
    bas = build_basis(WeightFamily.legendre(), 5)
    scaled = scale(build_integration_matrices(bas), "+", IntervalMap(-1.0, 1.0))
    sample = numerical_range_sample(scaled, samples=2000, seed=20137)
    assert sample.min_re < 0.0


def test_verify_suite_small_run():
    out = verify_suite(samples=8, seed=123)
    assert out["all_passed"]
    for key in ("positivity_identity", "norm_bound", "derivative_range",
                "half_line_pairing", "integral_chain", "spectrum_scan",
                "numerical_range"):
        assert key in out, key
    assert out["seed"] == 123 and out["samples"] == 8
