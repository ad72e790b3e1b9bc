"""Finite-interval integral equations of convolution type.

f(x) - int_a^b k(x - t) f(t) dt = g(x) splits into a left-running and a
right-running convolution; each half enters through its one-sided kernel
transform evaluated on the matching integration matrix, and the assembled
collocation system (I - K_plus - K_minus) f = g is solved directly, falling
back to least squares when it is numerically rank-deficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import IntervalMap, WeightFamily, build_basis, interpolate
from .intmat import (EigenFactorization, ScalarSymbol, build_integration_matrices,
                     eigen_factorize, matrix_function, scale)
from .report import SolveReport

__all__ = [
    "WienerHopfProblem",
    "WienerHopfResult",
    "solve",
    "truncated_exp_kernel_symbols",
    "exp_kernel_demo",
]

_RANK_CUTOFF = 1e-10


@dataclass(frozen=True)
class WienerHopfProblem:
    """One-sided kernel transforms, right-hand side callable, interval."""

    khat_plus: ScalarSymbol
    khat_minus: ScalarSymbol
    g: object
    imap: IntervalMap


@dataclass(frozen=True)
class WienerHopfResult:
    values: np.ndarray
    residual: float
    nonunique: bool
    sigma_min: float
    sigma_max: float
    alt_sign_values: np.ndarray
    imag_residue: float


def _symbol_matrix(eig: EigenFactorization, symbol: ScalarSymbol, sgn: float) -> np.ndarray:
    """Assemble symbol(sgn * i / C) as a dense matrix through the eigenbasis."""
    return matrix_function(eig, lambda lam: symbol(sgn * 1j / lam))


def solve(problem: WienerHopfProblem, eig_plus: EigenFactorization,
          eig_minus: EigenFactorization) -> WienerHopfResult:
    """Solve the collocated system; diagnostics carry the opposite sign
    convention's solution (I - K+ + K-) for comparison runs."""
    if eig_plus.scaled.side != "+" or eig_minus.scaled.side != "-":
        raise ValueError("need a left-running and a right-running factorization")
    if eig_plus.scaled.imap != problem.imap or eig_minus.scaled.imap != problem.imap:
        raise ValueError("factorization intervals do not match the problem")
    if problem.khat_plus.region not in ("upper", "entire"):
        raise ValueError("plus kernel transform must be analytic above")
    if problem.khat_minus.region not in ("lower", "entire"):
        raise ValueError("minus kernel transform must be analytic below")
    n = eig_plus.values.size
    g = np.asarray(problem.g(eig_plus.scaled.xi), dtype=np.float64)
    k_plus = _symbol_matrix(eig_plus, problem.khat_plus, 1.0)
    k_minus = _symbol_matrix(eig_minus, problem.khat_minus, -1.0)
    system = np.eye(n, dtype=np.complex128) - k_plus - k_minus
    alt_system = np.eye(n, dtype=np.complex128) - k_plus + k_minus
    sigma = np.linalg.svd(system, compute_uv=False)
    s_min, s_max = float(sigma[-1]), float(sigma[0])
    nonunique = s_min < _RANK_CUTOFF * s_max
    if nonunique:
        f = np.linalg.lstsq(system, g.astype(np.complex128), rcond=None)[0]
    else:
        f = np.linalg.solve(system, g.astype(np.complex128))
    alt = np.linalg.lstsq(alt_system, g.astype(np.complex128), rcond=None)[0]
    residual = float(np.max(np.abs(system @ f - g)))
    scale_ = float(np.linalg.norm(f))
    imag_residue = float(np.linalg.norm(f.imag) / scale_) if scale_ > 0 else 0.0
    return WienerHopfResult(f.real.copy(), residual, nonunique, s_min, s_max,
                            alt.real.copy(), imag_residue)


def _expm1_over(z: np.ndarray) -> np.ndarray:
    """(e^{2z} - 1)/z with the removable point filled by its series."""
    z = np.asarray(z, dtype=np.complex128)
    small = np.abs(z) < 1e-4
    safe = np.where(small, 1.0, z)
    out = (np.exp(2.0 * safe) - 1.0) / safe
    series = 2.0 + 2.0 * z + (4.0 / 3.0) * z * z + (2.0 / 3.0) * z ** 3
    return np.where(small, series, out)


def truncated_exp_kernel_symbols():
    """Transforms of the kernel -e^{-x}: the right-running branch over (0, inf)
    and the left-running branch truncated to (-2, 0).

    khat_plus(y) = -1/(1 - iy); khat_minus(y) = -(e^{2(1-iy)} - 1)/(1 - iy),
    which is entire (the 1 - iy = 0 point is removable). Both carry the sign
    of the defining integrals int k(+-s) e^{-+isy} ds over the half-line; the
    kernel is negative, so both transforms are -(e^2 - 1) and -1 at y = 0.
    """
    plus = ScalarSymbol(lambda y: -1.0 / (1.0 - 1j * np.asarray(y)), "upper",
                        "exp_kernel_plus")
    minus = ScalarSymbol(lambda y: -_expm1_over(1.0 - 1j * np.asarray(y)), "entire",
                         "exp_kernel_minus")
    return plus, minus


def _demo_g(t):
    t = np.asarray(t, dtype=np.float64)
    return 2.0 * math.exp(-0.5) * t * np.exp(t * t - t)


def _demo_exact(t):
    t = np.asarray(t, dtype=np.float64)
    return _demo_g(t) - math.sinh(0.5) * np.exp(-t)


def exp_kernel_demo(n: int = 5, fine_points: int = 100, a: float = 0.0,
                    b: float = 1.0) -> SolveReport:
    """The solvable benchmark: g chosen so that f(t) = g(t) - sinh(1/2) e^{-t}."""
    imap = IntervalMap(a, b)
    bas = build_basis(WeightFamily.legendre(), n)
    mats = build_integration_matrices(bas)
    eig_plus = eigen_factorize(scale(mats, "+", imap))
    eig_minus = eigen_factorize(scale(mats, "-", imap))
    khat_plus, khat_minus = truncated_exp_kernel_symbols()
    problem = WienerHopfProblem(khat_plus, khat_minus, _demo_g, imap)
    result = solve(problem, eig_plus, eig_minus)
    xi = eig_plus.scaled.xi
    fine = np.linspace(a, b, fine_points)
    meta = {"exact_kind": "closed_form",
            "residual": result.residual,
            "nonunique": result.nonunique,
            "sigma_min": result.sigma_min, "sigma_max": result.sigma_max,
            "imag_residue": result.imag_residue,
            "alt_sign_error": float(np.abs(result.alt_sign_values
                                           - _demo_exact(xi)).max())}
    return SolveReport("wiener_hopf", n, a, b, xi, _demo_exact(xi), result.values,
                       fine, _demo_exact(fine),
                       interpolate(bas, imap, result.values, fine), meta)
