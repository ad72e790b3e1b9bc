"""Collocated one-sided integration matrices and matrix functions of them.

The plus matrix carries entries int_{-1}^{x_j} ell_k(x) w(x) dx (running
integral from the left endpoint), the minus matrix int_{x_j}^{1} (to the
right endpoint). Applied to node values they reproduce the one-sided
indefinite integrals of the interpolant, and rescaled to an interval (a, b)
they act as the discrete indefinite-integration operators there; analytic
functions of those operators are evaluated through the eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import (IntervalMap, QuadratureBasis, WeightFamily, barycentric_weights,
                    build_basis, _barycentric_matrix)
from .errors import IllConditionedError, PoleEvaluationError, QuadratureAccuracyError

__all__ = [
    "IntegrationMatrices",
    "ScaledMatrix",
    "EigenFactorization",
    "ScalarSymbol",
    "build_integration_matrices",
    "scale",
    "eigen_factorize",
    "matrix_apply",
    "matrix_function",
    "apply_real",
]

_ENTRY_TOL = 1e-13
_MAX_RULE = 4096
_COND_LIMIT = 1e8


@dataclass(frozen=True)
class IntegrationMatrices:
    """The pair of one-sided matrices on (-1, 1) for one basis."""

    basis: QuadratureBasis
    plus: np.ndarray
    minus: np.ndarray

    def side(self, s: str) -> np.ndarray:
        if s == "+":
            return self.plus
        if s == "-":
            return self.minus
        raise ValueError("side must be '+' or '-'")


@dataclass(frozen=True)
class ScaledMatrix:
    """One side rescaled to a physical interval: C = half_length * A_side.

    xi holds the mapped collocation points; source keeps the reference pair
    so derived solvers (segment restarts) can rescale again.
    """

    source: IntegrationMatrices
    side: str
    imap: IntervalMap
    C: np.ndarray
    xi: np.ndarray

    @property
    def basis(self) -> QuadratureBasis:
        return self.source.basis


@dataclass(frozen=True)
class EigenFactorization:
    """Spectral data of a scaled matrix, deterministically normalized."""

    scaled: ScaledMatrix
    values: np.ndarray
    vectors: np.ndarray
    inverse: np.ndarray
    cond: float


@dataclass(frozen=True)
class ScalarSymbol:
    """A scalar evaluation rule plus the half/whole plane it is analytic on.

    region is one of 'upper', 'lower', 'right', 'entire'; convolution sides
    check it before composing the rule with their eigenvalue transform.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    region: str
    name: str = ""

    def __post_init__(self):
        if self.region not in ("upper", "lower", "right", "entire"):
            raise ValueError(f"unknown analyticity region {self.region!r}")

    def __call__(self, z):
        return self.fn(z)


def _one_sided(basis: QuadratureBasis, side: str, m: int) -> np.ndarray:
    """Row j: the m-point sub-rule integral over (-1, x_j) or (x_j, 1).

    The endpoint weight factor is folded into a Gauss rule of the matching
    one-sided Jacobi family, so singular exponents cost nothing in accuracy;
    the remaining smooth factor rides along in the integrand.
    """
    fam = basis.family
    x = basis.nodes
    if side == "+":
        rule = build_basis(WeightFamily.jacobi(0.0, fam.beta), m)
        span = 0.5 * (x + 1.0)
        pts = -1.0 + span[:, None] * (rule.nodes + 1.0)[None, :]
        smooth = (1.0 - pts) ** fam.alpha
        pref = span ** (fam.beta + 1.0)
    else:
        rule = build_basis(WeightFamily.jacobi(fam.alpha, 0.0), m)
        span = 0.5 * (1.0 - x)
        pts = 1.0 - span[:, None] * (1.0 - rule.nodes)[None, :]
        smooth = (1.0 + pts) ** fam.beta
        pref = span ** (fam.alpha + 1.0)
    bw = barycentric_weights(x)
    card = _barycentric_matrix(x, bw, pts.ravel()).reshape(basis.n, m, basis.n)
    rows = np.einsum("q,jq,jqk->jk", rule.gauss_weights, smooth, card)
    return pref[:, None] * rows


def build_integration_matrices(basis: QuadratureBasis) -> IntegrationMatrices:
    """Both one-sided matrices, every entry accurate to about 1e-13.

    For the flat weight a single ceil(n/2)+2-point rule per subinterval is
    exact; weighted families double the sub-rule until entries stabilize and
    raise QuadratureAccuracyError (naming the worst entry) if they do not.
    """
    if basis.family.kind == "legendre":
        m = basis.n // 2 + 2 + (basis.n % 2)
        return IntegrationMatrices(basis, _one_sided(basis, "+", m),
                                   _one_sided(basis, "-", m))
    mats = {}
    for side in ("+", "-"):
        m = basis.n + 6
        prev = _one_sided(basis, side, m)
        while True:
            m *= 2
            cur = _one_sided(basis, side, m)
            gap = np.abs(cur - prev)
            if gap.max() <= _ENTRY_TOL * max(1.0, np.abs(cur).max()):
                mats[side] = cur
                break
            if m > _MAX_RULE:
                j, k = np.unravel_index(np.argmax(gap), gap.shape)
                raise QuadratureAccuracyError(
                    f"integration-matrix entry ({j}, {k}) for {basis.family.label} "
                    f"n={basis.n} did not stabilize (last change {gap[j, k]:.3e})")
            prev = cur
    return IntegrationMatrices(basis, mats["+"], mats["-"])


def scale(mats: IntegrationMatrices, side: str, imap: IntervalMap) -> ScaledMatrix:
    """Rescale one side to (a, b): C = ((b-a)/2) A_side, nodes mapped along."""
    C = imap.half_length * mats.side(side)
    xi = np.asarray(imap.forward(mats.basis.nodes))
    return ScaledMatrix(mats, side, imap, C, xi)


def eigen_factorize(scaled: ScaledMatrix, cond_limit: float = _COND_LIMIT) -> EigenFactorization:
    """Eigendecomposition with a deterministic ordering and phase convention.

    Eigenvalues sort by (real, imag); eigenvector columns get unit 2-norm and
    a phase making their first significant component real non-negative.
    Raises IllConditionedError when the eigenvector basis is unusable.
    """
    lam, X = np.linalg.eig(scaled.C)
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    X = X[:, order]
    X = X / np.linalg.norm(X, axis=0)[None, :]
    for j in range(X.shape[1]):
        col = X[:, j]
        i = int(np.argmax(np.abs(col) > 1e-12))
        c = col[i]
        X[:, j] = col * (np.conj(c) / abs(c))
    cond = float(np.linalg.cond(X))
    if cond > cond_limit:
        raise IllConditionedError(
            f"eigenvector condition {cond:.3e} exceeds {cond_limit:.1e} "
            f"(n={scaled.basis.n}, family {scaled.basis.family.label})")
    return EigenFactorization(scaled, lam, X, np.linalg.inv(X), cond)


def matrix_apply(eig: EigenFactorization, phi, v: np.ndarray) -> np.ndarray:
    """Evaluate phi(C) v through the factorization; callers pre-compose any
    argument transform into phi. Non-finite phi(lambda) raises
    PoleEvaluationError naming the eigenvalue."""
    with np.errstate(all="ignore"):  # poles surface as PoleEvaluationError
        vals = np.asarray(phi(eig.values), dtype=np.complex128)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        where = eig.values[bad][0]
        raise PoleEvaluationError(f"symbol is singular at eigenvalue {where}")
    return eig.vectors @ (vals * (eig.inverse @ np.asarray(v, dtype=np.complex128)))


def matrix_function(eig: EigenFactorization, phi) -> np.ndarray:
    """Assemble phi(C) as a dense (complex) matrix; same pole policy as
    matrix_apply."""
    with np.errstate(all="ignore"):
        vals = np.asarray(phi(eig.values), dtype=np.complex128)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        raise PoleEvaluationError(
            f"symbol is singular at eigenvalue {eig.values[bad][0]}")
    return eig.vectors @ (vals[:, None] * eig.inverse)


def apply_real(eig: EigenFactorization, phi, v: np.ndarray):
    """matrix_apply for real data: returns (real part, relative imaginary residue).

    With a real input and a conjugate-symmetric symbol the residue sits at
    roundoff level; it is reported, not hidden, so pipelines can record it.
    """
    out = matrix_apply(eig, phi, v)
    scale_ = float(np.linalg.norm(out))
    residue = float(np.linalg.norm(out.imag) / scale_) if scale_ > 0.0 else 0.0
    return out.real.copy(), residue
