"""A floating-point Bruck loop on symmetric positive definite matrices.

The product of two SPD matrices A and B polar-decomposes as AB = UP with
U orthogonal and P again SPD; the loop operation is A (.) B = P.  Since A
and B are symmetric, P equals the SPD square root of B A^2 B, and that is
how it is computed here: the eigh-based square root keeps the result
symmetric by construction, which an explicit polar decomposition of AB
would not.

Identity checks on this carrier are necessarily tolerance-based: terms
are evaluated on seeded random SPD samples and the report carries the
maximum spectral-norm residual between the two sides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LoopError
from .identities import (
    Identity,
    Inv,
    Ldiv,
    Mul,
    One,
    Rdiv,
    Term,
    Var,
    builtin,
    format_identity,
)

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "NumericalBreakdownError",
    "UnsupportedTermError",
    "PDMatrix",
    "pd_matrix",
    "pd_identity",
    "pd_inverse",
    "pd_sqrt",
    "pd_mul",
    "pd_ldiv",
    "random_orthogonal",
    "random_pd",
    "ResidualReport",
    "check_identity_numeric",
    "left_nucleus_violation_sampler",
]


class NumericalBreakdownError(LoopError):
    """Eigendecomposition failed or an eigenvalue fell below the PD floor."""


class UnsupportedTermError(LoopError):
    """The numeric evaluator covers *, \\, ', 1 but not /."""


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds: symmetry slack, PD floor, identity residual."""

    tau_sym: float = 1e-10
    eps_pd: float = 1e-12
    tau_id: float = 1e-8

    def __post_init__(self):
        if min(self.tau_sym, self.eps_pd, self.tau_id) <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, eq=False)
class PDMatrix:
    """A symmetric positive definite matrix with a validated spectrum."""

    mat: np.ndarray

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def pd_matrix(a, tol: Tolerances = DEFAULT_TOLERANCES) -> PDMatrix:
    """Validate symmetry (within tau_sym) and positive definiteness."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.T)) > tol.tau_sym:
        raise ValueError("matrix is not symmetric within tolerance")
    m = 0.5 * (m + m.T)
    if np.min(np.linalg.eigvalsh(m)) <= tol.eps_pd:
        raise ValueError("matrix is not positive definite")
    m.setflags(write=False)
    return PDMatrix(m)


def pd_identity(dim: int) -> PDMatrix:
    eye = np.eye(dim)
    eye.setflags(write=False)
    return PDMatrix(eye)


def _sym_sqrt(m: np.ndarray, tol: Tolerances) -> np.ndarray:
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as err:
        raise NumericalBreakdownError(f"eigendecomposition failed: {err}") from err
    if vals[0] <= tol.eps_pd:
        raise NumericalBreakdownError(
            f"eigenvalue {vals[0]:.3e} at or below the PD floor {tol.eps_pd:.1e}"
        )
    root = (vecs * np.sqrt(vals)) @ vecs.T
    return 0.5 * (root + root.T)


def pd_sqrt(s: PDMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> PDMatrix:
    """The unique SPD square root, via symmetric eigendecomposition."""
    out = _sym_sqrt(s.mat, tol)
    out.setflags(write=False)
    return PDMatrix(out)


def pd_mul(a: PDMatrix, b: PDMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> PDMatrix:
    """The loop product: the SPD polar factor of AB, as sqrt(B A^2 B)."""
    am, bm = a.mat, b.mat
    out = _sym_sqrt(bm @ am @ am @ bm, tol)
    out.setflags(write=False)
    return PDMatrix(out)


def pd_inverse(a: PDMatrix) -> PDMatrix:
    """The loop inverse, which is the matrix inverse."""
    inv = np.linalg.inv(a.mat)
    inv = 0.5 * (inv + inv.T)
    inv.setflags(write=False)
    return PDMatrix(inv)


def pd_ldiv(a: PDMatrix, b: PDMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> PDMatrix:
    """Left division: the X with a (.) X = b.

    Closed form A^{-1} sqrt(A B^2 A) A^{-1}; substituting back into the
    product gives sqrt(X A^2 X) = sqrt(B^2) = B.
    """
    am, bm = a.mat, b.mat
    ainv = np.linalg.inv(am)
    out = ainv @ _sym_sqrt(am @ bm @ bm @ am, tol) @ ainv
    out = 0.5 * (out + out.T)
    out.setflags(write=False)
    return PDMatrix(out)


# -- sampling -------------------------------------------------------------------


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a Gaussian matrix with the R-diagonal sign fixed."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def random_pd(
    dim: int,
    rng: np.random.Generator,
    kappa: float = 10.0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> PDMatrix:
    """Random SPD sample: log-uniform spectrum in [1/kappa, kappa],
    conjugated by a random orthogonal matrix."""
    logs = rng.uniform(-np.log(kappa), np.log(kappa), size=dim)
    q = random_orthogonal(dim, rng)
    m = (q * np.exp(logs)) @ q.T
    return pd_matrix(0.5 * (m + m.T), tol)


# -- numeric identity checking ----------------------------------------------------


def _eval(term: Term, env: dict, dim: int, tol: Tolerances) -> PDMatrix:
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, One):
        return pd_identity(dim)
    if isinstance(term, Inv):
        return pd_inverse(_eval(term.arg, env, dim, tol))
    if isinstance(term, Mul):
        return pd_mul(_eval(term.left, env, dim, tol), _eval(term.right, env, dim, tol), tol)
    if isinstance(term, Ldiv):
        return pd_ldiv(_eval(term.left, env, dim, tol), _eval(term.right, env, dim, tol), tol)
    if isinstance(term, Rdiv):
        raise UnsupportedTermError("right division is not supported numerically")
    raise TypeError(f"not a term: {term!r}")


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    dim: int
    samples: int
    seed: int
    max_residual: float


def check_identity_numeric(
    identity,
    samples: int = 500,
    dims=(2, 3),
    tol: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
    kappa: float = 10.0,
) -> tuple:
    """Evaluate both sides of an identity on random SPD samples.

    ``identity`` may be an :class:`Identity` or a builtin name.  Returns
    one :class:`ResidualReport` per dim with the maximum spectral-norm
    residual over all samples.
    """
    ident = builtin(identity) if isinstance(identity, str) else identity
    if not isinstance(ident, Identity):
        raise TypeError(f"expected an Identity or builtin name, got {identity!r}")
    names = ident.variables
    rng = np.random.default_rng(seed)
    reports = []
    for dim in dims:
        worst = 0.0
        for _ in range(samples):
            env = {name: random_pd(dim, rng, kappa, tol) for name in names}
            lhs = _eval(ident.lhs, env, dim, tol)
            rhs = _eval(ident.rhs, env, dim, tol)
            worst = max(worst, float(np.linalg.norm(lhs.mat - rhs.mat, 2)))
        reports.append(ResidualReport(format_identity(ident), dim, samples, seed, worst))
    return tuple(reports)


def left_nucleus_violation_sampler(
    a: PDMatrix,
    samples: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
    kappa: float = 10.0,
) -> float:
    """Max of ||(A(.)X)(.)Y - A(.)( X(.)Y )|| over sampled X, Y.

    A strictly positive deviation is sampling evidence that A lies outside
    the left nucleus; for A = I the deviation stays at numerical noise.
    This is evidence, not proof: no finite sample rules membership in.
    """
    dim = a.dim
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = random_pd(dim, rng, kappa, tol)
        y = random_pd(dim, rng, kappa, tol)
        lhs = pd_mul(pd_mul(a, x, tol), y, tol)
        rhs = pd_mul(a, pd_mul(x, y, tol), tol)
        worst = max(worst, float(np.linalg.norm(lhs.mat - rhs.mat, 2)))
    return worst
