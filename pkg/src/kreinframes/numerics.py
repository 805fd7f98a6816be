"""Dense real matrix support: cyclic Jacobi eigensolver, singular values, rank."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotSymmetric, ValidationError

MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module.

    eig_tol
        Off-diagonal convergence threshold of the eigensolver, also the
        symmetry/involution acceptance band.
    rank_tol_factor
        Singular values at or below ``rank_tol_factor * sigma_max`` count as zero.
    verify_tol
        Threshold for tight/Parseval/equality verdicts.
    """

    eig_tol: float = 1e-12
    rank_tol_factor: float = 1e-9
    verify_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eig_tol", "rank_tol_factor", "verify_tol"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be strictly positive")
        if self.eig_tol > self.verify_tol:
            raise ValidationError("eig_tol must not exceed verify_tol")


DEFAULT_TOL = Tolerances()


def as_matrix(a):
    """Return ``a`` as a finite 2-D float array (a copy)."""
    m = np.array(a, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite")
    return m


def _rotation(app, aqq, apq):
    diff = aqq - app
    if abs(apq) < abs(diff) * 1e-150:
        # theta would overflow; t ~ 1 / (2 theta)
        t = apq / diff
    else:
        theta = diff / (2.0 * apq)
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(1.0 + theta * theta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c


def sym_eig(a, tol=DEFAULT_TOL):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Returns ``(w, V)`` with ``w`` descending and ``a = V @ diag(w) @ V.T``.
    Pivots are visited in fixed row-major order, so results are reproducible.
    """
    a = as_matrix(a)
    n, cols = a.shape
    if n != cols:
        raise DimensionMismatch(f"sym_eig needs a square matrix, got {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a - a.T).max(initial=0.0) > tol.eig_tol * scale:
        raise NotSymmetric("matrix is not symmetric within eig_tol")

    A = 0.5 * (a + a.T)
    V = np.eye(n)
    target = 1e-2 * tol.eig_tol * max(1.0, float(np.linalg.norm(A)))
    for _ in range(MAX_SWEEPS):
        off = math.sqrt(2.0 * float(np.sum(np.triu(A, 1) ** 2)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                c, s = _rotation(A[p, p], A[q, q], apq)
                colp, colq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp, rowq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi sweeps did not converge in {MAX_SWEEPS} sweeps")

    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def _augmented_eig(a, tol):
    r, c = a.shape
    aug = np.zeros((r + c, r + c))
    aug[:r, r:] = a
    aug[r:, :r] = a.T
    return sym_eig(aug, tol)


def singular_values(a, tol=DEFAULT_TOL):
    """Singular values of ``a``, descending.

    Read off the symmetric eigenproblem of ``[[0, a], [a.T, 0]]`` whose
    spectrum is ``+-sigma_i`` (plus zeros); unlike ``a.T @ a`` this keeps
    tiny singular values near machine precision instead of its square root.
    """
    a = as_matrix(a)
    r, c = a.shape
    k = min(r, c)
    if k == 0:
        return np.zeros(0)
    w, _ = _augmented_eig(a, tol)
    return np.clip(w[:k], 0.0, None)


def left_singular_vectors(a, tol=DEFAULT_TOL):
    """Singular values and matching left singular vectors (columns of ``U``).

    Only the columns whose singular value is numerically nonzero are
    meaningful; callers truncate with :func:`numerical_rank`.
    """
    a = as_matrix(a)
    r, c = a.shape
    k = min(r, c)
    w, vecs = _augmented_eig(a, tol)
    u = np.sqrt(2.0) * vecs[:r, :k]
    return np.clip(w[:k], 0.0, None), u


def numerical_rank(singvals, tol=DEFAULT_TOL):
    """Count singular values strictly above ``rank_tol_factor * sigma_1``."""
    s = np.asarray(singvals, dtype=float)
    if s.size == 0 or s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_tol_factor * s[0]))
