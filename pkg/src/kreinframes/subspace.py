"""Subspaces of a Krein space: Gram operator, reduced minimum modulus, c0."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import math

import numpy as np

from .errors import AllZero, NotDefinite
from .krein import vector
from .numerics import DEFAULT_TOL, left_singular_vectors, numerical_rank, singular_values, sym_eig


class Definiteness(Enum):
    UNIFORMLY_POSITIVE = "uniformly_positive"
    UNIFORMLY_NEGATIVE = "uniformly_negative"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace ``M`` stored by a Euclidean-orthonormal basis (columns)."""

    space: object
    basis: np.ndarray

    @property
    def dim_m(self):
        return self.basis.shape[1]

    @cached_property
    def projector(self):
        return self.basis @ self.basis.T

    @cached_property
    def restricted_gram(self):
        """``B^T J B``: the indefinite form in basis coordinates."""
        return self.basis.T @ self.space.j @ self.basis


@dataclass(frozen=True)
class GramReport:
    gram: np.ndarray
    gamma: float
    definiteness: Definiteness


def span_of(space, vectors, tol=DEFAULT_TOL):
    """Orthonormal basis of the span of ``vectors`` (rank-revealing)."""
    cols = [vector(space, v) for v in vectors]
    if not cols or not any(np.any(c) for c in cols):
        raise AllZero("span of no nonzero vectors")
    v = np.column_stack(cols)
    s, u = left_singular_vectors(v, tol)
    r = numerical_rank(s, tol)
    q, _ = np.linalg.qr(u[:, :r])
    return Subspace(space, q)


def gram_operator(m):
    """Ambient Gram operator ``P_M J P_M`` (N x N, symmetric)."""
    p = m.projector
    g = p @ m.space.j @ p
    return 0.5 * (g + g.T)


def reduced_min_modulus(g, tol=DEFAULT_TOL):
    """Smallest singular value above the rank cutoff; 0 for the zero matrix."""
    s = singular_values(g, tol)
    r = numerical_rank(s, tol)
    return float(s[r - 1]) if r else 0.0


def definiteness(m, tol=DEFAULT_TOL):
    w, _ = sym_eig(m.restricted_gram, tol)
    if np.any(np.abs(w) <= tol.verify_tol):
        return Definiteness.DEGENERATE
    if np.all(w > 0):
        return Definiteness.UNIFORMLY_POSITIVE
    if np.all(w < 0):
        return Definiteness.UNIFORMLY_NEGATIVE
    return Definiteness.INDEFINITE


def gram_report(m, tol=DEFAULT_TOL):
    g = gram_operator(m)
    return GramReport(g, reduced_min_modulus(g, tol), definiteness(m, tol))


def _sign_of(m, tol):
    d = definiteness(m, tol)
    if d is Definiteness.UNIFORMLY_POSITIVE:
        return 1
    if d is Definiteness.UNIFORMLY_NEGATIVE:
        return -1
    raise NotDefinite(f"subspace is {d.value}")


def gamma_deficit(m, tol=DEFAULT_TOL):
    """``1 - gamma(G_M)`` for a definite subspace, without cancellation.

    For uniformly positive ``M`` with basis ``B`` one has
    ``B^T J B = I - 2 (P_- B)^T (P_- B)``, so the deficit is
    ``2 ||P_- B||^2`` (and symmetrically for negative ``M``).
    """
    sign = _sign_of(m, tol)
    other = m.space.p_minus if sign > 0 else m.space.p_plus
    s = singular_values(other @ m.basis, tol)
    return min(2.0 * float(s[0]) ** 2, 1.0) if s.size else 0.0


def c_zero_formula(alpha):
    """``(1/sqrt2) (sqrt((1+alpha)/2) + sqrt((1-alpha)/2))`` for alpha in [0, 1]."""
    alpha = min(max(float(alpha), 0.0), 1.0)
    return (math.sqrt((1.0 + alpha) / 2.0) + math.sqrt((1.0 - alpha) / 2.0)) / math.sqrt(2.0)


def c_zero(m, tol=DEFAULT_TOL):
    """Cosine-type constant c0(M, C) of a uniformly definite subspace."""
    delta = gamma_deficit(m, tol)
    return (math.sqrt(1.0 - delta / 2.0) + math.sqrt(delta / 2.0)) / math.sqrt(2.0)


def intrinsic_basis(m, tol=DEFAULT_TOL):
    """Basis of a definite ``M`` orthonormal for ``sign * [.,.]``.

    Returns ``(E, sign)``; ``[E_a, E_b] = sign * delta_ab``.  Obtained by
    diagonalising the restricted Gram form, so it is deterministic.
    """
    sign = _sign_of(m, tol)
    w, vecs = sym_eig(m.restricted_gram, tol)
    return m.basis @ vecs / np.sqrt(np.abs(w)), sign


def intrinsic_coords(m, vectors, tol=DEFAULT_TOL):
    """Coordinates (columns) of ``vectors`` in the intrinsic basis of ``M``."""
    e, sign = intrinsic_basis(m, tol)
    x = np.atleast_2d(np.asarray(vectors, dtype=float))
    return sign * (e.T @ m.space.j @ x.T)
