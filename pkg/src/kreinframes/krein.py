"""Finite-dimensional Krein spaces in coordinates.

A space is a fundamental symmetry ``J`` (a symmetric involution) acting on
R^N.  The indefinite product is ``[x, y] = x . J y`` and the J-metric is
``[x, y]_J = [x, J y]``, the Euclidean product in these coordinates.
Vectors are plain 1-D numpy arrays.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .errors import (
    DimensionMismatch,
    NotInvolution,
    ValidationError,
    ZeroDimension,
    ZeroVector,
)
from .numerics import DEFAULT_TOL, as_matrix, sym_eig


@dataclass(frozen=True, eq=False)
class KreinSpace:
    j: np.ndarray
    sig_plus: int
    sig_minus: int

    @property
    def dim(self):
        return self.sig_plus + self.sig_minus

    @property
    def signature(self):
        return self.sig_plus, self.sig_minus

    @cached_property
    def p_plus(self):
        return 0.5 * (np.eye(self.dim) + self.j)

    @cached_property
    def p_minus(self):
        return 0.5 * (np.eye(self.dim) - self.j)

    @property
    def is_diagonal(self):
        return bool(np.all(self.j == np.diag(np.diag(self.j))))

    def __repr__(self):
        return f"KreinSpace(sig=({self.sig_plus}, {self.sig_minus}))"


class Sign(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class SignClass:
    tag: Sign
    self_product: float


def make_space_from_signature(m, n):
    """Canonical model ``J = diag(+1 x m, -1 x n)``."""
    if m < 0 or n < 0:
        raise ValidationError("signature entries must be non-negative")
    if m + n < 1:
        raise ZeroDimension("a Krein space needs m + n >= 1")
    j = np.diag([1.0] * m + [-1.0] * n)
    return KreinSpace(j, int(m), int(n))


def make_space_from_j(j, tol=DEFAULT_TOL):
    """Validate a user-supplied fundamental symmetry and read off its signature.

    ``J`` is stored verbatim; coordinates are never rotated to an eigenbasis.
    """
    j = as_matrix(j)
    n, cols = j.shape
    if n != cols:
        raise DimensionMismatch(f"J must be square, got {j.shape}")
    if n == 0:
        raise ZeroDimension("J is empty")
    w, _ = sym_eig(j, tol)  # raises NotSymmetric
    if np.abs(j @ j - np.eye(n)).max() > tol.eig_tol:
        raise NotInvolution("J @ J differs from the identity")
    m = int(np.count_nonzero(w > 0))
    return KreinSpace(0.5 * (j + j.T), m, n - m)


def vector(space, x):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.shape[0] != space.dim:
        raise DimensionMismatch(f"expected a vector of length {space.dim}, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValidationError("vector entries must be finite")
    return v


def indefinite_ip(space, x, y):
    """``[x, y] = sum_i x_i (J y)_i``."""
    return float(vector(space, x) @ space.j @ vector(space, y))


def j_ip(space, x, y):
    """J-metric ``[x, J y]``."""
    x, y = vector(space, x), vector(space, y)
    return float(x @ space.j @ (space.j @ y))


def j_norm(space, x):
    return float(np.sqrt(max(j_ip(space, x, x), 0.0)))


def classify(space, x, tol=DEFAULT_TOL):
    x = vector(space, x)
    if not np.any(x):
        raise ZeroVector(None, "cannot classify the zero vector")
    sp = indefinite_ip(space, x, x)
    band = tol.verify_tol * j_ip(space, x, x)
    if sp > band:
        tag = Sign.POSITIVE
    elif sp < -band:
        tag = Sign.NEGATIVE
    else:
        tag = Sign.NEUTRAL
    return SignClass(tag, sp)


def project_canonical(space, x):
    """Split ``x`` into ``(P+ x, P- x)`` with ``P+- = (I +- J) / 2``."""
    x = vector(space, x)
    return space.p_plus @ x, space.p_minus @ x
