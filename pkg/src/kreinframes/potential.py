"""J-frame forces, pairwise and total J-potentials, and the J-frame potential FP_J."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import SameIndex, ZetaOutOfRange
from .frame import Part, _spans, compute_zeta, frame_operator_part, gram_matrix, is_j_frame
from .numerics import DEFAULT_TOL
from .subspace import intrinsic_basis, intrinsic_coords

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ForceResult:
    coefficient: float
    direction: np.ndarray
    vector: np.ndarray


@dataclass(frozen=True)
class PotentialReport:
    fp_j: float
    fp_trace: float | None
    tp_j: float
    pair_matrix: np.ndarray
    floor: float
    gap: float
    intrinsic_norms: np.ndarray


def _check_pair(f, i, j):
    if i == j:
        raise SameIndex(f"force/potential needs two distinct indices, got {i} twice")
    for k in (i, j):
        if not 0 <= k < f.size:
            raise IndexError(f"index {k} outside family of size {f.size}")


def _check_zeta(zeta, tol):
    if not (SQRT2 - tol.verify_tol <= zeta < 2.0):
        raise ZetaOutOfRange(f"zeta={zeta} outside [sqrt2, 2)")


def _sign(f, i):
    return 1 if i in f.i_plus else -1


def _ip(f, i, j):
    return float(f.vectors[i] @ f.space.j @ f.vectors[j])


def frame_force(f, zeta, i, j, tol=DEFAULT_TOL):
    """J-frame force between members ``i`` and ``j`` (0-based)."""
    _check_pair(f, i, j)
    _check_zeta(zeta, tol)
    si, sj = _sign(f, i), _sign(f, j)
    fi, fj = f.vectors[i], f.vectors[j]
    if si == sj:
        coef = 2.0 * si * _ip(f, i, j)
    else:
        # J-metric is the Euclidean product in coordinates
        coef = 2.0 * (np.linalg.norm(fi) * np.linalg.norm(fj) * zeta + float(fi @ fj))
    direction = fi - fj
    return ForceResult(coef, direction, coef * direction)


def intrinsic_norm_squares(f):
    """``a_i^2 = |[f_i, f_i]|``."""
    x = f.vectors
    return np.abs(np.einsum("ij,jk,ik->i", x, f.space.j, x))


def antiderivative(x, ai2, aj2):
    """``p(x) = x^2 (x^2 - 2 (a_i^2 + a_j^2)) / 4``, so ``p'(x) = -x (a_i^2 + a_j^2 - x^2)``."""
    return 0.25 * x * x * (x * x - 2.0 * (ai2 + aj2))


def intrinsic_distance(f, i, j):
    """``||f_i - f_j||_{+-}`` for two members of the same part."""
    d = f.vectors[i] - f.vectors[j]
    return math.sqrt(max(_sign(f, i) * float(d @ f.space.j @ d), 0.0))


def pair_potential(f, zeta, i, j):
    _check_pair(f, i, j)
    if _sign(f, i) != _sign(f, j):
        return 0.5 * (zeta * zeta - 1.0)
    a2 = intrinsic_norm_squares(f)
    return _ip(f, i, j) ** 2 - 0.25 * (a2[i] + a2[j]) ** 2


def _part_gram_squares(f, part):
    idx = list(f.indices(part))
    g = gram_matrix(f)[np.ix_(idx, idx)]
    g = 0.5 * (g + g.T)
    return (g * g).ravel()


def frame_potential(f):
    """``FP_J``: squared indefinite products over same-sign ordered pairs (diagonal included)."""
    return math.fsum(np.concatenate([_part_gram_squares(f, Part.PLUS), _part_gram_squares(f, Part.MINUS)]))


def frame_potential_trace(f, tol=DEFAULT_TOL):
    """``tr(S+^2) + tr(S-^2)`` from the intrinsic frame operators."""
    s_plus = frame_operator_part(f, Part.PLUS, tol)
    s_minus = frame_operator_part(f, Part.MINUS, tol)
    return math.fsum(np.concatenate([(s_plus * s_plus).ravel(), (s_minus * s_minus).ravel()]))


def total_potential(f, zeta):
    """Total J-potential, evaluated term by term."""
    a2 = intrinsic_norm_squares(f)
    terms = [frame_potential(f), f.p * f.q * 0.5 * (zeta * zeta - 1.0)]
    for part in (Part.PLUS, Part.MINUS):
        b = a2[list(f.indices(part))]
        s = b[:, None] + b[None, :]
        terms.append(-0.25 * math.fsum((s * s).ravel()))
    return math.fsum(terms)


def potential_floor(p, q, m, n):
    return p * p / m + q * q / n


def potential_gradient(f, tol=DEFAULT_TOL):
    """``dFP_J / df_i`` as ambient vectors (rows), tangent to each part's span.

    ``4 sum_j [f_i, f_j] J f_j`` over the same part, projected onto ``M+-``.
    """
    m_plus, m_minus = _spans(f, tol)
    x, j = f.vectors, f.space.j
    out = np.zeros_like(x)
    for part, sub in ((Part.PLUS, m_plus), (Part.MINUS, m_minus)):
        idx = list(f.indices(part))
        xp = x[idx]
        g = xp @ j @ xp.T
        out[idx] = 4.0 * (g @ xp @ j) @ sub.projector
    return out


def sphere_projected_gradient(f, tol=DEFAULT_TOL):
    """Gradient of ``FP_J`` restricted to the product of intrinsic spheres.

    Computed in intrinsic coordinates, where each part is the classical
    frame potential on unit spheres, and mapped back to ambient vectors.
    """
    m_plus, m_minus = _spans(f, tol)
    out = np.zeros_like(f.vectors)
    for part, sub in ((Part.PLUS, m_plus), (Part.MINUS, m_minus)):
        idx = list(f.indices(part))
        c = intrinsic_coords(sub, f.vectors[idx], tol)
        grad = 4.0 * (c @ c.T) @ c
        radial = np.sum(grad * c, axis=0) / np.sum(c * c, axis=0)
        tangent = grad - radial * c
        e, _ = intrinsic_basis(sub, tol)
        out[idx] = (e @ tangent).T
    return out


def potential_report(f, zeta=None, tol=DEFAULT_TOL):
    """Potentials of a family; the trace identity and floor need a J-frame."""
    ok, m_plus, m_minus = is_j_frame(f, tol)
    if zeta is None and ok:
        zeta = compute_zeta(f, tol)
    fp = frame_potential(f)
    pairs = np.full((f.size, f.size), np.nan)
    if zeta is not None:
        for i in range(f.size):
            for k in range(f.size):
                if i != k:
                    pairs[i, k] = pair_potential(f, zeta, i, k)
    tp = total_potential(f, zeta) if zeta is not None else float("nan")
    floor = potential_floor(f.p, f.q, m_plus.dim_m, m_minus.dim_m)
    return PotentialReport(
        fp_j=fp,
        fp_trace=frame_potential_trace(f, tol) if ok else None,
        tp_j=tp,
        pair_matrix=pairs,
        floor=floor,
        gap=fp - floor,
        intrinsic_norms=np.sqrt(intrinsic_norm_squares(f)),
    )
