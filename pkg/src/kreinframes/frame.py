"""J-frames: partition, zeta, per-part frame operators and structural verdicts.

A family is split into its positive part ``I+`` and negative part ``I-``.
Each part is a Hilbert frame for its span ``M+`` (under ``[.,.]``) or
``M-`` (under ``-[.,.]``); all frame operators are computed in an intrinsic
orthonormal basis of that span, so verdicts do not depend on coordinates.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import (
    EmptyPart,
    KreinError,
    MismatchedSpans,
    NeutralVector,
    NotJFrame,
    NotMaximal,
    NotParsevalInput,
    NotParsevalPart,
    NotStrictlyDisjoint,
    PartitionMismatch,
    ValidationError,
    ZeroVector,
)
from .krein import Sign, classify, vector
from .numerics import DEFAULT_TOL, numerical_rank, singular_values, sym_eig
from .subspace import (
    Definiteness,
    Subspace,
    c_zero,
    definiteness,
    gram_operator,
    intrinsic_coords,
    reduced_min_modulus,
    span_of,
)

SQRT2 = math.sqrt(2.0)


class Part(Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True, eq=False)
class FrameFamily:
    """Ordered family of vectors (rows of ``vectors``) with its sign partition."""

    space: object
    vectors: np.ndarray
    i_plus: tuple
    i_minus: tuple

    @property
    def size(self):
        return self.vectors.shape[0]

    @property
    def p(self):
        return len(self.i_plus)

    @property
    def q(self):
        return len(self.i_minus)

    def indices(self, part):
        return self.i_plus if part is Part.PLUS else self.i_minus

    def part_vectors(self, part):
        return self.vectors[list(self.indices(part))]

    def signs(self):
        s = np.empty(self.size)
        s[list(self.i_plus)] = 1.0
        s[list(self.i_minus)] = -1.0
        return s


@dataclass(frozen=True, eq=False)
class FrameAnalysis:
    m_plus: Subspace
    m_minus: Subspace
    gamma_plus: float
    gamma_minus: float
    zeta: float
    bound_plus: tuple
    bound_minus: tuple
    spectrum_plus: np.ndarray
    spectrum_minus: np.ndarray
    is_j_frame: bool
    is_tight: bool
    is_parseval: bool
    is_weakly_normalized: bool
    is_normalized: bool
    is_onb: bool
    a_plus: float | None = None
    a_minus: float | None = None


def partition(space, vectors, tol=DEFAULT_TOL):
    rows = [vector(space, v) for v in vectors]
    if not rows:
        raise ValidationError("empty family")
    plus, minus = [], []
    for i, v in enumerate(rows):
        if not np.any(v):
            raise ZeroVector(i)
        tag = classify(space, v, tol).tag
        if tag is Sign.NEUTRAL:
            raise NeutralVector(i)
        (plus if tag is Sign.POSITIVE else minus).append(i)
    return FrameFamily(space, np.array(rows), tuple(plus), tuple(minus))


def _require_parts(f):
    if f.p == 0 or f.q == 0:
        raise EmptyPart(f"family has p={f.p}, q={f.q}; both parts must be nonempty")


def is_j_frame(f, tol=DEFAULT_TOL):
    """J-frame test: each span is uniformly definite of full (maximal) dimension.

    Returns ``(flag, m_plus, m_minus)``.
    """
    _require_parts(f)
    m_plus = span_of(f.space, f.part_vectors(Part.PLUS), tol)
    m_minus = span_of(f.space, f.part_vectors(Part.MINUS), tol)
    ok = (
        m_plus.dim_m == f.space.sig_plus
        and m_minus.dim_m == f.space.sig_minus
        and definiteness(m_plus, tol) is Definiteness.UNIFORMLY_POSITIVE
        and definiteness(m_minus, tol) is Definiteness.UNIFORMLY_NEGATIVE
    )
    return ok, m_plus, m_minus


def _spans(f, tol):
    ok, m_plus, m_minus = is_j_frame(f, tol)
    if not ok:
        raise NotJFrame("family is not a J-frame")
    return m_plus, m_minus


def compute_zeta(f, tol=DEFAULT_TOL):
    m_plus, m_minus = _spans(f, tol)
    return c_zero(m_plus, tol) + c_zero(m_minus, tol)


def _part_coords(f, part, subspace, tol):
    return intrinsic_coords(subspace, f.part_vectors(part), tol)


def frame_operator_part(f, part, tol=DEFAULT_TOL):
    """Frame operator of one part in the intrinsic orthonormal basis of its span."""
    m_plus, m_minus = _spans(f, tol)
    c = _part_coords(f, part, m_plus if part is Part.PLUS else m_minus, tol)
    s = c @ c.T
    return 0.5 * (s + s.T)


def _spectra(f, tol):
    lam, _ = sym_eig(frame_operator_part(f, Part.PLUS, tol), tol)
    mu, _ = sym_eig(frame_operator_part(f, Part.MINUS, tol), tol)
    return lam, mu


def frame_bounds(f, tol=DEFAULT_TOL):
    """Intrinsic frame bounds ``(min, max)`` per part and the descending spectra."""
    lam, mu = _spectra(f, tol)
    return (lam[-1], lam[0]), (mu[-1], mu[0]), (lam, mu)


def _is_flat(w, tol):
    return w[0] > 0 and (w[0] - w[-1]) / w[0] <= tol.verify_tol


def _tightness(lam, mu, tol):
    if _is_flat(lam, tol) and _is_flat(mu, tol):
        return True, float(np.mean(lam)), -float(np.mean(mu))
    return False, None, None


def is_tight(f, tol=DEFAULT_TOL):
    """Returns ``(flag, A+, A-)``.

    ``A-`` is reported with the negative sign forced by ``A- [f, f] =
    sum |[f, f_i]|^2`` on ``M-``; the intrinsic bound is ``-A-``.
    """
    lam, mu = _spectra(f, tol)
    return _tightness(lam, mu, tol)


def _parseval_from(lam, mu, tol):
    tight, a_plus, a_minus = _tightness(lam, mu, tol)
    return (
        tight
        and np.all(np.abs(lam - 1.0) <= tol.verify_tol)
        and np.all(np.abs(mu - 1.0) <= tol.verify_tol)
    )


def is_parseval(f, tol=DEFAULT_TOL):
    lam, mu = _spectra(f, tol)
    return bool(_parseval_from(lam, mu, tol))


def normalization_flags(f, tol=DEFAULT_TOL):
    """``(normalized, weakly_normalized)``."""
    x = f.vectors
    j = f.space.j
    self_products = np.einsum("ij,jk,ik->i", x, j, x)
    j_norms = np.sqrt(np.einsum("ij,ij->i", x, x))
    normalized = bool(np.all(np.abs(j_norms - 1.0) <= tol.verify_tol))
    weakly = bool(np.all(np.abs(self_products - f.signs()) <= tol.verify_tol))
    return normalized, weakly


def weakly_normalize(f):
    """Scale every member to ``[f_i, f_i] = +-1``."""
    x = f.vectors
    self_products = np.einsum("ij,jk,ik->i", x, f.space.j, x)
    for i, sp in enumerate(self_products):
        if sp == 0.0:
            raise NeutralVector(i)
    return FrameFamily(f.space, x / np.sqrt(np.abs(self_products))[:, None], f.i_plus, f.i_minus)


def gram_matrix(f):
    """Full indefinite Gram matrix ``[f_i, f_j]``."""
    return f.vectors @ f.space.j @ f.vectors.T


def is_j_onb(f, tol=DEFAULT_TOL):
    """``M = N`` and ``[e_i, e_j] = +-delta_ij`` with the sign of the partition."""
    if f.size != f.space.dim:
        return False
    g = gram_matrix(f)
    return bool(np.abs(g - np.diag(f.signs())).max() <= tol.verify_tol)


def onb_characterization(f, tol=DEFAULT_TOL):
    """Weakly normalized Parseval J-frame with ``zeta = sqrt2``."""
    try:
        lam, mu = _spectra(f, tol)
        zeta = compute_zeta(f, tol)
    except KreinError:
        return False
    _, weakly = normalization_flags(f, tol)
    return bool(abs(zeta - SQRT2) <= tol.verify_tol and weakly and _parseval_from(lam, mu, tol))


def disjointness(f, tol=DEFAULT_TOL):
    """``(disjoint, strictly_disjoint)``.

    Disjoint: ``M+ & M- = {0}``.  Strictly disjoint: ``M+ [perp] M-``.
    """
    _require_parts(f)
    m_plus = span_of(f.space, f.part_vectors(Part.PLUS), tol)
    m_minus = span_of(f.space, f.part_vectors(Part.MINUS), tol)
    stacked = np.hstack([m_plus.basis, m_minus.basis])
    disjoint = numerical_rank(singular_values(stacked, tol), tol) == m_plus.dim_m + m_minus.dim_m
    cross = m_plus.basis.T @ f.space.j @ m_minus.basis
    strictly = bool(np.abs(cross).max() <= tol.verify_tol)
    return disjoint, strictly


def _parseval_part(space, vectors, want, tol):
    m = span_of(space, vectors, tol)
    if definiteness(m, tol) is not want:
        raise NotParsevalPart(f"span is not {want.value}")
    c = intrinsic_coords(m, vectors, tol)
    w, _ = sym_eig(c @ c.T, tol)
    if np.abs(w - 1.0).max() > tol.verify_tol:
        raise NotParsevalPart(f"frame operator spectrum {w} is not identically 1")
    return m


def union_parseval(x_vectors, y_vectors, space, tol=DEFAULT_TOL):
    """Union of a Parseval frame of a positive ``M1`` and one of a negative ``M2``.

    Requires both spans maximal and ``M1 [perp] M2``; the union is then a
    zeta-J-Parseval frame.
    """
    x = [vector(space, v) for v in x_vectors]
    y = [vector(space, v) for v in y_vectors]
    m1 = _parseval_part(space, x, Definiteness.UNIFORMLY_POSITIVE, tol)
    m2 = _parseval_part(space, y, Definiteness.UNIFORMLY_NEGATIVE, tol)
    if m1.dim_m != space.sig_plus or m2.dim_m != space.sig_minus:
        raise NotMaximal(f"span dimensions ({m1.dim_m}, {m2.dim_m}) != signature {space.signature}")
    if np.abs(m1.basis.T @ space.j @ m2.basis).max() > tol.verify_tol:
        raise NotStrictlyDisjoint("the two spans are not [.,.]-orthogonal")
    return partition(space, x + y, tol)


@dataclass(frozen=True)
class CombineReport:
    """Conditions for ``alpha f_i + beta g_i`` to be zeta-J-Parseval.

    ``skew_*`` is the Gram-side identity ``T_f* T_g + T_g* T_f = 0``;
    ``frame_cross_*`` is the frame-operator identity ``T_f T_g* + T_g T_f* = 0``,
    which is the exact requirement for Parseval under every admissible pair.
    """

    sign_preserved: tuple
    skew_plus: bool
    skew_minus: bool
    frame_cross_plus: bool
    frame_cross_minus: bool
    combined_parseval: bool

    @property
    def holds(self):
        return all(self.sign_preserved) and self.skew_plus and self.skew_minus


def combine(f, g, alpha, beta, tol=DEFAULT_TOL):
    """Combine two Parseval J-frames sharing ``M+`` and ``M-``.

    Returns ``(report, combined)``; ``combined`` is ``None`` when some member
    changes sign (the combination then has a different partition).
    """
    if abs(alpha * alpha + beta * beta - 1.0) > tol.verify_tol:
        raise ValidationError("alpha^2 + beta^2 must equal 1")
    if f.i_plus != g.i_plus or f.i_minus != g.i_minus:
        raise PartitionMismatch("f and g must share the index partition")
    for name, fam in (("f", f), ("g", g)):
        if not is_parseval(fam, tol):
            raise NotParsevalInput(f"{name} is not a zeta-J-Parseval frame")
    fp, fm = _spans(f, tol)
    gp, gm = _spans(g, tol)
    for a, b in ((fp, gp), (fm, gm)):
        if a.dim_m != b.dim_m or np.abs(a.projector - b.projector).max() > tol.verify_tol:
            raise MismatchedSpans("f and g span different subspaces")

    j = f.space.j
    ff = np.einsum("ij,jk,ik->i", f.vectors, j, f.vectors)
    gg = np.einsum("ij,jk,ik->i", g.vectors, j, g.vectors)
    fg = np.einsum("ij,jk,ik->i", f.vectors, j, g.vectors)
    h = alpha * f.vectors + beta * g.vectors
    hh = alpha**2 * ff + 2 * alpha * beta * fg + beta**2 * gg
    band = tol.verify_tol * np.einsum("ij,ij->i", h, h)
    sign_preserved = tuple(bool(s * v > b) for s, v, b in zip(f.signs(), hh, band))

    def skew(part):
        idx = list(f.indices(part))
        c = f.vectors[idx] @ j @ g.vectors[idx].T
        return bool(np.abs(c + c.T).max() <= tol.verify_tol)

    def frame_cross(part, subspace):
        cf = _part_coords(f, part, subspace, tol)
        cg = _part_coords(g, part, subspace, tol)
        x = cf @ cg.T
        return bool(np.abs(x + x.T).max() <= tol.verify_tol)

    combined = None
    parseval = False
    if all(sign_preserved):
        combined = FrameFamily(f.space, h, f.i_plus, f.i_minus)
        try:
            parseval = is_parseval(combined, tol)
        except NotJFrame:
            parseval = False

    report = CombineReport(
        sign_preserved,
        skew(Part.PLUS),
        skew(Part.MINUS),
        frame_cross(Part.PLUS, fp),
        frame_cross(Part.MINUS, fm),
        parseval,
    )
    return report, combined


def analyze(f, tol=DEFAULT_TOL):
    """Full structural analysis of a family; raises ``NotJFrame`` if it is not one."""
    m_plus, m_minus = _spans(f, tol)
    gamma_plus = reduced_min_modulus(gram_operator(m_plus), tol)
    gamma_minus = reduced_min_modulus(gram_operator(m_minus), tol)
    zeta = c_zero(m_plus, tol) + c_zero(m_minus, tol)
    lam, mu = _spectra(f, tol)
    tight, a_plus, a_minus = _tightness(lam, mu, tol)
    parseval = bool(_parseval_from(lam, mu, tol))
    normalized, weakly = normalization_flags(f, tol)
    return FrameAnalysis(
        m_plus=m_plus,
        m_minus=m_minus,
        gamma_plus=gamma_plus,
        gamma_minus=gamma_minus,
        zeta=zeta,
        bound_plus=(float(lam[-1]), float(lam[0])),
        bound_minus=(float(mu[-1]), float(mu[0])),
        spectrum_plus=lam,
        spectrum_minus=mu,
        is_j_frame=True,
        is_tight=tight,
        is_parseval=parseval,
        is_weakly_normalized=weakly,
        is_normalized=normalized,
        is_onb=is_j_onb(f, tol),
        a_plus=a_plus,
        a_minus=a_minus,
    )
