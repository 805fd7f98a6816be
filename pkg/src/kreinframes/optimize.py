"""Tight J-frame generation and minimization of the J-frame potential.

The potential splits into independent problems on ``M+`` and ``M-``; in
intrinsic coordinates each is the classical frame potential
``||C^T C||_F^2`` over unit columns, minimized here by projected gradient
descent on a product of spheres.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import BadSignature, TooFew, ValidationError
from .frame import FrameFamily, frame_bounds, is_j_frame, normalization_flags, partition
from .numerics import DEFAULT_TOL, sym_eig
from .potential import frame_potential, potential_floor

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class MinimizeConfig:
    max_iters: int = 50_000
    step: float = 0.1
    grad_tol: float = 1e-10
    restarts: int = 8
    seed: int = 0
    step_floor: float = 1e-12

    def __post_init__(self):
        if self.max_iters < 1 or self.restarts < 1:
            raise ValidationError("max_iters and restarts must be positive")
        if not self.step > 0 or not self.step_floor > 0:
            raise ValidationError("step sizes must be positive")
        if self.grad_tol < EPS:
            raise ValidationError("grad_tol must be at least machine epsilon")
        if self.seed < 0:
            raise ValidationError("seed must be non-negative")


@dataclass(frozen=True, eq=False)
class MinimizeResult:
    family: FrameFamily
    fp_j: float
    floor: float
    gap: float
    iterations: int
    converged: bool
    spectra: tuple
    restart: int = 0
    monotone: bool = True
    history: tuple = field(default=(), repr=False)


# -- generators --------------------------------------------------------------


def harmonic_frame(d, p):
    """Real harmonic unit-norm tight frame: ``d x p`` matrix, columns unit, ``C C^T = (p/d) I``.

    Rows are a constant row (odd ``d``) and cos/sin pairs at frequencies
    ``1..d//2``; these are orthogonal with equal norms whenever ``p > d``
    (``p >= d`` for odd ``d``).  ``p == d`` returns the identity.
    """
    if d < 1 or p < d:
        raise TooFew(f"need p >= d >= 1, got p={p}, d={d}")
    if p == d:
        return np.eye(d)
    k = np.arange(p)
    rows = []
    if d % 2:
        rows.append(np.full(p, 1.0 / math.sqrt(d)))
    for freq in range(1, d // 2 + 1):
        angle = 2.0 * math.pi * freq * k / p
        rows.append(math.sqrt(2.0 / d) * np.cos(angle))
        rows.append(math.sqrt(2.0 / d) * np.sin(angle))
    return np.array(rows)


def generate_fntf_2d(count_p):
    """Unit vectors at the ``p``-th roots of unity (rows); ``p = 2`` gives the standard basis."""
    if count_p < 2:
        raise TooFew("a planar FNTF needs at least 2 vectors")
    if count_p == 2:
        return np.eye(2)
    angle = 2.0 * math.pi * np.arange(count_p) / count_p
    return np.column_stack([np.cos(angle), np.sin(angle)])


def canonical_part_bases(space, tol=DEFAULT_TOL):
    """Orthonormal bases ``(E+, E-)`` of ``K+`` and ``K-`` (columns).

    Diagonal ``J`` yields coordinate vectors exactly.
    """
    _, v = sym_eig(space.j, tol)
    return v[:, : space.sig_plus], v[:, space.sig_plus :]


def _check_signature(space, p, q):
    m, n = space.signature
    if m < 1 or n < 1:
        raise BadSignature(f"J-frames need both signature parts, got ({m}, {n})")
    if p < m or q < n:
        raise TooFew(f"need p >= {m} and q >= {n}, got p={p}, q={q}")


def make_rng(seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def random_orthogonal(k, rng):
    q, r = np.linalg.qr(rng.standard_normal((k, k)))
    return q * np.sign(np.diag(r))


def generate_tight_j_frame(space, p, q, seed=None, tol=DEFAULT_TOL):
    """Weakly normalized tight J-frame with ``M+ = K+`` and ``M- = K-``.

    Bounds are ``p/m`` and (intrinsic) ``q/n``.  A seed applies a random
    rotation inside each part; without one the output is the bare harmonic frame.
    """
    _check_signature(space, p, q)
    m, n = space.signature
    e_plus, e_minus = canonical_part_bases(space, tol)
    c_plus, c_minus = harmonic_frame(m, p), harmonic_frame(n, q)
    if seed is not None:
        rng = make_rng(seed)
        c_plus = random_orthogonal(m, rng) @ c_plus
        c_minus = random_orthogonal(n, rng) @ c_minus
    vectors = np.vstack([(e_plus @ c_plus).T, (e_minus @ c_minus).T])
    return partition(space, vectors, tol)


# -- random families (test and experiment helpers) ---------------------------


def random_definite_basis(space, sign, rng, tilt=0.5, tol=DEFAULT_TOL):
    """Basis (columns) of a random maximal uniformly definite subspace.

    The subspace is the graph ``{x + K x}`` of a contraction ``K`` from one
    canonical part into the other with ``||K|| = tilt < 1``.
    """
    e_plus, e_minus = canonical_part_bases(space, tol)
    own, other = (e_plus, e_minus) if sign > 0 else (e_minus, e_plus)
    k = rng.standard_normal((other.shape[1], own.shape[1]))
    if k.size:
        k *= tilt / max(np.linalg.norm(k, 2), EPS)
    return own + other @ k


def random_j_frame(space, p, q, rng, tilt=0.5, weakly_normalized=False, tol=DEFAULT_TOL):
    """Random J-frame with tilted spans; positives first."""
    _check_signature(space, p, q)
    m, n = space.signature
    w_plus = random_definite_basis(space, 1, rng, tilt, tol)
    w_minus = random_definite_basis(space, -1, rng, tilt, tol)
    x = np.vstack([(w_plus @ rng.standard_normal((m, p))).T, (w_minus @ rng.standard_normal((n, q))).T])
    if weakly_normalized:
        sp = np.einsum("ij,jk,ik->i", x, space.j, x)
        x = x / np.sqrt(np.abs(sp))[:, None]
    return partition(space, x, tol)


def random_j_onb(space, rng, tol=DEFAULT_TOL):
    """J-orthonormal basis from intra-part rotations of the canonical basis, shuffled."""
    m, n = space.signature
    e_plus, e_minus = canonical_part_bases(space, tol)
    x = np.vstack([(e_plus @ random_orthogonal(m, rng)).T, (e_minus @ random_orthogonal(n, rng)).T])
    return partition(space, x[rng.permutation(space.dim)], tol)


def random_parseval_coords(k, count, rng, tol=DEFAULT_TOL):
    """``k x count`` matrix whose columns form a Parseval frame of R^k."""
    a = rng.standard_normal((k, count))
    w, v = sym_eig(a @ a.T, tol)
    return (v / np.sqrt(w)) @ v.T @ a


# -- minimization -------------------------------------------------------------


def _part_potential(c):
    g = c.T @ c
    return math.fsum((g * g).ravel())


def _normalize_columns(c):
    return c / np.linalg.norm(c, axis=0)


def sphere_gradient(c):
    """Tangent part of ``4 (C C^T) C`` for unit columns."""
    g = 4.0 * (c @ c.T) @ c
    return g - np.sum(g * c, axis=0) * c


def _descend(c, cfg):
    """Projected gradient descent with step halving on increase."""
    f = _part_potential(c)
    history = [f]
    step = cfg.step
    converged = False
    it = 0
    while it < cfg.max_iters:
        t = sphere_gradient(c)
        if np.linalg.norm(t) <= cfg.grad_tol:
            converged = True
            break
        while True:
            trial = _normalize_columns(c - step * t)
            ft = _part_potential(trial)
            # tolerate rounding-level increases near the floor
            if ft <= f * (1.0 + 8 * EPS):
                break
            step *= 0.5
            if step < cfg.step_floor:
                return c, it, False, history
        c, f = trial, ft
        history.append(f)
        it += 1
    return c, it, converged, history


def _is_monotone(history):
    h = np.asarray(history)
    return bool(np.all(h[1:] <= h[:-1] * (1.0 + 8 * EPS)))


def minimize_potential(space, p, q, cfg=MinimizeConfig(), tol=DEFAULT_TOL):
    """Minimize ``FP_J`` over weakly normalized families with ``M+- = K+-``.

    Each restart draws its own Philox stream from ``cfg.seed``; the best
    restart (lowest potential, earliest on ties) is returned.
    """
    _check_signature(space, p, q)
    m, n = space.signature
    e_plus, e_minus = canonical_part_bases(space, tol)
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best = None
    for r, ss in enumerate(streams):
        rng = np.random.Generator(np.random.Philox(ss))
        c_plus = _normalize_columns(rng.standard_normal((m, p)))
        c_minus = _normalize_columns(rng.standard_normal((n, q)))
        c_plus, it_p, ok_p, h_p = _descend(c_plus, cfg)
        c_minus, it_m, ok_m, h_m = _descend(c_minus, cfg)
        value = _part_potential(c_plus) + _part_potential(c_minus)
        if best is None or value < best[0]:
            best = (value, r, c_plus, c_minus, it_p + it_m, ok_p and ok_m, _is_monotone(h_p) and _is_monotone(h_m), (tuple(h_p), tuple(h_m)))

    _, r, c_plus, c_minus, iters, converged, monotone, history = best
    vectors = np.vstack([(e_plus @ c_plus).T, (e_minus @ c_minus).T])
    family = FrameFamily(space, vectors, tuple(range(p)), tuple(range(p, p + q)))
    fp = frame_potential(family)
    floor = potential_floor(p, q, m, n)
    _, _, spectra = frame_bounds(family, tol)
    return MinimizeResult(
        family=family,
        fp_j=fp,
        floor=floor,
        gap=fp - floor,
        iterations=iters,
        converged=converged,
        spectra=spectra,
        restart=r,
        monotone=monotone,
        history=history,
    )


def certify_minimum(result, tol=1e-9):
    """Check the equality case of the minimum: gap, flat spectra at ``p/m`` and ``q/n``, weak normalization.

    Accepts a :class:`MinimizeResult` or a bare :class:`FrameFamily`.
    """
    family = result.family if isinstance(result, MinimizeResult) else result
    ok, m_plus, m_minus = is_j_frame(family)
    if not ok:
        return False
    m, n = m_plus.dim_m, m_minus.dim_m
    gap = frame_potential(family) - potential_floor(family.p, family.q, m, n)
    _, _, (lam, mu) = frame_bounds(family)
    _, weakly = normalization_flags(family)
    return bool(
        gap <= tol
        and np.abs(lam - family.p / m).max() <= tol
        and np.abs(mu - family.q / n).max() <= tol
        and weakly
    )
