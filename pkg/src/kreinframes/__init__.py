"""Frames, Gram operators and frame potentials in finite-dimensional Krein spaces."""

from .errors import KreinError, NumericalError, ValidationError
from .frame import FrameFamily, analyze, compute_zeta, is_j_frame, partition
from .krein import KreinSpace, make_space_from_j, make_space_from_signature
from .numerics import DEFAULT_TOL, Tolerances
from .optimize import MinimizeConfig, certify_minimum, generate_tight_j_frame, minimize_potential
from .potential import frame_force, frame_potential, frame_potential_trace

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "FrameFamily",
    "KreinError",
    "KreinSpace",
    "MinimizeConfig",
    "NumericalError",
    "Tolerances",
    "ValidationError",
    "analyze",
    "certify_minimum",
    "compute_zeta",
    "frame_force",
    "frame_potential",
    "frame_potential_trace",
    "generate_tight_j_frame",
    "is_j_frame",
    "make_space_from_j",
    "make_space_from_signature",
    "minimize_potential",
    "partition",
]
