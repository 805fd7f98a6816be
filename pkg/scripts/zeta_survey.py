"""How zeta and the potential gap respond to tilting M+- away from the canonical parts.

Spans are graphs of contractions with norm ``tilt``; for each tilt we draw
random weakly normalized J-frames and report zeta and FP_J - floor.

    python scripts/zeta_survey.py --samples 200
"""

import argparse
from dataclasses import dataclass

import numpy as np

from kreinframes.frame import compute_zeta
from kreinframes.krein import make_space_from_signature
from kreinframes.optimize import make_rng, random_j_frame
from kreinframes.potential import frame_potential, potential_floor


@dataclass
class Config:
    m: int = 2
    n: int = 2
    p: int = 4
    q: int = 3
    samples: int = 200
    seed: int = 0
    tilts: tuple = (0.0, 0.2, 0.4, 0.6, 0.8, 0.95)


def main(cfg):
    space = make_space_from_signature(cfg.m, cfg.n)
    rng = make_rng(cfg.seed)
    floor = potential_floor(cfg.p, cfg.q, cfg.m, cfg.n)
    print(f"{'tilt':>6} {'zeta min':>10} {'zeta max':>10} {'gap min':>10} {'gap median':>11}")
    for tilt in cfg.tilts:
        zetas, gaps = [], []
        for _ in range(cfg.samples):
            f = random_j_frame(space, cfg.p, cfg.q, rng, tilt=tilt, weakly_normalized=True)
            zetas.append(compute_zeta(f))
            gaps.append(frame_potential(f) - floor)
        print(f"{tilt:6.2f} {min(zetas):10.6f} {max(zetas):10.6f} {min(gaps):10.4f} {np.median(gaps):11.4f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name in ("m", "n", "p", "q", "samples", "seed"):
        parser.add_argument(f"--{name}", type=int, default=getattr(Config, name))
    main(Config(**vars(parser.parse_args())))
