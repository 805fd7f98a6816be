"""Minimize FP_J over a grid of signatures and family sizes; report the gap to p^2/m + q^2/n.

    python scripts/floor_sweep.py --max-dim 4 --extra 3 --csv sweep.csv
"""

import argparse
import csv
from dataclasses import asdict, dataclass
from pathlib import Path
import sys
import time

from kreinframes.krein import make_space_from_signature
from kreinframes.optimize import MinimizeConfig, certify_minimum, minimize_potential


@dataclass
class Config:
    max_dim: int = 4
    extra: int = 3
    seed: int = 0
    restarts: int = 8
    csv: Path | None = None


def rows(cfg):
    opt = MinimizeConfig(seed=cfg.seed, restarts=cfg.restarts)
    for dim in range(2, cfg.max_dim + 1):
        for m in range(1, dim):
            n = dim - m
            space = make_space_from_signature(m, n)
            for dp in range(cfg.extra + 1):
                for dq in range(cfg.extra + 1):
                    p, q = m + dp, n + dq
                    t0 = time.perf_counter()
                    res = minimize_potential(space, p, q, opt)
                    yield {
                        "m": m, "n": n, "p": p, "q": q,
                        "floor": res.floor, "fp_j": res.fp_j, "gap": res.gap,
                        "iterations": res.iterations, "restart": res.restart,
                        "converged": res.converged, "certified": certify_minimum(res, 1e-6),
                        "seconds": round(time.perf_counter() - t0, 4),
                    }


def main(cfg):
    out = open(cfg.csv, "w", newline="") if cfg.csv else sys.stdout
    writer = None
    worst = 0.0
    for row in rows(cfg):
        if writer is None:
            writer = csv.DictWriter(out, fieldnames=list(row))
            writer.writeheader()
        writer.writerow(row)
        worst = max(worst, abs(row["gap"]))
    if cfg.csv:
        out.close()
    print(f"config {asdict(cfg)}: largest |gap| {worst:.2e}", file=sys.stderr)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-dim", type=int, default=Config.max_dim)
    parser.add_argument("--extra", type=int, default=Config.extra)
    parser.add_argument("--seed", type=int, default=Config.seed)
    parser.add_argument("--restarts", type=int, default=Config.restarts)
    parser.add_argument("--csv", type=Path, default=None)
    main(Config(**vars(parser.parse_args())))
