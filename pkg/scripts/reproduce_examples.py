"""Recompute the two worked examples and write the regression corpus.

    python scripts/reproduce_examples.py --out corpus
"""

import argparse
from dataclasses import dataclass
import math
from pathlib import Path

from kreinframes.frame import analyze, compute_zeta, partition, weakly_normalize
from kreinframes.io import emit_regression_corpus, ex35_vectors, ex314_vectors
from kreinframes.krein import make_space_from_signature
from kreinframes.potential import frame_force, frame_potential, pair_potential


@dataclass
class Config:
    out: Path = Path("corpus")


def summarize(name, family):
    a = analyze(family)
    print(f"{name}: p={family.p} q={family.q}")
    print(f"  gamma+ {a.gamma_plus:.12g}  gamma- {a.gamma_minus:.12g}  zeta {a.zeta:.12g}")
    print(f"  spectra+ {a.spectrum_plus}  spectra- {a.spectrum_minus}")
    print(f"  tight {a.is_tight}  parseval {a.is_parseval}  onb {a.is_onb}")


def main(cfg):
    s21 = make_space_from_signature(2, 1)
    summarize("four-vector Parseval family", partition(s21, ex35_vectors()))
    f = partition(s21, ex314_vectors())
    summarize("five-vector family", f)
    zeta = compute_zeta(f)
    for i, j in ((1, 3), (4, 5), (2, 5)):
        print(f"  force coefficient ({i},{j}) = {frame_force(f, zeta, i - 1, j - 1).coefficient:.15g}")
    for i, j in ((1, 2), (4, 5), (2, 5)):
        print(f"  pair potential ({i},{j}) = {pair_potential(f, zeta, i - 1, j - 1):.15g}")
    w = weakly_normalize(f)
    print(f"  weakly normalized FP_J = {frame_potential(w):.15g} (floor 8.5)")
    print(f"  mixed closed form 2(sqrt(7/6) sqrt5 zeta + 1 - 1/sqrt2) = "
          f"{2 * (math.sqrt(7 / 6) * math.sqrt(5) * zeta + 1 - 1 / math.sqrt(2)):.15g}")
    for path in emit_regression_corpus(cfg.out):
        print(f"wrote {path}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Config.out)
    main(Config(**vars(parser.parse_args())))
