"""Command-line interface.

Subcommands: analyze, potential, force, minimize, generate, combine, corpus.
Exit codes: 0 success, 1 invalid input, 2 numerical failure or non-convergence.
Member indices on the command line and in reports are 1-based.
"""

import argparse
import math
from pathlib import Path
import sys

import numpy as np

from .errors import KreinError, ValidationError
from .frame import combine, compute_zeta, is_j_frame
from .io import (
    analysis_document,
    clean,
    dumps,
    emit_regression_corpus,
    frame_document,
    load_document,
)
from .krein import make_space_from_signature
from .numerics import Tolerances
from .optimize import MinimizeConfig, certify_minimum, generate_tight_j_frame, minimize_potential
from .potential import frame_force, potential_report


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _signature(text):
    try:
        m, n = (int(t) for t in text.split("+"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"signature must look like 2+1, got {text!r}")
    return m, n


def build_parser():
    parser = _Parser(prog="kreinframes", description="Krein-space frame toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, type=Path)
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--format", choices=("text", "json"), default="text")

    common(sub.add_parser("analyze", help="structural analysis of a family"))
    p = sub.add_parser("potential", help="J-frame potential report")
    common(p)
    p.add_argument("--zeta", type=float, default=None)
    p = sub.add_parser("force", help="J-frame force between two members")
    common(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--zeta", type=float, default=None)
    p = sub.add_parser("minimize", help="minimize FP_J for a signature")
    common(p, needs_input=False)
    p.add_argument("--signature", type=_signature, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=50_000)
    p.add_argument("--restarts", type=int, default=8)
    p = sub.add_parser("generate", help="write a tight weakly normalized J-frame")
    common(p, needs_input=False)
    p.add_argument("--signature", type=_signature, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", type=Path, default=None)
    p = sub.add_parser("combine", help="alpha f + beta g for two Parseval J-frames")
    common(p)
    p.add_argument("--other", type=Path, required=True)
    p.add_argument("--alpha", type=float, default=1 / math.sqrt(2))
    p.add_argument("--beta", type=float, default=None)
    p = sub.add_parser("corpus", help="emit the worked-example regression corpus")
    p.add_argument("--output", type=Path, required=True)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _tol(args):
    t = args.tolerance
    return Tolerances(eig_tol=min(1e-12, t), verify_tol=t)


def _read(path, tol):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    return load_document(text, tol)


def _text_lines(doc, prefix=""):
    for key, value in doc.items():
        if isinstance(value, dict):
            yield f"{prefix}{key}:"
            yield from _text_lines(value, prefix + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            yield f"{prefix}{key}:"
            for item in value:
                yield prefix + "  - " + ", ".join(f"{k}={v}" for k, v in item.items())
        else:
            yield f"{prefix}{key}: {value}"


def _emit(doc, fmt, out):
    if fmt == "json":
        out.write(dumps(doc))
    else:
        out.write("\n".join(_text_lines(clean(doc))) + "\n")


def cmd_analyze(args, out):
    tol = _tol(args)
    doc = _read(args.input, tol)
    report = analysis_document(doc.family, tol, doc.published)
    _emit(report, args.format, out)
    return 0


def _zeta_for(family, given, tol):
    if given is not None:
        return given
    return compute_zeta(family, tol)


def cmd_potential(args, out):
    tol = _tol(args)
    doc = _read(args.input, tol)
    zeta = args.zeta
    if zeta is None and is_j_frame(doc.family, tol)[0]:
        zeta = compute_zeta(doc.family, tol)
    rep = potential_report(doc.family, zeta, tol)
    _emit(
        {
            "zeta": zeta,
            "fp_j": rep.fp_j,
            "fp_trace": rep.fp_trace,
            "tp_j": rep.tp_j,
            "floor": rep.floor,
            "gap": rep.gap,
            "intrinsic_norms": rep.intrinsic_norms,
            "pair_matrix": rep.pair_matrix,
        },
        args.format,
        out,
    )
    return 0


def cmd_force(args, out):
    tol = _tol(args)
    doc = _read(args.input, tol)
    zeta = _zeta_for(doc.family, args.zeta, tol)
    n = doc.family.size
    for name, k in (("--i", args.i), ("--j", args.j)):
        if not 1 <= k <= n:
            raise ValidationError(f"{name} {k} outside 1..{n}")
    res = frame_force(doc.family, zeta, args.i - 1, args.j - 1, tol)
    _emit(
        {"i": args.i, "j": args.j, "zeta": zeta, "coefficient": res.coefficient, "direction": res.direction, "force": res.vector},
        args.format,
        out,
    )
    return 0


def cmd_minimize(args, out):
    tol = _tol(args)
    m, n = args.signature
    space = make_space_from_signature(m, n)
    cfg = MinimizeConfig(max_iters=args.max_iters, restarts=args.restarts, seed=args.seed)
    res = minimize_potential(space, args.p, args.q, cfg, tol)
    lam, mu = res.spectra
    _emit(
        {
            "signature": {"plus": m, "minus": n},
            "p": args.p,
            "q": args.q,
            "seed": args.seed,
            "fp_j": res.fp_j,
            "floor": res.floor,
            "gap": res.gap,
            "iterations": res.iterations,
            "restart": res.restart,
            "converged": res.converged,
            "certified": certify_minimum(res, 1e-6),
            "spectra": {"plus": lam, "minus": mu},
            "vectors": res.family.vectors,
        },
        args.format,
        out,
    )
    return 0 if res.converged else 2


def cmd_generate(args, out):
    tol = _tol(args)
    m, n = args.signature
    space = make_space_from_signature(m, n)
    fam = generate_tight_j_frame(space, args.p, args.q, args.seed, tol)
    text = dumps(frame_document(space, fam.vectors))
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
        out.write(f"wrote {args.output}\n")
    else:
        out.write(text)
    return 0


def cmd_combine(args, out):
    tol = _tol(args)
    f = _read(args.input, tol).family
    g = _read(args.other, tol).family
    alpha = args.alpha
    beta = args.beta if args.beta is not None else math.sqrt(max(1.0 - alpha * alpha, 0.0))
    report, combined = combine(f, g, alpha, beta, tol)
    _emit(
        {
            "alpha": alpha,
            "beta": beta,
            "conditions_hold": report.holds,
            "sign_preserved": list(report.sign_preserved),
            "skew_plus": report.skew_plus,
            "skew_minus": report.skew_minus,
            "frame_cross_plus": report.frame_cross_plus,
            "frame_cross_minus": report.frame_cross_minus,
            "combined_parseval": report.combined_parseval,
            "combined": None if combined is None else frame_document(f.space, combined.vectors),
        },
        args.format,
        out,
    )
    return 0


def cmd_corpus(args, out):
    paths = emit_regression_corpus(args.output, _tol(args))
    _emit({"written": [str(p) for p in paths]}, args.format, out)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "potential": cmd_potential,
    "force": cmd_force,
    "minimize": cmd_minimize,
    "generate": cmd_generate,
    "combine": cmd_combine,
    "corpus": cmd_corpus,
}


def run_command(argv, out=None, err=None):
    """Run one CLI invocation; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except KreinError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 1


def main(argv=None):
    np.set_printoptions(precision=12)
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
