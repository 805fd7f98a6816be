"""JSON frame documents, analysis documents and the worked-example corpus.

Frame document::

    {"space": {"signature": {"plus": 2, "minus": 1}},   # or {"J": [[...], ...]}
     "vectors": [[...], ...],
     "labels": ["f1", ...],                               # optional
     "published": {...}}                                  # optional reference values

``published`` may carry ``gamma_plus``, ``gamma_minus``, ``zeta``, ``fp_j``,
``pair_potentials`` and ``force_coefficients`` (the last two keyed by
1-based ``"i,j"``).  Analysis reports every published value the computation
contradicts.  Indices in all documents are 1-based.
"""

from dataclasses import dataclass, field
import json
import math
from pathlib import Path

import numpy as np

from .errors import KreinError, ParseError, ValidationError
from .frame import analyze, disjointness, is_j_frame, partition
from .krein import make_space_from_j, make_space_from_signature
from .numerics import DEFAULT_TOL
from .potential import frame_force, frame_potential, pair_potential, potential_floor

PUBLISHED_RTOL = 1e-9


@dataclass
class FrameDocument:
    space: object
    family: object
    labels: list = field(default_factory=list)
    published: dict = field(default_factory=dict)


def _at(path, exc):
    exc.path = path
    exc.args = (f"{path}: {exc}",)
    return exc


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _at(path, ValidationError(f"expected a number, got {value!r}"))
    if not math.isfinite(value):
        raise _at(path, ValidationError("entries must be finite"))
    return float(value)


def _space_from(spec, tol):
    if not isinstance(spec, dict):
        raise _at("space", ParseError("space must be an object"))
    if "signature" in spec:
        sig = spec["signature"]
        if not isinstance(sig, dict) or not {"plus", "minus"} <= sig.keys():
            raise _at("space.signature", ParseError("expected {plus, minus}"))
        m, n = (sig[k] for k in ("plus", "minus"))
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (m, n)):
            raise _at("space.signature", ValidationError("plus/minus must be integers"))
        try:
            return make_space_from_signature(m, n)
        except KreinError as exc:
            raise _at("space.signature", exc)
    if "J" in spec:
        rows = spec["J"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise _at("space.J", ParseError("J must be a list of rows"))
        j = [[_number(v, f"space.J[{i}][{k}]") for k, v in enumerate(r)] for i, r in enumerate(rows)]
        if len({len(r) for r in j}) > 1:
            raise _at("space.J", ValidationError("J rows have unequal lengths"))
        try:
            return make_space_from_j(j, tol)
        except KreinError as exc:
            raise _at("space.J", exc)
    raise _at("space", ParseError("space needs 'signature' or 'J'"))


def load_document(text, tol=DEFAULT_TOL):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    for key in ("space", "vectors"):
        if key not in data:
            raise _at(key, ParseError("missing"))
    space = _space_from(data["space"], tol)
    raw = data["vectors"]
    if not isinstance(raw, list) or not raw:
        raise _at("vectors", ValidationError("vectors must be a nonempty list"))
    vectors = []
    for i, v in enumerate(raw):
        if not isinstance(v, list):
            raise _at(f"vectors[{i}]", ParseError("vector must be a list"))
        if len(v) != space.dim:
            raise _at(f"vectors[{i}]", ValidationError(f"length {len(v)} != space dimension {space.dim}"))
        vectors.append([_number(x, f"vectors[{i}][{k}]") for k, x in enumerate(v)])
    try:
        family = partition(space, vectors, tol)
    except KreinError as exc:
        index = getattr(exc, "index", None)
        raise _at(f"vectors[{index}]" if index is not None else "vectors", exc)
    labels = data.get("labels") or [f"f{i + 1}" for i in range(len(vectors))]
    if len(labels) != len(vectors):
        raise _at("labels", ValidationError("one label per vector"))
    return FrameDocument(space, family, list(labels), dict(data.get("published") or {}))


def read_frame_document(text, tol=DEFAULT_TOL):
    """Parse and validate a frame document; returns ``(space, family)``."""
    doc = load_document(text, tol)
    return doc.space, doc.family


def space_spec(space):
    canonical = np.diag([1.0] * space.sig_plus + [-1.0] * space.sig_minus)
    if np.array_equal(space.j, canonical):
        return {"signature": {"plus": space.sig_plus, "minus": space.sig_minus}}
    return {"J": space.j.tolist()}


def frame_document(space, vectors, labels=None, published=None):
    doc = {"space": space_spec(space), "vectors": np.asarray(vectors, dtype=float).tolist()}
    if labels:
        doc["labels"] = list(labels)
    if published:
        doc["published"] = published
    return doc


def write_frame_document(space, vectors, labels=None, published=None):
    return dumps(frame_document(space, vectors, labels, published))


def clean(obj):
    if isinstance(obj, dict):
        return {k: clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def dumps(doc):
    return json.dumps(clean(doc), indent=2, allow_nan=False) + "\n"


def _pair_key(key):
    i, j = (int(t) - 1 for t in key.split(","))
    return i, j


def _differs(published, computed):
    return abs(published - computed) > PUBLISHED_RTOL * max(1.0, abs(computed))


def discrepancy_notes(family, published, zeta, gammas, tol=DEFAULT_TOL):
    """Published reference values that the computation contradicts."""
    notes = []

    def note(name, pub, got):
        if _differs(pub, got):
            notes.append({"quantity": name, "published": pub, "computed": got})

    if gammas is not None:
        for key, got in zip(("gamma_plus", "gamma_minus"), gammas):
            if key in published:
                note(key, published[key], got)
    if zeta is not None and "zeta" in published:
        note("zeta", published["zeta"], zeta)
    if "fp_j" in published:
        note("fp_j", published["fp_j"], frame_potential(family))
    if zeta is not None:
        for key, pub in sorted(published.get("pair_potentials", {}).items()):
            i, j = _pair_key(key)
            note(f"pair_potential({key})", pub, pair_potential(family, zeta, i, j))
        for key, pub in sorted(published.get("force_coefficients", {}).items()):
            i, j = _pair_key(key)
            note(f"force_coefficient({key})", pub, frame_force(family, zeta, i, j, tol).coefficient)
    return notes


def analysis_document(family, tol=DEFAULT_TOL, published=None):
    """Machine-readable analysis of a family (mirrors :func:`kreinframes.frame.analyze`)."""
    published = published or {}
    doc = {
        "partition": {
            "i_plus": [i + 1 for i in family.i_plus],
            "i_minus": [i + 1 for i in family.i_minus],
        }
    }
    try:
        a = analyze(family, tol)
    except KreinError:
        a = None
    disjoint = strictly = None
    if family.p and family.q:
        disjoint, strictly = disjointness(family, tol)
    fp = frame_potential(family)
    if a is None:
        ok = False
        if family.p and family.q:
            ok = is_j_frame(family, tol)[0]
        doc.update(
            zeta=None,
            gamma_plus=None,
            gamma_minus=None,
            bounds=None,
            spectra=None,
            tight_constants=None,
            verdicts={
                "j_frame": ok,
                "tight": False,
                "parseval": False,
                "onb": False,
                "weakly_normalized": None,
                "normalized": None,
                "disjoint": disjoint,
                "strictly_disjoint": strictly,
            },
            fp_j=fp,
            floor=None,
            gap=None,
            discrepancy_notes=discrepancy_notes(family, published, None, None, tol),
        )
        return doc
    floor = potential_floor(family.p, family.q, a.m_plus.dim_m, a.m_minus.dim_m)
    doc.update(
        zeta=a.zeta,
        gamma_plus=a.gamma_plus,
        gamma_minus=a.gamma_minus,
        bounds={"plus": list(a.bound_plus), "minus": list(a.bound_minus)},
        spectra={"plus": a.spectrum_plus, "minus": a.spectrum_minus},
        tight_constants={"a_plus": a.a_plus, "a_minus": a.a_minus},
        verdicts={
            "j_frame": True,
            "tight": a.is_tight,
            "parseval": a.is_parseval,
            "onb": a.is_onb,
            "weakly_normalized": a.is_weakly_normalized,
            "normalized": a.is_normalized,
            "disjoint": disjoint,
            "strictly_disjoint": strictly,
        },
        fp_j=fp,
        floor=floor,
        gap=fp - floor,
        discrepancy_notes=discrepancy_notes(family, published, a.zeta, (a.gamma_plus, a.gamma_minus), tol),
    )
    return doc


# -- worked-example corpus ----------------------------------------------------

_R = math.sqrt


def _c0(alpha):
    return (_R((1 + alpha) / 2) + _R((1 - alpha) / 2)) / _R(2)


def ex35_vectors():
    s = _R(2) / _R(3)
    return [
        [s * -_R(3) / 2, s * -0.5, 0.0],
        [s * _R(3) / 2, s * -0.5, 0.0],
        [0.0, s, 0.0],
        [1 / _R(2), 0.0, _R(3) / _R(2)],
    ]


def ex314_vectors():
    return [
        [1.0, 0.0, -1 / _R(6)],
        [0.0, 1.0, -1 / _R(6)],
        [1.0, 1.0, -_R(2) / _R(3)],
        [1 / _R(5), 1 / _R(5), _R(3) / _R(5)],
        [1.0, 1.0, _R(3)],
    ]


EX314_PRINTED_SCALES = (6 / 5, 6 / 5, 3 / 4, 5.0, 1.0)
EX314_WEAK_SCALES = (_R(6 / 5), _R(6 / 5), _R(3 / 4), _R(5), 1.0)


def _published_35():
    return {
        "gamma_plus": 1.0,
        "gamma_minus": 0.5,
        "zeta": 3 / (2 * _R(2)) + _R(3) / (2 * _R(2)),
    }


def _published_314():
    gp, gm = _R(6) / _R(7), 2 / _R(5)
    zeta_printed = _c0(gp) + _c0(gm)
    return {
        "gamma_plus": gp,
        "gamma_minus": gm,
        "zeta": zeta_printed,
        "pair_potentials": {"1,2": -589 / 36**2, "4,5": 1 / 5 - 26**2 / (4 * 25**2)},
        "force_coefficients": {"1,3": 4 / 3, "4,5": 2 / _R(5)},
    }


def _published_314_weak():
    return {"fp_j": (3 + 72 / 25**2 + 36 / 25) + 26}


def corpus_documents():
    """Name -> frame document for the shipped worked examples."""
    s21 = make_space_from_signature(2, 1)
    v314 = ex314_vectors()
    return {
        "ex35.json": frame_document(s21, ex35_vectors(), ["v1", "v2", "v3", "v4"], _published_35()),
        "ex314.json": frame_document(s21, v314, ["f1", "f2", "f3", "f4", "f5"], _published_314()),
        "ex314_weak.json": frame_document(
            s21,
            [[c * x for x in v] for c, v in zip(EX314_WEAK_SCALES, v314)],
            ["f1~", "f2~", "f3~", "f4~", "f5~"],
            _published_314_weak(),
        ),
        "ex314_printed_scaling.json": frame_document(
            s21,
            [[c * x for x in v] for c, v in zip(EX314_PRINTED_SCALES, v314)],
            ["f1~", "f2~", "f3~", "f4~", "f5~"],
            _published_314_weak(),
        ),
    }


def _fmt(x):
    return f"{x:.12g}"


def discrepancy_markdown(tol=DEFAULT_TOL):
    """Markdown table of every published worked-example value the toolkit contradicts."""
    lines = [
        "# Worked-example discrepancies",
        "",
        "Published values recomputed with this toolkit. Only values that disagree",
        f"(relative tolerance {PUBLISHED_RTOL:g}) are listed.",
        "",
    ]
    for name, doc in corpus_documents().items():
        loaded = load_document(json.dumps(doc), tol)
        notes = analysis_document(loaded.family, tol, loaded.published)["discrepancy_notes"]
        if name == "ex314_printed_scaling.json":
            sp = np.einsum("ij,jk,ik->i", loaded.family.vectors, loaded.space.j, loaded.family.vectors)
            bad = [i + 1 for i, v in enumerate(sp) if abs(abs(v) - 1) > tol.verify_tol]
            if bad:
                notes.append(
                    {
                        "quantity": "weak normalization of members " + ", ".join(map(str, bad)),
                        "published": "claimed",
                        "computed": "self-products " + ", ".join(_fmt(sp[i - 1]) for i in bad),
                    }
                )
        lines.append(f"## {name}")
        lines.append("")
        if not notes:
            lines.append("No discrepancies.")
        else:
            lines.append("| quantity | published | computed |")
            lines.append("|---|---|---|")
            for n in notes:
                pub, got = n["published"], n["computed"]
                pub = _fmt(pub) if isinstance(pub, float) else pub
                got = _fmt(got) if isinstance(got, float) else got
                lines.append(f"| {n['quantity']} | {pub} | {got} |")
        lines.append("")
    return "\n".join(lines)


def emit_regression_corpus(directory, tol=DEFAULT_TOL):
    """Write the worked-example documents and ``discrepancies.md``; returns the paths."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, doc in corpus_documents().items():
        path = out / name
        path.write_text(dumps(doc), encoding="utf-8")
        paths.append(path)
    path = out / "discrepancies.md"
    path.write_text(discrepancy_markdown(tol), encoding="utf-8")
    paths.append(path)
    return paths
