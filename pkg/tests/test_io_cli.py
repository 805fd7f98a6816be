import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kreinframes.cli import run_command
from kreinframes.errors import NeutralVector, NotInvolution, ParseError, ValidationError
from kreinframes.frame import disjointness, is_j_onb, is_parseval, is_tight, normalization_flags
from kreinframes.io import (
    analysis_document,
    corpus_documents,
    dumps,
    emit_regression_corpus,
    frame_document,
    load_document,
    read_frame_document,
    write_frame_document,
)
from kreinframes.krein import make_space_from_signature

from conftest import R5


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(dumps(doc), encoding="utf-8")
    return path


@pytest.fixture
def corpus(tmp_path):
    emit_regression_corpus(tmp_path)
    return tmp_path


# -- documents ----------------------------------------------------------------------


def test_read_ex35():
    space, family = read_frame_document(dumps(corpus_documents()["ex35.json"]))
    assert space.signature == (2, 1)
    assert (family.p, family.q) == (3, 1)


@pytest.mark.parametrize(
    "doc, exc, where",
    [
        ({"space": {"signature": {"plus": 2, "minus": 1}}, "vectors": [[1, 0]]}, ValidationError, "vectors[0]"),
        ({"space": {"J": [[1, 0], [0, 2]]}, "vectors": [[1, 0]]}, NotInvolution, "space.J"),
        ({"space": {"signature": {"plus": 1, "minus": 1}}, "vectors": [[1, 0], [1, 1]]}, NeutralVector, "vectors[1]"),
        ({"space": {"signature": {"plus": 1, "minus": 1}}, "vectors": [[1, "a"]]}, ValidationError, "vectors[0][1]"),
        ({"space": {"signature": {"plus": 1, "minus": 1}}}, ParseError, "vectors"),
        ({"space": {}, "vectors": [[1, 0]]}, ParseError, "space"),
    ],
)
def test_document_errors_carry_paths(doc, exc, where):
    with pytest.raises(exc) as info:
        load_document(json.dumps(doc))
    assert info.value.path == where
    assert str(info.value).startswith(where)


def test_malformed_json():
    with pytest.raises(ParseError):
        load_document("{not json")


def test_explicit_j_document():
    swap = [[0.0, 1.0], [1.0, 0.0]]
    space, family = read_frame_document(json.dumps({"space": {"J": swap}, "vectors": [[1, 0.5], [1, -1]]}))
    assert space.signature == (1, 1)
    assert (family.p, family.q) == (1, 1)
    assert frame_document(space, family.vectors)["space"] == {"J": swap}


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False).filter(lambda v: abs(v) > 1e-3)


@given(st.lists(st.tuples(finite, finite, finite), min_size=1, max_size=6))
def test_round_trip_exact(rows):
    space = make_space_from_signature(2, 1)
    x = np.array(rows)
    sp = np.einsum("ij,jk,ik->i", x, space.j, x)
    if np.any(np.abs(sp) <= 1e-9 * np.einsum("ij,ij->i", x, x)):
        return
    _, family = read_frame_document(write_frame_document(space, x))
    np.testing.assert_array_equal(family.vectors, x)


def test_corpus_is_deterministic(tmp_path):
    a = {p.name: p.read_bytes() for p in emit_regression_corpus(tmp_path / "a")}
    b = {p.name: p.read_bytes() for p in emit_regression_corpus(tmp_path / "b")}
    assert a == b
    assert set(a) == {"ex35.json", "ex314.json", "ex314_weak.json", "ex314_printed_scaling.json", "discrepancies.md"}


def test_corpus_contents(corpus):
    _, f35 = read_frame_document((corpus / "ex35.json").read_text())
    assert f35.size == 4
    _, f314 = read_frame_document((corpus / "ex314.json").read_text())
    assert f314.size == 5
    md = (corpus / "discrepancies.md").read_text()
    for quantity in ("pair_potential(1,2)", "pair_potential(4,5)", "| fp_j |", "gamma_plus", "gamma_minus", "| zeta |"):
        assert quantity in md
    assert "force_coefficient" not in md
    assert "## ex35.json\n\nNo discrepancies." in md


def test_analysis_verdicts_match_operations(corpus):
    for name in ("ex35.json", "ex314.json", "ex314_weak.json"):
        doc = load_document((corpus / name).read_text())
        f = doc.family
        v = analysis_document(f, published=doc.published)["verdicts"]
        assert v["tight"] == is_tight(f)[0]
        assert v["parseval"] == is_parseval(f)
        assert v["onb"] == is_j_onb(f)
        assert (v["normalized"], v["weakly_normalized"]) == normalization_flags(f)
        assert (v["disjoint"], v["strictly_disjoint"]) == disjointness(f)


# -- command line ---------------------------------------------------------------------


def test_cli_analyze_ex35(corpus):
    code, out, _ = run("analyze", "--input", corpus / "ex35.json", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["zeta"] == pytest.approx(1.673032, abs=1e-6)
    assert doc["verdicts"]["parseval"] is True
    assert doc["discrepancy_notes"] == []


def test_cli_analyze_text(corpus):
    code, out, _ = run("analyze", "--input", corpus / "ex35.json")
    assert code == 0 and "parseval: True" in out


def test_cli_force(corpus):
    code, out, _ = run("force", "--input", corpus / "ex314.json", "--i", 1, "--j", 3, "--format", "json")
    assert code == 0
    assert json.loads(out)["coefficient"] == pytest.approx(4 / 3, abs=1e-12)
    code, out, _ = run("force", "--input", corpus / "ex314.json", "--i", 4, "--j", 5, "--format", "json")
    assert json.loads(out)["coefficient"] == pytest.approx(2 / R5, abs=1e-12)


def test_cli_potential(corpus):
    code, out, _ = run("potential", "--input", corpus / "ex314_weak.json", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["fp_j"] == pytest.approx(8.68, abs=1e-12)
    assert doc["pair_matrix"][0][0] is None


def test_cli_minimize(tmp_path):
    argv = ("minimize", "--signature", "2+1", "--p", 3, "--q", 2, "--seed", 7, "--format", "json")
    code, out, _ = run(*argv)
    assert code == 0
    doc = json.loads(out)
    assert doc["gap"] <= 1e-6 and doc["fp_j"] == pytest.approx(8.5, abs=1e-6)
    assert doc["converged"] and doc["certified"]
    assert run(*argv)[1] == out


def test_cli_minimize_non_convergence():
    code, _, _ = run("minimize", "--signature", "3+2", "--p", 5, "--q", 3, "--max-iters", 1, "--restarts", 1)
    assert code == 2


def test_cli_generate_round_trip(tmp_path):
    path = tmp_path / "tight.json"
    code, _, _ = run("generate", "--signature", "2+2", "--p", 4, "--q", 3, "--seed", 1, "--output", path)
    assert code == 0
    code, out, _ = run("analyze", "--input", path, "--format", "json")
    doc = json.loads(out)
    assert doc["verdicts"]["tight"] and doc["verdicts"]["weakly_normalized"]
    assert abs(doc["gap"]) <= 1e-9


def test_cli_combine(tmp_path):
    s = make_space_from_signature(2, 2)
    f = write(tmp_path, "f.json", frame_document(s, np.eye(4)))
    g = write(tmp_path, "g.json", frame_document(s, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))
    code, out, _ = run("combine", "--input", f, "--other", g, "--alpha", math.cos(0.4), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["conditions_hold"] and doc["combined_parseval"]
    assert doc["beta"] == pytest.approx(math.sin(0.4))
    code, out, _ = run("combine", "--input", f, "--other", f, "--format", "json")
    assert not json.loads(out)["combined_parseval"]


@pytest.mark.parametrize(
    "argv",
    [
        ("frobnicate",),
        ("analyze",),
        ("analyze", "--input", "/nonexistent/x.json"),
        ("minimize", "--signature", "two", "--p", "3", "--q", "1"),
        ("force", "--input", "CORPUS/ex314.json", "--i", "1", "--j", "1"),
        ("force", "--input", "CORPUS/ex314.json", "--i", "1", "--j", "9"),
        ("analyze", "--input", "CORPUS/ex35.json", "--tolerance", "0"),
    ],
)
def test_cli_validation_exit_code(corpus, argv):
    argv = [a.replace("CORPUS", str(corpus)) for a in argv]
    code, _, err = run(*argv)
    assert code == 1
    assert err.startswith("error:")


def test_cli_not_j_frame_force(tmp_path):
    s = make_space_from_signature(2, 1)
    path = write(tmp_path, "deficient.json", frame_document(s, [[1, 0, 0], [2, 0, 0], [0, 0, 1]]))
    assert run("force", "--input", path, "--i", 1, "--j", 2)[0] == 1


def test_module_entry_point(corpus):
    proc = subprocess.run(
        [sys.executable, "-m", "kreinframes", "force", "--input", str(corpus / "ex314.json"), "--i", "1", "--j", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "coefficient: 1.333333333333" in proc.stdout
