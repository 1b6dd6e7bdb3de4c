from __future__ import annotations

import json

import pytest

from gpcat import diagrams as dg
from gpcat.cli import main
from gpcat.linalg import SparseRationalMatrix
from gpcat.morphisms import Morphism

from conftest import C2

ID1 = "1 -> 1; parts: [1 1']; labels:"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compose(capsys):
    assert run(capsys, "compose", ID1, ID1) == (0, f"d^0 * <{ID1}>\n", "")
    code, out, _ = run(capsys, "compose", "1 -> 0; parts: [1]; labels:", "0 -> 1; parts: [1']; labels:")
    assert out == "d^1 * <0 -> 0; parts: []; labels:>\n"
    code, out, _ = run(capsys, "compose", "--group", "cyclic:2", "--json",
                       "2 -> 1; parts: [1 2 1']; labels: 2:1", "1 -> 2; parts: [1 1' 2']; labels:")
    assert json.loads(out) == {"zero": True}


def test_exit_codes(capsys):
    code, _, err = run(capsys, "compose", "1 -> 0; parts: [1]; labels:", "1 -> 0; parts: [1]; labels:")
    assert code == 3 and "1->0" in err
    assert run(capsys, "compose", "nonsense", ID1)[0] == 2
    assert run(capsys, "dims", "--group", "dihedral:3")[0] == 2
    big = "4 -> 4; parts: [1|2|3|4|1'|2'|3'|4']; labels:"
    assert run(capsys, "phi", "--group", "cyclic:2", "--n", "3", big)[0] == 4
    assert run(capsys, "eval-word", "merge; merge")[0] == 3


def test_phi_dumps(capsys):
    code, out, _ = run(capsys, "phi", "--group", "cyclic:2", "1 -> 1; parts: [1 1']; labels: 1:1")
    m = SparseRationalMatrix.from_triplets(out)
    assert m.to_dense() == [[0, 1], [1, 0]]
    code, out, _ = run(capsys, "phi", "--json", ID1)
    assert SparseRationalMatrix.from_json(out) == SparseRationalMatrix.identity(1)


def test_dims_and_enumerate(capsys):
    assert run(capsys, "dims", "--group", "cyclic:1", "--k", "2", "--l", "2")[1] == "15\n"
    assert run(capsys, "dims", "--group", "cyclic:2", "--k", "1", "--l", "1")[1] == "3\n"
    _, out, _ = run(capsys, "enumerate", "--group", "cyclic:2", "--k", "1", "--l", "2")
    lines = out.splitlines()
    assert [dg.parse_diagram(x, C2) for x in lines] == dg.enumerate_diagrams(1, 2, C2)


def test_tensor_dual_decompose(capsys):
    _, out, _ = run(capsys, "tensor", ID1, "1 -> 0; parts: [1]; labels:")
    assert out.strip() == "2 -> 1; parts: [1 | 2 1']; labels:"
    _, out, _ = run(capsys, "dual", "2 -> 1; parts: [1 2 1']; labels:")
    assert out.strip() == "1 -> 2; parts: [1 1' 2']; labels:"
    _, out, _ = run(capsys, "decompose", "2 -> 1; parts: [1 2 1']; labels:")
    assert out.strip() == "merge"
    _, out, _ = run(capsys, "decompose", "--plum", "--json", "2 -> 2; parts: [1 2' | 2 1']; labels:")
    assert json.loads(out)["right"] == [2, 1]


def test_eval_word_json_round_trip(capsys):
    _, out, _ = run(capsys, "eval-word", "--group", "cyclic:2", "--json", "pinb; split; tok(1) id")
    m = Morphism.from_json(json.loads(out), C2)
    assert m.k == 0 and m.l == 2 and len(m.terms) == 1
    _, out, _ = run(capsys, "eval-word", "--d", "7/2", "pinb; pint")
    assert out.strip() == "(7/2) * <0 -> 0; parts: []; labels:>"


def test_structure_and_gram(capsys):
    _, out, _ = run(capsys, "structure", "--group", "cyclic:2", "--k", "1")
    assert out.splitlines()[0] == "i,j,basisIndex,coeffPolynomial" and len(out.splitlines()) == 10
    _, out, _ = run(capsys, "gram", "--group", "cyclic:2", "--k", "1", "--d", "2", "--json")
    data = json.loads(out)
    assert data["rank"] == 2 and data["determinant"] == "-2*d^3 + 1*d^4"


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "relations", "--group", "cyclic:2")
    assert code == 0 and "passed" in out
    code, out, _ = run(capsys, "verify", "kangaroo", "--group", "cyclic:2", "--k", "1", "--l", "1", "--n", "1")
    assert code == 0 and "rank 2/3" in out and "1 -> 1; parts: [1 | 1']; labels:" in out
    code, out, _ = run(capsys, "verify", "gram", "--group", "cyclic:2", "--json")
    assert code == 0 and json.loads(out)["passed"]


@pytest.mark.slow
def test_verify_functor_s3(capsys):
    code, out, _ = run(capsys, "verify", "functor", "--group", "sym:3", "--max-kl", "1", "--max-n", "2",
                       "--samples", "50")
    assert code == 0, out


def test_verify_failure_exit_code(capsys, monkeypatch):
    from gpcat import verify
    monkeypatch.setattr(verify, "relations_report",
                        lambda g: verify.Report("relations", g.name, [verify.Check("forced", False)]))
    code, out, _ = run(capsys, "verify", "relations")
    assert code == 5 and "FAIL forced" in out
