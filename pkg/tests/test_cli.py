import json

import pytest

from evochar2.algebra import save_algebra
from evochar2.baric import build_weighted_As
from evochar2.cli import main
from evochar2.generators import cyclic_algebra, idempotent_line


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cyclic4(tmp_path):
    path = tmp_path / "cyclic4.json"
    save_algebra(cyclic_algebra(4), path)
    return str(path)


def test_analyze_cyclic(capsys, cyclic4):
    code, out, _ = run(capsys, "analyze", cyclic4)
    assert code == 0
    assert "ultimately periodic (0,4)" in out
    assert "train polynomial: X^4+1" in out


def test_analyze_json_agrees_with_text(capsys, cyclic4):
    _, text, _ = run(capsys, "analyze", cyclic4)
    code, out, _ = run(capsys, "analyze", cyclic4, "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["profile"] == [0, 4]
    assert data["train"]["text"] in text
    assert data["canonical"]["q"] == 1 and data["canonical"]["t"] == [2]


def test_analyze_idempotent_line(capsys, tmp_path):
    path = tmp_path / "line.json"
    save_algebra(idempotent_line(), path)
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and "quasi-constant of degree 1" in out


def test_analyze_weighted_reports_bernstein(capsys, tmp_path):
    path = tmp_path / "w.json"
    save_algebra(build_weighted_As((2, 1)), path)
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and "Bernstein profile (n,p) = (2,1)" in out
    code, out, _ = run(capsys, "baric", str(path), "--json")
    data = json.loads(out)
    assert data["baric"]["bernstein"] == [2, 1]
    assert data["baric"]["train_identity"] == [0, 0, 1]


def test_orbit(capsys, cyclic4):
    code, out, _ = run(capsys, "orbit", cyclic4, "--element", "1,0,1,0")
    assert code == 0 and out.startswith("preperiod 0, period 2")
    _, out, _ = run(capsys, "orbit", cyclic4, "--element", "1,0,1,0", "--json")
    data = json.loads(out)
    assert (data["preperiod"], data["period"]) == (0, 2)


def test_striction_command(capsys):
    code, out, _ = run(capsys, "striction", "--poly", "5137")
    assert code == 0
    assert "sigma = 2" in out and "E = {0,4,10,12}" in out
    _, out, _ = run(capsys, "striction", "--poly", "5137", "--p", "2", "--json")
    data = json.loads(out)
    assert data["sigma"] == 2 and data["exponents"] == [0, 4, 10, 12]
    assert data["compatible"]["p"] == 2


def test_gen_then_train(capsys, tmp_path):
    path = str(tmp_path / "r90.json")
    assert run(capsys, "gen", "rule90", "--n", "5", "-o", path)[0] == 0
    code, out, _ = run(capsys, "train", path)
    assert code == 0 and "train polynomial: X^3+X^2+X" in out


def test_gen_to_stdout_is_loadable(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "Ast", "--s", "2", "--t", "1", "--q", "3")
    assert code == 0
    path = tmp_path / "ast.json"
    path.write_text(out)
    code, out, _ = run(capsys, "canon", str(path), "--json")
    data = json.loads(out)
    assert data["canonical"]["s"] == [2] and data["canonical"]["t"] == [1]


def test_semi_iso(capsys, tmp_path, cyclic4):
    other = str(tmp_path / "r150.json")
    run(capsys, "gen", "rule150", "--n", "4", "-o", other)
    code, out, _ = run(capsys, "semi-iso", cyclic4, other, "--json")
    assert code == 0 and json.loads(out)["status"] == "no"


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"p": 1}, "dim": 2}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "parse error" in err


def test_exit_code_invariant_violation(capsys, tmp_path):
    bad = tmp_path / "asym.json"
    bad.write_text(json.dumps({
        "field": {"p": 1}, "dim": 2, "squares": [[1, 0], [0, 1]],
        "table": [[[1, 0], [1, 0]], [[0, 1], [0, 1]]],
    }))
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 3 and "invariant violation" in err


def test_exit_code_other_errors(capsys, tmp_path, cyclic4):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1
    path = str(tmp_path / "f4.json")
    run(capsys, "gen", "As", "--s", "2", "--field-p", "2", "-o", path)
    code, _, err = run(capsys, "canon", path)
    assert code == 1 and "F_2" in err


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    assert "0 FAIL" in out.splitlines()[-1]
    flag = [line for line in out.splitlines() if line.startswith("FLAG")]
    assert flag and all("claimed" in line and "computed" in line for line in flag)
    code, out, _ = run(capsys, "verify-paper", "--json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["fail"] == 0
    statuses = [r["status"] for r in data["rows"]]
    assert statuses.count("FLAG") == len(flag)


def test_seed_option_is_reproducible(capsys):
    first = run(capsys, "gen", "random", "--n", "3", "--field-p", "2", "--seed", "7")[1]
    second = run(capsys, "gen", "random", "--n", "3", "--field-p", "2", "--seed", "7")[1]
    assert first == second
