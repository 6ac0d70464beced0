import json

import pytest

from motive import cli

from conftest import FIXTURES


@pytest.fixture(autouse=True)
def no_env(monkeypatch):
    monkeypatch.delenv(cli.FIXTURE_ENV, raising=False)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pgl3_text(capsys):
    code, out, _ = run(capsys, "verify", "pgl3")
    assert code == 0
    assert "B PGL3: 1 / L^3 * Phi_1^2 * Phi_2 * Phi_3" in out


def test_theorem_b_n3_missing_fixture(capsys):
    code, _, err = run(capsys, "verify", "theorem-b", "--n", "3")
    assert code == 2
    assert "resolution_n3.json" in err


def test_theorem_b_n3_with_flag(capsys):
    code, out, _ = run(capsys, "verify", "theorem-b", "--n", "3", "--resolution", str(FIXTURES / "resolution_n3.json"),
                       "--json", "--stable")
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"] == "pass"
    assert doc["checks"][-1]["actual"] == "L^3 / Phi_1^2 * Phi_2 * Phi_3"


def test_theorem_b_n3_from_env(capsys, monkeypatch):
    monkeypatch.setenv(cli.FIXTURE_ENV, str(FIXTURES))
    code, _, _ = run(capsys, "verify", "theorem-b", "--n", "3")
    assert code == 0


def test_broken_fixture_fails(capsys, tmp_path):
    data = json.loads((FIXTURES / "resolution_n3.json").read_text())
    data["project"][0][0] += 1
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "theorem-b", "--n", "3", "--resolution", str(p))
    assert code == 1
    assert "FAIL" in out


def test_missing_fixture_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "theorem-b", "--n", "3", "--resolution", str(tmp_path / "nope.json"))
    assert code == 2


def test_symplectic_json(capsys):
    code, out, _ = run(capsys, "verify", "symplectic", "--ell", "3,5,7", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["version"] == cli.REPORT_VERSION
    rows = [c["actual"] for c in doc["checks"]]
    assert [r["ell"] for r in rows] == [3, 5, 7]
    assert all(r["match"] for r in rows)
    assert rows[0]["B_order"] == 3 and rows[0]["A_invariants"] == []
    assert rows[1]["A_invariants"]


def test_stable_json_is_reproducible(capsys):
    _, a, _ = run(capsys, "--json", "--stable", "verify", "monomial", "--max-n", "4")
    _, b, _ = run(capsys, "verify", "monomial", "--max-n", "4", "--json", "--stable")
    assert a == b
    assert "generated_at" not in a
    assert all(c["runtime_ms"] is None for c in json.loads(a)["checks"])


def test_unstable_json_has_timings(capsys):
    _, out, _ = run(capsys, "verify", "m11", "--json")
    doc = json.loads(out)
    assert "generated_at" in doc
    assert all(isinstance(c["runtime_ms"], float) for c in doc["checks"])


@pytest.mark.parametrize("argv", [
    ["verify", "stabilizers", "--q", "5"],
    ["verify", "stabilizers", "--q", "13"],
    ["verify", "j-family", "--q", "9"],
    ["verify", "symplectic", "--ell", "4"],
    ["verify", "monomial", "--max-n", "9"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [[], ["verify"], ["verify", "nope"], ["verify", "theorem-b", "--n", "4"],
                                  ["verify", "symplectic", "--ell", "x"]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_marks_and_jfamily(capsys):
    assert run(capsys, "verify", "marks", "--group", "s4")[0] == 0
    assert run(capsys, "verify", "j-family", "--q", "13")[0] == 0
    assert run(capsys, "verify", "stabilizers", "--q", "7", "--case", "h")[0] == 0


def test_overall_ignores_skipped():
    ok = cli.Check("a", "pass", 1, 1, "")
    sk = cli.Check("b", "skipped", 1, None, "")
    bad = cli.Check("c", "fail", 1, 2, "")
    assert cli.overall([ok, sk]) == "pass"
    assert cli.overall([ok, sk, bad]) == "fail"
    assert cli.overall([sk]) == "fail"


def test_all_without_fixture_reports_skip(capsys):
    code, out, _ = run(capsys, "verify", "all", "--json", "--stable")
    doc = json.loads(out)
    assert code == 0 and doc["overall"] == "pass"
    skipped = [c["name"] for c in doc["checks"] if c["status"] == "skipped"]
    assert skipped == ["B PN3 via norm-one torus"]
