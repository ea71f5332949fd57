import json
import subprocess
import sys

import pytest

from nilsymp import fixtures
from nilsymp.cli import main
from nilsymp.cohom import ExtForm
from nilsymp.nilrad import algebra_from_json
from nilsymp.symp import verify_symplectic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rootsys(capsys):
    code, out, _ = run(capsys, "rootsys", "G2")
    data = json.loads(out)
    assert code == 0 and len(data["positive_roots"]) == 6


def test_build_roundtrips(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "C3:2,3")
    assert code == 0
    path = tmp_path / "n.json"
    path.write_text(out)
    code, out, _ = run(capsys, "cohom", "--json", str(path))
    assert json.loads(out)["betti"] == [1, 3, 7, 13, 16, 13, 7, 3, 1]


@pytest.mark.parametrize("case,target,code", [
    ("C3:2", "R+n", 0), ("C3:2,3", "n", 1), ("C3:2", "n", 3), ("B4:4", "n", 1),
])
def test_decide_exit_codes(capsys, case, target, code):
    got, out, _ = run(capsys, "decide", case, "--target", target)
    assert got == code
    assert json.loads(out)["target"] == target


def test_decide_witness_is_checkable(capsys):
    _, out, _ = run(capsys, "decide", "C4:3", "--target", "n")
    v = json.loads(out)
    _, built, _ = run(capsys, "build", "C4:3")
    n = algebra_from_json(json.loads(built))
    assert verify_symplectic(n, ExtForm.from_json(2, v["witness"]))


def test_decide_probably_no_code(capsys, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"dim": 8, "brackets": [[0, 1, 1, 4], [2, 3, 1, 4], [5, 6, 1, 7]]}))
    code, out, _ = run(capsys, "decide", "--json", str(path), "--target", "n")
    v = json.loads(out)
    assert code == 2 and v["outcome"] == "ProbablyNo" and v["samples"] == 64


def test_decide_both_takes_best_code(capsys):
    code, out, _ = run(capsys, "decide", "C3:2")
    assert code == 0 and len(json.loads(out)) == 2


def test_corroborate(capsys):
    code, out, _ = run(capsys, "decide", "D5:4,5", "--target", "n", "--corroborate")
    v = json.loads(out)
    assert code == 1 and "certificate" in v


@pytest.mark.parametrize("case", ["Q3:1", "A3:5", "A3:", "A0:1", "E9:1", "B3:1,2,3,4"])
def test_invalid_cases(capsys, case):
    code, _, err = run(capsys, "decide", case)
    assert code == 64 and "error" in err


def test_bad_json_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "decide", "--json", str(path))
    assert code == 64


def test_ingest(capsys, tmp_path):
    good = tmp_path / "h.json"
    good.write_text(json.dumps(fixtures.heisenberg().to_json()))
    code, out, _ = run(capsys, "ingest", str(good))
    assert code == 0 and json.loads(out)["lower_central_series"] == [3, 1, 0]
    bad = tmp_path / "sl2.json"
    bad.write_text(json.dumps({"dim": 3, "brackets": [[0, 1, 1, 2], [2, 0, 2, 0], [2, 1, -2, 1]]}))
    code, out, _ = run(capsys, "ingest", str(bad))
    assert code == 1 and json.loads(out)["error"] == "NotNilpotent"


def test_hwv(capsys):
    code, out, _ = run(capsys, "hwv", "C3:2,3")
    rep = json.loads(out)
    assert code == 0 and rep["verified"] and rep["w12"] == 3


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "B4:4")
    kinds = {o["kind"] for o in json.loads(out)}
    assert code == 1 and "DimBound" in kinds
    code, out, _ = run(capsys, "obstruct", "B3:3")
    assert code == 0 and json.loads(out) == []


def test_cohom_dump(capsys):
    code, out, _ = run(capsys, "cohom", "A2:1,2", "--dump", "1")
    assert code == 0 and out.strip()


def test_cohom_csv(capsys):
    code, out, _ = run(capsys, "cohom", "G2:1", "--format", "csv")
    assert out.splitlines()[0] == "p,betti"


def test_explain(capsys):
    code, out, _ = run(capsys, "explain", "B4:4")
    assert code == 0
    assert "free 2-step nilpotent on 4 generators" in out
    assert "DimBound" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "nilsymp", "rootsys", "A2", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "3 positive roots" in r.stdout
