import csv
import io
import json

import pytest

from nilsymp import fixtures
from nilsymp.nilrad import ParabolicSpec, build_nilradical
from nilsymp.survey import (CSV_COLUMNS, CaseKey, InvalidCase, free_nilpotent_shape, load_golden,
                            rows_to_csv, run_survey, witt_dimension)


def test_case_key_parsing():
    k = CaseKey.parse("D4:3,4")
    assert (k.family, k.rank, k.pi0) == ("D", 4, (3, 4))
    assert str(k) == "D4:3,4"
    assert CaseKey.parse("C3:3,2").pi0 == (2, 3)
    for bad in ["D4", "D4:0", "D4:5", "Z4:1", "D4:1,1", "D4:x"]:
        with pytest.raises(InvalidCase):
            CaseKey.parse(bad)


def test_witt_formula():
    assert [witt_dimension(2, j) for j in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [witt_dimension(3, j) for j in range(1, 4)] == [3, 3, 8]


def test_free_shapes():
    assert free_nilpotent_shape(fixtures.heisenberg()) == (2, 2)
    assert free_nilpotent_shape(build_nilradical(ParabolicSpec.of("B5", (5,)))) == (5, 2)
    assert free_nilpotent_shape(build_nilradical(ParabolicSpec.of("C3", (2,)))) is None


def test_small_survey_against_blessed_copy(tmp_path):
    golden = tmp_path / "golden"
    code, diff, rows = run_survey(3, tmp_path / "out", bless=True, golden=golden)
    assert code == 0
    assert not diff["table1"]["missing"] and not diff["verdicts"]["mismatches"]
    text = (tmp_path / "out" / "survey.csv").read_text()
    head = next(csv.reader(io.StringIO(text)))
    assert head == CSV_COLUMNS
    assert json.loads((tmp_path / "out" / "survey.json").read_text())
    code2, _, _ = run_survey(3, golden=golden, table_seed=5)
    assert code2 == 0


def test_diff_reports_tampered_golden(tmp_path):
    golden = tmp_path / "g"
    run_survey(3, bless=True, golden=golden)
    verdicts = json.loads((golden / "verdicts.json").read_text())
    verdicts[0]["symplectic"] = not verdicts[0]["symplectic"]
    (golden / "verdicts.json").write_text(json.dumps(verdicts))
    code, diff, _ = run_survey(3, golden=golden)
    assert code == 1 and diff["verdicts"]["mismatches"][0]["case"] == verdicts[0]["case"]


def test_packaged_golden_files_hold_printed_table():
    t1 = load_golden("table1.json")
    assert {"family": "B", "rank": 2, "pi0": [1, 2]} in t1
    assert not any(r["family"] == "B" and r["rank"] > 2 and len(r["pi0"]) == 2 for r in t1)
    assert not any(r["family"] in "EF" and r["rank"] in (4, 8) for r in t1)
