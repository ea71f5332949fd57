"""Batch survey over parabolic nilradicals, golden-file comparison and reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .chevbasis import build_structure_table
from .cohom import ExtForm, betti_numbers
from .kostant import h2_hwv
from .nilrad import (NilAlgebra, ParabolicSpec, build_nilradical, center, extend_trivially,
                     is_abelian_nilradical, lower_central_series, upper_central_series)
from .obstruct import Obstruction, prop44_obstruction, subsets, table1_printed
from .rootsys import SimpleType, all_types, build_root_system, format_epsilon, format_root
from .symp import SAMPLES, Verdict, decide, obstructions, verify_symplectic

CSV_COLUMNS = ["case", "family", "rank", "pi0", "dim", "k", "abelian", "table1_member",
               "verdict_n", "verdict_ext", "symplectic", "evidence"]

GOLDEN_TABLE1 = "table1.json"
GOLDEN_VERDICTS = "verdicts.json"


class InvalidCase(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CaseKey:
    family: str
    rank: int
    pi0: Tuple[int, ...]
    target: str = "both"

    @classmethod
    def parse(cls, text: str, target: str = "both") -> "CaseKey":
        """'D4:3,4' or 'D4' plus a separate Pi_0."""
        try:
            code, _, rest = text.partition(":")
            t = SimpleType.parse(code)
            pi0 = tuple(sorted(int(x) for x in rest.replace(" ", "").split(",") if x))
        except ValueError as e:
            raise InvalidCase(str(e)) from e
        if not pi0 or not all(1 <= i <= t.rank for i in pi0) or len(set(pi0)) != len(pi0):
            raise InvalidCase(f"bad simple-root set in {text!r}")
        if target not in ("n", "R+n", "both"):
            raise InvalidCase(f"bad target {target!r}")
        return cls(t.family, t.rank, pi0, target)

    @property
    def type_code(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return f"{self.type_code}:{','.join(map(str, self.pi0))}"

    def spec(self) -> ParabolicSpec:
        return ParabolicSpec.of(self.type_code, self.pi0)


@dataclass
class SurveyRow:
    key: CaseKey
    dim: int
    k: int
    abelian: bool
    table1_member: bool
    verdict_n: Optional[Verdict]
    verdict_ext: Optional[Verdict]
    evidence: str

    @property
    def symplectic(self) -> bool:
        return any(v is not None and v.symplectic for v in (self.verdict_n, self.verdict_ext))

    def outcome(self, v: Optional[Verdict]) -> str:
        if v is None:
            return "ObstructedNo"
        return v.outcome

    def to_json(self) -> dict:
        return {
            "case": str(self.key), "family": self.key.family, "rank": self.key.rank,
            "pi0": list(self.key.pi0), "dim": self.dim, "k": self.k,
            "abelian": self.abelian, "table1_member": self.table1_member,
            "verdict_n": self.verdict_n.to_json() if self.verdict_n else {"outcome": "ObstructedNo"},
            "verdict_ext": self.verdict_ext.to_json() if self.verdict_ext else {"outcome": "ObstructedNo"},
            "symplectic": self.symplectic,
            "evidence": self.evidence,
        }

    def csv_row(self) -> List[str]:
        return [str(self.key), self.key.family, str(self.key.rank),
                " ".join(map(str, self.key.pi0)), str(self.dim), str(self.k),
                str(self.abelian).lower(), str(self.table1_member).lower(),
                self.outcome(self.verdict_n), self.outcome(self.verdict_ext),
                str(self.symplectic).lower(), self.evidence]


def survey_row(key: CaseKey, table_seed: Optional[int] = None, seed: Optional[int] = None,
               samples: int = SAMPLES, force: bool = False) -> SurveyRow:
    """One row; non-candidates are only decided when ``force`` is set."""
    spec = key.spec()
    ab = is_abelian_nilradical(spec)
    obs44 = None if ab else prop44_obstruction(spec)
    dim = len(spec.nil_roots())
    if obs44 is not None and not force:
        return SurveyRow(key, dim, spec.k, ab, False, None, None, obs44.summary())
    st = build_structure_table(spec.rs, seed=table_seed) if table_seed is not None else None
    n = build_nilradical(spec, st)
    vn = decide(n, "n", spec, seed=seed, samples=samples)
    ve = decide(n, "R+n", spec, seed=seed, samples=samples)
    ev = "; ".join(f"{v.target}: {v.evidence()}" for v in (vn, ve) if v.outcome != "OddDim")
    if obs44 is not None:
        ev = f"{obs44.summary()}; {ev}"
    return SurveyRow(key, dim, spec.k, ab, obs44 is None, vn, ve, ev)


def survey_keys(max_rank: int) -> List[CaseKey]:
    keys = []
    for t in all_types(max_rank):
        for pi0 in subsets(t.rank):
            keys.append(CaseKey(t.family, t.rank, pi0))
    return sorted(keys)


def run_rows(max_rank: int, table_seed: Optional[int] = None, seed: Optional[int] = None,
             samples: int = SAMPLES) -> List[SurveyRow]:
    """Every |Pi_0| <= 2 case; printed candidates are decided even when the
    coordinate criterion rejects them, so the verdict comparison covers them."""
    printed = {(f, r, p) for f, r, p in table1_printed(max_rank)}
    return [survey_row(k, table_seed, seed, samples, force=(k.family, k.rank, k.pi0) in printed)
            for k in survey_keys(max_rank)]


# -- golden files -------------------------------------------------------------------

def table1_golden_rows(max_rank: int = 8) -> List[dict]:
    return [{"family": f, "rank": r, "pi0": list(p)} for f, r, p in table1_printed(max_rank)]


def classification_printed(max_rank: int = 8) -> List[dict]:
    """Symplectic verdict for every candidate as stated in the classification."""
    out = []
    for f, r, p in table1_printed(max_rank):
        spec = ParabolicSpec.of(f"{f}{r}", p)
        if len(p) == 1:
            if is_abelian_nilradical(spec):
                symp = True
            else:
                symp = (f == "B" and p == (r,) and r in (2, 3)) or (f == "C" and p == (r - 1,) and r in (3, 4))
        else:
            k = p[0]
            symp = ((f == "A" and (k in (1, r - 1) or (r, k) == (4, 2)))
                    or (f == "B" and r == 2) or (f == "D" and r == 4))
        out.append({"case": f"{f}{r}:{','.join(map(str, p))}", "symplectic": symp})
    return out


def golden_dir() -> Path:
    return Path(str(resources.files("nilsymp") / "data"))


def load_golden(name: str, directory: Optional[Path] = None):
    path = (directory or golden_dir()) / name
    return json.loads(path.read_text())


def table1_from_rows(rows: Sequence[SurveyRow]) -> List[dict]:
    return [{"family": r.key.family, "rank": r.key.rank, "pi0": list(r.key.pi0)}
            for r in rows if r.table1_member]


def verdicts_from_rows(rows: Sequence[SurveyRow]) -> List[dict]:
    return [{"case": str(r.key), "symplectic": r.symplectic} for r in rows
            if r.table1_member or r.verdict_n is not None]


def _restrict(golden: List[dict], max_rank: int, key) -> List[dict]:
    def rank_ok(item):
        fam, rank = key(item)
        return fam in "EFG" or rank <= max_rank
    return [g for g in golden if rank_ok(g)]


def diff_table1(rows: Sequence[SurveyRow], max_rank: int, golden: List[dict]) -> dict:
    got = {(g["family"], g["rank"], tuple(g["pi0"])) for g in table1_from_rows(rows)}
    want = {(g["family"], g["rank"], tuple(g["pi0"]))
            for g in _restrict(golden, max_rank, lambda g: (g["family"], g["rank"]))}
    return {
        "missing": [f"{f}{r}:{','.join(map(str, p))}" for f, r, p in sorted(want - got)],
        "unexpected": [f"{f}{r}:{','.join(map(str, p))}" for f, r, p in sorted(got - want)],
    }


def diff_verdicts(rows: Sequence[SurveyRow], max_rank: int, golden: List[dict]) -> dict:
    def fr(g):
        k = CaseKey.parse(g["case"])
        return k.family, k.rank
    want = {g["case"]: g["symplectic"] for g in _restrict(golden, max_rank, fr)}
    got = {r["case"]: r["symplectic"] for r in verdicts_from_rows(rows)}
    mism = []
    for case in sorted(set(want) | set(got)):
        if want.get(case) != got.get(case):
            mism.append({"case": case, "expected": want.get(case), "computed": got.get(case)})
    return {"mismatches": mism}


def rows_to_csv(rows: Sequence[SurveyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


def rows_to_json(rows: Sequence[SurveyRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=1, sort_keys=True) + "\n"


def run_survey(max_rank: int, out_path: Optional[Path] = None, table_seed: Optional[int] = None,
               seed: Optional[int] = None, samples: int = SAMPLES, bless: bool = False,
               golden: Optional[Path] = None) -> Tuple[int, dict, List[SurveyRow]]:
    """Write survey.csv / survey.json and compare with the golden files.

    Returns (exit code, structured diff, rows); the code is 0 iff both match.
    """
    if max_rank < 2:
        raise ValueError("max_rank must be at least 2")
    rows = run_rows(max_rank, table_seed, seed, samples)
    # witnesses are re-verified before they are written out
    for r in rows:
        for v in (r.verdict_n, r.verdict_ext):
            if v is not None and v.symplectic:
                spec = r.key.spec()
                st = build_structure_table(spec.rs, seed=table_seed) if table_seed is not None else None
                n = build_nilradical(spec, st)
                alg = n if v.target == "n" else extend_trivially(n)
                assert verify_symplectic(alg, v.form), f"witness for {r.key} does not verify"
    if out_path is not None:
        out_path = Path(out_path)
        out_path.mkdir(parents=True, exist_ok=True)
        (out_path / "survey.csv").write_text(rows_to_csv(rows))
        (out_path / "survey.json").write_text(rows_to_json(rows))
    gdir = golden or golden_dir()
    if bless:
        gdir.mkdir(parents=True, exist_ok=True)
        (gdir / GOLDEN_TABLE1).write_text(json.dumps(table1_from_rows(rows), indent=1) + "\n")
        (gdir / GOLDEN_VERDICTS).write_text(json.dumps(verdicts_from_rows(rows), indent=1) + "\n")
    d1 = diff_table1(rows, max_rank, load_golden(GOLDEN_TABLE1, gdir))
    d2 = diff_verdicts(rows, max_rank, load_golden(GOLDEN_VERDICTS, gdir))
    diff = {"table1": d1, "verdicts": d2}
    ok = not (d1["missing"] or d1["unexpected"] or d2["mismatches"])
    return (0 if ok else 1), diff, rows


# -- explain --------------------------------------------------------------------------

def _mobius(n: int) -> int:
    res, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt_dimension(m: int, j: int) -> int:
    """Dimension of the degree-j part of the free Lie algebra on m generators."""
    return sum(_mobius(d) * m ** (j // d) for d in range(1, j + 1) if j % d == 0) // j


def free_nilpotent_shape(n: NilAlgebra) -> Optional[Tuple[int, int]]:
    """(generators, steps) if n is free nilpotent, judged by the lower central quotients."""
    lcs = [s.dim for s in lower_central_series(n)]
    k = len(lcs) - 1
    if k < 1:
        return None
    m = lcs[0] - lcs[1]
    quotients = [lcs[j - 1] - lcs[j] for j in range(1, k + 1)]
    if quotients == [witt_dimension(m, j) for j in range(1, k + 1)]:
        return m, k
    return None


def explain(key: CaseKey, seed: Optional[int] = None) -> str:
    spec = key.spec()
    n = build_nilradical(spec)
    lines = [f"case {key}  type {key.type_code}  Pi_0 = {{{', '.join('g%d' % i for i in key.pi0)}}}"]
    lcs = [s.dim for s in lower_central_series(n)]
    ucs = [s.dim for s in upper_central_series(n)]
    k = len(lcs) - 1
    lines.append(f"dim n = {n.dim}, k = {k}, center dim = {center(n).dim}")
    by_grade: Dict[int, List[str]] = {}
    for r, g in zip(n.roots, n.grading):
        by_grade.setdefault(g, []).append(format_epsilon(spec.type, r) if key.family in "ABCD" else format_root(r))
    for g in sorted(by_grade):
        lines.append(f"  grade {g} ({len(by_grade[g])}): {', '.join(by_grade[g])}")
    lines.append(f"lower central series dims: {lcs}")
    lines.append(f"upper central series dims: {ucs}")
    if n.is_abelian:
        lines.append("abelian: H^2 = Lambda^2 n*")
    else:
        shape = free_nilpotent_shape(n)
        if shape:
            lines.append(f"shape: free {shape[1]}-step nilpotent on {shape[0]} generators")
    if n.dim <= 14:
        lines.append(f"Betti numbers: {betti_numbers(n)}")
    hw = h2_hwv(spec, n=n)
    lines.append(f"highest weight vectors in H^2 ({len(hw)}):")
    for e in hw:
        lines.append(f"  X_-g{e.alpha} ^ X_-({format_root(e.partner)})  partner grade {e.grade_of_partner}")
    obs = obstructions(n, spec)
    o44 = None if is_abelian_nilradical(spec) else prop44_obstruction(spec)
    if o44:
        obs.append(o44)
    lines.append("obstructions: " + ("none" if not obs else "; ".join(f"{o.kind} ({o.summary()})" for o in obs)))
    for target in ("n", "R+n"):
        v = decide(n, target, spec, seed=seed)
        lines.append(f"verdict {target}: {v.outcome} - {v.evidence()}")
        if v.symplectic:
            alg = n if target == "n" else extend_trivially(n)
            lines.append(f"  omega = {v.form.format(alg.labels)}")
    return "\n".join(lines) + "\n"
