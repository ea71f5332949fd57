"""Command line entry point: ``nilsymp <subcommand> ...`` or ``python3 -m nilsymp``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import cohom, kostant, nilrad, obstruct, rootsys, survey, symp
from .chevbasis import build_structure_table
from .nilrad import NilAlgebra, ParabolicSpec


def _emit(obj, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n")
    elif fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        if rows and isinstance(rows[0], dict):
            w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    else:
        if isinstance(obj, dict):
            for k, v in obj.items():
                out.write(f"{k}: {v}\n")
        elif isinstance(obj, list):
            for v in obj:
                out.write(f"{v}\n")
        else:
            out.write(f"{obj}\n")


def _load_case(args) -> tuple:
    """(algebra, spec or None) from a case string or a JSON algebra file."""
    if getattr(args, "json", None):
        data = json.loads(Path(args.json).read_text()) if args.json != "-" else json.load(sys.stdin)
        return nilrad.algebra_from_json(data), None
    if not args.case:
        raise survey.InvalidCase("give a case like D4:3,4 or --json FILE")
    key = survey.CaseKey.parse(args.case)
    spec = key.spec()
    st = build_structure_table(spec.rs, seed=args.table_seed) if args.table_seed is not None else None
    return nilrad.build_nilradical(spec, st), spec


def cmd_rootsys(args) -> int:
    rs = rootsys.build_root_system(args.type)
    data = rs.to_json()
    if args.format == "text":
        print(f"{rs.type}: {len(rs.positive_roots)} positive roots, max root {rootsys.format_root(rs.max_root)}")
        for r in rs.positive_roots:
            print(f"  {rootsys.format_root(r)}  ({rootsys.format_epsilon(rs.type, r)})")
    else:
        _emit(data if args.format == "json" else [{"root": list(r)} for r in rs.positive_roots], args.format)
    return 0


def cmd_build(args) -> int:
    n, _ = _load_case(args)
    _emit(n.to_json(), "json")
    return 0


def cmd_cohom(args) -> int:
    n, _ = _load_case(args)
    if args.dump is not None:
        sys.stdout.write(cohom.matrix_dump(n, args.dump))
        return 0
    b = cohom.betti_numbers(n)
    rows = [{"p": p, "betti": v} for p, v in enumerate(b) if v is not None]
    if args.format == "text":
        print(" ".join(f"b{r['p']}={r['betti']}" for r in rows))
    else:
        _emit(rows if args.format == "csv" else {"dim": n.dim, "betti": b}, args.format)
    return 0


def cmd_hwv(args) -> int:
    key = survey.CaseKey.parse(args.case)
    spec = key.spec()
    st = build_structure_table(spec.rs, seed=args.table_seed)
    try:
        rep = kostant.hwv_report(spec, st, verify=not args.no_verify)
    except kostant.MismatchReport as e:
        _emit({"case": str(key), "verified": False, "error": str(e)}, "json")
        return 1
    _emit(rep if args.format != "csv" else rep["hwv"], args.format)
    return 0


def cmd_obstruct(args) -> int:
    n, spec = _load_case(args)
    obs = symp.obstructions(n, spec)
    if spec is not None and not nilrad.is_abelian_nilradical(spec):
        o = obstruct.prop44_obstruction(spec)
        if o:
            obs.append(o)
    _emit([o.to_json() for o in obs] if args.format != "text" else [f"{o.kind}: {o.summary()}" for o in obs], args.format)
    return 1 if obs else 0


def cmd_decide(args) -> int:
    n, spec = _load_case(args)
    targets = ["n", "R+n"] if args.target == "both" else [args.target]
    verdicts = [symp.decide(n, t, spec, seed=args.seed, samples=args.samples,
                            corroborate=args.corroborate) for t in targets]
    if args.format == "text":
        for v in verdicts:
            print(f"{v.target}: {v.outcome} - {v.evidence()}")
            if v.form is not None:
                print(f"  omega = {v.form.format(v.labels)}")
    else:
        payload = [v.to_json() for v in verdicts]
        _emit(payload[0] if len(payload) == 1 else payload, args.format)
    return min(v.exit_code for v in verdicts)


def cmd_survey(args) -> int:
    code, diff, rows = survey.run_survey(args.max_rank, Path(args.out) if args.out else None,
                                         table_seed=args.table_seed, seed=args.seed,
                                         samples=args.samples, bless=args.bless)
    if args.format == "csv":
        sys.stdout.write(survey.rows_to_csv(rows))
    elif args.format == "json":
        sys.stdout.write(survey.rows_to_json(rows))
    else:
        for r in rows:
            if r.table1_member:
                print(f"{str(r.key):10s} dim {r.dim:3d} k {r.k}  n: {r.outcome(r.verdict_n):17s} "
                      f"R+n: {r.outcome(r.verdict_ext):17s} {r.evidence}")
    if code:
        sys.stderr.write(json.dumps(diff, indent=1) + "\n")
    return code


def cmd_explain(args) -> int:
    key = survey.CaseKey.parse(args.case)
    sys.stdout.write(survey.explain(key, seed=args.seed))
    return 0


def cmd_ingest(args) -> int:
    data = json.loads(Path(args.file).read_text()) if args.file != "-" else json.load(sys.stdin)
    try:
        n = nilrad.algebra_from_json(data)
    except (nilrad.SchemaError, nilrad.NotNilpotent, nilrad.JacobiFail) as e:
        _emit({"accepted": False, "error": type(e).__name__, "message": str(e)}, "json")
        return 1
    _emit({"accepted": True, "dim": n.dim, "k": n.k,
           "lower_central_series": [s.dim for s in nilrad.lower_central_series(n)]}, "json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilsymp", description="Symplectic structures on parabolic nilradicals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=None, help="sampling seed (default: hash of the case, or NILSYMP_SEED)")
    common.add_argument("--samples", type=int, default=symp.SAMPLES)
    common.add_argument("--table-seed", type=int, default=None, help="re-sign the structure constants with this seed")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("rootsys", parents=[common], help="positive roots of a type")
    s.add_argument("type")
    s.set_defaults(func=cmd_rootsys)

    for name, func, hlp in (("build", cmd_build, "nilradical as JSON"),
                            ("cohom", cmd_cohom, "Betti numbers"),
                            ("obstruct", cmd_obstruct, "obstructions that fire"),
                            ("decide", cmd_decide, "symplectic verdict")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("case", nargs="?", help="e.g. C3:2,3")
        s.add_argument("--json", help="JSON algebra file instead of a case ('-' for stdin)")
        if name == "decide":
            s.add_argument("--target", choices=("n", "R+n", "both"), default="both")
            s.add_argument("--corroborate", action="store_true", help="attach a sampling certificate to obstructed verdicts")
        if name == "cohom":
            s.add_argument("--dump", type=int, default=None, metavar="P", help="print d_P as sparse triplets")
        s.set_defaults(func=func)

    s = sub.add_parser("hwv", parents=[common], help="highest weight vectors of H^2")
    s.add_argument("case")
    s.add_argument("--no-verify", action="store_true")
    s.set_defaults(func=cmd_hwv)

    s = sub.add_parser("survey", parents=[common], help="candidate table and verdicts")
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--out", default=None, help="directory for survey.csv and survey.json")
    s.add_argument("--bless", action="store_true", help="overwrite the golden files with this run")
    s.set_defaults(func=cmd_survey)

    s = sub.add_parser("explain", parents=[common], help="human-readable report")
    s.add_argument("case")
    s.set_defaults(func=cmd_explain)

    s = sub.add_parser("ingest", parents=[common], help="validate a JSON algebra")
    s.add_argument("file")
    s.set_defaults(func=cmd_ingest)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (survey.InvalidCase, rootsys.InvalidRank, nilrad.SchemaError, nilrad.NotNilpotent,
            nilrad.JacobiFail, json.JSONDecodeError, OSError) as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 64


if __name__ == "__main__":
    sys.exit(main())
