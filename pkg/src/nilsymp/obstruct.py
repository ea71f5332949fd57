"""Non-existence criteria for symplectic structures on n and R + n."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .cohom import BadT, closed_2forms, lcs_filtration, mj_decomposition, project_pt
from .cohom import ExtForm
from .kostant import h2_hwv
from .nilrad import (NilAlgebra, ParabolicSpec, is_abelian_nilradical, lower_central_series,
                     upper_central_series)
from .rootsys import RootSystem, SimpleType, all_types, build_root_system, reflect

KINDS = ("DimBound", "PtVanishes", "NoCentralHwv", "Prop44Fail")


class AbelianInput(ValueError):
    pass


@dataclass
class Obstruction:
    kind: str
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.kind in KINDS, self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}

    def summary(self) -> str:
        d = self.detail
        if self.kind == "DimBound":
            return f"dim c_{d['j']} + dim c^{d['j']} = {d['upper']} + {d['lower']} > {d['dim']}"
        if self.kind == "PtVanishes":
            return f"P_{d['t']} vanishes on closed 2-forms ({d['via']})"
        if self.kind == "NoCentralHwv":
            return "no highest weight class pairs grade 1 with the center"
        return "no coordinate match for the maximal root"


def dim_bound_check(n: NilAlgebra) -> Optional[Obstruction]:
    """dim c_j + dim c^j <= dim n must hold for every j."""
    lower = [s.dim for s in lower_central_series(n)]
    upper = [s.dim for s in upper_central_series(n)]
    steps = max(len(lower), len(upper))
    for j in range(steps):
        lo = lower[j] if j < len(lower) else 0
        up = upper[j] if j < len(upper) else n.dim
        if lo + up > n.dim:
            return Obstruction("DimBound", {"j": j, "upper": up, "lower": lo, "dim": n.dim})
    return None


def t_range(k: int) -> range:
    return range(1, (k + 1) // 2 + 1)


def pt_condition(n: NilAlgebra, t: int) -> bool:
    """dim c^{k-t} + dim c^{t-1} > dim n (always true for t = 1)."""
    lcs = lower_central_series(n)
    k = len(lcs) - 1
    return lcs[k - t].dim + lcs[t - 1].dim > n.dim


def pt_obstruction_trivial_g(n: NilAlgebra, t: int) -> Optional[Obstruction]:
    """For g = 0 the irreducible pieces of H^2 are lines, so the criterion
    reduces to P_t(closed 2-forms) = 0."""
    if n.is_abelian:
        raise AbelianInput("the criterion needs a nonabelian algebra")
    lcs = lower_central_series(n)
    k = len(lcs) - 1
    if t not in t_range(k):
        raise BadT(f"t={t} outside 1..{(k + 1) // 2}")
    if not pt_condition(n, t):
        return None
    mj = mj_decomposition(n, lcs_filtration(n))
    for z in closed_2forms(n).basis():
        if project_pt(ExtForm.from_vec(2, z), t, mj):
            return None
    return Obstruction("PtVanishes", {
        "t": t, "k": k, "via": "trivial g",
        "dims": [lcs[k - t].dim, lcs[t - 1].dim, n.dim],
    })


def pt_obstruction_levi(spec: ParabolicSpec, t: int, n: Optional[NilAlgebra] = None) -> Optional[Obstruction]:
    """Levi version: some highest weight class must have its monomial in m_t ^ m_{k-t+1}."""
    if is_abelian_nilradical(spec):
        raise AbelianInput(spec.key())
    k = spec.k
    if t not in t_range(k):
        raise BadT(f"t={t} outside 1..{(k + 1) // 2}")
    if n is not None and not pt_condition(n, t):
        return None
    want = {t, k - t + 1}
    for e in h2_hwv(spec, n=n):
        if {1, e.grade_of_partner} == want:
            return None
    return Obstruction("PtVanishes", {"t": t, "k": k, "via": "Levi highest weight vectors"})


def central_partners(spec: ParabolicSpec) -> List[Tuple[int, int]]:
    """(alpha, beta) with alpha in Pi_0, (beta, alpha) < 0 and s_alpha(beta) central."""
    rs = spec.rs
    out = []
    for a in sorted(spec.pi0):
        for b in range(1, rs.rank + 1):
            if b == a or rs.inner(rs.simple(a), rs.simple(b)) >= 0:
                continue
            s = reflect(rs, rs.simple(b), a)
            if all(s[i - 1] == rs.max_root[i - 1] for i in spec.pi0):
                out.append((a, b))
    return out


def central_hwv_check(spec: ParabolicSpec) -> Optional[Obstruction]:
    if is_abelian_nilradical(spec):
        raise AbelianInput(f"{spec.key()} has an abelian nilradical")
    if central_partners(spec):
        return None
    return Obstruction("NoCentralHwv", {"case": spec.key(), "k": spec.k})


def prop44_matches(spec: ParabolicSpec) -> List[dict]:
    rs = spec.rs
    gmax = rs.max_root
    pi0 = sorted(spec.pi0)
    out = []
    if len(pi0) == 1:
        (a,) = pi0
        for b in range(1, rs.rank + 1):
            if b != a and gmax[a - 1] == -rs.coroot_pairing(rs.simple(b), rs.simple(a)) > 0:
                out.append({"case": 1, "alpha": a, "beta": b})
    elif len(pi0) == 2:
        for a, b in (pi0, pi0[::-1]):
            c = -rs.coroot_pairing(rs.simple(b), rs.simple(a))
            if gmax[b - 1] == 1 and gmax[a - 1] == c > 0:
                out.append({"case": 2, "alpha": a, "beta": b})
    return out


def prop44_classify(spec: ParabolicSpec) -> Optional[dict]:
    """First coordinate match (case 1 or 2), or None when obstructed."""
    m = prop44_matches(spec)
    return m[0] if m else None


def prop44_obstruction(spec: ParabolicSpec) -> Optional[Obstruction]:
    if prop44_matches(spec):
        return None
    return Obstruction("Prop44Fail", {"case": spec.key(), "size": len(spec.pi0)})


# -- the table of candidates -----------------------------------------------------

def subsets(rank: int, sizes=(1, 2)):
    for s in sizes:
        for c in combinations(range(1, rank + 1), s):
            yield c


def table1_survey(max_rank: int) -> List[dict]:
    """Pi_0 of size 1 or 2 with abelian nilradical or a coordinate match."""
    if max_rank < 2:
        raise ValueError("max_rank must be at least 2")
    rows = []
    for t in all_types(max_rank):
        rs = build_root_system(t)
        for pi0 in subsets(t.rank):
            spec = ParabolicSpec(rs, frozenset(pi0))
            ab = is_abelian_nilradical(spec)
            m = prop44_matches(spec)
            if ab or m:
                rows.append({
                    "family": t.family, "rank": t.rank, "pi0": list(pi0),
                    "abelian": ab,
                    "pairs": sorted({tuple(sorted((x["alpha"], x["beta"]))) for x in m}),
                })
    return rows


def table1_printed(max_rank: int) -> List[Tuple[str, int, Tuple[int, ...]]]:
    """The candidate table as printed, row by row, for ranks up to max_rank."""
    out = []
    for n in range(1, max_rank + 1):
        out += [("A", n, (k,)) for k in range(1, n + 1)]
        out += [("A", n, (k, k + 1)) for k in range(1, n)]
    for n in range(2, max_rank + 1):
        out += [("B", n, (1,)), ("B", n, (n,))]
        if n == 2:
            out.append(("B", 2, (1, 2)))
    for n in range(3, max_rank + 1):
        out += [("C", n, (n - 1,)), ("C", n, (n,)), ("C", n, (n - 1, n))]
    for n in range(4, max_rank + 1):
        out += [("D", n, (1,)), ("D", n, (n - 1,)), ("D", n, (n,)), ("D", n, (n - 1, n))]
    out += [("E", 6, (1,)), ("E", 6, (6,)), ("E", 7, (7,)), ("G", 2, (1,))]
    return sorted(set(out))


def survey_keys(rows: List[dict]) -> List[Tuple[str, int, Tuple[int, ...]]]:
    return sorted({(r["family"], r["rank"], tuple(r["pi0"])) for r in rows})
