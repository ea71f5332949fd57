"""Kostant's highest weight vectors in H^2 of a nilradical, and a brute-force check.

Monomials are written over the dual basis of the nilradical: ``e^g`` is dual
to ``X_g`` and carries weight ``-g``.  All weights below are stored as the
positive root-lattice vector ``g`` (sign dropped).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from . import linalg
from .chevbasis import StructureTable, build_structure_table
from .cohom import ExtForm, closed_2forms, exact_2forms, weight_blocks
from .linalg import Subspace, Vec
from .nilrad import NilAlgebra, ParabolicSpec, build_nilradical
from .rootsys import RootVec, add_roots, format_root, reflect, sub_roots


class MismatchReport(AssertionError):
    def __init__(self, message: str, entry=None, case: str = ""):
        super().__init__(f"{case}: {message}" if case else message)
        self.entry = entry
        self.case = case


@dataclass(frozen=True)
class W12Entry:
    alpha: int          # simple-root index in Pi_0 (1-based)
    beta: int           # simple-root index (1-based)
    roots: Tuple[RootVec, RootVec]   # (alpha, s_alpha(beta)) = w Delta^- cap Delta^+

    @property
    def orthogonal(self) -> bool:
        return self.roots[1] == tuple(1 if i == self.beta - 1 else 0 for i in range(len(self.roots[1])))


@dataclass
class HwvEntry:
    alpha: int
    partner: RootVec
    rep_form: ExtForm
    grade_of_partner: int
    beta: int = 0

    @property
    def weight(self) -> RootVec:
        r = self.partner
        return tuple(a + b for a, b in zip(r, _unit(len(r), self.alpha)))

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "partner": list(self.partner),
            "partner_label": format_root(self.partner),
            "grade_of_partner": self.grade_of_partner,
        }


def _unit(n: int, i: int) -> RootVec:
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def enumerate_w12(spec: ParabolicSpec) -> List[W12Entry]:
    """Elements w = s_alpha s_beta of length 2 with w Delta^- cap Delta^+ inside Delta_n^+."""
    rs = spec.rs
    n = rs.rank
    out = []
    seen = set()
    for a in sorted(spec.pi0):
        ga = rs.simple(a)
        for b in range(1, n + 1):
            if b == a:
                continue
            sb = reflect(rs, rs.simple(b), a)
            roots = (ga, sb)
            if not all(spec.o(r) > 0 for r in roots):
                continue
            key = frozenset(roots)
            if key in seen:     # orthogonal pairs give s_a s_b = s_b s_a
                continue
            seen.add(key)
            out.append(W12Entry(a, b, roots))
    return out


def h2_hwv(spec: ParabolicSpec, st: Optional[StructureTable] = None,
           n: Optional[NilAlgebra] = None) -> List[HwvEntry]:
    if n is None:
        n = build_nilradical(spec, st)
    pos = {r: i for i, r in enumerate(n.roots)}
    out = []
    for w in enumerate_w12(spec):
        ga, partner = w.roots
        form = ExtForm(2, {(pos[ga], pos[partner]): 1})
        out.append(HwvEntry(w.alpha, partner, form, spec.o(partner), w.beta))
    return out


# -- coadjoint action of the Levi raising operators ------------------------------

def raising_action(spec: ParabolicSpec, st: StructureTable, n: NilAlgebra, beta: int):
    """Return a function applying X_beta (beta simple, not in Pi_0) to 2-forms.

    (X . f)(y) = -f([X, y]) on n*, so X_beta . e^g = -N_{beta, g-beta} e^{g-beta}.
    """
    rs = spec.rs
    gb = rs.simple(beta)
    ib = rs.index(gb)
    pos = {r: i for i, r in enumerate(n.roots)}
    on_dual: Dict[int, Tuple[int, Fraction]] = {}
    for g, i in pos.items():
        d = sub_roots(g, gb)
        if d in pos:
            c = st.N(ib, rs.index(d))
            if c:
                on_dual[i] = (pos[d], -c)

    def act(z: Vec) -> Vec:
        out: Vec = {}
        for (a, b), x in z.items():
            if a in on_dual:
                a2, c = on_dual[a]
                f = ExtForm(2, {(a2, b): x * c}) if a2 != b else None
                if f:
                    linalg.axpy(out, 1, f.coeffs)
            if b in on_dual:
                b2, c = on_dual[b]
                f = ExtForm(2, {(a, b2): x * c}) if a != b2 else None
                if f:
                    linalg.axpy(out, 1, f.coeffs)
        return out

    return act


def _per_weight(sub: Subspace, weight_of_mono) -> Dict[RootVec, List[Vec]]:
    out: Dict[RootVec, List[Vec]] = {}
    for v in sub.basis():
        out.setdefault(weight_of_mono(next(iter(v))), []).append(v)
    return out


def highest_weight_classes(spec: ParabolicSpec, st: StructureTable, n: NilAlgebra) -> Dict[RootVec, Tuple[Subspace, Subspace]]:
    """Per weight mu: (S_mu, B_mu) where S_mu is the set of closed 2-forms whose
    images under every Levi raising operator are exact, B_mu the exact forms."""
    wt = lambda m: add_roots(n.roots[m[0]], n.roots[m[1]])
    Z = _per_weight(closed_2forms(n), wt)
    B = _per_weight(exact_2forms(n), wt)
    Bfull = exact_2forms(n)
    acts = [raising_action(spec, st, n, b) for b in range(1, spec.rs.rank + 1) if b not in spec.pi0]
    out = {}
    for mu, zs in Z.items():
        # kernel of z -> (act(z) mod B) over the basis zs of Z_mu
        cols = {}
        for j, z in enumerate(zs):
            img: Vec = {}
            for r, act in enumerate(acts):
                for m, x in Bfull.reduce(act(z)).items():
                    img[(r,) + m] = x
            cols[j] = img
        ker = linalg.kernel(cols)
        S = [_combine(zs, c) for c in ker]
        out[mu] = (Subspace(0, S + B.get(mu, [])), Subspace(0, B.get(mu, [])))
    return out


def _combine(vs: List[Vec], coeffs: Vec) -> Vec:
    out: Vec = {}
    for j, c in coeffs.items():
        linalg.axpy(out, c, vs[j])
    return out


def h2_weight_dims(n: NilAlgebra) -> Dict[RootVec, int]:
    """dim H^2 per (positive) weight."""
    wt = lambda m: add_roots(n.roots[m[0]], n.roots[m[1]])
    Z = _per_weight(closed_2forms(n), wt)
    B = _per_weight(exact_2forms(n), wt)
    return {mu: len(zs) - len(B.get(mu, [])) for mu, zs in Z.items() if len(zs) > len(B.get(mu, []))}


def multiplicity_count(spec: ParabolicSpec, n: NilAlgebra) -> Dict[RootVec, int]:
    """Number of irreducible Levi summands of H^2 by highest weight.

    For a dominant weight lam of a g_1-module V, the multiplicity of L(lam) is
    sum over subsets S of Delta_1^+ of (-1)^|S| dim V_{lam + sum S}.  Raising
    the weight of a dual monomial lowers its positive label, hence the minus.
    """
    rs = spec.rs
    dims = h2_weight_dims(n)
    levi = spec.levi_roots()
    shifts: Dict[RootVec, int] = {tuple([0] * rs.rank): 1}
    for a in levi:
        nxt = dict(shifts)
        for s, c in shifts.items():
            t = add_roots(s, a)
            nxt[t] = nxt.get(t, 0) - c
        shifts = {s: c for s, c in nxt.items() if c}
    simple_levi = [b for b in range(1, rs.rank + 1) if b not in spec.pi0]
    out = {}
    for mu in dims:
        # -mu dominant for the Levi: (mu, beta) <= 0 for simple beta of g_1
        if any(rs.inner(mu, rs.simple(b)) > 0 for b in simple_levi):
            continue
        m = sum(c * dims.get(sub_roots(mu, s), 0) for s, c in shifts.items())
        if m:
            out[mu] = m
    return out


def verify_hwv_against_cohomology(spec: ParabolicSpec, st: Optional[StructureTable] = None,
                                  count_check: Optional[bool] = None) -> dict:
    """Checks (a) closed and not exact, (b) independent in H^2, (c) annihilated
    by the Levi raising operators modulo exact forms, (d) per-weight agreement
    with the brute-force highest weight classes and with multiplicity counting.

    Raises MismatchReport on the first failure.
    """
    if st is None:
        st = build_structure_table(spec.rs)
    n = build_nilradical(spec, st)
    case = spec.key()
    hw = h2_hwv(spec, st, n)
    Z, B = closed_2forms(n), exact_2forms(n)
    for e in hw:
        v = e.rep_form.coeffs
        if not Z.contains(v):
            raise MismatchReport("representative is not closed", e, case)
        if B.contains(v):
            raise MismatchReport("representative is exact", e, case)
    span = Subspace(0, B.basis() + [e.rep_form.coeffs for e in hw])
    if span.dim != B.dim + len(hw):
        raise MismatchReport("classes are linearly dependent in H^2", None, case)
    acts = [raising_action(spec, st, n, b) for b in range(1, spec.rs.rank + 1) if b not in spec.pi0]
    for e in hw:
        for act in acts:
            if not B.contains(act(e.rep_form.coeffs)):
                raise MismatchReport("class is not annihilated by a raising operator", e, case)
    classes = highest_weight_classes(spec, st, n)
    by_weight = {e.weight: e for e in hw}
    for mu, (S, Bmu) in classes.items():
        e = by_weight.get(mu)
        expect = Subspace(0, Bmu.basis() + ([e.rep_form.coeffs] if e else []))
        if S != expect:
            raise MismatchReport(f"highest weight classes differ at weight {format_root(mu)}", e, case)
    for mu in by_weight:
        if mu not in classes:
            raise MismatchReport(f"no closed forms at weight {format_root(mu)}", by_weight[mu], case)
    if count_check is None:
        count_check = spec.rs.rank <= 4
    if count_check:
        mult = multiplicity_count(spec, n)
        if mult != {mu: 1 for mu in by_weight}:
            raise MismatchReport(f"multiplicity count {mult} disagrees", None, case)
    return {
        "case": case,
        "hwv": [e.to_json() for e in hw],
        "w12": len(enumerate_w12(spec)),
        "b2": Z.dim - B.dim,
        "verified": True,
    }


def hwv_report(spec: ParabolicSpec, st: Optional[StructureTable] = None, verify: bool = True) -> dict:
    if verify:
        n_dim = len(spec.nil_roots())
        if n_dim <= 14:
            return verify_hwv_against_cohomology(spec, st)
    hw = h2_hwv(spec, st)
    return {"case": spec.key(), "hwv": [e.to_json() for e in hw], "w12": len(hw), "verified": False}
