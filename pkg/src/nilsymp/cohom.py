"""Chevalley-Eilenberg complex over Q, filtrations and the projections P_t.

p-forms are sparse dicts keyed by strictly increasing index tuples over the
dual basis; the determinant convention ``(e^a ^ e^b)(e_a, e_b) = 1`` is used
throughout, so ``d e^c = -sum_{a<b} C^c_{ab} e^a ^ e^b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .linalg import Subspace, Vec
from .nilrad import NilAlgebra, extend_trivially, lower_central_series

Mono = Tuple[int, ...]


class BadT(ValueError):
    pass


class NotAFiltration(ValueError):
    pass


class NotApplicable(ValueError):
    pass


FULL_COMPLEX_MAX_DIM = 14


# -- forms ---------------------------------------------------------------------

def _sort_sign(idx: Sequence[int]) -> Tuple[int, Optional[Mono]]:
    """Sign of the sorting permutation, or (0, None) on a repeated index."""
    lst = list(idx)
    if len(set(lst)) != len(lst):
        return 0, None
    sign = 1
    for i in range(len(lst)):
        for j in range(i + 1, len(lst)):
            if lst[i] > lst[j]:
                sign = -sign
    return sign, tuple(sorted(lst))


class ExtForm:
    """An exterior form with exact rational coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Optional[Mapping] = None):
        self.degree = degree
        self.coeffs: Dict[Mono, Fraction] = {}
        for k, v in (coeffs or {}).items():
            k = tuple(k)
            if len(k) != degree:
                raise ValueError(f"monomial {k} has wrong degree")
            s, key = _sort_sign(k)
            v = Fraction(v) * s
            if v:
                w = self.coeffs.get(key, 0) + v
                if w:
                    self.coeffs[key] = w
                else:
                    del self.coeffs[key]

    @classmethod
    def from_vec(cls, degree: int, v: Mapping[Mono, Fraction]) -> "ExtForm":
        f = cls(degree)
        f.coeffs = {k: Fraction(x) for k, x in v.items() if x}
        return f

    @classmethod
    def monomial(cls, *idx: int, coeff=1) -> "ExtForm":
        return cls(len(idx), {idx: coeff})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtForm) and self.degree == other.degree and self.coeffs == other.coeffs

    def __add__(self, other: "ExtForm") -> "ExtForm":
        assert self.degree == other.degree
        out = dict(self.coeffs)
        linalg.axpy(out, 1, other.coeffs)
        return ExtForm.from_vec(self.degree, out)

    def __sub__(self, other: "ExtForm") -> "ExtForm":
        return self + other.scale(-1)

    def scale(self, a) -> "ExtForm":
        return ExtForm.from_vec(self.degree, linalg.scaled(self.coeffs, a))

    def __rmul__(self, a) -> "ExtForm":
        return self.scale(a)

    def wedge(self, other: "ExtForm") -> "ExtForm":
        out: Dict[Mono, Fraction] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                s, key = _sort_sign(a + b)
                if s:
                    w = out.get(key, 0) + s * x * y
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return ExtForm.from_vec(self.degree + other.degree, out)

    def power(self, m: int) -> "ExtForm":
        out = ExtForm(0, {(): 1})
        for _ in range(m):
            out = out.wedge(self)
        return out

    def evaluate(self, *vectors: Mapping[int, Fraction]) -> Fraction:
        """Value on vectors given as sparse coordinate dicts (determinant convention)."""
        assert len(vectors) == self.degree
        total = Fraction(0)
        for mono, c in self.coeffs.items():
            rows = [[Fraction(v.get(i, 0)) for v in vectors] for i in mono]
            total += c * linalg.dense_det(rows)
        return total

    def skew_matrix(self, dim: int) -> List[List[Fraction]]:
        assert self.degree == 2
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for (a, b), c in self.coeffs.items():
            m[a][b] += c
            m[b][a] -= c
        return m

    def support(self) -> set:
        return {i for k in self.coeffs for i in k}

    def format(self, labels: Sequence[str]) -> str:
        """Readable sum like ``(g1+g2)* ^ T* - 2 g2* ^ g3*``."""
        if not self.coeffs:
            return "0"

        def dual(i: int) -> str:
            lab = labels[i]
            return f"({lab})*" if "+" in lab or "-" in lab else f"{lab}*"

        out = ""
        for k, c in sorted(self.coeffs.items()):
            mono = " ^ ".join(dual(i) for i in k)
            sign = "-" if c < 0 else "+"
            term = mono if abs(c) == 1 else f"{abs(c)} {mono}"
            out += (f"{sign} " if out else ("-" if c < 0 else "")) + term + " "
        return out.strip().replace("  ", " ")

    def to_json(self) -> list:
        return [[list(k), str(c)] for k, c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, degree: int, data) -> "ExtForm":
        return cls(degree, {tuple(k): Fraction(c) for k, c in data})

    def __repr__(self) -> str:
        return f"ExtForm({self.degree}, {self.coeffs})"


# -- the differential ------------------------------------------------------------

def d_one(n: NilAlgebra, c: int) -> Vec:
    """d e^c as a 2-form vector."""
    return {k: -x for k, x in n.structure(c).items()}


def d_monomial(n: NilAlgebra, mono: Mono) -> Vec:
    """d(e^{i_1} ^ ... ^ e^{i_p}) via the Leibniz rule."""
    out: Vec = {}
    rest = list(mono)
    for pos, c in enumerate(mono):
        sgn = -1 if pos % 2 else 1
        for (a, b), x in n.structure(c).items():
            others = rest[:pos] + [a, b] + rest[pos + 1:]
            s, key = _sort_sign(others)
            if s:
                w = out.get(key, 0) - sgn * s * x
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
    return out


def d_form(n: NilAlgebra, f: ExtForm) -> ExtForm:
    out: Vec = {}
    for m, c in f.coeffs.items():
        linalg.axpy(out, c, d_monomial(n, m))
    return ExtForm.from_vec(f.degree + 1, out)


def d_direct(n: NilAlgebra, f: ExtForm) -> ExtForm:
    """d f evaluated pointwise on basis tuples (slow reference).

    Uses the sign (-1)^{i+j}, which makes d e^c(x, y) = -e^c([x, y]).
    """
    p = f.degree
    out: Dict[Mono, Fraction] = {}
    for xs in combinations(range(n.dim), p + 1):
        total = Fraction(0)
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                br = n.bracket(xs[i], xs[j])
                if not br:
                    continue
                rest = [xs[m] for m in range(p + 1) if m not in (i, j)]
                sgn = 1 if (i + j) % 2 == 0 else -1  # (-1)^{i+j} with 1-based i, j
                for c, x in br.items():
                    total += sgn * x * f.evaluate({c: 1}, *({r: 1} for r in rest))
        if total:
            out[xs] = total
    return ExtForm.from_vec(p + 1, out)


def weight_of(n: NilAlgebra, mono: Mono) -> Tuple[int, ...]:
    w = [0] * len(n.weights[0]) if n.weights else []
    for i in mono:
        for j, x in enumerate(n.weights[i]):
            w[j] += x
    return tuple(w)


def weight_blocks(n: NilAlgebra, p: int) -> Dict[Tuple[int, ...], List[Mono]]:
    """Degree-p monomials grouped by total weight; d maps block mu into block mu."""
    cache = n._cache.setdefault("blocks", {})
    if p in cache:
        return cache[p]
    out: Dict[Tuple[int, ...], List[Mono]] = {}
    for m in combinations(range(n.dim), p):
        out.setdefault(weight_of(n, m), []).append(m)
    cache[p] = out
    return out


def differential(n: NilAlgebra, p: int) -> Dict[Mono, Vec]:
    """d_p as sparse columns {monomial: image}, lexicographic monomial order."""
    if not 0 <= p <= n.dim:
        raise ValueError(f"degree {p} out of range for dim {n.dim}")
    cache = n._cache.setdefault("d", {})
    if p not in cache:
        cache[p] = {m: d_monomial(n, m) for m in combinations(range(n.dim), p)}
    return cache[p]


def _block_cols(n: NilAlgebra, p: int, monos: List[Mono]) -> Dict[Mono, Vec]:
    full = n._cache.get("d", {}).get(p)
    if full is not None:
        return {m: full[m] for m in monos}
    return {m: d_monomial(n, m) for m in monos}


def closed_forms(n: NilAlgebra, p: int) -> Subspace:
    cache = n._cache.setdefault("Z", {})
    if p not in cache:
        vecs = []
        for monos in weight_blocks(n, p).values():
            vecs += linalg.kernel(_block_cols(n, p, monos))
        cache[p] = Subspace(comb(n.dim, p), vecs)
    return cache[p]


def exact_forms(n: NilAlgebra, p: int) -> Subspace:
    cache = n._cache.setdefault("B", {})
    if p not in cache:
        if p == 0:
            cache[p] = Subspace(1)
        else:
            vecs = []
            for monos in weight_blocks(n, p - 1).values():
                vecs += [v for v in _block_cols(n, p - 1, monos).values() if v]
            cache[p] = Subspace(comb(n.dim, p), vecs)
    return cache[p]


def closed_2forms(n: NilAlgebra) -> Subspace:
    return closed_forms(n, 2)


def exact_2forms(n: NilAlgebra) -> Subspace:
    return exact_forms(n, 2)


def rank_d(n: NilAlgebra, p: int) -> int:
    if p < 0 or p >= n.dim:
        return 0
    cache = n._cache.setdefault("rank", {})
    if p not in cache:
        cache[p] = sum(
            linalg.rank(_block_cols(n, p, monos).values())
            for monos in weight_blocks(n, p).values()
        )
    return cache[p]


def betti(n: NilAlgebra, p: int) -> int:
    if p < 0 or p > n.dim:
        return 0
    if n.dim > FULL_COMPLEX_MAX_DIM and 3 < p < n.dim - 3:
        raise ValueError(f"Betti number b{p} not computed above dim {FULL_COMPLEX_MAX_DIM}")
    return comb(n.dim, p) - rank_d(n, p) - rank_d(n, p - 1)


def betti_numbers(n: NilAlgebra) -> List[Optional[int]]:
    """All Betti numbers when dim <= 14, otherwise b0..b3 and None elsewhere."""
    if n.dim <= FULL_COMPLEX_MAX_DIM:
        return [betti(n, p) for p in range(n.dim + 1)]
    return [betti(n, p) if p <= 3 else None for p in range(n.dim + 1)]


def is_closed_2form(n: NilAlgebra, omega: ExtForm) -> bool:
    """Closedness checked as omega([U,V],W) + cyclic = 0 on basis triples."""
    coeff = omega.coeffs

    def w(vec: Vec, c: int) -> Fraction:
        s = Fraction(0)
        for a, x in vec.items():
            if a < c:
                s += x * coeff.get((a, c), 0)
            elif a > c:
                s -= x * coeff.get((c, a), 0)
        return s

    for u, v, z in combinations(range(n.dim), 3):
        if w(n.bracket(u, v), z) + w(n.bracket(v, z), u) + w(n.bracket(z, u), v):
            return False
    return True


def matrix_dump(n: NilAlgebra, p: int) -> str:
    """d_p as 'row col value' triplets (0-based lexicographic ranks)."""
    rows = {m: i for i, m in enumerate(combinations(range(n.dim), p + 1))}
    lines = [f"# d_{p} {comb(n.dim, p + 1)} x {comb(n.dim, p)}"]
    for j, (m, img) in enumerate(sorted(differential(n, p).items())):
        for key, x in sorted(img.items()):
            lines.append(f"{rows[key]} {j} {x}")
    return "\n".join(lines) + "\n"


# -- filtrations and P_t --------------------------------------------------------

@dataclass
class Filtration:
    """n = chain[0] > chain[1] > ... > chain[k] = 0."""

    chain: List[Subspace]

    @property
    def k(self) -> int:
        return len(self.chain) - 1

    def level(self, j: int) -> Subspace:
        if j >= len(self.chain):
            return self.chain[-1]
        return self.chain[j]

    def is_coordinate(self) -> bool:
        return all(all(len(r) == 1 for r in s.basis()) for s in self.chain)


def lcs_filtration(n: NilAlgebra) -> Filtration:
    return Filtration(lower_central_series(n))


def check_filtration(n: NilAlgebra, f: Filtration) -> None:
    ch = f.chain
    if not ch or ch[0].dim != n.dim or ch[-1].dim != 0:
        raise NotAFiltration("chain must run from n down to 0")
    for a, b in zip(ch, ch[1:]):
        if b.dim >= a.dim or not a.contains_space(b):
            raise NotAFiltration("chain is not strictly decreasing")
    k = f.k
    for i in range(k):
        for j in range(i, k):
            target = f.level(i + j + 1)
            for u in ch[i].basis():
                for v in ch[j].basis():
                    if not target.contains(n.bracket_vec(u, v)):
                        raise NotAFiltration(f"[n^{i}, n^{j}] not inside n^{i + j + 1}")


def _vanishes_on(omega_basis: List[Vec], U: Subspace, V: Subspace) -> bool:
    ub, vb = U.basis(), V.basis()
    for w in omega_basis:
        f = ExtForm.from_vec(2, w)
        for u in ub:
            for v in vb:
                if f.evaluate(u, v):
                    return False
    return True


def is_accurate(n: NilAlgebra, f: Filtration) -> bool:
    check_filtration(n, f)
    k = f.k
    Z = closed_2forms(n).basis()
    B = exact_2forms(n).basis()
    for i in range(k + 1):
        j = max(k - 1 - i, 0)
        if not _vanishes_on(B, f.level(i), f.level(j)):
            return False
        j = max(k - i, 0)
        if not _vanishes_on(Z, f.level(i), f.level(j)):
            return False
    return True


@dataclass
class MjDecomposition:
    """Adapted basis: column ``basis[r]`` lies in n^{level[r]-1} minus n^{level[r]}.

    The dual basis element of ``basis[r]`` spans part of m_{level[r]}.
    """

    basis: List[Vec]
    levels: List[int]
    k: int
    identity: bool

    def dual_grades(self) -> List[int]:
        return list(self.levels)


def mj_decomposition(n: NilAlgebra, f: Filtration) -> MjDecomposition:
    k = f.k
    ech = linalg.Echelon()
    basis: List[Vec] = []
    levels: List[int] = []
    for j in range(k, 0, -1):
        for v in f.chain[j - 1].basis():
            if ech.add(v):
                basis.append(v)
                levels.append(j)
    if f.is_coordinate():
        order = sorted(range(n.dim), key=lambda r: min(basis[r]))
        basis = [basis[r] for r in order]
        levels = [levels[r] for r in order]
        ident = all(basis[i] == {i: 1} for i in range(n.dim))
    else:
        ident = False
    return MjDecomposition(basis, levels, k, ident)


def _check_t(t: int, k: int) -> None:
    if not 1 <= t <= (k + 1) // 2:
        raise BadT(f"t={t} outside 1..{(k + 1) // 2}")


def project_pt(omega: ExtForm, t: int, mj: MjDecomposition) -> ExtForm:
    """Component of omega in m_t ^ m_{k-t+1}."""
    k = mj.k
    _check_t(t, k)
    want = {t, k - t + 1}
    lv = mj.levels

    def keep(a, b):
        return {lv[a], lv[b]} == want

    if mj.identity:
        return ExtForm.from_vec(2, {m: c for m, c in omega.coeffs.items() if keep(*m)})
    d = len(lv)
    M = [[Fraction(mj.basis[c].get(r, 0)) for c in range(d)] for r in range(d)]
    O = omega.skew_matrix(d)
    # coefficients in the adapted dual basis: O' = M^T O M
    OM = [[sum((O[r][s] * M[s][c] for s in range(d) if O[r][s]), Fraction(0)) for c in range(d)] for r in range(d)]
    Op = [[sum((M[s][r] * OM[s][c] for s in range(d) if M[s][r]), Fraction(0)) for c in range(d)] for r in range(d)]
    for a in range(d):
        for b in range(d):
            if not keep(a, b):
                Op[a][b] = Fraction(0)
    # back to the original dual basis: O = Minv^T O' Minv
    Minv = _inverse(M)
    A = [[sum((Op[r][s] * Minv[s][c] for s in range(d) if Op[r][s]), Fraction(0)) for c in range(d)] for r in range(d)]
    out = {}
    for a in range(d):
        for b in range(a + 1, d):
            v = sum((Minv[s][a] * A[s][b] for s in range(d) if Minv[s][a]), Fraction(0))
            if v:
                out[(a, b)] = v
    return ExtForm.from_vec(2, out)


def _inverse(M: List[List[Fraction]]) -> List[List[Fraction]]:
    d = len(M)
    cols = {j: {i: M[i][j] for i in range(d) if M[i][j]} for j in range(d)}
    inv = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        x = linalg.solve(cols, {i: Fraction(1)})
        assert x is not None, "adapted basis is singular"
        for j, v in x.items():
            inv[j][i] = v
    return inv


def pt_image(n: NilAlgebra, t: int, f: Optional[Filtration] = None) -> Subspace:
    """P_t applied to the closed 2-forms (as a subspace of 2-forms)."""
    f = f or lcs_filtration(n)
    mj = mj_decomposition(n, f)
    vecs = [project_pt(ExtForm.from_vec(2, z), t, mj).coeffs for z in closed_2forms(n).basis()]
    return Subspace(comb(n.dim, 2), vecs)


def block_support(omega: ExtForm, mj: MjDecomposition) -> set:
    """Set of (i, j), i <= j, with a nonzero m_i ^ m_j component (coordinate filtrations)."""
    assert mj.identity
    out = set()
    for a, b in omega.coeffs:
        i, j = sorted((mj.levels[a], mj.levels[b]))
        out.add((i, j))
    return out


def extend_filtration(n: NilAlgebra, f: Filtration, t: int) -> Tuple[NilAlgebra, Filtration]:
    """R T + n with n~^j = RT + n^j for j <= t and n^j beyond."""
    if n.is_abelian:
        raise NotApplicable("the algebra is abelian")
    c1 = lower_central_series(n)[1]
    if f.level(1) != c1:
        raise NotApplicable("n^1 must equal the derived algebra")
    _check_t(t, f.k)
    nt = extend_trivially(n, grade=t)
    d = nt.dim
    T = {d - 1: Fraction(1)}
    chain = []
    for j, s in enumerate(f.chain):
        vs = [dict(v) for v in s.basis()]
        if j <= t:
            vs.append(T)
        chain.append(Subspace(d, vs))
    return nt, Filtration(chain)
