"""Chevalley structure constants on the positive part of a split simple algebra.

Signs are fixed on extraspecial pairs and everything else is forced by the
standard relations between the ``N_{r,s}`` (Carter, *Simple groups of Lie
type*, ch. 4).  The result is checked against the Chevalley integrality
``|N_{r,s}| = p + 1`` and the Jacobi identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .rootsys import RootSystem, RootVec, build_root_system

Pair = Tuple[int, int]


class StructureError(AssertionError):
    pass


@dataclass(frozen=True)
class StructureTable:
    """``n_const[(i, j)] = N`` means ``[X_i, X_j] = N X_{sum_index[(i, j)]}``.

    Indices refer to ``rs.positive_roots``.  Only pairs whose sum is a positive
    root are stored.
    """

    rs: RootSystem
    n_const: Dict[Pair, Fraction]
    sum_index: Dict[Pair, int]
    extraspecial: Dict[int, Pair] = field(default_factory=dict)
    signs: Dict[int, int] = field(default_factory=dict)

    def N(self, i: int, j: int) -> Fraction:
        return self.n_const.get((i, j), Fraction(0))

    def bracket(self, a: int, b: int) -> Dict[int, Fraction]:
        """Bracket of two positive root vectors as ``{index: coeff}``."""
        c = self.n_const.get((a, b))
        if c is None:
            return {}
        return {self.sum_index[(a, b)]: c}

    def to_json(self) -> list:
        return [
            [i, j, str(c), self.sum_index[(i, j)]]
            for (i, j), c in sorted(self.n_const.items())
        ]


def _string_p(rs: RootSystem, gamma: RootVec, delta: RootVec) -> int:
    """Largest p with delta - p*gamma a root."""
    p = 0
    while True:
        v = tuple(d - (p + 1) * g for g, d in zip(gamma, delta))
        if not any(v) or not rs.is_root(v):
            return p
        p += 1


def build_structure_table(rs, signs: Optional[Dict[int, int]] = None, seed=None) -> StructureTable:
    """Structure constants for the positive root vectors.

    ``signs`` maps the index of a non-simple positive root to the sign of
    ``N`` on its extraspecial pair (default +1).  Passing ``seed`` instead
    draws those signs at random, which gives another valid Chevalley basis.
    """
    if not isinstance(rs, RootSystem):
        rs = build_root_system(rs)
    pos = rs.positive_roots
    idx = {r: i for i, r in enumerate(pos)}
    neg = lambda r: tuple(-c for c in r)
    if seed is not None and signs is None:
        rng = random.Random(seed)
        signs = {i: rng.choice((1, -1)) for i, r in enumerate(pos) if sum(r) > 1}
    signs = dict(signs or {})

    table: Dict[Tuple[RootVec, RootVec], Fraction] = {}

    def N(a: RootVec, b: RootVec) -> Fraction:
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s) or not rs.is_root(s):
            return Fraction(0)
        apos = sum(a) > 0
        bpos = sum(b) > 0
        if apos and bpos:
            return table[(a, b)]
        if not apos and not bpos:
            return -table[(neg(a), neg(b))]
        t = neg(s)  # a + b + t = 0
        tpos = sum(t) > 0
        if bpos == tpos:
            return rs.norm2(t) / rs.norm2(a) * N(b, t)
        return rs.norm2(t) / rs.norm2(b) * N(t, a)

    extraspecial: Dict[int, Pair] = {}
    for xi_i, xi in enumerate(pos):
        if sum(xi) == 1:
            continue
        pairs = []
        for a_i, a in enumerate(pos):
            if a_i >= xi_i:
                break
            b = tuple(x - y for x, y in zip(xi, a))
            if b in idx and idx[b] > a_i:
                pairs.append((a, b))
        alpha, beta = pairs[0]
        extraspecial[xi_i] = (idx[alpha], idx[beta])
        val = Fraction(signs.get(xi_i, 1) * (_string_p(rs, alpha, beta) + 1))
        table[(alpha, beta)] = val
        table[(beta, alpha)] = -val
        nxi = rs.norm2(xi)
        for gamma, delta in pairs[1:]:
            mg, md = neg(gamma), neg(delta)
            acc = Fraction(0)
            bg = tuple(x - y for x, y in zip(beta, gamma))
            if any(bg) and rs.is_root(bg):
                acc += N(beta, mg) * N(alpha, md) / rs.norm2(bg)
            ag = tuple(x - y for x, y in zip(alpha, gamma))
            if any(ag) and rs.is_root(ag):
                acc += N(mg, alpha) * N(beta, md) / rs.norm2(ag)
            v = nxi * acc / val
            table[(gamma, delta)] = v
            table[(delta, gamma)] = -v

    n_const = {}
    sum_index = {}
    for (a, b), v in table.items():
        i, j = idx[a], idx[b]
        n_const[(i, j)] = v
        sum_index[(i, j)] = idx[tuple(x + y for x, y in zip(a, b))]
    st = StructureTable(rs, n_const, sum_index, extraspecial, signs)
    return st


def validate(st: StructureTable) -> None:
    """Raise StructureError unless antisymmetry, integrality and Jacobi hold."""
    rs = st.rs
    pos = rs.positive_roots
    for (i, j), v in st.n_const.items():
        if st.n_const.get((j, i)) != -v:
            raise StructureError(f"antisymmetry fails at {pos[i]}, {pos[j]}")
        if abs(v) != _string_p(rs, pos[i], pos[j]) + 1:
            raise StructureError(f"|N| != p+1 at {pos[i]}, {pos[j]}: {v}")
    for i, a in enumerate(pos):
        for j, b in enumerate(pos):
            if i != j and (i, j) not in st.n_const and rs.is_positive_root(
                tuple(x + y for x, y in zip(a, b))
            ):
                raise StructureError(f"missing constant at {a}, {b}")
    r = jacobi_residual(st)
    if r:
        raise StructureError(f"Jacobi fails on {r}")


def jacobi_residual(st: StructureTable) -> List[Tuple[int, int, int]]:
    """Triples of positive roots on which the Jacobi identity fails.

    Only triples whose total is a positive root can give a nonzero sum.
    """
    pos = st.rs.positive_roots
    idx = {r: i for i, r in enumerate(pos)}
    n = len(pos)
    bad = []

    def br(a, v):
        out: Dict[int, Fraction] = {}
        for k, c in v.items():
            for m, d in st.bracket(a, k).items():
                out[m] = out.get(m, 0) + c * d
        return out

    for x in range(n):
        for y in range(x + 1, n):
            xy = tuple(p + q for p, q in zip(pos[x], pos[y]))
            for z in range(y + 1, n):
                if tuple(p + q for p, q in zip(xy, pos[z])) not in idx:
                    continue
                total: Dict[int, Fraction] = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    for m, d in br(a, st.bracket(b, c)).items():
                        total[m] = total.get(m, 0) + d
                if any(total.values()):
                    bad.append((x, y, z))
    return bad


def resigned(st: StructureTable, seed) -> StructureTable:
    """Another Jacobi-consistent table for the same root system (random extraspecial signs)."""
    return build_structure_table(st.rs, seed=seed)
