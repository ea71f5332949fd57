"""Root systems of the split simple Lie algebras, Humphreys numbering.

Roots are tuples of integers: coordinates over the simple roots
``gamma_1 .. gamma_n`` (index 0 in the tuple is ``gamma_1``).  The bilinear
form is normalized so that long roots have squared length 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

RootVec = Tuple[int, ...]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


class InvalidRank(ValueError):
    pass


class NotARoot(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f in _MIN_RANK:
            ok = isinstance(n, int) and n >= _MIN_RANK[f]
        elif f == "E":
            ok = n in (6, 7, 8)
        elif f == "F":
            ok = n == 4
        elif f == "G":
            ok = n == 2
        else:
            ok = False
        if not ok:
            raise InvalidRank(f"no split simple type {f}{n}")

    @classmethod
    def parse(cls, code: str) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?(\d+)\s*", code)
        if not m:
            raise InvalidRank(f"cannot parse type code {code!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _dynkin(t: SimpleType) -> Tuple[List[Tuple[int, int]], List[Fraction]]:
    """Edges (0-based) and squared lengths of the simple roots."""
    n, f = t.rank, t.family
    chain = [(i, i + 1) for i in range(n - 1)]
    two = Fraction(2)
    if f == "A":
        return chain, [two] * n
    if f == "B":
        return chain, [two] * (n - 1) + [Fraction(1)]
    if f == "C":
        return chain, [Fraction(1)] * (n - 1) + [two]
    if f == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)], [two] * n
    if f == "E":
        return [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)], [two] * n
    if f == "F":
        return chain, [two, two, Fraction(1), Fraction(1)]
    if f == "G":
        return chain, [Fraction(2, 3), two]
    raise InvalidRank(str(t))


def height(root: RootVec) -> int:
    return sum(root)


def root_order_key(root: RootVec):
    """(height, lexicographic) with gamma_1 heaviest: simple roots come in index order."""
    return (height(root), tuple(-c for c in root))


@dataclass(frozen=True)
class RootSystem:
    type: SimpleType
    positive_roots: Tuple[RootVec, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    bilinear: Tuple[Tuple[Fraction, ...], ...]
    max_root: RootVec
    _index: Dict[RootVec, int] = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def rank(self) -> int:
        return self.type.rank

    def simple(self, i: int) -> RootVec:
        """Simple root gamma_i (1-based)."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def index(self, root: RootVec) -> int:
        """Position of a positive root in ``positive_roots``."""
        return self._index[tuple(root)]

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if v in self._index:
            return True
        return tuple(-c for c in v) in self._index

    def is_positive_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._index

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        g = self.bilinear
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                row = g[i]
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * bj * row[j]
        return total

    def norm2(self, a: Sequence[int]) -> Fraction:
        return self.inner(a, a)

    def coroot_pairing(self, beta: Sequence[int], alpha: Sequence[int]) -> int:
        """``2 (beta, alpha) / (alpha, alpha)``."""
        v = 2 * self.inner(beta, alpha) / self.norm2(alpha)
        assert v.denominator == 1
        return int(v)

    def all_roots(self) -> List[RootVec]:
        return list(self.positive_roots) + [tuple(-c for c in r) for r in self.positive_roots]

    def to_json(self) -> dict:
        return {
            "type": str(self.type),
            "positive_roots": [list(r) for r in self.positive_roots],
            "max_root": list(self.max_root),
        }


def _reflect_raw(bilinear, v: RootVec, i: int) -> RootVec:
    # s_i(v) = v - <v, gamma_i^vee> gamma_i
    num = sum(c * bilinear[j][i] for j, c in enumerate(v))
    k = 2 * num / bilinear[i][i]
    assert k.denominator == 1
    out = list(v)
    out[i] -= int(k)
    return tuple(out)


_CACHE: Dict[SimpleType, RootSystem] = {}


def build_root_system(t) -> RootSystem:
    """Positive roots by closure of the simple roots under simple reflections."""
    if isinstance(t, str):
        t = SimpleType.parse(t)
    if t in _CACHE:
        return _CACHE[t]
    n = t.rank
    edges, lengths = _dynkin(t)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = lengths[i]
    for i, j in edges:
        g[i][j] = g[j][i] = -max(lengths[i], lengths[j]) / 2
    cartan = tuple(
        tuple(int(2 * g[i][j] / g[i][i]) for j in range(n)) for i in range(n)
    )
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                s = _reflect_raw(g, r, i)
                if all(c >= 0 for c in s) and s not in found:
                    found.add(s)
                    nxt.append(s)
        frontier = nxt
    pos = tuple(sorted(found, key=root_order_key))
    bil = tuple(tuple(row) for row in g)
    maxes = [r for r in pos if not any(_add(r, s) in found for s in simple)]
    assert len(maxes) == 1, maxes
    rs = RootSystem(t, pos, cartan, bil, maxes[0], {r: i for i, r in enumerate(pos)})
    _CACHE[t] = rs
    return rs


def _add(a: RootVec, b: RootVec) -> RootVec:
    return tuple(x + y for x, y in zip(a, b))


def add_roots(a: Sequence[int], b: Sequence[int]) -> RootVec:
    return _add(tuple(a), tuple(b))


def sub_roots(a: Sequence[int], b: Sequence[int]) -> RootVec:
    return tuple(x - y for x, y in zip(a, b))


def reflect(rs: RootSystem, target: Sequence[int], alpha_index: int) -> RootVec:
    """``s_alpha(target)`` for the simple root ``gamma_{alpha_index}`` (1-based)."""
    target = tuple(target)
    if len(target) != rs.rank or not rs.is_root(target):
        raise NotARoot(f"{target} is not a root of {rs.type}")
    if not 1 <= alpha_index <= rs.rank:
        raise IndexError(alpha_index)
    return _reflect_raw(rs.bilinear, target, alpha_index - 1)


def coord(gamma: Sequence[int], alpha_index: int) -> int:
    return gamma[alpha_index - 1]


def o_value(gamma: Sequence[int], pi0: Iterable[int]) -> int:
    """Sum of the coordinates of ``gamma`` along the simple roots in ``pi0`` (1-based)."""
    return sum(gamma[i - 1] for i in pi0)


def root_string(rs: RootSystem, gamma: RootVec, delta: RootVec) -> List[int]:
    """All ``j`` with ``gamma + j*delta`` a root (brute force over |j| <= 4)."""
    out = []
    for j in range(-4, 5):
        v = tuple(g + j * d for g, d in zip(gamma, delta))
        if any(v) and rs.is_root(v):
            out.append(j)
    return out


def epsilon_coords(t: SimpleType, root: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """Coordinates in the standard epsilon basis for types A, B, C, D."""
    n, f = t.rank, t.family
    if f not in "ABCD":
        return None
    size = n + 1 if f == "A" else n
    out = [0] * size
    for i, c in enumerate(root):
        if not c:
            continue
        if i < n - 1 or f == "A":
            out[i] += c
            out[i + 1] -= c
        elif f == "B":
            out[n - 1] += c
        elif f == "C":
            out[n - 1] += 2 * c
        else:  # D: gamma_n = e_{n-1} + e_n
            out[n - 2] += c
            out[n - 1] += c
    return tuple(out)


def format_epsilon(t: SimpleType, root: Sequence[int]) -> str:
    e = epsilon_coords(t, root)
    if e is None:
        return format_root(root)
    terms = []
    for i, c in enumerate(e):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{mag}e{i + 1}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


def format_root(root: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(root):
        if c:
            terms.append(("" if c == 1 else "-" if c == -1 else str(c)) + f"g{i + 1}")
    return "+".join(terms).replace("+-", "-") or "0"


def positive_root_count(t: SimpleType) -> int:
    n, f = t.rank, t.family
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[f]


def all_types(max_rank: int, exceptional: bool = True) -> List[SimpleType]:
    out = []
    for f, lo in _MIN_RANK.items():
        out += [SimpleType(f, n) for n in range(lo, max_rank + 1)]
    if exceptional:
        out += [SimpleType("E", 6), SimpleType("E", 7), SimpleType("E", 8),
                SimpleType("F", 4), SimpleType("G", 2)]
    return out
