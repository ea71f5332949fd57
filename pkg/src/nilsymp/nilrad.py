"""Nilpotent Lie algebras over Q, and nilradicals of parabolic subalgebras."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .chevbasis import StructureTable, build_structure_table
from .linalg import Subspace, Vec
from .rootsys import RootSystem, RootVec, SimpleType, build_root_system, format_root, o_value


class SchemaError(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class JacobiFail(ValueError):
    pass


@dataclass(frozen=True)
class ParabolicSpec:
    rs: RootSystem
    pi0: FrozenSet[int]

    def __post_init__(self):
        if not self.pi0 or not set(self.pi0) <= set(range(1, self.rs.rank + 1)):
            raise ValueError(f"bad Pi_0 {sorted(self.pi0)} for {self.rs.type}")

    @classmethod
    def of(cls, type_code, pi0: Iterable[int]) -> "ParabolicSpec":
        rs = type_code if isinstance(type_code, RootSystem) else build_root_system(type_code)
        return cls(rs, frozenset(pi0))

    @property
    def type(self) -> SimpleType:
        return self.rs.type

    def o(self, gamma: Sequence[int]) -> int:
        return o_value(gamma, self.pi0)

    @property
    def k(self) -> int:
        return self.o(self.rs.max_root)

    def nil_roots(self) -> List[RootVec]:
        """Positive roots with o > 0, in root-system order."""
        return [r for r in self.rs.positive_roots if self.o(r) > 0]

    def levi_roots(self) -> List[RootVec]:
        return [r for r in self.rs.positive_roots if self.o(r) == 0]

    def key(self) -> str:
        return f"{self.rs.type}:{','.join(map(str, sorted(self.pi0)))}"


@dataclass
class NilAlgebra:
    """A Lie algebra with a fixed ordered basis and exact structure constants.

    ``brackets[(a, b)]`` (a < b) is the bracket ``[e_a, e_b]`` as a sparse
    vector.  ``grading`` assigns an integer degree per basis element and
    ``weights`` a vector in some lattice such that brackets are additive in
    weight; the weights split every cochain space into blocks that the
    differential preserves.
    """

    labels: List[str]
    brackets: Dict[Tuple[int, int], Vec]
    grading: List[int]
    weights: List[Tuple[int, ...]]
    roots: Optional[List[RootVec]] = None
    spec: Optional[ParabolicSpec] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, a: int, b: int) -> Vec:
        if a == b:
            return {}
        if a < b:
            return self.brackets.get((a, b), {})
        v = self.brackets.get((b, a))
        return {k: -c for k, c in v.items()} if v else {}

    def bracket_vec(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for a, x in u.items():
            for b, y in v.items():
                linalg.axpy(out, x * y, self.bracket(a, b))
        return out

    def structure(self, c: int) -> Dict[Tuple[int, int], Fraction]:
        """Coefficient of e_c in [e_a, e_b] for a < b."""
        cache = self._cache.setdefault("structure", {})
        if not cache:
            for (a, b), v in self.brackets.items():
                for k, x in v.items():
                    cache.setdefault(k, {})[(a, b)] = x
        return cache.get(c, {})

    @property
    def is_abelian(self) -> bool:
        return not any(self.brackets.values())

    @property
    def k(self) -> int:
        """Nilpotency class: length of the lower central series."""
        return len(lower_central_series(self)) - 1

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        brs = []
        for (a, b), v in sorted(self.brackets.items()):
            for c, x in sorted(v.items()):
                brs.append([a, b, _fmt(x), c])
        out = {
            "labels": list(self.labels),
            "dim": self.dim,
            "k": self.k,
            "grading": list(self.grading),
            "brackets": brs,
        }
        if self.roots is not None:
            out["roots"] = [list(r) for r in self.roots]
        return out

    def permuted(self, perm: Sequence[int]) -> "NilAlgebra":
        """Same algebra with new basis order: new index i is old index perm[i]."""
        inv = {old: new for new, old in enumerate(perm)}
        brs: Dict[Tuple[int, int], Vec] = {}
        for (a, b), v in self.brackets.items():
            na, nb = inv[a], inv[b]
            w = {inv[c]: x for c, x in v.items()}
            if na > nb:
                na, nb = nb, na
                w = {c: -x for c, x in w.items()}
            brs[(na, nb)] = w
        return NilAlgebra(
            [self.labels[i] for i in perm],
            brs,
            [self.grading[i] for i in perm],
            [self.weights[i] for i in perm],
            None if self.roots is None else [self.roots[i] for i in perm],
            self.spec,
        )


def _fmt(x: Fraction) -> object:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def build_nilradical(spec: ParabolicSpec, st: Optional[StructureTable] = None) -> NilAlgebra:
    """Span of the root vectors X_gamma with o(gamma) > 0."""
    if st is None:
        st = build_structure_table(spec.rs)
    if st.rs is not spec.rs and st.rs.type != spec.rs.type:
        raise ValueError("structure table and spec use different root systems")
    rs = spec.rs
    roots = spec.nil_roots()
    local = {rs.index(r): i for i, r in enumerate(roots)}
    brs: Dict[Tuple[int, int], Vec] = {}
    for a, ga in enumerate(roots):
        ia = rs.index(ga)
        for b in range(a + 1, len(roots)):
            ib = rs.index(roots[b])
            v = st.bracket(ia, ib)
            if v:
                brs[(a, b)] = {local[c]: x for c, x in v.items()}
    return NilAlgebra(
        labels=[format_root(r) for r in roots],
        brackets=brs,
        grading=[spec.o(r) for r in roots],
        weights=list(roots),
        roots=roots,
        spec=spec,
    )


def extend_trivially(n: NilAlgebra, grade: Optional[int] = None, label: str = "T") -> NilAlgebra:
    """R T + n with T central; T is appended as the last basis vector."""
    w = [tuple(x) + (0,) for x in n.weights]
    width = len(w[0]) if w else 1
    w.append(tuple([0] * (width - 1) + [1]))
    if grade is None:
        grade = max(n.grading, default=1)
    return NilAlgebra(
        labels=list(n.labels) + [label],
        brackets={k: dict(v) for k, v in n.brackets.items()},
        grading=list(n.grading) + [grade],
        weights=w,
        roots=None,
        spec=None,
    )


# -- central series ------------------------------------------------------------

def bracket_space(n: NilAlgebra, U: Subspace, V: Subspace) -> Subspace:
    vs = []
    ub, vb = U.basis(), V.basis()
    for u in ub:
        for v in vb:
            w = n.bracket_vec(u, v)
            if w:
                vs.append(w)
    return Subspace(n.dim, vs)


def lower_central_series(n: NilAlgebra) -> List[Subspace]:
    """[c^0, c^1, ..., c^k] with c^k = 0, computed from brackets only.

    Raises NotNilpotent if the series stabilizes at a nonzero subspace.
    """
    cache = n._cache
    if "lcs" in cache:
        return cache["lcs"]
    full = Subspace.full(n.dim)
    series = [full]
    while series[-1].dim:
        nxt = bracket_space(n, full, series[-1])
        if nxt.dim == series[-1].dim:
            raise NotNilpotent(f"lower central series stabilizes at dim {nxt.dim}")
        series.append(nxt)
    cache["lcs"] = series
    return series


def _quotient_map(n: NilAlgebra, W: Subspace):
    """Columns of x -> ([x, e_b] mod W)_b, as a map into (index b, coordinate)."""
    d = n.dim
    cols = {}
    for a in range(d):
        img: Vec = {}
        for b in range(d):
            r = W.reduce(n.bracket(a, b))
            for c, x in r.items():
                img[b * d + c] = x
        cols[a] = img
    return cols


def upper_central_series(n: NilAlgebra) -> List[Subspace]:
    """[c_0 = 0, c_1 = center, ..., c_k = n]."""
    cache = n._cache
    if "ucs" in cache:
        return cache["ucs"]
    series = [Subspace.zero(n.dim)]
    while series[-1].dim < n.dim:
        ker = linalg.kernel(_quotient_map(n, series[-1]))
        nxt = Subspace(n.dim, ker)
        if nxt.dim == series[-1].dim:
            raise NotNilpotent("upper central series stalls")
        series.append(nxt)
    cache["ucs"] = series
    return series


def center(n: NilAlgebra) -> Subspace:
    return upper_central_series(n)[1] if n.dim else Subspace.zero(0)


def grade_subspace(n: NilAlgebra, grades: Iterable[int]) -> Subspace:
    gs = set(grades)
    return Subspace.coordinate(n.dim, [i for i, g in enumerate(n.grading) if g in gs])


def is_abelian_nilradical(spec: ParabolicSpec) -> bool:
    """Abelian iff Pi_0 = {alpha} and coord_alpha(gamma_max) = 1."""
    if len(spec.pi0) != 1:
        return False
    (a,) = spec.pi0
    return spec.rs.max_root[a - 1] == 1


# -- validation and JSON I/O ------------------------------------------------------

def jacobi_failures(n: NilAlgebra, limit: int = 1) -> List[Tuple[int, int, int]]:
    bad = []
    d = n.dim
    for x, y, z in combinations(range(d), 3):
        tot: Vec = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            bc = n.bracket(b, c)
            for m, coef in bc.items():
                linalg.axpy(tot, coef, n.bracket(a, m))
        if tot:
            bad.append((x, y, z))
            if len(bad) >= limit:
                break
    return bad


def _parse_coeff(x) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError("boolean coefficient")
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"bad coefficient {x!r}") from e
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise SchemaError(f"bad coefficient {x!r}")


def algebra_from_json(data) -> NilAlgebra:
    """Build (and validate) an algebra from the JSON algebra format.

    Raises SchemaError, JacobiFail or NotNilpotent.
    """
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict) or "brackets" not in data:
        raise SchemaError("expected an object with 'brackets'")
    labels = data.get("labels")
    dim = data.get("dim", len(labels) if labels else None)
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError("missing or bad 'dim'")
    if labels is None:
        labels = [f"e{i + 1}" for i in range(dim)]
    if len(labels) != dim or len(set(labels)) != dim:
        raise SchemaError("labels must be distinct and match dim")
    brs: Dict[Tuple[int, int], Vec] = {}
    seen: Dict[Tuple[int, int, int], Fraction] = {}
    for entry in data["brackets"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise SchemaError(f"bracket entry must be [i, j, coeff, k]: {entry!r}")
        i, j, c, k = entry
        if not all(isinstance(v, int) and 0 <= v < dim for v in (i, j, k)):
            raise SchemaError(f"index out of range in {entry!r}")
        c = _parse_coeff(c)
        if i == j:
            if c:
                raise SchemaError(f"[e{i}, e{i}] must vanish")
            continue
        a, b, s = (i, j, c) if i < j else (j, i, -c)
        prev = seen.get((a, b, k))
        if prev is not None:
            if prev != s:
                raise SchemaError(f"antisymmetry violated for ({i}, {j}) -> {k}")
            continue
        seen[(a, b, k)] = s
        if s:
            brs.setdefault((a, b), {})[k] = s
    grading = data.get("grading")
    if grading is None:
        grading = [1] * dim
    if len(grading) != dim:
        raise SchemaError("grading length must equal dim")
    additive = all(
        grading[c] == grading[a] + grading[b] for (a, b), v in brs.items() for c in v
    )
    weights = [(g,) for g in grading] if additive else [(0,)] * dim
    roots = data.get("roots")
    n = NilAlgebra(list(labels), brs, list(grading), weights,
                   [tuple(r) for r in roots] if roots else None)
    if jacobi_failures(n):
        raise JacobiFail(f"Jacobi identity fails on {jacobi_failures(n)[0]}")
    lower_central_series(n)
    return n


def ingest_algebra(data) -> NilAlgebra:
    return algebra_from_json(data)


def algebra_from_relations(labels: Sequence[str], relations: Dict[Tuple[str, str], Dict[str, object]],
                           grading: Optional[Sequence[int]] = None) -> NilAlgebra:
    """Convenience constructor: ``{("X1", "Y2"): {"Z12": 1}, ...}``."""
    pos = {l: i for i, l in enumerate(labels)}
    brs = []
    for (x, y), img in relations.items():
        for z, c in img.items():
            brs.append([pos[x], pos[y], c if isinstance(c, int) else str(Fraction(c)), pos[z]])
    data = {"labels": list(labels), "dim": len(labels), "brackets": brs}
    if grading is not None:
        data["grading"] = list(grading)
    return algebra_from_json(data)
