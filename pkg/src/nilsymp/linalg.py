"""Exact sparse linear algebra over the rationals, plus a few modular helpers.

Vectors are dicts ``{index: Fraction}`` with no zero entries.  A subspace is
stored in reduced row echelon form (pivot = smallest index of a row, pivot
entry 1, pivot columns cleared in every other row), which is canonical: two
subspaces are equal iff their RREF rows are equal.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vec = Dict[int, Fraction]


def vec(entries: Mapping[int, object]) -> Vec:
    """Normalize a mapping into a sparse Fraction vector."""
    out = {}
    for k, v in entries.items():
        v = Fraction(v)
        if v:
            out[k] = v
    return out


def axpy(y: Vec, a, x: Mapping[int, Fraction]) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scaled(x: Mapping[int, Fraction], a) -> Vec:
    a = Fraction(a)
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def add(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vec:
    out = dict(x)
    axpy(out, 1, y)
    return out


def dot(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Fraction:
    if len(x) > len(y):
        x, y = y, x
    return sum((v * y[k] for k, v in x.items() if k in y), Fraction(0))


def to_integer(x: Mapping[int, Fraction]) -> Dict[int, int]:
    """Scale a rational vector to a primitive integer vector (same line)."""
    if not x:
        return {}
    den = lcm(*(Fraction(v).denominator for v in x.values()))
    ints = {k: int(v * den) for k, v in x.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {k: v // g for k, v in ints.items()}


class Echelon:
    """Incrementally built RREF basis of a subspace.

    ``rows`` maps pivot index -> row vector.  Every row has coefficient 1 at
    its pivot and zero at every other pivot.
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.rows: Dict[int, Vec] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        """Return the canonical remainder of ``v`` modulo the span."""
        r = dict(v)
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
        return r

    def add(self, v: Mapping[int, Fraction]) -> bool:
        """Insert ``v``; return True if the span grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def __len__(self) -> int:
        return len(self.rows)

    def basis(self) -> List[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]


class Subspace:
    """Canonical (RREF) subspace of a coordinate space of dimension ``ambient``."""

    __slots__ = ("ambient", "_ech", "_key")

    def __init__(self, ambient: int, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.ambient = ambient
        self._ech = vectors if isinstance(vectors, Echelon) else Echelon(vectors)
        self._key = None

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> "Subspace":
        return cls(ambient, ({i: Fraction(1)} for i in indices))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.coordinate(ambient, range(ambient))

    @property
    def dim(self) -> int:
        return len(self._ech)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._ech.rows)

    def basis(self) -> List[Vec]:
        return self._ech.basis()

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return self._ech.contains(v)

    def reduce(self, v: Mapping[int, Fraction]) -> Vec:
        return self._ech.reduce(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, self.basis() + other.basis())

    def key(self) -> Tuple:
        if self._key is None:
            self._key = tuple(
                tuple(sorted(row.items())) for row in self.basis()
            )
        return self._key

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.key()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def rank(columns: Iterable[Mapping[int, Fraction]]) -> int:
    return len(Echelon(columns))


def kernel(columns: Mapping[int, Mapping[int, Fraction]]) -> List[Vec]:
    """Kernel of a linear map given column-wise as ``{input_index: image}``.

    Returns kernel vectors (in input coordinates), not yet canonicalized.
    """
    # rows: pivot -> (image part, combination part)
    rows: Dict[int, Tuple[Vec, Vec]] = {}
    out = []
    for j, col in columns.items():
        img = dict(col)
        comb: Vec = {j: Fraction(1)}
        for p in [p for p in img if p in rows]:
            c = img.get(p)
            if c:
                ri, rc = rows[p]
                axpy(img, -c, ri)
                axpy(comb, -c, rc)
        if not img:
            out.append(comb)
            continue
        p = min(img)
        inv = 1 / img[p]
        img = {k: x * inv for k, x in img.items()}
        comb = {k: x * inv for k, x in comb.items()}
        for q, (ri, rc) in rows.items():
            c = ri.get(p)
            if c:
                axpy(ri, -c, img)
                axpy(rc, -c, comb)
        rows[p] = (img, comb)
    return out


def solve(columns: Mapping[int, Mapping[int, Fraction]], target: Mapping[int, Fraction]) -> Optional[Vec]:
    """Find ``x`` with ``sum_j x_j columns[j] == target`` or return None."""
    rows: Dict[int, Tuple[Vec, Vec]] = {}
    for j, col in columns.items():
        img = dict(col)
        comb: Vec = {j: Fraction(1)}
        for p in [p for p in img if p in rows]:
            c = img.get(p)
            if c:
                ri, rc = rows[p]
                axpy(img, -c, ri)
                axpy(comb, -c, rc)
        if not img:
            continue
        p = min(img)
        inv = 1 / img[p]
        img = {k: x * inv for k, x in img.items()}
        comb = {k: x * inv for k, x in comb.items()}
        for q, (ri, rc) in rows.items():
            c = ri.get(p)
            if c:
                axpy(ri, -c, img)
                axpy(rc, -c, comb)
        rows[p] = (img, comb)
    r = dict(target)
    x: Vec = {}
    for p in [p for p in r if p in rows]:
        c = r.get(p)
        if c:
            ri, rc = rows[p]
            axpy(r, -c, ri)
            axpy(x, c, rc)
    return None if r else x


# -- dense helpers -----------------------------------------------------------

def dense_det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination on integers."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in r] for r in m]
    den = lcm(*(x.denominator for r in rows for x in r)) if rows else 1
    a = [[int(x * den) for x in r] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], den ** n)


def pfaffian(m: Sequence[Sequence]) -> Fraction:
    """Exact Pfaffian of a skew-symmetric matrix (skew Gaussian elimination)."""
    n = len(m)
    if n % 2:
        return Fraction(0)
    a = [[Fraction(x) for x in r] for r in m]
    result = Fraction(1)
    for k in range(0, n - 1, 2):
        piv = next((j for j in range(k + 1, n) if a[k][j]), None)
        if piv is None:
            return Fraction(0)
        if piv != k + 1:
            # swap index k+1 <-> piv in rows and columns
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for r in a:
                r[k + 1], r[piv] = r[piv], r[k + 1]
            result = -result
        akk1 = a[k][k + 1]
        result *= akk1
        # eliminate entries a[k][j], a[k+1][j] for j > k+1
        for i in range(k + 2, n):
            # row/col ops preserving skew symmetry
            f = a[k][i] / akk1
            g = a[k + 1][i] / akk1
            if f:
                # col_i -= f * col_{k+1}; row_i -= f * row_{k+1}
                for r in a:
                    r[i] -= f * r[k + 1]
                ri, rk1 = a[i], a[k + 1]
                for j in range(n):
                    ri[j] -= f * rk1[j]
            if g:
                # col_i += g * col_k; row_i += g * row_k
                for r in a:
                    r[i] += g * r[k]
                ri, rk = a[i], a[k]
                for j in range(n):
                    ri[j] += g * rk[j]
    return result


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over GF(p)."""
    a = [[x % p for x in r] for r in m]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        row_r = a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                f = f * inv % p
                row_i = a[i]
                for j in range(c, ncols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % p
        r += 1
        if r == len(a):
            break
    return r


def dense_rank(m: Sequence[Sequence]) -> int:
    return rank({i: vec(dict(enumerate(r))) for i, r in enumerate(m)}.values())
