"""Test-only utilities: diagonal isomorphism search and small fixtures."""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from nilsymp import linalg
from nilsymp.nilrad import NilAlgebra
from nilsymp.rootsys import epsilon_coords


def _factor_exponents(x: Fraction, primes=(2, 3)) -> Optional[List[int]]:
    out = []
    num, den = abs(x.numerator), x.denominator
    for p in primes:
        e = 0
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        out.append(e)
    return out if num == 1 and den == 1 else None


def diagonal_isomorphism(a: NilAlgebra, b: NilAlgebra, match: Sequence[int]) -> Optional[List[Fraction]]:
    """Scalars l with e_i -> l_i f_{match[i]} an isomorphism a -> b, or None.

    Needs [e_i, e_j] and [f_mi, f_mj] to be supported on matching basis
    vectors; then l_i l_j / l_k = c_a / c_b, solved separately for the sign
    (over GF(2)) and for the exponents of 2 and 3 (over Q).
    """
    eqs = []   # (i, j, k, ratio)
    for (i, j), v in a.brackets.items():
        w = b.bracket(match[i], match[j])
        if len(v) != 1 or len(w) != 1:
            return None
        (k, x), = v.items()
        (k2, y), = w.items()
        if match[k] != k2:
            return None
        eqs.append((i, j, k, Fraction(x) / Fraction(y)))
    for (i, j), w in b.brackets.items():
        inv = {m: t for t, m in enumerate(match)}
        if not a.bracket(inv[i], inv[j]):
            return None
    d = a.dim
    # signs over GF(2): s_i + s_j + s_k = [ratio < 0]
    rows = [(sum(1 << t for t in (i, j, k)), 1 if r < 0 else 0) for i, j, k, r in eqs]
    sol = _solve_gf2(rows, d)
    if sol is None:
        return None
    mags = []
    for pi in range(2):
        cols: Dict[int, Dict[int, Fraction]] = {}
        target = {}
        for e, (i, j, k, r) in enumerate(eqs):
            ex = _factor_exponents(r)
            if ex is None:
                return None
            for t, c in ((i, 1), (j, 1), (k, -1)):
                cols.setdefault(t, {})
                cols[t][e] = cols[t].get(e, 0) + c
            if ex[pi]:
                target[e] = Fraction(ex[pi])
        cols = {t: {e: c for e, c in v.items() if c} for t, v in cols.items()}
        x = linalg.solve(cols, target)
        if x is None:
            return None
        mags.append(x)
    out = []
    for t in range(d):
        val = Fraction(2) ** int(mags[0].get(t, 0)) * Fraction(3) ** int(mags[1].get(t, 0))
        out.append(-val if (sol >> t) & 1 else val)
    return out


def _solve_gf2(rows, nvars) -> Optional[int]:
    piv = {}
    for mask, rhs in rows:
        for p, (pm, pr) in piv.items():
            if mask >> p & 1:
                mask ^= pm
                rhs ^= pr
        if mask == 0:
            if rhs:
                return None
            continue
        p = (mask & -mask).bit_length() - 1
        for q in list(piv):
            qm, qr = piv[q]
            if qm >> p & 1:
                piv[q] = (qm ^ mask, qr ^ rhs)
        piv[p] = (mask, rhs)
    sol = 0
    for p, (m, r) in piv.items():
        if r:
            sol |= 1 << p
    return sol


def is_isomorphism(a: NilAlgebra, b: NilAlgebra, match: Sequence[int], scal: Sequence[Fraction]) -> bool:
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            lhs = {match[k]: x * scal[k] for k, x in a.bracket(i, j).items()}
            rhs = {k: y * scal[i] * scal[j] for k, y in b.bracket(match[i], match[j]).items()}
            if lhs != {k: v for k, v in rhs.items() if v}:
                return False
    return True


def eps_match(rootalg: NilAlgebra, family: str, rank: int, label_to_eps) -> List[int]:
    """match[i] = index in the fixture of the root basis vector i, via epsilon coordinates."""
    from nilsymp.rootsys import SimpleType
    t = SimpleType(family, rank)
    out = []
    for r in rootalg.roots:
        out.append(label_to_eps(epsilon_coords(t, r)))
    return out
