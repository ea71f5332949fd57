"""Hand-written algebras in the X, Y, Z bases used for the classical witnesses.

Each builder returns the algebra together with a label -> index map so that
forms can be written as ``{("Z12", "X1"): 1, ...}``.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .cohom import ExtForm
from .nilrad import NilAlgebra, algebra_from_relations, extend_trivially


def _form(n: NilAlgebra, terms: Dict[Tuple[str, str], int]) -> ExtForm:
    pos = {l: i for i, l in enumerate(n.labels)}
    return ExtForm(2, {(pos[a], pos[b]): c for (a, b), c in terms.items()})


def symmetric_pairs(m: int) -> NilAlgebra:
    """[X_i, Y_j] = [X_j, Y_i] = Z_ij for i <= j <= m (C_{m+1}, Pi_0 = {gamma_m})."""
    xs = [f"X{i}" for i in range(1, m + 1)]
    ys = [f"Y{i}" for i in range(1, m + 1)]
    zs = [f"Z{i}{j}" for i in range(1, m + 1) for j in range(i, m + 1)]
    rel = {}
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            rel[(f"X{i}", f"Y{j}")] = {f"Z{i}{j}": 1}
            if i != j:
                rel[(f"X{j}", f"Y{i}")] = {f"Z{i}{j}": 1}
    return algebra_from_relations(xs + ys + zs, rel, [1] * (2 * m) + [2] * len(zs))


def skew_pairs(m: int, sign: int = -1) -> NilAlgebra:
    """[X_i, Y_j] = Z_ij and [X_j, Y_i] = sign * Z_ij for i < j <= m."""
    xs = [f"X{i}" for i in range(1, m + 1)]
    ys = [f"Y{i}" for i in range(1, m + 1)]
    zs = [f"Z{i}{j}" for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    rel = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            rel[(f"X{i}", f"Y{j}")] = {f"Z{i}{j}": 1}
            rel[(f"X{j}", f"Y{i}")] = {f"Z{i}{j}": sign}
    return algebra_from_relations(xs + ys + zs, rel, [1] * (2 * m) + [2] * len(zs))


def full_pairs(m: int) -> NilAlgebra:
    """[X_i, Y_j] = Z_ij for all 1 <= i, j <= m (A_{2m}, Pi_0 = {gamma_m, gamma_{m+1}})."""
    xs = [f"X{i}" for i in range(1, m + 1)]
    ys = [f"Y{i}" for i in range(1, m + 1)]
    zs = [f"Z{i}{j}" for i in range(1, m + 1) for j in range(1, m + 1)]
    rel = {(f"X{i}", f"Y{j}"): {f"Z{i}{j}": 1} for i in range(1, m + 1) for j in range(1, m + 1)}
    return algebra_from_relations(xs + ys + zs, rel, [1] * (2 * m) + [2] * len(zs))


def heisenberg() -> NilAlgebra:
    return algebra_from_relations(["X", "Y", "Z"], {("X", "Y"): {"Z": 1}}, [1, 1, 2])


def heisenberg_plus_line() -> NilAlgebra:
    """R T + <X, Y, Z> with [X, Y] = Z."""
    return algebra_from_relations(["X", "Y", "Z", "T"], {("X", "Y"): {"Z": 1}}, [1, 1, 2, 1])


def with_u(n: NilAlgebra) -> NilAlgebra:
    return extend_trivially(n, label="U1")


def c3_extension_witness() -> Tuple[NilAlgebra, ExtForm]:
    n = with_u(symmetric_pairs(2))
    return n, _form(n, {("Z12", "X1"): 1, ("Z11", "X2"): 1, ("Z22", "Y2"): 1, ("U1", "Y1"): 1})


def c4_witness() -> Tuple[NilAlgebra, ExtForm]:
    n = symmetric_pairs(3)
    return n, _form(n, {("Z12", "X3"): 1, ("Z13", "X2"): 1, ("Z23", "X1"): 1,
                        ("Z11", "Y1"): 1, ("Z22", "Y3"): 1, ("Z33", "Y2"): 1})


def d4_extension_witness(sign: int = -1) -> Tuple[NilAlgebra, ExtForm]:
    n = with_u(skew_pairs(3, sign))
    return n, _form(n, {("Z12", "X3"): 1, ("Z13", "X2"): 1, ("Z23", "X1"): 1,
                        ("Y1", "Y2"): 1, ("Y3", "U1"): 1})


def a4_printed_witness() -> Tuple[NilAlgebra, ExtForm]:
    n = full_pairs(2)
    return n, _form(n, {("Z11", "X1"): 1, ("Z22", "Y2"): 1, ("Z12", "X1"): 1, ("Z21", "X2"): 1})


PRINTED_WITNESSES = {
    "C3:2:R+n": c3_extension_witness,
    "C4:3:n": c4_witness,
    "D4:3,4:R+n": d4_extension_witness,
    "A4:2,3:n": a4_printed_witness,
}
