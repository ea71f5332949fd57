import pytest
from hypothesis import given, settings, strategies as st

from nilsymp.rootsys import (InvalidRank, SimpleType, all_types, build_root_system, epsilon_coords,
                             format_root, positive_root_count, reflect, root_string)

# Dynkin labels of the maximal root in the Bourbaki/Humphreys numbering
MAX_ROOT = {
    "E6": (1, 2, 2, 3, 2, 1),
    "E7": (2, 2, 3, 4, 3, 2, 1),
    "E8": (2, 3, 4, 6, 5, 4, 3, 2),
    "F4": (2, 3, 4, 2),
    "G2": (3, 2),
}

POSITIVE_COUNTS = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}

TYPES = all_types(8)


def classical_max_root(family, n):
    if family == "A":
        return (1,) * n
    if family == "B":
        return (1,) + (2,) * (n - 1)
    if family == "C":
        return (2,) * (n - 1) + (1,)
    return (1,) + (2,) * (n - 3) + (1, 1)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_max_root_labels(t):
    rs = build_root_system(t)
    want = MAX_ROOT.get(str(t)) or classical_max_root(t.family, t.rank)
    assert rs.max_root == want


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_positive_root_count(t):
    n = t.rank
    want = POSITIVE_COUNTS.get(str(t)) or {"A": n * (n + 1) // 2, "B": n * n, "C": n * n,
                                           "D": n * (n - 1)}[t.family]
    rs = build_root_system(t)
    assert len(rs.positive_roots) == want == positive_root_count(t)


@pytest.mark.parametrize("t", TYPES, ids=str)
def test_reflections_permute_roots(t):
    rs = build_root_system(t)
    roots = set(rs.all_roots())
    for i in range(1, t.rank + 1):
        for r in rs.positive_roots:
            s = reflect(rs, r, i)
            assert s in roots
            assert reflect(rs, s, i) == r


@pytest.mark.parametrize("t", [SimpleType.parse(c) for c in ("B3", "C3", "F4", "G2", "D4")], ids=str)
def test_root_strings_are_unbroken(t):
    rs = build_root_system(t)
    for a in rs.positive_roots:
        for b in rs.all_roots():
            if b in (a, tuple(-x for x in a)):
                continue
            ks = root_string(rs, b, a)
            # b + k a is a root exactly for k in [-p, q], with p - q = <b, a^vee>
            assert ks == list(range(min(ks), max(ks) + 1))
            assert -min(ks) - max(ks) == rs.coroot_pairing(b, a)


def test_long_roots_have_length_two():
    for t in TYPES:
        rs = build_root_system(t)
        assert max(rs.norm2(r) for r in rs.positive_roots) == 2


def test_g2_reflection():
    rs = build_root_system("G2")
    assert reflect(rs, rs.simple(2), 1) == (3, 1)
    assert rs.norm2(rs.simple(1)) * 3 == rs.norm2(rs.simple(2))


def test_a2_roots():
    rs = build_root_system("A2")
    assert list(rs.positive_roots) == [(1, 0), (0, 1), (1, 1)]
    assert format_root((1, 2)) == "g1+2g2"


def test_epsilon_coordinates_of_c3():
    t = SimpleType.parse("C3")
    assert epsilon_coords(t, (0, 0, 1)) == (0, 0, 2)
    assert epsilon_coords(t, (2, 2, 1)) == (2, 0, 0)


@pytest.mark.parametrize("code", ["A0", "B1", "C2", "D3", "E5", "E9", "F3", "G3", "X2"])
def test_invalid_ranks(code):
    with pytest.raises((InvalidRank, ValueError)):
        build_root_system(code)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_inner_product_is_reflection_invariant(t, data):
    rs = build_root_system(t)
    a = data.draw(st.sampled_from(rs.positive_roots))
    b = data.draw(st.sampled_from(rs.positive_roots))
    i = data.draw(st.integers(1, t.rank))
    assert rs.inner(reflect(rs, a, i), reflect(rs, b, i)) == rs.inner(a, b)
