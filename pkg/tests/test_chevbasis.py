import pytest

from nilsymp.chevbasis import build_structure_table, jacobi_residual, resigned, validate
from nilsymp.rootsys import all_types, build_root_system


@pytest.mark.parametrize("t", all_types(8), ids=str)
def test_structure_constants_validate(t):
    st = build_structure_table(build_root_system(t))
    validate(st)
    assert not jacobi_residual(st)


@pytest.mark.parametrize("code", ["B3", "C4", "D5", "F4", "G2"])
def test_constants_are_string_lengths(code):
    rs = build_root_system(code)
    st = build_structure_table(rs)
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                p = 0
                while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
                    p += 1
                assert abs(st.N(rs.index(a), rs.index(b))) == p + 1


def test_g2_constants_reach_three():
    rs = build_root_system("G2")
    st = build_structure_table(rs)
    vals = {abs(st.N(i, j)) for i in range(6) for j in range(6)}
    assert vals == {0, 1, 2, 3}


@pytest.mark.parametrize("code", ["C3", "D4", "E6", "G2"])
def test_resigning_stays_consistent(code):
    rs = build_root_system(code)
    st = build_structure_table(rs)
    alt = resigned(st, 7)
    validate(alt)
    assert not jacobi_residual(alt)
    same_abs = all(abs(alt.N(i, j)) == abs(st.N(i, j)) for (i, j) in st.n_const)
    assert same_abs
    assert any(alt.N(i, j) != st.N(i, j) for (i, j) in st.n_const)
