from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nilsymp import fixtures
from nilsymp.cohom import (BadT, ExtForm, Filtration, NotAFiltration, NotApplicable, betti_numbers,
                           block_support, closed_2forms, d_direct, d_form, differential,
                           exact_2forms, extend_filtration, is_accurate, is_closed_2form,
                           lcs_filtration, mj_decomposition, project_pt, pt_image)
from nilsymp.linalg import Subspace
from nilsymp.nilrad import ParabolicSpec, build_nilradical, extend_trivially, lower_central_series


def nil(code, *pi0):
    return build_nilradical(ParabolicSpec.of(code, pi0))


BETTI = {
    "h3": (fixtures.heisenberg, [1, 2, 2, 1]),
    "G2:1": (lambda: nil("G2", 1), [1, 2, 3, 3, 2, 1]),
    "B3:3": (lambda: nil("B3", 3), [1, 3, 8, 12, 8, 3, 1]),
    "C3:2": (lambda: nil("C3", 2), [1, 4, 11, 14, 14, 11, 4, 1]),
    "C3:2,3": (lambda: nil("C3", 2, 3), [1, 3, 7, 13, 16, 13, 7, 3, 1]),
}


@pytest.mark.parametrize("name", list(BETTI))
def test_betti_numbers(name):
    build, want = BETTI[name]
    assert betti_numbers(build()) == want


@pytest.mark.parametrize("code,pi0,b2", [("A4", (2, 3), 14), ("D4", (3, 4), 12)])
def test_second_betti(code, pi0, b2):
    n = nil(code, *pi0)
    assert closed_2forms(n).dim - exact_2forms(n).dim == b2


def test_b1_is_codim_of_derived_algebra():
    for code, pi0 in [("A3", (1, 3)), ("B3", (3,)), ("C3", (2, 3)), ("G2", (2,))]:
        n = nil(code, *pi0)
        b = betti_numbers(n)
        assert b[0] == 1
        assert b[1] == n.dim - lower_central_series(n)[1].dim


def test_abelian_betti_are_binomials():
    n = nil("A4", 2)
    from math import comb
    assert betti_numbers(n) == [comb(6, p) for p in range(7)]


def test_heisenberg_differential():
    n = fixtures.heisenberg()
    # dZ* = -X* ^ Y*
    assert d_form(n, ExtForm.monomial(2)) == ExtForm.monomial(0, 1, coeff=-1)
    # d e^c (x, y) = -e^c([x, y])
    dz = d_direct(n, ExtForm.monomial(2))
    assert dz.evaluate({0: 1}, {1: 1}) == -1


def _random_form(draw, dim, p):
    from itertools import combinations
    monos = list(combinations(range(dim), p))
    picked = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=4, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(picked), max_size=len(picked)))
    return ExtForm(p, dict(zip(picked, coeffs)))


ALGS = {"G2:1": lambda: nil("G2", 1), "C3:2,3": lambda: nil("C3", 2, 3), "A4:2,3": lambda: nil("A4", 2, 3)}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALGS)), st.integers(1, 3), st.data())
def test_d_squared_and_direct_formula(name, p, data):
    n = ALGS[name]()
    f = _random_form(data.draw, n.dim, p)
    df = d_form(n, f)
    assert not d_form(n, df)
    assert df == d_direct(n, f)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALGS)), st.data())
def test_leibniz_rule(name, data):
    n = ALGS[name]()
    a = _random_form(data.draw, n.dim, 1)
    b = _random_form(data.draw, n.dim, 2)
    assert d_form(n, a.wedge(b)) == d_form(n, a).wedge(b) - a.wedge(d_form(n, b))


def test_closed_check_agrees_with_kernel():
    n = nil("C3", 2)
    for v in closed_2forms(n).basis():
        assert is_closed_2form(n, ExtForm.from_vec(2, v))
    assert not is_closed_2form(n, ExtForm.monomial(1, 4))


def test_wedge_power_of_standard_form():
    w = ExtForm(2, {(0, 1): 1, (2, 3): 1})
    assert w.power(2) == ExtForm(4, {(0, 1, 2, 3): 2})


# -- accurate filtrations and P_t --------------------------------------------------

ACCURATE_LCS = ["G2:1", "C3:2,3", "A4:2,3"]


@pytest.mark.parametrize("name", ACCURATE_LCS + ["h3"])
def test_lower_central_series_is_accurate(name):
    n = fixtures.heisenberg() if name == "h3" else ALGS[name]()
    assert is_accurate(n, lcs_filtration(n))


def test_abelian_accurate_filtrations():
    n = nil("A3", 2)     # abelian, dim 4
    d = n.dim
    for i in range(d):
        assert is_accurate(n, Filtration([Subspace.full(d), Subspace.coordinate(d, [i]), Subspace.zero(d)]))
    two = Filtration([Subspace.full(d), Subspace.coordinate(d, [0, 1]), Subspace.zero(d)])
    assert not is_accurate(n, two)
    three = Filtration([Subspace.full(d), Subspace.coordinate(d, [0, 1]), Subspace.coordinate(d, [0]),
                        Subspace.zero(d)])
    assert not is_accurate(n, three)


def test_heisenberg_plus_line_filtration():
    n = fixtures.heisenberg_plus_line()   # X, Y, Z, T
    f = Filtration([Subspace.full(4), Subspace.coordinate(4, [2, 3]), Subspace.coordinate(4, [3]),
                    Subspace.zero(4)])
    assert is_accurate(n, f)


def test_not_a_filtration():
    n = fixtures.heisenberg()
    with pytest.raises(NotAFiltration):
        is_accurate(n, Filtration([Subspace.full(3), Subspace.coordinate(3, [0]), Subspace.zero(3)]))


def test_block_containments():
    """Closed forms live in blocks m_i ^ m_j with i + j <= k + 1, exact ones in i + j <= k."""
    for name in ACCURATE_LCS:
        n = ALGS[name]()
        mj = mj_decomposition(n, lcs_filtration(n))
        k = mj.k
        for v in exact_2forms(n).basis():
            assert all(i + j <= k for i, j in block_support(ExtForm.from_vec(2, v), mj))
        for v in closed_2forms(n).basis():
            assert all(i + j <= k + 1 for i, j in block_support(ExtForm.from_vec(2, v), mj))


@pytest.mark.parametrize("name", ACCURATE_LCS)
def test_pt_kills_exact_forms_and_is_a_projection(name):
    n = ALGS[name]()
    mj = mj_decomposition(n, lcs_filtration(n))
    for t in range(1, (mj.k + 1) // 2 + 1):
        for v in exact_2forms(n).basis():
            assert not project_pt(ExtForm.from_vec(2, v), t, mj)
        for v in closed_2forms(n).basis():
            w = project_pt(ExtForm.from_vec(2, v), t, mj)
            assert project_pt(w, t, mj) == w


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_pt_is_linear(data):
    n = nil("C3", 2, 3)
    mj = mj_decomposition(n, lcs_filtration(n))
    a = _random_form(data.draw, n.dim, 2)
    b = _random_form(data.draw, n.dim, 2)
    c = data.draw(st.integers(-4, 4))
    t = data.draw(st.sampled_from([1, 2]))
    assert project_pt(a + c * b, t, mj) == project_pt(a, t, mj) + c * project_pt(b, t, mj)


def test_pt_image_dimensions():
    assert pt_image(fixtures.heisenberg(), 1).dim == 2
    assert pt_image(nil("C3", 2), 1).dim == 8
    assert pt_image(nil("C3", 2, 3), 1).dim == 4
    assert pt_image(nil("D4", 3, 4), 1).dim == 0
    assert pt_image(nil("G2", 1), 1).dim == 3


def test_bad_t():
    n = nil("C3", 2, 3)
    mj = mj_decomposition(n, lcs_filtration(n))
    for t in (0, 3):
        with pytest.raises(BadT):
            project_pt(ExtForm.monomial(0, 1), t, mj)


@pytest.mark.parametrize("name,ts", [("h3", [1]), ("G2:1", [1, 2])])
def test_extended_filtration_is_accurate(name, ts):
    n = fixtures.heisenberg() if name == "h3" else ALGS[name]()
    for t in ts:
        nt, f = extend_filtration(n, lcs_filtration(n), t)
        assert nt.dim == n.dim + 1 and f.k == lcs_filtration(n).k
        assert is_accurate(nt, f)


def test_extension_needs_nonabelian():
    n = nil("A3", 2)
    with pytest.raises(NotApplicable):
        extend_filtration(n, lcs_filtration(n), 1)


def test_trivial_extension_adds_b1_to_b2():
    for n in (fixtures.heisenberg(), nil("G2", 1), nil("C3", 2)):
        b = betti_numbers(n)
        assert betti_numbers(extend_trivially(n))[2] == b[2] + b[1]
