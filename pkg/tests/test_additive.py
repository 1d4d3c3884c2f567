import random

import pytest
from hypothesis import given, strategies as st

from frobenii.additive import RootSearchError, roots_of_additive, to_additive
from frobenii.finite_field import embed, extension, make_field
from frobenii.skew_poly import SkewPoly


def brute_roots(T, k):
    """Distinct roots of the additive realisation in F_{q^k}, by evaluation."""
    K = T.base
    L = extension(K, k)
    iota = embed(K, L)
    P = to_additive(T)
    lifted = [(e, iota(c)) for e, c in P.terms]
    out = []
    for x in L.elements():
        if sum((c * x ** (L.p ** e) for e, c in lifted), L.zero).is_zero():
            out.append(x)
    return L, out


def test_artin_schreier():
    F2 = make_field(2, 1)
    rs = roots_of_additive(SkewPoly.parse(F2, "F-1"))
    assert rs.splitting_degree == 1
    assert [str(r) for r in rs.roots] == ["0", "1"]


def test_degree_two_over_f2():
    F2 = make_field(2, 1)
    rs = roots_of_additive(SkewPoly.parse(F2, "F^2+F+1"))
    assert rs.splitting_degree == 3 and rs.count == 4
    L = rs.field
    beta = L.gen
    assert beta ** 3 == beta + 1
    assert set(rs.roots) == {L.zero, beta, beta ** 2, beta + beta ** 2}


def test_constant_polynomial():
    rs = roots_of_additive(SkewPoly.parse(make_field(3, 1), "1"))
    assert rs.splitting_degree == 1 and rs.roots == [make_field(3, 1).zero]


def test_inseparable_polynomial_has_multiplicity():
    K = make_field(2, 2)
    rs = roots_of_additive(SkewPoly.parse(K, "F^2+F"))
    assert rs.multiplicity == 2
    assert rs.count * rs.multiplicity == 4


def test_bound_exhaustion_reports_partial_count():
    F2 = make_field(2, 1)
    with pytest.raises(RootSearchError) as info:
        roots_of_additive(SkewPoly.parse(F2, "F^2+F+1"), max_degree=2)
    assert info.value.splitting_degree == 3
    assert info.value.partial_count == 1


CASES = [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)]


@st.composite
def monic_separable(draw):
    p, n = draw(st.sampled_from(CASES))
    K = make_field(p, n)
    els = list(K.elements())
    deg = draw(st.integers(1, 3 if K.order <= 4 else 2))
    coeffs = [draw(st.sampled_from(els[1:]))] + [draw(st.sampled_from(els)) for _ in range(deg - 1)] + [K.one]
    return SkewPoly(K, coeffs)


@given(monic_separable())
def test_roots_match_brute_force(T):
    rs = roots_of_additive(T)
    K = T.base
    if K.order ** rs.splitting_degree > 4096:
        return
    L, brute = brute_roots(T, rs.splitting_degree)
    assert sorted(brute, key=lambda z: z.coeffs) == rs.roots
    assert len(brute) == K.p ** T.degree
    # no proper divisor of the splitting degree already has all roots
    for d in range(1, rs.splitting_degree):
        if rs.splitting_degree % d == 0:
            assert len(brute_roots(T, d)[1]) < K.p ** T.degree


@given(monic_separable())
def test_roots_form_a_subspace(T):
    rs = roots_of_additive(T)
    if rs.roots is None:
        return
    s = set(rs.roots)
    for a in rs.roots[:8]:
        for b in rs.roots[:8]:
            assert a + b in s


def test_random_large_field_polynomials_split():
    rng = random.Random(7)
    K = make_field(3, 2)
    for _ in range(10):
        T = SkewPoly(K, [K.random_nonzero(rng)] + [K.random(rng) for _ in range(3)] + [K.one])
        rs = roots_of_additive(T)
        assert rs.count == 3 ** 4
        L = rs.field
        P = to_additive(T)
        iota = embed(K, L)
        for b in rs.basis:
            assert sum((iota(c) * b ** (L.p ** e) for e, c in P.terms), L.zero).is_zero()
