import itertools

import pytest
from hypothesis import given, strategies as st

from frobenii.finite_field import (
    FieldError,
    canonical_modulus,
    embed,
    extension,
    frobenius_power,
    make_field,
    trace,
)

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4), (7, 2)]


def _irreducible_bruteforce(f, p):
    # no monic factor of degree 1..deg/2, checked by trial multiplication
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            for cotail in itertools.product(range(p), repeat=n - d):
                h = list(cotail) + [1]
                prod = [0] * (n + 1)
                for i, a in enumerate(g):
                    for j, b in enumerate(h):
                        prod[i + j] = (prod[i + j] + a * b) % p
                if prod == list(f):
                    return False
    return True


def test_prime_field():
    K = make_field(2, 1)
    assert K.n == 1 and K.order == 2
    assert len(K.modulus) == 2


def test_modulus_degree_three():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # x^3 + x + 1


def test_modulus_f9():
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_canonical_modulus_is_least_irreducible(p, n):
    f = canonical_modulus(p, n)
    assert _irreducible_bruteforce(f, p)
    # every monic candidate before it in the same enumeration order is reducible
    candidates = [tuple(reversed(c)) for c in itertools.product(range(p), repeat=n)]
    for cand in sorted(candidates, key=lambda t: tuple(reversed(t))):
        g = cand + (1,)
        if g == f:
            break
        assert not _irreducible_bruteforce(g, p)


def test_rejects_composite_characteristic():
    with pytest.raises(FieldError):
        make_field(4, 1)


def test_frobenius_examples():
    F4 = make_field(2, 2)
    u = F4.gen
    assert frobenius_power(u, 1) == u + 1
    assert frobenius_power(u, 0) == u
    assert frobenius_power(u, -1) == u + 1


def test_trace_examples():
    F4, F2 = make_field(2, 2), make_field(2, 1)
    assert trace(F4.gen, F2) == F2.one
    assert trace(F4.one, F2) == F2.zero
    x = F4.gen + 1
    assert trace(x, F4) == x


def test_embedding_requires_divisibility():
    with pytest.raises(FieldError):
        embed(make_field(2, 2), make_field(2, 3))


@pytest.mark.parametrize("p,a,b,c", [(2, 1, 2, 4), (2, 2, 4, 8), (3, 1, 2, 4), (2, 3, 6, 12), (2, 2, 6, 12)])
def test_embeddings_compose(p, a, b, c):
    A, B, C = make_field(p, a), make_field(p, b), make_field(p, c)
    ab, bc, ac = embed(A, B), embed(B, C), embed(A, C)
    for x in list(A.elements())[:64]:
        assert bc(ab(x)) == ac(x)


@pytest.mark.parametrize("p,n", SMALL)
def test_field_axioms_exhaustive(p, n):
    K = make_field(p, n)
    els = list(K.elements())
    assert len(els) == p ** n
    for x in els:
        if not x.is_zero():
            assert x * x.inverse() == K.one
        assert x ** K.order == x


@pytest.mark.parametrize("p,n,k", [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 1, 6)])
def test_embedding_is_ring_map(p, n, k):
    K = make_field(p, n)
    L = extension(K, k)
    iota = embed(K, L)
    for x in K.elements():
        assert iota.preimage(iota(x)) == x
        for y in list(K.elements())[:8]:
            assert iota(x * y) == iota(x) * iota(y)
            assert iota(x + y) == iota(x) + iota(y)


@st.composite
def field_and_pair(draw):
    p, n = draw(st.sampled_from(SMALL))
    K = make_field(p, n)
    vec = st.lists(st.integers(0, p - 1), min_size=n, max_size=n)
    return K, K.from_vec(draw(vec)), K.from_vec(draw(vec))


@given(field_and_pair(), st.integers(-5, 5))
def test_frobenius_is_additive_and_multiplicative(data, k):
    K, x, y = data
    assert frobenius_power(x + y, k) == frobenius_power(x, k) + frobenius_power(y, k)
    assert frobenius_power(x * y, k) == frobenius_power(x, k) * frobenius_power(y, k)
    assert frobenius_power(frobenius_power(x, k), -k) == x


@given(field_and_pair())
def test_frobenius_matrix_matches_power(data):
    K, x, _ = data
    v = (K.frobenius_matrix(1) @ K.vec(x)) % K.p
    assert K.from_vec(v) == x ** K.p


@given(field_and_pair())
def test_parse_round_trip(data):
    K, x, _ = data
    assert K.parse(str(x)) == x
