import json
import math
import os
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from frobenii import witt
from frobenii.finite_field import make_field
from frobenii.galois_ring import make_galois_ring
from frobenii.witt import (
    QQ,
    ZZ,
    BigWitt,
    IntegralLift,
    RationalWitt,
    WittError,
    cache_path,
    coefficients_to_roots,
    deserialize_polys,
    frobenius_op,
    ghost_map,
    rational_to_big,
    roots_to_coefficients,
    teichmuller_witt,
    universal_polynomials,
    verschiebung_op,
    witt_add,
    witt_mul,
    witt_neg,
    witt_one,
    witt_scale,
    witt_zero,
)


def W(text, N, ring=ZZ):
    return BigWitt.parse(ring, text, N)


# --- independent oracle: Teichmuller-factor decomposition -----------------
# Every series with constant term 1 is uniquely prod_n (1 - x_n t^n).
# With g = gcd, (1 - x t^n)(*)(1 - y t^m) = (1 - x^(m/g) y^(n/g) t^lcm)^g
# and F_k(1 - x t^m) = (1 - x^(k/g) t^(m/g))^g, g = gcd(k, m).


def _mul_series(a, b, N, ring):
    out = [ring.zero] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        for j, y in enumerate(b[:N + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _factor_series(n, x, N, ring):
    s = [ring.one] + [ring.zero] * N
    if n <= N:
        s[n] = -x
    return s


def _power(series, g, N, ring):
    out = [ring.one] + [ring.zero] * N
    for _ in range(g):
        out = _mul_series(out, series, N, ring)
    return out


def decompose(a: BigWitt):
    ring, N = a.ring, a.N
    cur = list(a.series)
    xs = []
    for n in range(1, N + 1):
        x = -cur[n]
        xs.append(x)
        # divide by (1 - x t^n): multiply by 1 + x t^n + x^2 t^2n + ...
        inv = [ring.one] + [ring.zero] * N
        k, pw = n, x
        while k <= N:
            inv[k] = pw
            k, pw = k + n, pw * x
        cur = _mul_series(cur, inv, N, ring)
    return xs


def oracle_mul(a, b):
    ring, N = a.ring, a.N
    xs, ys = decompose(a), decompose(b)
    out = [ring.one] + [ring.zero] * N
    for n, x in enumerate(xs, start=1):
        for m, y in enumerate(ys, start=1):
            g = math.gcd(n, m)
            ell = n * m // g
            if ell > N:
                continue
            term = _factor_series(ell, x ** (m // g) * y ** (n // g), N, ring)
            out = _mul_series(out, _power(term, g, N, ring), N, ring)
    return BigWitt(ring, out[1:])


def oracle_frobenius(k, a):
    ring, N = a.ring, a.N
    M = N // k
    out = [ring.one] + [ring.zero] * M
    for m, x in enumerate(decompose(a), start=1):
        g = math.gcd(k, m)
        if m // g > M:
            continue
        out = _mul_series(out, _power(_factor_series(m // g, x ** (k // g), M, ring), g, M, ring), M, ring)
    return BigWitt(ring, out[1:])


# --- worked examples ---------------------------------------------------------


def test_addition_examples():
    assert str(witt_add(W("1+t", 2), W("1+t", 2))) == "1+2*t+t^2"
    assert str(witt_add(W("1-t", 2), W("1+t", 2))) == "1-t^2"
    a = W("1+3t-t^2", 3)
    assert witt_add(a, witt_zero(ZZ, 3)) == a


def test_negation_and_product_examples():
    assert str(witt_neg(W("1+t", 3))) == "1-t+t^2-t^3"
    assert str(witt_mul(W("1-2t", 3), W("1-3t", 3))) == "1-6*t"
    assert witt_mul(witt_zero(ZZ, 3), W("1+5t+t^3", 3)) == witt_zero(ZZ, 3)


def test_ghost_examples():
    assert ghost_map(teichmuller_witt(5, 4)).values == (5, 25, 125, 625)
    assert ghost_map(witt_zero(ZZ, 3)).values == (0, 0, 0)
    assert ghost_map(witt_add(W("1-t", 3), W("1-2t", 3))).values == (3, 5, 9)


def test_frobenius_verschiebung_examples():
    assert str(verschiebung_op(2, W("1-t", 4))) == "1-t^2"
    assert str(frobenius_op(2, W("1-3t", 4))) == "1-9*t"
    assert str(frobenius_op(2, verschiebung_op(2, W("1-t", 4)))) == "1-2*t+t^2"


def test_rational_examples():
    assert str(rational_to_big(RationalWitt(ZZ, [1], [1, 1]), 3)) == "1-t+t^2-t^3"
    assert str(rational_to_big(RationalWitt(ZZ, [1, 1]), 5)) == "1+t"
    r = RationalWitt(ZZ, [1, 3, 2], [1, 2])
    assert str(rational_to_big(r, 2)) == "1+t"
    assert r == RationalWitt(ZZ, [1, 1])


def test_roots_to_coefficients_examples():
    K = make_field(3, 2)
    a, b = K.gen, K.gen + 1
    assert roots_to_coefficients([a]) == RationalWitt(K, [1, -a])
    assert roots_to_coefficients([a, b]) == RationalWitt(K, [1, -(a + b), a * b])
    assert list(roots_to_coefficients([2, 3]).num) == [1, -5, 6]


def test_coefficients_to_roots_recovers_multiset():
    K = make_field(2, 2)
    rng = random.Random(2)
    for _ in range(10):
        roots = [K.random_nonzero(rng) for _ in range(rng.randint(1, 4))]
        L, back = coefficients_to_roots(list(roots_to_coefficients(roots).num), K)
        assert L == K
        assert back == sorted(roots, key=lambda z: z.coeffs)


def test_coefficients_to_roots_extends_field():
    F2 = make_field(2, 1)
    L, roots = coefficients_to_roots([1, 1, 1], F2)  # 1 + t + t^2: roots are cube roots of unity
    assert L.order == 4 and len(roots) == 2


def test_rational_witt_rejects_non_domains():
    with pytest.raises(WittError):
        RationalWitt(make_galois_ring(2, 2, 1), [1, 1])


def test_ghost_rejects_torsion():
    with pytest.raises(WittError):
        ghost_map(BigWitt(make_field(2, 1), [1, 0]))


def test_parse_rejects_non_unit_constant():
    from frobenii.parsing import ParseError

    with pytest.raises(ParseError):
        W("2+t", 2)


# --- oracle agreement ----------------------------------------------------------


def test_oracle_agrees_with_ghost_route_over_z():
    rng = random.Random(17)
    for _ in range(40):
        N = rng.randint(1, 8)
        a = BigWitt(ZZ, [rng.randint(-4, 4) for _ in range(N)])
        b = BigWitt(ZZ, [rng.randint(-4, 4) for _ in range(N)])
        assert witt_mul(a, b) == oracle_mul(a, b)
        for k in (2, 3):
            assert frobenius_op(k, a) == oracle_frobenius(k, a)


TORSION_RINGS = [make_field(2, 1), make_field(2, 2), make_field(3, 2), make_galois_ring(2, 2, 1), make_galois_ring(2, 2, 2)]


@pytest.mark.parametrize("ring", TORSION_RINGS, ids=lambda r: r.spec)
def test_torsion_product_matches_oracle(ring):
    rng = random.Random(23)
    els = list(ring.elements())
    for _ in range(15):
        N = rng.randint(1, 6)
        a = BigWitt(ring, [rng.choice(els) for _ in range(N)])
        b = BigWitt(ring, [rng.choice(els) for _ in range(N)])
        assert witt_mul(a, b) == oracle_mul(a, b)
        assert frobenius_op(2, a) == oracle_frobenius(2, a)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_torsion_product_is_reduction_of_integral_lift(p, n):
    K = make_field(p, n)
    R = IntegralLift(K)
    rng = random.Random(p * 10 + n)
    for _ in range(10):
        N = rng.randint(1, 5)
        a = [K.random(rng) for _ in range(N)]
        b = [K.random(rng) for _ in range(N)]
        lifted = witt_mul(BigWitt(R, [R.lift(x) for x in a]), BigWitt(R, [R.lift(x) for x in b]))
        assert [R.reduce(c) for c in lifted.coeffs] == list(witt_mul(BigWitt(K, a), BigWitt(K, b)).coeffs)


def test_universal_polynomials_are_integral():
    for N in range(1, 7):
        for op in ("mul", "frobenius_2", "frobenius_3"):
            for P in universal_polynomials(op, N):
                assert all(isinstance(c, int) for c in P.values())


# --- cache -------------------------------------------------------------------


def test_cache_file_round_trip_and_determinism(tmp_path, monkeypatch):
    monkeypatch.setattr(witt, "_memory", {})
    polys = universal_polynomials("mul", 4, cache_dir=tmp_path)
    path = cache_path("mul", 4, tmp_path)
    first = path.read_bytes()
    assert deserialize_polys(first.decode(), "mul", 4) == polys
    assert [p.name for p in tmp_path.iterdir()] == [path.name]  # no temporary files left
    doc = json.loads(first)
    assert doc["op"] == "mul" and doc["N"] == 4 and doc["nvars"] == 8
    monkeypatch.setattr(witt, "_memory", {})
    os.remove(path)
    universal_polynomials("mul", 4, cache_dir=tmp_path)
    assert path.read_bytes() == first


def test_cache_is_used_and_corrupt_files_are_regenerated(tmp_path, monkeypatch):
    monkeypatch.setattr(witt, "_memory", {})
    path = cache_path("frobenius_2", 4, tmp_path)
    path.write_text("not json")
    polys = universal_polynomials("frobenius_2", 4, cache_dir=tmp_path)
    assert deserialize_polys(path.read_text(), "frobenius_2", 4) == polys
    with pytest.raises(WittError):
        deserialize_polys(path.read_text(), "mul", 4)


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("FRH_WITT_CACHE", str(tmp_path))
    assert cache_path("mul", 3) == tmp_path / "mul-N3.json"


# --- properties ----------------------------------------------------------------

small = st.integers(-6, 6)


@st.composite
def z_triples(draw):
    N = draw(st.integers(1, 8))
    vec = st.lists(small, min_size=N, max_size=N)
    return tuple(BigWitt(ZZ, draw(vec)) for _ in range(3))


@given(z_triples())
def test_ring_axioms_over_z(t):
    a, b, c = t
    one = witt_one(ZZ, a.N)
    assert witt_mul(witt_mul(a, b), c) == witt_mul(a, witt_mul(b, c))
    assert witt_mul(a, b) == witt_mul(b, a)
    assert witt_mul(a, witt_add(b, c)) == witt_add(witt_mul(a, b), witt_mul(a, c))
    assert witt_mul(one, a) == a
    assert witt_add(a, witt_neg(a)) == witt_zero(ZZ, a.N)


@given(z_triples())
def test_ghost_map_is_ring_homomorphism(t):
    a, b, _ = t
    ga, gb = ghost_map(a).values, ghost_map(b).values
    assert ghost_map(witt_add(a, b)).values == tuple(x + y for x, y in zip(ga, gb))
    assert ghost_map(witt_mul(a, b)).values == tuple(x * y for x, y in zip(ga, gb))


@given(z_triples(), st.integers(1, 4))
def test_frobenius_after_verschiebung_is_multiplication(t, n):
    a = t[0]
    lhs = frobenius_op(n, verschiebung_op(n, a))
    rhs = witt_scale(n, a)
    assert lhs.coeffs == rhs.coeffs[:lhs.N]


@given(z_triples(), st.integers(2, 3))
def test_frobenius_is_ring_map(t, n):
    a, b, _ = t
    assert frobenius_op(n, witt_mul(a, b)) == witt_mul(frobenius_op(n, a), frobenius_op(n, b))
    assert frobenius_op(n, witt_add(a, b)) == witt_add(frobenius_op(n, a), frobenius_op(n, b))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_teichmuller_is_multiplicative(xs, ys):
    N = 5
    x, y = xs[0], ys[0]
    assert witt_mul(teichmuller_witt(x, N), teichmuller_witt(y, N)) == teichmuller_witt(x * y, N)


@given(st.integers(0, 10 ** 6))
def test_rational_to_big_is_group_homomorphism_over_fq(seed):
    rng = random.Random(seed)
    K = make_field(3, 2)

    def rand_poly():
        return [K.one] + [K.random(rng) for _ in range(rng.randint(0, 3))]

    r = RationalWitt(K, rand_poly(), rand_poly())
    s = RationalWitt(K, rand_poly(), rand_poly())
    N = 6
    assert rational_to_big(r * s, N) == witt_add(rational_to_big(r, N), rational_to_big(s, N))
    c = rand_poly()
    cancelled = RationalWitt(K, witt._series_mul(r.num, c, len(r.num) + len(c), K),
                             witt._series_mul(r.den, c, len(r.den) + len(c), K))
    assert rational_to_big(cancelled, N) == rational_to_big(r, N)


def test_rationals_ring():
    a = BigWitt(QQ, [Fraction(1, 2), 0])
    assert ghost_map(a).values == (Fraction(-1, 2), Fraction(1, 4))
    assert witt_mul(a, witt_one(QQ, 2)) == a
