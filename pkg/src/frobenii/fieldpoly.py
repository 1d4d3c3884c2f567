"""Dense univariate polynomials over a finite field and their roots.

Coefficient lists run from the constant term upward.
"""

from __future__ import annotations

import random

from .finite_field import FiniteField, embed, extension


def _trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def pmul(a, b, K):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def pdivmod(a, b, K):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = b[-1].inverse()
    r = list(a)
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    for i in range(len(r) - len(b), -1, -1):
        c = r[i + len(b) - 1] * inv
        if c.is_zero():
            continue
        q[i] = c
        for j, y in enumerate(b):
            r[i + j] = r[i + j] - c * y
    return _trim(q), _trim(r[:len(b) - 1])


def pgcd(a, b, K):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, pdivmod(a, b, K)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def ppowmod(base, e, mod, K):
    result = [K.one]
    base = pdivmod(base, mod, K)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, base, K), mod, K)[1]
        e >>= 1
        if e:
            base = pdivmod(pmul(base, base, K), mod, K)[1]
    return result


def _split(f, K, rng):
    """Distinct roots of a monic product of distinct linear factors."""
    if len(f) == 1:
        return []
    if len(f) == 2:
        return [-f[0]]
    q = K.order
    while True:
        delta = K.random(rng)
        if K.p == 2:
            # absolute trace of delta*x, summed over Frobenius powers
            term = pdivmod([K.zero, delta], f, K)[1]
            acc = list(term)
            for _ in range(K.n - 1):
                term = pdivmod(pmul(term, term, K), f, K)[1]
                acc = _add(acc, term, K)
            g = pgcd(f, acc, K)
        else:
            h = ppowmod([delta, K.one], (q - 1) // 2, f, K)
            g = pgcd(f, _add(h, [-K.one], K), K)
        if 1 < len(g) < len(f):
            return _split(g, K, rng) + _split(pdivmod(f, g, K)[0], K, rng)


def _add(a, b, K):
    n = max(len(a), len(b))
    a = list(a) + [K.zero] * (n - len(a))
    b = list(b) + [K.zero] * (n - len(b))
    return _trim([x + y for x, y in zip(a, b)])


def roots_in(f, L: FiniteField, rng: random.Random | None = None):
    """Roots of ``f`` in ``L`` with multiplicity, sorted by coefficient tuple."""
    rng = rng or random.Random(0)
    f = _trim(f)
    if not f:
        raise ValueError("the zero polynomial has every element as a root")
    inv = f[-1].inverse()
    f = [c * inv for c in f]
    xq = ppowmod([L.zero, L.one], L.order, f, L)
    g = pgcd(f, _add(xq, [L.zero, -L.one], L), L)
    distinct = _split(g, L, rng)
    out = []
    for r in distinct:
        lin = [-r, L.one]
        cur = f
        while True:
            q, rem = pdivmod(cur, lin, L)
            if rem:
                break
            out.append(r)
            cur = q
    return sorted(out, key=lambda z: z.coeffs)


def splitting_roots(f, K: FiniteField, rng: random.Random | None = None, max_degree: int = 64):
    """``(L, roots)`` with L the least extension of K containing every root of ``f``."""
    f = _trim(f)
    deg = len(f) - 1
    for k in range(1, max_degree + 1):
        L = extension(K, k)
        iota = embed(K, L)
        rs = roots_in([iota(c) for c in f], L, rng)
        if len(rs) == deg:
            return L, rs
    raise ValueError(f"no splitting field up to degree {max_degree}")
