"""Galois rings GR(p^m, n) = W_m(F_{p^n}).

The ring is ``(Z/p^m)[u]/(g)`` where ``g`` is the Teichmüller lift of the
canonical field modulus: the unique monic lift whose roots are
(p^n - 1)-st roots of unity.  With that choice the generator ``u`` is a
Teichmüller element and the Witt vector Frobenius is ``u -> u^p``.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .finite_field import FieldElement, FieldError, FiniteField, is_prime, make_field
from .parsing import parse_int_poly


def _polymulmod(a, b, g, mod):
    n = len(g) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i] % mod
        if c:
            for j in range(n + 1):
                prod[i - n + j] -= c * g[j]
    out = [c % mod for c in prod[:n]]
    return out + [0] * (n - len(out))


def _teichmuller_modulus(f, p, m):
    n = len(f) - 1
    if m == 1:
        return tuple(f)
    mod = p ** m
    q = p ** n

    def mul(a, b):
        return _polymulmod(a, b, f, mod)

    def power(a, e):
        res = [1] + [0] * (n - 1)
        while e:
            if e & 1:
                res = mul(res, a)
            e >>= 1
            if e:
                a = mul(a, a)
        return res

    x = [0, 1] + [0] * (n - 2) if n > 1 else [(-f[0]) % mod]
    t = x
    for _ in range(m):
        t = power(t, q)
    # g(X) = prod_i (X - t^(p^i)); coefficients are elements of (Z/p^m)[x]/(f)
    conj = [t]
    for _ in range(1, n):
        conj.append(power(conj[-1], p))
    poly = [[1] + [0] * (n - 1)]  # polynomial in X with ring coefficients
    for r in conj:
        neg = [(-c) % mod for c in r]
        new = [[0] * n for _ in range(len(poly) + 1)]
        for k, c in enumerate(poly):
            new[k + 1] = [(a + b) % mod for a, b in zip(new[k + 1], c)]
            prod = mul(c, neg)
            new[k] = [(a + b) % mod for a, b in zip(new[k], prod)]
        poly = new
    out = []
    for c in poly:
        if any(c[1:]):
            raise AssertionError("Teichmüller lift produced a non-constant coefficient")
        out.append(c[0])
    return tuple(out)


class GaloisRing:
    """Descriptor of GR(p^m, n); build through :func:`make_galois_ring`."""

    def __init__(self, p: int, m: int, n: int):
        self.p, self.m, self.n = p, m, n
        self.residue_field: FiniteField = make_field(p, n)
        self.modulus_int = p ** m
        self.lifted_modulus = _teichmuller_modulus(self.residue_field.modulus, p, m)
        self.order = self.modulus_int ** n

    @property
    def is_field(self):
        return self.m == 1

    @property
    def spec(self):
        return f"{self.p}:{self.m}:{self.n}"

    def __repr__(self):
        return f"GR({self.p}^{self.m}, {self.n})"

    def __str__(self):
        return self.spec

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and (self.p, self.m, self.n) == (other.p, other.m, other.n)

    def __hash__(self):
        return hash(("GR", self.p, self.m, self.n))

    def __reduce__(self):
        return (make_galois_ring, (self.p, self.m, self.n))

    def __call__(self, value) -> "GaloisRingElement":
        if isinstance(value, GaloisRingElement):
            if value.ring != self:
                raise FieldError(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, FieldElement):
            if value.field != self.residue_field:
                raise FieldError(f"{value!r} is not in the residue field of {self!r}")
            return GaloisRingElement(self, value.coeffs)
        if isinstance(value, (int, np.integer)):
            return GaloisRingElement(self, (int(value) % self.modulus_int,) + (0,) * (self.n - 1))
        if isinstance(value, str):
            terms = parse_int_poly(value, "u")
            poly = [0] * (max(terms, default=0) + 1)
            for e, c in terms.items():
                poly[e] += c
            return self._from_poly(poly)
        return self._from_poly(list(value))

    def _from_poly(self, poly):
        mod = self.modulus_int
        poly = [int(c) % mod for c in poly]
        if len(poly) <= self.n:
            return GaloisRingElement(self, tuple(poly) + (0,) * (self.n - len(poly)))
        g = self.lifted_modulus
        n = self.n
        for i in range(len(poly) - 1, n - 1, -1):
            c = poly[i]
            if c:
                for j in range(n + 1):
                    poly[i - n + j] = (poly[i - n + j] - c * g[j]) % mod
        return GaloisRingElement(self, tuple(poly[:n]))

    @cached_property
    def zero(self):
        return GaloisRingElement(self, (0,) * self.n)

    @cached_property
    def one(self):
        return self(1)

    @cached_property
    def gen(self):
        if self.n == 1:
            return self(-self.lifted_modulus[0])
        return GaloisRingElement(self, (0, 1) + (0,) * (self.n - 2))

    def elements(self):
        for c in itertools.product(range(self.modulus_int), repeat=self.n):
            yield GaloisRingElement(self, c)

    def random(self, rng):
        return GaloisRingElement(self, tuple(rng.randrange(self.modulus_int) for _ in range(self.n)))

    def random_nonzero(self, rng):
        while True:
            x = self.random(rng)
            if not x.is_zero():
                return x

    def truncate(self, j: int) -> "GaloisRing":
        return make_galois_ring(self.p, j, self.n)

    @cached_property
    def _frob_gen(self):
        """Images of ``u`` under φ^k for k = 0..n-1."""
        out = [self.gen]
        for _ in range(1, self.n):
            out.append(out[-1] ** self.p)
        return out


class GaloisRingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GaloisRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def parent(self):
        return self.ring

    def _coerce(self, other):
        if isinstance(other, GaloisRingElement):
            if other.ring != self.ring:
                raise FieldError(f"cannot combine elements of {self.ring!r} and {other.ring!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ring(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        mod = self.ring.modulus_int
        return GaloisRingElement(self.ring, tuple((a + b) % mod for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.modulus_int
        return GaloisRingElement(self.ring, tuple((-a) % mod for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        R = self.ring
        return GaloisRingElement(R, _polymulmod(self.coeffs, o.coeffs, R.lifted_modulus, R.modulus_int))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        res = self.ring.one
        base = self
        while e:
            if e & 1:
                res = res * base
            e >>= 1
            if e:
                base = base * base
        return res

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def residue(self) -> FieldElement:
        """Reduction mod p."""
        K = self.ring.residue_field
        return FieldElement(K, tuple(c % self.ring.p for c in self.coeffs))

    def reduce_to(self, j: int) -> "GaloisRingElement":
        """Image in GR(p^j, n) for ``j <= m``."""
        R = self.ring.truncate(j)
        return GaloisRingElement(R, tuple(c % R.modulus_int for c in self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self.coeffs == self.ring.one.coeffs

    def is_unit(self):
        return not self.residue().is_zero()

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit in {self.ring!r}")
        y = self.ring(self.residue().inverse())
        two = self.ring(2)
        for _ in range(self.ring.m.bit_length() + 1):
            y = y * (two - self * y)
        return y

    def frob(self, k: int = 1):
        return frobenius_lift(self, k)

    def __eq__(self, other):
        if isinstance(other, GaloisRingElement):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.ring(int(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.p, self.ring.m, self.ring.n, self.coeffs))

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"{self.ring!r}({self})"

    def __str__(self):
        return FieldElement.__str__(self)


@lru_cache(maxsize=None)
def make_galois_ring(p: int, m: int, n: int = 1) -> GaloisRing:
    """GR(p^m, n), with ``m = 1`` giving the field F_{p^n}."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p!r} is not prime")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"precision must be >= 1, got {m!r}")
    make_field(p, n)  # validates n
    return GaloisRing(p, m, n)


def frobenius_lift(x: GaloisRingElement, k: int) -> GaloisRingElement:
    """The Witt vector Frobenius φ^k (an automorphism; any integer ``k``)."""
    R = x.ring
    k %= R.n
    if k == 0:
        return x
    img = R._frob_gen[k]
    acc = R.zero
    power = R.one
    for c in x.coeffs:
        if c:
            acc = acc + power * c
        power = power * img
    return acc


def teichmuller(x: FieldElement, ring: GaloisRing) -> GaloisRingElement:
    """The multiplicative lift of a residue-field element into ``ring``."""
    if x.field != ring.residue_field:
        raise FieldError(f"{x!r} does not live in the residue field of {ring!r}")
    y = ring(x)
    q = ring.p ** ring.n
    while True:
        z = y ** q
        if z == y:
            return y
        y = z
