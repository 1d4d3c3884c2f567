"""Finite fields F_{p^n} with canonical moduli and compatible embeddings.

A field is identified by ``(p, n)``; its modulus is the least monic
irreducible of degree ``n`` over F_p, where polynomials are ordered by the
integer ``sum(c_i * p**i)`` of their lower coefficients.  Elements are
coefficient tuples in the power basis of the generator ``u``.

>>> K = make_field(2, 2)
>>> u = K.gen
>>> u * u == u + 1
True
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

from . import linalg
from .parsing import parse_int_poly

MAX_DEGREE = 256
TABLE_LIMIT = 4096
ENUMERATION_LIMIT = 1 << 16


class FieldError(ValueError):
    """Invalid field construction or incompatible fields."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# --------------------------------------------------------------------------
# F_p[x] helpers (lists, constant term first)
# --------------------------------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    a = list(a)
    b = _trim(list(b))
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


class _Reducer:
    """Multiplication in F_p[x]/(f) through numpy convolution."""

    def __init__(self, modulus, p):
        self.p = p
        self.n = n = len(modulus) - 1
        tail = np.array([(-c) % p for c in modulus[:n]], dtype=np.int64)
        red = np.zeros((max(n - 1, 0), n), dtype=np.int64)
        cur = tail.copy()  # x^n mod f
        for i in range(n - 1):
            red[i] = cur
            top = cur[-1]
            cur = np.concatenate([[0], cur[:-1]])
            if top:
                cur = (cur + top * tail) % p
        self.red = red

    def mul(self, a, b):
        c = np.convolve(a, b)
        n = self.n
        if n == 1:
            return c[:1] % self.p
        return (c[:n] + c[n:] @ self.red) % self.p

    def pow(self, a, e):
        result = np.zeros(self.n, dtype=np.int64)
        result[0] = 1
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result


def _is_irreducible(f, p) -> bool:
    """Ben-Or irreducibility test for a monic ``f`` over F_p."""
    n = len(f) - 1
    if n == 1:
        return True
    if f[0] == 0:
        return False
    for a in range(p):
        if sum(c * pow(a, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    red = _Reducer(f, p)
    h = np.zeros(n, dtype=np.int64)
    h[1] = 1
    for _ in range(1, n // 2 + 1):
        h = red.pow(h, p)
        d = [int(v) for v in h]
        d[1] = (d[1] - 1) % p
        if len(_pgcd(f, d, p)) > 1:
            return False
    return True


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``n`` (ordered by ``sum c_i p^i``)."""
    if n == 1:
        return (0, 1)
    for code in itertools.count(1):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        if c:
            break
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


# --------------------------------------------------------------------------
# fields and elements
# --------------------------------------------------------------------------


class FiniteField:
    """Descriptor of F_{p^n}; obtain instances through :func:`make_field`."""

    is_field = True

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.modulus = modulus
        self.order = p ** n
        self._reducer = _Reducer(modulus, p) if n > 1 else None
        self._frob_cache: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    # identity -------------------------------------------------------------
    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __str__(self):
        return f"{self.p}:{self.n}"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash(("GF", self.p, self.n))

    def __reduce__(self):
        return (make_field, (self.p, self.n))

    @property
    def characteristic(self):
        return self.p

    @property
    def spec(self) -> str:
        return f"{self.p}:{self.n}"

    # construction ------------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"{value!r} is not an element of {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.n - 1))
        if isinstance(value, str):
            return self.parse(value)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            return self._from_poly(coeffs)
        return FieldElement(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    def parse(self, text: str) -> "FieldElement":
        terms = parse_int_poly(text, "u")
        deg = max(terms, default=0)
        poly = [0] * (deg + 1)
        for e, c in terms.items():
            poly[e] = (poly[e] + c) % self.p
        return self._from_poly(poly)

    def _from_poly(self, poly):
        poly = [int(c) % self.p for c in poly]
        if len(poly) <= self.n:
            return FieldElement(self, tuple(poly) + (0,) * (self.n - len(poly)))
        _, r = _pdivmod(poly, self.modulus, self.p)
        return FieldElement(self, tuple(r) + (0,) * (self.n - len(r)))

    @cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.n)

    @cached_property
    def one(self) -> "FieldElement":
        return self(1)

    @cached_property
    def gen(self) -> "FieldElement":
        """The generator ``u`` (a root of the modulus)."""
        if self.n == 1:
            return self(-self.modulus[0])
        return FieldElement(self, (0, 1) + (0,) * (self.n - 2))

    def elements(self):
        """All elements, ordered lexicographically by coefficient tuple."""
        for c in itertools.product(range(self.p), repeat=self.n):
            yield FieldElement(self, c)

    def random(self, rng) -> "FieldElement":
        return FieldElement(self, tuple(rng.randrange(self.p) for _ in range(self.n)))

    def random_nonzero(self, rng) -> "FieldElement":
        while True:
            x = self.random(rng)
            if not x.is_zero():
                return x

    # arithmetic tables for small fields --------------------------------------
    @cached_property
    def _tables(self):
        if self.order > TABLE_LIMIT:
            return None
        elems = list(itertools.product(range(self.p), repeat=self.n))
        index = {c: i for i, c in enumerate(elems)}
        q1 = self.order - 1
        one = (1,) + (0,) * (self.n - 1)
        for cand in elems[1:]:
            exp = [one]
            cur = cand
            while cur != one and len(exp) <= q1:
                exp.append(cur)
                cur = self._raw_mul(cur, cand)
            if len(exp) == q1:
                return index, exp, {c: k for k, c in enumerate(exp)}
        raise AssertionError("no primitive element found")

    def _raw_mul(self, a, b):
        if self.n == 1:
            return ((a[0] * b[0]) % self.p,)
        return tuple(int(v) for v in self._reducer.mul(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)))

    def _mul(self, a, b):
        t = self._tables
        if t is not None:
            if not any(a) or not any(b):
                return (0,) * self.n
            _, exp, log = t
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return self._raw_mul(a, b)

    def _pow(self, a, e):
        t = self._tables
        q1 = self.order - 1
        if not any(a):
            if e == 0:
                return self.one.coeffs
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return a
        if t is not None:
            _, exp, log = t
            return exp[(log[a] * e) % q1]
        e %= q1
        if self.n == 1:
            return (pow(a[0], e, self.p),)
        return tuple(int(v) for v in self._reducer.pow(np.array(a, dtype=np.int64), e))

    # F_p-coordinate views ----------------------------------------------------
    def vec(self, x: "FieldElement") -> np.ndarray:
        return np.array(x.coeffs, dtype=np.int64)

    def from_vec(self, v) -> "FieldElement":
        return FieldElement(self, tuple(int(c) % self.p for c in v))

    def frobenius_matrix(self, k: int = 1) -> np.ndarray:
        """Matrix over F_p of ``x -> x^(p^k)`` on power-basis coordinates."""
        k %= self.n
        with self._lock:
            m = self._frob_cache.get(k)
        if m is not None:
            return m
        if k == 0:
            m = np.eye(self.n, dtype=np.int64)
        elif k == 1:
            up = FieldElement(self, self._pow(self.gen.coeffs, self.p)) if self.n > 1 else self.one
            cols = [self.one]
            for _ in range(1, self.n):
                cols.append(cols[-1] * up)
            m = np.array([c.coeffs for c in cols], dtype=np.int64).T
        else:
            m = linalg.fp_matmul(self.frobenius_matrix(1), self.frobenius_matrix(k - 1), self.p)
        with self._lock:
            self._frob_cache[k] = m
        return m

    def mul_matrix(self, x: "FieldElement") -> np.ndarray:
        """Matrix over F_p of multiplication by ``x``."""
        n, p = self.n, self.p
        cols = np.zeros((n, n), dtype=np.int64)
        cur = np.array(x.coeffs, dtype=np.int64)
        tail = np.array([(-c) % p for c in self.modulus[:n]], dtype=np.int64)
        for j in range(n):
            cols[:, j] = cur
            if j + 1 < n:
                top = cur[-1]
                cur = np.concatenate([[0], cur[:-1]])
                if top:
                    cur = (cur + top * tail) % p
        return cols

    def subfield_basis(self, d: int) -> np.ndarray:
        """F_p-basis (columns) of the unique subfield with p^d elements."""
        if self.n % d:
            raise FieldError(f"F_{self.p}^{d} is not a subfield of {self!r}")
        m = (self.frobenius_matrix(d) - np.eye(self.n, dtype=np.int64)) % self.p
        return linalg.fp_nullspace(m, self.p)


class FieldElement:
    """An element of a finite field, stored as power-basis coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    @property
    def parent(self):
        return self.field

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field._pow(self.coeffs, int(e)))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == self.field.one.coeffs

    def is_unit(self) -> bool:
        return not self.is_zero()

    def frob(self, k: int = 1) -> "FieldElement":
        return frobenius_power(self, k)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.field(int(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def __lt__(self, other):
        return self.coeffs < other.coeffs

    def __repr__(self):
        return f"{self.field!r}({self})"

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "u" if i == 1 else f"u^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FiniteField:
    """The canonical field F_{p^n}.

    >>> make_field(2, 3).modulus
    (1, 1, 0, 1)
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"{p!r} is not prime")
    if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in [1, {MAX_DEGREE}], got {n!r}")
    return FiniteField(p, n, canonical_modulus(p, n))


def frobenius_power(x: FieldElement, k: int) -> FieldElement:
    """``x^(p^k)``; negative ``k`` takes unique p-power roots."""
    K = x.field
    k %= K.n
    if k == 0 or x.is_zero():
        return x
    if K._tables is not None:
        return FieldElement(K, K._pow(x.coeffs, K.p ** k))
    v = linalg.fp_matmul(K.frobenius_matrix(k), K.vec(x), K.p)
    return K.from_vec(v)


# --------------------------------------------------------------------------
# embeddings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Ring homomorphism ``source -> target`` fixed by the image of ``u``."""

    source: FiniteField
    target: FiniteField
    image_of_generator: FieldElement = dc_field(compare=False)

    @cached_property
    def matrix(self) -> np.ndarray:
        T = self.target
        cols = [T.one]
        for _ in range(1, self.source.n):
            cols.append(cols[-1] * self.image_of_generator)
        return np.array([c.coeffs for c in cols], dtype=np.int64).T

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.source:
            x = self.source(x)
        return self.target.from_vec(linalg.fp_matmul(self.matrix, self.source.vec(x), self.target.p))

    def preimage(self, y: FieldElement):
        """The element of ``source`` mapping to ``y``, or ``None``."""
        sol = linalg.fp_solve(self.matrix, self.target.vec(y), self.target.p)
        return None if sol is None else self.source.from_vec(sol)

    def compose(self, inner: "Embedding") -> "Embedding":
        """``self ∘ inner``."""
        return Embedding(inner.source, self.target, self(inner.image_of_generator))


def _min_poly_over_fp(s: FieldElement, d: int):
    """Coefficients ``c`` with ``s^d = sum c_i s^i`` if ``1..s^(d-1)`` are independent."""
    M = s.field
    powers = [M.one]
    for _ in range(d):
        powers.append(powers[-1] * s)
    basis = np.array([x.coeffs for x in powers[:d]], dtype=np.int64).T
    if linalg.fp_rank(basis, M.p) < d:
        return None
    return linalg.fp_solve(basis, M.vec(powers[d]), M.p)


def _conjugate_roots(L: FiniteField, M: FiniteField):
    """All roots in ``M`` of the modulus of ``L``, sorted by coefficient tuple."""
    p, l = M.p, L.n
    if l == 1:
        return [M(-L.modulus[0])]
    if L.order > ENUMERATION_LIMIT:
        raise FieldError(f"root search for the modulus of {L!r} exceeds the enumeration bound")
    S = M.subfield_basis(l)
    # a generator of the degree-l subfield: first combination with full min poly
    gen = None
    cmin = None
    for combo in itertools.product(range(p), repeat=l):
        if not any(combo):
            continue
        s = M.from_vec(S @ np.array(combo, dtype=np.int64) % p)
        c = _min_poly_over_fp(s, l)
        if c is not None:
            gen, cmin = s, [int(v) for v in c]
            break
    # a root rho of the minimal polynomial of gen inside L
    rho = None
    for y in L.elements():
        val = y ** l
        yp = L.one
        for ci in cmin:
            if ci:
                val = val - ci * yp
            yp = yp * y
        if val.is_zero():
            rho = y
            break
    # express u_L as a polynomial in rho
    rpows = [L.one]
    for _ in range(1, l):
        rpows.append(rpows[-1] * rho)
    h = linalg.fp_solve(np.array([x.coeffs for x in rpows], dtype=np.int64).T, L.vec(L.gen), p)
    r = M.zero
    gp = M.one
    for hi in h:
        if hi:
            r = r + int(hi) * gp
        gp = gp * gen
    roots = {frobenius_power(r, j) for j in range(l)}
    return sorted(roots, key=lambda z: z.coeffs)


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_embed_lock = threading.Lock()


@lru_cache(maxsize=None)
def _maximal_images(M: FiniteField):
    """Compatible images of the generators of the maximal subfields of ``M``.

    Returns ``{degree: image}`` or ``None`` when some maximal subfield is
    too large to enumerate.
    """
    degs = sorted({M.n // ell for ell in _prime_divisors(M.n)}, reverse=True)
    if any(M.p ** d > ENUMERATION_LIMIT for d in degs):
        return None
    chosen: dict[int, FieldElement] = {}
    for d in degs:
        L = make_field(M.p, d)
        for r in _conjugate_roots(L, M):
            emb = Embedding(L, M, r)
            ok = True
            for d2, r2 in chosen.items():
                g = _gcd(d, d2)
                I = make_field(M.p, g)
                lhs = emb(embed(I, L).image_of_generator)
                rhs = Embedding(make_field(M.p, d2), M, r2)(embed(I, make_field(M.p, d2)).image_of_generator)
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                chosen[d] = r
                break
        else:  # pragma: no cover - excluded by Galois theory
            raise FieldError(f"no compatible embedding of {L!r} into {M!r}")
    return chosen


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def embed(source: FiniteField, target: FiniteField) -> Embedding:
    """The library's canonical embedding ``source -> target``.

    Embeddings into a field whose maximal subfields are enumerable are
    chosen lattice-compatibly (every chain of library embeddings
    commutes); otherwise the least root of the source modulus is used.
    """
    if source.p != target.p:
        raise FieldError(f"characteristics differ: {source!r} vs {target!r}")
    if target.n % source.n:
        raise FieldError(f"{source!r} does not embed in {target!r}: {source.n} does not divide {target.n}")
    if source.n == target.n:
        return Embedding(source, target, target.gen)
    if source.n == 1:
        return Embedding(source, target, target(-source.modulus[0]))
    images = _maximal_images(target)
    if images is None:
        return Embedding(source, target, _conjugate_roots(source, target)[0])
    for d in sorted(images, reverse=True):
        if d % source.n == 0:
            L = make_field(target.p, d)
            outer = Embedding(L, target, images[d])
            if d == source.n:
                return outer
            return outer.compose(embed(source, L))
    raise AssertionError("unreachable: every proper subfield lies in a maximal one")


def trace(x: FieldElement, down_to: FiniteField) -> FieldElement:
    """Trace of ``x`` down to the subfield ``down_to`` (as an element of it)."""
    L = x.field
    e = embed(down_to, L)
    k = L.n // down_to.n
    acc = L.zero
    y = x
    for _ in range(k):
        acc = acc + y
        y = frobenius_power(y, down_to.n)
    out = e.preimage(acc)
    if out is None:  # pragma: no cover
        raise FieldError("trace left the subfield")
    return out


def extension(K: FiniteField, k: int) -> FiniteField:
    """The degree-``k`` extension F_{q^k} of ``K`` (absolute descriptor)."""
    return make_field(K.p, K.n * k)
