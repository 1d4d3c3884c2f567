"""Truncated big Witt vectors in series coordinates.

A Witt vector of length N over R is the series ``1 + c_1 t + ... + c_N t^N``.
Witt addition is series multiplication, the Teichmüller element of ``a`` is
``1 - a t``, and the ghost components are the coefficients of
``-t d/dt log f``.  Over torsion-free rings the product is computed through
ghost components; over finite fields and Galois rings it is computed by
specialising integral universal polynomials, which are generated once per
truncation length and kept in an on-disk cache.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .finite_field import FieldElement, FiniteField
from .galois_ring import GaloisRing
from .parsing import ParseError, parse_int_poly, parse_series

CACHE_FORMAT = "frobenii-witt-universal"
CACHE_VERSION = 1
CACHE_ENV = "FRH_WITT_CACHE"


class WittError(ValueError):
    pass


# --------------------------------------------------------------------------
# coefficient rings
# --------------------------------------------------------------------------


class Integers:
    spec = "Z"
    torsion_free = True
    is_domain = True
    zero = 0
    one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise WittError(f"{x} is not an integer")
            return int(x)
        return int(x)

    def parse(self, text: str):
        return self(_constant(text))

    def divexact(self, x, n):
        if x % n:
            raise WittError(f"{x} is not divisible by {n}")
        return x // n

    def __repr__(self):
        return "ZZ"

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("ZZ")


class Rationals(Integers):
    spec = "Q"

    def __call__(self, x):
        return Fraction(x)

    def parse(self, text: str):
        if "/" in text:
            num, _, den = text.partition("/")
            return Fraction(_constant(num), _constant(" " * (len(num) + 1) + den))
        return Fraction(_constant(text))

    def divexact(self, x, n):
        return Fraction(x) / n

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


def _constant(text):
    terms = parse_int_poly(text, var="u")
    if any(e for e in terms if terms[e]):
        stripped = len(text) - len(text.lstrip())
        raise ParseError("expected an integer coefficient", stripped, text)
    return terms.get(0, 0)


ZZ = Integers()
QQ = Rationals()


class IntegralLift:
    """``Z[u]/(g)`` for a monic integer lift ``g`` of a finite field's modulus.

    A torsion-free ring that surjects onto the field; used to compare
    torsion computations with the ghost-component route.
    """

    torsion_free = True
    is_domain = True

    def __init__(self, field: FiniteField, modulus=None):
        self.field = field
        self.n = field.n
        self.modulus = tuple(modulus or field.modulus)
        self.spec = f"Z[u]/({field.spec})"
        self.zero = LiftElement(self, (0,) * self.n)
        self.one = self(1)

    def __call__(self, x):
        if isinstance(x, LiftElement):
            return x
        if isinstance(x, FieldElement):
            return LiftElement(self, x.coeffs)
        return LiftElement(self, (int(x),) + (0,) * (self.n - 1))

    def lift(self, x: FieldElement) -> "LiftElement":
        """Coefficientwise lift with representatives in [0, p)."""
        return LiftElement(self, x.coeffs)

    def reduce(self, x: "LiftElement") -> FieldElement:
        return self.field(tuple(c % self.field.p for c in x.coeffs))

    def divexact(self, x, n):
        if any(c % n for c in x.coeffs):
            raise WittError(f"{x} is not divisible by {n}")
        return LiftElement(self, tuple(c // n for c in x.coeffs))

    def __eq__(self, other):
        return isinstance(other, IntegralLift) and (self.field, self.modulus) == (other.field, other.modulus)

    def __hash__(self):
        return hash(("lift", self.field, self.modulus))


class LiftElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _c(self, o):
        return o if isinstance(o, LiftElement) else self.ring(o)

    def __add__(self, o):
        o = self._c(o)
        return LiftElement(self.ring, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return LiftElement(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        n = self.ring.n
        g = self.ring.modulus
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        for i in range(len(prod) - 1, n - 1, -1):
            c = prod[i]
            if c:
                for j in range(n + 1):
                    prod[i - n + j] -= c * g[j]
        return LiftElement(self.ring, tuple(prod[:n]))

    __rmul__ = __mul__

    def __pow__(self, e):
        out = self.ring.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, (LiftElement, int)):
            return self.coeffs == self._c(o).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        return f"Lift{self.coeffs}"


def _is_torsion_free(ring) -> bool:
    return bool(getattr(ring, "torsion_free", False))


def _is_domain(ring) -> bool:
    if isinstance(ring, GaloisRing):
        return ring.m == 1
    return bool(getattr(ring, "is_domain", False)) or isinstance(ring, FiniteField)


def _iszero(x) -> bool:
    return x == 0 if isinstance(x, (int, Fraction)) else x.is_zero()


def _fmt(x) -> str:
    return str(x)


# --------------------------------------------------------------------------
# series helpers (index 0 is the constant term)
# --------------------------------------------------------------------------


def _series_mul(a, b, N, ring):
    out = [ring.zero] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if _iszero(x):
            continue
        for j in range(min(len(b), N + 1 - i)):
            y = b[j]
            if not _iszero(y):
                out[i + j] = out[i + j] + x * y
    return out


def _series_inv(a, N, ring):
    """Inverse of a series with constant term 1."""
    out = [ring.one] + [ring.zero] * N
    for n in range(1, N + 1):
        acc = ring.zero
        for k in range(1, min(n, len(a) - 1) + 1):
            if not _iszero(a[k]):
                acc = acc + a[k] * out[n - k]
        out[n] = -acc
    return out


# --------------------------------------------------------------------------
# big Witt vectors
# --------------------------------------------------------------------------


class BigWitt:
    """``1 + c_1 t + ... + c_N t^N`` over ``ring``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = tuple(ring(c) for c in coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs)

    @property
    def series(self):
        return (self.ring.one,) + self.coeffs

    @classmethod
    def from_series(cls, ring, series, N):
        s = [ring(c) for c in series]
        if not s or s[0] != ring.one:
            raise WittError("series must have constant term 1")
        s = s[1:N + 1]
        return cls(ring, s + [ring.zero] * (N - len(s)))

    @classmethod
    def parse(cls, ring, text: str, N: int):
        terms = parse_series(text, ring.parse if hasattr(ring, "parse") else ring, var="t")
        if terms.get(0, ring.zero) != ring.one:
            raise ParseError("series must have constant term 1", 0, text)
        return cls(ring, [terms.get(i, ring.zero) for i in range(1, N + 1)])

    def __eq__(self, other):
        return isinstance(other, BigWitt) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"BigWitt[{getattr(self.ring, 'spec', self.ring)}, N={self.N}]({self})"

    def __str__(self):
        parts = ["1"]
        for i, c in enumerate(self.coeffs, start=1):
            if _iszero(c):
                continue
            mono = "t" if i == 1 else f"t^{i}"
            s = _fmt(c)
            if s == "1":
                parts.append("+" + mono)
            elif s == "-1":
                parts.append("-" + mono)
            elif "+" in s or "-" in s[1:] or "/" in s:
                parts.append(f"+({s})*{mono}")
            elif s.startswith("-"):
                parts.append(f"{s}*{mono}")
            else:
                parts.append(f"+{s}*{mono}")
        return "".join(parts)

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_add(self, witt_neg(other))

    def __mul__(self, other):
        return witt_mul(self, other)


def _check_pair(a: BigWitt, b: BigWitt):
    if a.ring != b.ring:
        raise WittError(f"ring mismatch: {a.ring!r} vs {b.ring!r}")
    if a.N != b.N:
        raise WittError(f"truncation mismatch: {a.N} vs {b.N}")


def witt_zero(ring, N) -> BigWitt:
    return BigWitt(ring, [ring.zero] * N)


def witt_one(ring, N) -> BigWitt:
    return teichmuller_witt(ring.one, N, ring)


def teichmuller_witt(a, N, ring=None) -> BigWitt:
    """``[a] = 1 - a t``."""
    ring = ring or _ring_of(a)
    return BigWitt(ring, [-ring(a)] + [ring.zero] * (N - 1)) if N else BigWitt(ring, [])


def _ring_of(a):
    if isinstance(a, FieldElement):
        return a.field
    if hasattr(a, "ring"):
        return a.ring
    if isinstance(a, Fraction):
        return QQ
    return ZZ


def witt_add(a: BigWitt, b: BigWitt) -> BigWitt:
    _check_pair(a, b)
    return BigWitt(a.ring, _series_mul(a.series, b.series, a.N, a.ring)[1:])


def witt_neg(a: BigWitt) -> BigWitt:
    return BigWitt(a.ring, _series_inv(a.series, a.N, a.ring)[1:])


def witt_scale(n: int, a: BigWitt) -> BigWitt:
    """``n * a`` in the Witt group, i.e. the series ``f^n``."""
    out = witt_zero(a.ring, a.N)
    base = a if n >= 0 else witt_neg(a)
    for _ in range(abs(n)):
        out = witt_add(out, base)
    return out


@dataclass(frozen=True)
class GhostVector:
    ring: object
    values: tuple

    def __len__(self):
        return len(self.values)


def _ghost_values(series, N, ring):
    # sum_k w_k a_(n-k) = -n a_n  (a_0 = 1)
    w = []
    for n in range(1, N + 1):
        acc = -n * series[n] if n < len(series) else ring.zero
        for k in range(1, n):
            if n - k < len(series) and not _iszero(series[n - k]):
                acc = acc - w[k - 1] * series[n - k]
        w.append(acc)
    return w


def _from_ghost(w, ring):
    """The series whose ghost components are ``w`` (exact division required)."""
    N = len(w)
    c = [ring.one] + [ring.zero] * N
    for n in range(1, N + 1):
        acc = w[n - 1]
        for k in range(1, n):
            if not _iszero(c[n - k]):
                acc = acc + w[k - 1] * c[n - k]
        c[n] = ring.divexact(-acc, n)
    return c[1:]


def ghost_map(a: BigWitt) -> GhostVector:
    if not _is_torsion_free(a.ring):
        raise WittError(f"ghost components are not defined over the torsion ring {a.ring!r}")
    return GhostVector(a.ring, tuple(_ghost_values(a.series, a.N, a.ring)))


def from_ghost(g: GhostVector) -> BigWitt:
    if not _is_torsion_free(g.ring):
        raise WittError("inverse ghost map needs a torsion-free ring")
    return BigWitt(g.ring, _from_ghost(list(g.values), g.ring))


def witt_mul(a: BigWitt, b: BigWitt, cache_dir=None) -> BigWitt:
    """Witt product: ``[x] * [y] = [xy]``, bilinear for the series product."""
    _check_pair(a, b)
    ring, N = a.ring, a.N
    if _is_torsion_free(ring):
        wa = _ghost_values(a.series, N, ring)
        wb = _ghost_values(b.series, N, ring)
        return BigWitt(ring, _from_ghost([x * y for x, y in zip(wa, wb)], ring))
    polys = universal_polynomials("mul", N, cache_dir)
    vals = list(a.coeffs) + list(b.coeffs)
    return BigWitt(ring, [_evaluate(P, vals, ring) for P in polys])


def frobenius_op(n: int, a: BigWitt, cache_dir=None) -> BigWitt:
    """F_n, of truncation ``N // n``; on ghost components ``w_k -> w_(nk)``."""
    if n < 1:
        raise WittError("n must be >= 1")
    ring, N = a.ring, a.N
    M = N // n
    if n == 1:
        return a
    if _is_torsion_free(ring):
        w = _ghost_values(a.series, N, ring)
        return BigWitt(ring, _from_ghost([w[n * k - 1] for k in range(1, M + 1)], ring))
    polys = universal_polynomials(f"frobenius_{n}", N, cache_dir)
    return BigWitt(ring, [_evaluate(P, list(a.coeffs), ring) for P in polys])


def verschiebung_op(n: int, a: BigWitt) -> BigWitt:
    """V_n: ``f(t) -> f(t^n)``, truncated at the same length."""
    if n < 1:
        raise WittError("n must be >= 1")
    ring, N = a.ring, a.N
    out = [ring.zero] * N
    for i, c in enumerate(a.coeffs, start=1):
        if i * n <= N:
            out[i * n - 1] = c
    return BigWitt(ring, out)


# --------------------------------------------------------------------------
# universal polynomials
# --------------------------------------------------------------------------
# A polynomial is a dict {exponent tuple: coefficient}; variables are
# a_1..a_N (and b_1..b_N for products).


def _padd(p, q, scale=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m)
    return out


def _var(i, nvars):
    return {tuple(1 if j == i else 0 for j in range(nvars)): 1}


def _ghost_polys(offset, N, nvars):
    one = {(0,) * nvars: 1}
    a = [one] + [_var(offset + i, nvars) for i in range(N)]
    w = []
    for n in range(1, N + 1):
        acc = {m: -n * c for m, c in a[n].items()}
        for k in range(1, n):
            acc = _padd(acc, _pmul(w[k - 1], a[n - k]), -1)
        w.append(acc)
    return w


def _invert_ghost_polys(w, nvars):
    one = {(0,) * nvars: 1}
    c = [one]
    for n in range(1, len(w) + 1):
        acc = dict(w[n - 1])
        for k in range(1, n):
            acc = _padd(acc, _pmul(w[k - 1], c[n - k]))
        cn = {}
        for m, v in acc.items():
            q = Fraction(-v, n)
            if q.denominator != 1:
                raise AssertionError(f"universal polynomial c_{n} has non-integral coefficient {q}")
            cn[m] = int(q)
        c.append(cn)
    return c[1:]


def _generate(op: str, N: int):
    if op == "mul":
        nvars = 2 * N
        wa = _ghost_polys(0, N, nvars)
        wb = _ghost_polys(N, N, nvars)
        return nvars, _invert_ghost_polys([_pmul(x, y) for x, y in zip(wa, wb)], nvars)
    if op.startswith("frobenius_"):
        n = int(op.split("_", 1)[1])
        nvars = N
        w = _ghost_polys(0, N, nvars)
        return nvars, _invert_ghost_polys([w[n * k - 1] for k in range(1, N // n + 1)], nvars)
    raise WittError(f"unknown universal polynomial family {op!r}")


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "frobenii" / "witt"


def cache_path(op: str, N: int, cache_dir=None) -> Path:
    return Path(cache_dir or default_cache_dir()) / f"{op}-N{N}.json"


def serialize_polys(op, N, nvars, polys) -> str:
    doc = {
        "format": CACHE_FORMAT,
        "version": CACHE_VERSION,
        "op": op,
        "N": N,
        "nvars": nvars,
        "polys": [sorted([list(m), c] for m, c in P.items()) for P in polys],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def deserialize_polys(text: str, op=None, N=None):
    doc = json.loads(text)
    if doc.get("format") != CACHE_FORMAT or doc.get("version") != CACHE_VERSION:
        raise WittError("unrecognised universal-polynomial cache file")
    if (op is not None and doc["op"] != op) or (N is not None and doc["N"] != N):
        raise WittError("cache file is keyed for a different operation")
    return [{tuple(m): c for m, c in P} for P in doc["polys"]]


_memory: dict = {}
_lock = threading.Lock()


def universal_polynomials(op: str, N: int, cache_dir=None):
    """Integral universal polynomials for ``op`` at truncation ``N``.

    ``op`` is ``"mul"`` or ``"frobenius_<n>"``.  Results are memoised in
    process and persisted under ``cache_dir`` (default: ``$FRH_WITT_CACHE``
    or the user cache directory).
    """
    key = (op, N)
    with _lock:
        if key in _memory:
            return _memory[key]
    path = cache_path(op, N, cache_dir)
    polys = None
    if path.exists():
        try:
            polys = deserialize_polys(path.read_text(), op, N)
        except (WittError, ValueError, KeyError):
            polys = None
    if polys is None:
        nvars, polys = _generate(op, N)
        text = serialize_polys(op, N, nvars, polys)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except OSError:
            pass  # a read-only cache only costs regeneration
    with _lock:
        _memory[key] = polys
    return polys


def _evaluate(P, vals, ring):
    acc = ring.zero
    powers: dict = {}
    for m, c in P.items():
        term = ring(c)
        if _iszero(term):
            continue
        for i, e in enumerate(m):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = vals[i] ** e
                term = term * powers[key]
        acc = acc + term
    return acc


# --------------------------------------------------------------------------
# rational Witt vectors
# --------------------------------------------------------------------------


def _poly_trim(cs, ring):
    cs = list(cs)
    while len(cs) > 1 and _iszero(cs[-1]):
        cs.pop()
    return tuple(cs)


class RationalWitt:
    """``f / g`` with ``f, g`` polynomials of constant term 1 over an integral domain."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=(1,)):
        if not _is_domain(ring):
            raise WittError(f"rational Witt vectors need an integral domain, not {ring!r}")
        num = _poly_trim([ring(c) for c in num], ring)
        den = _poly_trim([ring(c) for c in den], ring)
        if num[0] != ring.one or den[0] != ring.one:
            raise WittError("numerator and denominator must have constant term 1")
        self.ring, self.num, self.den = ring, num, den

    def __eq__(self, other):
        if not isinstance(other, RationalWitt) or other.ring != self.ring:
            return NotImplemented
        lhs = _series_mul(self.num, other.den, len(self.num) + len(other.den), self.ring)
        rhs = _series_mul(other.num, self.den, len(other.num) + len(self.den), self.ring)
        return _poly_trim(lhs, self.ring) == _poly_trim(rhs, self.ring)

    def __hash__(self):
        raise TypeError("RationalWitt equality is up to cross-multiplication; not hashable")

    def __mul__(self, other):
        """The group law (product of fractions)."""
        R = self.ring
        num = _series_mul(self.num, other.num, len(self.num) + len(other.num) - 2, R)
        den = _series_mul(self.den, other.den, len(self.den) + len(other.den) - 2, R)
        return RationalWitt(R, num, den)

    def inverse(self):
        return RationalWitt(self.ring, self.den, self.num)

    def __repr__(self):
        return f"RationalWitt({list(map(str, self.num))} / {list(map(str, self.den))})"


def rational_to_big(r: RationalWitt, N: int) -> BigWitt:
    R = r.ring
    return BigWitt(R, _series_mul(r.num, _series_inv(r.den, N, R), N, R)[1:])


def roots_to_coefficients(roots, ring=None) -> RationalWitt:
    """``prod (1 - a t)`` over the multiset ``roots``."""
    roots = list(roots)
    if ring is None:
        ring = _ring_of(roots[0]) if roots else ZZ
    poly = [ring.one]
    for a in roots:
        poly = _series_mul(poly, [ring.one, -ring(a)], len(poly), ring)
    return RationalWitt(ring, poly)


def coefficients_to_roots(poly, K: FiniteField, rng=None):
    """``(L, roots)``: the multiset with ``prod (1 - a t) = poly``, over the least extension L of K.

    ``poly`` lists ``1, c_1, ..., c_i``; its reversal ``t^i + c_1 t^(i-1) + ...``
    has exactly the ``a`` as roots, provided ``c_i != 0`` (no roots equal to 0
    are possible since ``1 - 0 t = 1``).
    """
    from .fieldpoly import splitting_roots

    cs = [K(c) for c in poly]
    while len(cs) > 1 and cs[-1].is_zero():
        cs.pop()
    if not cs[0].is_one():
        raise WittError("polynomial must have constant term 1")
    if len(cs) == 1:
        return K, []
    return splitting_roots(list(reversed(cs)), K, rng)
