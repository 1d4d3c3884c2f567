"""Twisted polynomial rings R[F] and R[F^{±1}] over finite fields and Galois rings.

Elements are written with left coefficients, ``sum a_i F^i``, and multiply
through ``F a = φ(a) F``.  The base ring may be a :class:`FiniteField`
(φ = p-th power) or a :class:`GaloisRing` (φ = Witt vector Frobenius).
"""

from __future__ import annotations

from .parsing import ParseError, parse_skew


class SkewPolyError(ValueError):
    pass


def _fmt_coeff(c, exp, var="F"):
    s = str(c)
    if exp == 0:
        return s if "+" not in s[1:] else f"({s})"
    mono = var if exp == 1 else f"{var}^{exp}"
    if c.is_one():
        return mono
    if "+" in s or "-" in s[1:]:
        return f"({s})*{mono}"
    return f"{s}*{mono}"


class SkewPoly:
    """``sum coeffs[i] * F^i`` with left coefficients in ``base``."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs=()):
        cs = [base(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.base = base
        self.coeffs = tuple(cs)

    # constructors -------------------------------------------------------------
    @classmethod
    def F(cls, base, k: int = 1) -> "SkewPoly":
        return cls(base, [base.zero] * k + [base.one])

    @classmethod
    def constant(cls, base, c) -> "SkewPoly":
        return cls(base, [c])

    @classmethod
    def parse(cls, base, text: str) -> "SkewPoly":
        terms = parse_skew(text, base, var="F")
        if any(e < 0 for e in terms):
            raise ParseError("negative power of F in a polynomial (use SkewLaurent)", 0, text)
        deg = max(terms, default=0)
        cs = [base.zero] * (deg + 1)
        for e, c in terms.items():
            cs[e] = cs[e] + c
        return cls(base, cs)

    # basic properties --------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree in F; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.base.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.base.zero

    def valuation(self) -> int:
        """Largest v with F^v dividing on the right (index of first nonzero coefficient)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise SkewPolyError("the zero polynomial has no valuation")

    def monic(self) -> "SkewPoly":
        if self.is_zero():
            raise SkewPolyError("zero has no monic associate")
        inv = self.leading.inverse()
        return SkewPoly(self.base, [inv * c for c in self.coeffs])

    # arithmetic -------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, SkewPoly):
            other = SkewPoly(self.base, [self.base(other)])
        if other.base != self.base:
            raise SkewPolyError(f"base mismatch: {self.base!r} vs {other.base!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.base, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return skew_mul(self, self._check(other))

    def __rmul__(self, other):
        return skew_mul(self._check(other), self)

    def __pow__(self, e: int):
        out = SkewPoly(self.base, [self.base.one])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            try:
                other = self._check(other)
            except Exception:
                return NotImplemented
        return self.base == other.base and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __repr__(self):
        return f"SkewPoly[{self.base.spec}]({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = [_fmt_coeff(c, i) for i, c in reversed(list(enumerate(self.coeffs))) if not c.is_zero()]
        return "+".join(parts)

    def twist(self, k: int = 1) -> "SkewPoly":
        """Apply φ^k to every coefficient (so ``F^k T = twist(T, k) F^k``)."""
        return SkewPoly(self.base, [c.frob(k) for c in self.coeffs])


def skew_mul(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Product in R[F] using ``F^i b = φ^i(b) F^i``."""
    if a.base != b.base:
        raise SkewPolyError(f"base mismatch: {a.base!r} vs {b.base!r}")
    base = a.base
    if a.is_zero() or b.is_zero():
        return SkewPoly(base)
    out = [base.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.coeffs):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj.frob(i)
    return SkewPoly(base, out)


def left_divmod(a: SkewPoly, b: SkewPoly):
    """``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``.

    Over a Galois ring the leading coefficient of ``b`` must be a unit.
    """
    if a.base != b.base:
        raise SkewPolyError(f"base mismatch: {a.base!r} vs {b.base!r}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    base = a.base
    lead = b.leading
    if not lead.is_unit():
        raise SkewPolyError("divisor must have a unit leading coefficient over a non-field base")
    db = b.degree
    r = list(a.coeffs)
    q = [base.zero] * max(len(r) - db, 0)
    for d in range(len(r) - 1, db - 1, -1):
        c = r[d]
        if c.is_zero():
            continue
        shift = d - db
        t = c * lead.frob(shift).inverse()
        q[shift] = t
        # subtract t F^shift b = sum t φ^shift(b_j) F^(shift+j)
        for j, bj in enumerate(b.coeffs):
            if not bj.is_zero():
                r[shift + j] = r[shift + j] - t * bj.frob(shift)
    return SkewPoly(base, q), SkewPoly(base, r[:db] if db >= 0 else [])


def right_gcd(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """Monic generator of the left ideal ``R[F] a + R[F] b``."""
    if a.base != b.base:
        raise SkewPolyError(f"base mismatch: {a.base!r} vs {b.base!r}")
    if not a.base.is_field:
        raise SkewPolyError("right_gcd needs a field base")
    if a.is_zero() and b.is_zero():
        raise SkewPolyError("gcd of two zero polynomials is undefined")
    while not b.is_zero():
        a, b = b, left_divmod(a, b)[1]
    return a.monic()


# --------------------------------------------------------------------------
# Laurent ring R[F^{±1}]
# --------------------------------------------------------------------------


class SkewLaurent:
    """Element of R[F^{±1}] stored as ``{i: left coefficient of F^i}``.

    ``valuation`` and ``body`` present the normal form ``F^v * body`` with
    ``body`` a polynomial with nonzero constant term.
    """

    __slots__ = ("base", "terms")

    def __init__(self, base, terms=None):
        self.base = base
        self.terms = {i: base(c) for i, c in (terms or {}).items() if not base(c).is_zero()}

    @classmethod
    def from_poly(cls, T: SkewPoly) -> "SkewLaurent":
        return cls(T.base, dict(enumerate(T.coeffs)))

    @classmethod
    def F(cls, base, k: int = 1) -> "SkewLaurent":
        return cls(base, {k: base.one})

    @classmethod
    def parse(cls, base, text: str) -> "SkewLaurent":
        terms = parse_skew(text, base, var="F")
        return cls(base, terms)

    def is_zero(self):
        return not self.terms

    @property
    def valuation(self) -> int:
        if not self.terms:
            raise SkewPolyError("zero has no valuation")
        return min(self.terms)

    @property
    def body(self) -> SkewPoly:
        """``body`` with ``self == F^valuation * body``."""
        if not self.terms:
            return SkewPoly(self.base)
        v = self.valuation
        top = max(self.terms)
        return SkewPoly(self.base, [self.terms.get(v + j, self.base.zero).frob(-v) for j in range(top - v + 1)])

    def coefficient(self, i: int):
        return self.terms.get(i, self.base.zero)

    def __add__(self, other):
        other = _as_laurent(self.base, other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out[i] + c if i in out else c
        return SkewLaurent(self.base, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewLaurent(self.base, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(self.base, other))

    def __mul__(self, other):
        other = _as_laurent(self.base, other)
        out: dict = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                c = a * b.frob(i)
                out[i + j] = out[i + j] + c if i + j in out else c
        return SkewLaurent(self.base, out)

    def __rmul__(self, other):
        return _as_laurent(self.base, other) * self

    def __eq__(self, other):
        try:
            other = _as_laurent(self.base, other)
        except Exception:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.base, tuple(sorted((i, c.coeffs) for i, c in self.terms.items()))))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms, reverse=True):
            c = self.terms[i]
            if i >= 0:
                parts.append(_fmt_coeff(c, i))
            else:
                mono = f"F^{i}"
                s = str(c)
                parts.append(mono if c.is_one() else (f"({s})*{mono}" if "+" in s else f"{s}*{mono}"))
        return "+".join(parts)

    def __repr__(self):
        return f"SkewLaurent[{self.base.spec}]({self})"

    def to_poly(self) -> SkewPoly:
        if self.terms and self.valuation < 0:
            raise SkewPolyError("element has negative powers of F")
        top = max(self.terms, default=-1)
        return SkewPoly(self.base, [self.coefficient(i) for i in range(top + 1)])


def _as_laurent(base, x):
    if isinstance(x, SkewLaurent):
        if x.base != base:
            raise SkewPolyError("base mismatch")
        return x
    if isinstance(x, SkewPoly):
        if x.base != base:
            raise SkewPolyError("base mismatch")
        return SkewLaurent.from_poly(x)
    return SkewLaurent(base, {0: base(x)})


def laurent_normalize(v: int, body: SkewPoly) -> SkewLaurent:
    """Normal form of ``F^v * body``: left coefficients ``φ^v(b_j)`` on ``F^(v+j)``."""
    if not body.base.is_field and not hasattr(body.base, "lifted_modulus"):
        raise SkewPolyError("φ must be invertible on the base")
    return SkewLaurent(body.base, {v + j: b.frob(v) for j, b in enumerate(body.coeffs)})


def ore_left(a: SkewPoly, i: int) -> SkewPoly:
    """The ``a'`` with ``F^i a = a' F^i`` (left Ore condition for the powers of F)."""
    return a.twist(i)
