"""Additive (p-)polynomials attached to skew polynomials, and their roots.

A skew polynomial ``T = sum a_i F^i`` over F_q acts on any extension L of
F_q through ``F^i -> x^(p^i)``.  The roots of that additive polynomial form
an F_p-subspace of the algebraic closure; when ``a_0 != 0`` it has exactly
``p^deg T`` elements.

Roots are found without searching: the Frobenius x -> x^q acts on the root
space through the matrix ``B^{-1}``, where ``B = A A^φ ... A^{φ^(e-1)}`` and
``A`` is the inverse companion matrix of ``T``.  The splitting degree is
therefore the multiplicative order of ``B``, and the roots are read off as
an F_p-kernel inside that extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .finite_field import (
    FieldElement,
    FiniteField,
    MAX_DEGREE,
    embed,
    extension,
    frobenius_power,
)
from .skew_poly import SkewPoly, SkewPolyError

ENUMERATE_LIMIT = 1 << 16


class RootSearchError(RuntimeError):
    """The splitting field lies beyond ``max_degree``."""

    def __init__(self, message, degree_reached, partial_count, splitting_degree=None):
        super().__init__(message)
        self.degree_reached = degree_reached
        self.partial_count = partial_count
        self.splitting_degree = splitting_degree


@dataclass(frozen=True)
class AdditivePoly:
    """``x -> sum a * x^(p^i)`` over ``(i, a)`` pairs.

    Exponents are usually non-negative; negative ``i`` stands for the
    p^|i|-th root, which is how the root-precomposed self-map is encoded.
    """

    field: FiniteField
    terms: tuple

    def __post_init__(self):
        exps = [i for i, _ in self.terms]
        if exps != sorted(set(exps)):
            raise ValueError("exponents must be strictly increasing")
        if any(a.is_zero() for _, a in self.terms):
            raise ValueError("coefficients must be nonzero")

    def __call__(self, x: FieldElement) -> FieldElement:
        L = x.field
        iota = embed(self.field, L)
        acc = L.zero
        for i, a in self.terms:
            acc = acc + iota(a) * frobenius_power(x, i)
        return acc

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """``self ∘ other`` as an additive polynomial."""
        acc: dict[int, FieldElement] = {}
        for i, a in self.terms:
            for j, b in other.terms:
                c = a * frobenius_power(b, i)
                acc[i + j] = acc[i + j] + c if i + j in acc else c
        return AdditivePoly(self.field, tuple((k, c) for k, c in sorted(acc.items()) if not c.is_zero()))

    def linear_matrix(self, L: FiniteField) -> np.ndarray:
        """The F_p-matrix of this map on the power-basis coordinates of ``L``."""
        iota = embed(self.field, L)
        m = np.zeros((L.n, L.n), dtype=np.int64)
        for i, a in self.terms:
            m = m + L.mul_matrix(iota(a)) @ L.frobenius_matrix(i)
        return m % L.p

    @property
    def degree(self) -> int:
        """Degree as an ordinary polynomial (p^top exponent)."""
        if not self.terms:
            return -1
        return self.field.p ** self.terms[-1][0]

    def dense(self):
        """Ordinary coefficient list (index = exponent); forward forms only."""
        if any(i < 0 for i, _ in self.terms):
            raise ValueError("not a polynomial: negative p-power exponent")
        out = [self.field.zero] * (self.degree + 1 if self.terms else 1)
        for i, a in self.terms:
            out[self.field.p ** i] = a
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, a in reversed(self.terms):
            mono = "x" if i == 0 else (f"x^({self.field.p}^{i})" if i > 0 else f"x^({self.field.p}^{i})")
            s = str(a)
            parts.append(mono if a.is_one() else (f"({s})*{mono}" if "+" in s else f"{s}*{mono}"))
        return "+".join(parts)


def to_additive(T: SkewPoly, form: str = "forward") -> AdditivePoly:
    """Additive realisation of ``T``.

    ``forward``: ``F^i -> x^(p^i)``.  For ``T = F^n + a_1 F^(n-1) + ... + a_n``
    the two self-map forms are ``selfmap2``:
    ``x + a_1^(1/p^(n-1)) x^p + ... + a_n x^(p^n)`` and ``selfmap``, its
    precomposition with ``x -> x^(1/p^n)``.
    """
    K = T.base
    if not getattr(K, "is_field", False) or not isinstance(K, FiniteField):
        raise SkewPolyError("additive realisation needs a finite-field base")
    if form == "forward":
        return AdditivePoly(K, tuple((i, c) for i, c in enumerate(T.coeffs) if not c.is_zero()))
    if not T.is_monic():
        raise SkewPolyError("self-map forms are defined for monic T")
    n = T.degree
    shift = 0 if form == "selfmap2" else -n
    if form not in ("selfmap", "selfmap2"):
        raise ValueError(f"unknown form {form!r}")
    terms = []
    for j in range(n + 1):
        c = T.coeffs[n - j]
        if not c.is_zero():
            terms.append((j + shift, frobenius_power(c, -(n - j))))
    return AdditivePoly(K, tuple(terms))


# --------------------------------------------------------------------------
# roots
# --------------------------------------------------------------------------


@dataclass
class RootSet:
    """Distinct roots of ``to_additive(T)`` in the splitting field.

    ``multiplicity`` is the common multiplicity ``p^v`` of every root, with
    ``v`` the F-adic valuation of ``T``; ``len(roots) * multiplicity`` is the
    ordinary degree ``p^deg T``.
    """

    field: FiniteField
    splitting_degree: int
    basis: list
    roots: list | None
    multiplicity: int

    @property
    def count(self) -> int:
        return self.field.p ** len(self.basis)


def _fp_block(K: FiniteField, mat) -> np.ndarray:
    """F_p-matrix (size r*e) of a K-linear map given by a matrix over K."""
    r = len(mat)
    e = K.n
    out = np.zeros((r * e, r * e), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            out[i * e:(i + 1) * e, j * e:(j + 1) * e] = K.mul_matrix(mat[i][j])
    return out


def frobenius_norm_matrix(K: FiniteField, A):
    """``A A^φ ... A^{φ^(e-1)}``: the K-linear matrix of F^e in coordinates."""
    r = len(A)
    B = linalg.mat_identity(K, r)
    for i in range(K.n):
        B = linalg.mat_mul(B, linalg.mat_map(A, lambda c, i=i: frobenius_power(c, i)), K)
    return B


def matrix_order(K: FiniteField, B, bound: int | None = None) -> int:
    """Multiplicative order of an invertible matrix over K."""
    if not B:
        return 1
    return linalg.fp_matrix_order(_fp_block(K, B), K.p, bound)


def _separable_part(T: SkewPoly):
    v = T.valuation()
    return SkewPoly(T.base, T.coeffs[v:]), v


def splitting_degree(T: SkewPoly) -> int:
    """Least k such that all roots of ``to_additive(T)`` lie in F_{q^k}."""
    S, _ = _separable_part(T.monic())
    n = S.degree
    if n <= 0:
        return 1
    K = S.base
    # companion relation X^φ = C X for X = (x, x^p, ..., x^(p^(n-1)))
    C = linalg.mat_zero(K, n, n)
    for i in range(n - 1):
        C[i][i + 1] = K.one
    for j in range(n):
        C[n - 1][j] = -S.coeffs[j]
    A = linalg.mat_inverse(C, K)
    return matrix_order(K, frobenius_norm_matrix(K, A))


def kernel_in(P: AdditivePoly, L: FiniteField) -> np.ndarray:
    """F_p-basis (columns) of the roots of ``P`` inside ``L``."""
    return linalg.fp_nullspace(P.linear_matrix(L), L.p)


def count_roots(T: SkewPoly, k: int) -> int:
    """Number of distinct roots of ``to_additive(T)`` in F_{q^k}."""
    L = extension(T.base, k)
    return L.p ** kernel_in(to_additive(T), L).shape[1]


def roots_of_additive(T: SkewPoly, max_degree: int | None = None) -> RootSet:
    """All roots of ``to_additive(T)`` in its splitting field over the base.

    Raises :class:`RootSearchError` (with the count found in the largest
    admissible subextension) if the splitting degree exceeds ``max_degree``.
    """
    K = T.base
    if not isinstance(K, FiniteField):
        raise SkewPolyError("roots_of_additive needs a finite-field base")
    if T.is_zero():
        raise SkewPolyError("the zero polynomial vanishes everywhere")
    T = T.monic()
    if max_degree is None:
        max_degree = MAX_DEGREE // K.n
    k = splitting_degree(T)
    if k > max_degree:
        reach = math.gcd(k, max_degree)
        partial = count_roots(T, reach)
        raise RootSearchError(
            f"splitting degree {k} exceeds max_degree={max_degree}; "
            f"{partial} roots found in the degree-{max_degree} extension",
            degree_reached=max_degree,
            partial_count=partial,
            splitting_degree=k,
        )
    L = extension(K, k)
    S, v = _separable_part(T)
    basis = kernel_in(to_additive(S), L)
    if basis.shape[1] != S.degree:  # pragma: no cover - guarded by Lang's theorem
        raise AssertionError(f"expected {S.degree}-dimensional root space, got {basis.shape[1]}")
    basis_elems = [frobenius_power(L.from_vec(basis[:, j]), -v) for j in range(basis.shape[1])]
    roots = None
    if L.p ** len(basis_elems) <= ENUMERATE_LIMIT:
        mat = np.array([b.coeffs for b in basis_elems], dtype=np.int64).reshape(len(basis_elems), L.n).T
        span = linalg.fp_enumerate_span(mat, L.p)
        roots = sorted((L.from_vec(row) for row in span), key=lambda z: z.coeffs)
    return RootSet(field=L, splitting_degree=k, basis=basis_elems, roots=roots, multiplicity=K.p ** v)
