"""Solutions of ``x = F(x)`` at field-valued points, Lang-type solving, and
the dual-Frobenius construction for finite algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .finite_field import MAX_DEGREE, FiniteField, embed, extension
from .frobenius_module import FrobModule, ModuleError, TwistMapData, unitalize
from .rh_covariant import EtaleAlgebra, column_to_fp, factor_basis, fixed_points, fp_to_column, semilinear_operator


class LangBoundError(RuntimeError):
    def __init__(self, message, degree_reached):
        super().__init__(message)
        self.degree_reached = degree_reached


@dataclass
class SolutionSet:
    degree: int
    field: FiniteField
    basis: list
    elements: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return self.field.p ** self.dim


def sol_at(M: FrobModule, k: int = 1) -> SolutionSet:
    """Kernel of ``x -> x - A x^φ`` over F_{q^k}."""
    fp = fixed_points(M, k)
    return SolutionSet(k, fp.field, fp.basis, fp.elements)


def lang_solve(M: FrobModule, v, max_degree: int | None = None):
    """``(x, m)`` with ``F(x) - x = v`` and x in F_{q^m}, m least among multiples of v's degree.

    ``v`` is a column over any extension F_{q^j} of the base.
    """
    K = M.base
    if len(v) != M.rank:
        raise ModuleError(f"vector of length {len(v)} for a rank-{M.rank} module")
    if max_degree is None:
        max_degree = MAX_DEGREE // K.n
    if M.rank == 0:
        return [], 1
    L0 = v[0].field
    if L0.p != K.p or L0.n % K.n:
        raise ModuleError("target vector does not live over an extension of the base")
    j = L0.n // K.n
    if all(c.is_zero() for c in v):
        return [K.zero] * M.rank if j == 1 else [L0.zero] * M.rank, j
    m = j
    while m <= max_degree:
        L = extension(K, m)
        iota = embed(L0, L)
        rhs = column_to_fp([iota(c) for c in v])
        sol = linalg.fp_solve(semilinear_operator(M, L), rhs, L.p)
        if sol is not None:
            return fp_to_column(L, sol), m
        m += j
    raise LangBoundError(f"no solution up to extension degree {max_degree}", m - j)


# --------------------------------------------------------------------------
# finite algebras
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAlgebra:
    """Commutative unital K-algebra with structure constants ``b_i b_j = sum mul[i][j][k] b_k``."""

    base: FiniteField
    mul: tuple

    def __init__(self, base, mul, validate=True):
        d = len(mul)
        m = tuple(tuple(tuple(base(c) for c in mul[i][j]) for j in range(d)) for i in range(d))
        if any(len(row) != d or any(len(c) != d for c in row) for row in m):
            raise ModuleError("structure constants must have shape d x d x d")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "mul", m)
        if validate:
            self.validate()

    @property
    def dim(self):
        return len(self.mul)

    def product(self, x, y):
        K, d = self.base, self.dim
        out = [K.zero] * d
        for i in range(d):
            if x[i].is_zero():
                continue
            for j in range(d):
                if y[j].is_zero():
                    continue
                c = x[i] * y[j]
                out = [o + c * s for o, s in zip(out, self.mul[i][j])]
        return out

    def basis_vector(self, i):
        K = self.base
        return [K.one if t == i else K.zero for t in range(self.dim)]

    def power(self, x, e):
        res = self.unit()
        while e:
            if e & 1:
                res = self.product(res, x)
            e >>= 1
            if e:
                x = self.product(x, x)
        return res

    def unit(self):
        """The identity element (solved from ``1 * b_j = b_j``)."""
        K, d = self.base, self.dim
        # sum_i e_i mul[i][j][k] = delta_jk : unknown e, d*d equations
        rows = [[self.mul[i][j][k] for i in range(d)] for j in range(d) for k in range(d)]
        rhs = [[K.one if j == k else K.zero] for j in range(d) for k in range(d)]
        sol = linalg.mat_solve(rows, rhs, K) if d else []
        if sol is None:
            raise ModuleError("algebra has no unit element")
        return [row[0] for row in sol]

    def validate(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                if self.mul[i][j] != self.mul[j][i]:
                    raise ModuleError(f"not commutative: b{i}*b{j} != b{j}*b{i}")
        basis = [self.basis_vector(i) for i in range(d)]
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = self.product(self.product(basis[i], basis[j]), basis[k])
            rhs = self.product(basis[i], self.product(basis[j], basis[k]))
            if lhs != rhs:
                raise ModuleError(f"not associative at (b{i}, b{j}, b{k})")
        if d:
            self.unit()

    def frobenius_matrix(self):
        """Matrix of the linearised Frobenius φ*B -> B (column j: coordinates of b_j^p)."""
        cols = [self.power(self.basis_vector(j), self.base.p) for j in range(self.dim)]
        return linalg.mat_transpose(cols) if cols else []

    def is_hom(self, images) -> bool:
        """Do the images of the basis define an algebra map into their field?"""
        L = images[0].field if images else None
        if L is None:
            return True
        iota = embed(self.base, L)
        d = self.dim
        one = self.unit()
        if sum((iota(c) * y for c, y in zip(one, images)), L.zero) != L.one:
            return False
        for i in range(d):
            for j in range(d):
                prod = sum((iota(c) * y for c, y in zip(self.mul[i][j], images)), L.zero)
                if prod != images[i] * images[j]:
                    return False
        return True


def algebra_from_etale(B: EtaleAlgebra) -> FiniteAlgebra:
    """Structure constants of ``prod F_{q^{d_i}}`` in product-of-power-bases coordinates."""
    K = B.base
    d = B.dim
    mul = [[[K.zero] * d for _ in range(d)] for _ in range(d)]
    off = 0
    for di in B.factors:
        E, powers, coords = factor_basis(K, di)
        for a in range(di):
            for b in range(di):
                c = coords(powers[a] * powers[b])
                for t in range(di):
                    mul[off + a][off + b][off + t] = c[t]
        off += di
    return FiniteAlgebra(K, mul, validate=False)


def truncated_polynomial_algebra(K: FiniteField, modulus) -> FiniteAlgebra:
    """``K[x]/(g)`` for a monic ``g`` given by its coefficients (low to high)."""
    g = [K(c) for c in modulus]
    d = len(g) - 1
    if d < 1 or not g[-1].is_one():
        raise ModuleError("modulus must be monic of positive degree")

    def reduce(poly):
        poly = list(poly)
        for i in range(len(poly) - 1, d - 1, -1):
            c = poly[i]
            if not c.is_zero():
                for t in range(d + 1):
                    poly[i - d + t] = poly[i - d + t] - c * g[t]
        return (poly + [K.zero] * d)[:d]

    mul = [[reduce([K.zero] * (i + j) + [K.one]) for j in range(d)] for i in range(d)]
    return FiniteAlgebra(K, mul, validate=False)


def count_homs(B: FiniteAlgebra, k: int) -> int:
    """``#Hom_alg(B, F_{q^k})`` by exhaustive search (small cases only)."""
    L = extension(B.base, k)
    return sum(1 for imgs in itertools.product(list(L.elements()), repeat=B.dim) if B.is_hom(list(imgs)))


def rh_cont_dual(B: FiniteAlgebra):
    """Unitalization of the K-dual of B under the transpose of its linearised Frobenius."""
    f = B.frobenius_matrix()
    ft = linalg.mat_transpose(f) if f else []
    return unitalize(TwistMapData(B.base, ft)).module
