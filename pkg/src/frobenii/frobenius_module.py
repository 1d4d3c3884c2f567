"""Finite-dimensional Frobenius modules over a finite field.

A module of rank r over K = F_q is given by an r x r matrix ``A``; the
Frobenius acts on coordinate columns by ``F(x) = A x^φ`` where ``x^φ``
raises every entry to the p-th power.  The linearisation φ*M -> M is the
matrix ``A`` itself, so unit modules are exactly those with ``A``
invertible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from . import linalg
from .finite_field import FieldError, FiniteField, embed, frobenius_power
from .skew_poly import SkewPoly


class ModuleError(ValueError):
    pass


def _twist_matrix(A, k=1):
    return [[frobenius_power(c, k) for c in row] for row in A]


class FrobModule:
    """``(K^r, x -> A x^φ)``."""

    __slots__ = ("base", "matrix")

    def __init__(self, base: FiniteField, matrix):
        rows = [list(r) for r in matrix]
        if any(len(r) != len(rows) for r in rows):
            raise ModuleError("Frobenius matrix must be square")
        self.base = base
        self.matrix = tuple(tuple(base(c) for c in r) for r in rows)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def A(self):
        return [list(r) for r in self.matrix]

    def frobenius(self, x):
        """``F(x) = A x^φ`` for a coordinate column over K or an extension."""
        if not x:
            return []
        L = x[0].field
        if L == self.base:
            A = self.matrix
        else:
            iota = embed(self.base, L)
            A = [[iota(c) for c in row] for row in self.matrix]
        xp = [frobenius_power(c, 1) for c in x]
        return [sum((A[i][j] * xp[j] for j in range(self.rank)), L.zero) for i in range(self.rank)]

    def apply(self, T: SkewPoly, x):
        """``T . x = sum a_i F^i(x)``."""
        if not x:
            return []
        L = x[0].field
        iota = embed(self.base, L) if L != self.base else (lambda c: c)
        acc = [L.zero] * self.rank
        cur = list(x)
        for i, a in enumerate(T.coeffs):
            if i:
                cur = self.frobenius(cur)
            if not a.is_zero():
                ai = iota(a)
                acc = [s + ai * c for s, c in zip(acc, cur)]
        return acc

    def __eq__(self, other):
        return isinstance(other, FrobModule) and self.base == other.base and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.base, tuple(tuple(c.coeffs for c in r) for r in self.matrix)))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(c) for c in r) + "]" for r in self.matrix)
        return f"FrobModule({self.base.spec}, [{rows}])"

    def direct_sum(self, other: "FrobModule") -> "FrobModule":
        K = self.base
        r, s = self.rank, other.rank
        A = linalg.mat_zero(K, r + s, r + s)
        for i in range(r):
            for j in range(r):
                A[i][j] = self.matrix[i][j]
        for i in range(s):
            for j in range(s):
                A[r + i][r + j] = other.matrix[i][j]
        return FrobModule(K, A)

    def change_basis(self, P) -> "FrobModule":
        """The same module in the basis given by the columns of ``P``.

        With ``x = P y``: ``y -> P^{-1} A P^φ y^φ``.
        """
        K = self.base
        P = [[K(c) for c in row] for row in P]
        try:
            Pinv = linalg.mat_inverse(P, K)
        except ZeroDivisionError:
            raise ModuleError("change of basis matrix is singular") from None
        return FrobModule(K, linalg.mat_mul(linalg.mat_mul(Pinv, self.A, K), _twist_matrix(P), K))


def make_module(base: FiniteField, A) -> FrobModule:
    return FrobModule(base, A)


def zero_module(base: FiniteField) -> FrobModule:
    return FrobModule(base, [])


def is_unit(M: FrobModule) -> bool:
    return linalg.mat_is_invertible(M.A, M.base) if M.rank else True


def twist(M: FrobModule) -> FrobModule:
    """φ*M, whose matrix is ``A^φ``."""
    return FrobModule(M.base, _twist_matrix(M.A))


def random_module(K: FiniteField, rank: int, rng: random.Random, unit: bool = True) -> FrobModule:
    while True:
        A = [[K.random(rng) for _ in range(rank)] for _ in range(rank)]
        if not unit or rank == 0 or linalg.mat_is_invertible(A, K):
            return FrobModule(K, A)


# --------------------------------------------------------------------------
# unitalization
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistMapData:
    """A K-module ``K^r`` with a K-linear map ``f: N -> φ*N`` (matrix ``f``)."""

    base: FiniteField
    f: tuple

    def __init__(self, base, f):
        object.__setattr__(self, "base", base)
        rows = tuple(tuple(base(c) for c in r) for r in f)
        if any(len(r) != len(rows) for r in rows):
            raise ModuleError("structure map must be square")
        object.__setattr__(self, "f", rows)

    @property
    def rank(self):
        return len(self.f)


@dataclass
class Unitalization:
    module: FrobModule
    structure_map: list  # s x r matrix N -> U
    stage: int  # the colimit is realised inside (φ*)^stage N


def unitalize(data: TwistMapData) -> Unitalization:
    """The unit module ``colim(N -> φ*N -> (φ*)^2 N -> ...)``.

    The colimit is the image of the composite ``f_k`` at the first stage
    ``k`` where the ranks stop dropping; the Frobenius there sends a class
    represented by ``y`` at stage k to ``y^φ`` at stage k+1, which is pulled
    back along the (now injective) transition map.
    """
    K = data.base
    r = data.rank
    f = [list(row) for row in data.f]
    if r == 0:
        return Unitalization(zero_module(K), [], 0)
    comp = linalg.mat_identity(K, r)  # f_0
    ranks = [r]
    k = 0
    while True:
        nxt = linalg.mat_mul(_twist_matrix(f, k), comp, K)
        ranks.append(linalg.mat_rank(nxt, K))
        if ranks[-1] == ranks[-2]:
            break
        comp = nxt
        k += 1
    s = ranks[-1]
    if s == 0:
        return Unitalization(zero_module(K), linalg.mat_zero(K, 0, r), k)
    cols = linalg.mat_column_basis(linalg.mat_transpose(comp), K)
    W = linalg.mat_transpose(cols)  # r x s
    G = linalg.mat_mul(_twist_matrix(f, k), W, K)
    AU = linalg.mat_solve(G, _twist_matrix(W), K)
    if AU is None:  # pragma: no cover - ruled out by the stabilisation argument
        raise AssertionError("Frobenius does not preserve the stable image")
    S = linalg.mat_solve(W, comp, K)
    return Unitalization(FrobModule(K, AU), S, k)


def unit_part(M: FrobModule):
    """Maximal unit quotient, realised as the stable image of F.

    Returns ``(U, W)`` with ``W`` (r x s) spanning the stable image.
    """
    K = M.base
    r = M.rank
    if r == 0:
        return M, []
    comp = linalg.mat_identity(K, r)
    for k in range(r):
        comp = linalg.mat_mul(comp, _twist_matrix(M.A, k), K)
    cols = linalg.mat_column_basis(linalg.mat_transpose(comp), K)
    if not cols:
        return zero_module(K), []
    W = linalg.mat_transpose(cols)
    AW = linalg.mat_mul(M.A, _twist_matrix(W), K)
    AU = linalg.mat_solve(W, AW, K)
    return FrobModule(K, AU), W


# --------------------------------------------------------------------------
# annihilators
# --------------------------------------------------------------------------


@dataclass
class AnnihilatorWitness:
    x: list
    T: SkewPoly

    @property
    def degree(self):
        return self.T.degree


def min_annihilator(M: FrobModule, x) -> AnnihilatorWitness:
    """Least-degree monic ``T`` with ``T . x = 0``."""
    K = M.base
    x = [K(c) for c in x]
    if len(x) != M.rank:
        raise ModuleError(f"vector of length {len(x)} for a rank-{M.rank} module")
    orbit = [x]
    while True:
        nxt = M.frobenius(orbit[-1]) if orbit[-1] else []
        cols = orbit
        if not orbit[0] or all(c.is_zero() for c in orbit[0]):
            return AnnihilatorWitness(x, SkewPoly(K, [K.one]))
        mat = linalg.mat_transpose(cols)
        if linalg.mat_rank(mat, K) < len(cols):  # pragma: no cover - caught one step earlier
            raise AssertionError("orbit became dependent unexpectedly")
        sol = linalg.mat_solve(mat, [[c] for c in nxt], K)
        if sol is not None:
            coeffs = [-row[0] for row in sol] + [K.one]
            return AnnihilatorWitness(x, SkewPoly(K, coeffs))
        orbit.append(nxt)


# --------------------------------------------------------------------------
# Hom spaces
# --------------------------------------------------------------------------


def _residual_hom(H, M, N, K):
    left = linalg.mat_mul(H, M.A, K)
    right = linalg.mat_mul(N.A, _twist_matrix(H), K)
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(left, right)]


def _mat_fp(Hm):
    return np.array([c for row in Hm for x in row for c in x.coeffs], dtype=np.int64)


def hom_space(M: FrobModule, N: FrobModule):
    """F_p-basis of the R[F]-linear maps ``M -> N`` (matrices ``H`` with ``H A_M = A_N H^φ``)."""
    if M.base != N.base:
        raise FieldError("modules live over different fields")
    K = M.base
    rM, rN = M.rank, N.rank
    if rM == 0 or rN == 0:
        return []
    e = K.n
    cols = []
    for i in range(rN):
        for j in range(rM):
            for l in range(e):
                H = linalg.mat_zero(K, rN, rM)
                H[i][j] = K(tuple(1 if t == l else 0 for t in range(e)))
                cols.append(_mat_fp(_residual_hom(H, M, N, K)))
    mat = np.array(cols, dtype=np.int64).T
    kern = linalg.fp_nullspace(mat, K.p)
    out = []
    for c in range(kern.shape[1]):
        v = kern[:, c]
        H = [[K(tuple(int(t) for t in v[(i * rM + j) * e:(i * rM + j + 1) * e])) for j in range(rM)] for i in range(rN)]
        out.append(H)
    return out


def is_module_map(H, M: FrobModule, N: FrobModule) -> bool:
    return all(c.is_zero() for row in _residual_hom(H, M, N, M.base) for c in row)


def combine(basis, coeffs, field):
    """``sum c_i * basis_i`` for F_p-coefficients ``c_i``."""
    rows = len(basis[0])
    cols = len(basis[0][0])
    out = linalg.mat_zero(field, rows, cols)
    for c, B in zip(coeffs, basis):
        if c:
            out = [[o + int(c) * b for o, b in zip(ro, rb)] for ro, rb in zip(out, B)]
    return out


def find_invertible(basis, field, rng: random.Random | None = None, tries: int = 200, exhaustive_limit: int = 1 << 14):
    """An invertible F_p-combination of square matrices, or ``None``.

    Random combinations are tried first; small spaces are then searched
    exhaustively so that ``None`` is a proof of absence there.
    """
    if not basis:
        return None
    n = len(basis[0])
    if n != len(basis[0][0]):
        return None
    rng = rng or random.Random(0)
    p = field.p
    for _ in range(tries):
        coeffs = [rng.randrange(p) for _ in basis]
        H = combine(basis, coeffs, field)
        if linalg.mat_is_invertible(H, field):
            return H
    if p ** len(basis) <= exhaustive_limit:
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            H = combine(basis, coeffs, field)
            if linalg.mat_is_invertible(H, field):
                return H
    return None


def find_isomorphism(M: FrobModule, N: FrobModule, rng: random.Random | None = None):
    """An invertible R[F]-map ``M -> N`` (matrix), or ``None``."""
    if M.rank != N.rank:
        return None
    if M.rank == 0:
        return []
    return find_invertible(hom_space(M, N), M.base, rng)


def equalizer_basis(data: TwistMapData, P: FrobModule):
    """F_p-basis of ``{v : v = A_P v^φ f}`` inside Hom_K(N, P)."""
    K = data.base
    rN, rP = data.rank, P.rank
    if rN == 0 or rP == 0:
        return []
    e = K.n
    f = [list(r) for r in data.f]
    cols = []
    for i in range(rP):
        for j in range(rN):
            for l in range(e):
                v = linalg.mat_zero(K, rP, rN)
                v[i][j] = K(tuple(1 if t == l else 0 for t in range(e)))
                rhs = linalg.mat_mul(linalg.mat_mul(P.A, _twist_matrix(v), K), f, K)
                cols.append(_mat_fp([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(v, rhs)]))
    kern = linalg.fp_nullspace(np.array(cols, dtype=np.int64).T, K.p)
    out = []
    for c in range(kern.shape[1]):
        vv = kern[:, c]
        out.append([[K(tuple(int(t) for t in vv[(i * rN + j) * e:(i * rN + j + 1) * e])) for j in range(rN)] for i in range(rP)])
    return out
