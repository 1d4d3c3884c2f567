"""Unit Frobenius modules over F_q versus finite Galois representations.

A Galois representation here is an F_p-space V with the matrix of the
arithmetic Frobenius x -> x^q.  ``rh_cov`` takes Frobenius fixed points
over a large enough extension; ``rh_inv`` undoes it by Galois descent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .finite_field import FiniteField, embed, extension, frobenius_power
from .frobenius_module import FrobModule, ModuleError, is_unit, unit_part, zero_module
from .additive import frobenius_norm_matrix, matrix_order

ENUMERATE_LIMIT = 1 << 12


@dataclass(frozen=True)
class GaloisRep:
    """``(F_p^d, Φ)`` over ``base``; Φ records the action of x -> x^q."""

    base: FiniteField
    frobenius: tuple

    def __init__(self, base, frobenius):
        p = base.p
        mat = tuple(tuple(int(c) % p for c in row) for row in frobenius)
        if any(len(r) != len(mat) for r in mat):
            raise ModuleError("Frobenius matrix must be square")
        if mat and linalg.fp_rank(np.array(mat, dtype=np.int64), p) < len(mat):
            raise ModuleError("Frobenius matrix must be invertible")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "frobenius", mat)

    @property
    def dim(self) -> int:
        return len(self.frobenius)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.frobenius, dtype=np.int64).reshape(self.dim, self.dim)

    def order(self) -> int:
        return linalg.fp_matrix_order(self.matrix, self.base.p) if self.dim else 1

    def direct_sum(self, other: "GaloisRep") -> "GaloisRep":
        d, e = self.dim, other.dim
        m = np.zeros((d + e, d + e), dtype=np.int64)
        m[:d, :d] = self.matrix
        m[d:, d:] = other.matrix
        return GaloisRep(self.base, m.tolist())


def random_rep(K: FiniteField, d: int, rng: random.Random) -> GaloisRep:
    p = K.p
    while True:
        m = np.array([[rng.randrange(p) for _ in range(d)] for _ in range(d)], dtype=np.int64)
        if d == 0 or linalg.fp_rank(m, p) == d:
            return GaloisRep(K, m.tolist())


def rep_isomorphism(V: GaloisRep, W: GaloisRep, rng: random.Random | None = None):
    """Invertible ``P`` over F_p with ``P Φ_V = Φ_W P``, or ``None``."""
    if V.base != W.base or V.dim != W.dim:
        return None
    d, p = V.dim, V.base.p
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    # unknown P flattened row-major: (P Φ_V)_{ij} - (Φ_W P)_{ij}
    eye = np.eye(d, dtype=np.int64)
    system = (np.kron(eye, V.matrix.T) - np.kron(W.matrix, eye)) % p
    kern = linalg.fp_nullspace(system, p)
    basis = [kern[:, c].reshape(d, d) for c in range(kern.shape[1])]
    rng = rng or random.Random(0)
    for _ in range(200):
        P = sum(rng.randrange(p) * b for b in basis) % p
        if linalg.fp_rank(P, p) == d:
            return P
    return None


# --------------------------------------------------------------------------
# F_p-coordinates for columns over an extension
# --------------------------------------------------------------------------


def column_to_fp(x) -> np.ndarray:
    return np.array([c for e in x for c in e.coeffs], dtype=np.int64)


def fp_to_column(L: FiniteField, v) -> list:
    n = L.n
    return [L.from_vec(v[i * n:(i + 1) * n]) for i in range(len(v) // n)]


def semilinear_operator(M: FrobModule, L: FiniteField) -> np.ndarray:
    """F_p-matrix of ``x -> A x^φ - x`` on ``L^r``."""
    r, n, p = M.rank, L.n, L.p
    iota = embed(M.base, L)
    fr = L.frobenius_matrix(1)
    out = np.zeros((r * n, r * n), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            a = M.matrix[i][j]
            if not a.is_zero():
                out[i * n:(i + 1) * n, j * n:(j + 1) * n] = L.mul_matrix(iota(a)) @ fr
        out[i * n:(i + 1) * n, i * n:(i + 1) * n] -= np.eye(n, dtype=np.int64)
    return out % p


@dataclass
class FixedPoints:
    field: FiniteField
    degree: int
    basis: list  # columns over ``field``
    elements: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return self.field.p ** self.dim


def _canonical_basis(kern: np.ndarray, p: int) -> np.ndarray:
    """Reduced echelon form of a column basis, so equal spaces give equal bases."""
    if kern.shape[1] == 0:
        return kern
    r, piv = linalg.fp_rref(kern.T, p)
    return r[:len(piv)].T


def fixed_points(M: FrobModule, k: int = 1) -> FixedPoints:
    """Solutions of ``A x^φ = x`` with coordinates in F_{q^k}."""
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    L = extension(M.base, k)
    if M.rank == 0:
        return FixedPoints(L, k, [], [[]])
    kern = _canonical_basis(linalg.fp_nullspace(semilinear_operator(M, L), L.p), L.p)
    basis = [fp_to_column(L, kern[:, c]) for c in range(kern.shape[1])]
    elements = None
    if L.p ** len(basis) <= ENUMERATE_LIMIT:
        span = linalg.fp_enumerate_span(kern, L.p)
        elements = sorted((fp_to_column(L, row) for row in span), key=lambda col: [e.coeffs for e in col])
    return FixedPoints(L, k, basis, elements)


def stabilizing_degree(M: FrobModule) -> int:
    """Least k with ``dim fixed_points(M, k) = rank M`` (M unit)."""
    if M.rank == 0:
        return 1
    return matrix_order(M.base, frobenius_norm_matrix(M.base, M.A))


@dataclass
class CovariantData:
    rep: GaloisRep
    field: FiniteField
    basis: list  # fixed-point columns realising V inside M ⊗ field
    module: FrobModule  # the unit module actually used


def rh_cov_data(M: FrobModule, require_unit: bool = False) -> CovariantData:
    K = M.base
    if not is_unit(M):
        if require_unit:
            raise ModuleError("module is not unit")
        M, _ = unit_part(M)
    k = stabilizing_degree(M)
    fp = fixed_points(M, k)
    L = fp.field
    d = fp.dim
    if d != M.rank:  # pragma: no cover - Lang's theorem
        raise AssertionError(f"fixed points have dimension {d}, expected {M.rank}")
    if d == 0:
        return CovariantData(GaloisRep(K, []), L, [], M)
    X = np.array([column_to_fp(x) for x in fp.basis], dtype=np.int64).T
    Xq = np.array([column_to_fp([frobenius_power(c, K.n) for c in x]) for x in fp.basis], dtype=np.int64).T
    Phi = linalg.fp_solve(X, Xq, L.p)
    return CovariantData(GaloisRep(K, Phi.tolist()), L, fp.basis, M)


def rh_cov(M: FrobModule, require_unit: bool = False) -> GaloisRep:
    """Galois representation on the Frobenius fixed points of ``M``.

    Non-unit modules are replaced by their maximal unit quotient unless
    ``require_unit`` is set, in which case they are rejected.
    """
    return rh_cov_data(M, require_unit).rep


def rh_inv(V: GaloisRep) -> FrobModule:
    """The unit module over ``V.base`` whose fixed points recover ``V``.

    The module is ``{y in F_{q^k}^d : Φ y^(q) = y}`` with the coordinatewise
    p-power as Frobenius, where ``k`` is the order of Φ.
    """
    K = V.base
    d = V.dim
    if d == 0:
        return zero_module(K)
    k = V.order()
    L = extension(K, k)
    n, p = L.n, L.p
    frq = L.frobenius_matrix(K.n)
    op = np.zeros((d * n, d * n), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            c = V.frobenius[i][j]
            if c:
                op[i * n:(i + 1) * n, j * n:(j + 1) * n] = c * frq
        op[i * n:(i + 1) * n, i * n:(i + 1) * n] -= np.eye(n, dtype=np.int64)
    kern = linalg.fp_nullspace(op % p, p)
    iota = embed(K, L)
    kappa = [L.mul_matrix(iota(K.from_vec(np.eye(K.n, dtype=np.int64)[l]))) for l in range(K.n)]

    def k_multiples(v):
        return [np.concatenate([kap @ v[i * n:(i + 1) * n] for i in range(d)]) % p for kap in kappa]

    chosen = []
    span = np.zeros((d * n, 0), dtype=np.int64)
    for c in range(kern.shape[1]):
        v = kern[:, c]
        if linalg.fp_in_span(span, v, p):
            continue
        chosen.append(v)
        span = np.concatenate([span, np.array(k_multiples(v)).T], axis=1)
        if len(chosen) == d:
            break
    if len(chosen) != d:  # pragma: no cover - Galois descent
        raise AssertionError("descent produced too few K-independent vectors")
    Y = [[fp_to_column(L, v)[i] for v in chosen] for i in range(d)]  # d x d over L
    Yphi = [[frobenius_power(c, 1) for c in row] for row in Y]
    A_L = linalg.mat_solve(Y, Yphi, L)
    A = [[iota.preimage(c) for c in row] for row in A_L]
    if any(c is None for row in A for c in row):  # pragma: no cover
        raise AssertionError("descended matrix is not defined over the base")
    return FrobModule(K, A)


# --------------------------------------------------------------------------
# étale algebras
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaleAlgebra:
    """``prod F_{q^{d_i}}`` over ``base``."""

    base: FiniteField
    factors: tuple

    def __init__(self, base, factors):
        fs = tuple(int(d) for d in factors)
        if any(d < 1 for d in fs):
            raise ValueError("factor degrees must be >= 1")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "factors", fs)

    @property
    def dim(self) -> int:
        return sum(self.factors)

    def hom_count(self, k: int) -> int:
        """Number of algebra maps into F_{q^k}."""
        return sum(d for d in self.factors if k % d == 0)


def factor_basis(K: FiniteField, d: int):
    """``(E, w, coords)``: E = F_{q^d}, K-basis 1, w, ..., w^(d-1) and a coordinate map."""
    E = extension(K, d)
    w = E.gen
    iota = embed(K, E)
    unit_vecs = np.eye(K.n, dtype=np.int64)
    powers = [E.one]
    for _ in range(1, d):
        powers.append(powers[-1] * w)
    cols = []
    for wj in powers:
        for l in range(K.n):
            cols.append((iota(K.from_vec(unit_vecs[l])) * wj).coeffs)
    basis = np.array(cols, dtype=np.int64).T
    inv = linalg.fp_inv(basis, K.p)

    def coords(x):
        v = inv @ np.array(x.coeffs, dtype=np.int64) % K.p
        return [K.from_vec(v[j * K.n:(j + 1) * K.n]) for j in range(d)]

    return E, powers, coords


def _factor_module(K: FiniteField, d: int) -> FrobModule:
    E, powers, coords = factor_basis(K, d)
    cols = [coords(frobenius_power(b, 1)) for b in powers]
    return FrobModule(K, linalg.mat_transpose(cols))


def etale_algebra_to_module(B: EtaleAlgebra) -> FrobModule:
    """B as a K-module with the p-power Frobenius, in product-of-power-bases coordinates."""
    K = B.base
    M = zero_module(K)
    for d in B.factors:
        M = M.direct_sum(_factor_module(K, d))
    return M
