"""Executable acceptance checks.

Each ``check_*`` function runs one criterion and returns a
:class:`CriterionResult`.  ``scale`` shrinks the random sample sizes (the
exhaustive parts always run in full); ``frh selftest`` uses a small scale,
the test suite uses 1.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .additive import roots_of_additive, to_additive
from .finite_field import embed, extension, frobenius_power, make_field
from .frobenius_module import (
    FrobModule,
    TwistMapData,
    find_isomorphism,
    is_module_map,
    is_unit,
    random_module,
    unitalize,
    unit_part,
)
from .rh_contravariant import algebra_from_etale, lang_solve, rh_cont_dual, sol_at
from .rh_covariant import (
    EtaleAlgebra,
    etale_algebra_to_module,
    fixed_points,
    random_rep,
    rep_isomorphism,
    rh_cov,
    rh_inv,
)
from .skew_poly import SkewPoly
from .witt import (
    ZZ,
    BigWitt,
    RationalWitt,
    _generate,
    _evaluate,
    frobenius_op,
    ghost_map,
    rational_to_big,
    verschiebung_op,
    witt_add,
    witt_mul,
    witt_neg,
    witt_one,
    witt_scale,
    witt_zero,
)

DEFAULT_SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name} ({self.seconds:.1f}s): {self.detail}"


def _n(count: int, scale: float) -> int:
    return max(1, int(round(count * scale)))


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _random_monic(K, n, rng):
    return SkewPoly(K, [K.random(rng) for _ in range(n)] + [K.one])


def _all_monic(K, n):
    elems = list(K.elements())
    for cs in itertools.product(elems, repeat=n):
        yield SkewPoly(K, list(cs) + [K.one])


def _check_root_set(T: SkewPoly):
    """Problems with the root set of T (empty list when it is correct)."""
    p = T.base.p
    rs = roots_of_additive(T)
    P = to_additive(T)
    problems = []
    if rs.count * rs.multiplicity != p ** T.degree:
        problems.append(f"{T}: {rs.count} roots x multiplicity {rs.multiplicity} != {p ** T.degree}")
    if not T.coeff(0).is_zero() and rs.count != p ** T.degree:
        problems.append(f"{T}: {rs.count} distinct roots for a separable polynomial")
    roots = rs.roots
    if roots is None:  # pragma: no cover - sizes here are always enumerable
        problems.append(f"{T}: roots not enumerated")
        return problems
    if len(set(roots)) != len(roots):
        problems.append(f"{T}: repeated roots in the enumeration")
    if any(not P(x).is_zero() for x in roots):
        problems.append(f"{T}: a returned element is not a root")
    root_set = set(roots)
    if any((a + b) not in root_set for a in roots[:8] for b in roots):
        problems.append(f"{T}: roots not closed under addition")
    return problems


@_timed
def check_root_count(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Additive polynomials of monic skew T of degree n have p^n roots forming an F_p-space."""
    rng = random.Random(seed)
    failures = []
    checked = 0
    for K in (make_field(2, 1), make_field(2, 2)):
        for n in range(0, 4):
            for T in _all_monic(K, n):
                failures += _check_root_set(T)
                checked += 1
    for K in (make_field(2, 3), make_field(3, 2)):
        for _ in range(_n(100, scale)):
            T = _random_monic(K, rng.randint(1, 4), rng)
            failures += _check_root_set(T)
            checked += 1
    return CriterionResult(1, "p^n root count", not failures, f"{checked} polynomials, {len(failures)} failures", failures=failures)


LANG_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


@_timed
def check_lang(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """F(x) - x = v is solvable within extension degree 4 * rank * [K:F_p]."""
    rng = random.Random(seed)
    failures = []
    worst = 0.0
    count = _n(100, scale)
    for _ in range(count):
        K = make_field(*rng.choice(LANG_FIELDS))
        r = rng.randint(1, 4)
        M = random_module(K, r, rng, unit=False)
        v = [K.random(rng) for _ in range(r)]
        bound = 4 * r * K.n
        x, m = lang_solve(M, v, max_degree=max(bound, 64))
        L = x[0].field
        lhs = [a - b for a, b in zip(M.frobenius(x), x)]
        iota = embed(K, L)
        if lhs != [iota(c) for c in v]:
            failures.append(f"{M!r}, v={list(map(str, v))}: wrong solution")
        worst = max(worst, m / bound)
        if m > bound:
            failures.append(f"q={K.order}, rank {r}: solution needs degree {m} > bound {bound}")
    return CriterionResult(
        2, "Lang surjectivity within degree 4*rank*n", not failures,
        f"{count} pairs, worst degree/bound ratio {worst:.2f}, {len(failures)} failures", failures=failures,
    )


ROUND_TRIP_FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]


@_timed
def check_round_trip(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """rh_inv(rh_cov(M)) is isomorphic to M and rh_cov(rh_inv(V)) is conjugate to V."""
    rng = random.Random(seed)
    failures = []
    count = _n(100, scale)
    for _ in range(count):
        K = make_field(*rng.choice(ROUND_TRIP_FIELDS))
        M = random_module(K, rng.randint(1, 4), rng, unit=True)
        V = rh_cov(M, require_unit=True)
        if V.dim != M.rank:
            failures.append(f"{M!r}: rh_cov has dimension {V.dim}")
            continue
        M2 = rh_inv(V)
        H = find_isomorphism(M2, M, rng)
        if H is None or not is_module_map(H, M2, M) or not linalg.mat_is_invertible(H, K):
            failures.append(f"{M!r}: no isomorphism with rh_inv(rh_cov(M))")
    for _ in range(count):
        K = make_field(*rng.choice(ROUND_TRIP_FIELDS))
        V = random_rep(K, rng.randint(1, 4), rng)
        W = rh_cov(rh_inv(V))
        P = rep_isomorphism(W, V, rng)
        if P is None or not np.array_equal(P @ W.matrix % K.p, V.matrix @ P % K.p):
            failures.append(f"{V!r}: rh_cov(rh_inv(V)) not conjugate to V")
    return CriterionResult(3, "module and representation round trip", not failures, f"{count} modules + {count} representations, {len(failures)} failures", failures=failures)


def _all_matrices(K, rows, cols):
    elems = list(K.elements())
    for entries in itertools.product(elems, repeat=rows * cols):
        yield [list(entries[i * cols:(i + 1) * cols]) for i in range(rows)]


def _key(mat):
    return tuple(tuple(c.coeffs for c in row) for row in mat)


@_timed
def check_unitalization(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Hom(N^unit, P) -> equalizer in Hom(N, P), h -> h S, is a bijection (exhaustive over F_2)."""
    K = make_field(2, 1)
    failures = []
    pairs = 0
    for rN in range(3):
        for f in _all_matrices(K, rN, rN):
            data = TwistMapData(K, f)
            un = unitalize(data)
            U, S = un.module, un.structure_map
            if not is_unit(U):
                failures.append(f"f={_key(f)}: unitalization is not unit")
            for rP in range(3):
                for AP in _all_matrices(K, rP, rP):
                    P = FrobModule(K, AP)
                    pairs += 1
                    eq = set()
                    for v in _all_matrices(K, rP, rN):
                        rhs = linalg.mat_mul(linalg.mat_mul(P.A, [[frobenius_power(c, 1) for c in row] for row in v], K), f, K) if rN and rP else v
                        if _key(rhs) == _key(v):
                            eq.add(_key(v))
                    images = []
                    for h in _all_matrices(K, rP, U.rank):
                        if rP and U.rank and not is_module_map(h, U, P):
                            continue
                        images.append(_key(linalg.mat_mul(h, S, K)) if rP and U.rank and rN else _key(linalg.mat_zero(K, rP, rN)))
                    if len(set(images)) != len(images) or set(images) != eq:
                        failures.append(f"f={_key(f)}, A_P={_key(AP)}: {len(images)} maps vs equalizer of size {len(eq)}")
    return CriterionResult(4, "unitalization universal property", not failures, f"{pairs} (N, P) pairs, {len(failures)} failures", failures=failures)


def _partitions(total):
    """Multisets of positive degrees summing to at most ``total``."""
    out = []

    def rec(remaining, maxpart, acc):
        if acc:
            out.append(tuple(acc))
        for d in range(min(remaining, maxpart), 0, -1):
            rec(remaining - d, d, acc + [d])

    rec(total, total, [])
    return out


@_timed
def check_etale_agreement(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """dim sol_at(rh_cont_dual(B), k) = #Hom_alg(B, F_{q^k}) and rh_cont_dual(B) ~ etale_algebra_to_module(B)."""
    rng = random.Random(seed)
    failures = []
    count_fail = 0
    iso_fail = 0
    cases = 0
    for K in (make_field(2, 1), make_field(2, 2)):
        for factors in _partitions(4):
            B = EtaleAlgebra(K, factors)
            U = rh_cont_dual(algebra_from_etale(B))
            Me = etale_algebra_to_module(B)
            if find_isomorphism(U, Me, rng) is None:
                iso_fail += 1
                failures.append(f"{K.spec} {factors}: dual not isomorphic to the covariant module")
            for k in range(1, 7):
                cases += 1
                dim = sol_at(U, k).dim
                homs = B.hom_count(k)
                if dim != homs:
                    count_fail += 1
                    failures.append(f"{K.spec} {factors}, k={k}: sol dimension {dim} vs {homs} algebra maps")
    return CriterionResult(
        5, "covariant/contravariant agreement on etale algebras", not failures,
        f"{cases} (B, k) cases: {count_fail} point-count mismatches, {iso_fail} non-isomorphic", failures=failures,
    )


@_timed
def check_additive_classification(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Additive polynomial maps of degree < 16 over F_2 are p-polynomials; degree <= 3 skew
    polynomials over F_4 are separated by their additive maps on F_{4^12}."""
    failures = []
    L = make_field(2, 6)
    elems = list(L.elements())
    basis = [L.from_vec(np.eye(6, dtype=np.int64)[i]) for i in range(6)]
    # additivity defect of each monomial x^j as a bitmask over all x in L
    defects = []
    for j in range(16):
        vals = [x ** j if j else L.one for x in elems]
        bvals = [b ** j if j else L.one for b in basis]
        mask = 0
        for idx, x in enumerate(elems):
            lin = L.zero
            for i, c in enumerate(x.coeffs):
                if c:
                    lin = lin + bvals[i]
            d = vals[idx] - lin
            for t, c in enumerate(d.coeffs):
                if c:
                    mask |= 1 << (idx * 6 + t)
        defects.append(mask)
    additive = []
    for bits in range(1 << 16):
        acc = 0
        b, j = bits, 0
        while b:
            if b & 1:
                acc ^= defects[j]
            b >>= 1
            j += 1
        if acc == 0:
            additive.append(bits)
    p_polys = {sum(1 << e for e, keep in zip((1, 2, 4, 8), sel) if keep) for sel in itertools.product((0, 1), repeat=4)}
    if set(additive) != p_polys:
        extra = sorted(set(additive) - p_polys)
        failures.append(f"{len(additive)} additive maps, non-p-polynomial examples {extra[:4]}")
    K = make_field(2, 2)
    L12 = extension(K, 12)
    seen = {}
    total = 0
    for deg in range(-1, 4):
        for cs in itertools.product(list(K.elements()), repeat=deg + 1):
            if deg >= 0 and cs[-1].is_zero():
                continue
            T = SkewPoly(K, cs)
            total += 1
            mat = to_additive(T).linear_matrix(L12)
            key = mat.tobytes()
            if key in seen:
                failures.append(f"{T} and {seen[key]} define the same map")
            seen[key] = T
    return CriterionResult(
        6, "degree-0 shadow of additive-polynomial classification", not failures,
        f"{len(additive)} additive maps among 65536 polynomials; {total} skew polynomials separated", failures=failures,
    )


def _rand_witt(ring, N, rng, lo=-4, hi=4):
    return BigWitt(ring, [rng.randint(lo, hi) for _ in range(N)])


WITT_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]


@_timed
def check_witt(scale: float = 1.0, seed: int = DEFAULT_SEED, cache_dir=None) -> CriterionResult:
    """Witt ring laws, integral universal polynomials, F_n V_n = n, rational Witt maps."""
    rng = random.Random(seed)
    failures = []
    count = _n(500, scale)
    for _ in range(count):
        N = rng.randint(1, 12)
        a, b, c = (_rand_witt(ZZ, N, rng) for _ in range(3))
        ga, gb, gc = (ghost_map(x).values for x in (a, b, c))
        ab = witt_mul(a, b)
        if ghost_map(witt_add(a, b)).values != tuple(x + y for x, y in zip(ga, gb)):
            failures.append(f"ghost not additive at N={N}")
        if ghost_map(ab).values != tuple(x * y for x, y in zip(ga, gb)):
            failures.append(f"ghost not multiplicative at N={N}")
        if ab != witt_mul(b, a):
            failures.append(f"product not commutative at N={N}")
        if witt_mul(ab, c) != witt_mul(a, witt_mul(b, c)):
            failures.append(f"product not associative at N={N}")
        if witt_mul(a, witt_add(b, c)) != witt_add(ab, witt_mul(a, c)):
            failures.append(f"product not distributive at N={N}")
        if witt_mul(a, witt_one(ZZ, N)) != a or witt_add(a, witt_neg(a)) != witt_zero(ZZ, N):
            failures.append(f"unit or negation wrong at N={N}")
        if N <= 8:
            polys = _generate("mul", N)[1]
            vals = list(a.coeffs) + list(b.coeffs)
            if [_evaluate(P, vals, ZZ) for P in polys] != list(ab.coeffs):
                failures.append(f"universal product disagrees with the ghost route at N={N}")
    integral = 0
    for N in range(1, 9):
        for op in ["mul"] + [f"frobenius_{n}" for n in range(2, N + 1)]:
            try:
                polys = _generate(op, N)[1]
            except AssertionError as exc:
                failures.append(f"{op} at N={N}: {exc}")
                continue
            if not all(isinstance(v, int) for P in polys for v in P.values()):
                failures.append(f"{op} at N={N}: non-integer coefficient")
            integral += 1
    for n in range(1, 5):
        for _ in range(_n(25, scale)):
            N = rng.randint(n, 12)
            a = _rand_witt(ZZ, N, rng)
            lhs = frobenius_op(n, verschiebung_op(n, a))
            rhs = BigWitt(ZZ, witt_scale(n, a).coeffs[:N // n])
            if lhs != rhs:
                failures.append(f"F_{n} V_{n} != {n} over Z at N={N}")
            K = make_field(*rng.choice(WITT_FIELDS))
            Nq = rng.randint(n, 8)
            aq = BigWitt(K, [K.random(rng) for _ in range(Nq)])
            lhs = frobenius_op(n, verschiebung_op(n, aq), cache_dir=cache_dir)
            rhs = BigWitt(K, witt_scale(n, aq).coeffs[:Nq // n])
            if lhs != rhs:
                failures.append(f"F_{n} V_{n} != {n} over {K.spec} at N={Nq}")
    rcount = _n(200, scale)
    for _ in range(rcount):
        K = make_field(*rng.choice(WITT_FIELDS))
        N = rng.randint(1, 10)

        def poly():
            return [K.one] + [K.random(rng) for _ in range(rng.randint(0, 4))]

        f, g, h, f2, g2 = poly(), poly(), poly(), poly(), poly()
        r1, r2 = RationalWitt(K, f, g), RationalWitt(K, f2, g2)
        if rational_to_big(r1 * r2, N) != witt_add(rational_to_big(r1, N), rational_to_big(r2, N)):
            failures.append(f"rational_to_big not a homomorphism over {K.spec}")
        if rational_to_big(r1 * RationalWitt(K, h, h), N) != rational_to_big(r1, N):
            failures.append(f"cancellation fails over {K.spec}")
    return CriterionResult(
        7, "Witt ring laws", not failures,
        f"{count} triples over Z, {integral} integral polynomial families, {rcount} rational cases, {len(failures)} failures",
        failures=failures,
    )


RIGIDITY_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)]


@_timed
def check_rigidity(scale: float = 1.0, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Solution counts over F_{q^k}, k | 12, are monotone under divisibility and stable once stabilised."""
    rng = random.Random(seed)
    failures = []
    count = _n(100, scale)
    divisors = [1, 2, 3, 4, 6, 12]
    for _ in range(count):
        K = make_field(*rng.choice(RIGIDITY_FIELDS))
        M = random_module(K, rng.randint(1, 4), rng, unit=rng.random() < 0.5)
        dims = {k: sol_at(M, k).dim for k in divisors}
        if any(fixed_points(M, k).dim != dims[k] for k in (1, 12)):
            failures.append(f"{M!r}: sol and fixed points disagree")
        stable = unit_part(M)[0].rank
        for k1 in divisors:
            if dims[k1] > stable:
                failures.append(f"{M!r}: dimension {dims[k1]} at k={k1} exceeds {stable}")
            for k2 in divisors:
                if k2 % k1 == 0:
                    if dims[k1] > dims[k2]:
                        failures.append(f"{M!r}: dimension drops from k={k1} to k={k2}")
                    if dims[k1] == stable and dims[k2] != stable:
                        failures.append(f"{M!r}: dimension changes after stabilising at k={k1}")
    return CriterionResult(8, "rigidity and stability of solution counts", not failures, f"{count} modules, {len(failures)} failures", failures=failures)


ALL_CHECKS = [
    check_root_count,
    check_lang,
    check_round_trip,
    check_unitalization,
    check_etale_agreement,
    check_additive_classification,
    check_witt,
    check_rigidity,
]


def run_all(scale: float = 1.0, seed: int = DEFAULT_SEED, out=None):
    results = []
    for check in ALL_CHECKS:
        res = check(scale=scale, seed=seed)
        if out is not None:
            print(res.line(), file=out, flush=True)
        results.append(res)
    return results
