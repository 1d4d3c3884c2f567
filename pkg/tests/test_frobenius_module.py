import itertools
import random

import pytest
from hypothesis import given, strategies as st

from frobenii import linalg
from frobenii.finite_field import make_field
from frobenii.frobenius_module import (
    FrobModule,
    ModuleError,
    TwistMapData,
    equalizer_basis,
    find_isomorphism,
    hom_space,
    is_module_map,
    is_unit,
    make_module,
    min_annihilator,
    random_module,
    twist,
    unit_part,
    unitalize,
)
from frobenii.skew_poly import SkewPoly

F2, F4 = make_field(2, 1), make_field(2, 2)
u = F4.gen


def all_matrices(K, rows, cols):
    els = list(K.elements())
    for entries in itertools.product(els, repeat=rows * cols):
        yield [list(entries[i * cols:(i + 1) * cols]) for i in range(rows)]


def brute_hom_count(M, N):
    return sum(1 for H in all_matrices(M.base, N.rank, M.rank) if is_module_map(H, M, N))


def test_constant_module_frobenius():
    M = make_module(F4, [[1, 0], [0, 1]])
    assert M.frobenius([u, u + 1]) == [u ** 2, (u + 1) ** 2]


def test_zero_structure_map():
    M = make_module(F4, [[0]])
    assert M.frobenius([u]) == [F4.zero]
    assert not is_unit(M)


def test_unit_detection():
    assert is_unit(make_module(F4, [[u]]))
    assert is_unit(make_module(F2, [[1, 0], [0, 1]]))
    assert not is_unit(make_module(F2, [[1, 1], [0, 0]]))


def test_twist_examples():
    K3 = make_field(3, 1)
    assert twist(make_module(K3, [[1, 2], [0, 1]])).matrix == make_module(K3, [[1, 2], [0, 1]]).matrix
    assert twist(make_module(F4, [[u]])).A == [[u + 1]]
    assert twist(twist(make_module(F4, [[u]]))).A == [[u]]


def test_unitalize_examples():
    assert unitalize(TwistMapData(F4, [[u]])).module.rank == 1
    assert unitalize(TwistMapData(F4, [[0]])).module.rank == 0
    res = unitalize(TwistMapData(F2, [[1, 0], [0, 0]]))
    assert res.module.rank == 1 and is_unit(res.module)


def test_annihilator_examples():
    K = make_field(3, 2)
    assert min_annihilator(make_module(K, [[1]]), [1]).T == SkewPoly.parse(K, "F-1")
    assert min_annihilator(make_module(F4, [[u]]), [1]).T == SkewPoly(F4, [u, 1])  # F + u in char 2
    assert min_annihilator(make_module(F4, [[u]]), [0]).T == SkewPoly(F4, [1])


def test_hom_examples():
    K = make_field(3, 2)
    assert len(hom_space(make_module(K, [[1]]), make_module(K, [[1]]))) == 1
    assert hom_space(make_module(F4, [[u]]), make_module(F4, [])) == []
    assert len(hom_space(make_module(F2, [[0]]), make_module(F2, [[1]]))) == 0


def test_rank_mismatch_is_rejected():
    with pytest.raises(ModuleError):
        min_annihilator(make_module(F4, [[u]]), [1, 0])


@pytest.mark.parametrize("K", [F2, F4])
def test_hom_space_matches_enumeration_rank_one_and_two(K):
    rng = random.Random(3)
    for _ in range(6):
        rM, rN = rng.randint(1, 2), rng.randint(1, 2)
        if K is F4 and rM * rN > 2:
            rN = 1
        M = random_module(K, rM, rng, unit=rng.random() < 0.6)
        N = random_module(K, rN, rng, unit=rng.random() < 0.6)
        basis = hom_space(M, N)
        assert K.p ** len(basis) == brute_hom_count(M, N)
        for H in basis:
            assert is_module_map(H, M, N)


def test_unitalization_of_unit_module_is_itself():
    rng = random.Random(11)
    for K in (F2, F4, make_field(3, 2)):
        for r in (1, 2, 3):
            M = random_module(K, r, rng)
            f = linalg.mat_inverse(M.A, K)
            U = unitalize(TwistMapData(K, f)).module
            assert find_isomorphism(U, M, rng) is not None


def test_equalizer_matches_hom_from_unitalization_exhaustive_small():
    rng = random.Random(5)
    for _ in range(8):
        f = [[F2(rng.randrange(2)) for _ in range(2)] for _ in range(2)]
        data = TwistMapData(F2, f)
        un = unitalize(data)
        P = random_module(F2, rng.randint(1, 2), rng, unit=False)
        assert len(equalizer_basis(data, P)) == len(hom_space(un.module, P))


@st.composite
def modules(draw, unit=None):
    K = draw(st.sampled_from([F2, F4, make_field(3, 1), make_field(3, 2), make_field(2, 3)]))
    r = draw(st.integers(1, 3))
    seed = draw(st.integers(0, 10 ** 6))
    is_u = draw(st.booleans()) if unit is None else unit
    return random_module(K, r, random.Random(seed), unit=is_u)


@given(modules(), st.integers(0, 10 ** 6))
def test_frobenius_is_semilinear(M, seed):
    rng = random.Random(seed)
    K = M.base
    x = [K.random(rng) for _ in range(M.rank)]
    y = [K.random(rng) for _ in range(M.rank)]
    c = K.random(rng)
    lhs = M.frobenius([a + c * b for a, b in zip(x, y)])
    rhs = [a + c ** K.p * b for a, b in zip(M.frobenius(x), M.frobenius(y))]
    assert lhs == rhs


@given(modules(), st.integers(0, 10 ** 6))
def test_annihilator_kills_vector_and_is_minimal(M, seed):
    rng = random.Random(seed)
    K = M.base
    x = [K.random(rng) for _ in range(M.rank)]
    w = min_annihilator(M, x)
    assert all(c.is_zero() for c in M.apply(w.T, x))
    assert w.T.is_monic() and w.degree <= M.rank


@given(modules(), st.integers(0, 10 ** 6))
def test_change_of_basis_gives_isomorphic_module(M, seed):
    rng = random.Random(seed)
    K = M.base
    while True:
        P = [[K.random(rng) for _ in range(M.rank)] for _ in range(M.rank)]
        if linalg.mat_is_invertible(P, K):
            break
    N = M.change_basis(P)
    H = linalg.mat_inverse(P, K)
    assert is_module_map(H, M, N)


@given(modules(unit=False))
def test_unit_part_is_unit_and_stable(M):
    U, W = unit_part(M)
    assert is_unit(U)
    assert U.rank <= M.rank
    # the stable image is preserved by the Frobenius
    if U.rank:
        K = M.base
        img = [M.frobenius([row[j] for row in W]) for j in range(U.rank)]
        span = linalg.mat_rank([list(r) + [c[i] for c in img] for i, r in enumerate(W)], K)
        assert span == U.rank


@given(modules(unit=False))
def test_unitalization_is_unit(M):
    un = unitalize(TwistMapData(M.base, M.A))
    assert is_unit(un.module)
    assert un.stage <= M.rank


def test_frobmodule_repr_and_equality():
    M = FrobModule(F4, [[u]])
    assert M == make_module(F4, [[u]])
    assert "2:2" in repr(M)


def test_change_basis_accepts_integers_and_rejects_singular():
    M = make_module(F4, [[1, 0], [0, 1]])
    assert M.change_basis([[1, 0], [0, 1]]) == M
    with pytest.raises(ModuleError):
        M.change_basis([[1, 1], [1, 1]])
