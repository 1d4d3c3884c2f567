"""
Frobenius modules, unit parts and homomorphisms
===============================================

A module of rank r over F_q is a matrix A; the Frobenius acts on columns by
``x -> A x^p``.
"""

# %%
from frobenii import hom_space, is_unit, make_field, min_annihilator, unitalize
from frobenii.frobenius_module import TwistMapData, find_isomorphism, make_module

F2 = make_field(2, 1)
F4 = make_field(2, 2)
u = F4.gen

M = make_module(F4, [[u]])
print(M, "unit:", is_unit(M))
print("annihilator of 1:", min_annihilator(M, [1]).T)

# %%
# A structure map that is not invertible loses rank under iteration. The
# unitalization keeps the stable part.
N = TwistMapData(F2, [[1, 1], [0, 0]])
res = unitalize(N)
print("unitalized:", res.module, "at stage", res.stage)
print("structure map N -> U:", [[str(c) for c in row] for row in res.structure_map])

# %%
# Module maps H satisfy H A_M = A_N H^p. They form an F_p-space.
P = make_module(F4, [[1, 0], [0, 1]])
Q = P.change_basis([[u, 1], [0, 1]])
print("Q =", Q)
print("dim Hom(P, Q) over F_2:", len(hom_space(P, Q)))
H = find_isomorphism(P, Q)
print("an isomorphism P -> Q:", [[str(c) for c in row] for row in H])
