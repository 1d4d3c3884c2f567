"""
Fixed points, Galois representations and back
=============================================

Unit modules over F_q and finite-dimensional representations of the
Frobenius determine each other. This script walks a few examples through
both directions and then looks at finite algebras.
"""

# %%
import math
import random

from frobenii import EtaleAlgebra, make_field, rh_cov, rh_inv, sol_at
from frobenii.frobenius_module import find_isomorphism, random_module
from frobenii.rh_contravariant import algebra_from_etale, count_homs, lang_solve, rh_cont_dual
from frobenii.rh_covariant import etale_algebra_to_module, rh_cov_data

F2 = make_field(2, 1)
F4 = make_field(2, 2)

# %%
# The module attached to F_4 over F_2 has two independent fixed vectors only
# over F_4 itself. The Frobenius of the extension permutes them.
M = etale_algebra_to_module(EtaleAlgebra(F2, [2]))
data = rh_cov_data(M)
print("module", M)
print("fixed points live over", data.field, "basis", [[str(c) for c in x] for x in data.basis])
print("Frobenius on them:\n", data.rep.matrix)

# %%
# Going back recovers the module up to isomorphism.
rng = random.Random(0)
for _ in range(3):
    N = random_module(make_field(3, 2), 2, rng)
    V = rh_cov(N)
    back = rh_inv(V)
    print(N, "->", V.matrix.tolist(), "-> isomorphic again:", find_isomorphism(back, N, rng) is not None)

# %%
# Solving F(x) - x = v may require leaving the base field.
x, m = lang_solve(M, [F2.zero, F2.one])
print("solution", [str(c) for c in x], "found over degree", m)

# %%
# For a finite algebra B the dual of its Frobenius, made unit, is again the
# module of B. Its solutions over F_{q^k} have dimension sum gcd(d_i, k),
# one for each Frobenius orbit on the points of B. Algebra maps into F_{q^k}
# number sum of d_i over the factors with d_i | k, so the two counts agree
# exactly when every factor degree divides k.

B = EtaleAlgebra(F2, [2, 1])
A = algebra_from_etale(B)
U = rh_cont_dual(A)
print("dual module", U, "isomorphic to module of B:", find_isomorphism(U, etale_algebra_to_module(B)) is not None)
for k in range(1, 5):
    dim = sol_at(U, k).dim
    orbits = sum(math.gcd(d, k) for d in B.factors)
    print(f"k={k}: solution dim {dim} (orbits {orbits}), algebra maps into F_2^{k}: {count_homs(A, k)}")
