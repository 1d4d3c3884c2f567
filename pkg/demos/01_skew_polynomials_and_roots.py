"""
Skew polynomials and the roots of additive polynomials
======================================================

Run with ``python demos/01_skew_polynomials_and_roots.py``.
"""

# %%
# Fields are named by ``(p, n)``. The modulus is fixed once and for all, so
# two sessions always agree on what ``u`` means.
from frobenii import SkewPoly, left_divmod, make_field, right_gcd, roots_of_additive
from frobenii.additive import to_additive

F2 = make_field(2, 1)
F4 = make_field(2, 2)
u = F4.gen
print(F4, "modulus", F4.modulus, " u^2 =", u * u)

# %%
# In the skew ring a constant does not commute with F: moving it to the left
# applies the p-power.
F = SkewPoly.F(F4)
print("F*u =", F * SkewPoly.constant(F4, u))

a = SkewPoly.parse(F4, "F^2")
b = SkewPoly.parse(F4, "F+u")
q, r = left_divmod(a, b)
print(f"{a} = ({q})*({b}) + {r}")
print("right gcd of F^2+1 and F+1 over F_2:", right_gcd(SkewPoly.parse(F2, "F^2+1"), SkewPoly.parse(F2, "F+1")))

# %%
# Each skew polynomial T of degree n gives an additive polynomial on the
# algebraic closure. Its roots form an n-dimensional F_p-space, found inside
# the least extension where they all live.
T = SkewPoly.parse(F2, "F^2+F+1")
print("additive form:", to_additive(T))
rs = roots_of_additive(T)
print("splitting field", rs.field, "degree", rs.splitting_degree)
for x in rs.roots:
    print("   root", x)

# %%
# The count is p^n regardless of the coefficients; here over F_9.
K = make_field(3, 2)
for text in ["F-1", "F^2+u*F+1", "F^3+(u+1)*F+u"]:
    rs = roots_of_additive(SkewPoly.parse(K, text))
    print(f"{text:>16}: {rs.count} roots over {rs.field}")
