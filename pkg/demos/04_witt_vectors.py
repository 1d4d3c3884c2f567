"""
Big Witt vectors as power series
================================

A Witt vector of length N is a series ``1 + c_1 t + ... + c_N t^N``.
Addition multiplies series and ``[a] = 1 - a t`` is multiplicative.
"""

# %%
from frobenii import ZZ, BigWitt, frobenius_op, ghost_map, make_field, verschiebung_op, witt_mul
from frobenii.witt import RationalWitt, coefficients_to_roots, rational_to_big, roots_to_coefficients, witt_add

a = BigWitt.parse(ZZ, "1-2t", 4)
b = BigWitt.parse(ZZ, "1-3t", 4)
print("a + b =", witt_add(a, b))
print("a * b =", witt_mul(a, b))
print("ghost(a + b) =", ghost_map(witt_add(a, b)).values)

# %%
# Frobenius and Verschiebung. F_2 V_2 multiplies by 2, i.e. squares the series.
c = BigWitt.parse(ZZ, "1-t", 6)
print("V_2(1-t) =", verschiebung_op(2, c))
print("F_2 V_2(1-t) =", frobenius_op(2, verschiebung_op(2, c)))

# %%
# Over a finite field there are no ghost components. Products use integral
# polynomials generated once and cached on disk.
K = make_field(3, 2)
u = K.gen
x = BigWitt(K, [u, 1, 0, u + 1])
y = BigWitt(K, [1, u, 2, 0])
print("over F_9:", witt_mul(x, y))

# %%
# Rational Witt vectors and the bridge between roots and coefficients.
r = roots_to_coefficients([u, u + 1, 2])
print("prod (1 - a t) =", list(map(str, r.num)))
L, roots = coefficients_to_roots(list(r.num), K)
print("roots back:", roots)
print("1/(1+t) to length 5:", rational_to_big(RationalWitt(ZZ, [1], [1, 1]), 5))
