#!/usr/bin/env python3
"""The dimension polynomials f_k / g_k, their envelopes, and the fusion rings."""

from fractions import Fraction

import mpmath
from mpmath import mp

from cqgkhint import (
    chebyshev_f,
    chebyshev_g,
    envelope,
    tensor_decompose,
    trivial_multiplicity,
)

print("=" * 64)
print("f_k: three-term recursion, exact for rational arguments")
print("=" * 64)
for t in (Fraction(2), Fraction(3), Fraction(7, 2)):
    values = [chebyshev_f(k, t) for k in range(6)]
    print(f"t = {t}: f_0..f_5 = {values}")
print("note f_k(2) = k + 1 (degenerate point of the closed form)")

print("\n" + "=" * 64)
print("g_k: the degree-k relatives with g_k(4) = 2k + 1")
print("=" * 64)
for x in (Fraction(4), Fraction(5), Fraction(6)):
    values = [chebyshev_g(k, x) for k in range(6)]
    print(f"x = {x}: g_0..g_5 = {values}")

print("\n" + "=" * 64)
print("Certified envelopes (interval arithmetic, outward rounding)")
print("=" * 64)
with mp.workprec(120):
    for k in (2, 20, 100):
        env = envelope(k, Fraction(3))
        exact = chebyshev_f(k, Fraction(3))
        lo = Fraction(*mpmath.libmp.to_rational(env.lower._mpf_))
        hi = Fraction(*mpmath.libmp.to_rational(env.upper._mpf_))
        width = (env.upper - env.lower) / env.upper
        print(f"k = {k:>3}: bracket width / value = {mp.nstr(width, 3)}; "
              f"contains the exact value: {lo <= exact <= hi}")

print("\n" + "=" * 64)
print("Fusion rings: products derived from the generator rule only")
print("=" * 64)
print("su2-type: 3 (x) 2 =", tensor_decompose("su2", 3, 2))
print("so3-type: 3 (x) 2 =", tensor_decompose("so3", 3, 2))
print("trivial multiplicity of (1,)^8 in su2-type:",
      trivial_multiplicity("su2", [1] * 8), "(the 4th Catalan number)")

print("\nfusion is a dimension identity, exactly:")
t = Fraction(7, 2)
parts = tensor_decompose("su2", 5, 4)
lhs = chebyshev_f(5, t) * chebyshev_f(4, t)
rhs = sum(m * chebyshev_f(j, t) for j, m in parts.items())
print(f"  f_5({t}) * f_4({t}) = {lhs} = sum over 5 (x) 4 = {rhs}")
