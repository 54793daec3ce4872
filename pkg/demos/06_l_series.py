"""Imprimitive Hecke L-values, two ways.

Finite-order ray class characters only: the value is a truncated Dirichlet
sum over ideals (one canonical generator per ideal) and, independently, a
truncated Euler product over prime ideals, each with a rigorous tail bound
from r_K(n) <= d(n).
"""

import math

from iqtower import (CharacterSpec, OkElement, characters, euler_product_L,
                     evaluate_imprimitive_L, field, ray_class_group)

K1 = field(1)
triv = CharacterSpec((), 1)
B = 10 ** 5

vd = evaluate_imprimitive_L(K1, K1.one(), triv, 2.0, B)
ve = euler_product_L(K1, K1.one(), triv, 2.0, B)
catalan = 0.9159655941772190150546
print(f"zeta of Q(i) at s=2, truncated at norm {B}:")
print(f"  ideal sum     : {vd.value:.8f}  (tail bound {vd.error_estimate:.2e})")
print(f"  euler product : {ve.value:.8f}  (tail bound {ve.error_estimate:.2e})")
print(f"  zeta(2)*G     : {math.pi ** 2 / 6 * catalan:.8f}")

m = OkElement(K1, 1, 1)
g = ray_class_group(m)
chi0 = CharacterSpec((0,) * len(g.presentation.invariants), 1)
v2 = evaluate_imprimitive_L(K1, m, chi0, 2.0, B)
print(f"\ndropping the Euler factor at (1+i): {v2.value:.8f} "
      f"= previous * (1 - 2^-2) = {vd.value * 0.75:.8f}")

m3 = K1.from_int(3)
g3 = ray_class_group(m3)
print(f"\ncharacters mod 3 in Q(i) (group invariants {g3.presentation.invariants}):")
for chi in characters(g3):
    v = evaluate_imprimitive_L(K1, m3, chi, 2.0, 20000)
    val = v.value if not isinstance(v.value, complex) else v.value.real
    print(f"  exponents {chi.exponents}, order {chi.order}: L = {val:.6f}")
