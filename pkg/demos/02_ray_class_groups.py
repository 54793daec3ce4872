"""Unit groups of residue rings and ray class groups.

For class number one, the Galois group of the ray class field of conductor
h is (O_K/h)^x modulo the image of the roots of unity; its order is the
degree [R(h):K].  The demo recomputes some degrees, shows Artin symbols,
and checks the lcm compatibility that makes degree conditions stable under
combining conductors.
"""

from iqtower import (artin_symbol, characters, euler_phi, field,
                     lcm_degree_check, parse_element, ray_class_group,
                     unit_group_structure)

K43 = field(43)
m = parse_element(K43, "4+1*w")
print(f"modulus {m} of norm {m.norm()} in Q(sqrt(-43))")
print(f"  |(O_K/h)^x| = {euler_phi(m)}")
print(f"  unit group structure: {unit_group_structure(m).invariants}")
g = ray_class_group(m)
print(f"  ray class group: invariants {g.presentation.invariants}, degree {g.degree}")

print("\nArtin symbols in that degree-29 group:")
for lam in (K43.from_int(2), K43.from_int(3), K43.one() + m * K43.from_int(2)):
    cls = artin_symbol(m, lam)
    print(f"  sigma_({lam}) has order {cls.order()}"
          + ("  (identity: 1 mod h)" if cls.is_identity() else ""))

print("\nCharacters of the group, by exact order:")
for order in (1, 29):
    print(f"  exact order {order}: {len(characters(g, exact_order=order))} characters")

print("\nlcm compatibility of p-indivisibility (p = 5):")
a, b = m, m.conj()
fa, fb, fl = lcm_degree_check(a, b, 5)
print(f"  5 | [R({a}):K]? {not fa};  5 | [R({b}):K]? {not fb};  "
      f"5 | [R(lcm):K]? {not fl}")

print("\nA composite modulus in Q(i):")
K1 = field(1)
m5 = K1.from_int(5)
print(f"  (O/5)^x structure: {unit_group_structure(m5).invariants} "
      f"(two split factors glued by CRT)")
print(f"  ray class degree of (5): {ray_class_group(m5).degree}")
