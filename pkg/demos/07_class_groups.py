"""Form class groups and S-class groups.

Binary quadratic forms give class groups of arbitrary imaginary quadratic
discriminants: reduced-form enumeration, Gauss composition, and quotients
by the classes of primes above a set S.  These feed the p-rank bookkeeping
of the fine-Selmer calculus with real data.
"""

from iqtower import class_group, p_rank, prime_form, s_class_group

for disc in (-23, -47, -231, -3299):
    g = class_group(disc)
    print(f"disc {disc}: h = {g.order}, invariants {g.structure.invariants}")
    print(f"  reduced forms: {', '.join(str(f) for f in g.forms[:6])}"
          + (" ..." if len(g.forms) > 6 else ""))

print("\nprime forms and S-class groups for disc -23:")
for ell in (2, 3, 5, 7, 13):
    pf = prime_form(-23, ell)
    print(f"  ell={ell}: prime form {pf if pf else '(inert, none)'}")
for S in ([], [2], [13]):
    sg = s_class_group(-23, S)
    print(f"  Cl_S with S={S}: order {sg.order}, invariants {sg.structure.invariants}")

print("\np-ranks of a larger class group, disc -3299 (3-part is Z/3 x Z/9):")
g = class_group(-3299)
for p in (2, 3, 5):
    print(f"  r_{p} = {p_rank(g.structure, p)}")
