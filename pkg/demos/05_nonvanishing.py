"""Residue-characteristic non-vanishing.

Fix a split prime p and reduce O_K into F_p.  Images of q-power roots of
unity stay pairwise distinct (q != p), so the residue
a = N(lambda) * lambda^(-k) * phi0^(-1) can match the value of a character
component of exact order q^m for at most one m.  compute_N1 returns the
level past which the Euler-type factor can never vanish.
"""

from iqtower import (OkElement, ResidueEmbedding, compute_N1,
                     distinctness_check, euler_factor_vanishes, field,
                     finite_field, unity_image)

K1 = field(1)
emb = ResidueEmbedding.create(K1, 5)
print(f"embedding of Z[i] into F_5 with sqrt(-1) -> {emb.root}")
for e in (OkElement(K1, 2, 1), OkElement(K1, 2, -1), K1.from_int(7)):
    print(f"  {str(e):>10} -> {emb.embed(e)}")

print("\nimages of q-power roots of unity:")
for (p, q, m) in ((5, 3, 1), (7, 3, 1), (5, 13, 1)):
    z = unity_image(p, q, m)
    print(f"  primitive {q}^{m}-th root mod {p}: {z.coeffs} in GF({p}^{z.field.t})")
print("  distinctness, p=5 q=3 m=2:", distinctness_check(5, 3, 2))
print("  distinctness, p=29 q=47 m=3 (certificate path):",
      distinctness_check(29, 47, 3))

print("\nEuler-factor vanishing levels for lambda = 3+2i, k = 2, p = 5, q = 3:")
lam = OkElement(K1, 3, 2)
F1 = finite_field(5, 1)
for m in range(0, 3):
    z = unity_image(5, 3, m)
    F = z.field
    etas = [F.one()] if m == 0 else []
    acc = F.one()
    for j in range(3 ** m):
        if j and j % 3:
            etas.append(acc)
        acc = acc * z
    hits = sum(euler_factor_vanishes(emb, lam, 2, F.lift(1), eta) for eta in etas)
    print(f"  exact order 3^{m}: {hits} vanishing out of {len(etas)} characters")

n1 = compute_N1(emb, lam, 2, F1.one(), 3)
print(f"level bound N1 = {n1}: no vanishing for any component of exact order"
      f" >= 3^{n1}" if n1 else "residue is not a 3-power root of unity: "
      "no vanishing at any level (N1 = 0)")
