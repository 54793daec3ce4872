"""The nine-row auxiliary CM twist table.

For d > 3, a twist prime Q = (4r + sqrt(-d)) with 16r^2 + d an odd rational
prime gives a curve with good reduction away from Q; the fixed rows for
small d come from curve data and only their ray-class degrees are
recomputed.  The d = 19 row carries a documented discrepancy between the
printed bad prime and the printed degree.
"""

from iqtower import curve_table, field, find_twist_candidates

print(f"{'d':>4} {'bad prime(s)':<28} {'N(f)':>5} {'deg':>4} {'ok':>3} source")
for row in curve_table():
    bad = ", ".join(str(b) for b in row.bad_primes)
    mark = "!" if row.flag else ""
    print(f"{row.d:>4} {bad:<28} {row.conductor_norm:>5} {row.degree:>4} "
          f"{'yes' if row.degree_admissible else 'NO':>3} {row.source}{mark}")

flagged = [r for r in curve_table() if r.flag][0]
print(f"\nd=19 flag: {flagged.flag}")

print("\nLive search for d = 43, r <= 8:")
for c in find_twist_candidates(field(43), 8):
    print(f"  r={c.r}: Q={c.prime.generator} (norm {c.prime.norm()}), "
          f"alpha={c.alpha}, degree {c.degree}, "
          f"admissible={c.degree_admissible}")
