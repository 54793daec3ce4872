"""Anticyclotomic tower layers.

At a split prime q >= 5 the q-primary part of (O_K/q^(n+1))^x is a product
of two cyclic q-groups swapped by conjugation; its minus quotient (kill
x * conj(x)) is cyclic of order q^n and is the Galois group of the n-th
anticyclotomic layer.
"""

from iqtower import (CLASS_NUMBER_ONE_DS, anticyclotomic_tower, field,
                     smallest_split_primes)

print("smallest split primes q >= 5 per field:")
for d in CLASS_NUMBER_ONE_DS:
    qs = smallest_split_primes(field(d), 3)
    print(f"  d={d:<4}: {qs}")

print("\nminus-quotient layers for d = 2, q = 11:")
tower = anticyclotomic_tower(field(2), 11, 3)
for lv in tower.levels:
    print(f"  n={lv.n}: order {lv.order:>5}, invariants {lv.invariants}, "
          f"layer degree {lv.layer_degree}")

print("\ngrowth is exactly q per level across all nine fields (depth 2):")
for d in CLASS_NUMBER_ONE_DS:
    q = smallest_split_primes(field(d), 1)[0]
    tower = anticyclotomic_tower(field(d), q, 2)
    orders = [lv.order for lv in tower.levels]
    assert orders == [1, q, q * q]
    print(f"  d={d:<4} q={q:<3}: orders {orders}")
