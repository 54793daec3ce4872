import math
import random

import pytest

from iqtower.finitefield import finite_field
from iqtower.lvaluation import (EXPLICIT_FIELD_DEGREE_CAP, LSeriesValue,
                                ResidueEmbedding, compute_N1,
                                dirichlet_tail_bound, distinctness_check,
                                euler_factor_vanishes, euler_product_L,
                                evaluate_imprimitive_L, unity_image)
from iqtower.okring import OkElement, OkError, field, elements_up_to_norm
from iqtower.rayclass import CharacterSpec, RayClassGroup, characters

from oracles import lattice_zeta


def _exact_order_roots(p, q, m):
    """All roots of unity of exact order q^m in the canonical field."""
    if m == 0:
        return [unity_image(p, q, 0)]
    z = unity_image(p, q, m)
    out = []
    acc = z.field.one()
    for j in range(q ** m):
        if j and j % q:
            out.append(acc)
        acc = acc * z
    return out


class TestResidueEmbedding:
    def test_create_and_examples(self):
        emb = ResidueEmbedding.create(field(1), 5)
        assert emb.root == 2
        assert emb.embed(OkElement(field(1), 2, 1)) == 4
        assert emb.embed(OkElement(field(1), 2, -1)) == 0
        assert emb.embed(field(1).from_int(7)) == 2

    def test_other_root_swaps_kernel(self):
        emb = ResidueEmbedding.create(field(1), 5, 3)
        assert emb.embed(OkElement(field(1), 2, 1)) == 0
        assert emb.embed(OkElement(field(1), 2, -1)) == 4

    def test_half_basis_field(self):
        emb = ResidueEmbedding.create(field(43), 59)
        # omega = (1+sqrt(-43))/2 must satisfy its minimal polynomial
        t, n = field(43).min_poly
        w = emb.omega_image
        assert (w * w - t * w + n) % 59 == 0
        assert emb.embed(OkElement(field(43), 3, 2)) in (0, emb.embed(OkElement(field(43), 3, 2)))

    def test_ring_homomorphism_1000_pairs(self):
        rng = random.Random(19)
        embs = [ResidueEmbedding.create(field(1), 13), ResidueEmbedding.create(field(43), 59),
                ResidueEmbedding.create(field(3), 7)]
        for emb in embs:
            tag = emb.tag
            for _ in range(340):
                a = OkElement(tag, rng.randint(-99, 99), rng.randint(-99, 99))
                b = OkElement(tag, rng.randint(-99, 99), rng.randint(-99, 99))
                assert emb.embed(a + b) == (emb.embed(a) + emb.embed(b)) % emb.p
                assert emb.embed(a * b) == emb.embed(a) * emb.embed(b) % emb.p

    def test_kernel_is_chosen_prime(self):
        emb = ResidueEmbedding.create(field(1), 13)
        ker_gen = None
        from iqtower.okring import primes_above
        for p in primes_above(field(1), 13):
            if emb.embed(p.generator) == 0:
                ker_gen = p
        assert ker_gen is not None
        other = [p for p in primes_above(field(1), 13) if p != ker_gen][0]
        assert emb.embed(other.generator) != 0

    def test_non_split_rejected(self):
        with pytest.raises(OkError):
            ResidueEmbedding.create(field(1), 7)
        with pytest.raises(OkError):
            ResidueEmbedding.create(field(1), 2)

    def test_ext_degree(self):
        emb = ResidueEmbedding.create(field(1), 5)
        assert emb.ext_degree(3) == 2
        assert emb.ext_degree(13) == 4
        with pytest.raises(OkError):
            emb.ext_degree(10)


class TestUnityImage:
    def test_cube_root_in_F25(self):
        z = unity_image(5, 3, 1)
        assert z.field.t == 2
        assert z ** 3 == z.field.one() and z != z.field.one()
        # lexicographically smallest: the class of x in F_5[x]/(1 + x + x^2)
        assert z.coeffs == (0, 1)

    def test_smallest_cube_root_mod_7(self):
        z = unity_image(7, 3, 1)
        assert z.field.t == 1
        assert z.coeffs == (2,)

    def test_order_13_lives_in_degree_4(self):
        z = unity_image(5, 13, 1)
        assert z.field.t == 4
        assert z ** 13 == z.field.one() and z != z.field.one()

    def test_q_equals_p_rejected(self):
        with pytest.raises(OkError):
            unity_image(5, 5, 1)

    def test_exact_order(self):
        for (p, q, m) in ((5, 3, 2), (7, 3, 3), (11, 5, 1), (13, 3, 2)):
            z = unity_image(p, q, m)
            assert z ** (q ** m) == z.field.one()
            assert not z ** (q ** (m - 1)) == z.field.one()


class TestDistinctness:
    def test_examples(self):
        assert distinctness_check(5, 3, 2) is True
        assert distinctness_check(7, 3, 3) is True
        with pytest.raises(OkError):
            distinctness_check(5, 5, 1)

    def test_explicit_small_sweep(self):
        from sympy import primerange
        odd = [p for p in primerange(3, 24)]
        for p in odd:
            for q in odd:
                if p == q:
                    continue
                for m in (1, 2):
                    assert distinctness_check(p, q, m), (p, q, m)

    def test_certificate_path_beyond_cap(self):
        # ord(29 mod 47^3) is far beyond the explicit construction cap
        from sympy import n_order
        assert n_order(29, 47 ** 3) > EXPLICIT_FIELD_DEGREE_CAP
        assert distinctness_check(29, 47, 3) is True


class TestEulerFactor:
    def test_trivial_characters_nonvanishing(self):
        emb = ResidueEmbedding.create(field(1), 5)
        one = finite_field(5, 1).one()
        # N(7) - 1 = 48 = 3 mod 5, nonzero
        assert euler_factor_vanishes(emb, field(1).from_int(7), 0, one, one) is False

    def test_constructed_vanishing(self):
        emb = ResidueEmbedding.create(field(1), 5)
        lam = OkElement(field(1), 3, 2)   # norm 13, coprime to 5
        F = finite_field(5, 1)
        a0 = emb.embed(lam)
        a = lam.norm() * pow(a0, -4, 5) % 5
        assert euler_factor_vanishes(emb, lam, 4, F.one(), F.lift(a)) is True

    def test_primitive_cube_root_eta(self):
        emb = ResidueEmbedding.create(field(1), 5, 3)
        lam = OkElement(field(1), 1, 2)
        eta = unity_image(5, 3, 1)
        F1 = finite_field(5, 1)
        assert euler_factor_vanishes(emb, lam, 4, F1.one(), eta) is False

    def test_kernel_lambda_rejected(self):
        emb = ResidueEmbedding.create(field(1), 5)
        with pytest.raises(OkError):
            euler_factor_vanishes(emb, OkElement(field(1), 2, -1), 1,
                                  finite_field(5, 1).one(), finite_field(5, 1).one())

    def test_at_most_one_vanishing_order(self):
        rng = random.Random(29)
        emb_pool = [(ResidueEmbedding.create(field(1), 13), 3),
                    (ResidueEmbedding.create(field(2), 11), 3),
                    (ResidueEmbedding.create(field(1), 5), 3),
                    (ResidueEmbedding.create(field(3), 13), 5)]
        for emb, q in emb_pool:
            tag = emb.tag
            for _ in range(8):
                lam = OkElement(tag, rng.randint(-30, 30), rng.randint(-30, 30))
                if lam.is_zero() or emb.embed(lam) == 0:
                    continue
                k = rng.randint(0, 6)
                phi0 = rng.randint(1, emb.p - 1)
                orders_with_vanishing = set()
                for m in range(0, 4):
                    F = unity_image(emb.p, q, m).field if m else finite_field(emb.p, 1)
                    phi = F.lift(phi0)
                    for eta in _exact_order_roots(emb.p, q, m):
                        if euler_factor_vanishes(emb, lam, k, phi, eta):
                            orders_with_vanishing.add(m)
                assert len(orders_with_vanishing) <= 1


class TestComputeN1:
    def test_a_equal_one(self):
        emb = ResidueEmbedding.create(field(1), 5)
        F = finite_field(5, 1)
        lam = field(1).from_int(7)
        phi0 = F.lift(lam.norm() % 5)   # makes a = 1 at k = 0
        assert compute_N1(emb, lam, 0, phi0, 3) == 1

    def test_a_not_root_of_unity(self):
        emb = ResidueEmbedding.create(field(1), 5)
        # a = 48 = 3 mod 5 has order 4, not a power of 3
        assert compute_N1(emb, field(1).from_int(7), 0, finite_field(5, 1).one(), 3) == 0

    def test_constructed_primitive_cube_root(self):
        emb = ResidueEmbedding.create(field(1), 5)
        lam = OkElement(field(1), 3, 2)
        zeta = unity_image(5, 3, 1)
        F = zeta.field
        a0 = emb.embed(lam)
        # phi0 = N(lam) * embed(lam)^(-k) * zeta^(-1) makes a = zeta exactly
        k = 2
        phi0 = F.lift(lam.norm() % 5) * F.lift(pow(a0, k, 5)).inverse() * zeta.inverse()
        assert compute_N1(emb, lam, k, phi0, 3) == 2

    def test_brute_scan_agreement(self):
        rng = random.Random(37)
        pool = [(field(1), 13), (field(1), 5), (field(2), 17), (field(3), 7),
                (field(7), 11), (field(11), 5)]
        caps = {3: 5, 5: 3, 7: 2}
        done = 0
        while done < 30:
            tag, p = pool[rng.randrange(len(pool))]
            q = rng.choice([3, 5, 7])
            if q == p:
                continue
            emb = ResidueEmbedding.create(tag, p)
            lam = OkElement(tag, rng.randint(-25, 25), rng.randint(-25, 25))
            if lam.is_zero() or emb.embed(lam) == 0:
                continue
            k = rng.randint(0, 5)
            phi0 = rng.randint(1, p - 1)
            n1 = compute_N1(emb, lam, k, finite_field(p, 1).lift(phi0), q)
            mcap = caps[q]
            observed = set()
            for m in range(0, mcap + 1):
                F = unity_image(p, q, m).field if m else finite_field(p, 1)
                phi = F.lift(phi0)
                for eta in _exact_order_roots(p, q, m):
                    if euler_factor_vanishes(emb, lam, k, phi, eta):
                        observed.add(m)
            if n1 == 0:
                assert observed == set()
            else:
                expect = {n1 - 1} if n1 - 1 <= mcap else set()
                assert observed == expect, (tag.d, p, q, k, phi0, n1, observed)
            done += 1


class TestLSeries:
    def test_zeta_gaussian_at_2(self):
        tag = field(1)
        chi = CharacterSpec((), 1)
        v = evaluate_imprimitive_L(tag, tag.one(), chi, 2.0, 10 ** 5)
        oracle = lattice_zeta(1, 2.0, 10 ** 5)
        assert abs(v.value - oracle) < 1e-12
        truth = (math.pi ** 2 / 6) * 0.915965594177219015
        assert abs(v.value - truth) < v.error_estimate

    def test_omitting_ramified_prime(self):
        tag = field(1)
        m = OkElement(tag, 1, 1)
        g = RayClassGroup(m)
        chi = CharacterSpec((0,) * len(g.presentation.invariants), 1)
        v = evaluate_imprimitive_L(tag, m, chi, 2.0, 10 ** 5)
        full = evaluate_imprimitive_L(tag, tag.one(), CharacterSpec((), 1), 2.0, 10 ** 5)
        assert abs(v.value - full.value * (1 - 2.0 ** -2)) < 1e-4

    def test_error_monotone_in_bound(self):
        tag = field(1)
        chi = CharacterSpec((), 1)
        errs = [evaluate_imprimitive_L(tag, tag.one(), chi, 1.8, B).error_estimate
                for B in (10 ** 3, 10 ** 4, 10 ** 5)]
        assert errs[0] > errs[1] > errs[2]

    def test_dirichlet_vs_euler_20_random_triples(self):
        rng = random.Random(43)
        tags = [field(1), field(2), field(3), field(7)]
        done = 0
        while done < 20:
            tag = tags[rng.randrange(len(tags))]
            pool = [e for e in elements_up_to_norm(tag, 40) if e.norm() > 1]
            m = pool[rng.randrange(len(pool))]
            g = RayClassGroup(m)
            chars = characters(g)
            chi = chars[rng.randrange(len(chars))]
            s = 1.6 + rng.random() * 1.4
            vd = evaluate_imprimitive_L(tag, m, chi, s, 3000)
            ve = euler_product_L(tag, m, chi, s, 3000)
            assert abs(vd.value - ve.value) <= vd.error_estimate + ve.error_estimate, \
                (tag.d, str(m), chi.exponents, s)
            done += 1

    def test_preconditions(self):
        tag = field(1)
        with pytest.raises(OkError):
            evaluate_imprimitive_L(tag, tag.one(), CharacterSpec((), 1), 1.0, 100)
        with pytest.raises(OkError):
            evaluate_imprimitive_L(tag, tag.one(), CharacterSpec((), 1, k=1), 2.0, 100)

    def test_serialization(self):
        v = LSeriesValue(1.5, 100, 0.01)
        assert v.to_dict() == {"value": 1.5, "B": 100, "error": 0.01}
        vc = LSeriesValue(complex(1.0, -0.5), 10, 0.1)
        assert vc.to_dict()["value"] == [1.0, -0.5]


class TestTailBound:
    def test_rigorous_against_slow_sum(self):
        # compare the closed-form tail bound against a much larger direct sum
        from sympy import divisor_count
        for s in (1.7, 2.0, 2.5):
            B = 200
            direct = sum(divisor_count(n) * n ** (-s) for n in range(B + 1, 20000))
            assert direct < dirichlet_tail_bound(B, s)
