import itertools
import random

import pytest

from iqtower.classforms import (FormError, QuadForm, class_group, p_rank,
                                prime_form, principal_form, reduced_forms,
                                s_class_group)

from oracles import minkowski_class_number


def _valid_discs(limit):
    return [d for d in range(-3, -limit - 1, -1) if d % 4 in (0, 1)]


class TestQuadForm:
    def test_reduction_invariants(self):
        rng = random.Random(2)
        for _ in range(200):
            a = rng.randint(1, 30)
            b = rng.randint(-30, 30)
            cmin = (b * b + 4 * a) // (4 * a) + 1
            c = rng.randint(cmin, cmin + 30)
            f = QuadForm(a, b, c)
            r = f.reduced()
            assert r.is_reduced()
            assert r.discriminant() == f.discriminant()

    def test_invalid_rejected(self):
        with pytest.raises(FormError):
            QuadForm(-1, 0, 1)
        with pytest.raises(FormError):
            QuadForm(1, 5, 1)   # positive discriminant


class TestClassGroup:
    def test_h_examples(self):
        assert class_group(-4).order == 1
        g23 = class_group(-23)
        assert g23.order == 3 and g23.structure.invariants == (3,)
        g47 = class_group(-47)
        assert g47.order == 5 and g47.structure.invariants == (5,)

    def test_reduced_form_listing(self):
        forms = reduced_forms(-23)
        assert forms == [QuadForm(1, 1, 6), QuadForm(2, -1, 3), QuadForm(2, 1, 3)]

    def test_invalid_disc(self):
        with pytest.raises(FormError):
            class_group(-6)
        with pytest.raises(FormError):
            class_group(4)

    def test_group_laws_exhaustive_small(self):
        for disc in _valid_discs(120):
            G = class_group(disc)
            forms = G.forms
            e = principal_form(disc)
            for f in forms:
                assert (f * e).reduced() == f
                assert (f * f.inverse()).reduced() == e
            for f, g in itertools.product(forms, repeat=2):
                fg = (f * g).reduced()
                assert fg in forms
                assert fg == (g * f).reduced()
            for f, g, h in itertools.product(forms, repeat=3):
                assert ((f * g).reduced() * h).reduced() == (f * (g * h).reduced()).reduced()

    def test_minkowski_oracle_sample(self):
        for disc in (-23, -47, -71, -163, -231, -420, -555, -1051, -1999):
            assert class_group(disc).order == minkowski_class_number(disc), disc

    def test_nonfundamental_accepted(self):
        # disc -12 = 4 * (-3): one class
        g = class_group(-12)
        assert g.order == 1
        g48 = class_group(-48)
        assert g48.order == 2


class TestSClassGroup:
    def test_examples(self):
        assert s_class_group(-23, [2]).order == 1
        assert s_class_group(-23, []).order == 3
        assert s_class_group(-4, [2, 3, 5]).order == 1

    def test_inert_primes_contribute_nothing(self):
        # 5 is inert for disc -23 (kronecker(-23, 5) = -1)
        assert prime_form(-23, 5) is None
        assert s_class_group(-23, [5]).order == 3

    def test_order_divides_h(self):
        for disc in (-23, -47, -71, -231, -479):
            h = class_group(disc).order
            for S in ([2], [3], [2, 3], [2, 3, 5, 7]):
                assert h % s_class_group(disc, S).order == 0

    def test_rank_gap_bounded_by_split_primes(self):
        # |r_p(Cl) - r_p(Cl_S)| <= 2 |S_f| on computed instances
        for disc in (-231, -420, -479, -1051):
            G = class_group(disc)
            for S in ([2], [2, 3], [2, 3, 5]):
                sg = s_class_group(disc, S)
                for p in (2, 3, 5, 7):
                    gap = abs(p_rank(G.structure, p) - p_rank(sg.structure, p))
                    assert gap <= 2 * len(S)


class TestPRank:
    def test_examples(self):
        assert p_rank([3], 3) == 1
        assert p_rank([2, 6, 12], 2) == 3
        assert p_rank([2, 6, 12], 3) == 2
        assert p_rank([], 5) == 0

    def test_structure_argument(self):
        g = class_group(-3299)   # Z/3 x Z/9
        assert g.structure.invariants == (3, 9)
        assert p_rank(g.structure, 3) == 2
