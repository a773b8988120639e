import random
from fractions import Fraction as F

import pytest

from plorder.plgroup import (
    HypothesisFailed,
    NoWitness,
    PLMap,
    ball,
    bs_g,
    bs_g_minus,
    bs_g_plus,
    commutator,
    cross_free,
    f_big_generator,
    jump_cocycle,
    linked_pair,
    relator_defects,
    standard_generators,
    tau0,
    tau1,
    thompson_f_pair,
    translation,
    two_chain_witness,
    verify_relators,
)


class TestPLMap:
    def test_identity(self):
        e = PLMap.identity("unit")
        assert e.is_identity()
        assert e(F(1, 3)) == F(1, 3)

    def test_eval_and_inverse(self):
        f = f_big_generator()
        assert f(F(0)) == 0 and f(F(1)) == 1
        assert f(F(1, 8)) == F(1, 4)
        g = f.inverse()
        for x in (F(0), F(1, 7), F(1, 3), F(5, 8), F(1)):
            assert g(f(x)) == x

    def test_composition_associative(self):
        a, b = thompson_f_pair()
        f0 = f_big_generator()
        assert (a * b) * f0 == a * (b * f0)

    def test_composition_is_function_composition(self):
        a, b = thompson_f_pair()
        for x in (F(1, 5), F(1, 2), F(7, 9)):
            assert (a * b)(x) == a(b(x))

    def test_from_points_roundtrip(self):
        f = PLMap.from_points("unit", [(0, 0), (F(1, 2), F(1, 4)), (1, 1)])
        assert f(F(1, 2)) == F(1, 4)
        assert f(F(3, 4)) == F(5, 8)

    def test_serialization_roundtrip(self):
        for g in (f_big_generator(), translation(F(3, 2)), bs_g_plus(0, 2)):
            assert PLMap.from_text(g.to_text()) == g

    def test_pow(self):
        t = translation(1)
        assert (t ** 3)(F(0)) == 3
        assert (t ** -2)(F(0)) == -2
        assert (t ** 0).is_identity()

    def test_germ_and_tau(self):
        f0 = f_big_generator()
        assert tau0(f0) == -1         # slope 2 at 0 (tau0 = -log2 slope)
        assert tau1(f0) == 1          # slope 1/2 at 1 (tau1 = -log2 slope)
        a, b = thompson_f_pair()
        assert tau1(a) == 0 and tau1(b) == 1

    def test_fixed_structure(self):
        g = bs_g_plus(0, 2)
        fs = g.fixed_structure()
        assert fs.support == [(F(0), None)]
        assert fs.fixed == [(None, F(0))]

    def test_support_of_bump(self):
        f = PLMap.from_points(
            "unit", [(0, 0), (F(1, 4), F(1, 4)), (F(1, 2), F(9, 16)),
                     (F(5, 8), F(5, 8)), (1, 1)])
        assert f.support() == [(F(1, 4), F(5, 8))]


class TestRelators:
    def test_f_presentation(self):
        a, b = thompson_f_pair()
        assert verify_relators(a, b)
        d1, d2 = relator_defects(a, b)
        assert d1.is_identity() and d2.is_identity()

    def test_broken_pair_fails(self):
        a, _ = thompson_f_pair()
        assert not verify_relators(a, a)


class TestJumpCocycle:
    def test_chain_rule_sampled(self, bs_gens, jump_ball6):
        # j(fg, x) = j(f, g x) j(g, x) on 1000 random pairs from the ball
        els = list(jump_ball6)
        rng = random.Random(0)
        pts = [F(0), F(1, 2), F(-3, 4), F(5, 8), F(2)]
        for _ in range(1000):
            f, g = rng.choice(els), rng.choice(els)
            x = rng.choice(pts)
            assert jump_cocycle(f * g, x) == \
                jump_cocycle(f, g(x)) * jump_cocycle(g, x)

    def test_identity_has_no_jumps(self):
        e = PLMap.identity("line")
        assert jump_cocycle(e, F(0)) == 1


class TestStandardGenerators:
    def test_families(self):
        fam = standard_generators("thompsonF")
        assert set(fam) == {"a", "b", "f0"}
        bs = standard_generators("bieriStrebel")
        assert "t(1)" in bs and "g+(0,2)" in bs
        with pytest.raises(ValueError):
            standard_generators("nope")

    def test_bs_maps(self):
        assert bs_g(0, 2)(F(3)) == 6
        assert bs_g_plus(0, 2)(F(-1)) == -1
        assert bs_g_plus(0, 2)(F(1)) == 2
        assert bs_g_minus(0, 2)(F(-1)) == -2
        assert bs_g_minus(0, 2)(F(1)) == 1


class TestBall:
    def test_radius_one(self):
        t = translation(1)
        els = ball({"t": t}, 1)
        assert set(els.values()) == {"", "t", "t^-1"}

    def test_growth_and_words(self, bs_gens):
        b2 = ball(bs_gens, 2)
        b3 = ball(bs_gens, 3)
        assert set(b2) <= set(b3)
        for el, word in b2.items():
            if word:
                # replay the word
                acc = None
                for name in word.split("*"):
                    base = bs_gens[name.removesuffix("^-1")]
                    gen = base.inverse() if name.endswith("^-1") else base
                    acc = gen if acc is None else acc * gen
                assert acc == el


F_BUMP = PLMap.from_points(
    "unit", [(0, 0), (F(1, 4), F(1, 4)), (F(1, 2), F(9, 16)),
             (F(5, 8), F(5, 8)), (1, 1)])
G_BUMP = PLMap.from_points(
    "unit", [(0, 0), (F(1, 2), F(1, 2)), (F(5, 8), F(11, 16)),
             (F(7, 8), F(7, 8)), (1, 1)])


class TestTwoChain:
    def test_minimal_witness(self):
        # frozen oracle: g(f(1/2)) = 19/32 <= 5/8 but g^2(f(1/2)) = 41/64 > 5/8
        assert two_chain_witness(F_BUMP, G_BUMP) == 2
        assert verify_relators(F_BUMP, G_BUMP ** 2)

    def test_witness_minimality_replay(self):
        c, d = F(1, 2), F(5, 8)
        y = F_BUMP(c)
        assert G_BUMP(y) <= d
        assert G_BUMP(G_BUMP(y)) > d

    def test_hypothesis_i_identity(self):
        e = PLMap.identity("unit")
        with pytest.raises(HypothesisFailed) as ei:
            two_chain_witness(F_BUMP, e)
        assert ei.value.which == "i"

    def test_hypothesis_i_disjoint_order(self):
        far = PLMap.from_points(
            "unit", [(0, 0), (F(3, 4), F(3, 4)), (F(13, 16), F(27, 32)),
                     (F(7, 8), F(7, 8)), (1, 1)])
        with pytest.raises(HypothesisFailed) as ei:
            two_chain_witness(F_BUMP, far)
        assert ei.value.which == "i"

    def test_hypothesis_ii_fixed_endpoint(self):
        # g's support ends exactly at d = sup supp(f), so g fixes d
        g = PLMap.from_points(
            "unit", [(0, 0), (F(1, 2), F(1, 2)), (F(9, 16), F(19, 32)),
                     (F(5, 8), F(5, 8)), (1, 1)])
        with pytest.raises(HypothesisFailed) as ei:
            two_chain_witness(F_BUMP, g)
        assert ei.value.which == "ii"

    def test_hypothesis_ii_swapped_pair(self):
        # swapping the chain makes f fix c = inf supp(g)
        with pytest.raises(HypothesisFailed) as ei:
            two_chain_witness(G_BUMP, F_BUMP)
        assert ei.value.which == "ii" 


class TestIntervalCombinatorics:
    def test_cross_free(self):
        assert cross_free([(0, 1), (2, 3)])
        assert cross_free([(0, 3), (1, 2)])
        assert not cross_free([(0, 2), (1, 3)])
        assert cross_free([(None, 0), (1, None)])
        assert not cross_free([(None, 2), (1, 3)])

    def test_linked_pair(self):
        assert linked_pair(F_BUMP, G_BUMP)
        far = PLMap.from_points(
            "unit", [(0, 0), (F(3, 4), F(3, 4)), (F(13, 16), F(27, 32)),
                     (F(7, 8), F(7, 8)), (1, 1)])
        assert not linked_pair(F_BUMP, far)


class TestCommutator:
    def test_commutator_identity_when_commuting(self):
        t = translation(1)
        assert commutator(t, t ** 5).is_identity()
