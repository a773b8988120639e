import random

import pytest

from plorder.exactnum import LatticePreorder
from plorder.plante import (
    MINUS_INFINITY,
    CSet,
    PlanteEngine,
    WreathElement,
    commutator,
    config_compare,
    cset_family_cross_free,
    delta_kernel,
    plante_sign,
)
from plorder.preorders import Sign


def rand_element(rng, k=1, span=4, values=3):
    lamp = {x: rng.randint(-values, values)
            for x in range(-span, span + 1) if rng.random() < 0.4}
    return WreathElement(lamp, rng.randint(-span, span), k)


class TestWreathAlgebra:
    def test_identity_and_inverse(self):
        rng = random.Random(0)
        e = WreathElement.identity()
        for _ in range(50):
            w = rand_element(rng)
            assert w * w.inverse() == e
            assert w.inverse() * w == e
            assert w * e == w and e * w == w

    def test_associativity(self):
        rng = random.Random(1)
        for _ in range(50):
            a, b, c = (rand_element(rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)

    def test_shift_acts_on_lamps(self):
        t = WreathElement.shift_by(1)
        h0 = WreathElement.lamp_at(0)
        h3 = t ** 3 * h0 * t ** -3
        assert h3 == WreathElement.lamp_at(3)

    def test_conjugate_lamps_commute(self):
        t = WreathElement.shift_by(1)
        h0 = WreathElement.lamp_at(0)
        hs = [t ** n * h0 * t ** -n for n in range(-3, 7)]
        e = WreathElement.identity()
        for x in hs:
            for y in hs:
                assert commutator(x, y) == e

    def test_pow_matches_repeated_product(self):
        rng = random.Random(2)
        w = rand_element(rng)
        acc = WreathElement.identity()
        for n in range(6):
            assert w ** n == acc
            acc = acc * w
        assert w ** -3 == (w ** 3).inverse()

    def test_lamp_normalization(self):
        w = WreathElement({0: 1, 1: 0, 2: -2})
        assert set(w.lamp) == {0, 2}
        assert w.top() == 2
        assert WreathElement.identity().top() == MINUS_INFINITY


class TestPlanteSign:
    def test_basic_signs(self):
        assert plante_sign(WreathElement.lamp_at(0)) == Sign.POSITIVE
        assert plante_sign(WreathElement.lamp_at(0, -1)) == Sign.NEGATIVE
        assert plante_sign(WreathElement.shift_by(5)) == Sign.RESIDUE

    def test_top_lamp_decides(self):
        w = WreathElement({0: -7, 3: 1})
        assert plante_sign(w) == Sign.POSITIVE
        assert plante_sign(w.inverse()) == Sign.NEGATIVE

    def test_rank_two_lex(self):
        order = LatticePreorder([(1, 0), (0, 1)])
        eng = PlanteEngine(k=2, order=order)
        assert eng.sign(WreathElement({0: (0, 3)}, 0, k=2)) == Sign.POSITIVE
        assert eng.sign(WreathElement({0: (-1, 3)}, 0, k=2)) == Sign.NEGATIVE

    def test_config_compare(self):
        a = WreathElement({0: 1, 2: 1})
        b = WreathElement({0: 5, 2: 1})
        assert config_compare(a, b) == -1
        assert config_compare(b, a) == 1
        assert config_compare(a, a) == 0


class TestDeltaKernel:
    def test_agreeing_configs(self):
        a = WreathElement({1: 2}, shift=3)
        b = WreathElement({1: 2}, shift=-1)
        assert delta_kernel(a, b) == MINUS_INFINITY

    def test_top_disagreement(self):
        a = WreathElement({0: 1, 2: 5})
        b = WreathElement({0: 1, 2: 4, -3: 1})
        assert delta_kernel(a, b) == 2

    def test_ultrametric_on_random_triples(self):
        rng = random.Random(3)
        for _ in range(1000):
            a, b, c = (rand_element(rng) for _ in range(3))
            dab = delta_kernel(a, b)
            assert dab <= max(delta_kernel(a, c), delta_kernel(c, b))
            assert dab == delta_kernel(b, a)

    def test_shift_equivariance(self):
        rng = random.Random(4)
        t = WreathElement.shift_by(1)
        for _ in range(200):
            a, b = rand_element(rng), rand_element(rng)
            d = delta_kernel(a, b)
            ds = delta_kernel(t * a, t * b)
            if d == MINUS_INFINITY:
                assert ds == MINUS_INFINITY
            else:
                assert ds == d + 1


class TestCSets:
    def test_membership(self):
        sigma = WreathElement({1: 1, 3: 2})
        c = CSet(sigma, 0)
        assert c.contains(sigma)
        assert c.contains(WreathElement({1: 1, 3: 2, 0: 9, -5: 1}))
        assert not c.contains(WreathElement({1: 1}))
        assert not c.contains(WreathElement({1: 1, 3: 2, 2: 1}))

    def test_relations(self):
        sigma = WreathElement({1: 1, 3: 2})
        outer = CSet(sigma, 2)
        inner = CSet(sigma, 0)
        assert inner.relation(outer) == "subset"
        assert outer.relation(inner) == "superset"
        assert inner.relation(CSet(sigma, 0)) == "equal"
        other = CSet(WreathElement({1: 2, 3: 2}), 0)
        assert inner.relation(other) == "disjoint"
        assert not inner.crosses(other)

    def test_family_cross_free(self, plante_gens):
        from plorder.plgroup import ball
        elements = list(ball(plante_gens, 4,
                             identity=WreathElement.identity()))
        csets = [CSet(sigma, cut) for sigma in elements for cut in (-1, 0, 1)]
        assert cset_family_cross_free(csets)

    def test_membership_consistent_with_relation(self):
        # exhaustive: relation verdicts agree with sampled membership
        rng = random.Random(5)
        csets = [CSet(rand_element(rng, span=2, values=1), rng.randint(-2, 2))
                 for _ in range(25)]
        probes = [rand_element(rng, span=3, values=1) for _ in range(120)]
        for A in csets:
            for B in csets:
                rel = A.relation(B)
                inA = {p for p in probes if A.contains(p)}
                inB = {p for p in probes if B.contains(p)}
                if rel == "disjoint":
                    assert not (inA & inB)
                elif rel == "subset":
                    assert inA <= inB
                elif rel == "superset":
                    assert inB <= inA
                elif rel == "equal":
                    assert inA == inB
