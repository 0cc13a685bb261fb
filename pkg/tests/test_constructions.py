import random

import pytest

from selfsim.constructions import (
    FiberViolation,
    ParabolicRequired,
    c2_extension,
    direct_product,
    economical_power,
    lamplighter,
    parabolic_trivial_probe,
)
from selfsim.engine import act_vertex, decompose, portrait, states
from selfsim.machines import adding_machine, zomega_machine
from selfsim.verification import check_action_axioms, check_corefree_desk, check_transversal

A = adding_machine()


def test_direct_product():
    P = direct_product(A, A)
    assert P.degree == 4
    d = decompose(P, P.identity())
    assert d.perm == (0, 1, 2, 3) and set(d.restrictions) == {(0, 0)}
    d = decompose(P, (1, 0))
    assert all(r[1] == 0 for r in d.restrictions)
    assert check_transversal(P)


def test_product_commutes():
    P, rng = direct_product(A, A), random.Random(4)
    for _ in range(5):
        g, h = P.random_element(rng), P.random_element(rng)
        assert portrait(P, P.mul(g, h), 5) == portrait(P, P.mul(h, g), 5)


def test_economical_power():
    assert economical_power(A, 1) is A
    E = economical_power(A, 2)
    assert E.apply_f((2, 5)) == (5, 1)
    assert E.degree == 2 and check_transversal(E)
    with pytest.raises(ValueError):
        economical_power(A, 0)


class TestC2:
    C = c2_extension(A)

    def test_sigma_squared(self):
        s = self.C.generators["sigma"]
        assert self.C.mul(s, s) == self.C.identity()

    def test_transversal(self):
        assert len(self.C.transversal) == 2 * A.degree == self.C.degree
        assert check_transversal(self.C)

    def test_f_formula(self):
        h = self.C._make({0: 4, 1: 7, 2: -1, 3: 5}, 0)
        assert self.C.apply_f(h) == self.C._make({0: 2, 1: -1, 2: 7, 4: 5}, 0)

    def test_sigma_conjugation_swaps_pairs(self):
        s = self.C.generators["sigma"]
        rng = random.Random(0)
        for _ in range(50):
            g = self.C.random_element(rng)
            h = self.C._make(dict(g.vec), 0)
            conj = self.C.mul(self.C.mul(s, h), s)
            assert conj == self.C._make({i ^ 1: a for i, a in h.vec}, 0)
            assert self.C.mul(self.C.mul(s, conj), s) == h

    def test_inverse(self):
        rng = random.Random(1)
        for _ in range(100):
            g = self.C.random_element(rng)
            assert self.C.mul(g, self.C.inv(g)) == self.C.identity()
            assert self.C.mul(self.C.inv(g), g) == self.C.identity()


class TestLamplighter:
    L = lamplighter(A, 2)

    def test_lamp_states(self):
        s = states(self.L, self.L.generators["lamp"], 10)
        assert s.closed and set(s.elements) == {self.L.lamp(), self.L.identity()}

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_lamp_states_any_k(self, k):
        L = lamplighter(A, k)
        assert set(states(L, L.lamp(), 10).elements) == {L.lamp(), L.identity()}

    def test_base_states_unchanged(self):
        for g in [1, -1, 5, 12, -33, 100]:
            base = states(A, g, 200)
            wreath = states(self.L, self.L.embed(g), 200)
            assert wreath.status == base.status
            assert {x.base for x in wreath.elements} == set(base.elements)
            assert all(not x.lamps for x in wreath.elements)

    def test_lamp_algebra(self):
        a = self.L.lamp()
        assert self.L.mul(a, a) == self.L.identity()
        x, y = self.L.lamp(1, 3), self.L.lamp(1, -7)
        assert self.L.mul(x, y) == self.L.mul(y, x)

    def test_group_law(self):
        rng = random.Random(2)
        for _ in range(200):
            x, y, z = (self.L.random_element(rng) for _ in range(3))
            assert self.L.mul(self.L.mul(x, y), z) == self.L.mul(x, self.L.mul(y, z))
            assert self.L.mul(x, self.L.inv(x)) == self.L.identity()

    def test_f_is_homomorphism_on_H(self):
        rng = random.Random(3)
        L = self.L
        for _ in range(200):
            x, y = L.random_H_element(rng), L.random_H_element(rng)
            assert L.in_H(x) and L.in_H(y)
            assert L.apply_f(L.mul(x, y)) == L.mul(L.apply_f(x), L.apply_f(y))

    def test_transversal(self):
        assert self.L.degree == 4 and check_transversal(self.L)
        assert self.L.transversal[0] == self.L.identity()

    def test_fiber_violation_detected(self):
        class Collapsing(type(A)):
            name = "collapsing"

            def apply_f(self, h):
                return 0

        L = lamplighter(Collapsing(), 2)
        x = L._make({0: 1, 2: 1}, 0)
        with pytest.raises(FiberViolation):
            L.apply_f(x)

    def test_requires_parabolic_trivial(self):
        with pytest.raises(ParabolicRequired):
            lamplighter(zomega_machine(2), 2)
        with pytest.raises(ParabolicRequired):
            lamplighter(lamplighter(A, 2), 2)


def test_parabolic_probe():
    assert parabolic_trivial_probe(A, 10, 6) == []
    assert parabolic_trivial_probe(zomega_machine("seed:0xC0FFEE:128", 4), 48, 3) == []
    # 2**3 fixes the zero ray to depth 3
    assert 8 in parabolic_trivial_probe(economical_power(A, 1), 3, 8)


@pytest.mark.parametrize(
    "M",
    [direct_product(A, A), economical_power(A, 3), c2_extension(A), lamplighter(A, 2), lamplighter(A, 3)],
    ids=lambda M: M.name,
)
def test_construction_suites(M):
    assert all(c.ok for c in check_action_axioms(M, trials=200, depth=8, seed=1))
    assert check_corefree_desk(M, 3, 10) == []
