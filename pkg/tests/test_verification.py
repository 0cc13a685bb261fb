import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsim.constructions import c2_extension
from selfsim.engine import is_trivial_to_depth
from selfsim.machines import Vect, adding_machine, zomega_machine
from selfsim.verification import (
    IntMatrix,
    IntPoly,
    ShapeMismatch,
    block_chi_check,
    check_corefree_desk,
    derivation,
    level_transitivity_check,
    random_block_instance,
    state_growth_probe,
)

from test_engine import IdentityMachine

A = adding_machine()


def sym(m: IntMatrix):
    return sympy.Matrix(m.rows, m.cols, [x for r in m.entries for x in r])


def oracle_block(chi, g, f1, n):
    """chi evaluated at the assembled block matrix with sympy, times f^n."""
    f0 = sym(chi.companion())
    k, r = f0.rows, f1.rows
    f = sympy.BlockMatrix([[f0, sympy.zeros(k, r)], [sym(g), sym(f1)]]).as_explicit()
    chi_f = sum((c * f**i for i, c in enumerate(chi.coeffs)), sympy.zeros(k + r, k + r))
    return chi_f * f**n, f0


def test_corefree_examples():
    assert check_corefree_desk(A, 4, 8) == []
    assert check_corefree_desk(IdentityMachine(), 2, 5) != []
    assert check_corefree_desk(c2_extension(A), 3, 10) == []


def test_corefree_monotone():
    M = IdentityMachine()
    for g in check_corefree_desk(M, 3, 6):
        assert all(is_trivial_to_depth(M, g, d) for d in range(6))


def test_level_transitivity():
    assert level_transitivity_check(A, 10)
    assert level_transitivity_check(A, 0)
    assert level_transitivity_check(zomega_machine(6, 4), 8)
    for n in range(6):
        assert level_transitivity_check(A, n)


def test_level_transitivity_fails_for_trivial_action():

    class Fixed(IdentityMachine):
        degree = 2
        transversal = (0, 1)
        generators = {"a": 2}

        def in_H(self, g):
            return g % 2 == 0

        def apply_f(self, h):
            return 0

    assert not level_transitivity_check(Fixed(), 1)


def test_state_growth():
    assert state_growth_probe(A, 1, 10) == (2, "closed")
    assert state_growth_probe(A, 0, 10) == (1, "closed")
    count, status = state_growth_probe(zomega_machine("seed:0xC0FFEE:128"), Vect.basis(0), 200)
    assert count >= 50 and status == "budget_exhausted"


class TestBlock:
    def test_linear_chi(self):
        c = 3
        chi = IntPoly((-c, 1))
        g = IntMatrix.of([[1], [2]])
        f1 = IntMatrix.of([[0, 1], [1, 1]])
        assert derivation(chi, g, chi.companion(), f1) == g
        assert block_chi_check(chi, g, f1, 0)

    def test_n_zero(self):
        chi = IntPoly((2, -1, 0, 1))
        g = IntMatrix.of([[1, 0, -1]])
        f1 = IntMatrix.of([[2]])
        assert block_chi_check(chi, g, f1, 0, details=True) == (True, True)

    def test_companion_annihilated(self):
        rng = random.Random(0)
        for _ in range(50):
            chi, *_ = random_block_instance(rng)
            f0 = chi.companion()
            assert chi(f0) == IntMatrix.zeros(f0.rows, f0.cols)

    def test_derivation_sum_formula(self):
        rng = random.Random(1)
        for _ in range(50):
            chi, g, f1, _ = random_block_instance(rng)
            f0 = chi.companion()
            total = IntMatrix.zeros(g.rows, g.cols)
            for i, c in enumerate(chi.coeffs):
                for j in range(i):
                    total = total + ((f1 ** j) @ g @ (f0 ** (i - 1 - j))).scale(c)
            assert derivation(chi, g, f0, f1) == total

    def test_random_against_sympy(self):
        rng = random.Random(2)
        for _ in range(200):
            chi, g, f1, n = random_block_instance(rng)
            assert block_chi_check(chi, g, f1, n, details=True) == (True, True)
            lhs, f0 = oracle_block(chi, g, f1, n)
            k = f0.rows
            assert lhs[:k, :] == sympy.zeros(k, lhs.cols)
            d = sym(derivation(chi, g, chi.companion(), f1))
            assert lhs[k:, :k] == sym(f1) ** n * d

    def test_shape_mismatch(self):
        chi = IntPoly((1, 1))
        with pytest.raises(ShapeMismatch):
            block_chi_check(chi, IntMatrix.of([[1, 2]]), IntMatrix.of([[1]]), 0)
        with pytest.raises(ShapeMismatch):
            block_chi_check(chi, IntMatrix.of([[1]]), IntMatrix.of([[1, 2]]), 0)

    def test_not_monic(self):
        with pytest.raises(ValueError):
            IntPoly((1, 2)).companion()
        with pytest.raises(ValueError):
            IntPoly((1, 0))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32))
    def test_identity_property(self, seed):
        assert block_chi_check(*random_block_instance(random.Random(seed)), details=True) == (True, True)
