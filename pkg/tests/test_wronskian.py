import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glshp.fracalg import ALPHA, Exponent, FracOrders, FracSeries, evaluate, t_power, x_power
from glshp.wronskian import closed_form_w3, dalpha, dalpha_power, wronskian_at

from oracles import caputo_power_quad, literal_w3

ONE = FracOrders(1.0)
TWO_A = Exponent(0, 2)


def example_basis(orders, which=ALPHA):
    two = which * 2
    a = orders.alpha if which == ALPHA else orders.beta
    g1 = math.gamma(2 * a + 1)
    g3 = math.gamma(2 * a + 3)
    phi_x = x_power(two, 1 / g1)
    phi_t = t_power(2)
    phi_m = FracSeries([(1 / g1, two, 2), (1 / g3, two + 2, 0)])
    return [phi_x, phi_t, phi_m]


class TestDalpha:
    def test_pure_t(self):
        assert dalpha(t_power(2), ALPHA, ONE) == t_power(1, 2.0)

    def test_normalized_power(self):
        o = FracOrders(0.8)
        out = dalpha(x_power(TWO_A, 1 / math.gamma(2.6)), ALPHA, o)
        assert out.allclose(x_power(ALPHA, 1 / math.gamma(1.8)), rtol=1e-14)
        for x in (0.1, 0.4, 0.85):
            ref = caputo_power_quad(1.6, 1 / math.gamma(2.6), 0.8, x)
            assert evaluate(out, x, 0.5, o) == pytest.approx(ref, rel=1e-6)

    def test_product(self):
        # exponents stay symbolic: x^(1-a) t, equal to x + t once a = 1
        out = dalpha(FracSeries([(1.0, 1, 1)]), ALPHA, ONE)
        assert out == FracSeries([(1.0, 1, 0), (1.0, Exponent(1, -1), 1)])
        for x, t in [(0.2, 0.7), (0.9, 0.1)]:
            assert evaluate(out, x, t, ONE) == pytest.approx(x + t, rel=1e-15)

    @settings(max_examples=50)
    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 1.0))
    def test_linear(self, a, b, alpha):
        o = FracOrders(alpha)
        f, g, h = example_basis(o)
        lhs = dalpha(f.scale(a) + h.scale(b), ALPHA, o)
        rhs = dalpha(f, ALPHA, o).scale(a) + dalpha(h, ALPHA, o).scale(b)
        assert lhs.allclose(rhs, rtol=1e-14, atol=1e-15)


class TestDalphaPower:
    def test_square(self):
        assert dalpha_power(t_power(2), 2, ALPHA, ONE) == FracSeries.constant(2.0)

    def test_identity(self):
        s = example_basis(FracOrders(0.7))[2]
        assert dalpha_power(s, 0, ALPHA, FracOrders(0.7)) is s

    def test_mixed_row(self):
        # D^2 of t^2 x^2/2 + x^4/24 at order one: 3x^2/2 + 4tx + t^2
        phi = example_basis(ONE)[2]
        got = evaluate(dalpha_power(phi, 2, ALPHA, ONE), 0.3, 0.4, ONE)
        assert got == pytest.approx(1.5 * 0.09 + 4 * 0.12 + 0.16, rel=1e-14)

    def test_notes_record_annihilation(self):
        notes = []
        dalpha_power(x_power(1), 1, 2, ONE, notes)
        assert notes and "annihilated" in notes[0]


class TestWronskianAt:
    def test_example1_point(self):
        rep = wronskian_at(example_basis(ONE), 0.2, 0.5, ALPHA, ONE)
        # -3t^3x^2 + 8t^2x^3/3 + 5tx^4/12 - x^5/12
        assert rep.value == pytest.approx(-0.00936, abs=1e-15)
        assert rep.value == pytest.approx(literal_w3(0.2, 0.5, 1.0), abs=1e-15)
        assert rep.independent
        assert rep.threshold == 1e-8
        assert rep.matrix[0][1] == 0.25

    def test_example2_order(self):
        b = example_basis(ONE)
        rep = wronskian_at([b[1], b[0], b[2]], 0.3, 0.4, ALPHA, ONE)
        assert rep.value == pytest.approx(0.0046125, abs=1e-15)

    def test_duplicate(self):
        rep = wronskian_at([t_power(2), t_power(2)], 0.5, 0.5, ALPHA, ONE)
        assert rep.value == 0.0
        assert not rep.independent

    def test_origin(self):
        rep = wronskian_at(example_basis(ONE), 0.0, 0.0, ALPHA, ONE)
        assert rep.value == 0.0 and not rep.independent

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            wronskian_at([t_power(2)], 1.5, 0.5, ALPHA, ONE)

    @pytest.mark.parametrize("alpha", [0.6, 0.8, 1.0])
    def test_agrees_with_hand_expansion(self, alpha):
        o = FracOrders(alpha)
        basis = example_basis(o)
        rng = np.random.default_rng(7)
        for x, t in rng.uniform(0.0, 1.0, (100, 2)):
            x = max(x, 1e-3)
            got = wronskian_at(basis, x, t, ALPHA, o).value
            assert got == pytest.approx(literal_w3(x, t, alpha), abs=1e-9)

    def test_beta_basis(self):
        o = FracOrders(1.0, 0.7)
        basis = example_basis(o, which=Exponent(0, 0, 1))
        got = wronskian_at(basis, 0.4, 0.6, Exponent(0, 0, 1), o).value
        assert got == pytest.approx(literal_w3(0.4, 0.6, 0.7), abs=1e-12)

    def test_permutation_parity(self):
        o = FracOrders(0.85)
        basis = example_basis(o)
        base = wronskian_at(basis, 0.35, 0.55, ALPHA, o).value
        for perm in itertools.permutations(range(3)):
            inversions = sum(1 for i in range(3) for j in range(i) if perm[j] > perm[i])
            got = wronskian_at([basis[i] for i in perm], 0.35, 0.55, ALPHA, o).value
            assert got == pytest.approx((-1) ** inversions * base, rel=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.3, 1.0), st.floats(0.05, 1), st.floats(0, 1))
    def test_dependent_set_vanishes(self, c1, c2, alpha, x, t):
        o = FracOrders(alpha)
        f, _, h = example_basis(o)
        combo = f.scale(c1) + h.scale(c2)
        rep = wronskian_at([f, h, combo], x, t, ALPHA, o)
        assert abs(rep.value) <= 1e-10


class TestClosedForm:
    def test_example_points(self):
        w = closed_form_w3(ONE)
        assert w(0.2, 0.5) == pytest.approx(-0.102, abs=1e-15)
        assert closed_form_w3(ONE, "t-first")(0.3, 0.4) == pytest.approx(0.0444, abs=1e-15)
        assert w(0.3, 0.4) == pytest.approx(-0.0444, abs=1e-15)

    def test_reduces_to_polynomial(self):
        w = closed_form_w3(ONE)
        for x, t in [(0.1, 0.9), (0.7, 0.2), (1.0, 1.0)]:
            assert w(x, t) == pytest.approx(7 * t * x**3 - 3 * t**2 * x**2 - 4 * t**3 * x, abs=1e-14)

    @pytest.mark.parametrize("alpha", [0.6, 0.9])
    def test_vanishes_on_axis(self, alpha):
        assert closed_form_w3(FracOrders(alpha))(0.0, 0.7) == 0.0

    def test_differs_from_literal_determinant(self):
        # the reference form is not the determinant of the basis; record that
        w = closed_form_w3(ONE)
        assert abs(w(0.2, 0.5) - literal_w3(0.2, 0.5, 1.0)) > 0.09
