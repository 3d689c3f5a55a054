from dataclasses import replace

import pytest

from glshp.fracalg import FracOrders, FracSeries, caputo_dx, dt, evaluate, specialize
from glshp.problems import NonlinearTerm, check, example1, example2, example3, ic_series, validate

ONE = FracOrders(1.0, 1.0)


def residual_of(spec, sols):
    """Plug concrete series into the equations at the problem's orders."""
    env = dict(zip(spec.unknowns, sols))
    out = []
    for w in spec.unknowns:
        r = caputo_dx(env[w], spec.operator_order(w), spec.orders)
        for term in spec.nonlinearity.get(w, ()):
            r = r + (env[term.left] * dt(env[term.right], 2)).scale(term.coeff)
        out.append(r - spec.forcing(w))
    return out


def test_example1_values():
    p = example1()
    assert evaluate(p.exact_at_one[0], 1, 1, ONE) == 1.0
    assert evaluate(p.forcing_u, 0, 0, ONE) == 1.0
    assert evaluate(ic_series(p, "u", 0), 0, 2, ONE) == 2.0


def test_example2_values():
    p = example2()
    assert evaluate(p.exact_at_one[0], 1, 1, ONE) == 2.0
    assert evaluate(p.forcing_u, 1, 1, ONE) == -2.0
    assert evaluate(ic_series(p, "u", 0), 0, 1, ONE) == 1.0


def test_example3_values():
    p = example3()
    u, v = p.exact_at_one
    assert (evaluate(u, 1, 0, ONE), evaluate(v, 1, 0, ONE)) == (1.0, 0.5)
    assert evaluate(p.forcing_v, 0, 0, ONE) == 1.0
    assert evaluate(ic_series(p, "v", 0), 0, 1, ONE) == 0.5


@pytest.mark.parametrize("make", [example1, example2, example3])
def test_exact_solution_zeroes_residual(make):
    spec = make()
    for r in residual_of(spec, spec.exact_at_one):
        assert r.max_abs_coeff() > 0.0  # symbolic exponents still differ
        assert specialize(r, spec.orders).max_abs_coeff() <= 1e-15


@pytest.mark.parametrize("make", [example1, example2, example3])
def test_builtins_valid(make):
    assert validate(make()) == []
    assert check(make()) is not None


def test_order_bound():
    diags = validate(example1(1.5))
    assert any(d.startswith("order bound") for d in diags)
    assert validate(example1(0.0))


def test_missing_v_ics():
    p = example3()
    bad = replace(p, ics={"u": p.ics["u"]})
    assert any("missing initial conditions for v" in d for d in validate(bad))


def test_forcing_v_without_coupling():
    p = replace(example1(), forcing_v=FracSeries.constant(1.0))
    assert any(d.startswith("structure") for d in validate(p))


def test_undeclared_unknown_in_nonlinearity():
    p = replace(example1(), nonlinearity={"u": (NonlinearTerm(1.0, "v", "u"),)})
    assert any("undeclared unknown v" in d for d in validate(p))


def test_nonintegrable_forcing():
    p = replace(example1(), forcing_u=FracSeries.monomial(1.0, -1, 0))
    assert any(d.startswith("forcing") for d in validate(p))


def test_ic_must_be_t_only():
    p = replace(example1(), ics={"u": ((0, FracSeries.monomial(1.0, 1, 0)),)})
    assert any("series in t only" in d for d in validate(p))


def test_tag_parse():
    t = NonlinearTerm.from_tag(-1, "v * u_tt")
    assert (t.left, t.right, t.tag) == ("v", "u", "v*u_tt")
    with pytest.raises(ValueError, match="w\\*u_tt"):
        NonlinearTerm.from_tag(1, "w*u_tt")


def test_with_orders():
    p = example3().with_orders(0.7, 0.9)
    assert p.orders == FracOrders(0.7, 0.9)
    assert example1().with_orders(0.8).beta == 1.0
