"""Fractional partial Wronskian under ``D = d/dt + d^a/dx^a``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fracalg import (
    Exponent,
    FracOrders,
    FracSeries,
    caputo_annihilates,
    caputo_dx,
    dt,
    evaluate,
)

DEFAULT_THRESHOLD = 1e-8


@dataclass(frozen=True)
class WronskianReport:
    value: float
    point: tuple[float, float]
    order: str
    order_value: float
    matrix: tuple[tuple[float, ...], ...]
    independent: bool
    threshold: float
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "point": {"x": self.point[0], "t": self.point[1]},
            "order": self.order,
            "order_value": self.order_value,
            "threshold": self.threshold,
            "independent": self.independent,
            "matrix": [list(r) for r in self.matrix],
            "notes": list(self.notes),
        }


def dalpha(s: FracSeries, order, orders: FracOrders) -> FracSeries:
    """``d/dt s + d^order/dx^order s``."""
    return dt(s, 1, orders) + caputo_dx(s, order, orders)


def dalpha_power(s: FracSeries, k: int, order, orders: FracOrders, notes: list | None = None):
    """k-fold composition of :func:`dalpha`.

    If ``notes`` is a list, a line is appended for every non-constant x-power
    that the Caputo part annihilates along the way; on such terms literal
    composition and a single derivative of order ``k*order`` can disagree.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    order = Exponent.coerce(order)
    for step in range(k):
        if notes is not None:
            for m in s.monomials():
                if not m.xexp.is_zero and caputo_annihilates(m.xexp, order, orders):
                    notes.append(f"step {step + 1}: x^({m.xexp}) t^({m.texp}) annihilated")
        s = dalpha(s, order, orders)
    return s


def wronskian_matrix(fs, x: float, t: float, order, orders: FracOrders, notes=None):
    n = len(fs)
    M = np.empty((n, n))
    for i, f in enumerate(fs):
        g = f
        for k in range(n):
            M[k, i] = evaluate(g, x, t, orders)
            if k + 1 < n:
                g = dalpha_power(g, 1, order, orders, notes)
    return M


def wronskian_at(
    fs,
    x: float,
    t: float,
    order,
    orders: FracOrders,
    threshold: float = DEFAULT_THRESHOLD,
) -> WronskianReport:
    """Evaluate the fractional Wronskian of ``fs`` at one point.

    Row ``k`` holds ``D^k`` applied to each function (row order follows the
    function list). The determinant comes from an LU factorization with
    partial pivoting. A value below ``threshold`` in magnitude is reported as
    not independent: a vanishing Wronskian at a single point is inconclusive.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one function")
    if not (0.0 <= x <= 1.0 and 0.0 <= t <= 1.0):
        raise ValueError(f"point ({x}, {t}) outside the unit square")
    order = Exponent.coerce(order)
    notes: list[str] = []
    M = wronskian_matrix(fs, x, t, order, orders, notes)
    value = float(np.linalg.det(M))
    return WronskianReport(
        value=value,
        point=(float(x), float(t)),
        order=str(order),
        order_value=order.value(orders),
        matrix=tuple(tuple(float(v) for v in row) for row in M),
        independent=bool(abs(value) > threshold),
        threshold=threshold,
        notes=tuple(dict.fromkeys(notes)),
    )


def closed_form_w3(orders: FracOrders, variant: str = "x-first", which: str = "alpha"):
    """Reference closed-form Wronskian for the three-function example basis.

    Returns ``f(x, t)``. ``variant="x-first"`` is the row order with the
    pure-x function first; ``"t-first"`` swaps the first two functions and
    flips the sign. ``which`` selects alpha or beta as the order.

    Kept for reporting next to the literal value. It is not the determinant
    of the basis under repeated application of ``D``; see the README.
    """
    if variant not in ("x-first", "t-first"):
        raise ValueError(f"unknown variant {variant!r}")
    a = orders.alpha if which == "alpha" else orders.beta
    sign = 1.0 if variant == "x-first" else -1.0
    ga1 = math.gamma(a + 1.0)
    g2a1 = math.gamma(2.0 * a + 1.0)
    g3ma = math.gamma(3.0 - a)

    def w(x, t):
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        xa = x**a
        x2ma = x ** (2.0 - a)
        first = x ** (2.0 * a) / g2a1 * (12.0 * t * xa / ga1 + 8.0 * t * t + 2.0 * x2ma * t / g3ma)
        second = t * t * xa / ga1 * (6.0 * xa / ga1 + 4.0 * t + x2ma / g3ma)
        out = sign * (first - second)
        return float(out) if out.ndim == 0 else out

    return w
