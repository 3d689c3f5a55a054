"""Problem declarations: the built-in examples and a validator.

A problem is one equation in ``u`` or a coupled pair in ``(u, v)``::

    D_x^{2a} u + sum_k c_k * L_k * (R_k)_tt = f
    D_x^{2b} v + sum_k c_k * L_k * (R_k)_tt = g

with ``L_k, R_k`` drawn from ``{u, v}`` and Cauchy data given on ``x = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Mapping

from .fracalg import DomainError, Exponent, FracOrders, FracSeries

UNKNOWNS = ("u", "v")
GROUPS = ("x", "t", "mixed")
NONLINEAR_TAGS = ("u*u_tt", "v*u_tt", "u*v_tt", "v*v_tt")


@dataclass(frozen=True)
class NonlinearTerm:
    """``coeff * left * d^2(right)/dt^2``."""

    coeff: float
    left: str
    right: str

    @property
    def tag(self) -> str:
        return f"{self.left}*{self.right}_tt"

    @classmethod
    def from_tag(cls, coeff: float, tag: str) -> NonlinearTerm:
        tag = tag.replace(" ", "")
        if tag not in NONLINEAR_TAGS:
            raise ValueError(f"unknown nonlinearity tag {tag!r}; expected one of {', '.join(NONLINEAR_TAGS)}")
        left, right = tag.split("*")
        return cls(float(coeff), left, right[0])


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    kind: str
    alpha: float
    beta: float
    forcing_u: FracSeries
    forcing_v: FracSeries | None = None
    nonlinearity: Mapping[str, tuple[NonlinearTerm, ...]] = field(default_factory=dict)
    ics: Mapping[str, tuple[tuple[int, FracSeries], ...]] = field(default_factory=dict)
    exact_at_one: tuple[FracSeries, ...] | None = None
    basis_order: tuple[str, ...] = GROUPS
    witness: tuple[float, float] = (0.2, 0.5)

    @property
    def orders(self) -> FracOrders:
        return FracOrders(self.alpha, self.beta)

    @property
    def unknowns(self) -> tuple[str, ...]:
        return UNKNOWNS if self.kind == "coupled" else UNKNOWNS[:1]

    def forcing(self, unknown: str) -> FracSeries:
        return self.forcing_u if unknown == "u" else self.forcing_v

    def operator_order(self, unknown: str) -> Exponent:
        return Exponent(0, 2, 0) if unknown == "u" else Exponent(0, 0, 2)

    def with_orders(self, alpha: float, beta: float | None = None) -> ProblemSpec:
        return replace(self, alpha=float(alpha), beta=float(self.beta if beta is None else beta))


def _series(*terms) -> FracSeries:
    return FracSeries(terms)


def _zero_slope() -> FracSeries:
    return FracSeries.zero()


def example1(alpha: float = 1.0) -> ProblemSpec:
    return ProblemSpec(
        name="example1",
        kind="single",
        alpha=alpha,
        beta=1.0,
        forcing_u=_series((1.0, 0, 0), (-0.5, 2, 0), (-0.5, 0, 2)),
        nonlinearity={"u": (NonlinearTerm(-1.0, "u", "u"),)},
        ics={"u": ((0, _series((0.5, 0, 2))), (1, _zero_slope()))},
        exact_at_one=(_series((0.5, 2, 0), (0.5, 0, 2)),),
        basis_order=("x", "t", "mixed"),
        witness=(0.2, 0.5),
    )


def example2(alpha: float = 1.0) -> ProblemSpec:
    return ProblemSpec(
        name="example2",
        kind="single",
        alpha=alpha,
        beta=1.0,
        forcing_u=_series((2.0, 0, 0), (-2.0, 2, 0), (-2.0, 0, 2)),
        nonlinearity={"u": (NonlinearTerm(-1.0, "u", "u"),)},
        ics={"u": ((0, _series((1.0, 0, 2))), (1, _zero_slope()))},
        exact_at_one=(_series((1.0, 2, 0), (1.0, 0, 2)),),
        basis_order=("t", "x", "mixed"),
        witness=(0.3, 0.4),
    )


def example3(alpha: float = 1.0, beta: float = 1.0) -> ProblemSpec:
    return ProblemSpec(
        name="example3",
        kind="coupled",
        alpha=alpha,
        beta=beta,
        forcing_u=_series((2.0, 0, 0), (-2.0, 2, 0), (-2.0, 0, 2)),
        forcing_v=_series((1.0, 0, 0), (1.5, 2, 0), (1.5, 0, 2)),
        nonlinearity={
            "u": (NonlinearTerm(-1.0, "v", "u"), NonlinearTerm(-1.0, "u", "v")),
            "v": (NonlinearTerm(-1.0, "v", "v"), NonlinearTerm(1.0, "u", "u")),
        },
        ics={
            "u": ((0, _series((1.0, 0, 2))), (1, _zero_slope())),
            "v": ((0, _series((0.5, 0, 2))), (1, _zero_slope())),
        },
        exact_at_one=(_series((1.0, 2, 0), (1.0, 0, 2)), _series((0.5, 2, 0), (0.5, 0, 2))),
        basis_order=("x", "t", "mixed"),
        witness=(0.2, 0.5),
    )


EXAMPLES = {1: example1, 2: example2, 3: example3}


def validate(spec: ProblemSpec) -> list[str]:
    """Diagnostics for a problem declaration; an empty list means valid."""
    out: list[str] = []
    for name in ("alpha", "beta"):
        v = getattr(spec, name)
        if not (isinstance(v, (int, float)) and math.isfinite(v) and 0.0 < v <= 1.0):
            out.append(f"order bound: {name} = {v!r} is outside (0, 1]")
    if spec.kind not in ("single", "coupled"):
        out.append(f"structure: kind must be 'single' or 'coupled', got {spec.kind!r}")
        return out
    coupled = spec.kind == "coupled"
    if coupled != (spec.forcing_v is not None):
        out.append("structure: forcing for v must be present exactly when the problem is coupled")
    for w in UNKNOWNS:
        declared = w in spec.unknowns
        if declared and w not in spec.ics:
            out.append(f"structure: missing initial conditions for {w}")
        if not declared and w in spec.ics:
            out.append(f"structure: initial conditions given for undeclared unknown {w}")
        if not declared and spec.nonlinearity.get(w):
            out.append(f"structure: nonlinearity given for undeclared unknown {w}")
    for eq, terms in spec.nonlinearity.items():
        for term in terms:
            for w in (term.left, term.right):
                if w not in spec.unknowns:
                    out.append(f"nonlinearity: equation {eq} references undeclared unknown {w}")
    for w, ics in spec.ics.items():
        seen = set()
        for k, series in ics:
            if k in seen:
                out.append(f"ic: duplicate derivative order {k} for {w}")
            seen.add(k)
            if k not in (0, 1):
                out.append(f"ic: derivative order {k} for {w} is not 0 or 1")
            if any(not m.xexp.is_zero for m in series):
                out.append(f"ic: data for {w} (order {k}) must be a series in t only")
    if sorted(spec.basis_order) != sorted(GROUPS):
        out.append(f"basis: order must be a permutation of {', '.join(GROUPS)}")
    if len(spec.witness) != 2 or not all(0.0 <= c <= 1.0 for c in spec.witness):
        out.append(f"basis: witness point {spec.witness!r} is outside the unit square")
    if out:
        return out
    orders = spec.orders
    for w in spec.unknowns:
        f = spec.forcing(w)
        for m in f:
            a, b = m.xexp.value(orders), m.texp.value(orders)
            if not (a > -1.0 and b > -1.0):
                out.append(f"forcing: {w} term {m.coeff!r} x^{a} t^{b} is not integrable over the unit square")
        for _, series in spec.ics[w]:
            for m in series:
                if not (m.texp.is_constant and m.texp.p >= 0 and m.texp.p.denominator == 1) and not m.texp.value(orders) > 1.0:
                    out.append(f"ic: t^({m.texp}) in the data for {w} cannot be differentiated twice in t")
    if spec.exact_at_one is not None and len(spec.exact_at_one) != len(spec.unknowns):
        out.append("exact: one series per unknown is required")
    return out


def check(spec: ProblemSpec) -> ProblemSpec:
    """Raise :class:`DomainError` listing all diagnostics, or return ``spec``."""
    diags = validate(spec)
    if diags:
        raise DomainError("; ".join(diags))
    return spec


def ic_series(spec: ProblemSpec, unknown: str, order: int) -> FracSeries:
    for k, s in spec.ics.get(unknown, ()):
        if k == order:
            return s
    return FracSeries.zero()


__all__ = [
    "EXAMPLES",
    "GROUPS",
    "NONLINEAR_TAGS",
    "NonlinearTerm",
    "ProblemSpec",
    "UNKNOWNS",
    "check",
    "example1",
    "example2",
    "example3",
    "ic_series",
    "validate",
]
