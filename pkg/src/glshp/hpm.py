"""Zeroth-order homotopy bootstrap and basis extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .fracalg import (
    DomainError,
    Exponent,
    FracOrders,
    FracSeries,
    Monomial,
    gamma_ratio,
    rl_integral_x,
)
from .problems import GROUPS, ProblemSpec
from .wronskian import WronskianReport, wronskian_at

#: Relative tolerance when checking that a group carries one common coefficient.
SPAN_RTOL = 1e-12


class GroupingError(ValueError):
    """The initial guess has monomials that fit no basis group."""


@dataclass(frozen=True)
class InitialGuess:
    unknown: str
    series: FracSeries
    order: Exponent
    ic_data: tuple[tuple[int, FracSeries], ...]


@dataclass(frozen=True)
class BasisSet:
    unknown: str
    functions: tuple[FracSeries, ...]
    labels: tuple[str, ...]
    source: tuple[tuple[Monomial, ...], ...]
    certificate: WronskianReport | None = None

    def __post_init__(self):
        if not self.functions:
            raise ValueError("a basis needs at least one function")
        if any(not f for f in self.functions):
            raise ValueError("basis functions must be nonzero")
        if not (len(self.functions) == len(self.labels) == len(self.source)):
            raise ValueError("functions, labels and source must have equal length")

    def __len__(self):
        return len(self.functions)

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.independent


def bootstrap(problem: ProblemSpec, which: str = "u") -> InitialGuess:
    """Solve the linear ``p = 0`` problem ``D_x^{2a} w = f`` with the Cauchy data.

    ``w0 = sum_{i < n} x^i / i! * w^(i)(0, t) + J^{2a} f`` with ``n = ceil(2a)``.
    Data of order ``>= n`` cannot be imposed by an equation of that order; it
    is dropped when zero and rejected otherwise.
    """
    if which not in problem.unknowns:
        raise ValueError(f"problem {problem.name!r} has no unknown {which!r}")
    orders = problem.orders
    order = problem.operator_order(which)
    n = math.ceil(order.value(orders) - 1e-12)
    ic_part = FracSeries.zero()
    used = []
    for k, data in sorted(problem.ics.get(which, ()), key=lambda kv: kv[0]):
        if k >= n:
            if data:
                raise DomainError(
                    f"derivative data of order {k} for {which} is not admissible at order {order.value(orders)}"
                )
            continue
        ic_part = ic_part + data * FracSeries.monomial(1.0 / math.factorial(k), k, 0)
        used.append((k, data))
    series = ic_part + rl_integral_x(problem.forcing(which), order, orders)
    return InitialGuess(which, series, order, tuple(used))


def _group_of(m: Monomial, order: Exponent, orders: FracOrders) -> str:
    if m.xexp.is_zero:
        return "t"
    if m.xexp == order and m.texp.is_zero:
        return "x"
    if m.xexp.value(orders) >= order.value(orders) - 1e-12:
        return "mixed"
    raise GroupingError(
        f"monomial {m.coeff!r} * x^({m.xexp}) * t^({m.texp}) fits no basis group"
    )


def normalized(m: Monomial, orders: FracOrders) -> float:
    """Coefficient ``1/Gamma(a+1)`` that a basis function carries on ``x^a t^b``."""
    return 1.0 / gamma_ratio(m.xexp.value(orders) + 1.0, 1.0)


def extract_basis(guess: InitialGuess, orders: FracOrders, grouping=GROUPS) -> BasisSet:
    """Split ``guess.series`` into pure-t, pure-x and mixed groups.

    Each monomial ``x^a t^b`` of a group enters its basis function as
    ``x^a t^b / Gamma(a+1)``; the sign and size of the coefficient in the guess
    are discarded. Empty groups are skipped; ``grouping`` sets the order.
    """
    if sorted(grouping) != sorted(GROUPS):
        raise ValueError(f"grouping must be a permutation of {GROUPS}")
    buckets: dict[str, list[Monomial]] = {g: [] for g in GROUPS}
    for m in guess.series.monomials():
        buckets[_group_of(m, guess.order, orders)].append(m)
    funcs, labels, source = [], [], []
    for g in grouping:
        mons = buckets[g]
        if not mons:
            continue
        funcs.append(FracSeries({(m.xexp, m.texp): normalized(m, orders) for m in mons}))
        labels.append(g)
        source.append(tuple(mons))
    if not funcs:
        raise GroupingError("initial guess is the zero series")
    return BasisSet(guess.unknown, tuple(funcs), tuple(labels), tuple(source))


def certify(basis: BasisSet, point, orders: FracOrders, threshold: float | None = None) -> BasisSet:
    """Attach a Wronskian report at ``point`` for the operator order of the unknown."""
    which = Exponent(0, 1, 0) if basis.unknown == "u" else Exponent(0, 0, 1)
    kw = {} if threshold is None else {"threshold": threshold}
    rep = wronskian_at(basis.functions, point[0], point[1], which, orders, **kw)
    return replace(basis, certificate=rep)


def _leading(mons) -> Monomial:
    return min(mons, key=lambda m: (m.xexp.sort_key(), m.texp.sort_key()))


def hpm_start(guess: InitialGuess, basis: BasisSet, orders: FracOrders) -> tuple[float, ...]:
    """Coefficients read off the guess: for each basis function, the guess
    coefficient of its lowest-x monomial over the normalized one."""
    out = []
    for mons in basis.source:
        m = _leading(mons)
        out.append(m.coeff / normalized(m, orders))
    return tuple(out)


def span_coefficients(guess: InitialGuess, basis: BasisSet, orders: FracOrders):
    """Scalars ``c`` with ``sum c_i phi_i == guess.series``, or ``None``.

    A representation exists only when every monomial of a group carries the
    same multiple of its normalized coefficient.
    """
    out = []
    for mons in basis.source:
        ratios = [m.coeff / normalized(m, orders) for m in mons]
        r0 = ratios[0]
        if any(abs(r - r0) > SPAN_RTOL * max(abs(r), abs(r0)) for r in ratios):
            return None
        out.append(r0)
    return tuple(out)


def ic_residual(guess: InitialGuess) -> tuple[FracSeries, ...]:
    """Differences between the x^0 / x^1 slices of the guess and the data."""
    out = []
    for k, data in guess.ic_data:
        sl = guess.series.x_slice(Exponent(k)).scale(math.factorial(k))
        out.append(sl - data)
    return tuple(out)


__all__ = [
    "BasisSet",
    "GroupingError",
    "InitialGuess",
    "bootstrap",
    "certify",
    "extract_basis",
    "hpm_start",
    "ic_residual",
    "normalized",
    "span_coefficients",
]
