"""Closed-form algebra on bivariate fractional power series.

A :class:`FracSeries` is a finite sum of monomials ``c * x**a * t**b`` whose
exponents ``a`` and ``b`` are exact affine forms ``p + q*alpha + r*beta``
(:class:`Exponent`). Coefficients are floats. Canonical form merges monomials
with identical exponent pairs and drops exact zeros; merging never uses a
floating tolerance.

Operators (Caputo derivative in ``x``, Riemann-Liouville integral in ``x``,
classical derivative in ``t``) act term by term through the power rules, so
every result is again a canonical series.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from . import _kernels

#: Tolerance on branch decisions that compare evaluated exponents.
BRANCH_TOL = 1e-12


class DomainError(ValueError):
    """An operation was asked to leave its mathematical domain."""


@dataclass(frozen=True)
class FracOrders:
    """Concrete fractional orders; both must lie in (0, 1]."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 < v <= 1.0):
                raise DomainError(f"{name} must satisfy 0 < {name} <= 1, got {v!r}")
            object.__setattr__(self, name, float(v))




def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float) and not math.isfinite(v):
        raise DomainError(f"exponent component must be finite, got {v!r}")
    return Fraction(v)


@dataclass(frozen=True, slots=True)
class Exponent:
    """Affine form ``p + q*alpha + r*beta`` with rational coefficients."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", _frac(self.p))
        object.__setattr__(self, "q", _frac(self.q))
        object.__setattr__(self, "r", _frac(self.r))

    @classmethod
    def coerce(cls, value) -> Exponent:
        """Accept an Exponent, a number (exact binary rational) or a string form."""
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, float, Fraction)):
            return cls(_frac(value))
        raise TypeError(f"cannot interpret {value!r} as an exponent")

    def value(self, orders: FracOrders) -> float:
        return float(self.p) + float(self.q) * orders.alpha + float(self.r) * orders.beta

    @property
    def is_zero(self) -> bool:
        return not (self.p or self.q or self.r)

    @property
    def is_constant(self) -> bool:
        return not (self.q or self.r)

    def sort_key(self):
        return (self.q, self.r, self.p)

    def __add__(self, other):
        o = Exponent.coerce(other)
        return Exponent(self.p + o.p, self.q + o.q, self.r + o.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = Exponent.coerce(other)
        return Exponent(self.p - o.p, self.q - o.q, self.r - o.r)

    def __rsub__(self, other):
        return Exponent.coerce(other) - self

    def __neg__(self):
        return Exponent(-self.p, -self.q, -self.r)

    def __mul__(self, k):
        if isinstance(k, Exponent):
            if not k.is_constant:
                raise TypeError("product of two non-constant exponents is not affine")
            k = k.p
        k = _frac(k)
        return Exponent(self.p * k, self.q * k, self.r * k)

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        for coef, sym in ((self.p, ""), (self.q, "a"), (self.r, "b")):
            if not coef:
                continue
            mag = abs(coef)
            if sym:
                body = sym if mag == 1 else f"{mag}*{sym}"
            else:
                body = str(mag)
            sign = "-" if coef < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += sign + body
        return out

    _TERM = re.compile(r"\s*([+-])?\s*(\d+(?:\.\d*)?(?:/\d+)?)?\s*(\*)?\s*([ab])?\s*")

    @classmethod
    def parse(cls, text: str) -> Exponent:
        """Parse forms like ``2+2*a``, ``-1/2*b``, ``a``, ``0.5``.

        Raises ``ValueError`` whose ``args[1]`` is the 0-based offset of the
        offending character.
        """
        pos = 0
        comps = {"": Fraction(0), "a": Fraction(0), "b": Fraction(0)}
        n = len(text)
        seen = False
        while pos < n:
            m = cls._TERM.match(text, pos)
            sign, num, star, sym = m.groups()
            if m.end() == pos or (num is None and sym is None):
                raise ValueError(f"bad exponent {text!r}", pos)
            if seen and sign is None:
                raise ValueError(f"missing operator in exponent {text!r}", pos)
            if star and (num is None or sym is None):
                raise ValueError(f"dangling '*' in exponent {text!r}", pos)
            if num is not None and sym is not None and not star:
                raise ValueError(f"expected '*' between number and symbol in {text!r}", pos)
            k = Fraction(num) if num is not None else Fraction(1)
            if sign == "-":
                k = -k
            comps[sym or ""] += k
            pos = m.end()
            seen = True
        if not seen:
            raise ValueError(f"empty exponent {text!r}", 0)
        return cls(comps[""], comps["a"], comps["b"])


ZERO = Exponent()
ALPHA = Exponent(0, 1, 0)
BETA = Exponent(0, 0, 1)


class Monomial(NamedTuple):
    coeff: float
    xexp: Exponent
    texp: Exponent


Key = tuple  # (xexp, texp)


class FracSeries:
    """Canonical finite sum of fractional monomials. Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, float] | Iterable[tuple] | None = None):
        acc: dict[Key, float] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else (
                ((Exponent.coerce(a), Exponent.coerce(b)), c) for c, a, b in terms
            )
            for key, c in items:
                acc[key] = acc.get(key, 0.0) + float(c)
        self._terms = {k: v for k, v in acc.items() if v != 0.0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> FracSeries:
        s = cls.__new__(cls)
        s._terms = {k: v for k, v in terms.items() if v != 0.0}
        s._hash = None
        return s

    @classmethod
    def monomial(cls, coeff: float, xexp=0, texp=0) -> FracSeries:
        return cls([(coeff, xexp, texp)])

    @classmethod
    def constant(cls, c: float) -> FracSeries:
        return cls([(c, ZERO, ZERO)])

    @classmethod
    def zero(cls) -> FracSeries:
        return cls()

    @property
    def terms(self) -> Mapping[Key, float]:
        return MappingProxyType(self._terms)

    def monomials(self) -> list[Monomial]:
        """Monomials in a deterministic canonical order."""
        keys = sorted(self._terms, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
        return [Monomial(self._terms[k], k[0], k[1]) for k in keys]

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coeff(self, xexp=0, texp=0) -> float:
        return self._terms.get((Exponent.coerce(xexp), Exponent.coerce(texp)), 0.0)

    def __eq__(self, other):
        if isinstance(other, (int, float)):
            other = FracSeries.constant(other)
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _combine(self, other, sign):
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0.0) + sign * v
        return FracSeries._raw(out)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = FracSeries.constant(other)
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._combine(other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = FracSeries.constant(other)
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._combine(other, -1.0)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FracSeries._raw({k: -v for k, v in self._terms.items()})

    def scale(self, k: float) -> FracSeries:
        k = float(k)
        return FracSeries._raw({key: k * v for key, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        if isinstance(other, FracSeries):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (int, float)):
            return self.scale(1.0 / k)
        return NotImplemented

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self._terms.values()), default=0.0)

    def prune(self, tol: float) -> FracSeries:
        """Drop monomials with ``|coeff| <= tol``."""
        return FracSeries._raw({k: v for k, v in self._terms.items() if abs(v) > tol})

    def allclose(self, other: FracSeries, rtol: float = 1e-12, atol: float = 0.0) -> bool:
        """Same exponent keys (exactly) and coefficients equal within tolerance."""
        keys = set(self._terms) | set(other._terms)
        for k in keys:
            a = self._terms.get(k, 0.0)
            b = other._terms.get(k, 0.0)
            if abs(a - b) > atol + rtol * max(abs(a), abs(b)):
                return False
        return True

    def x_slice(self, xexp) -> FracSeries:
        """Terms with exactly this x-exponent, returned as a series in t alone."""
        xexp = Exponent.coerce(xexp)
        return FracSeries._raw({(ZERO, k[1]): v for k, v in self._terms.items() if k[0] == xexp})

    def arrays(self, orders: FracOrders):
        """``(coeff, xexp, texp)`` float arrays in canonical order."""
        mons = self.monomials()
        c = np.array([m.coeff for m in mons], dtype=float)
        a = np.array([m.xexp.value(orders) for m in mons], dtype=float)
        b = np.array([m.texp.value(orders) for m in mons], dtype=float)
        return c, a, b

    def __repr__(self):
        return f"FracSeries({format_series(self)!r})"

    def __str__(self):
        return format_series(self)


def format_series(s: FracSeries) -> str:
    """Render in the literal syntax ``c * x^(e) * t^(e)`` joined by ``+``/``-``."""
    if not s:
        return "0"
    out = []
    for i, m in enumerate(s.monomials()):
        c = m.coeff
        sign = "-" if c < 0 else "+"
        body = [repr(abs(c))]
        if not m.xexp.is_zero:
            body.append(f"x^({m.xexp})")
        if not m.texp.is_zero:
            body.append(f"t^({m.texp})")
        text = " * ".join(body)
        if i == 0:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def x_power(xexp, coeff: float = 1.0) -> FracSeries:
    return FracSeries.monomial(coeff, xexp, 0)


def t_power(texp, coeff: float = 1.0) -> FracSeries:
    return FracSeries.monomial(coeff, 0, texp)


# --- operators --------------------------------------------------------------


def gamma_ratio(num: float, den: float) -> float:
    """``Gamma(num) / Gamma(den)`` for positive arguments."""
    if not (num > 0.0 and den > 0.0):
        raise DomainError(f"Gamma ratio needs positive arguments, got ({num!r}, {den!r})")
    if num < 171.0 and den < 171.0:
        return math.gamma(num) / math.gamma(den)
    return math.exp(math.lgamma(num) - math.lgamma(den))


def _as_order(order) -> Exponent:
    return Exponent.coerce(order)


def caputo_annihilates(gamma: Exponent, order, orders: FracOrders) -> bool:
    """Whether the Caputo derivative of ``x**gamma`` of this order vanishes.

    Zero when ``gamma`` is a nonnegative integer below ``ceil(order)`` (the
    polynomial kernel of the n-th derivative), or when ``gamma <= order - 1``.
    An evaluated comparison that lands within ``BRANCH_TOL`` of the boundary
    without being an exact identity of forms raises :class:`DomainError`.
    """
    order = _as_order(order)
    g = gamma.value(orders)
    o = order.value(orders)
    n = math.ceil(o - BRANCH_TOL)
    k = round(g)
    if abs(g - k) <= BRANCH_TOL and 0 <= k < n:
        return True
    diff = gamma - (order - 1)
    if diff.is_zero:
        return True
    d = diff.value(orders)
    if abs(d) <= BRANCH_TOL:
        raise DomainError(
            f"x^({gamma}) under order {order}: exponent sits on the branch boundary "
            f"(gamma - order + 1 = {d:.3e}) at alpha={orders.alpha}, beta={orders.beta}"
        )
    return d < 0.0


def caputo_dx(s: FracSeries, order, orders: FracOrders) -> FracSeries:
    """Caputo derivative in x, term by term via the power rule."""
    order = _as_order(order)
    o = order.value(orders)
    if not o > 0.0:
        raise DomainError(f"Caputo order must be positive, got {order} = {o}")
    out: dict = {}
    for (xe, te), c in s._terms.items():
        if caputo_annihilates(xe, order, orders):
            continue
        g = xe.value(orders)
        key = (xe - order, te)
        out[key] = out.get(key, 0.0) + c * gamma_ratio(g + 1.0, g - o + 1.0)
    return FracSeries._raw(out)


def rl_integral_x(s: FracSeries, order, orders: FracOrders) -> FracSeries:
    """Riemann-Liouville integral in x, term by term."""
    order = _as_order(order)
    o = order.value(orders)
    if o < 0.0:
        raise DomainError(f"integral order must be nonnegative, got {order} = {o}")
    if order.is_zero or o == 0.0:
        return s
    out: dict = {}
    for (xe, te), c in s._terms.items():
        g = xe.value(orders)
        if not g > -1.0:
            raise DomainError(f"x^({xe}) = x^{g} is not integrable at 0")
        key = (xe + order, te)
        out[key] = out.get(key, 0.0) + c * gamma_ratio(g + 1.0, g + o + 1.0)
    return FracSeries._raw(out)


def dt(s: FracSeries, n: int, orders: FracOrders | None = None) -> FracSeries:
    """n-fold classical derivative in t."""
    if n < 0:
        raise DomainError("derivative order must be nonnegative")
    if n == 0:
        return s
    out: dict = {}
    for (xe, te), c in s._terms.items():
        if te.is_constant:
            b = float(te.p)
            ok = (te.p.denominator == 1 and te.p >= 0) or b > n - 1
        else:
            if orders is None:
                raise DomainError(f"t^({te}) needs concrete orders to differentiate")
            b = te.value(orders)
            ok = b > n - 1
        if not ok:
            raise DomainError(f"t^({te}) is outside the domain of d^{n}/dt^{n}")
        factor = 1.0
        for j in range(n):
            factor *= b - j
        if factor == 0.0:
            continue
        key = (xe, te - n)
        out[key] = out.get(key, 0.0) + c * factor
    return FracSeries._raw(out)


def mul(a: FracSeries, b: FracSeries) -> FracSeries:
    """Distributive product; exponents add exactly."""
    out: dict = {}
    for (xa, ta), ca in a._terms.items():
        for (xb, tb), cb in b._terms.items():
            key = (xa + xb, ta + tb)
            out[key] = out.get(key, 0.0) + ca * cb
    return FracSeries._raw(out)


def evaluate(s: FracSeries, x, t, orders: FracOrders):
    """Evaluate at points. Scalars give a float; arrays broadcast to an array."""
    xa = np.asarray(x, dtype=float)
    ta = np.asarray(t, dtype=float)
    scalar = xa.ndim == 0 and ta.ndim == 0
    xa, ta = np.broadcast_arrays(xa, ta)
    shape = xa.shape
    xf = np.ascontiguousarray(xa.ravel())
    tf = np.ascontiguousarray(ta.ravel())
    if np.any(xf < 0.0) or np.any(tf < 0.0):
        raise DomainError("fractional powers need x >= 0 and t >= 0")
    c, ae, be = s.arrays(orders)
    if np.any(ae < 0.0) and np.any(xf == 0.0):
        raise DomainError("negative x-exponent evaluated at x = 0")
    if np.any(be < 0.0) and np.any(tf == 0.0):
        raise DomainError("negative t-exponent evaluated at t = 0")
    vals = _kernels.eval_monomials(c, ae, be, xf, tf)
    if scalar:
        return float(vals[0])
    return vals.reshape(shape)


def specialize(s: FracSeries, orders: FracOrders) -> FracSeries:
    """Substitute the concrete orders into every exponent.

    Exponents become exact rationals (``Fraction(alpha)`` is exact for a
    float), so terms that coincide at these orders merge, e.g. ``x^(2-2*a)``
    and ``x^0`` at ``alpha = 1``.
    """
    fa, fb = Fraction(orders.alpha), Fraction(orders.beta)
    out: dict = {}
    for (xe, te), c in s._terms.items():
        key = (Exponent(xe.p + xe.q * fa + xe.r * fb), Exponent(te.p + te.q * fa + te.r * fb))
        out[key] = out.get(key, 0.0) + c
    return FracSeries._raw(out)


def integrate_unit_square(s: FracSeries, orders: FracOrders) -> float:
    """Exact integral over [0, 1] x [0, 1]."""
    total = 0.0
    for m in s.monomials():
        a = m.xexp.value(orders)
        b = m.texp.value(orders)
        if not (a > -1.0 and b > -1.0):
            raise DomainError(f"x^{a} t^{b} is not integrable over the unit square")
        total += m.coeff / ((a + 1.0) * (b + 1.0))
    return total
