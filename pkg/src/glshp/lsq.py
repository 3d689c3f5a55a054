"""Parameterized residuals, the squared-residual functional and its minimization.

The unknown coefficients enter a residual polynomially, so a residual is a
:class:`ParamPoly`: a map from parameter multi-indices to :class:`FracSeries`.
Squaring and integrating over the unit square is exact, monomial by monomial.

:class:`Functional` keeps two equivalent forms. ``poly`` is the expanded
quartic with real coefficients. Values and derivatives are computed from the
factored form ``J(p) = sum_e c_e(p)^T G_e c_e(p)`` where ``c_e`` collects the
residual's monomial coefficients and ``G_e`` is their Gram matrix on the
square. Near ``J = 0`` the expanded quartic loses everything to cancellation;
the factored form does not.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .fracalg import (
    DomainError,
    Exponent,
    FracOrders,
    FracSeries,
    caputo_dx,
    dt,
    evaluate,
)
from .hpm import BasisSet
from .problems import ProblemSpec, ic_series

log = logging.getLogger(__name__)

GRAD_TOL = 1e-12
MAX_ITER = 200
DEFAULT_SEED = 0x5EED
N_RANDOM_STARTS = 8
START_BOX = 3.0

Key = tuple


class InconsistentIC(ValueError):
    """No coefficient assignment reproduces the initial data."""


class NoConvergence(RuntimeError):
    """No start reached the gradient tolerance. ``result`` holds the best iterate."""

    def __init__(self, message: str, result: FitResult):
        super().__init__(message)
        self.result = result


# --- ParamPoly --------------------------------------------------------------


class ParamPoly:
    """Polynomial in ``nvars`` parameters with :class:`FracSeries` coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Key, FracSeries] | None = None):
        self.nvars = int(nvars)
        acc: dict[Key, FracSeries] = {}
        for k, s in (terms or {}).items():
            k = tuple(int(e) for e in k)
            if len(k) != self.nvars or any(e < 0 for e in k):
                raise ValueError(f"bad multi-index {k} for {self.nvars} parameters")
            acc[k] = acc[k] + s if k in acc else s
        self._terms = {k: s for k, s in acc.items() if s}

    @classmethod
    def constant(cls, nvars: int, s: FracSeries) -> ParamPoly:
        return cls(nvars, {(0,) * nvars: s})

    @classmethod
    def variable(cls, nvars: int, i: int, s: FracSeries) -> ParamPoly:
        k = [0] * nvars
        k[i] = 1
        return cls(nvars, {tuple(k): s})

    @property
    def terms(self) -> Mapping[Key, FracSeries]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, ParamPoly) or other.nvars != self.nvars:
            raise TypeError("ParamPoly operands must share the parameter count")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for k, s in other._terms.items():
            out[k] = out[k] + s if k in out else s
        return ParamPoly(self.nvars, out)

    def __neg__(self):
        return ParamPoly(self.nvars, {k: -s for k, s in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: float) -> ParamPoly:
        return ParamPoly(self.nvars, {k: s.scale(c) for k, s in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        self._check(other)
        out: dict[Key, FracSeries] = {}
        for k1, s1 in self._terms.items():
            for k2, s2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = s1 * s2
                out[k] = out[k] + prod if k in out else prod
        return ParamPoly(self.nvars, out)

    __rmul__ = __mul__

    def map(self, fn) -> ParamPoly:
        """Apply a linear series operator to every coefficient."""
        return ParamPoly(self.nvars, {k: fn(s) for k, s in self._terms.items()})

    def at(self, params) -> FracSeries:
        """Substitute numbers for all parameters."""
        p = np.asarray(params, dtype=float).reshape(-1)
        if p.size != self.nvars:
            raise ValueError(f"expected {self.nvars} parameters, got {p.size}")
        out = FracSeries.zero()
        for k, s in sorted(self._terms.items()):
            w = 1.0
            for pi, e in zip(p, k):
                if e:
                    w *= float(pi) ** e
            out = out + s.scale(w)
        return out

    def __repr__(self):
        parts = [f"{k}: {s}" for k, s in sorted(self._terms.items())]
        return f"ParamPoly({self.nvars}, {{{', '.join(parts)}}})"


# --- real polynomials -------------------------------------------------------


class Poly:
    """Sparse polynomial with real coefficients in ``nvars`` parameters."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Key, float] | None = None):
        self.nvars = int(nvars)
        self._terms = {tuple(k): float(v) for k, v in (terms or {}).items() if v != 0.0}

    @property
    def terms(self) -> Mapping[Key, float]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=0)

    def diff(self, i: int) -> Poly:
        out: dict[Key, float] = {}
        for k, c in self._terms.items():
            if k[i]:
                kk = list(k)
                kk[i] -= 1
                kk = tuple(kk)
                out[kk] = out.get(kk, 0.0) + c * k[i]
        return Poly(self.nvars, out)

    def __call__(self, params) -> float:
        pts = np.asarray(params, dtype=float).reshape(1, self.nvars)
        return float(self.evaluate_many(pts)[0])

    def evaluate_many(self, points) -> np.ndarray:
        points = np.ascontiguousarray(np.asarray(points, dtype=float).reshape(-1, self.nvars))
        if not self._terms:
            return np.zeros(points.shape[0])
        keys = sorted(self._terms)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.nvars)
        coeffs = np.array([self._terms[k] for k in keys])
        return _kernels.poly_eval(exps, coeffs, points)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"p{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda k: (-sum(k), k)):
            fac = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, k) if e]
            parts.append(" * ".join([repr(self._terms[k])] + fac))
        return " + ".join(parts)


# --- ansatz -----------------------------------------------------------------


@dataclass(frozen=True)
class Ansatz:
    """``sum_i c_i phi_i`` with some coefficients already fixed."""

    basis: BasisSet
    fixed: Mapping[int, float] = field(default_factory=dict)
    free: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.basis)
        idx = sorted(list(self.fixed) + list(self.free))
        if idx != list(range(n)):
            raise ValueError(f"fixed and free indices must cover 0..{n - 1} exactly once")

    @classmethod
    def from_basis(cls, basis: BasisSet) -> Ansatz:
        return cls(basis, {}, tuple(range(len(basis))))

    @property
    def prefix(self) -> str:
        return "K" if self.basis.unknown == "u" else "D"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"{self.prefix}{i}" for i in self.free)

    def coefficients(self, free_values) -> tuple[float, ...]:
        vals = list(free_values)
        if len(vals) != len(self.free):
            raise ValueError(f"expected {len(self.free)} free values, got {len(vals)}")
        out = [0.0] * len(self.basis)
        for i, v in self.fixed.items():
            out[i] = float(v)
        for i, v in zip(self.free, vals):
            out[i] = float(v)
        return tuple(out)

    def series(self, free_values) -> FracSeries:
        out = FracSeries.zero()
        for c, f in zip(self.coefficients(free_values), self.basis.functions):
            out = out + f.scale(c)
        return out

    def as_parampoly(self, nvars: int, offset: int) -> ParamPoly:
        out = ParamPoly(nvars)
        for i, c in self.fixed.items():
            out = out + ParamPoly.constant(nvars, self.basis.functions[i].scale(c))
        for j, i in enumerate(self.free):
            out = out + ParamPoly.variable(nvars, offset + j, self.basis.functions[i])
        return out


def apply_ics(ansatz: Ansatz, problem: ProblemSpec) -> Ansatz:
    """Fix every free coefficient that the Cauchy data determine uniquely.

    The ``x^0`` and ``x^1`` slices of the ansatz must reproduce the data as
    series in ``t``. This is a linear system in the free coefficients; a
    coefficient is fixed when it does not move along the null space.
    """
    w = ansatz.basis.unknown
    funcs = ansatz.basis.functions
    rows: list[tuple[np.ndarray, float]] = []
    for k in (0, 1):
        data = ic_series(problem, w, k)
        xk = Exponent(k)
        slices = [f.x_slice(xk).scale(math.factorial(k)) for f in funcs]
        keys = set(data.terms)
        for s in slices:
            keys |= set(s.terms)
        for key in sorted(keys, key=lambda kk: kk[1].sort_key()):
            rhs = data.terms.get(key, 0.0)
            for i, c in ansatz.fixed.items():
                rhs -= c * slices[i].terms.get(key, 0.0)
            row = np.array([slices[i].terms.get(key, 0.0) for i in ansatz.free])
            rows.append((row, rhs))
    if not rows or not ansatz.free:
        for row, rhs in rows:
            if abs(rhs) > 1e-12:
                raise InconsistentIC(f"initial data for {w} cannot be matched by the basis")
        return ansatz
    M = np.array([r for r, _ in rows]).reshape(len(rows), len(ansatz.free))
    b = np.array([v for _, v in rows])
    sol, *_ = np.linalg.lstsq(M, b, rcond=None)
    scale = max(1.0, float(np.max(np.abs(b))))
    if np.max(np.abs(M @ sol - b)) > 1e-12 * scale:
        raise InconsistentIC(f"initial data for {w} cannot be matched by the basis")
    _, svals, vt = np.linalg.svd(M)
    rank = int(np.sum(svals > 1e-12 * max(svals[0], 1e-300))) if svals.size else 0
    null = vt[rank:].T
    fixed = dict(ansatz.fixed)
    free = []
    for j, i in enumerate(ansatz.free):
        if null.shape[1] == 0 or np.max(np.abs(null[j])) <= 1e-10:
            fixed[i] = float(sol[j])
        else:
            free.append(i)
    return Ansatz(ansatz.basis, dict(sorted(fixed.items())), tuple(free))


def param_names(*ansatzes: Ansatz | None) -> tuple[str, ...]:
    out: list[str] = []
    for a in ansatzes:
        if a is not None:
            out.extend(a.names)
    return tuple(out)


def build_residual(
    problem: ProblemSpec,
    ansatz_u: Ansatz,
    ansatz_v: Ansatz | None = None,
    *,
    require_certificate: bool = True,
) -> tuple[ParamPoly, ...]:
    """``D_x^{2a} u~ + sum c * L * R_tt - f`` per equation, as :class:`ParamPoly`.

    Free coefficients of ``u`` come first in the parameter vector, then those
    of ``v``.
    """
    coupled = problem.kind == "coupled"
    if coupled != (ansatz_v is not None):
        raise ValueError("a coupled problem needs an ansatz for v, a single one must not have it")
    ans = {"u": ansatz_u, "v": ansatz_v} if coupled else {"u": ansatz_u}
    if require_certificate:
        for w, a in ans.items():
            if not a.basis.certified:
                raise ValueError(f"basis for {w} has no passing Wronskian certificate")
    orders = problem.orders
    nvars = len(ansatz_u.free) + (len(ansatz_v.free) if ansatz_v is not None else 0)
    tilde = {"u": ansatz_u.as_parampoly(nvars, 0)}
    if coupled:
        tilde["v"] = ansatz_v.as_parampoly(nvars, len(ansatz_u.free))
    tt = {w: p.map(lambda s: dt(s, 2, orders)) for w, p in tilde.items()}
    out = []
    for w in problem.unknowns:
        order = problem.operator_order(w)
        r = tilde[w].map(lambda s: caputo_dx(s, order, orders))
        for term in problem.nonlinearity.get(w, ()):
            r = r + (tilde[term.left] * tt[term.right]).scale(term.coeff)
        r = r - ParamPoly.constant(nvars, problem.forcing(w))
        out.append(r)
    return tuple(out)


# --- functional -------------------------------------------------------------


def _exact_value(e: Exponent, fa: Fraction, fb: Fraction) -> float:
    return float(e.p + e.q * fa + e.r * fb)


def _phi(K: np.ndarray, p: np.ndarray) -> np.ndarray:
    return np.prod(p[None, :] ** K, axis=1)


def _dphi(K: np.ndarray, p: np.ndarray) -> np.ndarray:
    nk, m = K.shape
    out = np.zeros((nk, m))
    for i in range(m):
        Ki = K[:, i]
        Km = K.copy()
        Km[:, i] = np.maximum(Ki - 1, 0)
        out[:, i] = Ki * _phi(Km, p)
    return out


def _d2phi(K: np.ndarray, p: np.ndarray) -> np.ndarray:
    nk, m = K.shape
    out = np.zeros((nk, m, m))
    for i in range(m):
        for j in range(i, m):
            Km = K.copy()
            if i == j:
                c = K[:, i] * (K[:, i] - 1)
                Km[:, i] = np.maximum(K[:, i] - 2, 0)
            else:
                c = K[:, i] * K[:, j]
                Km[:, i] = np.maximum(K[:, i] - 1, 0)
                Km[:, j] = np.maximum(K[:, j] - 1, 0)
            out[:, i, j] = out[:, j, i] = c * _phi(Km, p)
    return out


@dataclass(frozen=True)
class _Block:
    K: np.ndarray  # parameter multi-indices, (nk, m)
    A: np.ndarray  # monomial coefficients, (nu, nk)
    G: np.ndarray  # Gram matrix of the monomials, (nu, nu)


class Functional:
    """``J(p) = sum over equations of the integral of R_e(p)^2`` on the unit square."""

    def __init__(self, residuals: Sequence[ParamPoly], orders: FracOrders, names: Sequence[str] | None = None):
        residuals = list(residuals)
        if not residuals:
            raise ValueError("need at least one residual")
        m = residuals[0].nvars
        if any(r.nvars != m for r in residuals):
            raise ValueError("residuals disagree on the parameter count")
        self.nvars = m
        self.orders = orders
        self.names = tuple(names) if names is not None else tuple(f"p{i}" for i in range(m))
        if len(self.names) != m:
            raise ValueError("one name per parameter is required")
        fa, fb = Fraction(orders.alpha), Fraction(orders.beta)
        self._blocks: list[_Block] = []
        poly: dict[Key, float] = {}
        for r in residuals:
            pkeys = sorted(r.terms)
            # Monomials whose exponents coincide numerically at these orders
            # share one column, so cancellations between them are exact.
            cols: dict[tuple[float, float], int] = {}
            entries = []
            for j, k in enumerate(pkeys):
                for (xe, te), c in r.terms[k].terms.items():
                    a, b = _exact_value(xe, fa, fb), _exact_value(te, fa, fb)
                    if not (a > -1.0 and b > -1.0):
                        raise DomainError(f"x^{a} t^{b} is not square integrable after squaring")
                    u = cols.setdefault((a, b), len(cols))
                    entries.append((u, j, c))
            nu, nk = len(cols), len(pkeys)
            A = np.zeros((nu, nk))
            for u, j, c in entries:
                A[u, j] += c
            ab = np.array(sorted(cols, key=cols.get), dtype=float).reshape(nu, 2)
            G = _kernels.gram_matrix(ab[:, 0].copy(), ab[:, 1].copy(), ab[:, 0].copy(), ab[:, 1].copy()) if nu else np.zeros((0, 0))
            K = np.array(pkeys, dtype=np.int64).reshape(nk, m)
            self._blocks.append(_Block(K, A, G))
            Q = A.T @ G @ A
            for i in range(nk):
                for j in range(nk):
                    kk = tuple(int(x) for x in K[i] + K[j])
                    poly[kk] = poly.get(kk, 0.0) + Q[i, j]
        self.poly = Poly(m, poly)

    def _p(self, params) -> np.ndarray:
        p = np.asarray(params, dtype=float).reshape(-1)
        if p.size != self.nvars:
            raise ValueError(f"expected {self.nvars} parameters, got {p.size}")
        return p

    def value(self, params) -> float:
        p = self._p(params)
        total = 0.0
        for b in self._blocks:
            c = b.A @ _phi(b.K, p)
            total += float(c @ (b.G @ c))
        return total

    __call__ = value

    def grad(self, params) -> np.ndarray:
        p = self._p(params)
        g = np.zeros(self.nvars)
        for b in self._blocks:
            c = b.A @ _phi(b.K, p)
            B = b.A @ _dphi(b.K, p)
            g += 2.0 * B.T @ (b.G @ c)
        return g

    def hessian(self, params) -> np.ndarray:
        p = self._p(params)
        H = np.zeros((self.nvars, self.nvars))
        for b in self._blocks:
            c = b.A @ _phi(b.K, p)
            B = b.A @ _dphi(b.K, p)
            C = np.tensordot(b.A, _d2phi(b.K, p), axes=(1, 0))
            H += 2.0 * (B.T @ b.G @ B + np.tensordot(b.G @ c, C, axes=(0, 0)))
        return 0.5 * (H + H.T)


def assemble_functional(
    residuals: Sequence[ParamPoly], orders: FracOrders, names: Sequence[str] | None = None
) -> Functional:
    return Functional(residuals, orders, names)


def gradient(f: Functional) -> list[Poly]:
    """Exact partial derivatives of the expanded quartic."""
    return [f.poly.diff(i) for i in range(f.nvars)]


# --- minimization -----------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    params: tuple[float, ...]
    jvalue: float
    grad_norm: float
    iterations: int
    converged: bool
    start: str
    names: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "params": dict(zip(self.names, self.params)) if self.names else list(self.params),
            "jvalue": self.jvalue,
            "grad_norm": self.grad_norm,
            "iterations": self.iterations,
            "converged": self.converged,
            "start": self.start,
        }


def _descend(f: Functional, p0: np.ndarray, tol: float, max_iter: int):
    """Levenberg-damped Newton with gradient-descent fallback."""
    p = p0.astype(float).copy()
    J = f.value(p)
    g = f.grad(p)
    gn = float(np.linalg.norm(g))
    lam = 1e-8
    it = 0
    while it < max_iter and gn > tol:
        it += 1
        H = f.hessian(p)
        scale = max(1.0, float(np.max(np.abs(np.diag(H))))) if H.size else 1.0
        accepted = False
        while lam < 1e16:
            try:
                L = np.linalg.cholesky(H + lam * scale * np.eye(f.nvars))
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            step = -np.linalg.solve(L.T, np.linalg.solve(L, g))
            q = p + step
            Jq = f.value(q)
            if Jq < J or (Jq <= J + 4 * np.finfo(float).eps * max(J, 1e-300) and np.linalg.norm(f.grad(q)) < gn):
                accepted = True
                break
            lam *= 10.0
        if not accepted:
            # steepest descent with backtracking
            t = 1.0 / max(gn, 1e-300)
            while t > 1e-20:
                q = p - t * g
                Jq = f.value(q)
                if Jq < J:
                    accepted = True
                    break
                t *= 0.5
        if not accepted:
            break
        p, J = q, Jq
        g = f.grad(p)
        gn = float(np.linalg.norm(g))
        lam = max(lam / 10.0, 1e-12)
    return p, J, gn, it


def minimize(
    f: Functional,
    start=None,
    *,
    tol: float = GRAD_TOL,
    max_iter: int = MAX_ITER,
    seed: int = DEFAULT_SEED,
    n_random: int = N_RANDOM_STARTS,
    box: float = START_BOX,
) -> FitResult:
    """Minimize ``f`` from several starts and keep the best stationary point.

    Starts: ``start`` (labelled ``hpm``) when given, the zero vector, then
    ``n_random`` uniform points in ``[-box, box]^m``. Among converged runs the
    lowest ``J`` wins, ties broken by the smaller parameter norm. Raises
    :class:`NoConvergence` when no run reaches ``tol``.
    """
    m = f.nvars
    if m == 0:
        J = f.value(np.zeros(0))
        return FitResult((), J, 0.0, 0, True, "none", f.names)
    starts: list[tuple[str, np.ndarray]] = []
    if start is not None:
        s = np.asarray(start, dtype=float).reshape(-1)
        if s.size != m:
            raise ValueError(f"start has {s.size} entries, expected {m}")
        starts.append(("hpm", s))
    starts.append(("zero", np.zeros(m)))
    rng = np.random.default_rng(seed)
    for i in range(n_random):
        starts.append((f"random{i}", rng.uniform(-box, box, m)))
    runs = []
    for label, s in starts:
        p, J, gn, it = _descend(f, s, tol, max_iter)
        log.debug("start %s: J=%.3e |grad|=%.3e after %d iterations", label, J, gn, it)
        runs.append(FitResult(tuple(float(v) for v in p), float(J), gn, it, gn <= tol, label, f.names))
    key = lambda r: (r.jvalue, float(np.linalg.norm(r.params)))  # noqa: E731
    good = [r for r in runs if r.converged]
    if not good:
        best = min(runs, key=key)
        raise NoConvergence(f"no start reached |grad J| <= {tol:g}; best |grad J| = {best.grad_norm:.3e}", best)
    jmin = min(r.jvalue for r in good)
    # Runs whose J agrees to roundoff are ties; the smallest parameter vector wins.
    ties = [r for r in good if r.jvalue <= jmin + 1e-14 * max(1.0, abs(jmin))]
    return min(ties, key=lambda r: (float(np.linalg.norm(r.params)), r.jvalue))


# --- oracles and classification ---------------------------------------------


def graded_gauss_legendre(nodes: int, grading: int = 8):
    """Gauss-Legendre on [0, 1] after ``x = y**grading``; returns points and weights."""
    y, w = np.polynomial.legendre.leggauss(nodes)
    y = 0.5 * (y + 1.0)
    w = 0.5 * w
    return y**grading, w * grading * y ** (grading - 1)


def quadrature_oracle(residuals: Sequence[ParamPoly], params, orders: FracOrders, nodes: int = 64) -> float:
    """Tensor-product quadrature of the summed squared residuals.

    The graded substitution absorbs the ``x**s`` endpoint behaviour of
    fractional powers; plain Gauss-Legendre stalls near 1e-8 on those.
    """
    if nodes < 8:
        raise ValueError("nodes must be at least 8")
    pts, w = graded_gauss_legendre(nodes)
    X, T = np.meshgrid(pts, pts, indexing="ij")
    W = np.outer(w, w)
    total = 0.0
    for r in residuals:
        vals = evaluate(r.at(params), X, T, orders)
        total += float(np.sum(W * vals * vals))
    return total


@dataclass(frozen=True)
class EpsilonReport:
    pointwise: bool
    weak: bool
    sup: float
    integral: float
    epsilon: float

    def as_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "pointwise": self.pointwise,
            "weak": self.weak,
            "sup_abs_residual": self.sup,
            "residual_integral": self.integral,
        }


def classify_epsilon(
    residuals: Sequence[ParamPoly], params, orders: FracOrders, epsilon: float, grid: int = 101
) -> EpsilonReport:
    """Pointwise: ``max |R_e| < eps`` on a ``grid x grid`` lattice of [0, 1]^2.
    Weak: ``sum of the integrals of R_e^2 <= eps``, integrated exactly with
    numerically coincident exponents merged first."""
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    if grid < 2:
        raise ValueError("grid must be at least 2")
    xs = np.linspace(0.0, 1.0, grid)
    X, T = np.meshgrid(xs, xs, indexing="ij")
    sup = 0.0
    integral = 0.0
    for r in residuals:
        s = r.at(params)
        vals = evaluate(s, X, T, orders)
        sup = max(sup, float(np.max(np.abs(vals))))
        integral += Functional([ParamPoly.constant(0, s)], orders).value(())
    return EpsilonReport(sup < epsilon, integral <= epsilon, sup, integral, float(epsilon))


__all__ = [
    "Ansatz",
    "EpsilonReport",
    "FitResult",
    "Functional",
    "InconsistentIC",
    "NoConvergence",
    "ParamPoly",
    "Poly",
    "apply_ics",
    "assemble_functional",
    "build_residual",
    "classify_epsilon",
    "gradient",
    "minimize",
    "param_names",
    "quadrature_oracle",
]
