"""End-to-end fit: bootstrap, basis, certificate, ICs, residuals, functional, minimize."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fracalg import FracSeries, evaluate
from .hpm import BasisSet, InitialGuess, bootstrap, certify, extract_basis, hpm_start
from .lsq import (
    DEFAULT_SEED,
    Ansatz,
    EpsilonReport,
    FitResult,
    Functional,
    NoConvergence,
    ParamPoly,
    apply_ics,
    assemble_functional,
    build_residual,
    classify_epsilon,
    minimize,
    param_names,
)
from .problems import ProblemSpec, check
from .wronskian import DEFAULT_THRESHOLD


class CertificateError(ValueError):
    """A basis failed its Wronskian certificate at the witness point."""

    def __init__(self, message, basis: BasisSet):
        super().__init__(message)
        self.basis = basis


@dataclass(frozen=True)
class Setup:
    problem: ProblemSpec
    guesses: dict[str, InitialGuess]
    bases: dict[str, BasisSet]
    ansatzes: dict[str, Ansatz]
    residuals: tuple[ParamPoly, ...]
    functional: Functional
    start: tuple[float, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return self.functional.names

    @property
    def j_hpm(self) -> float:
        return self.functional.value(self.start)


@dataclass(frozen=True)
class Solution:
    setup: Setup
    fit: FitResult

    @property
    def problem(self) -> ProblemSpec:
        return self.setup.problem

    def _split(self) -> dict[str, tuple[float, ...]]:
        out, pos = {}, 0
        for w, a in self.setup.ansatzes.items():
            n = len(a.free)
            out[w] = self.fit.params[pos:pos + n]
            pos += n
        return out

    def coefficients(self, unknown: str) -> tuple[float, ...]:
        """Full coefficient vector over the basis of ``unknown`` (fixed and fitted)."""
        return self.setup.ansatzes[unknown].coefficients(self._split()[unknown])

    def series(self, unknown: str) -> FracSeries:
        return self.setup.ansatzes[unknown].series(self._split()[unknown])

    def grid(self, nx: int, nt: int):
        """Lattice values; returns ``(X, T, {unknown: values})`` with shape ``(nt, nx)``."""
        xs = np.linspace(0.0, 1.0, nx)
        ts = np.linspace(0.0, 1.0, nt)
        X, T = np.meshgrid(xs, ts)
        orders = self.problem.orders
        vals = {w: evaluate(self.series(w), X, T, orders) for w in self.problem.unknowns}
        return X, T, vals

    def classify(self, epsilon: float, grid: int = 101) -> EpsilonReport:
        return classify_epsilon(self.setup.residuals, self.fit.params, self.problem.orders, epsilon, grid)


def prepare(problem: ProblemSpec, *, witness=None, threshold: float = DEFAULT_THRESHOLD) -> Setup:
    """Everything up to, not including, the minimization."""
    check(problem)
    orders = problem.orders
    point = witness if witness is not None else problem.witness
    guesses, bases, ansatzes = {}, {}, {}
    start: list[float] = []
    for w in problem.unknowns:
        g = bootstrap(problem, w)
        b = certify(extract_basis(g, orders, problem.basis_order), point, orders, threshold)
        if not b.certified:
            raise CertificateError(
                f"basis for {w} is not certified independent at {tuple(point)}: W = {b.certificate.value:.6g}", b
            )
        a = apply_ics(Ansatz.from_basis(b), problem)
        hs = hpm_start(g, b, orders)
        start.extend(hs[i] for i in a.free)
        guesses[w], bases[w], ansatzes[w] = g, b, a
    residuals = build_residual(problem, *ansatzes.values())
    functional = assemble_functional(residuals, orders, param_names(*ansatzes.values()))
    return Setup(problem, guesses, bases, ansatzes, residuals, functional, tuple(start))


def solve(problem: ProblemSpec, *, seed: int = DEFAULT_SEED, witness=None) -> Solution:
    """Fit the problem. Raises :class:`NoConvergence` (with ``.solution`` attached)."""
    setup = prepare(problem, witness=witness)
    try:
        fit = minimize(setup.functional, setup.start, seed=seed)
    except NoConvergence as exc:
        exc.solution = Solution(setup, exc.result)
        raise
    return Solution(setup, fit)


__all__ = ["CertificateError", "Setup", "Solution", "prepare", "solve"]
