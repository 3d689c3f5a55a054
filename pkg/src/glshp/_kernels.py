"""Numeric inner loops.

Each kernel exists twice: a numba ``@njit`` version and a plain numpy
version. The public names at the bottom of the module point at one of the
two, chosen once at import time. Set ``GLSHP_DISABLE_NUMBA=1`` to force the
numpy path (also used automatically when numba is not installed).
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GLSHP_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
    "on",
)


# --- pure numpy -------------------------------------------------------------


def eval_monomials_numpy(coeff, xexp, texp, x, t):
    """Sum of ``coeff[i] * x**xexp[i] * t**texp[i]`` at every point."""
    out = np.zeros(x.shape[0])
    for i in range(coeff.shape[0]):
        out += coeff[i] * (x ** xexp[i]) * (t ** texp[i])
    return out


def gram_matrix_numpy(a1, b1, a2, b2):
    return 1.0 / ((a1[:, None] + a2[None, :] + 1.0) * (b1[:, None] + b2[None, :] + 1.0))


def poly_eval_numpy(exps, coeffs, points):
    # points: (npts, m); exps: (nterms, m) int
    mono = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
    return mono @ coeffs


# --- numba ------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def eval_monomials_numba(coeff, xexp, texp, x, t):
        npts = x.shape[0]
        out = np.zeros(npts)
        for j in range(npts):
            acc = 0.0
            for i in range(coeff.shape[0]):
                acc += coeff[i] * (x[j] ** xexp[i]) * (t[j] ** texp[i])
            out[j] = acc
        return out

    @njit(cache=True)
    def gram_matrix_numba(a1, b1, a2, b2):
        n1 = a1.shape[0]
        n2 = a2.shape[0]
        g = np.empty((n1, n2))
        for i in range(n1):
            for j in range(n2):
                g[i, j] = 1.0 / ((a1[i] + a2[j] + 1.0) * (b1[i] + b2[j] + 1.0))
        return g

    @njit(cache=True)
    def poly_eval_numba(exps, coeffs, points):
        npts, m = points.shape
        out = np.zeros(npts)
        for p in range(npts):
            acc = 0.0
            for k in range(coeffs.shape[0]):
                term = coeffs[k]
                for j in range(m):
                    e = exps[k, j]
                    if e:
                        term *= points[p, j] ** e
                acc += term
            out[p] = acc
        return out

else:  # pragma: no cover
    eval_monomials_numba = eval_monomials_numpy
    gram_matrix_numba = gram_matrix_numpy
    poly_eval_numba = poly_eval_numpy


if USE_NUMBA:
    eval_monomials = eval_monomials_numba
    gram_matrix = gram_matrix_numba
    poly_eval = poly_eval_numba
else:
    eval_monomials = eval_monomials_numpy
    gram_matrix = gram_matrix_numpy
    poly_eval = poly_eval_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
