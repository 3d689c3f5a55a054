import os
import subprocess
import sys

import numpy as np
import pytest

from glshp import _kernels
from glshp.fracalg import FracOrders, evaluate
from glshp.pipeline import solve
from glshp.problems import example1

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
def test_backends_agree():
    rng = np.random.default_rng(5)
    c, a, b = rng.normal(size=12), rng.uniform(0, 5, 12), rng.uniform(0, 5, 12)
    x, t = rng.uniform(0, 1, 300), rng.uniform(0, 1, 300)
    np.testing.assert_allclose(
        _kernels.eval_monomials_numba(c, a, b, x, t), _kernels.eval_monomials_numpy(c, a, b, x, t), rtol=1e-13, atol=1e-13
    )
    np.testing.assert_allclose(_kernels.gram_matrix_numba(a, b, a, b), _kernels.gram_matrix_numpy(a, b, a, b), rtol=1e-15)
    exps = rng.integers(0, 4, (15, 3))
    pts = rng.uniform(-3, 3, (40, 3))
    coeffs = rng.normal(size=15)
    np.testing.assert_allclose(
        _kernels.poly_eval_numba(exps, coeffs, pts), _kernels.poly_eval_numpy(exps, coeffs, pts), rtol=1e-12, atol=1e-12
    )


def test_scalar_matches_array():
    sol = solve(example1(0.91))
    s, o = sol.series("u"), FracOrders(0.91)
    X, T, vals = sol.grid(13, 9)
    for x, t, u in zip(X.ravel(), T.ravel(), vals["u"].ravel()):
        assert evaluate(s, x, t, o) == u


def test_numpy_fallback_selected_by_env():
    code = (
        "from glshp import _kernels; from glshp.pipeline import solve; from glshp.problems import example1;"
        "import numpy as np;"
        "sol = solve(example1(0.91)); X, T, v = sol.grid(13, 9);"
        "from glshp.fracalg import evaluate;"
        "ok = all(evaluate(sol.series('u'), x, t, sol.problem.orders) == u for x, t, u in zip(X.ravel(), T.ravel(), v['u'].ravel()));"
        "print(_kernels.BACKEND, ok, repr(sol.fit.params))"
    )
    env = dict(os.environ, GLSHP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True).stdout.split(maxsplit=2)
    assert out[:2] == ["numpy", "True"]
    params = eval(out[2])
    assert np.allclose(params, solve(example1(0.91)).fit.params, rtol=1e-10, atol=1e-12)
