import math
import os
import subprocess
import sys

import numpy as np
import pytest

from gendiff import McConfig, estimate_lhs
from gendiff._backend import BACKEND, get_kernels

compiled = get_kernels("compiled")
needs_compiled = pytest.mark.skipif(compiled is None,
                                    reason="compiled extension not built")


def test_backend_reports_a_known_name():
    assert BACKEND in ("compiled", "python")


def test_python_kernels_always_available():
    k = get_kernels("python")
    x = np.random.default_rng(1).uniform(0, 2 * math.pi, (64, 5))
    assert k.lhs_den(x, 1.0, 3.0, 1).shape == (64,)


@needs_compiled
def test_kernel_parity_lhs_rhs():
    py = get_kernels("python")
    rng = np.random.default_rng(2)
    x = np.ascontiguousarray(rng.uniform(0, 2 * math.pi, (4096, 5)))
    for s in (1, 2):
        a = compiled.lhs_den(x, 1.0, 7.5, s)
        b = py.lhs_den(x, 1.0, 7.5, s)
        np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)
        a = compiled.rhs_den(x, 8.0, 10.0, s)
        b = py.rhs_den(x, 8.0, 10.0, s)
        np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-12)


@needs_compiled
def test_kernel_parity_jcell():
    py = get_kernels("python")
    rng = np.random.default_rng(3)
    x = np.ascontiguousarray(rng.uniform(0.1, 0.5, (2048, 5)))
    a_z = rng.uniform(0.1, 0.5, 5)
    b_z = rng.uniform(0.1, 0.5, 5)
    for s in (1, 2):
        np.testing.assert_allclose(
            compiled.jcell_den(x, a_z, b_z, s),
            py.jcell_den(x, a_z, b_z, s),
            rtol=1e-9, atol=1e-18,
        )


@needs_compiled
def test_backend_estimates_agree_to_rounding():
    cfg = McConfig(points=4096, seed=5, scheme="lattice_shifted", epsilon=0.1)
    active = estimate_lhs(7, 1, -1, 1, 5, cfg)
    env = dict(os.environ, GENDIFF_BACKEND="python")
    code = (
        "from gendiff import McConfig, estimate_lhs\n"
        "cfg = McConfig(points=4096, seed=5, scheme='lattice_shifted', epsilon=0.1)\n"
        "print(repr(estimate_lhs(7, 1, -1, 1, 5, cfg).value))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    fallback = float(out.stdout.strip())
    assert active.value == pytest.approx(fallback, rel=1e-9)


def test_backend_env_override():
    env = dict(os.environ, GENDIFF_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from gendiff._backend import BACKEND; print(BACKEND)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
