"""Backend parity: the compiled kernels must match the pure fallback."""

import numpy as np
import pytest

from ruledkit import _kernels_py, kernels

try:
    from ruledkit import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(_kernels is None, reason="compiled kernels unavailable")


def test_active_backend_reported():
    assert kernels.BACKEND in ("pure", "compiled")


def test_pure_series_ops_self_consistent(rng):
    for _ in range(100):
        n = rng.integers(1, 14)
        a = rng.standard_normal(n)
        b = rng.standard_normal(n)
        b[0] = rng.uniform(0.5, 2.0)
        ab = _kernels_py.series_mul(a, b)
        back = _kernels_py.series_div(ab, b)
        assert np.allclose(back, a, atol=1e-10)
        aa = a.copy()
        aa[0] = abs(aa[0]) + 1.0
        r = _kernels_py.series_sqrt(aa)
        assert np.allclose(_kernels_py.series_mul(r, r), aa, atol=1e-10)


@needs_compiled
def test_series_parity(rng):
    for _ in range(200):
        n = rng.integers(1, 14)
        a = rng.standard_normal(n)
        b = rng.standard_normal(n)
        b[0] = rng.uniform(0.5, 2.0)
        assert np.allclose(_kernels.series_mul(a, b), _kernels_py.series_mul(a, b), atol=1e-14)
        assert np.allclose(_kernels.series_div(a, b), _kernels_py.series_div(a, b), atol=1e-12)
        aa = a.copy()
        aa[0] = abs(aa[0]) + 0.5
        assert np.allclose(_kernels.series_sqrt(aa), _kernels_py.series_sqrt(aa), atol=1e-12)


@needs_compiled
def test_orthonormalize_parity(rng):
    for _ in range(50):
        y = rng.standard_normal(18) * 0.2
        y[0:3] += [1, 0, 0]
        y[6:9] += [0, 1, 0]
        y[12:15] += [0, 0, 1]
        a = _kernels.dual_orthonormalize(y)
        b = _kernels_py.dual_orthonormalize(y)
        assert np.allclose(a, b, atol=1e-13)


@needs_compiled
def test_frenet_rk4_parity(rng):
    nsteps = 200
    ss = np.linspace(0.0, 1.0, 2 * nsteps + 1)
    inv = np.column_stack(
        [np.ones_like(ss), 0.3 * ss**2, 0.2 + 0.5 * ss, 1.0 - 0.1 * ss]
    )
    y0 = np.concatenate([[1, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1], [0, 0, 0]]).astype(float)
    a = _kernels.frenet_rk4(inv, y0, 1.0 / nsteps, nsteps)
    b = _kernels_py.frenet_rk4(inv, y0, 1.0 / nsteps, nsteps)
    assert np.allclose(a, b, atol=1e-12)


def test_orthonormalize_establishes_relations(rng):
    from ruledkit.geometry import DualFrame

    for _ in range(20):
        y = rng.standard_normal(18) * 0.3
        y[0:3] += [1, 0, 0]
        y[6:9] += [0, 1, 0]
        y[12:15] += [0, 0, 1]
        z = kernels.dual_orthonormalize(y)
        frame = DualFrame.from_array(z, tol=1e-9)
        assert frame.orthonormality_defect() < 1e-13
