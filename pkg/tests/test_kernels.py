"""Parity and determinism of the compiled and pure-Python kernels."""

import numpy as np
import pytest

from pagecert import _kernels_py
from pagecert.analysis import _start_angles, sphere_grid
from pagecert.curvature import curvature_at

try:
    from pagecert import _kernels_c
except ImportError:
    _kernels_c = None

needs_compiled = pytest.mark.skipif(
    _kernels_c is None, reason="compiled kernels not built"
)


def _blocks(metric, x):
    op = curvature_at(metric, x)
    return op.matrix, op.sd_blocks()


def test_schedule_constants_in_sync():
    if _kernels_c is None:
        pytest.skip("compiled kernels not built")
    assert _kernels_c.COARSE_SAMPLES_PY == _kernels_py.COARSE_SAMPLES
    assert _kernels_c.GOLDEN_ITERS_PY == _kernels_py.GOLDEN_ITERS
    assert _kernels_c.SWEEPS_PY == _kernels_py.SWEEPS


@needs_compiled
def test_grid_kernel_parity(page, cp2):
    pts = sphere_grid(32)
    for metric, x in ((page, 0.7), (page, 0.0), (cp2, 0.3)):
        _, (rpp, rpm, rmm) = _blocks(metric, x)
        rc = _kernels_c.grid_minmax(rpp, rpm, rmm, pts)
        rp = _kernels_py.grid_minmax(rpp, rpm, rmm, pts)
        assert rc[0] == pytest.approx(rp[0], abs=1e-12)
        assert rc[1] == pytest.approx(rp[1], abs=1e-12)
        assert rc[2:] == rp[2:]  # identical argmin/argmax grid indices


@needs_compiled
def test_descent_kernel_parity(page):
    m, _ = _blocks(page, 0.85)
    starts = _start_angles(16)
    vc, _ = _kernels_c.descent_extremum(m, starts, 1.0)
    vp, _ = _kernels_py.descent_extremum(m, starts, 1.0)
    assert vc == pytest.approx(vp, abs=1e-9)
    vc_max, _ = _kernels_c.descent_extremum(m, starts, -1.0)
    vp_max, _ = _kernels_py.descent_extremum(m, starts, -1.0)
    assert vc_max == pytest.approx(vp_max, abs=1e-9)


def test_python_kernel_determinism(page):
    m, (rpp, rpm, rmm) = _blocks(page, 0.6)
    pts = sphere_grid(16)
    a = _kernels_py.grid_minmax(rpp, rpm, rmm, pts)
    b = _kernels_py.grid_minmax(rpp, rpm, rmm, pts)
    assert a == b
    starts = _start_angles(8)
    va, aa = _kernels_py.descent_extremum(m, starts, 1.0)
    vb, ab = _kernels_py.descent_extremum(m, starts, 1.0)
    assert va == vb
    assert np.array_equal(aa, ab)


def test_backend_selection_env(monkeypatch):
    import importlib

    import pagecert._backend as backend

    monkeypatch.setenv("PAGECERT_PURE_PYTHON", "1")
    importlib.reload(backend)
    assert backend.backend_name() == "python"
    monkeypatch.delenv("PAGECERT_PURE_PYTHON")
    importlib.reload(backend)
    assert backend.backend_name() in ("python", "compiled")
