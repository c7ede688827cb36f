"""Pure-Python (numpy) kernels for the sectional-curvature plane searches.

Mirrors the compiled kernels in `_kernels_c.pyx`: same grids, same iteration
counts, same arithmetic, so the two backends agree to floating-point noise.
The hot quantities:

* ``grid_minmax``     -- exhaustive K over a product-of-spheres plane grid,
* ``descent_extremum`` -- multi-start coordinate descent on Givens angles.
"""

from __future__ import annotations

import math

import numpy as np

#: Line-search schedule shared by both backends.
COARSE_SAMPLES = 16
GOLDEN_ITERS = 28
SWEEPS = 8
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: Givens axes in application order (kept in sync with analysis.GIVENS_AXES).
_AXES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

#: Two-form basis pairs (kept in sync with curvature.PAIRS).
_PAIRS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

_BLOCK_ROWS = 2048


def grid_minmax(a, b, c, pts):
    """Extrema of K(p, q) = (p'Ap + 2 p'Bq + q'Cq)/2 over the grid pts x pts.

    Returns (kmin, kmax, imin, jmin, imax, jmax) with deterministic
    first-occurrence tie breaking.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    pts = np.asarray(pts, dtype=float)
    n = pts.shape[0]
    pap = np.einsum("ni,ij,nj->n", pts, a, pts)
    qcq = np.einsum("ni,ij,nj->n", pts, c, pts)
    # K(i, j) = 0.5 * (pap[i] + 2 * (pts[i] @ b @ pts[j]) + qcq[j])
    kmin = math.inf
    kmax = -math.inf
    imin = jmin = imax = jmax = 0
    for lo in range(0, n, _BLOCK_ROWS):
        hi = min(lo + _BLOCK_ROWS, n)
        cross = pts[lo:hi] @ b @ pts.T  # (rows, n)
        block = pap[lo:hi, None] + 2.0 * cross + qcq[None, :]
        flat = int(np.argmin(block))
        val = float(block.flat[flat])
        if val < kmin:
            kmin = val
            imin = lo + flat // n
            jmin = flat % n
        flat = int(np.argmax(block))
        val = float(block.flat[flat])
        if val > kmax:
            kmax = val
            imax = lo + flat // n
            jmax = flat % n
    return 0.5 * kmin, 0.5 * kmax, imin, jmin, imax, jmax


def _k_batch(m6, angles):
    """Sectional curvature of the planes (Q e0, Q e1) for angle rows (N, 6)."""
    n = angles.shape[0]
    u = np.zeros((n, 4))
    v = np.zeros((n, 4))
    u[:, 0] = 1.0
    v[:, 1] = 1.0
    for col in range(5, -1, -1):
        i, j = _AXES[col]
        cth = np.cos(angles[:, col])
        sth = np.sin(angles[:, col])
        for w in (u, v):
            wi = w[:, i].copy()
            wj = w[:, j].copy()
            w[:, i] = cth * wi - sth * wj
            w[:, j] = sth * wi + cth * wj
    biv = np.empty((n, 6))
    for idx, (p, q) in enumerate(_PAIRS):
        biv[:, idx] = u[:, p] * v[:, q] - u[:, q] * v[:, p]
    return np.einsum("ni,ij,nj->n", biv, m6, biv)


def descent_extremum(m6, starts, sign):
    """Coordinate descent of sign*K from each start; returns the best (K, angles).

    sign=+1 minimizes K, sign=-1 maximizes (the returned value is K itself).
    Fixed iteration counts keep all lanes in lockstep and the result
    deterministic.
    """
    m6 = np.asarray(m6, dtype=float)
    starts = np.asarray(starts, dtype=float)
    msigned = sign * m6
    ang = starts.copy()
    n = ang.shape[0]
    best = _k_batch(msigned, ang)
    offsets = np.linspace(
        -math.pi / 2.0, math.pi / 2.0, COARSE_SAMPLES, endpoint=False
    )
    half_window = math.pi / COARSE_SAMPLES
    for _ in range(SWEEPS):
        for col in range(6):
            cand = np.repeat(ang[:, None, :], COARSE_SAMPLES, axis=1)
            cand[:, :, col] = ang[:, col][:, None] + offsets[None, :]
            vals = _k_batch(msigned, cand.reshape(-1, 6)).reshape(n, COARSE_SAMPLES)
            pick = np.argmin(vals, axis=1)
            center = ang[:, col] + offsets[pick]
            a = center - half_window
            b = center + half_window
            c = b - _GOLDEN * (b - a)
            d = a + _GOLDEN * (b - a)
            probe = np.repeat(ang, 2, axis=0)
            for _ in range(GOLDEN_ITERS):
                probe[0::2, col] = c
                probe[1::2, col] = d
                fcd = _k_batch(msigned, probe)
                fc = fcd[0::2]
                fd = fcd[1::2]
                less = fc < fd
                b = np.where(less, d, b)
                a = np.where(less, a, c)
                c = b - _GOLDEN * (b - a)
                d = a + _GOLDEN * (b - a)
            trial = ang.copy()
            trial[:, col] = 0.5 * (a + b)
            ftrial = _k_batch(msigned, trial)
            improved = ftrial <= best
            ang[:, col] = np.where(improved, trial[:, col], ang[:, col])
            best = np.where(improved, ftrial, best)
    lane = int(np.argmin(best))
    return sign * float(best[lane]), ang[lane].copy()
