# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the sectional-curvature plane searches.

Algorithmic mirror of `_kernels_py` (same grids, same line-search schedule);
scalar loops instead of numpy batching.  Local copies of the line-search
constants below must stay in sync with the fallback module.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, cos, sin, sqrt

cnp.import_array()

DEF COARSE_SAMPLES = 16
DEF GOLDEN_ITERS = 28
DEF SWEEPS = 8

COARSE_SAMPLES_PY = COARSE_SAMPLES
GOLDEN_ITERS_PY = GOLDEN_ITERS
SWEEPS_PY = SWEEPS

cdef double _GOLDEN = (sqrt(5.0) - 1.0) / 2.0

# Givens axes (column -> rotated coordinate pair) and two-form basis pairs.
cdef int[6] _AX_I = [0, 0, 0, 1, 1, 2]
cdef int[6] _AX_J = [1, 2, 3, 2, 3, 3]
cdef int[6] _PAIR_A = [0, 0, 0, 2, 3, 1]
cdef int[6] _PAIR_B = [1, 2, 3, 3, 1, 2]


def grid_minmax(a, b, c, pts):
    """Extrema of K(p,q) = (p'Ap + 2 p'Bq + q'Cq)/2 over the grid pts x pts."""
    cdef double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double[:, ::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef double[:, ::1] pv = np.ascontiguousarray(pts, dtype=np.float64)
    cdef Py_ssize_t n = pv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pap_arr = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] qcq_arr = np.empty(n)
    cdef double[::1] pap = pap_arr
    cdef double[::1] qcq = qcq_arr
    cdef Py_ssize_t i, j, r, s
    cdef double acc, x0, x1, x2, b0, b1, b2, val
    for i in range(n):
        x0 = pv[i, 0]
        x1 = pv[i, 1]
        x2 = pv[i, 2]
        acc = 0.0
        for r in range(3):
            acc += (av[r, 0] * x0 + av[r, 1] * x1 + av[r, 2] * x2) * pv[i, r]
        pap[i] = acc
        acc = 0.0
        for r in range(3):
            acc += (cv[r, 0] * x0 + cv[r, 1] * x1 + cv[r, 2] * x2) * pv[i, r]
        qcq[i] = acc
    cdef double kmin = INFINITY
    cdef double kmax = -INFINITY
    cdef Py_ssize_t imin = 0, jmin = 0, imax = 0, jmax = 0
    for i in range(n):
        x0 = pv[i, 0]
        x1 = pv[i, 1]
        x2 = pv[i, 2]
        b0 = bv[0, 0] * x0 + bv[1, 0] * x1 + bv[2, 0] * x2
        b1 = bv[0, 1] * x0 + bv[1, 1] * x1 + bv[2, 1] * x2
        b2 = bv[0, 2] * x0 + bv[1, 2] * x1 + bv[2, 2] * x2
        for j in range(n):
            val = pap[i] + 2.0 * (b0 * pv[j, 0] + b1 * pv[j, 1] + b2 * pv[j, 2]) + qcq[j]
            if val < kmin:
                kmin = val
                imin = i
                jmin = j
            if val > kmax:
                kmax = val
                imax = i
                jmax = j
    return 0.5 * kmin, 0.5 * kmax, int(imin), int(jmin), int(imax), int(jmax)


cdef double _k_single(double[:, ::1] m6, double* ang) nogil:
    cdef double[4] u
    cdef double[4] v
    cdef double[6] biv
    cdef int col, i, j, idx
    cdef double cth, sth, wi, wj, acc, total
    for i in range(4):
        u[i] = 0.0
        v[i] = 0.0
    u[0] = 1.0
    v[1] = 1.0
    for col in range(5, -1, -1):
        i = _AX_I[col]
        j = _AX_J[col]
        cth = cos(ang[col])
        sth = sin(ang[col])
        wi = u[i]
        wj = u[j]
        u[i] = cth * wi - sth * wj
        u[j] = sth * wi + cth * wj
        wi = v[i]
        wj = v[j]
        v[i] = cth * wi - sth * wj
        v[j] = sth * wi + cth * wj
    for idx in range(6):
        biv[idx] = u[_PAIR_A[idx]] * v[_PAIR_B[idx]] - u[_PAIR_B[idx]] * v[_PAIR_A[idx]]
    total = 0.0
    for i in range(6):
        acc = 0.0
        for j in range(6):
            acc += m6[i, j] * biv[j]
        total += biv[i] * acc
    return total


def descent_extremum(m6, starts, double sign):
    """Multi-start coordinate descent of sign*K; returns (K, best angles)."""
    cdef double[:, ::1] mraw = np.ascontiguousarray(m6, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] msigned_arr = sign * np.asarray(mraw)
    cdef double[:, ::1] msigned = msigned_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=2] ang_arr = np.array(starts, dtype=np.float64)
    cdef double[:, ::1] ang = ang_arr
    cdef Py_ssize_t n = ang.shape[0]
    cdef Py_ssize_t lane, sweep, it
    cdef int col, k
    cdef double[6] work
    cdef double best, center, fbest, a, b, c, d, fc, fd, ftrial, span
    cdef double offset0 = -np.pi / 2.0
    cdef double dstep = np.pi / COARSE_SAMPLES
    cdef double half_window = np.pi / COARSE_SAMPLES
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lane_best = np.empty(n)
    for lane in range(n):
        for k in range(6):
            work[k] = ang[lane, k]
        best = _k_single(msigned, work)
        for sweep in range(SWEEPS):
            for col in range(6):
                # coarse scan over one period
                center = work[col]
                fbest = INFINITY
                for it in range(COARSE_SAMPLES):
                    work[col] = ang[lane, col] + offset0 + dstep * it
                    fc = _k_single(msigned, work)
                    if fc < fbest:
                        fbest = fc
                        center = work[col]
                # golden-section refinement around the best coarse sample
                a = center - half_window
                b = center + half_window
                c = b - _GOLDEN * (b - a)
                d = a + _GOLDEN * (b - a)
                for it in range(GOLDEN_ITERS):
                    work[col] = c
                    fc = _k_single(msigned, work)
                    work[col] = d
                    fd = _k_single(msigned, work)
                    if fc < fd:
                        b = d
                    else:
                        a = c
                    c = b - _GOLDEN * (b - a)
                    d = a + _GOLDEN * (b - a)
                work[col] = 0.5 * (a + b)
                ftrial = _k_single(msigned, work)
                if ftrial <= best:
                    best = ftrial
                    ang[lane, col] = work[col]
                else:
                    work[col] = ang[lane, col]
        lane_best[lane] = best
    cdef Py_ssize_t winner = int(np.argmin(lane_best))
    return sign * float(lane_best[winner]), ang_arr[winner].copy()
