# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled crossing kernel; same contract as ``_kernel_py.crossings``.

All arithmetic is in 64-bit integers.  The caller guarantees magnitudes stay
far below 2**62 (see ``kernel.fits_int64``).
"""

from libc.stdlib cimport malloc, free

cdef long long ENDX[3]
cdef long long ENDY[3]
ENDX[:] = [-1, 0, 1]
ENDY[:] = [0, -1, 1]


def crossings(pieces, prims, points):
    cdef Py_ssize_t n = len(pieces)
    cdef Py_ssize_t idx
    cdef int k
    cdef long long ax, ay, dx, dy, px, py, X, Y, W, ux, uy, dd, Ax, Ay, tn, sn, rest, m
    cdef int bounded
    cdef long long* P = <long long*>malloc(max(n, 1) * 7 * sizeof(long long))
    if P == NULL:
        raise MemoryError()
    for idx in range(n):
        for k in range(5):
            P[7 * idx + k] = pieces[idx][k]
        P[7 * idx + 5] = prims[idx][0]
        P[7 * idx + 6] = prims[idx][1]
    out = []
    for pt in points:
        X = pt[0]
        Y = pt[1]
        W = pt[2]
        row = []
        for k in range(3):
            ux = ENDX[k]
            uy = ENDY[k]
            for idx in range(n):
                ax = P[7 * idx]
                ay = P[7 * idx + 1]
                dx = P[7 * idx + 2]
                dy = P[7 * idx + 3]
                bounded = <int>P[7 * idx + 4]
                dd = ux * dy - uy * dx
                if dd == 0:
                    continue
                Ax = W * ax - X
                Ay = W * ay - Y
                tn = Ax * dy - Ay * dx
                if (tn > 0) != (dd > 0):
                    continue
                sn = Ax * uy - Ay * ux
                if (sn > 0) != (dd > 0):
                    continue
                if bounded:
                    rest = W * dd - sn
                    if (rest > 0) != (dd > 0):
                        continue
                px = P[7 * idx + 5]
                py = P[7 * idx + 6]
                m = ux * py - uy * px
                if m < 0:
                    m = -m
                row.append((k, idx, m))
        out.append(row)
    free(P)
    return out
