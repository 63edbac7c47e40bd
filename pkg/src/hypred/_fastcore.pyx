# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot array kernels.

Same contract as ``_purecore``; see there for the documented semantics.
Points and normals are float64 C-contiguous arrays in hyperboloid
coordinates with Minkowski signature (-,+,+).
"""

import numpy as np

cimport cython
from libc.math cimport asinh, fabs, sinh


cdef inline double _mdot(const double* a, const double* b) nogil:
    return a[1] * b[1] + a[2] * b[2] - a[0] * b[0]


def widths_minmax(double[:, ::1] verts, double[:, ::1] normals):
    cdef Py_ssize_t n = verts.shape[0], m = normals.shape[0]
    w_arr = np.empty(m)
    lo_arr = np.empty(m)
    hi_arr = np.empty(m)
    cdef double[::1] w = w_arr, lo = lo_arr, hi = hi_arr
    cdef Py_ssize_t i, j
    cdef double s, smin, smax, amax
    with nogil:
        for i in range(m):
            smin = 1e308
            smax = -1e308
            amax = 0.0
            for j in range(n):
                s = asinh(_mdot(&normals[i, 0], &verts[j, 0]))
                if s < smin:
                    smin = s
                if s > smax:
                    smax = s
                if fabs(s) > amax:
                    amax = fabs(s)
            w[i] = amax
            lo[i] = smin
            hi[i] = smax
    return w_arr, lo_arr, hi_arr


def covered_by_any(double[:, ::1] points, double[:, :, ::1] tri_normals, double tol):
    cdef Py_ssize_t m = points.shape[0], t = tri_normals.shape[0]
    out_arr = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef double cut = -sinh(tol)
    cdef Py_ssize_t i, k, e
    cdef bint inside
    with nogil:
        for i in range(m):
            for k in range(t):
                inside = True
                for e in range(3):
                    if _mdot(&points[i, 0], &tri_normals[k, e, 0]) < cut:
                        inside = False
                        break
                if inside:
                    out[i] = 1
                    break
    return out_arr


def min_signed(double[:, ::1] points, double[:, ::1] edge_normals):
    cdef Py_ssize_t m = points.shape[0], n = edge_normals.shape[0]
    out_arr = np.empty(m)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double s, best
    with nogil:
        for i in range(m):
            best = 1e308
            for j in range(n):
                s = _mdot(&points[i, 0], &edge_normals[j, 0])
                if s < best:
                    best = s
            out[i] = asinh(best)
    return out_arr


def max_pair_mdot(double[:, ::1] verts):
    cdef Py_ssize_t n = verts.shape[0]
    cdef Py_ssize_t i, j
    cdef double best = -1e308, v
    with nogil:
        for i in range(n):
            for j in range(i, n):
                v = -_mdot(&verts[i, 0], &verts[j, 0])
                if v > best:
                    best = v
    return best
