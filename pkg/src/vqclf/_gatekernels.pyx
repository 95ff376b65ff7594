# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate kernels (hot path of the statevector simulator).

Same contract and arithmetic as ``_gatekernels_py``: in-place updates of a
contiguous complex128 statevector, qubit ``q`` = bit ``q`` of the index.
"""

from libc.math cimport sqrt

COMPILED = True


def backend_name():
    return "compiled"


def apply_h(double complex[::1] amps, Py_ssize_t q):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t low = 1 << q
    cdef Py_ssize_t step = low << 1
    cdef Py_ssize_t base, off, i0, i1
    cdef double complex t0, t1
    cdef double s = 1.0 / sqrt(2.0)
    for base in range(0, dim, step):
        for off in range(low):
            i0 = base + off
            i1 = i0 + low
            t0 = amps[i0]
            t1 = amps[i1]
            amps[i0] = (t0 + t1) * s
            amps[i1] = (t0 - t1) * s


def apply_phase(double complex[::1] amps, Py_ssize_t q,
                double complex p0, double complex p1):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t low = 1 << q
    cdef Py_ssize_t step = low << 1
    cdef Py_ssize_t base, off, i0
    for base in range(0, dim, step):
        for off in range(low):
            i0 = base + off
            amps[i0] = amps[i0] * p0
            amps[i0 + low] = amps[i0 + low] * p1


def apply_ry(double complex[::1] amps, Py_ssize_t q, double c, double s):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t low = 1 << q
    cdef Py_ssize_t step = low << 1
    cdef Py_ssize_t base, off, i0, i1
    cdef double complex t0, t1
    for base in range(0, dim, step):
        for off in range(low):
            i0 = base + off
            i1 = i0 + low
            t0 = amps[i0]
            t1 = amps[i1]
            amps[i0] = t0 * c - t1 * s
            amps[i1] = t0 * s + t1 * c


def apply_cz(double complex[::1] amps, Py_ssize_t q1, Py_ssize_t q2):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t mask = (1 << q1) | (1 << q2)
    cdef Py_ssize_t i
    for i in range(dim):
        if (i & mask) == mask:
            amps[i] = -amps[i]
