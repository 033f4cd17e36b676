# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Signatures and results match apcorr._kernels_py exactly; this module only
exists for speed.  Selection between the two happens in apcorr.kernels.
"""

from libc.math cimport fabs

import numpy as np

cimport numpy as cnp


def spf_fill(long long start, Py_ssize_t length, cnp.int64_t[::1] base_primes):
    """Smallest prime factor table for the window (start, start + length]."""
    out = np.zeros(length, dtype=np.int64)
    cdef cnp.int64_t[::1] spf = out
    cdef Py_ssize_t k, i
    cdef long long p, first
    with nogil:
        for k in range(base_primes.shape[0]):
            p = base_primes[k]
            first = (start // p + 1) * p
            i = first - start - 1
            while i < length:
                if spf[i] == 0:
                    spf[i] = p
                i += p
        for i in range(length):
            if spf[i] == 0:
                spf[i] = start + 1 + i
    return out


def direct_corr_int(cnp.int64_t[::1] f, cnp.int64_t[::1] g, Py_ssize_t hmax):
    """Shifted dot products in exact integer arithmetic."""
    out = np.empty(2 * hmax + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] c = out
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t s, j
    cdef long long acc
    with nogil:
        for s in range(2 * hmax + 1):
            acc = 0
            for j in range(n):
                acc += f[j] * g[j + s]
            c[s] = acc
    return out


def direct_corr_real(double[::1] f, double[::1] g, Py_ssize_t hmax):
    """Shifted dot products for real weights with Neumaier compensation."""
    out = np.empty(2 * hmax + 1, dtype=np.float64)
    cdef double[::1] c = out
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t s, j
    cdef double acc, comp, prod, t
    with nogil:
        for s in range(2 * hmax + 1):
            acc = 0.0
            comp = 0.0
            for j in range(n):
                prod = f[j] * g[j + s]
                t = acc + prod
                if fabs(acc) >= fabs(prod):
                    comp += (acc - t) + prod
                else:
                    comp += (prod - t) + acc
                acc = t
            c[s] = acc + comp
    return out


def fnv1a64(const unsigned char[::1] data):
    """64-bit FNV-1a hash of a bytes-like object."""
    cdef unsigned long long h = 0xCBF29CE484222325ULL
    cdef Py_ssize_t i
    with nogil:
        for i in range(data.shape[0]):
            h = (h ^ data[i]) * 0x100000001B3ULL
    return h
