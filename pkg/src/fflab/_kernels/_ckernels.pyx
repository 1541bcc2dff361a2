# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see package docstring)."""

import numpy as np


def line_value_stats(const unsigned char[:, ::1] values, const int[:, :, ::1] lines):
    cdef Py_ssize_t nbatch = values.shape[0]
    cdef Py_ssize_t ndir = lines.shape[0]
    cdef Py_ssize_t q = lines.shape[1]
    counts_arr = np.zeros(nbatch, dtype=np.int64)
    degen_arr = np.zeros(nbatch, dtype=np.uint8)
    cdef long long[::1] counts = counts_arr
    cdef unsigned char[::1] degen = degen_arr
    cdef Py_ssize_t b, d, i, j
    cdef unsigned long long mask, one = 1
    cdef unsigned char v0
    cdef bint all_const, row_const
    cdef long long c
    for b in range(nbatch):
        mask = 0
        for d in range(ndir):
            all_const = True
            for i in range(q):
                v0 = values[b, lines[d, i, 0]]
                row_const = True
                for j in range(1, q):
                    if values[b, lines[d, i, j]] != v0:
                        row_const = False
                        break
                if row_const:
                    mask |= one << v0
                else:
                    all_const = False
            if all_const:
                degen[b] = 1
        c = 0
        while mask:
            mask &= mask - 1
            c += 1
        counts[b] = c
    return counts_arr, degen_arr.astype(bool)


def incidence_count(const long long[::1] xpos, const long long[::1] ypos,
                    const int[:, ::1] combine, const unsigned char[::1] pmask):
    cdef Py_ssize_t i, j
    cdef long long total = 0
    for i in range(xpos.shape[0]):
        for j in range(ypos.shape[0]):
            if pmask[combine[xpos[i], ypos[j]]]:
                total += 1
    return total


def pairwise_zp(const long long[::1] a, const long long[::1] b, long long p, int op):
    marks_arr = np.zeros(p, dtype=np.uint8)
    cdef unsigned char[::1] marks = marks_arr
    cdef Py_ssize_t i, j
    cdef long long ai, z
    for i in range(a.shape[0]):
        ai = a[i]
        if op == 0:
            for j in range(b.shape[0]):
                z = ai + b[j]
                if z >= p:
                    z -= p
                marks[z] = 1
        elif op == 1:
            for j in range(b.shape[0]):
                z = ai - b[j]
                if z < 0:
                    z += p
                marks[z] = 1
        else:
            for j in range(b.shape[0]):
                marks[(ai * b[j]) % p] = 1
    return np.nonzero(marks_arr)[0].astype(np.int64)
