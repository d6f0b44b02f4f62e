# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; semantics identical to ``_search_py``."""

import numpy as np

cimport numpy as cnp


cdef inline bint _advance(long[::1] digits, long base) nogil:
    cdef Py_ssize_t i = digits.shape[0] - 1
    while i >= 0:
        digits[i] += 1
        if digits[i] < base:
            return True
        digits[i] = 0
        i -= 1
    return False


def search_method0(double[::1] w, long X, long n, long m, long d):
    cdef cnp.ndarray[long, ndim=1] enc_arr = np.zeros(X, dtype=np.int_)
    cdef cnp.ndarray[long, ndim=1] dec_arr = np.zeros(n * d, dtype=np.int_)
    cdef long[::1] enc = enc_arr
    cdef long[::1] dec = dec_arr
    cdef double best = -1.0, value, sub
    cdef long count = 0
    cdef long x, y, mu
    best_enc = None
    best_dec = None
    while True:
        dec_arr.fill(0)
        while True:
            value = 0.0
            for x in range(X):
                sub = 0.0
                mu = enc[x]
                for y in range(n):
                    sub += w[(x * n + y) * m + dec[y * d + mu]]
                value += sub
            if value > best:
                best = value
                best_enc = [enc[x] for x in range(X)]
                best_dec = [dec[x] for x in range(n * d)]
                count = 1
            elif value == best:
                count += 1
            if not _advance(dec, m):
                break
        if not _advance(enc, d):
            break
    return best, best_enc, best_dec, count


def search_method1(double[::1] w, long X, long n, long m, long d):
    cdef cnp.ndarray[long, ndim=1] enc_arr = np.zeros(X, dtype=np.int_)
    cdef cnp.ndarray[double, ndim=1] table_arr = np.zeros(n * d * m)
    cdef long[::1] enc = enc_arr
    cdef double[::1] table = table_arr
    cdef double best = -1.0, value, top, cell
    cdef long count = 0
    cdef long x, y, b, mu, i
    best_enc = None
    while True:
        for i in range(n * d * m):
            table[i] = 0.0
        for x in range(X):
            mu = enc[x]
            for y in range(n):
                for b in range(m):
                    table[(y * d + mu) * m + b] += w[(x * n + y) * m + b]
        value = 0.0
        for y in range(n):
            for mu in range(d):
                top = table[(y * d + mu) * m]
                for b in range(1, m):
                    cell = table[(y * d + mu) * m + b]
                    if cell > top:
                        top = cell
                value += top
        if value > best:
            best = value
            best_enc = [enc[x] for x in range(X)]
            count = 1
        elif value == best:
            count += 1
        if not _advance(enc, d):
            break
    best_dec = optimal_decodings(w, X, n, m, d, best_enc)
    return best, best_enc, best_dec, count


def search_method2(double[::1] w, long X, long n, long m, long d):
    cdef cnp.ndarray[long, ndim=1] dec_arr = np.zeros(n * d, dtype=np.int_)
    cdef long[::1] dec = dec_arr
    cdef double best = -1.0, value, top, sub
    cdef long count = 0
    cdef long x, y, mu
    best_dec = None
    while True:
        value = 0.0
        for x in range(X):
            top = -1.0
            for mu in range(d):
                sub = 0.0
                for y in range(n):
                    sub += w[(x * n + y) * m + dec[y * d + mu]]
                if sub > top:
                    top = sub
            value += top
        if value > best:
            best = value
            best_dec = [dec[x] for x in range(n * d)]
            count = 1
        elif value == best:
            count += 1
        if not _advance(dec, m):
            break
    best_enc = optimal_encoding(w, X, n, m, d, best_dec)
    return best, best_enc, best_dec, count


def optimal_decodings(double[::1] w, long X, long n, long m, long d, enc):
    cdef cnp.ndarray[long, ndim=1] enc_arr = np.asarray(enc, dtype=np.int_)
    cdef long[::1] enc_v = enc_arr
    cdef cnp.ndarray[double, ndim=1] table_arr = np.zeros(n * d * m)
    cdef double[::1] table = table_arr
    cdef double top, cell
    cdef long x, y, b, mu, arg
    for x in range(X):
        mu = enc_v[x]
        for y in range(n):
            for b in range(m):
                table[(y * d + mu) * m + b] += w[(x * n + y) * m + b]
    dec = [0] * (n * d)
    for y in range(n):
        for mu in range(d):
            top = table[(y * d + mu) * m]
            arg = 0
            for b in range(1, m):
                cell = table[(y * d + mu) * m + b]
                if cell > top:
                    top = cell
                    arg = b
            dec[y * d + mu] = arg
    return dec


def optimal_encoding(double[::1] w, long X, long n, long m, long d, dec):
    cdef cnp.ndarray[long, ndim=1] dec_arr = np.asarray(dec, dtype=np.int_)
    cdef long[::1] dec_v = dec_arr
    cdef double top, sub
    cdef long x, y, mu, arg
    enc = [0] * X
    for x in range(X):
        top = -1.0
        arg = 0
        for mu in range(d):
            sub = 0.0
            for y in range(n):
                sub += w[(x * n + y) * m + dec_v[y * d + mu]]
            if sub > top:
                top = sub
                arg = mu
        enc[x] = arg
    return enc


def evaluate(double[::1] w, long X, long n, long m, long d, enc, dec):
    cdef cnp.ndarray[long, ndim=1] enc_arr = np.asarray(enc, dtype=np.int_)
    cdef cnp.ndarray[long, ndim=1] dec_arr = np.asarray(dec, dtype=np.int_)
    cdef long[::1] enc_v = enc_arr
    cdef long[::1] dec_v = dec_arr
    cdef double value = 0.0, sub
    cdef long x, y, mu
    for x in range(X):
        sub = 0.0
        mu = enc_v[x]
        for y in range(n):
            sub += w[(x * n + y) * m + dec_v[y * d + mu]]
        value += sub
    return value
