"""Pure-Python enumeration kernels for the exact classical search.

These mirror the compiled kernels in ``_search_cy`` loop-for-loop, so both
backends produce bit-identical values, witnesses and optimum counts.  Tables
are enumerated as base-k odometers whose least significant digit is the
largest string index (encodings) or the largest (y, mu) slot (decodings).

Each kernel takes the flat weight list ``w`` with layout w[(x*n + y)*m + b]
and returns (best value, witness encoding, witness decodings, optimum count).
"""

from __future__ import annotations


def _advance(digits, base) -> bool:
    """Increment a big-endian odometer; False once it wraps around."""
    i = len(digits) - 1
    while i >= 0:
        digits[i] += 1
        if digits[i] < base:
            return True
        digits[i] = 0
        i -= 1
    return False


def search_method0(w, X, n, m, d):
    """Scan every (encoding, decoding-tuple) combination."""
    enc = [0] * X
    best = -1.0
    best_enc = None
    best_dec = None
    count = 0
    while True:
        dec = [0] * (n * d)
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
                best_enc = list(enc)
                best_dec = list(dec)
                count = 1
            elif value == best:
                count += 1
            if not _advance(dec, m):
                break
        if not _advance(enc, d):
            break
    return best, best_enc, best_dec, count


def search_method1(w, X, n, m, d):
    """Scan encodings; decodings optimized per encoding (smallest-b ties)."""
    enc = [0] * X
    best = -1.0
    best_enc = None
    count = 0
    table = [0.0] * (n * d * m)
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
            best_enc = list(enc)
            count = 1
        elif value == best:
            count += 1
        if not _advance(enc, d):
            break
    best_dec = optimal_decodings(w, X, n, m, d, best_enc)
    return best, best_enc, best_dec, count


def search_method2(w, X, n, m, d):
    """Scan decoding tuples; encoding optimized per tuple (smallest-mu ties)."""
    dec = [0] * (n * d)
    best = -1.0
    best_dec = None
    count = 0
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
            best_dec = list(dec)
            count = 1
        elif value == best:
            count += 1
        if not _advance(dec, m):
            break
    best_enc = optimal_encoding(w, X, n, m, d, best_dec)
    return best, best_enc, best_dec, count


def optimal_decodings(w, X, n, m, d, enc):
    """Per-(y, mu) argmax answer for a fixed encoding; smallest b wins ties."""
    table = [0.0] * (n * d * m)
    for x in range(X):
        mu = enc[x]
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


def optimal_encoding(w, X, n, m, d, dec):
    """Per-string argmax message for fixed decodings; smallest mu wins ties."""
    enc = [0] * X
    for x in range(X):
        top = -1.0
        arg = 0
        for mu in range(d):
            sub = 0.0
            for y in range(n):
                sub += w[(x * n + y) * m + dec[y * d + mu]]
            if sub > top:
                top = sub
                arg = mu
        enc[x] = arg
    return enc


def evaluate(w, X, n, m, d, enc, dec):
    """Value of a fixed strategy, accumulated per string then over strings."""
    value = 0.0
    for x in range(X):
        sub = 0.0
        mu = enc[x]
        for y in range(n):
            sub += w[(x * n + y) * m + dec[y * d + mu]]
        value += sub
    return value
