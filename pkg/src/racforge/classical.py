"""Exact classical value via exhaustive strategy enumeration.

Three equivalent search methods are provided: method 0 scans every
(encoding, decoding) combination, method 1 scans encodings only and fills in
the decodings by per-(question, message) argmax, method 2 scans decoding
tuples only and fills in the encoding by per-string argmax.  Methods 1 and 2
reduce the double-exponential scan to a single one without losing exactness.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import backend
from .errors import SearchTooLarge, ShapeMismatch
from .scenario import BiasTensor

DEFAULT_LIMIT = 10**9
DEFAULT_METHOD = 2


@dataclass(frozen=True)
class ClassicalStrategy:
    """Deterministic strategy: an encoding table and one decoding table per y.

    ``encoding[x]`` is the message sent for string x (ascending x);
    ``decodings[y][mu]`` is the answer to question y on message mu.
    """

    encoding: tuple[int, ...]
    decodings: tuple[tuple[int, ...], ...]

    def validate(self, t: BiasTensor) -> None:
        p = t.params
        if len(self.encoding) != p.num_strings or any(
            not 0 <= mu < p.d for mu in self.encoding
        ):
            raise ShapeMismatch("encoding table does not match the scenario")
        if len(self.decodings) != p.n or any(
            len(row) != p.d or any(not 0 <= b < p.m for b in row)
            for row in self.decodings
        ):
            raise ShapeMismatch("decoding tables do not match the scenario")


@dataclass(frozen=True)
class SearchResult:
    value: float
    witness: ClassicalStrategy
    optimum_count: int
    method: int
    functions_scanned: int
    elapsed: float


def _flat_weights(t: BiasTensor) -> np.ndarray:
    return np.ascontiguousarray(t.weights.reshape(-1))


def evaluate_classical(t: BiasTensor, s: ClassicalStrategy) -> float:
    """Value sum_{x,y} alpha_{x, y, D_y(E(x))} of a deterministic strategy."""
    s.validate(t)
    p = t.params
    dec = [b for row in s.decodings for b in row]
    return backend.evaluate(
        _flat_weights(t), p.num_strings, p.n, p.m, p.d, list(s.encoding), dec
    )


def evaluate_classical_exact(t: BiasTensor, s: ClassicalStrategy) -> Fraction:
    """Exact rational value; requires a tensor built with exact weights."""
    s.validate(t)
    p = t.params
    total = Fraction(0)
    for x in range(p.num_strings):
        mu = s.encoding[x]
        for y in range(p.n):
            total += t.exact_weight(x, y, s.decodings[y][mu])
    return total


def optimal_decoding_for(t: BiasTensor, encoding) -> tuple[tuple[int, ...], ...]:
    """Best decodings for a fixed encoding; ties go to the smallest answer."""
    p = t.params
    dec = backend.optimal_decodings(
        _flat_weights(t), p.num_strings, p.n, p.m, p.d, list(encoding)
    )
    return _split_decodings(dec, p.n, p.d)


def optimal_encoding_for(t: BiasTensor, decodings) -> tuple[int, ...]:
    """Best encoding for fixed decodings; ties go to the smallest message."""
    p = t.params
    dec = [b for row in decodings for b in row]
    enc = backend.optimal_encoding(_flat_weights(t), p.num_strings, p.n, p.m, p.d, dec)
    return tuple(enc)


def scan_count(t: BiasTensor, method: int) -> int:
    """Number of objects a search method enumerates (exact integer)."""
    p = t.params
    encodings = p.d**p.num_strings
    decodings = p.m ** (p.d * p.n)
    if method == 0:
        return encodings * decodings
    if method == 1:
        return encodings
    if method == 2:
        return decodings
    raise ValueError(f"method must be 0, 1 or 2, got {method}")


def perform_search(
    t: BiasTensor, method: int = DEFAULT_METHOD, limit: int = DEFAULT_LIMIT
) -> SearchResult:
    """Exact maximum of the functional over deterministic strategies.

    ``optimum_count`` counts the scanned objects attaining the maximum
    (combinations for method 0, encodings for method 1, decoding tuples for
    method 2); the witness is the first attaining object in ascending
    enumeration order.
    """
    total = scan_count(t, method)
    if total > limit:
        others = ", ".join(
            f"method {k}: {scan_count(t, k):.3g} objects" for k in (0, 1, 2) if k != method
        )
        raise SearchTooLarge(
            f"method {method} would scan {total} objects (limit {limit}); {others}",
            scan_count=total,
        )
    p = t.params
    w = _flat_weights(t)
    kernel = {0: backend.search_method0, 1: backend.search_method1, 2: backend.search_method2}[
        method
    ]
    start = time.perf_counter()
    _, enc, dec, count = kernel(w, p.num_strings, p.n, p.m, p.d)
    elapsed = time.perf_counter() - start
    witness = ClassicalStrategy(tuple(enc), _split_decodings(dec, p.n, p.d))
    return SearchResult(
        value=evaluate_classical(t, witness),
        witness=witness,
        optimum_count=int(count),
        method=method,
        functions_scanned=total,
        elapsed=elapsed,
    )


def _split_decodings(flat, n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(flat[y * d : (y + 1) * d]) for y in range(n))
