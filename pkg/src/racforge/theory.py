"""Closed-form values, upper bounds and attainability analysis.

Covers two families of scenarios with uncorrelated inputs:

* n-bit strings into a qubit (m = d = 2): a Cauchy-Schwarz upper bound in
  terms of the flip-pair weights p_x and question weights r_y, the cosine
  conditions that reconstruct the optimal measurement Gram matrix from the
  bias, exact values for n = 2 and for the solved n = 3 patterns, and the
  bit-dropping decomposition that handles strongly biased strings.
* two d-valued characters into dimension d: an upper bound over projective
  decodings plus the necessary attainability conditions (operator ranks and
  the unistochastic target matrix).

Flip-pair weights are indexed by the transversal of strings with x_0 = 0 in
ascending order, consistently with the integer string encoding used
everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import NotProjective, OutOfTheoryScope
from .scenario import BiasTensor, ScenarioParams, _rac_tensor_from_xy, is_factorizable

PSD_TOL = 1e-10
FULL_RANK_TOL = 1e-9
PATTERN_TOL = 1e-9


@dataclass
class GramConfig:
    """Cosine matrix of the candidate optimal measurements and its
    consistency data.  ``gtilde`` carries 1/4 on the diagonal and
    cos(theta_ij)/4 off it; the candidate is consistent when all cosines are
    in [-1, 1] and gtilde is PSD, and realizable by Bloch vectors when its
    rank moreover does not exceed 3."""

    cosines: np.ndarray
    gtilde: np.ndarray
    in_range: bool
    psd: bool
    min_eig: float
    rank: int
    undefined_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.in_range and self.psd and not self.undefined_pairs

    @property
    def bloch_realizable(self) -> bool:
        return self.consistent and self.rank <= 3

    @property
    def full_rank(self) -> bool:
        return self.min_eig > FULL_RANK_TOL


@dataclass
class TheoryResult:
    value: float
    kind: str  # "exact" | "upper_bound" | "classical"
    attained: str  # "attained" | "not_attained" | "unknown"
    gram: Optional[GramConfig] = None
    drop_set: Optional[tuple[int, ...]] = None
    detail: str = ""

    def __post_init__(self):
        if self.kind not in ("exact", "upper_bound", "classical"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.attained not in ("attained", "not_attained", "unknown"):
            raise ValueError(f"bad attained {self.attained!r}")
        assert self.kind != "exact" or self.attained == "attained"


def _check_normalized(p, r) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    n = len(r)
    if len(p) != 2 ** (n - 1):
        raise ValueError(f"expected {2 ** (n - 1)} pair weights for n={n}, got {len(p)}")
    if abs(p.sum() - 1.0) > 1e-9 or abs(r.sum() - 1.0) > 1e-9:
        raise ValueError("pair and question weights must each sum to 1")
    return p, r


def upper_bound_n2(p, r) -> float:
    """Cauchy-Schwarz bound 1/2 + sqrt(2^(n-3)) sqrt(sum p^2) sqrt(sum r^2)
    for factorizable n-bit-to-qubit scenarios."""
    p, r = _check_normalized(p, r)
    n = len(r)
    return 0.5 + math.sqrt(2.0 ** (n - 3)) * math.sqrt(float(p @ p)) * math.sqrt(
        float(r @ r)
    )


def _transversal_bit(t_index: int, n: int, i: int) -> int:
    """Bit i of the transversal string t_index (bit 0 is always 0)."""
    if i == 0:
        return 0
    return (t_index >> (n - 1 - i)) & 1


def cosines_from_bias(p, r) -> GramConfig:
    """Cosines of the bound-saturating measurements, from the bias data.

    cos(theta_ij) is proportional to the difference of sum p_x^2 between
    strings with x_i = x_j and the rest; pairs with r_i r_j = 0 are flagged
    undefined (the question is never asked, so the bit is droppable).
    """
    p, r = _check_normalized(p, r)
    n = len(r)
    sum_p2 = float(p @ p)
    sum_r2 = float(r @ r)
    cos = np.eye(n)
    undefined = []
    for i in range(n):
        for j in range(i + 1, n):
            if r[i] * r[j] == 0.0:
                cos[i, j] = cos[j, i] = np.nan
                undefined.append((i, j))
                continue
            same = sum(
                float(p[t]) ** 2
                for t in range(len(p))
                if _transversal_bit(t, n, i) == _transversal_bit(t, n, j)
            )
            diff = same - (sum_p2 - same)
            cos[i, j] = cos[j, i] = sum_r2 / (2.0 * r[i] * r[j]) * diff / sum_p2
    finite = cos[np.isfinite(cos)]
    in_range = bool(np.all(np.abs(finite) <= 1.0 + 1e-12))
    clipped = np.clip(np.nan_to_num(cos, nan=0.0), -1.0, 1.0)
    gtilde = 0.25 * clipped
    np.fill_diagonal(gtilde, 0.25)
    eigs = np.linalg.eigvalsh(gtilde)
    return GramConfig(
        cosines=cos,
        gtilde=gtilde,
        in_range=in_range,
        psd=bool(eigs[0] >= -PSD_TOL),
        min_eig=float(eigs[0]),
        rank=int(np.sum(eigs > FULL_RANK_TOL)),
        undefined_pairs=undefined,
    )


def _gram_from_cosines(cos: np.ndarray) -> GramConfig:
    gtilde = 0.25 * np.clip(cos, -1.0, 1.0)
    np.fill_diagonal(gtilde, 0.25)
    eigs = np.linalg.eigvalsh(gtilde)
    return GramConfig(
        cosines=cos,
        gtilde=gtilde,
        in_range=bool(np.all(np.abs(cos) <= 1.0 + 1e-12)),
        psd=bool(eigs[0] >= -PSD_TOL),
        min_eig=float(eigs[0]),
        rank=int(np.sum(eigs > FULL_RANK_TOL)),
    )


def _two_vector_max(pa: float, pb: float, a: float, b: float) -> tuple[float, float]:
    """max over the angle between two half-norm vectors of
    pa |a m0 + b m1| + pb |a m0 - b m1|; returns (value, optimal cosine)."""
    norm2 = a * a + b * b
    if pa + pb <= 0.0:
        return 0.0, 1.0
    if a * b == 0.0 or pa == pb == 0.0:
        return 0.5 * (pa + pb) * math.sqrt(norm2), 1.0
    s2 = pa * pa + pb * pb
    c_opt = (norm2 / (2.0 * a * b)) * ((pa * pa - pb * pb) / s2)
    if abs(c_opt) < 1.0:
        return math.sqrt(norm2 * s2 / 2.0), c_opt
    aligned = 0.5 * (pa * (a + b) + pb * abs(a - b))
    flipped = 0.5 * (pa * abs(a - b) + pb * (a + b))
    if aligned >= flipped:
        return aligned, 1.0
    return flipped, -1.0


def value_2bit(p_00: float, p_01: float, r_0: float, r_1: float) -> TheoryResult:
    """Exact non-bit-dropping value of the two-bit-to-qubit scenario: the
    larger of the classical expression and the quantum branch, with the
    attaining cosine."""
    if abs(p_00 + p_01 - 1.0) > 1e-12 or abs(r_0 + r_1 - 1.0) > 1e-12:
        raise ValueError("pair and question weights must each sum to 1")
    inner, c_opt = _two_vector_max(p_00, p_01, r_0, r_1)
    value = 0.5 + inner
    gram = _gram_from_cosines(np.array([[1.0, c_opt], [c_opt, 1.0]]))
    kind = "classical" if abs(c_opt) == 1.0 else "exact"
    return TheoryResult(value=value, kind="exact", attained="attained", gram=gram,
                        detail="classical branch" if kind == "classical" else "quantum branch")


def classical_value_n2(p, r, drop_sets: Optional[Sequence[tuple[int, ...]]] = None) -> TheoryResult:
    """Classical value determined by the flip-pair weights: the best over
    bit-dropping subsets of constant guesses plus a weighted-majority
    encoding (decoded by identity, up to per-bit flips) on the kept bits."""
    p, r = _check_normalized(p, r)
    n = len(r)
    full = 1 << n
    alpha = np.empty(full)
    for x in range(full):
        alpha[x] = p[min(x, full - 1 - x)] / 2.0

    subsets = (
        drop_sets
        if drop_sets is not None
        else [tuple(k for k in range(n) if (s >> k) & 1) for s in range(1 << n)]
    )
    best = -1.0
    best_drop: tuple[int, ...] = ()
    for drop in subsets:
        kept = [y for y in range(n) if y not in drop]
        base = sum(r[k] / 2.0 for k in drop)
        if not kept:
            value = base
        else:
            value = base + _masked_majority(alpha, r, kept, n)
        if value > best:
            best = value
            best_drop = tuple(drop)
    return TheoryResult(value=best, kind="classical", attained="attained", drop_set=best_drop)


def _masked_majority(alpha: np.ndarray, r: np.ndarray, kept: list[int], n: int) -> float:
    """Best weighted-majority value on the kept bits, over per-bit flips."""
    best = -1.0
    for mask_bits in range(1 << len(kept)):
        total = 0.0
        for x in range(len(alpha)):
            zero = one = 0.0
            for pos, y in enumerate(kept):
                bit = ((x >> (n - 1 - y)) & 1) ^ ((mask_bits >> pos) & 1)
                if bit == 0:
                    zero += r[y]
                else:
                    one += r[y]
            total += alpha[x] * max(zero, one)
        if total > best:
            best = total
    return best


def value_3bit(p, r) -> TheoryResult:
    """Value of the three-bit-to-qubit scenario for the solved cases.

    When the bias-derived cosines are consistent and the Gram matrix has
    full rank the bound is exact.  Past that region, the single-heavy-string
    pattern with r_0 >= r_1 = r_2 is solved by merging the two light
    measurements (their cosine saturates first) and reducing to a two-vector
    problem; anything else returns the bound as an upper bound.
    """
    p, r = _check_normalized(p, r)
    if len(r) != 3:
        raise ValueError("value_3bit needs exactly 3 question weights")
    bound = upper_bound_n2(p, r)
    gram = cosines_from_bias(p, r)
    if gram.consistent and gram.full_rank:
        return TheoryResult(value=bound, kind="exact", attained="attained", gram=gram)

    pattern = (
        abs(r[1] - r[2]) <= PATTERN_TOL
        and r[0] >= r[1] - PATTERN_TOL
        and abs(p[1] - p[2]) <= PATTERN_TOL
        and abs(p[1] - p[3]) <= PATTERN_TOL
        and p[0] >= p[1] - PATTERN_TOL
        and not gram.undefined_pairs
    )
    if pattern:
        # Merged-measurement branch: m_1 = m_2, strings split by x_1 == x_2.
        base = 0.5 + (r[0] / 2.0) * (p[1] + p[2])
        inner, c_opt = _two_vector_max(p[0], p[3], r[0], 2.0 * r[1])
        cos = np.array([[1.0, c_opt, c_opt], [c_opt, 1.0, 1.0], [c_opt, 1.0, 1.0]])
        return TheoryResult(
            value=base + inner,
            kind="exact",
            attained="attained",
            gram=_gram_from_cosines(cos),
            detail="merged-measurement branch",
        )
    return TheoryResult(value=bound, kind="upper_bound", attained="unknown", gram=gram)


def bit_drop_value(
    t: BiasTensor,
    s: Sequence[int],
    residual_evaluator: Callable[[BiasTensor, tuple[int, ...]], "TheoryResult | float"],
) -> TheoryResult:
    """Value of the best strategy ignoring the bits in ``s``: constant-guess
    terms f_k (the better of guessing 0 or 1) plus the evaluator's value for
    the residual scenario on the kept questions."""
    if t.params.m != 2:
        raise ValueError("bit dropping applies to m = 2")
    drop = tuple(sorted(set(s)))
    kept = tuple(y for y in range(t.params.n) if y not in drop)
    f_total = 0.0
    for k in drop:
        f_total += float(max(t.weights[:, k, 0].sum(), t.weights[:, k, 1].sum()))
    residual = residual_evaluator(t, kept)
    if isinstance(residual, TheoryResult):
        return TheoryResult(
            value=f_total + residual.value,
            kind=residual.kind,
            attained=residual.attained,
            gram=residual.gram,
            drop_set=drop,
            detail=residual.detail,
        )
    return TheoryResult(
        value=f_total + float(residual), kind="upper_bound", attained="unknown", drop_set=drop
    )


def factorizable_residual(t: BiasTensor, kept: tuple[int, ...]) -> TheoryResult:
    """Residual value on the kept questions of a factorizable m = 2 tensor.

    The kept sub-scenario carries total weight sum_{y in kept} r_y; up to
    three kept bits it is solved exactly, beyond that the Cauchy-Schwarz
    bound is used.
    """
    ok, alpha_x, r_y = is_factorizable(t)
    if not ok:
        raise OutOfTheoryScope("residual reduction requires a factorizable tensor")
    n = t.params.n
    if not kept:
        return TheoryResult(value=0.0, kind="exact", attained="attained")
    mass = float(sum(r_y[y] for y in kept))
    if mass <= 0.0:
        return TheoryResult(value=0.0, kind="exact", attained="attained")
    k = len(kept)
    beta = _marginalize_bits(alpha_x, n, kept)
    r_sub = np.array([r_y[y] / mass for y in kept])
    if k == 1:
        return TheoryResult(value=mass, kind="exact", attained="attained")
    p_sub = _pairs_from_alpha(beta)
    if k == 2:
        res = value_2bit(p_sub[0], p_sub[1], r_sub[0], r_sub[1])
    elif k == 3:
        res = value_3bit(p_sub, r_sub)
    else:
        return TheoryResult(
            value=mass * upper_bound_n2(p_sub, r_sub),
            kind="upper_bound",
            attained="unknown",
            gram=cosines_from_bias(p_sub, r_sub),
        )
    return TheoryResult(
        value=mass * res.value,
        kind=res.kind,
        attained=res.attained,
        gram=res.gram,
        detail=res.detail,
    )


def _marginalize_bits(alpha_x: np.ndarray, n: int, kept: tuple[int, ...]) -> np.ndarray:
    """Collapse the string distribution onto the kept bit positions."""
    out = np.zeros(1 << len(kept))
    for x in range(len(alpha_x)):
        idx = 0
        for y in kept:
            idx = (idx << 1) | ((x >> (n - 1 - y)) & 1)
        out[idx] += alpha_x[x]
    return out


def _pairs_from_alpha(alpha: np.ndarray) -> np.ndarray:
    half = len(alpha) // 2
    return alpha[:half] + alpha[::-1][:half]


def quantum_value_n2(t: BiasTensor) -> TheoryResult:
    """Best theory value of a factorizable m = 2 tensor over all
    bit-dropping subsets.  Exact when the winning branch is exact and
    dominates every other branch's bound; otherwise an upper bound."""
    if t.params.m != 2:
        raise OutOfTheoryScope("quantum_value_n2 applies to m = 2")
    ok, _, _ = is_factorizable(t)
    if not ok:
        raise OutOfTheoryScope("quantum_value_n2 requires a factorizable tensor")
    n = t.params.n
    results = []
    for bits in range(1 << n):
        drop = tuple(k for k in range(n) if (bits >> k) & 1)
        results.append(bit_drop_value(t, drop, factorizable_residual))
    best = max(results, key=lambda res: res.value)
    if best.kind != "upper_bound":
        return best
    # n >= 4 no-drop bounds: rank > 3 Gram matrices cannot be realized by
    # Bloch vectors, so a consistent-but-high-rank candidate is unattainable.
    attained = best.attained
    if best.gram is not None and best.gram.consistent and best.gram.rank > 3:
        attained = "not_attained"
    return TheoryResult(
        value=best.value,
        kind="upper_bound",
        attained=attained,
        gram=best.gram,
        drop_set=best.drop_set,
        detail=best.detail,
    )


def x_plane_value(n: int, a: float) -> TheoryResult:
    """Piecewise value of the first-bit-biased product family; ``a`` is the
    majority weight of the first bit, in [1/2, 1]."""
    if not 0.5 - 1e-12 <= a <= 1.0 + 1e-12:
        raise ValueError("a must lie in [1/2, 1]")
    if n == 2:
        threshold = 1.0 / math.sqrt(2.0)
        if a <= threshold:
            return TheoryResult(0.5 * (1 + threshold), "exact", "attained", drop_set=())
        return TheoryResult(0.5 * (1.0 + a), "exact", "attained", drop_set=(0,))
    if n == 3:
        threshold = 0.5 * (1.0 + math.sqrt(3.0) - math.sqrt(2.0))
        if a <= threshold:
            return TheoryResult(
                0.5 * (1.0 + 1.0 / math.sqrt(3.0)), "exact", "attained", drop_set=()
            )
        return TheoryResult(
            (a + 1.0 + 1.0 / math.sqrt(2.0)) / 3.0, "exact", "attained", drop_set=(0,)
        )
    raise OutOfTheoryScope("x_plane_value covers n in {2, 3}")


B_ONE_CLASSICAL_LOW = (3.0 - math.sqrt(5.0)) / 4.0
B_ONE_CLASSICAL_HIGH = (1.0 + math.sqrt(5.0)) / 4.0


def b_one_value(w_0: float) -> TheoryResult:
    """Exact value of the answer-biased two-bit scenario (weights w_0 and
    1 - w_0 on the two answers).

    Stationarity in the measurement angle gives cos(theta/2)^2 =
    1 / (4 mu (1 + 4 mu)) with mu = w_0 w_1; substituting back yields
    1/2 + sqrt(1 + 4 mu) / (8 sqrt(mu)) inside the advantage window, whose
    endpoints (3 +- ... sqrt(5))/4 are exactly where the interior critical
    point exits [-1, 1].  Outside, aligned measurements are optimal and the
    value is the classical 1/2 + (1 + sqrt(1 - 4 mu)) / 4.
    """
    if not 0.0 <= w_0 <= 1.0:
        raise ValueError("w_0 must lie in [0, 1]")
    mu = w_0 * (1.0 - w_0)
    if B_ONE_CLASSICAL_LOW < w_0 < B_ONE_CLASSICAL_HIGH:
        half_cos = 1.0 / math.sqrt(4.0 * mu + 16.0 * mu * mu)
        cos_theta = 2.0 * half_cos * half_cos - 1.0
        gram = _gram_from_cosines(np.array([[1.0, cos_theta], [cos_theta, 1.0]]))
        value = 0.5 + math.sqrt(1.0 + 4.0 * mu) / (8.0 * math.sqrt(mu))
        return TheoryResult(value, "exact", "attained", gram=gram, detail="quantum branch")
    value = 0.5 + 0.25 * (1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * mu)))
    gram = _gram_from_cosines(np.array([[1.0, 1.0], [1.0, 1.0]]))
    return TheoryResult(value, "exact", "attained", gram=gram, detail="classical branch")


def upper_bound_2d(alpha: np.ndarray, r_0: float, r_1: float) -> float:
    """Projective-strategy bound for two d-valued characters:
    1/2 + (1/2) sqrt(d^2 - 4 d (d-1) r_0 r_1) sqrt(sum alpha^2)."""
    alpha = np.asarray(alpha, dtype=float)
    d = alpha.shape[0]
    if alpha.shape != (d, d):
        raise ValueError("alpha must be a d x d matrix")
    if abs(alpha.sum() - 1.0) > 1e-9 or abs(r_0 + r_1 - 1.0) > 1e-9:
        raise ValueError("alpha and (r_0, r_1) must be normalized")
    return 0.5 + 0.5 * math.sqrt(d * d - 4.0 * d * (d - 1) * r_0 * r_1) * math.sqrt(
        float((alpha**2).sum())
    )


@dataclass
class Attainability2d:
    constant: float
    ranks: np.ndarray  # (2, d) implied ranks, real-valued
    ranks_feasible: bool
    overlap_target: np.ndarray  # implied tr M_0^{x0} M_1^{x1}
    overlaps_feasible: bool
    bound: float
    bound_feasible: bool
    unistochastic_target: Optional[np.ndarray]
    verdict: str  # "necessary-conditions-pass" | "fail"


def attainability_2d(alpha: np.ndarray, r_0: float, r_1: float) -> Attainability2d:
    """Necessary conditions for saturating the two-character bound.

    Saturation forces the measurement-operator ranks and pairwise overlaps
    displayed here; the verdict never claims attainability (deciding
    unistochasticity of the target matrix is out of scope), it only reports
    whether the necessary conditions hold.
    """
    alpha = np.asarray(alpha, dtype=float)
    d = alpha.shape[0]
    sum_sq = float((alpha**2).sum())
    rr = r_0 * r_1
    bound = upper_bound_2d(alpha, r_0, r_1)
    if rr <= 1e-12:
        # One question is never asked; the saturation algebra degenerates.
        return Attainability2d(
            constant=math.sqrt((d * d - 4.0 * rr * d * (d - 1)) / sum_sq),
            ranks=np.full((2, d), np.nan),
            ranks_feasible=False,
            overlap_target=np.full((d, d), np.nan),
            overlaps_feasible=False,
            bound=bound,
            bound_feasible=bound <= 1.0 + 1e-9,
            unistochastic_target=None,
            verdict="fail",
        )
    c2 = (d * d - 4.0 * rr * d * (d - 1)) / sum_sq
    ranks = np.empty((2, d))
    ranks[0] = (d * (4.0 * rr - 1.0) + c2 * (alpha**2).sum(axis=1)) / (4.0 * rr)
    ranks[1] = (d * (4.0 * rr - 1.0) + c2 * (alpha**2).sum(axis=0)) / (4.0 * rr)
    rounded = np.round(ranks)
    ranks_feasible = bool(
        np.all(np.abs(ranks - rounded) <= 1e-6) and np.all(rounded >= 0) and np.all(rounded <= d)
    )
    overlap = 1.0 + (c2 * alpha**2 - 1.0) / (4.0 * rr)
    overlaps_feasible = True
    if ranks_feasible:
        r0 = rounded[0][:, None]
        r1 = rounded[1][None, :]
        low = np.maximum(0.0, r0 + r1 - d)
        high = np.minimum(r0, r1)
        overlaps_feasible = bool(
            np.all(overlap >= low - 1e-6) and np.all(overlap <= high + 1e-6)
        )
    bound_feasible = bound <= 1.0 + 1e-9
    ok = ranks_feasible and overlaps_feasible and bound_feasible
    unistochastic = overlap if ranks_feasible and np.all(rounded == 1) else None
    return Attainability2d(
        constant=math.sqrt(c2),
        ranks=ranks,
        ranks_feasible=ranks_feasible,
        overlap_target=overlap,
        overlaps_feasible=overlaps_feasible,
        bound=bound,
        bound_feasible=bound_feasible,
        unistochastic_target=unistochastic,
        verdict="necessary-conditions-pass" if ok else "fail",
    )


def bias_from_measurements(
    m_0: np.ndarray, m_1: np.ndarray, r_0: float, r_1: float
) -> BiasTensor:
    """Tensor tailored to a pair of projective measurements: string weights
    proportional to sqrt(1 + 4 r_0 r_1 (tr M_0^{x0} M_1^{x1} - 1)),
    normalized, on the two-character scenario of the matching dimension."""
    m_0 = np.asarray(m_0, dtype=np.complex128)
    m_1 = np.asarray(m_1, dtype=np.complex128)
    d = m_0.shape[-1]
    for ops in (m_0, m_1):
        for op in ops:
            if np.linalg.norm(op @ op - op) > 1e-7:
                raise NotProjective("bias_from_measurements needs projective POVMs")
    overlap = np.real(np.einsum("aij,bji->ab", m_0, m_1))
    radicand = np.clip(1.0 + 4.0 * r_0 * r_1 * (overlap - 1.0), 0.0, None)
    alpha = np.sqrt(radicand)
    alpha /= alpha.sum()
    params = ScenarioParams(2, len(m_0), d)
    xy = np.empty((params.num_strings, 2))
    xy[:, 0] = alpha.reshape(-1) * r_0
    xy[:, 1] = alpha.reshape(-1) * r_1
    return _rac_tensor_from_xy(params, xy)


def theory_value(t: BiasTensor) -> TheoryResult:
    """Best closed-form statement available for a tensor, or
    OutOfTheoryScope.  Dispatches between the m = 2 qubit analysis, the
    two-character bound, and the answer-biased two-bit closed form."""
    ok, alpha_x, r_y = is_factorizable(t)
    if t.params.m == 2 and ok:
        return quantum_value_n2(t)
    if t.params.n == 2 and ok and t.params.m == t.params.d:
        d = t.params.d
        alpha = np.asarray(alpha_x).reshape(d, d)
        bound = upper_bound_2d(alpha, float(r_y[0]), float(r_y[1]))
        att = attainability_2d(alpha, float(r_y[0]), float(r_y[1]))
        if np.max(np.abs(alpha - 1.0 / (d * d))) <= 1e-12:
            attained = "attained"  # mutually unbiased pair saturates it
        elif att.verdict == "fail":
            attained = "not_attained"
        else:
            attained = "unknown"
        return TheoryResult(
            value=bound, kind="upper_bound", attained=attained,
            detail=f"projective bound, attainability {att.verdict}",
        )
    if t.params.n == 2 and t.params.m == 2 and t.params.d == 2:
        xy = t.xy_weights
        chars = np.array([[0, 0], [0, 1], [1, 0], [1, 1]])
        w_est = np.empty(2)
        consistent = True
        for value in (0, 1):
            entries = [xy[x, y] for x in range(4) for y in range(2) if chars[x, y] == value]
            w_est[value] = 4.0 * entries[0]
            consistent = consistent and np.allclose(entries, entries[0], atol=1e-12)
        if consistent and abs(w_est.sum() - 1.0) <= 1e-9:
            return b_one_value(float(w_est[0]))
    raise OutOfTheoryScope(
        f"no closed form for this tensor on {t.params.notation()} "
        "(supported: factorizable m=2; factorizable n=2 with m=d; "
        "answer-biased 2-bit)"
    )
