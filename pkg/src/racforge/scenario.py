"""Scenario definitions and bias-tensor construction.

A scenario is a triple (n, m, d): Alice holds an n-character string over an
alphabet of size m, sends one message out of d, and Bob answers a question
y in {0..n-1} with a character b in {0..m-1}.  A bias tensor assigns a
nonnegative, normalized weight to every (string, question, answer) triple;
"rac" tensors reward only the correct answer b = x_y.

Strings are encoded as integers in [0, m^n) with x_0 the most significant
base-m digit, a convention shared by every module in this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidWeight, UnnormalizedCustom, WrongWeightArity

NORM_TOL = 1e-12

SCALAR_FAMILIES = ("Y_ONE", "X_ONE", "X_DIAG", "X_CHESS", "X_PLANE", "B_ONE")
VECTOR_FAMILIES = ("Y_ALL", "B_ALL")
FAMILIES = SCALAR_FAMILIES + VECTOR_FAMILIES + ("CUSTOM",)


@dataclass(frozen=True)
class ScenarioParams:
    """Integers defining an n^m -(d)-> 1 scenario; all must be >= 2."""

    n: int
    m: int
    d: int

    def __post_init__(self):
        for name in ("n", "m", "d"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 2:
                raise ValueError(f"{name} must be an integer >= 2, got {value!r}")

    @property
    def num_strings(self) -> int:
        return self.m**self.n

    def digits(self, x: int) -> tuple[int, ...]:
        """Base-m digits of string index x, most significant first."""
        out = []
        for _ in range(self.n):
            out.append(x % self.m)
            x //= self.m
        return tuple(reversed(out))

    def char_at(self, x: int, y: int) -> int:
        """The y-th character of string x (x_0 is most significant)."""
        return (x // self.m ** (self.n - 1 - y)) % self.m

    def string_label(self, x: int) -> str:
        return "".join(str(c) for c in self.digits(x))

    def index_of(self, label: str) -> int:
        if len(label) != self.n:
            raise ValueError(f"string label {label!r} must have length {self.n}")
        x = 0
        for ch in label:
            c = int(ch)
            if not 0 <= c < self.m:
                raise ValueError(f"character {ch!r} out of range for m={self.m}")
            x = x * self.m + c
        return x

    def notation(self) -> str:
        if self.m == self.d:
            return f"{self.n}^{self.d}-->1"
        return f"{self.n}^{self.m}--({self.d})-->1"


def char_table(params: ScenarioParams) -> np.ndarray:
    """Array C of shape (m^n, n) with C[x, y] = x_y."""
    X = params.num_strings
    out = np.empty((X, params.n), dtype=np.intp)
    for x in range(X):
        out[x] = params.digits(x)
    return out


@dataclass(frozen=True)
class BiasTensor:
    """Normalized nonnegative weights over (string, question, answer).

    ``weights`` has shape (m^n, n, m); ``kind`` is "rac" when every nonzero
    entry sits at b = x_y, "general" otherwise.  Instances are immutable.
    """

    params: ScenarioParams
    weights: np.ndarray
    kind: str = "rac"
    exact: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        w = np.ascontiguousarray(np.asarray(self.weights, dtype=np.float64))
        expected = (self.params.num_strings, self.params.n, self.params.m)
        if w.shape != expected:
            raise ValueError(f"weights shape {w.shape} != {expected}")
        if np.any(w < 0):
            raise ValueError("bias weights must be nonnegative")
        total = float(w.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise UnnormalizedCustom(
                f"bias tensor sums to {total!r}, expected 1 within {NORM_TOL}"
            )
        if self.kind not in ("rac", "general"):
            raise ValueError(f"unknown tensor kind {self.kind!r}")
        if self.kind == "rac":
            chars = char_table(self.params)
            mask = np.ones_like(w, dtype=bool)
            mask[np.arange(len(chars))[:, None], np.arange(self.params.n)[None, :], chars] = False
            if np.any(w[mask] != 0.0):
                raise ValueError("rac-kind tensor has weight on b != x_y entries")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def xy_weights(self) -> np.ndarray:
        """Matrix alpha_{x y} = sum_b weights[x, y, b], shape (m^n, n)."""
        return self.weights.sum(axis=2)

    def exact_weight(self, x: int, y: int, b: int) -> Fraction:
        """Weight as an exact rational, when the tensor carries one."""
        if self.exact is None:
            raise ValueError("tensor has no exact rational representation")
        return self.exact.get((x, y, b), Fraction(0))


@dataclass(frozen=True)
class BiasSpec:
    """Requested bias: a built-in family plus its weight(s), or a custom tensor.

    ``y_weights`` optionally composes an x-family with an explicit question
    distribution r_y, forming the product alpha_x * r_y.
    """

    family: str
    weight: Optional[float | Sequence[float]] = None
    custom_entries: Optional[dict] = None
    y_weights: Optional[Sequence[float]] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown bias family {self.family!r}; choose from {FAMILIES}")


@dataclass(frozen=True)
class MarginalViews:
    """Marginal and conditional distributions derived from a bias tensor.

    Conditionals are NaN where the conditioning weight vanishes; the
    ``*_defined`` masks flag the meaningful entries.  ``p_x`` (m = 2 only)
    holds the flip-pair weights alpha_x + alpha_of_complement.
    """

    alpha_x: np.ndarray
    r_y: np.ndarray
    r_y_given_x: np.ndarray
    r_y_given_x_defined: np.ndarray
    alpha_x_given_y: np.ndarray
    alpha_x_given_y_defined: np.ndarray
    p_x: Optional[np.ndarray]


def _rac_tensor_from_xy(params: ScenarioParams, xy: np.ndarray,
                        exact: Optional[dict] = None) -> BiasTensor:
    """Assemble a rac-kind tensor from alpha_{x y} weights."""
    X = params.num_strings
    w = np.zeros((X, params.n, params.m))
    chars = char_table(params)
    w[np.arange(X)[:, None], np.arange(params.n)[None, :], chars] = xy
    exact_entries = None
    if exact is not None:
        exact_entries = {
            (x, y, chars[x, y]): exact[x, y]
            for x in range(X)
            for y in range(params.n)
            if exact[x, y] != 0
        }
    return BiasTensor(params, w, kind="rac", exact=exact_entries)


def _check_scalar_weight(weight) -> Fraction:
    if weight is None or np.ndim(weight) != 0:
        raise InvalidWeight(f"family needs a scalar weight in [0, 1], got {weight!r}")
    if isinstance(weight, (Fraction, int)):
        frac = Fraction(weight)
    else:
        frac = Fraction(float(weight))
    if not 0 <= frac <= 1:
        raise InvalidWeight(f"weight {weight!r} outside [0, 1]")
    return frac


def _check_vector_weight(weight, length: int, what: str) -> list[Fraction]:
    if weight is None or np.ndim(weight) != 1:
        raise InvalidWeight(f"{what} needs a weight vector, got {weight!r}")
    vec = [Fraction(w) if isinstance(w, (Fraction, int)) else Fraction(float(w)) for w in weight]
    if len(vec) != length:
        raise WrongWeightArity(f"{what} expects {length} weights, got {len(vec)}")
    if any(w < 0 for w in vec):
        raise InvalidWeight("weight vector entries must be nonnegative")
    total = sum(vec)
    if abs(float(total) - 1.0) > NORM_TOL:
        raise InvalidWeight(f"weight vector sums to {float(total)!r}, expected 1")
    return [w / total for w in vec]


def _x_distribution(params: ScenarioParams, family: str, w: Fraction) -> list[Fraction]:
    """Exact per-string distribution alpha_x for the x-biasing families."""
    n, m = params.n, params.m
    X = params.num_strings
    alpha = [Fraction(0)] * X
    if family == "X_ONE":
        rest = (1 - w) / (X - 1)
        for x in range(X):
            alpha[x] = w if x == 0 else rest
    elif family == "X_DIAG":
        constant = {sum(c * m**k for k in range(n)) for c in range(m)}
        rest = (1 - w) / (X - m)
        for x in range(X):
            alpha[x] = w / m if x in constant else rest
    elif family == "X_CHESS":
        digit_sums = [sum(params.digits(x)) for x in range(X)]
        if m % 2 == 0:
            for x in range(X):
                alpha[x] = 2 * w / X if digit_sums[x] % 2 == 0 else 2 * (1 - w) / X
        else:
            # Odd m: the odd-digit-sum class is the smaller one and carries w.
            for x in range(X):
                if digit_sums[x] % 2 == 1:
                    alpha[x] = 2 * w / (X - 1)
                else:
                    alpha[x] = 2 * (1 - w) / (X + 1)
    elif family == "X_PLANE":
        half = m ** (n - 1)
        for x in range(X):
            alpha[x] = w / half if x < half else (1 - w) / (X - half)
    else:
        raise ValueError(f"{family} is not an x family")
    return alpha


def generate_bias(params: ScenarioParams, spec: BiasSpec) -> BiasTensor:
    """Build the normalized rac-kind tensor for one of the built-in families.

    Families biasing x use a uniform question distribution and vice versa,
    unless ``spec.y_weights`` composes an x-family with an explicit r_y.
    CUSTOM accepts explicit entries keyed ``(x, y, b)`` or
    ``"<x-string>:<y>:<b>"`` and may describe a general (non-rac) tensor.
    """
    n, m = params.n, params.m
    X = params.num_strings

    if spec.family == "CUSTOM":
        if spec.custom_entries is None:
            raise InvalidWeight("CUSTOM bias requires custom_entries")
        return tensor_from_entries(params, spec.custom_entries)

    r_y: list[Fraction]
    if spec.y_weights is not None:
        if spec.family not in ("X_ONE", "X_DIAG", "X_CHESS", "X_PLANE"):
            raise InvalidWeight("y_weights composition only applies to x families")
        r_y = _check_vector_weight(spec.y_weights, n, "y_weights")
    else:
        r_y = [Fraction(1, n)] * n

    exact = np.empty((X, n), dtype=object)

    if spec.family == "Y_ONE":
        w = _check_scalar_weight(spec.weight)
        per_y = [w] + [(1 - w) / (n - 1)] * (n - 1)
        for x in range(X):
            for y in range(n):
                exact[x, y] = per_y[y] / X
    elif spec.family == "Y_ALL":
        per_y = _check_vector_weight(spec.weight, n, "Y_ALL")
        for x in range(X):
            for y in range(n):
                exact[x, y] = per_y[y] / X
    elif spec.family in ("X_ONE", "X_DIAG", "X_CHESS", "X_PLANE"):
        w = _check_scalar_weight(spec.weight)
        alpha = _x_distribution(params, spec.family, w)
        for x in range(X):
            for y in range(n):
                exact[x, y] = alpha[x] * r_y[y]
    elif spec.family == "B_ONE":
        w = _check_scalar_weight(spec.weight)
        per_char = [w] + [(1 - w) / (m - 1)] * (m - 1)
        norm = Fraction(1, n * m ** (n - 1))
        for x in range(X):
            for y in range(n):
                exact[x, y] = norm * per_char[params.char_at(x, y)]
    elif spec.family == "B_ALL":
        per_char = _check_vector_weight(spec.weight, m, "B_ALL")
        norm = Fraction(1, n * m ** (n - 1))
        for x in range(X):
            for y in range(n):
                exact[x, y] = norm * per_char[params.char_at(x, y)]
    else:  # pragma: no cover - guarded by BiasSpec
        raise ValueError(f"unhandled family {spec.family}")

    xy = np.array([[float(exact[x, y]) for y in range(n)] for x in range(X)])
    return _rac_tensor_from_xy(params, xy, exact=exact)


def unbiased_tensor(params: ScenarioParams) -> BiasTensor:
    """The uniform rac tensor alpha_{x y} = 1 / (n m^n)."""
    X = params.num_strings
    exact = np.full((X, params.n), Fraction(1, params.n * X), dtype=object)
    xy = np.full((X, params.n), 1.0 / (params.n * X))
    return _rac_tensor_from_xy(params, xy, exact=exact)


def tensor_from_entries(params: ScenarioParams, entries: dict,
                        renormalize: bool = False) -> BiasTensor:
    """Tensor from an explicit {(x, y, b) or "xs:y:b" -> weight} mapping.

    Missing keys are zero.  Tensors failing normalization are rejected
    unless ``renormalize`` is set; negative weights are always rejected.
    """
    w = np.zeros((params.num_strings, params.n, params.m))
    for key, value in entries.items():
        if isinstance(key, str):
            xs, ys, bs = key.split(":")
            x, y, b = params.index_of(xs), int(ys), int(bs)
        else:
            x, y, b = key
        if not (0 <= x < params.num_strings and 0 <= y < params.n and 0 <= b < params.m):
            raise ValueError(f"entry key {key!r} out of range")
        w[x, y, b] = float(value)
    if np.any(w < 0):
        raise InvalidWeight("custom bias entries must be nonnegative")
    total = w.sum()
    if abs(total - 1.0) > NORM_TOL:
        if not renormalize:
            raise UnnormalizedCustom(
                f"custom bias sums to {total!r}; pass renormalize to accept"
            )
        if total <= 0:
            raise InvalidWeight("custom bias has no weight")
        w = w / total
    chars = char_table(params)
    mask = np.ones_like(w, dtype=bool)
    mask[np.arange(len(chars))[:, None], np.arange(params.n)[None, :], chars] = False
    kind = "rac" if not np.any(w[mask] != 0.0) else "general"
    return BiasTensor(params, w, kind=kind)


def flip_partner(params: ScenarioParams, x: int) -> int:
    """Index of the string with every character complemented (m = 2)."""
    if params.m != 2:
        raise ValueError("flip pairs are defined for m = 2 only")
    return params.num_strings - 1 - x


def marginals(t: BiasTensor) -> MarginalViews:
    """All marginal/conditional views of a normalized tensor."""
    xy = t.xy_weights
    alpha_x = xy.sum(axis=1)
    r_y = xy.sum(axis=0)

    with np.errstate(divide="ignore", invalid="ignore"):
        r_given_x = xy / alpha_x[:, None]
        a_given_y = xy / r_y[None, :]
    x_defined = alpha_x > 0
    y_defined = r_y > 0
    r_given_x[~x_defined, :] = np.nan
    a_given_y[:, ~y_defined] = np.nan

    p_x = None
    if t.params.m == 2:
        flipped = alpha_x[::-1]  # complement reverses the binary index
        p_x = alpha_x + flipped
    return MarginalViews(
        alpha_x=alpha_x,
        r_y=r_y,
        r_y_given_x=r_given_x,
        r_y_given_x_defined=np.repeat(x_defined[:, None], t.params.n, axis=1),
        alpha_x_given_y=a_given_y,
        alpha_x_given_y_defined=np.repeat(y_defined[None, :], t.params.num_strings, axis=0),
        p_x=p_x,
    )


def pair_weights(t: BiasTensor) -> np.ndarray:
    """Flip-pair weights over the transversal x_0 = 0, in ascending x (m = 2)."""
    views = marginals(t)
    if views.p_x is None:
        raise ValueError("flip-pair weights require m = 2")
    half = t.params.num_strings // 2
    return views.p_x[:half]


def is_factorizable(t: BiasTensor, tol: float = 1e-9):
    """Test alpha_{x y} = alpha_x * r_y; returns (flag, alpha_x, r_y)."""
    views = marginals(t)
    product = np.outer(views.alpha_x, views.r_y)
    ok = bool(np.max(np.abs(t.xy_weights - product)) <= tol)
    if ok:
        return True, views.alpha_x, views.r_y
    return False, None, None


def symmetrized(t: BiasTensor) -> BiasTensor:
    """Replace alpha_x by the flip-symmetric p_x / 2 (m = 2, rac factorizable)."""
    ok, alpha_x, r_y = is_factorizable(t)
    if not ok or t.params.m != 2:
        raise ValueError("symmetrization applies to factorizable m = 2 tensors")
    sym = (alpha_x + alpha_x[::-1]) / 2.0
    return _rac_tensor_from_xy(t.params, np.outer(sym, r_y))


def save_bias_file(t: BiasTensor, path) -> None:
    """Write the bias-file JSON ({"n","m","d","entries"}); zeros are omitted."""
    p = t.params
    entries = {}
    for x in range(p.num_strings):
        for y in range(p.n):
            for b in range(p.m):
                value = t.weights[x, y, b]
                if value != 0.0:
                    entries[f"{p.string_label(x)}:{y}:{b}"] = value
    payload = {"n": p.n, "m": p.m, "d": p.d, "entries": entries}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)


def load_bias_file(path, renormalize: bool = False) -> BiasTensor:
    with open(path) as fh:
        payload = json.load(fh)
    params = ScenarioParams(int(payload["n"]), int(payload["m"]), int(payload["d"]))
    return tensor_from_entries(params, payload["entries"], renormalize=renormalize)
