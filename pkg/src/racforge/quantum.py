"""Dense Hermitian linear algebra and the minimum-error discrimination solver.

Measurements are numpy arrays of shape (m, d, d): one PSD operator per
outcome, summing to the identity.  The measurement half-step of the see-saw
maximizes sum_b tr(M_b rho_b) for fixed subnormalized states rho_b.  For two
outcomes the optimum is the eigenspace projector of rho_0 - rho_1 (closed
form); for three or more we run the fixed-point iteration

    M_b  <-  L^{-1/2} rho_b M_b rho_b L^{-1/2},   L = sum_b rho_b M_b rho_b,

whose fixed points satisfy the optimality condition of the underlying
semidefinite program.  Convergence is verified a posteriori through the
certificate operator Y = (1/2) sum_b (rho_b M_b + M_b rho_b): the solution
is optimal iff Y - rho_b is PSD for every b, so the smallest eigenvalue over
b ("certificate gap") measures distance from optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NoConvergence, WrongOutcomeCount

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-9
CERT_TOL = 1e-6
_EIG_FLOOR = 1e-12


def assert_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> None:
    defect = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if defect > tol:
        raise ValueError(f"operator is not Hermitian (defect {defect:.3e})")


def hermitize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.conj().T)


def top_eigenvector(a: np.ndarray) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix."""
    vals, vecs = np.linalg.eigh(a)
    return float(vals[-1]), vecs[:, -1]


def check_povm(m_ops: np.ndarray, atol: float = PSD_TOL) -> None:
    """Validate PSD outcomes summing to the identity."""
    dim = m_ops.shape[-1]
    for op in m_ops:
        assert_hermitian(op, tol=1e-9)
        low = float(np.linalg.eigvalsh(hermitize(op))[0])
        if low < -atol:
            raise ValueError(f"POVM element has eigenvalue {low:.3e} < -{atol}")
    defect = np.linalg.norm(m_ops.sum(axis=0) - np.eye(dim))
    if defect > atol:
        raise ValueError(f"POVM completeness defect {defect:.3e} > {atol}")


@dataclass
class DiscriminationSolution:
    povm: np.ndarray
    value: float
    certificate_gap: float
    hermiticity_defect: float
    iterations: int
    converged: bool


def _solution_value(states: np.ndarray, povm: np.ndarray) -> float:
    return float(np.real(np.einsum("bij,bji->", povm, states)))


def certificate_gap(states: np.ndarray, povm: np.ndarray) -> tuple[float, float]:
    """(min over b of lambda_min(Y - rho_b), Hermiticity defect of Y)."""
    y = 0.5 * np.einsum("bij,bjk->ik", states, povm)
    y = y + 0.5 * np.einsum("bij,bjk->ik", povm, states)
    defect = float(np.max(np.abs(y - y.conj().T)))
    y = hermitize(y)
    gap = min(float(np.linalg.eigvalsh(y - hermitize(rho))[0]) for rho in states)
    return gap, defect


def helstrom_two_outcome(states: np.ndarray) -> DiscriminationSolution:
    """Optimal two-outcome POVM: project onto the sign eigenspaces of
    rho_0 - rho_1, with zero eigenvalues assigned to outcome 0."""
    if states.shape[0] != 2:
        raise WrongOutcomeCount(f"expected 2 states, got {states.shape[0]}")
    delta = hermitize(states[0] - states[1])
    vals, vecs = np.linalg.eigh(delta)
    plus = vecs[:, vals >= 0.0]
    x_plus = plus @ plus.conj().T
    dim = states.shape[-1]
    povm = np.stack([x_plus, np.eye(dim) - x_plus])
    value = _solution_value(states, povm)
    gap, herm = certificate_gap(states, povm)
    return DiscriminationSolution(povm, value, gap, herm, iterations=0, converged=True)


def _clip_to_povm(m_ops: np.ndarray) -> np.ndarray:
    """Re-Hermitize, clip negative parts below -1e-12, and dump the
    completeness defect into the last outcome."""
    dim = m_ops.shape[-1]
    out = np.empty_like(m_ops)
    for b, op in enumerate(m_ops):
        op = hermitize(op)
        vals, vecs = np.linalg.eigh(op)
        if vals[0] < -_EIG_FLOOR:
            vals = np.clip(vals, 0.0, None)
            op = (vecs * vals) @ vecs.conj().T
        out[b] = op
    out[-1] += np.eye(dim) - out.sum(axis=0)
    out[-1] = hermitize(out[-1])
    return out


def _inv_sqrt(a: np.ndarray) -> np.ndarray:
    """Pseudo-inverse square root; eigenvalues below 1e-12 are truncated."""
    vals, vecs = np.linalg.eigh(hermitize(a))
    inv = np.where(vals > _EIG_FLOOR, 1.0 / np.sqrt(np.clip(vals, _EIG_FLOOR, None)), 0.0)
    return (vecs * inv) @ vecs.conj().T


def _fixed_point_iteration(
    states: np.ndarray,
    initial: np.ndarray,
    tol: float,
    max_iter: int,
    debug_monotone: bool = False,
) -> tuple[np.ndarray, int]:
    povm = initial.copy()
    value = _solution_value(states, povm)
    for it in range(1, max_iter + 1):
        lam = np.einsum("bij,bjk,bkl->il", states, povm, states)
        root = _inv_sqrt(lam)
        new = np.einsum("ij,bjk,bkl,blm,mn->bin", root, states, povm, states, root)
        # Outside the support of L the completeness relation must be patched.
        new = _clip_to_povm(new)
        new_value = _solution_value(states, new)
        if debug_monotone:
            assert new_value >= value - 1e-12, (new_value, value)
        if new_value < value:
            return povm, it  # keep the better iterate; treat as stalled
        gain = new_value - value
        povm, value = new, new_value
        if gain < tol:
            return povm, it
    return povm, max_iter


def discriminate(
    states: np.ndarray,
    tol: float = 1e-13,
    max_iter: int = 2000,
    initial: Optional[np.ndarray] = None,
    restarts: int = 5,
    rng: Optional[np.random.Generator] = None,
    debug_monotone: bool = False,
) -> DiscriminationSolution:
    """Minimum-error solution for two or more subnormalized states.

    Two states use the closed form; more run the fixed-point iteration from
    the uniform POVM (or ``initial`` when given, e.g. to warm-start inside
    the see-saw).  If the certificate gap stays below -1e-6 the iteration is
    restarted from perturbed seeds before the solution is flagged
    unconverged; no exception is raised.
    """
    states = np.asarray(states, dtype=np.complex128)
    k = states.shape[0]
    if k < 2:
        raise WrongOutcomeCount("discrimination needs at least 2 states")
    if k == 2:
        return helstrom_two_outcome(states)

    dim = states.shape[-1]
    seed = np.broadcast_to(np.eye(dim) / k, states.shape).astype(np.complex128)
    if initial is not None:
        seed = np.asarray(initial, dtype=np.complex128)
    best = None
    total_it = 0
    for attempt in range(restarts + 1):
        povm, iters = _fixed_point_iteration(
            states, seed, tol, max_iter, debug_monotone=debug_monotone
        )
        total_it += iters
        value = _solution_value(states, povm)
        gap, herm = certificate_gap(states, povm)
        candidate = DiscriminationSolution(
            povm, value, gap, herm, total_it, converged=gap >= -CERT_TOL
        )
        if best is None or candidate.value > best.value:
            best = candidate
        if candidate.converged:
            return candidate
        if rng is None:
            rng = np.random.default_rng(0xD15C + attempt)
        seed = _perturbed_povm(dim, k, rng)
    return best


def _perturbed_povm(dim: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Ginibre-normalized random POVM: Wishart blocks sandwiched by the
    inverse square root of their sum."""
    g = rng.standard_normal((k, dim, dim)) + 1j * rng.standard_normal((k, dim, dim))
    w = np.einsum("bij,bkj->bik", g, g.conj())
    root = _inv_sqrt(w.sum(axis=0))
    return np.einsum("ij,bjk,kl->bil", root, w, root)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix, with the
    phases of the R diagonal fixed."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_realization(
    n: int,
    m: int,
    d: int,
    rng_seed,
    diagonal: bool = False,
    projective_seed: Optional[bool] = None,
) -> list[np.ndarray]:
    """n random m-outcome POVMs on dimension d.

    Deterministic in ``rng_seed`` (an int or a Generator).  ``diagonal``
    draws random diagonal POVMs; ``projective_seed`` (default: m <= d)
    builds projective POVMs from the column groups of a Haar unitary, with
    deterministic ranks as equal as possible; otherwise Ginibre-normalized
    POVMs are drawn.
    """
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    if projective_seed is None:
        projective_seed = m <= d
    measurements = []
    for _ in range(n):
        if diagonal:
            raw = rng.uniform(0.0, 1.0, size=(m, d))
            raw /= raw.sum(axis=0, keepdims=True)
            ops = np.stack([np.diag(raw[b]).astype(np.complex128) for b in range(m)])
        elif projective_seed and m <= d:
            u = haar_unitary(d, rng)
            sizes = [d // m + (1 if i < d % m else 0) for i in range(m)]
            ops = np.empty((m, d, d), dtype=np.complex128)
            start = 0
            for b, size in enumerate(sizes):
                cols = u[:, start : start + size]
                ops[b] = cols @ cols.conj().T
                start += size
        else:
            ops = _perturbed_povm(d, m, rng)
        measurements.append(ops)
    return measurements
