"""Post-hoc analysis of converged realizations and report rendering.

Operator ranks count eigenvalues above 1e-7; an operator is projective when
||M^2 - M||_F < 1e-7.  Mutual unbiasedness is decided pairwise, only when
both measurements consist of rank-one projectors, through the defect

    max_{a,b} { ||m P^a Q^b P^a - P^a||,  ||m Q^b P^a Q^b - Q^b|| }

compared against 5e-6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RANK_TOL = 1e-7
PROJECTIVE_TOL = 1e-7
MUB_BOUND = 5e-6

MUB = "MUB"
NOT_MUB = "Not MUB"
NOT_APPLICABLE = "NotApplicable"


@dataclass
class MeasurementAnalysis:
    ranks: np.ndarray
    projectiveness_defect: np.ndarray
    projective: np.ndarray
    mub_verdicts: dict[tuple[int, int], tuple[str, float | None]]

    @property
    def all_projective(self) -> bool:
        return bool(self.projective.all())

    @property
    def max_defect(self) -> float:
        return float(self.projectiveness_defect.max())


def analyze(
    measurements: np.ndarray,
    rank_tol: float = RANK_TOL,
    projective_tol: float = PROJECTIVE_TOL,
    mub_bound: float = MUB_BOUND,
) -> MeasurementAnalysis:
    """Ranks, projectiveness defects and pairwise MUB verdicts."""
    measurements = np.asarray(measurements)
    n, m = measurements.shape[:2]
    ranks = np.empty((n, m), dtype=int)
    defects = np.empty((n, m))
    for y in range(n):
        for b in range(m):
            op = measurements[y, b]
            ranks[y, b] = int(np.sum(np.linalg.eigvalsh(op) > rank_tol))
            defects[y, b] = np.linalg.norm(op @ op - op)
    projective = defects < projective_tol

    verdicts: dict[tuple[int, int], tuple[str, float | None]] = {}
    rank_one_projective = [
        bool(projective[y].all() and (ranks[y] == 1).all()) for y in range(n)
    ]
    for i in range(n):
        for j in range(i + 1, n):
            if not (rank_one_projective[i] and rank_one_projective[j]):
                verdicts[(i, j)] = (NOT_APPLICABLE, None)
                continue
            defect = 0.0
            for a in range(m):
                for b in range(m):
                    p_a, q_b = measurements[i, a], measurements[j, b]
                    defect = max(
                        defect,
                        float(np.linalg.norm(m * (p_a @ q_b @ p_a) - p_a)),
                        float(np.linalg.norm(m * (q_b @ p_a @ q_b) - q_b)),
                    )
            verdicts[(i, j)] = (MUB if defect < mub_bound else NOT_MUB, defect)
    return MeasurementAnalysis(ranks, defects, projective, verdicts)


_RULE = "=" * 58
_NAME = "rac-forge v0.1.0"


def _header() -> list[str]:
    return [_RULE, _NAME.center(58), _RULE, ""]


def render_search_report(params, result) -> str:
    """Text block for a classical search, mirroring the package report style."""
    lines = _header()
    lines += ["----------------- Summary of computation -----------------", ""]
    lines.append(f"Total time of computation: {result.elapsed:.6g} s")
    lines.append(f"Total number of encoding/decoding functions: {result.functions_scanned}")
    per_fn = result.elapsed / max(result.functions_scanned, 1)
    lines.append(f"Average time per function: {per_fn:.3g} s")
    lines += ["", "----------- Analysis of the optimal realization ----------", ""]
    lines.append(f"Computation of the classical value for the {params.notation()} RAC:")
    lines.append(f"{result.value:.12g}")
    lines.append(f"Number of functions achieving the computed value: {result.optimum_count}")
    lines += ["", "First functions found achieving the computed value"]
    lines.append("Encoding: ")
    lines.append(f"E: {list(result.witness.encoding)}")
    lines.append("Decoding: ")
    for y, row in enumerate(result.witness.decodings):
        lines.append(f"D_{y}: {list(row)}")
    lines += ["", "------------------- End of computation -------------------"]
    return "\n".join(lines)


def render_seesaw_report(params, outcome, analysis: MeasurementAnalysis) -> str:
    """Text block for a see-saw run plus its measurement analysis."""
    lines = _header()
    lines += ["----------------- Summary of computation -----------------", ""]
    lines.append(f"Number of random seeds: {len(outcome.per_seed)}")
    avg_time = float(np.mean(outcome.elapsed_per_seed))
    lines.append(f"Average time for each seed: {avg_time:.5g} s")
    lines.append(f"Average number of iterations: {outcome.average_iterations:.3g}")
    lines.append(f"Seeds 1e-13 close to the best value: {outcome.seeds_close_to_best}")
    if not outcome.all_converged:
        lines.append("Warning: maximum number of iterations reached for some seed")
    lines += [
        "",
        f"----- Analysis of the optimal realization for seed #{outcome.best_seed + 1} ----",
        "",
    ]
    kind = "classical" if outcome.diagonal else "quantum"
    lines.append(f"Estimation of the {kind} value for the {params.notation()} RAC:")
    lines.append(f"{outcome.best_value:.12f}")
    lines += ["", "Measurement operator ranks"]
    n, m = analysis.ranks.shape
    for y in range(n):
        lines.append(f"M[{y}] ranks:  " + "  ".join(str(r) for r in analysis.ranks[y]))
    lines += ["", "Measurement operator projectiveness"]
    for y in range(n):
        for b in range(m):
            tag = "Projective" if analysis.projective[y, b] else "Not projective"
            lines.append(f"M[{y}, {b}]:  {tag}\t\t{analysis.projectiveness_defect[y, b]:.3g}")
    lines += ["", "Mutual unbiasedness of measurements"]
    for (i, j), (verdict, defect) in sorted(analysis.mub_verdicts.items()):
        shown = "-" if defect is None else f"{defect:.3g}"
        lines.append(f"M[{i}] and M[{j}]:  {verdict}\t\t{shown}")
    lines += ["", "------------------- End of computation -------------------"]
    return "\n".join(lines)


def render_report(kind: str, payload: dict, verbose: bool = True) -> tuple[str, dict]:
    """Dispatcher returning (text, structured record); text is empty when
    ``verbose`` is off."""
    if kind == "search":
        record = search_record(payload["params"], payload["result"])
        text = render_search_report(payload["params"], payload["result"]) if verbose else ""
    elif kind == "seesaw":
        record = seesaw_record(payload["params"], payload["outcome"], payload["analysis"])
        text = (
            render_seesaw_report(payload["params"], payload["outcome"], payload["analysis"])
            if verbose
            else ""
        )
    else:
        raise ValueError(f"unknown report kind {kind!r}")
    return text, record


def search_record(params, result) -> dict:
    return {
        "schema": "rac-forge/1",
        "kind": "search",
        "scenario": {"n": params.n, "m": params.m, "d": params.d},
        "value": result.value,
        "optimum_count": result.optimum_count,
        "method": result.method,
        "functions_scanned": result.functions_scanned,
        "elapsed_seconds": result.elapsed,
        "witness": {
            "encoding": list(result.witness.encoding),
            "decodings": [list(row) for row in result.witness.decodings],
        },
    }


def _complex_to_lists(a: np.ndarray) -> dict:
    return {"re": np.real(a).tolist(), "im": np.imag(a).tolist()}


def seesaw_record(params, outcome, analysis: MeasurementAnalysis) -> dict:
    best = outcome.best_realization
    return {
        "schema": "rac-forge/1",
        "kind": "seesaw",
        "scenario": {"n": params.n, "m": params.m, "d": params.d},
        "diagonal": outcome.diagonal,
        "value": outcome.best_value,
        "best_seed": outcome.best_seed,
        "seeds": len(outcome.per_seed),
        "seeds_close_to_best": outcome.seeds_close_to_best,
        "average_iterations": outcome.average_iterations,
        "elapsed_seconds": outcome.elapsed_total,
        "per_seed": [
            {
                "value": rec.value,
                "iterations": rec.iterations,
                "converged_value": rec.converged_value,
                "converged_meas": rec.converged_meas,
                "discrimination_ok": rec.discrimination_ok,
                "min_certificate_gap": rec.min_certificate_gap,
            }
            for rec in outcome.per_seed
        ],
        "ranks": analysis.ranks.tolist(),
        "projective": analysis.projective.tolist(),
        "projectiveness_defect": analysis.projectiveness_defect.tolist(),
        "mub": [
            {"pair": [i, j], "verdict": verdict, "defect": defect}
            for (i, j), (verdict, defect) in sorted(analysis.mub_verdicts.items())
        ],
        "realization": {
            "preparations": _complex_to_lists(best.preparations),
            "measurements": _complex_to_lists(best.measurements),
        },
    }


def realization_from_record(record: dict):
    """Rebuild a QuantumRealization from a see-saw JSON record."""
    from .seesaw import QuantumRealization

    payload = record["realization"]
    prep = np.array(payload["preparations"]["re"]) + 1j * np.array(
        payload["preparations"]["im"]
    )
    meas = np.array(payload["measurements"]["re"]) + 1j * np.array(
        payload["measurements"]["im"]
    )
    return QuantumRealization(prep, meas)
