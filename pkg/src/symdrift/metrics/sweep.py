"""Accuracy/dispersion curves over diversification intensity."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SweepPoint:
    level: float  # requested level (fraction or absolute count)
    k_mean: float  # realized mean sentences rewritten per problem
    accuracy: float
    sds: float


def intensity_sweep(dataset, translator, translator_cfg, solver: str,
                    levels: list[int | float], seed: int = 0,
                    resources=None) -> list[SweepPoint]:
    """Evaluate at each intensity level (ints are absolute sentence counts,
    floats are fractions of each problem's sentence count). Levels must be
    sorted ascending; the same seed drives every level's rewrite pass."""
    from ..diversify.pipeline import DiversifyConfig, diversify_problem
    from ..harness.evaluate import run_evaluation

    if levels != sorted(levels):
        raise ValueError("levels must be sorted ascending")
    points = []
    for level in levels:
        diversified = []
        for p in dataset:
            n = len(p.sentences)
            k = min(int(level), n) if isinstance(level, int) else round(level * n)
            diversified.append(diversify_problem(
                p, DiversifyConfig(intensity=k, seed=seed, resources=resources)
            ))
        report = run_evaluation(diversified, translator, translator_cfg, solver,
                                resources=resources)
        points.append(SweepPoint(
            level=float(level),
            k_mean=sum(d.intensity for d in diversified) / len(diversified),
            accuracy=report.accuracy,
            sds=report.sds.value if report.sds else 0.0,
        ))
    return points


def sweep_to_csv(points: list[SweepPoint]) -> str:
    lines = ["level,k_mean,accuracy,sds"]
    for pt in points:
        lines.append(f"{pt.level},{pt.k_mean},{pt.accuracy},{pt.sds}")
    return "\n".join(lines) + "\n"
