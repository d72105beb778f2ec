"""Screening metrics: efficiency / extreme / middle / toxic accuracy and MAE.

Conventions for the awkward corner: a truly non-toxic pair whose
prediction came back toxic (so no score exists) counts as wrong for the
accuracy metrics and is excluded from MAE, with the excluded count
reported. Empty subsets yield an undefined metric (None), never 0 or 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

EXTREME_SCORES = {1, 2, 9, 10}


@dataclass
class EvalPair:
    id: str
    true_tox: bool
    pred_tox: bool
    true_eff: Optional[int] = None
    pred_eff: Optional[int] = None

    def __post_init__(self):
        if not self.true_tox and self.true_eff is None:
            raise ValueError(f"non-toxic pair {self.id!r} must carry a true efficiency")


@dataclass
class MetricsReport:
    efficiency_accuracy: Optional[float]
    extreme_accuracy: Optional[float]
    middle_accuracy: Optional[float]
    toxic_accuracy: Optional[float]
    mae: Optional[float]
    sizes: dict[str, int]

    def summary_row(self, sep: str = "\t") -> str:
        def fmt(v):
            return "undefined" if v is None else f"{v:.4f}"
        return sep.join(
            [
                fmt(self.efficiency_accuracy),
                fmt(self.extreme_accuracy),
                fmt(self.middle_accuracy),
                fmt(self.mae),
                fmt(self.toxic_accuracy),
            ]
        )


def compute_metrics(pairs: list[EvalPair]) -> MetricsReport:
    if not pairs:
        raise ValueError("empty evaluation set")

    tox_correct = sum(1 for p in pairs if p.pred_tox == p.true_tox)
    clean = [p for p in pairs if not p.true_tox]
    scored = [p for p in clean if p.pred_eff is not None]
    refused = len(clean) - len(scored)

    def subset_acc(subset: list[EvalPair], matcher) -> Optional[float]:
        if not subset:
            return None
        hits = sum(1 for p in subset if matcher(p))
        return hits / len(subset)

    # Refused pairs count as wrong for accuracy metrics.
    eff_acc = subset_acc(clean, lambda p: p.pred_eff == p.true_eff)
    extreme = [p for p in clean if p.true_eff in EXTREME_SCORES]
    middle = [p for p in clean if p.true_eff not in EXTREME_SCORES]
    extreme_acc = subset_acc(extreme, lambda p: p.pred_eff == p.true_eff)
    middle_acc = subset_acc(middle, lambda p: p.pred_eff == p.true_eff)
    mae = (
        sum(abs(p.pred_eff - p.true_eff) for p in scored) / len(scored)
        if scored
        else None
    )
    return MetricsReport(
        efficiency_accuracy=eff_acc,
        extreme_accuracy=extreme_acc,
        middle_accuracy=middle_acc,
        toxic_accuracy=tox_correct / len(pairs),
        mae=mae,
        sizes={
            "all": len(pairs),
            "non_toxic": len(clean),
            "extreme": len(extreme),
            "middle": len(middle),
            "mae": len(scored),
            "refused": refused,
        },
    )
