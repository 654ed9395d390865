"""Confusion matrices and support-weighted precision / recall / F1."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .corpus import LABEL_ORDER, SentimentLabel


class MetricsError(ValueError):
    pass


@dataclass
class EvalReport:
    labels: list[str]
    confusion: np.ndarray  # rows gold, columns predicted
    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray

    @property
    def weighted(self) -> tuple[float, float, float]:
        total = self.support.sum()
        if total == 0:
            return 0.0, 0.0, 0.0
        w = self.support / total
        return float(w @ self.precision), float(w @ self.recall), float(w @ self.f1)

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.confusion) / self.confusion.sum())

    def to_dict(self) -> dict:
        p, r, f = self.weighted
        return {
            "labels": self.labels,
            "confusion": self.confusion.tolist(),
            "per_label": {
                lab: {
                    "precision": float(self.precision[i]),
                    "recall": float(self.recall[i]),
                    "f1": float(self.f1[i]),
                    "support": int(self.support[i]),
                }
                for i, lab in enumerate(self.labels)
            },
            "weighted": {"precision": p, "recall": r, "f1": f},
            "accuracy": self.accuracy,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        width = max(12, max(len(lab) for lab in self.labels) + 2)
        lines = [f"{'':<{width}}{'precision':>10}{'recall':>10}{'f1':>10}{'support':>10}"]
        for i, lab in enumerate(self.labels):
            lines.append(
                f"{lab:<{width}}{self.precision[i]:>10.4f}{self.recall[i]:>10.4f}"
                f"{self.f1[i]:>10.4f}{int(self.support[i]):>10d}"
            )
        p, r, f = self.weighted
        lines.append(f"{'weighted':<{width}}{p:>10.4f}{r:>10.4f}{f:>10.4f}{int(self.support.sum()):>10d}")
        lines.append("")
        lines.append("confusion (rows gold, columns predicted)")
        for i, lab in enumerate(self.labels):
            lines.append(f"{lab:<{width}}" + "".join(f"{int(c):>7d}" for c in self.confusion[i]))
        return "\n".join(lines)


def _label_space(gold, pred) -> list:
    present = set(gold) | set(pred)
    if all(isinstance(x, SentimentLabel) for x in present):
        return [lab for lab in LABEL_ORDER if lab in present]
    canonical = [lab.value for lab in LABEL_ORDER]
    ordered = [lab for lab in canonical if lab in present]
    return ordered + sorted(str(x) for x in present if x not in canonical)


def _safe_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=np.float64)
    np.divide(num, den, out=out, where=den > 0)
    return out


def evaluate(gold, pred) -> EvalReport:
    gold, pred = list(gold), list(pred)
    if len(gold) != len(pred):
        raise MetricsError(f"length mismatch: {len(gold)} gold vs {len(pred)} predicted")
    if not gold:
        raise MetricsError("nothing to evaluate")
    labels = _label_space(gold, pred)
    pos = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    confusion = np.zeros((k, k), dtype=np.int64)
    np.add.at(confusion, ([pos[g] for g in gold], [pos[p] for p in pred]), 1)
    tp = np.diag(confusion).astype(np.float64)
    support = confusion.sum(axis=1)
    precision = _safe_div(tp, confusion.sum(axis=0).astype(np.float64))
    recall = _safe_div(tp, support.astype(np.float64))
    f1 = _safe_div(2 * precision * recall, precision + recall)
    names = [lab.value if isinstance(lab, SentimentLabel) else str(lab) for lab in labels]
    return EvalReport(names, confusion, precision, recall, f1, support)
