"""Exhaustive grid search over classifier and feature-union parameters."""

from __future__ import annotations

import itertools
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .corpus import LabeledCorpus
from .metrics import evaluate
from .pipeline import ConfigError, Resources, SentimentPipeline, TrainConfig, fit_classifier, prepare_features


def weighted_f1(gold, pred) -> float:
    return evaluate(gold, pred).weighted[2]


@dataclass
class ParamGrid:
    axes: list[tuple[str, list]]

    def __post_init__(self):
        if not self.axes:
            raise ConfigError("a grid needs at least one axis")
        for path, values in self.axes:
            if not isinstance(values, list) or not values:
                raise ConfigError(f"grid axis {path!r} needs a non-empty list of values")

    @classmethod
    def from_dict(cls, d: dict) -> "ParamGrid":
        return cls([(k, list(v) if isinstance(v, (list, tuple)) else v) for k, v in d.items()])

    def __len__(self):
        return math.prod(len(v) for _, v in self.axes)

    def combinations(self) -> list[dict]:
        """All points, first axis varying slowest."""
        paths = [p for p, _ in self.axes]
        return [dict(zip(paths, combo)) for combo in itertools.product(*(v for _, v in self.axes))]


@dataclass
class GridResult:
    params: dict
    score: float
    failed: bool = False
    error: str | None = None

    def to_dict(self) -> dict:
        score = self.score if math.isfinite(self.score) else None
        return {"params": self.params, "score": score, "failed": self.failed, "error": self.error}


def apply_params(base: TrainConfig, params: dict) -> TrainConfig:
    config = base
    for path, value in params.items():
        config = config.with_param(path, value)
    return config


def stratified_folds(labels: list, k: int, seed: int) -> list[list[int]]:
    by_label: dict = {}
    for i, label in enumerate(labels):
        by_label.setdefault(label, []).append(i)
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    slot = 0
    for label in sorted(by_label, key=str):
        idx = by_label[label]
        rng.shuffle(idx)
        for i in idx:
            folds[slot % k].append(i)
            slot += 1
    return [sorted(f) for f in folds]


# per-process cache: featurisation only depends on the feature section
_FEATURE_CACHE: dict = {}


def _features_for(train: LabeledCorpus, config: TrainConfig, res: Resources, tag: str):
    key = (tag, json.dumps(config.to_dict()["features"], sort_keys=True))
    if key not in _FEATURE_CACHE:
        if len(_FEATURE_CACHE) > 32:
            _FEATURE_CACHE.clear()
        _FEATURE_CACHE[key] = prepare_features(train, config.features, res)
    return _FEATURE_CACHE[key]


def _score_split(train, val, config, res, scorer, tag) -> float:
    fs = _features_for(train, config, res, tag)
    clf = fit_classifier(fs.X, fs.y, config)
    pipe = SentimentPipeline(train.language, config, fs.featurizer, fs.vocab, clf)
    pred, _ = pipe.predict(val.texts)
    return float(scorer(val.labels, pred))


def evaluate_point(args) -> GridResult:
    params, base, train, val, res, scorer, folds, seed = args
    try:
        config = apply_params(base, params)
        if val is not None:
            score = _score_split(train, val, config, res, scorer, "val")
        else:
            scores = []
            for j, held in enumerate(stratified_folds(train.labels, folds, seed)):
                held_set = set(held)
                tr = LabeledCorpus(train.language, [r for i, r in enumerate(train.records) if i not in held_set])
                va = LabeledCorpus(train.language, [train.records[i] for i in held])
                scores.append(_score_split(tr, va, config, res, scorer, f"fold{j}"))
            score = sum(scores) / len(scores)
        return GridResult(params, score)
    except Exception as exc:  # a failing grid point is recorded, not fatal
        return GridResult(params, -math.inf, True, f"{type(exc).__name__}: {exc}")


def best_index(report: list[GridResult]) -> int:
    """Index of the highest score; the earliest combination wins ties."""
    return max(range(len(report)), key=lambda i: (report[i].score, -i))


def grid_search(
    grid: ParamGrid,
    train: LabeledCorpus,
    val: LabeledCorpus | None,
    base_config: TrainConfig,
    scorer=weighted_f1,
    res: Resources | None = None,
    n_jobs: int = 1,
    folds: int = 5,
    seed: int = 0,
) -> tuple[TrainConfig, list[GridResult]]:
    """Score every grid point on ``val`` (or stratified k-fold when ``val`` is None).

    Results come back in combination order whatever ``n_jobs`` is; the best
    point is the first one with the maximal score.
    """
    res = res or Resources.default(train.language)
    if val is None and folds < 2:
        raise ConfigError("k-fold mode needs folds >= 2")
    jobs = [(params, base_config, train, val, res, scorer, folds, seed) for params in grid.combinations()]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            report = list(pool.map(evaluate_point, jobs))
    else:
        report = [evaluate_point(j) for j in jobs]
    _FEATURE_CACHE.clear()
    best_i = best_index(report)
    if report[best_i].failed:
        raise ConfigError("every grid point failed: " + (report[best_i].error or ""))
    return apply_params(base_config, report[best_i].params), report
