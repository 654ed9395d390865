"""Dravidian CodeMix TSV corpora: labels, loading, writing, splitting."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

LANGUAGES = ("ta", "ml")
_NOT_TARGET = {"ta": "not-tamil", "ml": "not-malayalam"}


class CorpusError(ValueError):
    pass


class SentimentLabel(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED_FEELINGS = "mixed_feelings"
    UNKNOWN_STATE = "unknown_state"
    NOT_TARGET_LANGUAGE = "not_target_language"

    @classmethod
    def parse(cls, text: str, language: str | None = None) -> "SentimentLabel":
        """Case-insensitive; accepts the shared-task spellings such as ``Mixed_feelings``."""
        key = text.strip().lower().replace(" ", "_")
        for label in cls:
            if key == label.value:
                return label
        allowed = [_NOT_TARGET[language]] if language else list(_NOT_TARGET.values())
        if key in allowed or key.replace("_", "-") in allowed:
            return cls.NOT_TARGET_LANGUAGE
        raise CorpusError(f"unknown label {text!r}")

    def serialize(self, language: str) -> str:
        if self is SentimentLabel.NOT_TARGET_LANGUAGE:
            return _NOT_TARGET[language]
        return self.value


# canonical column order for reports
LABEL_ORDER = tuple(SentimentLabel)


@dataclass
class LabeledCorpus:
    language: str
    records: list[tuple[str, SentimentLabel | None]] = field(default_factory=list)

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise CorpusError(f"unknown language {self.language!r}; expected one of {LANGUAGES}")

    def __len__(self):
        return len(self.records)

    @property
    def texts(self) -> list[str]:
        return [t for t, _ in self.records]

    @property
    def labels(self) -> list[SentimentLabel | None]:
        return [y for _, y in self.records]

    @property
    def is_labeled(self) -> bool:
        return all(y is not None for _, y in self.records)


def _is_header(parts: list[str]) -> bool:
    return [p.strip().lower() for p in parts] in (["text", "category"], ["text"])


def load_tsv(path: str | Path, language: str, has_labels: bool = True) -> LabeledCorpus:
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"no such file: {path}")
    ncols = 2 if has_labels else 1
    corpus = LabeledCorpus(language)
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if lineno == 1 and _is_header(parts):
                continue
            if len(parts) != ncols:
                raise CorpusError(f"line {lineno}: expected {ncols} columns, got {len(parts)}")
            text = parts[0].strip()
            if not text:
                raise CorpusError(f"line {lineno}: empty text")
            label = None
            if has_labels:
                try:
                    label = SentimentLabel.parse(parts[1], language)
                except CorpusError as exc:
                    raise CorpusError(f"line {lineno}: {exc}") from None
            corpus.records.append((text, label))
    return corpus


def write_tsv(corpus: LabeledCorpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for text, label in corpus.records:
            if label is None:
                fh.write(f"{text}\n")
            else:
                fh.write(f"{text}\t{label.serialize(corpus.language)}\n")


def split(corpus: LabeledCorpus, fraction: float, seed: int) -> tuple[LabeledCorpus, LabeledCorpus]:
    """Seeded shuffle, then cut after ``round(fraction * N)`` records."""
    if not 0 < fraction < 1:
        raise CorpusError(f"fraction must be in (0, 1), got {fraction}")
    if not corpus.records:
        raise CorpusError("cannot split an empty corpus")
    order = list(range(len(corpus.records)))
    random.Random(seed).shuffle(order)
    cut = round(fraction * len(order))
    first = [corpus.records[i] for i in order[:cut]]
    second = [corpus.records[i] for i in order[cut:]]
    return LabeledCorpus(corpus.language, first), LabeledCorpus(corpus.language, second)
