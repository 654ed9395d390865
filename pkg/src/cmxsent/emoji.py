"""Emoji extraction and emoji sentiment lexicons.

A base lexicon comes from the published emoji sentiment ranking; emoji it does
not cover get a polarity inferred from how often they occur in positive versus
negative training documents.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import LabeledCorpus, SentimentLabel
from .normalize import is_emoji, normalize_unicode

POLARITIES = ("positive", "negative", "neutral")
DEFAULT_TAU = 0.1
DEFAULT_MIN_SUPPORT = 3


class LexiconError(ValueError):
    pass


def extract_emoji(text: str) -> list[str]:
    return [ch for ch in text if is_emoji(ch)]


def score_to_polarity(score: float, tau: float = DEFAULT_TAU) -> str:
    if score > tau:
        return "positive"
    if score < -tau:
        return "negative"
    return "neutral"


@dataclass
class EmojiEntry:
    base_score: float | None = None
    base_polarity: str | None = None
    inferred_polarity: str | None = None
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def polarity(self) -> str | None:
        # the base lexicon always wins; inference only fills gaps
        return self.base_polarity or self.inferred_polarity


@dataclass
class EmojiLexicon:
    entries: dict[str, EmojiEntry] = field(default_factory=dict)
    tau: float = DEFAULT_TAU
    min_support: int = DEFAULT_MIN_SUPPORT

    def polarity(self, emoji: str) -> str | None:
        entry = self.entries.get(emoji)
        return entry.polarity if entry else None

    def to_dict(self) -> dict:
        return {
            "tau": self.tau,
            "min_support": self.min_support,
            "entries": {
                e: {
                    "base_score": v.base_score,
                    "base_polarity": v.base_polarity,
                    "inferred_polarity": v.inferred_polarity,
                    "counts": dict(sorted(v.counts.items())),
                }
                for e, v in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EmojiLexicon":
        entries = {e: EmojiEntry(**v) for e, v in d["entries"].items()}
        return cls(entries, d["tau"], d["min_support"])


_HEADER_SCORE_NAMES = {"sentiment_score", "score", "sentiment"}


def _published_row_score(row: dict) -> float:
    n = int(row["Occurrences"])
    return (int(row["Positive"]) - int(row["Negative"])) / n


def load_base_lexicon(path: str | Path, tau: float = DEFAULT_TAU) -> EmojiLexicon:
    """Read a two-column ``emoji,sentiment_score`` CSV.

    The full Emoji Sentiment Ranking CSV (with Occurrences/Negative/Positive
    columns) is also accepted; its score is (positive - negative) / occurrences.
    """
    path = Path(path)
    if not path.is_file():
        raise LexiconError(f"no such file: {path}")
    lexicon = EmojiLexicon(tau=tau)
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and "Occurrences" in rows[0]:
        header = rows[0]
        for rowno, row in enumerate(rows[1:], 2):
            try:
                rec = dict(zip(header, row))
                emoji, score = rec["Emoji"], _published_row_score(rec)
            except (KeyError, ValueError, ZeroDivisionError):
                raise LexiconError(f"row {rowno}: cannot parse {row!r}") from None
            _add_base(lexicon, emoji, score, tau)
        return lexicon
    for rowno, row in enumerate(rows, 1):
        if not row:
            continue
        if rowno == 1 and len(row) == 2 and row[1].strip().lower() in _HEADER_SCORE_NAMES:
            continue
        try:
            if len(row) != 2:
                raise ValueError
            emoji, score = row[0].strip(), float(row[1])
            if not emoji or not -1.0 <= score <= 1.0:
                raise ValueError
        except ValueError:
            raise LexiconError(f"row {rowno}: cannot parse {row!r}") from None
        _add_base(lexicon, emoji, score, tau)
    return lexicon


def _add_base(lexicon: EmojiLexicon, emoji: str, score: float, tau: float) -> None:
    emoji = normalize_unicode(emoji)
    lexicon.entries[emoji] = EmojiEntry(base_score=score, base_polarity=score_to_polarity(score, tau))


def infer_lexicon(
    train: LabeledCorpus,
    base: EmojiLexicon | None = None,
    min_support: int = DEFAULT_MIN_SUPPORT,
    tau: float = DEFAULT_TAU,
) -> EmojiLexicon:
    counts: dict[str, Counter] = {}
    for text, label in train.records:
        if label is None:
            raise LexiconError("training corpus must be labeled")
        for e in extract_emoji(normalize_unicode(text)):
            counts.setdefault(e, Counter())[label.value] += 1

    entries = {}
    if base is not None:
        for e, entry in base.entries.items():
            entries[e] = EmojiEntry(entry.base_score, entry.base_polarity)
    for e, c in counts.items():
        entry = entries.setdefault(e, EmojiEntry())
        entry.counts = dict(c)
        n = sum(c.values())
        if n >= min_support:
            p = c[SentimentLabel.POSITIVE.value]
            q = c[SentimentLabel.NEGATIVE.value]
            entry.inferred_polarity = score_to_polarity((p - q) / n, tau)
    return EmojiLexicon(entries, tau, min_support)


def emoji_features(text: str, lexicon: EmojiLexicon) -> list[str]:
    feats = []
    for e in extract_emoji(text):
        feats.append(f"em:{e}")
        pol = lexicon.polarity(e)
        if pol is not None:
            feats.append(f"ems:{pol}")
    return feats
