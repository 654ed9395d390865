"""Local comment-level language identification.

Native-script text is decided by a script vote. Latin-script text is scored by
add-one smoothed character trigram models for romanised Tamil, romanised
Malayalam and English.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .normalize import MALAYALAM_BLOCK, TAMIL_BLOCK, in_block
from .resources import parse_tsv_table, read_resource

TAGS = ("ta", "ml", "en", "other")
SCRIPT_VOTE_SHARE = 0.30
MIN_GAP = 0.05
ORDER = 3


class LangIdError(ValueError):
    pass


@dataclass(frozen=True)
class LanguageTag:
    tag: str
    confidence: float


@dataclass
class CharNgramLangModel:
    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    @property
    def tags(self) -> list[str]:
        return sorted(self.counts)

    def __post_init__(self):
        self._refresh()

    def _refresh(self):
        vocab = set()
        for c in self.counts.values():
            vocab.update(c)
        self._vocab_size = len(vocab) + 1  # one slot for unseen trigrams
        self._totals = {t: sum(c.values()) for t, c in self.counts.items()}

    def log_likelihood(self, grams: list[str], tag: str) -> float:
        c = self.counts[tag]
        denom = self._totals[tag] + self._vocab_size
        return sum(math.log((c.get(g, 0) + 1) / denom) for g in grams)

    def to_dict(self) -> dict:
        return {t: dict(sorted(c.items())) for t, c in sorted(self.counts.items())}

    @classmethod
    def from_dict(cls, d: dict) -> "CharNgramLangModel":
        return cls({t: dict(c) for t, c in d.items()})


def char_ngrams(text: str, n: int = ORDER) -> list[str]:
    grams = []
    for word in text.lower().split():
        word = "".join(c for c in word if c.isascii() and c.isalpha())
        if not word:
            continue
        padded = f" {word} "
        grams.extend(padded[i:i + n] for i in range(len(padded) - n + 1))
    return grams


def train_langid(samples: list[tuple[str, str]]) -> CharNgramLangModel:
    counts: dict[str, Counter] = {}
    for text, tag in samples:
        if tag not in TAGS:
            raise LangIdError(f"unknown tag {tag!r}")
        counts.setdefault(tag, Counter()).update(char_ngrams(text))
    if len(counts) < 2:
        raise LangIdError("need samples for at least 2 distinct tags")
    return CharNgramLangModel({t: dict(c) for t, c in counts.items()})


def seed_samples() -> list[tuple[str, str]]:
    """Shipped romanised Tamil/Malayalam and English training phrases."""
    rows, _ = parse_tsv_table(read_resource("langid_seed.tsv"))
    return [(text, tag) for text, tag in rows]


def _script_counts(text: str) -> tuple[int, int, int, int]:
    ta = ml = lat = oth = 0
    for ch in text:
        if in_block(ch, TAMIL_BLOCK):
            ta += 1
        elif in_block(ch, MALAYALAM_BLOCK):
            ml += 1
        elif ch.isascii() and ch.isalpha():
            lat += 1
        elif ch.isalpha():
            oth += 1
    return ta, ml, lat, oth


def predict_language(text: str, model: CharNgramLangModel | None) -> LanguageTag:
    ta, ml, lat, oth = _script_counts(text)
    letters = ta + ml + lat + oth
    if letters == 0:
        return LanguageTag("other", 0.0)
    # stage 1: script vote takes precedence
    if max(ta, ml) / letters >= SCRIPT_VOTE_SHARE:
        if ta >= ml:
            return LanguageTag("ta", ta / letters)
        return LanguageTag("ml", ml / letters)
    if lat / letters < 0.5 or model is None:
        return LanguageTag("other", oth / letters if lat / letters < 0.5 else 0.0)
    grams = char_ngrams(text)
    tags = [t for t in model.tags if t != "other"]
    if not grams or not tags:
        return LanguageTag("other", 0.0)
    ll = [model.log_likelihood(grams, t) for t in tags]
    top = max(ll)
    weights = [math.exp(v - top) for v in ll]
    z = sum(weights)
    post = [w / z for w in weights]
    ranked = sorted(range(len(tags)), key=lambda i: (-post[i], i))
    best = ranked[0]
    gap = post[best] - post[ranked[1]] if len(ranked) > 1 else 1.0
    if gap < MIN_GAP:
        return LanguageTag("other", post[best])
    return LanguageTag(tags[best], post[best])
