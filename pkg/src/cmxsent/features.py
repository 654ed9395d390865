"""Weighted feature union over five feature families.

Every feature string carries a namespace prefix naming its family:

    ng:   word n-grams            (group ``ngrams``)
    sx:   phonetic token codes    (group ``soundex``)
    em:   raw emoji, ems: polarity (group ``emoji``)
    lang: predicted language      (group ``lang``)
    len:  length bucket           (group ``length``)
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .emoji import DEFAULT_MIN_SUPPORT, DEFAULT_TAU, EmojiLexicon, emoji_features
from .langid import CharNgramLangModel, predict_language
from .normalize import prepare
from .soundex import PREFIX as SX_PREFIX
from .soundex import IndicCharMap, harmonize_token
from .translit import TranslitTable

GROUPS = ("ngrams", "soundex", "emoji", "lang", "length")
_NAMESPACE_GROUP = {"ng": "ngrams", "sx": "soundex", "em": "emoji", "ems": "emoji", "lang": "lang", "len": "length"}


class FeatureError(ValueError):
    pass


def group_of(feature: str) -> str:
    return _NAMESPACE_GROUP[feature.split(":", 1)[0]]


@dataclass
class EmojiConfig:
    tau: float = DEFAULT_TAU
    min_support: int = DEFAULT_MIN_SUPPORT


@dataclass
class FeatureConfig:
    ngram_max: int = 4
    group_weights: dict[str, float] = field(default_factory=lambda: dict.fromkeys(GROUPS, 1.0))
    use_tfidf: bool = True
    lowercase_latin: bool = True
    min_df: int = 1
    emoji: EmojiConfig = field(default_factory=EmojiConfig)

    def __post_init__(self):
        if isinstance(self.emoji, dict):
            self.emoji = EmojiConfig(**self.emoji)
        self.group_weights = {**dict.fromkeys(GROUPS, 1.0), **self.group_weights}
        self.validate()

    def validate(self):
        if not 1 <= self.ngram_max <= 4:
            raise FeatureError(f"ngram_max must be in [1, 4], got {self.ngram_max}")
        unknown = set(self.group_weights) - set(GROUPS)
        if unknown:
            raise FeatureError(f"unknown feature groups {sorted(unknown)}")
        if any(w < 0 for w in self.group_weights.values()):
            raise FeatureError("group weights must be non-negative")
        if self.min_df < 1:
            raise FeatureError("min_df must be >= 1")


@dataclass
class Featurizer:
    """Everything needed to turn raw text into feature strings."""

    language: str
    config: FeatureConfig
    lexicon: EmojiLexicon
    langid: CharNgramLangModel | None
    translit: TranslitTable
    char_map: IndicCharMap

    def __call__(self, text: str) -> Counter:
        return featurize_doc(text, self)


def _fold(token: str) -> str:
    return token.lower() if token.isascii() else "".join(c.lower() if c.isascii() else c for c in token)


def featurize_doc(text: str, fz: Featurizer) -> Counter:
    cfg = fz.config
    doc = prepare(text)
    feats: Counter = Counter()
    grams = [_fold(t) for t in doc.tokens] if cfg.lowercase_latin else list(doc.tokens)
    for n in range(1, cfg.ngram_max + 1):
        for i in range(len(grams) - n + 1):
            feats["ng:" + " ".join(grams[i:i + n])] += 1
    for tok in doc.tokens:
        code = harmonize_token(tok, fz.language, fz.translit, fz.char_map)
        # tokens without letters are already covered by ng: features
        if code.startswith(SX_PREFIX):
            feats[code] += 1
    feats.update(emoji_features(doc.normalized_text, fz.lexicon))
    feats["lang:" + predict_language(doc.normalized_text, fz.langid).tag] += 1
    feats[f"len:{doc.length_bucket}"] += 1
    return feats


@dataclass
class Vocabulary:
    index: dict[str, int]
    idf: np.ndarray | None = None

    @property
    def n_columns(self) -> int:
        return len(self.index)

    @property
    def features(self) -> list[str]:
        return sorted(self.index, key=self.index.__getitem__)

    def column_groups(self) -> list[str]:
        return [group_of(f) for f in self.features]

    def to_dict(self) -> dict:
        return {"features": self.features, "idf": None if self.idf is None else self.idf.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Vocabulary":
        idf = None if d["idf"] is None else np.asarray(d["idf"], dtype=np.float64)
        return cls({f: i for i, f in enumerate(d["features"])}, idf)


def build_vocab(docs: list[Counter], config: FeatureConfig) -> Vocabulary:
    if not docs:
        raise FeatureError("cannot build a vocabulary from an empty corpus")
    df: Counter = Counter()
    for feats in docs:
        df.update(feats.keys())
    kept = sorted(f for f, c in df.items() if c >= config.min_df)
    index = {f: i for i, f in enumerate(kept)}
    idf = None
    if config.use_tfidf:
        n = len(docs)
        idf = np.array([math.log((1 + n) / (1 + df[f])) + 1.0 for f in kept], dtype=np.float64)
    return Vocabulary(index, idf)


@dataclass(frozen=True)
class FeatureVector:
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.indices) > 1 and not np.all(np.diff(self.indices) > 0):
            raise FeatureError("column ids must be strictly increasing")


def vectorize(feats: Counter, vocab: Vocabulary, config: FeatureConfig) -> FeatureVector:
    cols, vals = [], []
    for f in sorted(feats, key=lambda f: vocab.index.get(f, -1)):
        col = vocab.index.get(f)
        if col is None:
            continue
        v = float(feats[f]) * config.group_weights[group_of(f)]
        if vocab.idf is not None:
            v *= vocab.idf[col]
        if v != 0.0:
            cols.append(col)
            vals.append(v)
    values = np.asarray(vals, dtype=np.float64)
    if config.use_tfidf and len(values):
        values = values / np.sqrt(np.dot(values, values))
    return FeatureVector(np.asarray(cols, dtype=np.int64), values)


def stack(vectors: list[FeatureVector], n_columns: int) -> sp.csr_matrix:
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    for i, v in enumerate(vectors):
        indptr[i + 1] = indptr[i] + len(v.indices)
    if vectors:
        indices = np.concatenate([v.indices for v in vectors])
        data = np.concatenate([v.values for v in vectors])
    else:
        indices = np.zeros(0, dtype=np.int64)
        data = np.zeros(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), n_columns))
