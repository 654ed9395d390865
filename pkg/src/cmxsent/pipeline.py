"""End-to-end training configuration and the fitted sentiment pipeline."""

from __future__ import annotations

import copy
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .corpus import LabeledCorpus, SentimentLabel
from .emoji import EmojiLexicon, infer_lexicon
from .features import FeatureConfig, Featurizer, Vocabulary, build_vocab, stack, vectorize
from .langid import CharNgramLangModel, seed_samples, train_langid
from .model import LinearModel, LogRegHyper, SgdHyper, predict, train_logreg, train_sgd
from .normalize import detect_script, normalize_unicode
from .soundex import IndicCharMap, load_char_map
from .translit import TranslitTable, load_table

CLASSIFIERS = ("sgd", "logreg")


class ConfigError(ValueError):
    pass


@dataclass
class TrainConfig:
    classifier: str = "sgd"
    features: FeatureConfig = field(default_factory=FeatureConfig)
    sgd: SgdHyper = field(default_factory=SgdHyper)
    logreg: LogRegHyper = field(default_factory=LogRegHyper)

    def __post_init__(self):
        if self.classifier not in CLASSIFIERS:
            raise ConfigError(f"unknown classifier {self.classifier!r}; expected one of {CLASSIFIERS}")
        self.sgd.validate()
        self.logreg.validate()

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TrainConfig":
        d = dict(d)
        d.pop("grid", None)
        unknown = set(d) - {"classifier", "features", "sgd", "logreg"}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        try:
            return cls(
                classifier=d.get("classifier", "sgd"),
                features=FeatureConfig(**d.get("features", {})),
                sgd=SgdHyper(**d.get("sgd", {})),
                logreg=LogRegHyper(**d.get("logreg", {})),
            )
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def with_param(self, path: str, value) -> "TrainConfig":
        """Copy with one dotted parameter path replaced, e.g. ``features.group_weights.length``."""
        d = copy.deepcopy(self.to_dict())
        node = d
        keys = path.split(".")
        for key in keys[:-1]:
            if not isinstance(node, dict) or key not in node:
                raise ConfigError(f"unknown parameter path {path!r}")
            node = node[key]
        if not isinstance(node, dict) or keys[-1] not in node:
            raise ConfigError(f"unknown parameter path {path!r}")
        node[keys[-1]] = value
        return TrainConfig.from_dict(d)


def load_config(path: str | Path | None) -> tuple[TrainConfig, dict | None]:
    """Read a JSON config file; returns the config and its ``grid`` section if any."""
    if path is None:
        return TrainConfig(), None
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"no such config file: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return TrainConfig.from_dict(raw), raw.get("grid")


@dataclass
class Resources:
    """Lookup tables that are fixed before training."""

    translit: TranslitTable
    char_map: IndicCharMap
    base_lexicon: EmojiLexicon | None = None

    @classmethod
    def default(cls, language: str, translit_path=None, soundex_path=None, base_lexicon=None) -> "Resources":
        return cls(load_table(language, translit_path), load_char_map(soundex_path), base_lexicon)


def langid_samples(train: LabeledCorpus) -> list[tuple[str, str]]:
    """Shipped seed phrases plus Latin-script in-language training comments."""
    samples = list(seed_samples())
    for text, label in train.records:
        if label is SentimentLabel.NOT_TARGET_LANGUAGE:
            continue
        if detect_script(text).dominant == "latin":
            samples.append((normalize_unicode(text), train.language))
    return samples


def build_featurizer(train: LabeledCorpus, config: FeatureConfig, res: Resources) -> Featurizer:
    lexicon = infer_lexicon(train, res.base_lexicon, config.emoji.min_support, config.emoji.tau)
    langid = train_langid(langid_samples(train))
    return Featurizer(train.language, config, lexicon, langid, res.translit, res.char_map)


@dataclass
class SentimentPipeline:
    language: str
    config: TrainConfig
    featurizer: Featurizer
    vocab: Vocabulary
    classifier: LinearModel

    def transform(self, texts: list[str]):
        vecs = [vectorize(self.featurizer(t), self.vocab, self.config.features) for t in texts]
        return stack(vecs, self.vocab.n_columns)

    def predict(self, texts: list[str]) -> tuple[list[SentimentLabel], np.ndarray]:
        if not texts:
            return [], np.zeros((0, len(self.classifier.labels)))
        return predict(self.classifier, self.transform(texts))


@dataclass
class FeatureSet:
    """Featurizer, vocabulary and training matrix for one feature configuration."""

    featurizer: Featurizer
    vocab: Vocabulary
    X: object
    y: list


def prepare_features(train: LabeledCorpus, config: FeatureConfig, res: Resources) -> FeatureSet:
    if not train.is_labeled:
        raise ConfigError("training corpus must be labeled")
    fz = build_featurizer(train, config, res)
    docs = [fz(t) for t in train.texts]
    vocab = build_vocab(docs, config)
    X = stack([vectorize(d, vocab, config) for d in docs], vocab.n_columns)
    return FeatureSet(fz, vocab, X, train.labels)


def fit_classifier(X, y, config: TrainConfig) -> LinearModel:
    if config.classifier == "sgd":
        return train_sgd(X, y, config.sgd)
    return train_logreg(X, y, config.logreg)


def fit(train: LabeledCorpus, config: TrainConfig, res: Resources | None = None) -> SentimentPipeline:
    res = res or Resources.default(train.language)
    fs = prepare_features(train, config.features, res)
    clf = fit_classifier(fs.X, fs.y, config)
    return SentimentPipeline(train.language, config, fs.featurizer, fs.vocab, clf)
