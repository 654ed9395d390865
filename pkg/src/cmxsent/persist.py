"""Self-contained JSON model files.

Floats are written with ``repr`` precision, which round-trips IEEE doubles
exactly, so a loaded model predicts bit-identically to the one saved. The
lookup tables used at training time are embedded too.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .corpus import SentimentLabel
from .emoji import EmojiLexicon
from .features import Featurizer, Vocabulary
from .langid import CharNgramLangModel
from .model import LinearModel
from .pipeline import SentimentPipeline, TrainConfig
from .soundex import IndicCharMap
from .translit import TranslitTable

MAGIC = "CMXSENT1"
FORMAT_VERSION = 1


class ModelFileError(ValueError):
    pass


def pipeline_to_dict(p: SentimentPipeline) -> dict:
    clf = p.classifier
    fz = p.featurizer
    return {
        "magic": MAGIC,
        "format_version": FORMAT_VERSION,
        "language": p.language,
        "config": p.config.to_dict(),
        "classifier": {
            "kind": clf.kind,
            "labels": [lab.value for lab in clf.labels],
            "n_columns": clf.n_columns,
            "W": clf.W.ravel().tolist(),
            "b": clf.b.tolist(),
            "converged": clf.converged,
            "info": clf.info,
        },
        "vocab": p.vocab.to_dict(),
        "lexicon": fz.lexicon.to_dict(),
        "langid": fz.langid.to_dict() if fz.langid is not None else None,
        "translit": {"script": fz.translit.script, "version": fz.translit.version, "rules": fz.translit.to_rows()},
        "soundex": {"version": fz.char_map.version, "rows": fz.char_map.to_rows()},
    }


def dumps(p: SentimentPipeline) -> str:
    return json.dumps(pipeline_to_dict(p), ensure_ascii=False, sort_keys=True, allow_nan=False)


def save_model(p: SentimentPipeline, path: str | Path) -> None:
    Path(path).write_text(dumps(p) + "\n", encoding="utf-8")


def pipeline_from_dict(d: dict) -> SentimentPipeline:
    if not isinstance(d, dict) or d.get("magic") != MAGIC:
        raise ModelFileError("not a model file (bad magic)")
    if d.get("format_version") != FORMAT_VERSION:
        raise ModelFileError(f"model format version {d.get('format_version')} != supported {FORMAT_VERSION}")
    try:
        config = TrainConfig.from_dict(d["config"])
        c = d["classifier"]
        labels = [SentimentLabel(v) for v in c["labels"]]
        W = np.asarray(c["W"], dtype=np.float64).reshape(len(labels), c["n_columns"])
        clf = LinearModel(c["kind"], labels, W, np.asarray(c["b"], dtype=np.float64), c["converged"], c["info"])
        vocab = Vocabulary.from_dict(d["vocab"])
        if vocab.n_columns != clf.n_columns:
            raise ModelFileError("vocabulary size does not match the weight matrix")
        tr = d["translit"]
        translit = TranslitTable(tr["script"], tuple(map(tuple, tr["rules"])), tr["version"])
        char_map = IndicCharMap.from_rows(d["soundex"]["rows"], d["soundex"]["version"])
        langid = CharNgramLangModel.from_dict(d["langid"]) if d["langid"] is not None else None
        fz = Featurizer(d["language"], config.features, EmojiLexicon.from_dict(d["lexicon"]), langid, translit, char_map)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelFileError):
            raise
        raise ModelFileError(f"corrupt model file: {exc}") from None
    return SentimentPipeline(d["language"], config, fz, vocab, clf)


def load_model(path: str | Path) -> SentimentPipeline:
    path = Path(path)
    if not path.is_file():
        raise ModelFileError(f"no such model file: {path}")
    try:
        d = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: not JSON ({exc})") from None
    return pipeline_from_dict(d)
