"""``cmxsent`` command line: train, tune, predict, evaluate.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .corpus import CorpusError, load_tsv
from .emoji import LexiconError, load_base_lexicon
from .features import FeatureError
from .langid import LangIdError
from .metrics import evaluate
from .model import ModelError
from .persist import ModelFileError, load_model, save_model
from .pipeline import ConfigError, Resources, fit, load_config
from .soundex import SoundexError
from .translit import TranslitError
from .tune import ParamGrid, best_index, grid_search

log = logging.getLogger("cmxsent")

EXIT_USAGE = 1
EXIT_DATA = 2
DATA_ERRORS = (
    CorpusError, LexiconError, ModelFileError, ConfigError, FeatureError, ModelError,
    LangIdError, SoundexError, TranslitError, OSError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resources(args) -> Resources:
    base = load_base_lexicon(args.emoji_lexicon) if args.emoji_lexicon else None
    for flag in ("translit_table", "soundex_map"):
        path = getattr(args, flag)
        if path and not Path(path).is_file():
            raise CorpusError(f"no such file: {path}")
    return Resources.default(args.lang, args.translit_table, args.soundex_map, base)


def _apply_cli_overrides(config, args):
    if args.classifier:
        config = config.with_param("classifier", args.classifier)
    if args.seed is not None:
        config = config.with_param("sgd.shuffle_seed", args.seed)
    return config


def _print_weighted(report):
    p, r, f = report.weighted
    print(f"weighted precision={p:.4f} recall={r:.4f} f1={f:.4f}")


def _read_texts(path: str) -> list[str]:
    """First TSV column of every non-empty line, skipping a ``text`` header."""
    p = Path(path)
    if not p.is_file():
        raise CorpusError(f"no such file: {p}")
    texts = []
    with open(p, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            first = line.split("\t")[0].strip()
            if lineno == 1 and first.lower() == "text":
                continue
            texts.append(first)
    return texts


def cmd_train(args) -> int:
    config, _ = load_config(args.config)
    config = _apply_cli_overrides(config, args)
    train = load_tsv(args.train, args.lang)
    val = load_tsv(args.val, args.lang) if args.val else None
    pipe = fit(train, config, _resources(args))
    save_model(pipe, args.model)
    log.info("wrote %s", args.model)
    if val is not None:
        pred, _ = pipe.predict(val.texts)
        _print_weighted(evaluate(val.labels, pred))
    return 0


def cmd_tune(args) -> int:
    config, grid = load_config(args.config)
    config = _apply_cli_overrides(config, args)
    if not grid:
        raise ConfigError(f"{args.config}: no 'grid' section")
    grid = ParamGrid.from_dict(grid)
    train = load_tsv(args.train, args.lang)
    val = load_tsv(args.val, args.lang) if args.val else None
    res = _resources(args)
    best, report = grid_search(grid, train, val, config, res=res, n_jobs=args.jobs, folds=args.folds,
                               seed=args.seed or 0)
    pipe = fit(train, best, res)
    save_model(pipe, args.model)
    report_path = Path(str(args.model) + ".grid.json")
    best_i = best_index(report)
    report_path.write_text(
        json.dumps({"best_index": best_i, "best_config": best.to_dict(), "results": [r.to_dict() for r in report]},
                   indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    for r in report:
        flag = " FAILED " + r.error if r.failed else ""
        print(f"{r.score:.4f}  {json.dumps(r.params)}{flag}")
    print(f"best #{best_i}: {report[best_i].score:.4f} {json.dumps(report[best_i].params)}")
    if val is not None:
        pred, _ = pipe.predict(val.texts)
        _print_weighted(evaluate(val.labels, pred))
    return 0


def cmd_predict(args) -> int:
    pipe = load_model(args.model)
    texts = _read_texts(args.input)
    pred, _ = pipe.predict(texts)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        for text, label in zip(texts, pred):
            fh.write(f"{text}\t{label.serialize(pipe.language)}\n")
    return 0


def cmd_evaluate(args) -> int:
    pipe = load_model(args.model)
    lang = args.lang or pipe.language
    if lang != pipe.language:
        print(f"warning: model language {pipe.language!r} differs from --lang {lang!r}", file=sys.stderr)
    corpus = load_tsv(args.input, lang)
    pred, _ = pipe.predict(corpus.texts)
    report = evaluate(corpus.labels, pred)
    print(report.to_json() if args.format == "json" else report.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmxsent", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_training_flags(p):
        p.add_argument("--lang", required=True, choices=["ta", "ml"])
        p.add_argument("--train", required=True)
        p.add_argument("--model", required=True, help="output model path")
        p.add_argument("--classifier", choices=["sgd", "logreg"])
        p.add_argument("--seed", type=int)
        p.add_argument("--emoji-lexicon", help="emoji,sentiment_score CSV")
        p.add_argument("--translit-table", help="override the Roman->Indic rule table")
        p.add_argument("--soundex-map", help="override the Indic Soundex offset map")

    p = sub.add_parser("train", help="train a model")
    add_training_flags(p)
    p.add_argument("--val")
    p.add_argument("--config", help="JSON config file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("tune", help="grid search, then train the best config")
    add_training_flags(p)
    p.add_argument("--val", help="validation TSV; stratified k-fold on train when omitted")
    p.add_argument("--config", "--config-with-grid", dest="config", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--folds", type=int, default=5)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("predict", help="label a TSV of comments")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="weighted P/R/F1 on a labeled TSV")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--lang", choices=["ta", "ml"])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
