"""Train, tune and score on the Dravidian CodeMix sentiment corpora.

Expects ``DATA_DIR/{ta,ml}/{train,dev,test}.tsv`` (text<TAB>label, header optional).

    python3 scripts/run_dravidian.py DATA_DIR --lang ta --classifier sgd --jobs 4
    python3 scripts/run_dravidian.py DATA_DIR --lang ml --classifier logreg
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from cmxsent.corpus import load_tsv
from cmxsent.metrics import evaluate
from cmxsent.pipeline import Resources, fit, load_config
from cmxsent.tune import ParamGrid, grid_search

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("data_dir", type=Path)
    ap.add_argument("--lang", choices=["ta", "ml"], default="ta")
    ap.add_argument("--classifier", choices=["sgd", "logreg"], default="sgd")
    ap.add_argument("--config", type=Path, help="defaults: configs/sgd_quick_grid.json or configs/logreg.json")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    root = args.data_dir / args.lang
    train, dev, test = (load_tsv(root / f"{s}.tsv", args.lang) for s in ("train", "dev", "test"))
    print(f"{args.lang}: {len(train)} train, {len(dev)} dev, {len(test)} test")

    default = "sgd_quick_grid.json" if args.classifier == "sgd" else "logreg.json"
    config, grid = load_config(args.config or CONFIGS / default)
    config = config.with_param("classifier", args.classifier)
    res = Resources.default(args.lang)

    start = time.perf_counter()
    if grid:
        config, report = grid_search(ParamGrid.from_dict(grid), train, dev, config, res=res, n_jobs=args.jobs)
        for r in report:
            print(f"  {r.score:.4f} {json.dumps(r.params)}")
    pipe = fit(train, config, res)
    print(f"trained in {time.perf_counter() - start:.1f}s")

    print(f"{'split':<12}{'precision':>10}{'recall':>10}{'f1':>10}")
    for name, corpus in (("validation", dev), ("test", test)):
        p, r, f = evaluate(corpus.labels, pipe.predict(corpus.texts)[0]).weighted
        print(f"{name:<12}{p:>10.2f}{r:>10.2f}{f:>10.2f}")


if __name__ == "__main__":
    main()
