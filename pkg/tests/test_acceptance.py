"""Acceptance criteria, one test per criterion.

Each test records PASS/FAIL/SKIP in ``RESULTS``; conftest prints the table at
the end of the run. Criteria 8-10 need the public Dravidian CodeMix corpora
laid out as ``$CMX_DATA_DIR/{ta,ml}/{train,dev,test}.tsv`` and skip otherwise.
"""

from __future__ import annotations

import contextlib
import importlib.util
import os
import random
import warnings
from pathlib import Path

import numpy as np
import pytest
import scipy.sparse as sp

from conftest import FIXTURES, read_rows
from cmxsent.corpus import SentimentLabel, load_tsv
from cmxsent.metrics import evaluate
from cmxsent.model import LogRegHyper, modified_huber, multinomial_objective, predict, train_logreg
from cmxsent.persist import dumps, load_model, save_model
from cmxsent.pipeline import Resources, TrainConfig, fit, prepare_features, fit_classifier
from cmxsent.soundex import harmonize_token, soundex_english, soundex_indic
from cmxsent.tune import ParamGrid, best_index, grid_search, weighted_f1

RESULTS: dict[int, tuple[str, str]] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except pytest.skip.Exception:
        RESULTS[number] = ("SKIP", title)
        raise
    except BaseException:
        RESULTS[number] = ("FAIL", title)
        raise
    RESULTS[number] = ("PASS", title)


def _load_script(name):
    path = Path(__file__).resolve().parents[1] / "scripts" / f"{name}.py"
    loader_spec = importlib.util.spec_from_file_location(name, path)
    module = importlib.util.module_from_spec(loader_spec)
    loader_spec.loader.exec_module(module)
    return module


@pytest.fixture(scope="module")
def res():
    return Resources.default("ta")


def test_criterion_1_modified_huber():
    with criterion(1, "modified Huber anchors exact; derivative within 1e-8 of finite differences"):
        anchors = {-2: (8, -4), -1: (4, -4), 0: (1, -2), 0.5: (0.25, -1), 1: (0, 0), 2: (0, 0)}
        for z, expected in anchors.items():
            assert modified_huber(float(z)) == expected
        rng = np.random.default_rng(20201216)
        z = rng.uniform(-4, 4, size=1000)
        z = z[(np.abs(z + 1) > 1e-4) & (np.abs(z - 1) > 1e-4)][:100]
        assert len(z) == 100
        h = 1e-6
        numeric = (modified_huber(z + h)[0] - modified_huber(z - h)[0]) / (2 * h)
        assert np.max(np.abs(numeric - modified_huber(z)[1])) <= 1e-8


def test_criterion_2_logreg_gradient_and_convergence():
    with criterion(2, "logreg gradient within 1e-5 relative; monotone objective; grad norm <= tol"):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            X = sp.csr_matrix(rng.normal(size=(30, 5)))
            y = rng.integers(0, 3, size=30)
            Y = np.eye(3)[y]
            W, b, C = rng.normal(size=(3, 5)), rng.normal(size=3), 1.0

            def f(theta):
                return multinomial_objective(theta[:15].reshape(3, 5), theta[15:], X, Y, C)[0]

            theta = np.concatenate([W.ravel(), b])
            _, gW, gb = multinomial_objective(W, b, X, Y, C)
            analytic = np.concatenate([gW.ravel(), gb])
            h = 1e-6
            numeric = np.array([(f(theta + h * e) - f(theta - h * e)) / (2 * h) for e in np.eye(18)])
            assert np.linalg.norm(analytic - numeric) <= 1e-5 * max(1.0, np.linalg.norm(numeric))

            hyper = LogRegHyper(C=C)
            model = train_logreg(X, list(y), hyper)
            obj = model.info["objective"]
            assert all(b2 <= a2 for a2, b2 in zip(obj, obj[1:]))
            assert model.converged and model.info["grad_norm"] <= hyper.tol


def test_criterion_3_separable_fixture(emoji_train, emoji_val, res):
    with criterion(3, "both trainers fit the separable fixture exactly; held-out weighted F1 >= 0.95"):
        assert len(emoji_train) + len(emoji_val) == 80 and len(emoji_val) == 20
        fs = prepare_features(emoji_train, TrainConfig().features, res)
        assert _load_script("check_fixture_separable").linearly_separable(fs.X, fs.y)
        for classifier in ("sgd", "logreg"):
            config = TrainConfig(classifier=classifier)
            pipe = fit(emoji_train, config, res)
            assert pipe.predict(emoji_train.texts)[0] == emoji_train.labels, classifier
            f1 = weighted_f1(emoji_val.labels, pipe.predict(emoji_val.texts)[0])
            assert f1 >= 0.95, (classifier, f1)


ENGLISH_REFERENCE = [
    ("robert", "r163"), ("rupert", "r163"), ("rubin", "r150"), ("ashcraft", "a261"),
    ("tymczak", "t522"), ("pfister", "p236"), ("honeyman", "h555"), ("jackson", "j250"),
    ("washington", "w252"), ("lee", "l000"),
]


def test_criterion_4_soundex(ta_table, ml_table, char_map):
    with criterion(4, "variant pairs share sx: features; cross-script agreement; English reference table"):
        pairs = read_rows("soundex_pairs.tsv")
        assert len(pairs) >= 30
        for lang, a, b in pairs:
            table = ta_table if lang == "ta" else ml_table
            fa = harmonize_token(a, lang, table, char_map)
            assert fa.startswith("sx:") and fa == harmonize_token(b, lang, table, char_map), (a, b)
        words = (FIXTURES / "tamil_words.txt").read_text(encoding="utf-8").split()
        assert len(words) == 50
        shift = 0x0D00 - 0x0B80
        for w in words:
            moved = "".join(chr(ord(c) + shift) if 0x0B80 <= ord(c) <= 0x0BFF else c for c in w)
            assert soundex_indic(w, char_map)[1:] == soundex_indic(moved, char_map)[1:], w
        for name, code in ENGLISH_REFERENCE:
            assert soundex_english(name) == code, name


def test_criterion_5_determinism_and_persistence(emoji_train, res, tmp_path):
    with criterion(5, "fixed-seed training bit-reproducible; save/load predicts bit-identically on 1000 inputs"):
        rng = random.Random(5)
        vocab = [t for text in emoji_train.texts for t in text.split()]
        texts = [" ".join(rng.choices(vocab, k=rng.randint(0, 10))) for _ in range(1000)]
        for classifier in ("sgd", "logreg"):
            config = TrainConfig(classifier=classifier).with_param("sgd.shuffle_seed", 11)
            a, b = fit(emoji_train, config, res), fit(emoji_train, config, res)
            assert dumps(a) == dumps(b)
            path = tmp_path / f"{classifier}.json"
            save_model(a, path)
            loaded = load_model(path)
            la, sa = a.predict(texts)
            lb, sb = loaded.predict(texts)
            assert la == lb and sa.tobytes() == sb.tobytes()


def test_criterion_6_metrics():
    with criterion(6, "metrics match 5 hand-computed cases; weighted recall equals accuracy"):
        P, N, M, U, T = list(SentimentLabel)
        cases = [
            ([P, N, M], [P, N, M], 1.0),
            ([P, P, N], [P, N, N], 2 / 3),
            ([P, N, M, U, T], [P] * 5, 1 / 15),
            ([P, P], [P, N], 2 / 3),
            ([P, P, P, N, N, M], [P, P, N, N, M, M], (2.4 + 1 + 2 / 3) / 6),
        ]
        for gold, pred, f1 in cases:
            assert abs(evaluate(gold, pred).weighted[2] - f1) <= 1e-12
        assert abs(evaluate([P, N, M, U, T], [P] * 5).weighted[1] - 0.2) <= 1e-12
        rng = random.Random(6)
        labels = list(SentimentLabel)
        for _ in range(200):
            n = rng.randint(1, 50)
            gold, pred = rng.choices(labels, k=n), rng.choices(labels, k=n)
            acc = sum(g == p for g, p in zip(gold, pred)) / n
            assert abs(evaluate(gold, pred).weighted[1] - acc) <= 1e-12


def test_criterion_7_grid_search(emoji_train, emoji_val, res):
    with criterion(7, "grid report is exhaustive; best re-trains to its score; parallel == serial"):
        grid = ParamGrid([("classifier", ["sgd", "logreg"]), ("features.group_weights.emoji", [0.0, 1.0, 2.0])])
        base = TrainConfig()
        best, serial = grid_search(grid, emoji_train, emoji_val, base, res=res)
        assert len(serial) == 6
        _, parallel = grid_search(grid, emoji_train, emoji_val, base, res=res, n_jobs=2)
        assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]
        pipe = fit(emoji_train, best, res)
        assert weighted_f1(emoji_val.labels, pipe.predict(emoji_val.texts)[0]) == serial[best_index(serial)].score


# --- dataset-dependent -------------------------------------------------------

DATA_DIR = os.environ.get("CMX_DATA_DIR")
TOLERANCE = 0.10
SGD_GRID = {"sgd.penalty": ["l2", "l1", "elasticnet"], "sgd.alpha": [1e-3, 1e-4, 1e-5]}


def _splits(lang):
    if not DATA_DIR:
        pytest.skip("CMX_DATA_DIR not set")
    root = Path(DATA_DIR) / lang
    paths = [root / f"{s}.tsv" for s in ("train", "dev", "test")]
    missing = [str(p) for p in paths if not p.is_file()]
    if missing:
        pytest.skip(f"missing {missing}")
    return [load_tsv(p, lang) for p in paths]


def _test_f1(lang, classifier):
    train, dev, test = _splits(lang)
    res = Resources.default(lang)
    config = TrainConfig(classifier=classifier)
    if classifier == "sgd":
        config, _ = grid_search(ParamGrid.from_dict(SGD_GRID), train, dev, config, res=res, n_jobs=os.cpu_count() or 1)
    else:
        config = config.with_param("logreg.C", 0.01).with_param("logreg.penalty", "l2")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pipe = fit(train, config, res)
    f1 = weighted_f1(test.labels, pipe.predict(test.texts)[0])
    print(f"{lang} {classifier}: test weighted F1 {f1:.4f}")
    return f1


@pytest.mark.dataset
def test_criterion_8_tamil_sgd():
    with criterion(8, "Tamil SGD test weighted F1 within 0.10 of 0.62"):
        assert abs(_test_f1("ta", "sgd") - 0.62) <= TOLERANCE


@pytest.mark.dataset
def test_criterion_9_tamil_logreg():
    with criterion(9, "Tamil logreg C=0.01 test weighted F1 within 0.10 of 0.77"):
        assert abs(_test_f1("ta", "logreg") - 0.77) <= TOLERANCE


@pytest.mark.dataset
def test_criterion_10_malayalam():
    with criterion(10, "Malayalam SGD within 0.10 of 0.65; logreg within 0.10 of 0.69"):
        assert abs(_test_f1("ml", "sgd") - 0.65) <= TOLERANCE
        assert abs(_test_f1("ml", "logreg") - 0.69) <= TOLERANCE
