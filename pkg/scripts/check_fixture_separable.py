"""Check that the synthetic emoji fixture is linearly separable in feature space.

Solves the LP feasibility problem: find W, b with
(w_y - w_k).x + (b_y - b_k) >= 1 for every training doc and every wrong class k.
Feasible means some linear multiclass model fits the training split perfectly.

    python3 scripts/check_fixture_separable.py [train.tsv]
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from cmxsent.corpus import load_tsv
from cmxsent.pipeline import TrainConfig, prepare_features, Resources

DEFAULT = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "emoji_train.tsv"


def linearly_separable(X, y) -> bool:
    X = sp.csr_matrix(X)
    labels = sorted(set(y), key=str)
    k, (n, d) = len(labels), X.shape
    Xb = sp.hstack([X, np.ones((n, 1))]).tocsr()
    width = d + 1
    rows = []
    for i, label in enumerate(y):
        yi = labels.index(label)
        xi = Xb[i]
        for j in range(k):
            if j == yi:
                continue
            # -(w_yi - w_j).x <= -1
            row = sp.lil_matrix((1, k * width))
            row[0, yi * width:(yi + 1) * width] = -xi.toarray()
            row[0, j * width:(j + 1) * width] = xi.toarray()
            rows.append(row.tocsr())
    A = sp.vstack(rows)
    result = linprog(np.zeros(k * width), A_ub=A, b_ub=-np.ones(A.shape[0]), bounds=(None, None), method="highs")
    return result.status == 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    path = Path(argv[0]) if argv else DEFAULT
    train = load_tsv(path, "ta")
    fs = prepare_features(train, TrainConfig().features, Resources.default("ta"))
    ok = linearly_separable(fs.X, fs.y)
    print(f"{path.name}: {fs.X.shape[0]} docs, {fs.X.shape[1]} features, separable={ok}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
