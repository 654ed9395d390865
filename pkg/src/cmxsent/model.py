"""Linear classifiers trained from scratch on sparse feature matrices.

* ``train_sgd``: one-vs-rest plain SGD, modified Huber loss by default,
  constant learning rate, L2 / L1 / elastic-net penalty applied lazily so a
  step costs O(nnz) of the sample.
* ``train_logreg``: multinomial logistic regression with an L2 penalty on the
  weights (intercepts unpenalised), minimised by truncated Newton (conjugate
  gradient inner solve, Armijo backtracking).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.special import logsumexp, softmax

SGD_LOSSES = ("modified_huber", "hinge", "log_loss")
PENALTIES = ("l2", "l1", "elasticnet")


class ModelError(ValueError):
    pass


class ConvergenceWarning(UserWarning):
    pass


# ---------------------------------------------------------------- losses


def modified_huber(z):
    """Modified Huber loss of the margin ``z = y * f(x)`` and its derivative.

    max(0, 1 - z)^2 for z >= -1, -4z below. Works on scalars and arrays.
    """
    z = np.asarray(z, dtype=np.float64)
    quad = np.maximum(0.0, 1.0 - z)
    loss = np.where(z >= -1.0, quad * quad, -4.0 * z)
    dloss = np.where(z >= 1.0, 0.0, np.where(z >= -1.0, -2.0 * (1.0 - z), -4.0))
    if loss.ndim == 0:
        return float(loss), float(dloss)
    return loss, dloss


def _dloss(name: str, z: np.ndarray) -> np.ndarray:
    if name == "modified_huber":
        return modified_huber(z)[1]
    if name == "hinge":
        return np.where(z < 1.0, -1.0, 0.0)
    if name == "log_loss":
        return -np.exp(-np.logaddexp(0.0, z))
    raise ModelError(f"unknown loss {name!r}; expected one of {SGD_LOSSES}")


# ---------------------------------------------------------------- model


@dataclass
class SgdHyper:
    learning_rate: float = 1e-4
    alpha: float = 1e-4
    penalty: str = "l2"
    l1_ratio: float = 0.15
    epochs: int = 20
    shuffle_seed: int = 0
    loss: str = "modified_huber"

    def validate(self):
        # learning_rate == 0 is allowed and yields the all-zero model
        if self.learning_rate < 0:
            raise ModelError("learning_rate must be >= 0")
        if self.alpha < 0:
            raise ModelError("alpha must be >= 0")
        if self.epochs < 1:
            raise ModelError("epochs must be >= 1")
        if self.penalty not in PENALTIES:
            raise ModelError(f"unknown penalty {self.penalty!r}")
        if self.loss not in SGD_LOSSES:
            raise ModelError(f"unknown loss {self.loss!r}")
        if not 0 <= self.l1_ratio <= 1:
            raise ModelError("l1_ratio must be in [0, 1]")


@dataclass
class LogRegHyper:
    C: float = 0.01
    penalty: str = "l2"
    tol: float = 1e-6
    max_iter: int = 200

    def validate(self):
        if self.C <= 0:
            raise ModelError("C must be > 0")
        if self.tol <= 0:
            raise ModelError("tol must be > 0")
        if self.penalty != "l2":
            raise ModelError("logistic regression supports only the l2 penalty")
        if self.max_iter < 1:
            raise ModelError("max_iter must be >= 1")


@dataclass
class LinearModel:
    kind: str
    labels: list
    W: np.ndarray
    b: np.ndarray
    converged: bool = True
    info: dict = field(default_factory=dict)

    @property
    def n_columns(self) -> int:
        return self.W.shape[1]

    def decision_function(self, X) -> np.ndarray:
        X = _as_csr(X, self.n_columns)
        return np.asarray(X @ self.W.T) + self.b

    def scores(self, X) -> np.ndarray:
        z = self.decision_function(X)
        if self.kind == "logreg_multinomial":
            return softmax(z, axis=1)
        return z


def _as_csr(X, n_columns=None) -> sp.csr_matrix:
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=np.float64)
    if isinstance(X, list) and X and hasattr(X[0], "indices"):
        from .features import stack

        if n_columns is None:
            n_columns = max((int(v.indices.max()) + 1 for v in X if len(v.indices)), default=0)
        return stack(X, n_columns)
    return sp.csr_matrix(np.atleast_2d(np.asarray(X, dtype=np.float64)))


def _label_order(y) -> list:
    seen = {}
    for label in y:
        seen.setdefault(label, None)
    labels = list(seen)
    if len(labels) < 2:
        raise ModelError("need at least 2 distinct labels to train")
    return labels


def predict(model: LinearModel, X) -> tuple[list, np.ndarray]:
    """Predicted labels and per-label scores; ties go to the earlier label."""
    scores = model.scores(X)
    idx = np.argmax(scores, axis=1)
    return [model.labels[i] for i in idx], scores


# ---------------------------------------------------------------- SGD


def train_sgd(X, y, hyper: SgdHyper | None = None) -> LinearModel:
    hyper = hyper or SgdHyper()
    hyper.validate()
    X = _as_csr(X)
    y = list(y)
    if X.shape[0] != len(y):
        raise ModelError("X and y disagree on the number of samples")
    labels = _label_order(y)
    k, d = len(labels), X.shape[1]
    pos = {label: i for i, label in enumerate(labels)}
    Y = -np.ones((X.shape[0], k))
    Y[np.arange(len(y)), [pos[label] for label in y]] = 1.0

    l1_ratio = {"l2": 0.0, "l1": 1.0, "elasticnet": hyper.l1_ratio}[hyper.penalty]
    eta, alpha = hyper.learning_rate, hyper.alpha
    l2_decay = 1.0 - eta * alpha * (1.0 - l1_ratio)
    if l2_decay <= 0:
        raise ModelError("learning_rate * alpha too large: L2 decay would flip weight signs")
    l1_step = eta * alpha * l1_ratio

    V = np.zeros((k, d))
    scale = np.ones(k)
    b = np.zeros(k)
    # cumulative L1 penalty (Tsuruoka et al. style): u is owed, q received
    u = 0.0
    q = np.zeros((k, d)) if l1_step > 0 else None

    rng = np.random.default_rng(hyper.shuffle_seed)
    indptr, indices, data = X.indptr, X.indices, X.data
    for _ in range(hyper.epochs):
        for i in rng.permutation(X.shape[0]):
            lo, hi = indptr[i], indptr[i + 1]
            idx, vals = indices[lo:hi], data[lo:hi]
            yi = Y[i]
            p = scale * (V[:, idx] @ vals) + b
            g = _dloss(hyper.loss, yi * p) * yi
            if l2_decay != 1.0:
                scale *= l2_decay
            if eta > 0:
                step = eta * g
                if np.any(step):
                    V[:, idx] -= np.outer(step / scale, vals)
                    b -= step
            if q is not None:
                u += l1_step
                w = V[:, idx] * scale[:, None]
                z = w.copy()
                w = np.where(w > 0, np.maximum(0.0, w - (u + q[:, idx])),
                             np.where(w < 0, np.minimum(0.0, w + (u - q[:, idx])), w))
                q[:, idx] += w - z
                V[:, idx] = w / scale[:, None]
            small = scale < 1e-9
            if np.any(small):
                V[small] *= scale[small, None]
                scale[small] = 1.0
    W = V * scale[:, None]
    return LinearModel("sgd_ovr", labels, W, b, True, {"epochs": hyper.epochs})


# ---------------------------------------------------------------- logistic regression


def multinomial_objective(W, b, X, Y, C):
    """Penalised multinomial NLL, with gradients w.r.t. W and b.

    ``Y`` is the one-hot label matrix (n x k).
    """
    Z = np.asarray(X @ W.T) + b
    lse = logsumexp(Z, axis=1)
    f = float(np.sum(lse) - np.sum(Z * Y) + 0.5 / C * np.sum(W * W))
    R = np.exp(Z - lse[:, None]) - Y
    gW = np.asarray((X.T @ R).T) + W / C
    gb = R.sum(axis=0)
    return f, gW, gb


def _hessp(P, X, C, VW, vb):
    """Hessian-vector product at softmax probabilities ``P``."""
    dZ = np.asarray(X @ VW.T) + vb
    dP = P * (dZ - np.sum(P * dZ, axis=1, keepdims=True))
    return np.asarray((X.T @ dP).T) + VW / C, dP.sum(axis=0)


def train_logreg(X, y, hyper: LogRegHyper | None = None) -> LinearModel:
    hyper = hyper or LogRegHyper()
    hyper.validate()
    X = _as_csr(X)
    y = list(y)
    if X.shape[0] != len(y):
        raise ModelError("X and y disagree on the number of samples")
    labels = _label_order(y)
    k, d = len(labels), X.shape[1]
    pos = {label: i for i, label in enumerate(labels)}
    Y = np.zeros((X.shape[0], k))
    Y[np.arange(len(y)), [pos[label] for label in y]] = 1.0
    C = hyper.C

    W = np.zeros((k, d))
    b = np.zeros(k)
    f, gW, gb = multinomial_objective(W, b, X, Y, C)
    history = [f]
    converged = False
    n_iter = 0
    while True:
        gnorm = float(np.sqrt(np.sum(gW * gW) + np.sum(gb * gb)))
        if gnorm <= hyper.tol:
            converged = True
            break
        if n_iter >= hyper.max_iter:
            break
        P = softmax(np.asarray(X @ W.T) + b, axis=1)
        pW, pb = _cg(P, X, C, gW, gb, forcing=min(0.5, np.sqrt(gnorm)) * gnorm, max_iter=max(20, 2 * k))
        slope = float(np.sum(gW * pW) + np.sum(gb * pb))
        if slope >= 0:
            pW, pb, slope = -gW, -gb, -gnorm**2
        step = 1.0
        for _ in range(60):
            f_new, gW_new, gb_new = multinomial_objective(W + step * pW, b + step * pb, X, Y, C)
            if f_new <= f + 1e-4 * step * slope:
                break
            step *= 0.5
        else:
            break  # no decrease representable in floating point
        W = W + step * pW
        b = b + step * pb
        f, gW, gb = f_new, gW_new, gb_new
        history.append(f)
        n_iter += 1
    if not converged:
        warnings.warn(
            f"logistic regression stopped after {n_iter} iterations with gradient norm {gnorm:.3g} > tol {hyper.tol:g}",
            ConvergenceWarning,
            stacklevel=2,
        )
    info = {"n_iter": n_iter, "grad_norm": gnorm, "objective": history}
    return LinearModel("logreg_multinomial", labels, W, b, bool(converged), info)


def _cg(P, X, C, gW, gb, forcing, max_iter):
    """Approximately solve H p = -g by conjugate gradients."""
    xW, xb = np.zeros_like(gW), np.zeros_like(gb)
    rW, rb = -gW, -gb
    dW, db = rW.copy(), rb.copy()
    rr = np.sum(rW * rW) + np.sum(rb * rb)
    for _ in range(max_iter):
        if np.sqrt(rr) <= forcing:
            break
        hW, hb = _hessp(P, X, C, dW, db)
        curv = np.sum(dW * hW) + np.sum(db * hb)
        if curv <= 1e-16 * (np.sum(dW * dW) + np.sum(db * db)):
            if not np.any(xW) and not np.any(xb):
                xW, xb = dW, db
            break
        a = rr / curv
        xW += a * dW
        xb += a * db
        rW -= a * hW
        rb -= a * hb
        rr_new = np.sum(rW * rW) + np.sum(rb * rb)
        dW = rW + (rr_new / rr) * dW
        db = rb + (rr_new / rr) * db
        rr = rr_new
    return xW, xb
