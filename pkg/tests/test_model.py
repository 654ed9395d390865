import warnings

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given
from hypothesis import strategies as st

from cmxsent.model import (
    ConvergenceWarning, LinearModel, LogRegHyper, ModelError, SgdHyper, modified_huber,
    multinomial_objective, predict, train_logreg, train_sgd,
)

TOY_X = np.array([[2.0, 1.0], [1.0, 2.0], [-2.0, -1.0], [-1.0, -2.0]])
TOY_Y = ["pos", "pos", "neg", "neg"]

# three well-separated clusters: a linear multiclass separator exists
SEP_X = np.array([[3, 0, 0], [2.5, 0.5, 0], [3, 0, 0.5], [0, 3, 0], [0.5, 2.5, 0], [0, 3, 0.5],
                  [0, 0, 3], [0.5, 0, 2.5], [0, 0.5, 3]], dtype=float)
SEP_Y = ["a"] * 3 + ["b"] * 3 + ["c"] * 3


def loss_reference(z):
    return (1 - z) ** 2 if -1 <= z < 1 else (0.0 if z >= 1 else -4 * z)


class TestModifiedHuber:
    @pytest.mark.parametrize("z, loss, d", [(-2, 8, -4), (-1, 4, -4), (0, 1, -2), (0.5, 0.25, -1), (1, 0, 0), (2, 0, 0)])
    def test_anchor_values(self, z, loss, d):
        assert modified_huber(z) == (loss, d)

    def test_continuous_at_minus_one(self):
        assert modified_huber(-1.0)[0] == 4.0
        assert -4.0 * -1.0 == 4.0

    def test_vectorised(self):
        loss, d = modified_huber(np.array([-2.0, 0.0, 1.0]))
        assert loss.tolist() == [8.0, 1.0, 0.0] and d.tolist() == [-4.0, -2.0, 0.0]

    def test_derivative_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        z = rng.uniform(-4, 4, size=400)
        z = z[(np.abs(z + 1) > 1e-4) & (np.abs(z - 1) > 1e-4)][:100]
        h = 1e-6
        numeric = (modified_huber(z + h)[0] - modified_huber(z - h)[0]) / (2 * h)
        assert np.max(np.abs(numeric - modified_huber(z)[1])) <= 1e-8

    def test_matches_piecewise_definition(self):
        for z in np.linspace(-5, 5, 101):
            assert modified_huber(z)[0] == pytest.approx(loss_reference(z), abs=1e-12)


class TestSgd:
    def test_toy_separable(self):
        model = train_sgd(TOY_X, TOY_Y)
        assert predict(model, TOY_X)[0] == TOY_Y

    def test_three_class_separable(self):
        model = train_sgd(SEP_X, SEP_Y)
        assert predict(model, SEP_X)[0] == SEP_Y

    def test_zero_learning_rate_keeps_zero(self):
        model = train_sgd(TOY_X, TOY_Y, SgdHyper(learning_rate=0.0, epochs=1))
        assert not model.W.any() and not model.b.any()

    def test_bitwise_deterministic(self):
        a = train_sgd(SEP_X, SEP_Y, SgdHyper(shuffle_seed=5))
        b = train_sgd(SEP_X, SEP_Y, SgdHyper(shuffle_seed=5))
        assert a.W.tobytes() == b.W.tobytes() and a.b.tobytes() == b.b.tobytes()

    def test_single_label_error(self):
        with pytest.raises(ModelError):
            train_sgd(TOY_X, ["pos"] * 4)

    @pytest.mark.parametrize("penalty", ["l2", "l1", "elasticnet"])
    @pytest.mark.parametrize("loss", ["modified_huber", "hinge", "log_loss"])
    def test_penalties_and_losses_learn(self, penalty, loss):
        model = train_sgd(SEP_X, SEP_Y, SgdHyper(penalty=penalty, loss=loss, learning_rate=0.01, alpha=1e-3))
        assert predict(model, SEP_X)[0] == SEP_Y

    def test_l1_produces_exact_zeros(self):
        rng = np.random.default_rng(0)
        X = np.hstack([SEP_X, rng.normal(scale=0.01, size=(9, 20))])
        model = train_sgd(X, SEP_Y, SgdHyper(penalty="l1", alpha=0.05, learning_rate=0.01, epochs=50))
        assert np.sum(model.W == 0) > 0

    def test_sparse_matches_dense(self):
        a = train_sgd(SEP_X, SEP_Y)
        b = train_sgd(sp.csr_matrix(SEP_X), SEP_Y)
        np.testing.assert_array_equal(a.W, b.W)

    def test_labels_in_first_seen_order(self):
        model = train_sgd(SEP_X[::-1], SEP_Y[::-1])
        assert model.labels == ["c", "b", "a"]


def random_problem(rng, n=30, d=5, k=3):
    X = sp.csr_matrix(rng.normal(size=(n, d)))
    y = rng.integers(0, k, size=n)
    Y = np.eye(k)[y]
    return X, Y, y


class TestLogisticObjective:
    @pytest.mark.parametrize("seed", range(20))
    def test_gradient_matches_finite_differences(self, seed):
        rng = np.random.default_rng(seed)
        X, Y, _ = random_problem(rng)
        W, b, C = rng.normal(size=(3, 5)), rng.normal(size=3), 10 ** rng.uniform(-2, 1)
        _, gW, gb = multinomial_objective(W, b, X, Y, C)
        h = 1e-6
        num = np.zeros_like(W)
        for idx in np.ndindex(W.shape):
            E = np.zeros_like(W)
            E[idx] = h
            num[idx] = (multinomial_objective(W + E, b, X, Y, C)[0] - multinomial_objective(W - E, b, X, Y, C)[0]) / (2 * h)
        numb = np.array([
            (multinomial_objective(W, b + h * e, X, Y, C)[0] - multinomial_objective(W, b - h * e, X, Y, C)[0]) / (2 * h)
            for e in np.eye(3)
        ])
        analytic = np.concatenate([gW.ravel(), gb])
        numeric = np.concatenate([num.ravel(), numb])
        assert np.linalg.norm(analytic - numeric) <= 1e-5 * max(1.0, np.linalg.norm(numeric))


class TestLogReg:
    def test_zero_weights_uniform(self):
        model = LinearModel("logreg_multinomial", ["a", "b", "c"], np.zeros((3, 4)), np.zeros(3))
        _, probs = predict(model, np.ones((2, 4)))
        np.testing.assert_allclose(probs, 1 / 3)

    @pytest.mark.parametrize("seed", range(5))
    def test_converges_monotonically(self, seed):
        rng = np.random.default_rng(seed)
        X, _, y = random_problem(rng)
        model = train_logreg(X, list(y), LogRegHyper(C=1.0))
        assert model.converged
        assert model.info["grad_norm"] <= 1e-6
        obj = model.info["objective"]
        assert all(b <= a for a, b in zip(obj, obj[1:]))

    def test_separable(self):
        model = train_logreg(SEP_X, SEP_Y)
        assert predict(model, SEP_X)[0] == SEP_Y

    def test_toy(self):
        model = train_logreg(TOY_X, TOY_Y)
        assert predict(model, TOY_X)[0] == TOY_Y

    def test_non_convergence_warns(self):
        rng = np.random.default_rng(1)
        X, _, y = random_problem(rng)
        with pytest.warns(ConvergenceWarning):
            model = train_logreg(X, list(y), LogRegHyper(C=100.0, max_iter=1))
        assert not model.converged

    def test_bad_hyper(self):
        with pytest.raises(ModelError):
            train_logreg(TOY_X, TOY_Y, LogRegHyper(C=0))
        with pytest.raises(ModelError):
            train_logreg(TOY_X, TOY_Y, LogRegHyper(penalty="l1"))

    def test_deterministic(self):
        a, b = train_logreg(SEP_X, SEP_Y), train_logreg(SEP_X, SEP_Y)
        assert a.W.tobytes() == b.W.tobytes()


class TestPredict:
    def test_all_zero_model_first_label(self):
        model = LinearModel("sgd_ovr", ["x", "y"], np.zeros((2, 3)), np.zeros(2))
        labels, scores = predict(model, np.eye(3))
        assert labels == ["x"] * 3 and scores.shape == (3, 2)

    @given(shift=st.floats(-50, 50), seed=st.integers(0, 100))
    def test_softmax_shift_invariance(self, shift, seed):
        rng = np.random.default_rng(seed)
        W, b = rng.normal(size=(4, 6)), rng.normal(size=4)
        X = rng.normal(size=(10, 6))
        m1 = LinearModel("logreg_multinomial", list("abcd"), W, b)
        m2 = LinearModel("logreg_multinomial", list("abcd"), W, b + shift)
        assert predict(m1, X)[0] == predict(m2, X)[0]
