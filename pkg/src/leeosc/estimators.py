"""scikit-learn style wrappers around the region map and the quantization pipeline.

``RegionClassifier`` labels (gamma, lambda) rows; ``LeeQuantizer`` learns the
linear map from phase-space points (x, y, p_x, p_y) to the decoupled
canonical coordinates (X, Y, P_X, P_Y) and predicts energies for (n, m)
quantum-number pairs.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .model import CASE_LABELS, classify_region, det_polynomial
from .pipeline import run_quantize
from .spectral import spectrum


class RegionClassifier(ClassifierMixin, BaseEstimator):
    """Stateless classifier over parameter points; ``fit`` only records the input width.

    Examples
    --------
    >>> RegionClassifier().fit([[0.0, 0.0]]).predict([[1.0, 1.0], [0.0, 0.0]])
    array(['Case1', 'Interior'], dtype='<U8')
    """

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (gamma, lambda), got {X.shape[1]}")
        self.n_features_in_ = 2
        self.classes_ = np.array(CASE_LABELS)
        return self

    def _check(self, X):
        check_is_fitted(self, "classes_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return X

    def predict(self, X):
        X = self._check(X)
        return np.array([classify_region((g, l)).case_label for g, l in X])

    def decision_function(self, X):
        """f(gamma, lambda) = det h for each row."""
        X = self._check(X)
        return det_polynomial(X[:, 0], X[:, 1])

    def negative_counts(self, X):
        X = self._check(X)
        return np.array([classify_region((g, l)).neg_count for g, l in X])


class LeeQuantizer(TransformerMixin, BaseEstimator):
    """Canonical quantization of the Lee Hamiltonian at fixed (gamma, lam).

    Parameters
    ----------
    gamma, lam : float
        Model couplings.
    fixture : {None, "case1", "case2"}
        Use a shipped diagonalizing matrix instead of the computed one.
    b3, b4 : float or None
        Free parameters of the Bopp shift; ``None`` picks unit momentum
        coefficients.
    n_levels : int
        Largest n and m in ``report_.spectrum_sample``.
    """

    def __init__(self, gamma=0.0, lam=0.0, fixture=None, b3=None, b4=None, n_levels=3):
        self.gamma = gamma
        self.lam = lam
        self.fixture = fixture
        self.b3 = b3
        self.b4 = b4
        self.n_levels = n_levels

    def fit(self, X=None, y=None):
        report = run_quantize(self.gamma, self.lam, self.fixture, self.b3, self.b4, self.n_levels)
        self.report_ = report
        self.h_ = report.h_matrix
        self.eigenvalues_ = report.eigenvalues
        self.S_ = report.S
        self.commutator_table_ = report.commutator_table
        self.branch_ = report.pipeline_branch
        self.bopp_ = report.bopp
        self.decoupled_ = report.decoupled
        self.transform_matrix_ = report.transform
        self.n_features_in_ = 4
        return self

    def _require_branch(self):
        check_is_fitted(self, "report_")
        if self.transform_matrix_ is None:
            raise ValueError(f"no canonical transform: pipeline branch is {self.branch_!r}")

    def transform(self, X):
        """Phase-space rows (x, y, p_x, p_y) -> (X, Y, P_X, P_Y)."""
        self._require_branch()
        X = check_array(X, dtype=float)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns, got {X.shape[1]}")
        return X @ self.transform_matrix_.T

    def inverse_transform(self, X):
        self._require_branch()
        X = check_array(X, dtype=float)
        return np.linalg.solve(self.transform_matrix_, X.T).T

    def predict(self, X):
        """Complex energies E_{n,m} for integer rows (n, m)."""
        self._require_branch()
        X = check_array(X, dtype=None)
        if X.shape[1] != 2 or not np.issubdtype(X.dtype, np.integer) and not np.all(X == np.round(X)):
            raise ValueError("expected integer rows (n, m)")
        return np.array([spectrum(self.decoupled_, int(n), int(m)).value for n, m in X])

    def decoupled_energy(self, X):
        """Classical value of H_X + s H_Y at transformed points."""
        V = self.transform(X)
        d = self.decoupled_
        hx = 0.5 * (d.mode_x.p_coeff * V[:, 2] ** 2 + d.mode_x.q_coeff * V[:, 0] ** 2)
        hy = 0.5 * (d.mode_y.p_coeff * V[:, 3] ** 2 + d.mode_y.q_coeff * V[:, 1] ** 2)
        return hx + d.relative_sign * hy
