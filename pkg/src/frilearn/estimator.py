"""Scikit-learn style front end for the lattice rule learner."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .dataset import Dataset
from .fuzzy import Example, build_partition
from .inference import classify
from .lattice import ModelConfig, learn_one_vs_rest


class LatticeRuleClassifier(ClassifierMixin, BaseEstimator):
    """Fuzzy rule classifier with minimal-antecedent rules.

    Learns, per class, every antecedent over a grid of triangular
    linguistic labels whose matching degree against the training data is
    positive, then keeps only antecedents no shorter antecedent beats.
    Prediction scores each class by its best-activated rule.

    The search visits (n_labels + 1) ** n_features candidate antecedents
    per class, so the estimator is meant for low-dimensional tabular
    data.

    Parameters
    ----------
    n_labels : int, default=7
        Number of linguistic labels per variable (input and output).
    prune : bool, default=True
        Skip supersets of antecedents that already match with degree 1.
    tie_policy : {'strict', 'drop-superset-on-tie'}, default='strict'
        Whether a shorter antecedent with merely equal degree discards a
        longer one.
    scoring : {'positive', 'difference'}, default='positive'
        Class scoring: best "is the class" activation, optionally minus
        the best "is not the class" activation.
    epsilon : float, default=0.0
        Slack for degree comparisons during subsumption; 0 compares
        exactly.
    feature_names : sequence of str, optional
        Variable names used in rules; defaults to x0..x{n-1}.
    feature_bounds : sequence of (float, float), optional
        Domain per feature; defaults to the observed min/max.

    Attributes
    ----------
    classes_ : ndarray
        Class labels in score-column order.
    model_ : OneVsRestModel
        The learned rule bases; pass to `frilearn.inference.classify` for
        verdicts with an explicit reject option.

    Examples
    --------
    >>> clf = LatticeRuleClassifier(n_labels=3)
    >>> clf.fit([[0.0], [1.0]], [0, 1]).predict([[0.1]])
    array([0])
    """

    def __init__(
        self,
        n_labels: int = 7,
        prune: bool = True,
        tie_policy: str = "strict",
        scoring: str = "positive",
        epsilon: float = 0.0,
        feature_names=None,
        feature_bounds=None,
    ):
        self.n_labels = n_labels
        self.prune = prune
        self.tie_policy = tie_policy
        self.scoring = scoring
        self.epsilon = epsilon
        self.feature_names = feature_names
        self.feature_bounds = feature_bounds

    def fit(self, X, y):
        """Learn one rule base per class in `y`.

        Returns
        -------
        self : object
        """
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_ = np.unique(y)
        if len(self.classes_) < 2:
            raise ValueError("needs at least 2 classes")
        n_features = X.shape[1]
        if self.feature_names is not None and len(self.feature_names) != n_features:
            raise ValueError("one feature name per column required")
        if self.feature_bounds is not None and len(self.feature_bounds) != n_features:
            raise ValueError("one (min, max) pair per column required")
        names = (
            list(self.feature_names)
            if self.feature_names is not None
            else [f"x{i}" for i in range(n_features)]
        )
        schema = []
        for i in range(n_features):
            if self.feature_bounds is not None:
                lo, hi = self.feature_bounds[i]
            else:
                lo, hi = float(X[:, i].min()), float(X[:, i].max())
            schema.append(
                build_partition(lo, hi, self.n_labels, variable_name=names[i])
            )
        class_names = tuple(str(c) for c in self.classes_)
        dataset = Dataset(
            schema=tuple(schema),
            examples=tuple(Example(tuple(float(v) for v in row), 0.0) for row in X),
            class_names=class_names,
            labels=tuple(str(c) for c in y),
            class_column="class",
        )
        config = ModelConfig(
            label_count=self.n_labels,
            tie_policy=self.tie_policy,
            scoring_policy=self.scoring,
            seed=0,
            split_fraction=1.0,
        )
        self.model_ = learn_one_vs_rest(
            dataset, config, prune=self.prune, epsilon=self.epsilon
        )
        self.n_features_in_ = n_features
        self._class_by_name = dict(zip(class_names, self.classes_))
        return self

    def decision_function(self, X):
        """Per-class rule activation scores in [0, 1], one column per class."""
        check_is_fitted(self, "model_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        scores = np.empty((X.shape[0], len(self.classes_)))
        for r, row in enumerate(X):
            prediction = classify(self.model_, tuple(float(v) for v in row))
            scores[r] = [prediction.scores[str(c)] for c in self.classes_]
        return scores

    def predict(self, X):
        """Highest-scoring class per row; ties and all-zero rows fall back to
        the first class in `classes_` (use `model_` with
        `frilearn.inference.classify` to keep those rows unresolved)."""
        scores = self.decision_function(X)
        return self.classes_[np.argmax(scores, axis=1)]

    def predict_verdict(self, X):
        """Like predict, but returns None for rows with no unique positive maximum."""
        scores = self.decision_function(X)
        verdicts = []
        for row in scores:
            best = row.max()
            winners = np.flatnonzero(row == best)
            if best <= 0.0 or len(winners) != 1:
                verdicts.append(None)
            else:
                verdicts.append(self.classes_[winners[0]])
        return verdicts
