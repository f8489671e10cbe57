"""Built-in probabilistic base learners: a CART-style tree and discrete AdaBoost.

The classifier contract used across the package: `fit(X, y, sample_weight=None)`
returning self, `predict_proba(X)` returning the positive-class probability
per row (a scalar for a single 1-D row), and an `n_features_in_` attribute set
by fit. Any object honoring it can serve as an ensemble base learner.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DecisionTreeClassifier",
    "AdaBoostClassifier",
    "LearnerSpec",
    "LEARNER_REGISTRY",
    "learner_to_doc",
    "learner_from_doc",
]

# Stage weight assigned on a perfect round: 0.5 * ln(1e10).
_PERFECT_ROUND_ODDS = 1e10


def _check_training_inputs(X, y, sample_weight):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"X must be a 2-D matrix, got ndim={X.ndim}")
    if X.shape[0] == 0:
        raise ValueError("training data must be nonempty")
    y = np.asarray(y)
    if y.shape != (X.shape[0],):
        raise ValueError(f"y must have shape ({X.shape[0]},), got {y.shape}")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    y = y.astype(np.int64)
    if sample_weight is None:
        w = np.ones(X.shape[0], dtype=np.float64)
    else:
        w = np.asarray(sample_weight, dtype=np.float64)
        if w.shape != (X.shape[0],):
            raise ValueError(f"sample_weight must have shape ({X.shape[0]},)")
        if (w < 0).any() or not np.isfinite(w).all():
            raise ValueError("sample weights must be nonnegative finite reals")
        if w.sum() <= 0:
            raise ValueError("sample weights must not all be zero")
    return X, y, w


def _check_predict_input(X, n_features, fitted):
    if not fitted:
        raise ValueError("model has not been fitted")
    X = np.asarray(X, dtype=np.float64)
    single = X.ndim == 1
    if single:
        X = X[np.newaxis, :]
    if X.ndim != 2:
        raise ValueError(f"expected a feature row or matrix, got ndim={X.ndim}")
    if X.shape[1] != n_features:
        raise ValueError(f"model expects {n_features} features, got {X.shape[1]}")
    return X, single


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "probability", "count")

    def __init__(self, feature=None, threshold=None, left=None, right=None,
                 probability=0.0, count=0):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.probability = probability
        self.count = count

    @property
    def is_leaf(self):
        return self.feature is None


def _node_to_doc(node):
    if node.is_leaf:
        return {"probability": node.probability, "count": node.count}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "left": _node_to_doc(node.left),
        "right": _node_to_doc(node.right),
    }


def _node_from_doc(doc):
    if "feature" in doc:
        return _Node(
            feature=int(doc["feature"]),
            threshold=float(doc["threshold"]),
            left=_node_from_doc(doc["left"]),
            right=_node_from_doc(doc["right"]),
        )
    return _Node(probability=float(doc["probability"]), count=int(doc["count"]))


class DecisionTreeClassifier:
    """Binary classification tree grown by greedy weighted-Gini splits.

    Candidate thresholds are midpoints between consecutive distinct sorted
    feature values. A split is accepted only if it strictly beats
    min_impurity_decrease; ties go to the lowest feature index, then the
    lowest threshold, so training is fully deterministic. Leaves predict the
    weighted positive fraction of their training samples.
    """

    def __init__(self, max_depth=10, min_samples_split=2, min_impurity_decrease=0.0):
        if max_depth is not None:
            max_depth = int(max_depth)
            if max_depth < 1:
                raise ValueError(f"max_depth must be >= 1 or None, got {max_depth}")
        min_samples_split = int(min_samples_split)
        if min_samples_split < 1:
            raise ValueError(f"min_samples_split must be >= 1, got {min_samples_split}")
        min_impurity_decrease = float(min_impurity_decrease)
        if min_impurity_decrease < 0:
            raise ValueError("min_impurity_decrease must be nonnegative")
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_impurity_decrease = min_impurity_decrease
        self.tree_ = None
        self.n_features_in_ = None

    @staticmethod
    def _gini(w_pos, w_total):
        p = w_pos / w_total
        return 1.0 - p * p - (1.0 - p) * (1.0 - p)

    def _best_split(self, X, y, w, rows, parent_gini):
        """(decrease, feature, threshold) of the best split, or None."""
        w_rows = w[rows]
        y_rows = y[rows]
        w_total = w_rows.sum()
        w_pos_total = w_rows[y_rows == 1].sum()
        best = None
        best_gain = self.min_impurity_decrease
        for f in range(X.shape[1]):
            col = X[rows, f]
            order = np.argsort(col, kind="stable")
            sv = col[order]
            cuts = np.flatnonzero(sv[:-1] != sv[1:])
            if cuts.size == 0:
                continue
            sw = w_rows[order]
            swp = sw * y_rows[order]
            cum_w = np.cumsum(sw)[cuts]
            cum_wp = np.cumsum(swp)[cuts]
            right_w = w_total - cum_w
            right_wp = w_pos_total - cum_wp
            valid = (cum_w > 0) & (right_w > 0)
            if not valid.any():
                continue
            with np.errstate(invalid="ignore", divide="ignore"):
                pl = cum_wp / cum_w
                pr = right_wp / right_w
                child = (
                    cum_w * (1.0 - pl * pl - (1.0 - pl) * (1.0 - pl))
                    + right_w * (1.0 - pr * pr - (1.0 - pr) * (1.0 - pr))
                ) / w_total
            gain = np.where(valid, parent_gini - child, -np.inf)
            j = int(np.argmax(gain))
            if gain[j] > best_gain:
                best_gain = float(gain[j])
                pos = cuts[j]
                best = (f, (sv[pos] + sv[pos + 1]) / 2.0)
        return None if best is None else (best_gain, best[0], best[1])

    def _build(self, X, y, w, rows, depth):
        w_rows = w[rows]
        w_total = w_rows.sum()
        w_pos = w_rows[y[rows] == 1].sum()
        node = _Node(probability=float(w_pos / w_total), count=int(rows.size))
        if (
            (self.max_depth is not None and depth >= self.max_depth)
            or rows.size < self.min_samples_split
            or w_pos == 0.0
            or w_pos == w_total
        ):
            return node
        found = self._best_split(X, y, w, rows, self._gini(w_pos, w_total))
        if found is None:
            return node
        _, feature, threshold = found
        goes_left = X[rows, feature] <= threshold
        node.feature = feature
        node.threshold = float(threshold)
        node.left = self._build(X, y, w, rows[goes_left], depth + 1)
        node.right = self._build(X, y, w, rows[~goes_left], depth + 1)
        return node

    def fit(self, X, y, sample_weight=None):
        X, y, w = _check_training_inputs(X, y, sample_weight)
        self.n_features_in_ = X.shape[1]
        self.tree_ = self._build(X, y, w, np.arange(X.shape[0]), 0)
        return self

    def predict_proba(self, X):
        X, single = _check_predict_input(X, self.n_features_in_, self.tree_ is not None)
        out = np.empty(X.shape[0], dtype=np.float64)
        self._route(self.tree_, X, np.arange(X.shape[0]), out)
        return float(out[0]) if single else out

    def _route(self, node, X, rows, out):
        if node.is_leaf:
            out[rows] = node.probability
            return
        goes_left = X[rows, node.feature] <= node.threshold
        self._route(node.left, X, rows[goes_left], out)
        self._route(node.right, X, rows[~goes_left], out)

    def to_json_doc(self):
        if self.tree_ is None:
            raise ValueError("cannot serialize an unfitted tree")
        return {
            "kind": "tree",
            "params": {
                "max_depth": self.max_depth,
                "min_samples_split": self.min_samples_split,
                "min_impurity_decrease": self.min_impurity_decrease,
            },
            "n_features": self.n_features_in_,
            "root": _node_to_doc(self.tree_),
        }

    @classmethod
    def from_json_doc(cls, doc):
        if doc.get("kind") != "tree":
            raise ValueError(f"expected a tree document, got kind={doc.get('kind')!r}")
        model = cls(**doc["params"])
        model.n_features_in_ = int(doc["n_features"])
        model.tree_ = _node_from_doc(doc["root"])
        return model


class AdaBoostClassifier:
    """Discrete two-class AdaBoost over depth-limited trees.

    Each round fits a weak tree on the current sample weights, scores its
    weighted error, and multiplies misclassified weights by exp(stage weight)
    with stage weight = learning_rate * 0.5 * ln((1 - err) / err). A round
    with err >= 0.5 ends boosting early; a perfect round gets the capped
    stage weight 0.5 * ln(1e10) and boosting continues. Probabilities come
    from the stage-weight-normalized vote margin m in [-1, 1] mapped through
    1 / (1 + exp(-2 m)).
    """

    def __init__(self, n_estimators=10, weak_learner_depth=1, learning_rate=1.0):
        n_estimators = int(n_estimators)
        if n_estimators < 1:
            raise ValueError(f"n_estimators must be >= 1, got {n_estimators}")
        weak_learner_depth = int(weak_learner_depth)
        if weak_learner_depth < 1:
            raise ValueError(f"weak_learner_depth must be >= 1, got {weak_learner_depth}")
        learning_rate = float(learning_rate)
        if not learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {learning_rate}")
        self.n_estimators = n_estimators
        self.weak_learner_depth = weak_learner_depth
        self.learning_rate = learning_rate
        self.stages_ = None
        self.errors_ = None
        self.sample_weight_ = None
        self.n_features_in_ = None

    def fit(self, X, y, sample_weight=None):
        X, y, w = _check_training_inputs(X, y, sample_weight)
        if not (y == 1).any() or not (y == 0).any():
            raise ValueError("boosting requires both classes in the training data")
        w = w / w.sum()
        stages = []
        errors = []
        for _ in range(self.n_estimators):
            weak = DecisionTreeClassifier(max_depth=self.weak_learner_depth)
            weak.fit(X, y, sample_weight=w)
            predicted = weak.predict_proba(X) >= 0.5
            miss = predicted != (y == 1)
            err = float(w[miss].sum())
            if err >= 0.5:
                break
            if err == 0.0:
                stage_weight = self.learning_rate * 0.5 * math.log(_PERFECT_ROUND_ODDS)
            else:
                stage_weight = self.learning_rate * 0.5 * math.log((1.0 - err) / err)
            stages.append((stage_weight, weak))
            errors.append(err)
            if miss.any():
                w = w.copy()
                w[miss] *= math.exp(stage_weight)
                w = w / w.sum()
        self.stages_ = stages
        self.errors_ = errors
        self.sample_weight_ = w
        self.n_features_in_ = X.shape[1]
        return self

    def decision_margin(self, X):
        """Stage-weight-normalized vote in [-1, 1]; 0 for an empty vote."""
        X, single = _check_predict_input(X, self.n_features_in_, self.stages_ is not None)
        margin = np.zeros(X.shape[0], dtype=np.float64)
        total = 0.0
        for stage_weight, weak in self.stages_:
            vote = np.where(weak.predict_proba(X) >= 0.5, 1.0, -1.0)
            margin += stage_weight * vote
            total += stage_weight
        if total > 0:
            margin /= total
        return float(margin[0]) if single else margin

    def predict_proba(self, X):
        margin = self.decision_margin(X)
        if isinstance(margin, np.ndarray):
            return 1.0 / (1.0 + np.exp(-2.0 * margin))
        return 1.0 / (1.0 + math.exp(-2.0 * margin))

    def to_json_doc(self):
        if self.stages_ is None:
            raise ValueError("cannot serialize an unfitted booster")
        return {
            "kind": "adaboost",
            "params": {
                "n_estimators": self.n_estimators,
                "weak_learner_depth": self.weak_learner_depth,
                "learning_rate": self.learning_rate,
            },
            "n_features": self.n_features_in_,
            "stages": [
                {"weight": weight, "tree": weak.to_json_doc()}
                for weight, weak in self.stages_
            ],
        }

    @classmethod
    def from_json_doc(cls, doc):
        if doc.get("kind") != "adaboost":
            raise ValueError(
                f"expected an adaboost document, got kind={doc.get('kind')!r}"
            )
        model = cls(**doc["params"])
        model.n_features_in_ = int(doc["n_features"])
        model.stages_ = [
            (float(stage["weight"]), DecisionTreeClassifier.from_json_doc(stage["tree"]))
            for stage in doc["stages"]
        ]
        model.errors_ = None
        model.sample_weight_ = None
        return model


LEARNER_REGISTRY = {
    "tree": DecisionTreeClassifier,
    "adaboost": AdaBoostClassifier,
}


@dataclass(frozen=True)
class LearnerSpec:
    """Named base-learner recipe resolvable through LEARNER_REGISTRY."""

    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in LEARNER_REGISTRY:
            valid = " | ".join(sorted(LEARNER_REGISTRY))
            raise ValueError(f"unknown base learner {self.name!r}; valid: {valid}")

    def create(self):
        return LEARNER_REGISTRY[self.name](**self.params)


def learner_to_doc(model):
    """Serialize any learner exposing to_json_doc."""
    to_doc = getattr(model, "to_json_doc", None)
    if to_doc is None:
        raise ValueError(
            f"{type(model).__name__} does not support JSON serialization "
            f"(no to_json_doc method)"
        )
    return to_doc()


_DOC_READERS = {
    "tree": DecisionTreeClassifier.from_json_doc,
    "adaboost": AdaBoostClassifier.from_json_doc,
}


def learner_from_doc(doc):
    """Rebuild a learner from its JSON document, dispatching on doc["kind"]."""
    kind = doc.get("kind")
    try:
        reader = _DOC_READERS[kind]
    except KeyError:
        raise ValueError(f"unknown learner document kind {kind!r}") from None
    return reader(doc)
