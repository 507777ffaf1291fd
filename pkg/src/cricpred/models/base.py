"""Uniform train / predict-probability interface over the six classifiers,
plus the JSON model-document format."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from ..errors import (
    CorruptDocument,
    InvalidHyperparameter,
    SchemaMismatch,
    SingleClassData,
    VersionMismatch,
)
from ..scoring import PointsModel
from ..strength import TeamWeightLedger
from . import ensemble, linear, mlp, naive_bayes

FORMAT_VERSION = 1
LABEL_CONVENTION = "1=home_team_win"

KINDS = ["naive_bayes", "gradient_boosting", "linear_svm",
         "logistic_regression", "random_forest", "mlp"]

# (default, validator) per hyperparameter
_POSITIVE = lambda v: v > 0  # noqa: E731
_COUNT = lambda v: isinstance(v, int) and v >= 1  # noqa: E731
_NONNEG = lambda v: v >= 0  # noqa: E731

DEFAULT_HYPERPARAMETERS = {
    "naive_bayes": {},
    "gradient_boosting": {
        "n_rounds": (100, _COUNT),
        "shrinkage": (0.1, _POSITIVE),
        "max_depth": (3, _COUNT),
    },
    "linear_svm": {
        "l2": (1e-4, _POSITIVE),
        "epochs": (200, _COUNT),
    },
    "logistic_regression": {
        "l2": (1e-4, _NONNEG),
        "learning_rate": (0.1, _POSITIVE),
        "max_iter": (2000, _COUNT),
        "tol": (1e-8, _POSITIVE),
    },
    "random_forest": {
        "n_trees": (100, _COUNT),
        "min_leaf": (1, _COUNT),
        "max_depth": (None, lambda v: v is None or (isinstance(v, int) and v >= 0)),
        "bootstrap": (True, lambda v: isinstance(v, bool)),
    },
    "mlp": {
        "l2": (1e-4, _NONNEG),
        "learning_rate": (0.001, _POSITIVE),
        "epochs": (300, _COUNT),
        "batch_size": (32, _COUNT),
        "patience": (20, _COUNT),
    },
}


@dataclass(frozen=True)
class ClassifierSpec:
    kind: str
    hyperparameters: dict = field(default_factory=dict)
    seed: int = 0

    def resolved_hyperparameters(self):
        table = DEFAULT_HYPERPARAMETERS[self.kind]
        unknown = set(self.hyperparameters) - set(table)
        if unknown:
            raise InvalidHyperparameter(
                f"unknown hyperparameter(s) for {self.kind}: {sorted(unknown)}")
        resolved = {}
        for name, (default, check) in table.items():
            value = self.hyperparameters.get(name, default)
            if not check(value):
                raise InvalidHyperparameter(
                    f"{self.kind}.{name}={value!r} out of range")
            resolved[name] = value
        return resolved

    def to_dict(self):
        return {"kind": self.kind,
                "hyperparameters": dict(self.hyperparameters),
                "seed": self.seed}

    @classmethod
    def from_dict(cls, doc):
        return cls(kind=doc["kind"], hyperparameters=dict(doc["hyperparameters"]),
                   seed=int(doc["seed"]))


def make_spec(kind: str, seed: int = 0, **hyperparameters) -> ClassifierSpec:
    if kind not in KINDS:
        raise InvalidHyperparameter(
            f"unknown classifier kind {kind!r}; choose from {KINDS}")
    spec = ClassifierSpec(kind=kind, hyperparameters=hyperparameters, seed=seed)
    spec.resolved_hyperparameters()  # validate eagerly
    return spec


_PREDICTORS = {
    "naive_bayes": naive_bayes.predict_naive_bayes,
    "gradient_boosting": ensemble.predict_gradient_boosting,
    "linear_svm": linear.predict_linear_svm,
    "logistic_regression": linear.predict_logistic,
    "random_forest": ensemble.predict_random_forest,
    "mlp": mlp.predict_mlp,
}


@dataclass(frozen=True)
class TrainedClassifier:
    spec: ClassifierSpec
    parameters: dict
    schema: FeatureSchema
    training_rows: int

    @property
    def schema_fingerprint(self):
        return self.schema.fingerprint()

    def predict_proba_matrix(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.schema.total_columns:
            raise SchemaMismatch(
                f"row has {X.shape[1]} columns, model expects "
                f"{self.schema.total_columns}")
        return _PREDICTORS[self.spec.kind](self.parameters, X)

    def predict_proba(self, row) -> float:
        return float(self.predict_proba_matrix(np.atleast_2d(row))[0])

    def predict(self, row) -> int:
        # exact 0.5 resolves to class 1
        return 1 if self.predict_proba(row) >= 0.5 else 0


def train(spec: ClassifierSpec, data) -> TrainedClassifier:
    """Train one classifier; deterministic given (spec, data)."""
    if spec.kind not in KINDS:
        raise InvalidHyperparameter(f"unknown classifier kind {spec.kind!r}")
    hp = spec.resolved_hyperparameters()
    y = np.asarray(data.y, dtype=np.float64)
    if y.size == 0 or len(np.unique(y)) < 2:
        raise SingleClassData("training data must contain both classes")
    X = np.asarray(data.X, dtype=np.float64)
    if spec.kind == "naive_bayes":
        params = naive_bayes.train_naive_bayes(
            X, y, hp, spec.seed, data.schema.binary_mask())
    elif spec.kind == "gradient_boosting":
        params = ensemble.train_gradient_boosting(X, y, hp, spec.seed)
    elif spec.kind == "linear_svm":
        params = linear.train_linear_svm(X, y, hp, spec.seed)
    elif spec.kind == "logistic_regression":
        params = linear.train_logistic(X, y, hp, spec.seed)
    elif spec.kind == "random_forest":
        params = ensemble.train_random_forest(X, y, hp, spec.seed)
    else:
        params = mlp.train_mlp(X, y, hp, spec.seed)
    return TrainedClassifier(spec=spec, parameters=params,
                             schema=data.schema, training_rows=int(y.size))


def _plain(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


@dataclass(frozen=True)
class ModelDocument:
    model: TrainedClassifier
    points_model: PointsModel | None = None
    ledger: TeamWeightLedger | None = None


def serialize(model: TrainedClassifier, points_model: PointsModel | None = None,
              ledger: TeamWeightLedger | None = None) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "label_convention": LABEL_CONVENTION,
        "spec": model.spec.to_dict(),
        "schema": model.schema.to_dict(),
        "schema_fingerprint": model.schema_fingerprint,
        "training_rows": model.training_rows,
        "points_model": points_model.to_dict() if points_model else None,
        "team_weights": ledger.to_dict() if ledger else None,
        "parameters": _plain(model.parameters),
    }


def deserialize(doc: dict) -> ModelDocument:
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise CorruptDocument("model document lacks a format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise VersionMismatch(
            f"unsupported format_version {doc['format_version']!r}, "
            f"expected {FORMAT_VERSION}")
    from ..features import FeatureSchema

    try:
        spec = ClassifierSpec.from_dict(doc["spec"])
        schema = FeatureSchema.from_dict(doc["schema"])
        model = TrainedClassifier(
            spec=spec, parameters=doc["parameters"], schema=schema,
            training_rows=int(doc["training_rows"]))
        points = (PointsModel.from_dict(doc["points_model"])
                  if doc.get("points_model") else None)
        ledger = (TeamWeightLedger.from_dict(doc["team_weights"])
                  if doc.get("team_weights") else None)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptDocument(f"malformed model document: {exc}") from None
    return ModelDocument(model=model, points_model=points, ledger=ledger)


def save_document(doc: dict, path):
    """Atomic UTF-8 JSON write."""
    payload = json.dumps(doc, indent=2, sort_keys=True)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(payload)
        fh.write("\n")
    os.replace(tmp, path)


def load_document(path) -> ModelDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CorruptDocument(f"{path}: not valid JSON ({exc})") from None
    return deserialize(doc)
