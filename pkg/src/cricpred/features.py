"""Feature pipeline: k-1 dummy encoding with group metadata, and grouped
recursive feature elimination over the original (pre-encoding) features."""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .dataset import MatchDataset, label_of
from .errors import EmptyDataset, TargetTooLarge, TooFewRows
from .models.linear import fit_logistic, sigmoid
from .strength import TeamWeightLedger, lookup_weights

CATEGORICAL_FEATURES = ["home_team", "away_team", "toss_winner", "toss_decision", "venue"]
NUMERIC_FEATURES = ["home_team_weight", "away_team_weight"]


@dataclass(frozen=True)
class FeatureSchema:
    """Column layout: per categorical group the lexicographically first
    category is dropped; numeric columns follow the dummy blocks."""

    categorical_groups: tuple  # of (name, tuple of sorted categories)
    numeric_features: tuple = field(default=tuple(NUMERIC_FEATURES))

    @property
    def total_columns(self):
        return (sum(len(cats) - 1 for _, cats in self.categorical_groups)
                + len(self.numeric_features))

    def feature_names(self):
        return [name for name, _ in self.categorical_groups] + list(self.numeric_features)

    def column_names(self):
        names = []
        for name, cats in self.categorical_groups:
            names.extend(f"{name}={c}" for c in cats[1:])
        names.extend(self.numeric_features)
        return names

    def group_slices(self):
        """Original feature name -> (start, stop) column range."""
        slices = {}
        start = 0
        for name, cats in self.categorical_groups:
            width = len(cats) - 1
            slices[name] = (start, start + width)
            start += width
        for name in self.numeric_features:
            slices[name] = (start, start + 1)
            start += 1
        return slices

    def binary_mask(self):
        mask = np.zeros(self.total_columns, dtype=bool)
        n_dummy = self.total_columns - len(self.numeric_features)
        mask[:n_dummy] = True
        return mask

    def dropped_category(self, name):
        for group, cats in self.categorical_groups:
            if group == name:
                return cats[0]
        raise KeyError(name)

    def to_dict(self):
        return {
            "categorical_groups": [
                {"name": name, "categories": list(cats)}
                for name, cats in self.categorical_groups
            ],
            "numeric_features": list(self.numeric_features),
        }

    @classmethod
    def from_dict(cls, doc):
        return cls(
            categorical_groups=tuple(
                (g["name"], tuple(g["categories"])) for g in doc["categorical_groups"]),
            numeric_features=tuple(doc["numeric_features"]))

    def fingerprint(self):
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class EncodedDataset:
    X: np.ndarray
    y: np.ndarray
    schema: FeatureSchema
    row_ids: tuple

    def subset(self, feature_names):
        """Restrict to the given original features, rebuilding the schema."""
        keep = set(feature_names)
        slices = self.schema.group_slices()
        new_schema = FeatureSchema(
            categorical_groups=tuple(
                (n, c) for n, c in self.schema.categorical_groups if n in keep),
            numeric_features=tuple(
                n for n in self.schema.numeric_features if n in keep))
        cols = []
        for name in new_schema.feature_names():
            start, stop = slices[name]
            cols.extend(range(start, stop))
        return EncodedDataset(X=self.X[:, cols], y=self.y,
                              schema=new_schema, row_ids=self.row_ids)


def build_schema(dataset: MatchDataset) -> FeatureSchema:
    """Schema over the categories observed in the dataset."""
    if not dataset.matches:
        raise EmptyDataset("cannot build a schema from an empty dataset")
    observed = {name: set() for name in CATEGORICAL_FEATURES}
    for m in dataset.matches:
        observed["home_team"].add(m.home_team)
        observed["away_team"].add(m.away_team)
        observed["toss_winner"].add(m.toss_winner)
        observed["toss_decision"].add(m.toss_decision)
        observed["venue"].add(m.venue)
    groups = tuple((name, tuple(sorted(observed[name]))) for name in CATEGORICAL_FEATURES)
    return FeatureSchema(categorical_groups=groups)


def encode_values(schema: FeatureSchema, categorical: dict, numeric: dict) -> np.ndarray:
    """Encode one observation. Unseen categories map to the all-zero block
    (same as the dropped category) with a warning."""
    row = np.zeros(schema.total_columns)
    start = 0
    for name, cats in schema.categorical_groups:
        width = len(cats) - 1
        value = categorical[name]
        if value not in cats:
            warnings.warn(
                f"unseen {name} category {value!r}; encoding as the dropped category",
                stacklevel=2)
        elif value != cats[0]:
            row[start + cats.index(value) - 1] = 1.0
        start += width
    for name in schema.numeric_features:
        row[start] = numeric[name]
        start += 1
    return row


def decode_row(schema: FeatureSchema, row) -> dict:
    """Recover the categorical values of an encoded row."""
    values = {}
    start = 0
    for name, cats in schema.categorical_groups:
        width = len(cats) - 1
        block = row[start:start + width]
        hot = np.flatnonzero(block)
        values[name] = cats[0] if hot.size == 0 else cats[int(hot[0]) + 1]
        start += width
    return values


def encode(dataset: MatchDataset, ledger: TeamWeightLedger,
           schema: FeatureSchema) -> EncodedDataset:
    """One row per decisive match, in date order."""
    rows, labels, ids = [], [], []
    for m in dataset.matches:
        if not m.has_result:
            continue
        w1, w2 = lookup_weights(ledger, m)
        rows.append(encode_values(
            schema,
            {"home_team": m.home_team, "away_team": m.away_team,
             "toss_winner": m.toss_winner, "toss_decision": m.toss_decision,
             "venue": m.venue},
            {"home_team_weight": w1, "away_team_weight": w2}))
        labels.append(label_of(m))
        ids.append(m.match_id)
    n = len(rows)
    X = np.array(rows) if rows else np.zeros((0, schema.total_columns))
    return EncodedDataset(X=X.reshape(n, schema.total_columns),
                          y=np.array(labels, dtype=np.int64),
                          schema=schema, row_ids=tuple(ids))


@dataclass(frozen=True)
class RfeResult:
    ranking: tuple          # original feature names, best first
    selected: tuple         # prefix of ranking, length = target_count
    per_subset_scores: tuple  # of (subset size, CV accuracy), main run
    stability_runs: int
    stability_agreement: float
    resample_selected: tuple


def _standardize(X):
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std < 1e-12, 1.0, std)
    return (X - mean) / std


def _subset_cv_accuracy(X, y, seed, folds=5):
    from .evaluation import stratified_folds
    fold_sets = stratified_folds(y, folds, seed)
    correct = 0
    for fold in fold_sets:
        mask = np.ones(len(y), dtype=bool)
        mask[fold] = False
        w, b = fit_logistic(X[mask], y[mask], max_iter=300)
        pred = (sigmoid(X[fold] @ w + b) >= 0.5).astype(int)
        correct += int(np.sum(pred == y[fold]))
    return correct / len(y)


def _rank_once(X, y, schema, seed):
    """One full elimination pass; returns (ranking best-first, subset scores)."""
    slices = schema.group_slices()
    remaining = schema.feature_names()
    eliminated = []
    scores = []
    while remaining:
        cols = [c for f in remaining for c in range(*slices[f])]
        Xs = _standardize(X[:, cols])
        scores.append((len(remaining), _subset_cv_accuracy(Xs, y, seed)))
        if len(remaining) == 1:
            eliminated.append(remaining.pop())
            break
        w, _ = fit_logistic(Xs, y, max_iter=300)
        importances = []
        pos = 0
        for f in remaining:
            width = slices[f][1] - slices[f][0]
            importances.append(float(np.max(np.abs(w[pos:pos + width]))))
            pos += width
        victim = remaining[int(np.argmin(importances))]
        remaining.remove(victim)
        eliminated.append(victim)
    return list(reversed(eliminated)), scores


def rfe_select(encoded: EncodedDataset, target_count: int, resamples: int = 5,
               seed: int = 0) -> RfeResult:
    """Grouped recursive feature elimination with a bootstrap stability check.

    A categorical feature is kept or dropped as a whole; its importance is
    the largest standardized logistic coefficient over its dummy block.
    """
    n_features = len(encoded.schema.feature_names())
    if encoded.X.shape[0] < 20:
        raise TooFewRows(f"need at least 20 rows, got {encoded.X.shape[0]}")
    if not 1 <= target_count <= n_features:
        raise TargetTooLarge(
            f"target_count {target_count} outside [1, {n_features}]")
    ranking, scores = _rank_once(encoded.X, encoded.y, encoded.schema, seed)
    selected = tuple(ranking[:target_count])
    resample_selected = []
    agree = 0
    for r in range(resamples):
        rng = np.random.default_rng([seed, r])
        sample = rng.integers(0, encoded.X.shape[0], size=encoded.X.shape[0])
        r_ranking, _ = _rank_once(encoded.X[sample], encoded.y[sample],
                                  encoded.schema, seed)
        picked = tuple(r_ranking[:target_count])
        resample_selected.append(picked)
        if set(picked) == set(selected):
            agree += 1
    agreement = agree / resamples if resamples else 1.0
    return RfeResult(ranking=tuple(ranking), selected=selected,
                     per_subset_scores=tuple(scores), stability_runs=resamples,
                     stability_agreement=agreement,
                     resample_selected=tuple(resample_selected))
