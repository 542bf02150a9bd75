"""scikit-learn style wrappers around normalization and partitioning.

Both estimators take pandas objects indexed by game name (one column per
method), so they compose with pipelines and ``get_params``/``set_params``.
"""

from __future__ import annotations

import numpy as np
import pandas as pd
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .aggregates import subset_means, sym_hns
from .core_data import embedded_reference
from .exceptions import DegenerateBaselineError, ValidationError
from .partition import DEFAULT_THRESHOLD, derive_partition
from .reference import BASELINE_METHODS


def _as_frame(X, name="X"):
    if isinstance(X, pd.Series):
        X = X.to_frame()
    elif isinstance(X, dict):
        X = pd.DataFrame(X)
    if not isinstance(X, pd.DataFrame):
        raise ValidationError(f"{name} must be a pandas DataFrame/Series indexed by game")
    if X.index.has_duplicates:
        raise ValidationError(f"{name} has duplicate games in its index")
    if not np.all(np.isfinite(X.to_numpy(dtype=float))):
        raise ValidationError(f"{name} must be finite")
    return X


class HumanNormalizer(TransformerMixin, BaseEstimator):
    """Map raw game scores to human-normalized scores.

    Parameters
    ----------
    random_scores, human_scores : mapping of game -> float, optional
        Per-game baselines. When omitted, the embedded Atari100k baselines are used.
    """

    def __init__(self, random_scores=None, human_scores=None):
        self.random_scores = random_scores
        self.human_scores = human_scores

    def fit(self, X, y=None):
        X = _as_frame(X)
        if self.random_scores is None or self.human_scores is None:
            meta = embedded_reference().full.meta
            random_scores = {g: m.random_score for g, m in meta.items()}
            human_scores = {g: m.human_score for g, m in meta.items()}
        else:
            random_scores, human_scores = self.random_scores, self.human_scores
        missing = [g for g in X.index if g not in random_scores or g not in human_scores]
        if missing:
            raise ValidationError(f"no baselines for: {', '.join(map(str, missing))}")
        self.games_ = list(X.index)
        self.random_ = np.array([random_scores[g] for g in self.games_], dtype=float)
        self.human_ = np.array([human_scores[g] for g in self.games_], dtype=float)
        degenerate = [g for g, r, h in zip(self.games_, self.random_, self.human_) if r == h]
        if degenerate:
            raise DegenerateBaselineError(f"human equals random for: {', '.join(degenerate)}")
        self.n_features_in_ = X.shape[1]
        return self

    def _align(self, X):
        check_is_fitted(self, "games_")
        X = _as_frame(X)
        unknown = [g for g in X.index if g not in self.games_]
        if unknown:
            raise ValidationError(f"games not seen in fit: {', '.join(map(str, unknown))}")
        pos = [self.games_.index(g) for g in X.index]
        return X, self.random_[pos][:, None], self.human_[pos][:, None]

    def transform(self, X):
        X, lo, hi = self._align(X)
        return pd.DataFrame((X.to_numpy(dtype=float) - lo) / (hi - lo), index=X.index, columns=X.columns)

    def inverse_transform(self, X):
        X, lo, hi = self._align(X)
        return pd.DataFrame(X.to_numpy(dtype=float) * (hi - lo) + lo, index=X.index, columns=X.columns)


class AsymmetryPartitioner(BaseEstimator):
    """Learn the Agent-Optimal / Human-Optimal split from reference HNS.

    ``fit`` averages the ``reference_methods`` columns of an HNS frame (a
    Series is taken as the averaged reference directly) and labels games
    whose average exceeds ``threshold`` as ``"AO"``.
    """

    def __init__(self, threshold=DEFAULT_THRESHOLD, reference_methods=BASELINE_METHODS):
        self.threshold = threshold
        self.reference_methods = reference_methods

    def fit(self, X, y=None):
        if isinstance(X, pd.Series):
            reference = X.astype(float)
            methods = ()
        else:
            X = _as_frame(X)
            methods = [m for m in self.reference_methods if m in X.columns]
            if not methods:
                raise ValidationError("none of the reference methods appear in X")
            reference = X[methods].mean(axis=1)
        self.reference_hns_ = reference
        self.partition_ = derive_partition(reference.to_dict(), self.threshold, methods)
        self.labels_ = pd.Series({g: lab.value for g, lab in self.partition_.labels.items()}, name="label")
        return self

    def predict(self, games):
        check_is_fitted(self, "partition_")
        if isinstance(games, (pd.DataFrame, pd.Series)):
            games = games.index
        return np.array([self.partition_[g].value for g in games])

    def transform(self, X):
        """Subset mean HNS: one row per label, one column per method."""
        check_is_fitted(self, "partition_")
        X = _as_frame(X)
        return pd.DataFrame({m: subset_means(X[m].to_dict(), self.partition_) for m in X.columns})

    def fit_transform(self, X, y=None):
        return self.fit(X).transform(X)

    def score(self, X, y=None):
        """Sym-HNS of a single method's per-game HNS (a Series or one-column frame)."""
        check_is_fitted(self, "partition_")
        X = _as_frame(X)
        if X.shape[1] != 1:
            raise ValidationError("score expects the HNS of exactly one method")
        return sym_hns(X.iloc[:, 0].to_dict(), self.partition_)
