"""Temporal classification: can per-round metric vectors predict when the
round ran?

Three tasks derive labels from the round start timestamp: the 6-hour slot
of the day, the day of the week, and weekend membership. A multinomial
logistic regression is trained under stratified k-fold cross validation
and scored by accuracy against the task's random baseline.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from datetime import datetime, timezone, tzinfo
from enum import Enum

import numpy as np

from .catalog import MetricSpec, default_catalog
from .data import MeasurementSet
from .errors import ClassTooSmall, ConvergenceWarning, EmptySelection


class Task(str, Enum):
    TIMEDAY = "timeday"
    DAYWEEK = "dayweek"
    WEEKEND = "weekend"

    @property
    def baseline(self) -> float:
        """Accuracy of a uniform random predictor."""
        if self is Task.TIMEDAY:
            return 0.25
        if self is Task.DAYWEEK:
            return 1.0 / 7.0
        return 0.5


_TIMEDAY_BINS = ("night", "morning", "afternoon", "evening")
_DAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")


def derive_label(timestamp: datetime, task: Task, tz: tzinfo = timezone.utc) -> str:
    """Label of one round: half-open 6-hour bins for the time of day,
    weekday name, or weekend membership (Saturday/Sunday)."""
    local = timestamp.astimezone(tz)
    if task is Task.TIMEDAY:
        return _TIMEDAY_BINS[local.hour // 6]
    if task is Task.DAYWEEK:
        return _DAYS[local.weekday()]
    return "weekend" if local.weekday() >= 5 else "weekday"


@dataclass(frozen=True, eq=False)
class LabeledInstance:
    features: np.ndarray
    label: str
    provider: str
    timestamp: datetime
    vm: str
    imputed: tuple[str, ...]  # metric ids that had to be filled in


def build_instances(
    dataset: MeasurementSet,
    provider: str,
    task: Task,
    catalog: tuple[MetricSpec, ...] | None = None,
    tz: tzinfo = timezone.utc,
) -> list[LabeledInstance]:
    """One instance per (vm, round): the per-round metric means in catalog
    order, labeled from the round start timestamp.

    Metrics absent from a round are imputed with the provider-wide mean of
    that metric (0 if the provider never reports it) and flagged.
    """
    catalog = catalog or default_catalog()
    metric_order = [spec.id for spec in catalog]
    selection = dataset.select(provider=provider)
    if len(selection) == 0:
        raise EmptySelection(f"no measurements for provider {provider!r}")

    # (vm, round) -> metric -> values; plus the round start timestamp
    cells: dict[tuple, dict[str, list[float]]] = {}
    starts: dict[tuple, datetime] = {}
    for m in selection:
        key = (m.vm, m.round_index)
        cells.setdefault(key, {}).setdefault(m.metric, []).append(m.value)
        if key not in starts or m.timestamp < starts[key]:
            starts[key] = m.timestamp

    provider_totals: dict[str, list[float]] = {mid: [] for mid in metric_order}
    round_means: dict[tuple, dict[str, float]] = {}
    for key, metrics in cells.items():
        means = {}
        for mid, values in metrics.items():
            if mid in provider_totals:
                mean = sum(values) / len(values)
                means[mid] = mean
                provider_totals[mid].append(mean)
        round_means[key] = means
    fallback = {
        mid: (sum(vals) / len(vals) if vals else 0.0) for mid, vals in provider_totals.items()
    }

    instances = []
    for key in sorted(round_means, key=lambda k: (k[0].slug(), k[1])):
        means = round_means[key]
        features = np.empty(len(metric_order))
        imputed = []
        for i, mid in enumerate(metric_order):
            if mid in means:
                features[i] = means[mid]
            else:
                features[i] = fallback[mid]
                imputed.append(mid)
        instances.append(
            LabeledInstance(
                features,
                derive_label(starts[key], task, tz),
                provider,
                starts[key],
                key[0].slug(),
                tuple(imputed),
            )
        )
    return instances


def stratified_kfold(labels: list[str] | np.ndarray, k: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Partition indices into k folds preserving class proportions.

    Per-class counts across folds differ by at most one; the split is
    deterministic for a fixed seed.
    """
    labels = np.asarray(labels)
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for cls in sorted(np.unique(labels).tolist()):
        idx = np.flatnonzero(labels == cls)
        if idx.size < k:
            raise ClassTooSmall(str(cls), int(idx.size), k)
        rng.shuffle(idx)
        # rotate the starting fold so small remainders spread evenly
        for i, position in enumerate(idx):
            folds[(offset + i) % k].append(int(position))
        offset += idx.size % k
    return [np.array(sorted(f), dtype=np.intp) for f in folds]


@dataclass(frozen=True, eq=False)
class LogisticModel:
    classes: tuple[str, ...]
    weights: np.ndarray  # (n_features_kept, n_classes)
    bias: np.ndarray  # (n_classes,)
    feature_mean: np.ndarray
    feature_std: np.ndarray
    dropped: tuple[int, ...]  # zero-variance feature indices
    losses: tuple[float, ...]  # checkpoint losses, non-increasing

    def _standardize(self, X: np.ndarray) -> np.ndarray:
        Z = (np.asarray(X, dtype=np.float64) - self.feature_mean) / self.feature_std
        if self.dropped:
            Z = np.delete(Z, self.dropped, axis=1)
        return Z

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return _softmax(self._standardize(X) @ self.weights + self.bias)

    def predict(self, X: np.ndarray) -> list[str]:
        scores = self._standardize(X) @ self.weights + self.bias
        return [self.classes[i] for i in np.argmax(scores, axis=1)]


def _softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def train_logistic(
    X: np.ndarray,
    labels: list[str] | np.ndarray,
    l2: float = 1e-3,
    iterations: int = 2000,
    learning_rate: float = 0.5,
    checkpoint_every: int = 50,
) -> LogisticModel:
    """Multinomial logistic regression by full-batch gradient descent.

    Features are standardized with statistics from this training set;
    zero-variance features are dropped and recorded. The learning rate
    halves whenever a checkpoint loss fails to improve, so the recorded
    checkpoint losses are non-increasing. Hitting the iteration budget
    with a still-moving gradient emits a ConvergenceWarning but the model
    is returned anyway.
    """
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels)
    classes = tuple(sorted(np.unique(labels).tolist()))
    if len(classes) < 2:
        raise ValueError("need at least 2 classes to train")

    mean = X.mean(axis=0)
    std = X.std(axis=0)
    dropped = tuple(int(i) for i in np.flatnonzero(std == 0.0))
    std_safe = np.where(std == 0.0, 1.0, std)
    Z = (X - mean) / std_safe
    if dropped:
        Z = np.delete(Z, dropped, axis=1)

    n, d = Z.shape
    k = len(classes)
    class_index = {c: i for i, c in enumerate(classes)}
    Y = np.zeros((n, k))
    Y[np.arange(n), [class_index[c] for c in labels]] = 1.0

    W = np.zeros((d, k))
    b = np.zeros(k)
    best = (W.copy(), b.copy())
    lr = learning_rate
    losses: list[float] = []
    best_loss = np.inf
    grad_norm = np.inf

    for it in range(1, iterations + 1):
        P = _softmax(Z @ W + b)
        G = (P - Y) / n
        grad_w = Z.T @ G + l2 * W
        grad_b = G.sum(axis=0)
        W -= lr * grad_w
        b -= lr * grad_b
        if it % checkpoint_every == 0 or it == iterations:
            P = _softmax(Z @ W + b)
            loss = float(
                -np.mean(np.log(np.clip(P[np.arange(n), np.argmax(Y, axis=1)], 1e-300, None)))
                + 0.5 * l2 * np.sum(W * W)
            )
            grad_norm = float(np.max(np.abs(Z.T @ ((P - Y) / n) + l2 * W)))
            if loss < best_loss:
                best_loss = loss
                best = (W.copy(), b.copy())
            else:
                # step overshot; back off and restart from the best point
                lr *= 0.5
                W, b = best[0].copy(), best[1].copy()
            losses.append(best_loss)

    if grad_norm > 1e-3:
        warnings.warn(
            f"gradient still {grad_norm:.2e} after {iterations} iterations",
            ConvergenceWarning,
            stacklevel=2,
        )
    return LogisticModel(classes, best[0], best[1], mean, std_safe, dropped, tuple(losses))


@dataclass(frozen=True)
class TaskResult:
    task: Task
    provider: str
    mean_accuracy: float
    std_accuracy: float
    baseline: float
    fold_accuracies: tuple[float, ...]
    n_instances: int


def run_task(
    dataset: MeasurementSet,
    provider: str,
    task: Task,
    k: int = 10,
    seed: int = 0,
    tz: tzinfo = timezone.utc,
    l2: float = 1e-3,
    iterations: int = 2000,
) -> TaskResult:
    """Stratified k-fold cross validation of one task for one provider."""
    instances = build_instances(dataset, provider, task, tz=tz)
    X = np.vstack([inst.features for inst in instances])
    y = np.array([inst.label for inst in instances])
    folds = stratified_kfold(y, k=k, seed=seed)

    accuracies = []
    everything = np.arange(len(y))
    for fold in folds:
        train_idx = np.setdiff1d(everything, fold)
        model = train_logistic(X[train_idx], y[train_idx], l2=l2, iterations=iterations)
        predicted = model.predict(X[fold])
        accuracies.append(float(np.mean(np.asarray(predicted) == y[fold])))

    return TaskResult(
        task,
        provider,
        float(np.mean(accuracies)),
        float(np.std(accuracies)),
        task.baseline,
        tuple(accuracies),
        len(instances),
    )
