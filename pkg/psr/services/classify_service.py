import math
from collections import Counter
from dataclasses import replace
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from joblib import Parallel, delayed
from sklearn.metrics import (
    accuracy_score,
    balanced_accuracy_score,
    f1_score,
    matthews_corrcoef,
    precision_score,
    recall_score,
)
from sklearn.model_selection import train_test_split

from psr.config import RunConfig
from psr.errors import EvaluationError, InvalidParameterError
from psr.logger import get_logger
from psr.models.filtration_model import CriticalValues, PointCloud
from psr.models.sample_model import DistanceMatrix, EvalReport, Sample
from psr.services.filtration_service import filtration_service
from psr.services.homology_service import homology_service
from psr.services.metric_service import metric_service
from psr.utils.xyz_parser import parse_xyz

logger = get_logger(__name__)

FEATURE_KINDS = ("critical", "homology")
MAX_SPLIT_RETRIES = 20


def _row_distances(i: int, features: list[tuple[float, ...]]) -> list[float]:
    return [metric_service.hausdorff(features[i], features[j]) for j in range(i + 1, len(features))]


def _split(ids: list[str], labels: list[str], test_fraction: float, seed: int):
    try:
        return train_test_split(ids, test_size=test_fraction, random_state=seed, stratify=labels)
    except ValueError:
        # a class too small to stratify; fall back to a plain shuffle
        return train_test_split(ids, test_size=test_fraction, random_state=seed)


def _run_repetition(
    matrix: DistanceMatrix,
    labels: Mapping[str, str],
    k: int,
    test_fraction: float,
    repetition: int,
    seed_sequence: np.random.SeedSequence,
) -> EvalReport:
    ids = sorted(labels)
    y = [labels[i] for i in ids]
    classes = set(y)
    for attempt, child in enumerate(seed_sequence.spawn(MAX_SPLIT_RETRIES)):
        train, test = _split(ids, y, test_fraction, int(child.generate_state(1)[0]))
        missing = classes - {labels[i] for i in train}
        if not missing:
            break
        logger.warning(
            f"Repetition {repetition}: classes {sorted(missing)} absent from training, resampling (attempt {attempt + 1})"
        )
    else:
        raise EvaluationError(
            f"Could not draw a split with every class in training after {MAX_SPLIT_RETRIES} attempts"
        )
    if k > len(train):
        raise InvalidParameterError(f"k={k} exceeds the {len(train)} training samples")

    predictions = ClassifyService.knn_predict(matrix, {i: labels[i] for i in train}, k, test)
    y_true = [labels[i] for i in test]
    y_pred = [predictions[i] for i in test]
    report = ClassifyService.score(y_true, y_pred, test_fraction, repetition)
    return replace(report, predictions=predictions)


class ClassifyService:
    @staticmethod
    def extract_features(cloud: PointCloud, config: RunConfig) -> CriticalValues:
        """Critical values of the Vietoris-Rips filtration, clipped to the radius range."""
        filtration = filtration_service.from_config(cloud, config)
        critical = filtration_service.critical_values(filtration, config.precision)
        return critical.clip(config.radius_min, config.radius_max)

    @staticmethod
    def homology_features(cloud: PointCloud, config: RunConfig) -> CriticalValues:
        """Baseline featurization: finite barcode endpoints in dimensions 0 and 1."""
        filtration = filtration_service.from_config(cloud, config, max_dim=max(config.max_dim, 2))
        barcode = homology_service.persistence_barcode(filtration, max_dim=1)
        endpoints = set()
        for interval in barcode.intervals:
            endpoints.add(round(interval.birth, config.precision))
            if math.isfinite(interval.death):
                endpoints.add(round(interval.death, config.precision))
        return CriticalValues(tuple(sorted(endpoints))).clip(config.radius_min, config.radius_max)

    @staticmethod
    def build_samples(
        manifest: Sequence[tuple[str, str, Path]], config: RunConfig, features: str = "critical"
    ) -> list[Sample]:
        if features not in FEATURE_KINDS:
            raise InvalidParameterError(f"Unknown feature kind {features!r}; use one of {FEATURE_KINDS}")
        extract = (
            ClassifyService.extract_features if features == "critical" else ClassifyService.homology_features
        )
        samples = []
        for sample_id, label, path in manifest:
            samples.append(Sample(sample_id, label, extract(parse_xyz(path), config)))
        logger.info(f"Extracted {features} features for {len(samples)} samples")
        return samples

    @staticmethod
    def pairwise_distances(samples: Sequence[Sample], threads: int = 1) -> DistanceMatrix:
        """Hausdorff distances between the feature sets of every pair of samples."""
        if len(samples) < 2:
            raise EvaluationError("Pairwise distances need at least 2 samples")
        ids = [s.id for s in samples]
        if len(set(ids)) != len(ids):
            raise InvalidParameterError("Sample ids must be unique")
        features = [tuple(s.features.values) for s in samples]
        if threads > 1:
            rows = Parallel(n_jobs=threads)(delayed(_row_distances)(i, features) for i in range(len(ids)))
        else:
            rows = [_row_distances(i, features) for i in range(len(ids))]
        entries = np.zeros((len(ids), len(ids)))
        for i, row in enumerate(rows):
            entries[i, i + 1 :] = row
            entries[i + 1 :, i] = row
        return DistanceMatrix(tuple(ids), entries)

    @staticmethod
    def knn_predict(
        matrix: DistanceMatrix, labels: Mapping[str, str], k: int, query_ids: Sequence[str]
    ) -> dict[str, str]:
        """Majority vote among the k nearest training samples."""
        training = sorted(labels)
        if not 1 <= k <= len(training):
            raise InvalidParameterError(f"k must be in [1, {len(training)}], got {k}")
        columns = [matrix.index(i) for i in training]
        predictions = {}
        for query in query_ids:
            row = matrix.entries[matrix.index(query)]
            # (distance, id) order settles equidistant neighbours
            ranked = sorted(zip(row[columns], training))[:k]
            votes: Counter = Counter()
            total: dict[str, float] = {}
            for distance, neighbor in ranked:
                label = labels[neighbor]
                votes[label] += 1
                total[label] = total.get(label, 0.0) + float(distance)
            # most votes, then smaller total distance, then label
            predictions[query] = min(votes, key=lambda label: (-votes[label], total[label], label))
        return predictions

    @staticmethod
    def score(
        y_true: Sequence[str], y_pred: Sequence[str], test_fraction: float = 0.0, repetition: int = 0
    ) -> EvalReport:
        classes = sorted(set(y_true) | set(y_pred))
        mcc_defined = len(set(y_true)) > 1 and len(set(y_pred)) > 1
        if not mcc_defined:
            logger.warning("Matthews correlation is undefined when truth or prediction is constant; reporting 0")
        return EvalReport(
            accuracy=float(accuracy_score(y_true, y_pred)),
            balanced_accuracy=float(balanced_accuracy_score(y_true, y_pred)),
            macro_precision=float(precision_score(y_true, y_pred, labels=classes, average="macro", zero_division=0)),
            macro_recall=float(recall_score(y_true, y_pred, labels=classes, average="macro", zero_division=0)),
            macro_f1=float(f1_score(y_true, y_pred, labels=classes, average="macro", zero_division=0)),
            matthews_corrcoef=float(matthews_corrcoef(y_true, y_pred)) if mcc_defined else 0.0,
            mcc_defined=mcc_defined,
            test_fraction=test_fraction,
            repetition=repetition,
        )

    @staticmethod
    def evaluate(
        matrix: DistanceMatrix,
        labels: Mapping[str, str],
        k: int,
        test_fraction: float,
        repetitions: int,
        seed: int = 0,
        threads: int = 1,
    ) -> list[EvalReport]:
        """Repeated stratified train/test splits, each scored with six metrics."""
        if not 0 < test_fraction < 1:
            raise InvalidParameterError(f"test_fraction must be in (0, 1), got {test_fraction}")
        if repetitions < 1:
            raise InvalidParameterError(f"repetitions must be >= 1, got {repetitions}")
        unknown = set(labels) - set(matrix.ids)
        if unknown:
            raise InvalidParameterError(f"Labels for ids missing from the distance matrix: {sorted(unknown)}")
        seeds = np.random.SeedSequence(seed).spawn(repetitions)
        if threads > 1:
            reports = Parallel(n_jobs=threads)(
                delayed(_run_repetition)(matrix, labels, k, test_fraction, r, s) for r, s in enumerate(seeds)
            )
        else:
            reports = [_run_repetition(matrix, labels, k, test_fraction, r, s) for r, s in enumerate(seeds)]
        logger.info(
            f"Evaluated {repetitions} splits at test fraction {test_fraction}: "
            f"mean accuracy {np.mean([r.accuracy for r in reports]):.4f}"
        )
        return list(reports)

    @staticmethod
    def aggregate(reports: Sequence[EvalReport]) -> dict[str, dict[str, float]]:
        if not reports:
            raise EvaluationError("No evaluation reports to aggregate")
        summary = {}
        for name in EvalReport.METRICS:
            values = np.array([getattr(r, name) for r in reports], dtype=float)
            summary[name] = {"mean": float(values.mean()), "std": float(values.std())}
        return summary


classify_service = ClassifyService()
