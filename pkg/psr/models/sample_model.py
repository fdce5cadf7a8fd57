from dataclasses import dataclass, field

import numpy as np

from psr.errors import InvalidParameterError
from psr.models.filtration_model import CriticalValues


@dataclass(frozen=True)
class Sample:
    id: str
    label: str
    features: CriticalValues

    def __post_init__(self):
        if len(self.features) == 0:
            raise InvalidParameterError(f"Sample {self.id} has no features")


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    ids: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (len(self.ids), len(self.ids)):
            raise InvalidParameterError("Distance matrix shape does not match its ids")
        if not np.allclose(entries, entries.T) or np.any(np.diag(entries) != 0) or np.any(entries < 0):
            raise InvalidParameterError("Distance matrix must be symmetric, non-negative, zero on the diagonal")
        object.__setattr__(self, "entries", entries)

    def index(self, sample_id: str) -> int:
        return self.ids.index(sample_id)

    def distance(self, a: str, b: str) -> float:
        return float(self.entries[self.index(a), self.index(b)])


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    balanced_accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    matthews_corrcoef: float
    mcc_defined: bool = True
    test_fraction: float = 0.0
    repetition: int = 0
    predictions: dict[str, str] = field(default_factory=dict, hash=False, compare=False)

    METRICS = (
        "accuracy",
        "balanced_accuracy",
        "macro_precision",
        "macro_recall",
        "macro_f1",
        "matthews_corrcoef",
    )

    def metrics(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.METRICS}
