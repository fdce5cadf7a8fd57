from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from psr.models.sample_model import EvalReport


class ManifestRow(BaseModel):
    id: str = Field(..., min_length=1)
    label: str = Field(..., min_length=1)
    path: Path

    @field_validator("id", "label")
    @classmethod
    def strip_text(cls, v):
        v = v.strip()
        if not v:
            raise ValueError("must not be blank")
        return v


class EvalReportDocument(BaseModel):
    test_fraction: float
    repetition: int
    accuracy: float
    balanced_accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    matthews_corrcoef: float
    mcc_defined: bool = True
    predictions: dict[str, str] = Field(default_factory=dict)

    def to_domain(self) -> EvalReport:
        return EvalReport(**self.model_dump())

    @classmethod
    def from_domain(cls, report: EvalReport, precision: int = 9) -> "EvalReportDocument":
        metrics = {name: round(value, precision) for name, value in report.metrics().items()}
        return cls(
            test_fraction=report.test_fraction,
            repetition=report.repetition,
            mcc_defined=report.mcc_defined,
            predictions=dict(sorted(report.predictions.items())),
            **metrics,
        )


class MetricSummary(BaseModel):
    mean: float
    std: float


class ClassificationDocument(BaseModel):
    k: int
    features: str
    seed: int
    reports: list[EvalReportDocument]
    aggregate: dict[str, dict[str, MetricSummary]] = Field(
        default_factory=dict, description="test fraction -> metric -> mean/std"
    )
    note: Optional[str] = None
