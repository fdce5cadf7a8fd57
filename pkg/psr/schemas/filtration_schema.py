from typing import Optional

from pydantic import BaseModel, Field

from psr.models.filtration_model import CriticalValues, Filtration
from psr.services.filtration_service import filtration_service


class FaceValue(BaseModel):
    face: list[int] = Field(..., min_length=1)
    value: float


class FiltrationDocument(BaseModel):
    n_vertices: Optional[int] = Field(None, ge=0)
    labels: Optional[list[str]] = Field(None, description="Element symbol per vertex, for Rips output")
    faces: list[FaceValue]

    def to_domain(self) -> Filtration:
        return filtration_service.from_explicit(
            {tuple(fv.face): fv.value for fv in self.faces}, n_vertices=self.n_vertices
        )

    @classmethod
    def from_domain(
        cls, filtration: Filtration, precision: int = 9, labels: Optional[list[str]] = None
    ) -> "FiltrationDocument":
        return cls(
            n_vertices=filtration.complex.n_vertices,
            labels=labels,
            faces=[
                FaceValue(face=list(face.vertices), value=round(filtration[face], precision))
                for face in filtration.ordered_faces()
            ],
        )


class CriticalValuesDocument(BaseModel):
    values: list[float]

    def to_domain(self) -> CriticalValues:
        return CriticalValues(tuple(self.values))

    @classmethod
    def from_domain(cls, critical: CriticalValues, precision: int = 9) -> "CriticalValuesDocument":
        return cls(values=[round(v, precision) for v in critical.values])
