import math
from typing import Optional

from pydantic import BaseModel, Field

from psr.models.facet_model import FacetBarcode, FacetDiagram, FacetInterval
from psr.models.homology_model import Barcode, Interval
from psr.models.simplex import Simplex


def encode_end(value: float, precision: int = 9) -> Optional[float]:
    """+inf is written as null."""
    return None if math.isinf(value) else round(value, precision)


def decode_end(value: Optional[float]) -> float:
    return math.inf if value is None else value


class BarDocument(BaseModel):
    dim: int = Field(..., ge=0)
    birth: float
    death: Optional[float] = Field(None, description="null for an essential bar")


class BarcodeDocument(BaseModel):
    intervals: list[BarDocument]

    def to_domain(self) -> Barcode:
        return Barcode(tuple(Interval(b.dim, b.birth, decode_end(b.death)) for b in self.intervals))

    @classmethod
    def from_domain(cls, barcode: Barcode, precision: int = 9) -> "BarcodeDocument":
        return cls(
            intervals=[
                BarDocument(dim=iv.dim, birth=round(iv.birth, precision), death=encode_end(iv.death, precision))
                for iv in barcode.intervals
            ]
        )


class FacetBarDocument(BarDocument):
    face: list[int] = Field(..., min_length=1)


class FacetBarcodeDocument(BaseModel):
    bars: list[FacetBarDocument]

    def to_domain(self) -> FacetBarcode:
        return FacetBarcode(
            tuple(
                FacetInterval(b.birth, decode_end(b.death), Simplex.of(b.face))
                for b in self.bars
            )
        )

    @classmethod
    def from_domain(cls, barcode: FacetBarcode, precision: int = 9) -> "FacetBarcodeDocument":
        return cls(
            bars=[
                FacetBarDocument(
                    face=list(iv.face.vertices),
                    dim=iv.dim,
                    birth=round(iv.birth, precision),
                    death=encode_end(iv.death, precision),
                )
                for iv in barcode.intervals
            ]
        )


class DiagramPoint(BaseModel):
    birth: float
    death: Optional[float] = None
    multiplicity: int = Field(1, ge=1)


class DiagramDocument(BaseModel):
    points: list[DiagramPoint]

    def to_domain(self) -> FacetDiagram:
        points: dict[tuple[float, float], int] = {}
        for p in self.points:
            key = (p.birth, decode_end(p.death))
            points[key] = points.get(key, 0) + p.multiplicity
        return FacetDiagram(points)

    @classmethod
    def from_domain(cls, diagram: FacetDiagram, precision: int = 9) -> "DiagramDocument":
        return cls(
            points=[
                DiagramPoint(birth=round(b, precision), death=encode_end(d, precision), multiplicity=m)
                for (b, d), m in sorted(diagram.as_counter().items())
            ]
        )
