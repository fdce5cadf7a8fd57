from psr.models.simplex import Simplex
from psr.models.complex_model import SimplicialComplex
from psr.models.filtration_model import CriticalValues, Filtration, PointCloud
from psr.models.homology_model import Barcode, BoundaryMatrix, Interval, PrimeField
from psr.models.betti_model import BettiTable, FVector, HVector, PersistentBettiTable
from psr.models.facet_model import FacetBarcode, FacetDiagram, FacetInterval, FacetPrime
from psr.models.metric_model import Component, ExtendedPoint, Matching, StabilityReport
from psr.models.sample_model import DistanceMatrix, EvalReport, Sample

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "CriticalValues",
    "Filtration",
    "PointCloud",
    "Barcode",
    "BoundaryMatrix",
    "Interval",
    "PrimeField",
    "BettiTable",
    "FVector",
    "HVector",
    "PersistentBettiTable",
    "FacetBarcode",
    "FacetDiagram",
    "FacetInterval",
    "FacetPrime",
    "ExtendedPoint",
    "Matching",
    "Component",
    "StabilityReport",
    "DistanceMatrix",
    "EvalReport",
    "Sample",
]
