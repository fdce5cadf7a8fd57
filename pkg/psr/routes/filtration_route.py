from pathlib import Path
from typing import Annotated

import typer

from psr.config import resolve_config
from psr.logger import get_logger
from psr.middleware import track_command
from psr.models.homology_model import PrimeField
from psr.routes.common import (
    ConfigOption,
    ElementsOption,
    MaxDimOption,
    ModulusOption,
    OutputOption,
    PrecisionOption,
    RadiusMaxOption,
    RadiusMinOption,
    ScaleOption,
    emit,
    load_filtration,
)
from psr.schemas.barcode_schema import BarcodeDocument
from psr.schemas.filtration_schema import CriticalValuesDocument, FiltrationDocument
from psr.services.classify_service import classify_service
from psr.services.filtration_service import filtration_service
from psr.services.homology_service import homology_service
from psr.utils.io import dump_document
from psr.utils.xyz_parser import parse_xyz

filtration_router = typer.Typer()
logger = get_logger(__name__)


@filtration_router.command("rips")
@track_command
def rips(
    xyz: Annotated[Path, typer.Argument(help="XYZ point cloud")],
    max_dim: MaxDimOption = None,
    radius_max: RadiusMaxOption = None,
    scale: ScaleOption = None,
    elements: ElementsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Vietoris-Rips filtration of a point cloud, as filtration JSON."""
    run = resolve_config(
        "rips", config, inputs=[xyz], max_dim=max_dim, radius_max=radius_max,
        scale=scale, elements=elements, precision=precision,
    )
    cloud = parse_xyz(xyz).select(run.elements)
    filtration = filtration_service.from_config(cloud, run)
    logger.info(f"Rips filtration of {xyz}: {len(filtration.values)} simplices")
    document = FiltrationDocument.from_domain(filtration, run.precision, labels=list(cloud.labels))
    emit(dump_document(document), output, run)


@filtration_router.command("critical-values")
@track_command
def critical_values(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    max_dim: MaxDimOption = None,
    radius_min: RadiusMinOption = None,
    radius_max: RadiusMaxOption = None,
    scale: ScaleOption = None,
    elements: ElementsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Stanley-Reisner critical values; point clouds are clipped to the radius range."""
    run = resolve_config(
        "critical-values", config, inputs=[source], max_dim=max_dim, radius_min=radius_min,
        radius_max=radius_max, scale=scale, elements=elements, precision=precision,
    )
    if source.suffix.lower() == ".xyz":
        values = classify_service.extract_features(parse_xyz(source), run)
    else:
        values = filtration_service.critical_values(load_filtration(source, run), run.precision)
    emit(dump_document(CriticalValuesDocument.from_domain(values, run.precision)), output, run)


@filtration_router.command("homology-barcode")
@track_command
def homology_barcode(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    max_dim: MaxDimOption = None,
    radius_max: RadiusMaxOption = None,
    elements: ElementsOption = None,
    modulus: ModulusOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Persistent homology intervals of the filtration (unreduced)."""
    run = resolve_config(
        "homology-barcode", config, inputs=[source], max_dim=max_dim, radius_max=radius_max,
        elements=elements, modulus=modulus, precision=precision,
    )
    filtration = load_filtration(source, run)
    barcode = homology_service.persistence_barcode(
        filtration, PrimeField(run.modulus), max_dim=min(run.max_dim, filtration.complex.dim)
    )
    emit(dump_document(BarcodeDocument.from_domain(barcode, run.precision)), output, run)
