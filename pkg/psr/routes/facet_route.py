from pathlib import Path
from typing import Annotated, Optional

import typer

from psr.config import resolve_config
from psr.errors import InvalidParameterError
from psr.logger import get_logger
from psr.middleware import track_command
from psr.routes.common import (
    ConfigOption,
    ElementsOption,
    MaxDimOption,
    OutputOption,
    PrecisionOption,
    RadiusMaxOption,
    RadiusMinOption,
    ScaleOption,
    emit,
    load_filtration,
)
from psr.schemas.barcode_schema import DiagramDocument, FacetBarcodeDocument
from psr.services.facet_service import facet_service
from psr.utils.io import dump_document

facet_router = typer.Typer()
logger = get_logger(__name__)


@facet_router.command("facet-barcode")
@track_command
def facet_barcode(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    keep_empty_bars: Annotated[
        Optional[bool], typer.Option("--keep-empty-bars", help="Keep zero-length bars")
    ] = None,
    count_dim: Annotated[
        Optional[int],
        typer.Option("--count-dim", help="Only print how many bars of this facet dimension are born in the radius range"),
    ] = None,
    max_dim: MaxDimOption = None,
    radius_min: RadiusMinOption = None,
    radius_max: RadiusMaxOption = None,
    scale: ScaleOption = None,
    elements: ElementsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Lifespans of the facet prime ideals across the filtration."""
    run = resolve_config(
        "facet-barcode", config, inputs=[source], keep_empty_bars=keep_empty_bars, max_dim=max_dim,
        radius_min=radius_min, radius_max=radius_max, scale=scale, elements=elements, precision=precision,
    )
    barcode = facet_service.facet_barcode(load_filtration(source, run), keep_empty=run.keep_empty_bars)
    logger.info(f"Facet barcode of {source}: {len(barcode)} bars")
    if count_dim is not None:
        if count_dim < 0:
            raise InvalidParameterError(f"--count-dim must be >= 0, got {count_dim}")
        count = barcode.dimension_count(count_dim, run.radius_min, run.radius_max)
        emit(f"{count}\n", output, run)
        return
    emit(dump_document(FacetBarcodeDocument.from_domain(barcode, run.precision)), output, run)


@facet_router.command("diagram")
@track_command
def diagram(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    check: Annotated[
        bool, typer.Option("--check", help="Fail unless the diagram matches the barcode endpoints")
    ] = False,
    max_dim: MaxDimOption = None,
    radius_max: RadiusMaxOption = None,
    scale: ScaleOption = None,
    elements: ElementsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Facet persistence diagram with multiplicities from facet-persistent Betti numbers."""
    run = resolve_config(
        "diagram", config, inputs=[source], max_dim=max_dim, radius_max=radius_max,
        scale=scale, elements=elements, precision=precision,
    )
    filtration = load_filtration(source, run)
    result = facet_service.multiplicities(filtration)
    if check:
        expected = facet_service.facet_barcode(filtration).endpoints()
        if result.as_counter() != expected:
            raise InvalidParameterError(
                f"Diagram {dict(result.as_counter())} differs from barcode endpoints {dict(expected)}"
            )
        logger.info("Diagram agrees with the facet barcode")
    emit(dump_document(DiagramDocument.from_domain(result, run.precision)), output, run)
