import json
from enum import Enum
from pathlib import Path
from typing import Annotated, Optional

import typer

from psr.config import resolve_config
from psr.errors import ParseError
from psr.logger import get_logger
from psr.middleware import track_command
from psr.routes.common import ConfigOption, OutputOption, emit
from psr.schemas.barcode_schema import BarcodeDocument, DiagramDocument, FacetBarcodeDocument
from psr.utils.io import load_document
from psr.utils.svg import barcode_svg, curve_svg, diagram_svg, series_from_rows

plot_router = typer.Typer()
logger = get_logger(__name__)


class PlotKind(str, Enum):
    barcode = "barcode"
    facet_barcode = "facet-barcode"
    diagram = "diagram"
    curve = "curve"


def _detect(path: Path) -> PlotKind:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(path, f"not readable as JSON: {e}")
    if isinstance(data, list):
        return PlotKind.curve
    if "points" in data:
        return PlotKind.diagram
    if isinstance(data.get("intervals"), list):
        return PlotKind.barcode
    if isinstance(data.get("bars"), list):
        return PlotKind.facet_barcode
    raise ParseError(path, "cannot tell which figure this document describes; pass --kind")


@plot_router.command("plot")
@track_command
def plot(
    source: Annotated[Path, typer.Argument(help="Barcode, diagram or curve JSON")],
    kind: Annotated[Optional[PlotKind], typer.Option("--kind", help="Figure type; detected when omitted")] = None,
    title: Annotated[Optional[str], typer.Option("--title", help="Figure title")] = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Render a JSON result as a standalone SVG figure."""
    run = resolve_config("plot", config, inputs=[source])
    if not source.exists():
        raise ParseError(source, "file does not exist")
    kind = kind or _detect(source)
    label = title or source.stem

    if kind == PlotKind.barcode:
        barcode = load_document(source, BarcodeDocument).to_domain()
        svg = barcode_svg([(iv.dim, iv.birth, iv.death) for iv in barcode.intervals], label)
    elif kind == PlotKind.facet_barcode:
        barcode = load_document(source, FacetBarcodeDocument).to_domain()
        svg = barcode_svg([(iv.dim, iv.birth, iv.death) for iv in barcode.intervals], label)
    elif kind == PlotKind.diagram:
        points = load_document(source, DiagramDocument).to_domain()
        svg = diagram_svg([(b, d, m) for (b, d), m in points.as_counter().items()], label)
    else:
        try:
            rows = json.loads(source.read_text())
            xs, series = series_from_rows(rows)
        except (KeyError, TypeError, IndexError, json.JSONDecodeError):
            raise ParseError(source, "expected rows from hf-vectors --curve or betti-curve")
        svg = curve_svg(xs, series, label)
    logger.info(f"Rendered {kind.value} figure from {source}")
    emit(svg, output, run)
