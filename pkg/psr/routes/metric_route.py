import json
import math
from pathlib import Path
from typing import Annotated, Optional

import typer

from psr.config import resolve_config
from psr.errors import ParseError
from psr.logger import get_logger
from psr.middleware import track_command
from psr.models.metric_model import ExtendedPoint
from psr.routes.common import ConfigOption, OutputOption, PrecisionOption, emit
from psr.schemas.barcode_schema import DiagramDocument, encode_end
from psr.services.metric_service import metric_service
from psr.utils.io import format_number, load_document, load_json_values

metric_router = typer.Typer()
logger = get_logger(__name__)


def _values(path: Path) -> list[float]:
    try:
        return sorted({float(v) for v in load_json_values(path)})
    except (TypeError, ValueError):
        raise ParseError(path, "values must be numbers")


def _pair(point: ExtendedPoint, precision: int) -> list[Optional[float]]:
    # null birth is -inf, null death is +inf
    birth = None if math.isinf(point.birth) else round(point.birth, precision)
    return [birth, encode_end(point.death, precision)]


@metric_router.command("bottleneck")
@track_command
def bottleneck(
    first: Annotated[Path, typer.Argument(help="Diagram JSON")],
    second: Annotated[Path, typer.Argument(help="Diagram JSON")],
    matching: Annotated[bool, typer.Option("--matching", help="Emit the optimal matching as JSON")] = False,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Bottleneck distance between two facet persistence diagrams."""
    run = resolve_config("bottleneck", config, inputs=[first, second], precision=precision)
    a = metric_service.diagram_points(load_document(first, DiagramDocument).to_domain())
    b = metric_service.diagram_points(load_document(second, DiagramDocument).to_domain())
    distance, pairs = metric_service.bottleneck_matching(a, b)
    logger.info(f"Bottleneck distance between {first} and {second}: {distance}")
    if not matching:
        emit(format_number(distance, run.precision) + "\n", output, run)
        return
    payload = {
        "distance": encode_end(distance, run.precision),
        "pairs": [
            {"a": _pair(a[i], run.precision), "b": _pair(b[j], run.precision)}
            for i, j in sorted(pairs.pairs)
        ],
    }
    emit(json.dumps(payload, indent=2) + "\n", output, run)


@metric_router.command("hausdorff")
@track_command
def hausdorff(
    first: Annotated[Path, typer.Argument(help="JSON list of numbers or critical-values JSON")],
    second: Annotated[Path, typer.Argument(help="JSON list of numbers or critical-values JSON")],
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Hausdorff distance between two finite sets of reals."""
    run = resolve_config("hausdorff", config, inputs=[first, second], precision=precision)
    distance = metric_service.hausdorff(_values(first), _values(second))
    emit(format_number(distance, run.precision) + "\n", output, run)
