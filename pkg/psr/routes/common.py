from pathlib import Path
from typing import Annotated, Optional

import typer

from psr.config import RunConfig
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.filtration_model import Filtration
from psr.schemas.complex_schema import ComplexDocument
from psr.schemas.filtration_schema import FiltrationDocument
from psr.services.filtration_service import filtration_service
from psr.utils.io import load_document, write_text
from psr.utils.xyz_parser import parse_xyz

logger = get_logger(__name__)

ConfigOption = Annotated[
    Optional[Path], typer.Option("--config", help="key = value file mirroring the command-line flags")
]
ThreadsOption = Annotated[Optional[int], typer.Option("--threads", help="Worker count hint for parallel work")]
PrecisionOption = Annotated[Optional[int], typer.Option("--precision", help="Decimals kept in numeric output")]
ModulusOption = Annotated[Optional[int], typer.Option("--modulus", "-p", help="Prime field characteristic")]
OutputOption = Annotated[
    Optional[Path], typer.Option("--output", "-o", help="Write here instead of standard output")
]
MaxDimOption = Annotated[Optional[int], typer.Option("--max-dim", help="Largest simplex dimension built")]
RadiusMinOption = Annotated[Optional[float], typer.Option("--radius-min", help="Lower end of the radius range")]
RadiusMaxOption = Annotated[Optional[float], typer.Option("--radius-max", help="Upper end of the radius range")]
ScaleOption = Annotated[Optional[str], typer.Option("--scale", help="diameter or radius")]
ElementsOption = Annotated[
    Optional[str], typer.Option("--elements", help="Comma-separated element symbols to keep, e.g. B,C")
]


def emit(text: str, output: Optional[Path], config: RunConfig) -> None:
    """Write to --output (relative paths land in the configured output directory) or stdout."""
    if output is None:
        typer.echo(text, nl=not text.endswith("\n"))
        return
    target = output if output.is_absolute() else config.output_dir / output
    write_text(text, target)


def load_complex(path: Path) -> SimplicialComplex:
    return load_document(path, ComplexDocument).to_domain()


def load_filtration(path: Path, config: RunConfig) -> Filtration:
    """An explicit filtration JSON, or the Rips filtration of an .xyz point cloud."""
    if path.suffix.lower() == ".xyz":
        return filtration_service.from_config(parse_xyz(path), config)
    return load_document(path, FiltrationDocument).to_domain()
