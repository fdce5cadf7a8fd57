import csv
import io
import json
from pathlib import Path
from typing import Iterable, Optional, Sequence, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from psr.errors import ParseError
from psr.logger import get_logger
from psr.models.betti_model import BettiTable, Convention
from psr.models.sample_model import DistanceMatrix
from psr.schemas.sample_schema import ManifestRow

logger = get_logger(__name__)

Document = TypeVar("Document", bound=BaseModel)


def _describe(error: ValidationError) -> tuple[str, str]:
    first = error.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or "document"
    return where, first["msg"]


def load_document(path, schema: type[Document]) -> Document:
    """Read and validate a JSON document, turning failures into ParseError."""
    path = Path(path)
    if not path.exists():
        raise ParseError(path, "file does not exist")
    try:
        return schema.model_validate_json(path.read_text())
    except ValidationError as e:
        where, msg = _describe(e)
        raise ParseError(path, f"field {where}: {msg}")


def dump_document(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"


def write_text(text: str, path: Optional[Path]) -> None:
    if path is None:
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {path}")


def load_manifest(path) -> list[tuple[str, str, Path]]:
    """Rows of an `id,label,path` CSV; relative paths resolve against the manifest's folder."""
    path = Path(path)
    if not path.exists():
        raise ParseError(path, "file does not exist")
    rows = []
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        missing = {"id", "label", "path"} - set(reader.fieldnames or [])
        if missing:
            raise ParseError(path, f"missing columns {sorted(missing)}", line=1)
        for line, record in enumerate(reader, start=2):
            try:
                row = ManifestRow.model_validate(record)
            except ValidationError as e:
                where, msg = _describe(e)
                raise ParseError(path, f"field {where}: {msg}", line=line)
            target = row.path if row.path.is_absolute() else path.parent / row.path
            rows.append((row.id, row.label, target))
    if not rows:
        raise ParseError(path, "manifest has no samples")
    return rows


def format_number(value: float, precision: int) -> str:
    if np.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{round(float(value), precision):.{precision}f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def betti_table_csv(table: BettiTable) -> str:
    """Macaulay2 layout: one row per j - i, one column per homological degree i."""
    grid = table.grid(Convention.macaulay)
    width = len(grid[0]) if grid else 1
    return rows_to_csv(
        ["row", *(str(i) for i in range(width))],
        ([r, *row] for r, row in enumerate(grid)),
    )


def distance_matrix_csv(matrix: DistanceMatrix, precision: int = 9) -> str:
    return rows_to_csv(
        ["id", *matrix.ids],
        (
            [sample_id, *(format_number(x, precision) for x in matrix.entries[r])]
            for r, sample_id in enumerate(matrix.ids)
        ),
    )


def load_distance_matrix(path) -> DistanceMatrix:
    path = Path(path)
    if not path.exists():
        raise ParseError(path, "file does not exist")
    with path.open(newline="") as handle:
        records = list(csv.reader(handle))
    if not records or len(records[0]) < 2:
        raise ParseError(path, "expected a header row of sample ids", line=1)
    ids = tuple(records[0][1:])
    if len(records) - 1 != len(ids):
        raise ParseError(path, f"expected {len(ids)} rows, found {len(records) - 1}")
    entries = np.zeros((len(ids), len(ids)))
    for r, record in enumerate(records[1:]):
        if len(record) != len(ids) + 1 or record[0] != ids[r]:
            raise ParseError(path, f"row must start with {ids[r]!r} and have {len(ids)} values", line=r + 2)
        try:
            entries[r] = [float(x) for x in record[1:]]
        except ValueError:
            raise ParseError(path, "non-numeric distance", line=r + 2)
    return DistanceMatrix(ids, entries)


def load_json_values(path) -> list:
    """A bare JSON list, e.g. a feature set for the hausdorff command."""
    path = Path(path)
    if not path.exists():
        raise ParseError(path, "file does not exist")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(path, e.msg, line=e.lineno)
    if isinstance(data, dict) and "values" in data:
        data = data["values"]
    if not isinstance(data, list):
        raise ParseError(path, "expected a JSON list of numbers or {\"values\": [...]}")
    return data
