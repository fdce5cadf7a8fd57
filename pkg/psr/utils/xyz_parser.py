from pathlib import Path

import numpy as np

from psr.errors import ParseError
from psr.logger import get_logger
from psr.models.filtration_model import PointCloud

logger = get_logger(__name__)


def parse_xyz(path) -> PointCloud:
    """Read an XYZ file: an atom count, a comment line, then `Element x y z` rows.

    Element symbols are case-normalized (``cl`` -> ``Cl``). Blank lines after
    the last atom are ignored.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(path, "file does not exist")
    lines = path.read_text().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(path, "file is empty", line=1)

    try:
        expected = int(lines[0].strip())
    except ValueError:
        raise ParseError(path, f"atom count must be an integer, got {lines[0].strip()!r}", line=1)
    if expected < 0:
        raise ParseError(path, f"atom count must be non-negative, got {expected}", line=1)

    atoms = lines[2:]
    if len(atoms) != expected:
        raise ParseError(path, f"expected {expected} atoms, found {len(atoms)}")

    labels, coordinates = [], []
    for offset, line in enumerate(atoms, start=3):
        fields = line.split()
        if len(fields) < 4:
            raise ParseError(path, f"expected `Element x y z`, got {line.strip()!r}", line=offset)
        try:
            xyz = [float(value) for value in fields[1:4]]
        except ValueError:
            raise ParseError(path, f"non-numeric coordinate in {fields[1:4]}", line=offset)
        if not np.all(np.isfinite(xyz)):
            raise ParseError(path, f"non-finite coordinate in {fields[1:4]}", line=offset)
        labels.append(fields[0].capitalize())
        coordinates.append(xyz)

    logger.debug(f"Parsed {len(labels)} atoms from {path}")
    return PointCloud(tuple(labels), np.array(coordinates, dtype=float).reshape(-1, 3))
