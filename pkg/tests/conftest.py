from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

from psr.models.complex_model import SimplicialComplex
from psr.schemas.complex_schema import ComplexDocument
from psr.services.filtration_service import filtration_service
from psr.utils.io import load_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(scope="session")
def pyramid() -> SimplicialComplex:
    return load_document(FIXTURES / "pyramid.json", ComplexDocument).to_domain()


@pytest.fixture(scope="session")
def bipyramid() -> SimplicialComplex:
    return load_document(FIXTURES / "bipyramid.json", ComplexDocument).to_domain()


@pytest.fixture(scope="session")
def five_vertices() -> SimplicialComplex:
    return load_document(FIXTURES / "five_vertices.json", ComplexDocument).to_domain()


@pytest.fixture(scope="session")
def bipyramid_filtration(bipyramid):
    """Vertices at 0, edges at 1, triangles at 2."""
    return filtration_service.from_explicit({face: float(face.dim) for face in bipyramid.faces})


@pytest.fixture(scope="session")
def triangle_filtration():
    """Three vertices at 0; the edges and the triangle all arrive at 1."""
    values = {(0,): 0, (1,): 0, (2,): 0, (0, 1): 1, (0, 2): 1, (1, 2): 1, (0, 1, 2): 1}
    return filtration_service.from_explicit(values)


@pytest.fixture
def random_complex():
    """Factory for random full-vertex complexes on n vertices."""

    def build(rng: np.random.Generator, n: int) -> SimplicialComplex:
        facets = [[v] for v in range(n)]
        for _ in range(int(rng.integers(0, 2 * n + 1))):
            size = int(rng.integers(2, min(n, 4) + 1)) if n > 1 else 1
            facets.append(sorted(rng.choice(n, size=size, replace=False).tolist()))
        return SimplicialComplex.from_facets(facets, n_vertices=n)

    return build


@pytest.fixture
def random_filtration(random_complex):
    """Factory for random monotone filtrations with few distinct integer values."""

    def build(rng: np.random.Generator, n: int, levels: int = 6):
        complex = random_complex(rng, n)
        raw = {face: float(rng.integers(0, levels)) for face in complex.faces}
        return filtration_service.monotone_closure(raw)

    return build


def _write_cloud(path: Path, distance: float) -> Path:
    path.write_text(f"2\npair at {distance}\nB 0.0 0.0 0.0\nB {distance} 0.0 0.0\n")
    return path


@pytest.fixture(scope="session")
def cluster_manifest(tmp_path_factory) -> Path:
    """Three classes of two-atom clouds whose separations sit near 1, 3 and 5."""
    root = tmp_path_factory.mktemp("clusters")
    (root / "xyz").mkdir()
    lines = ["id,label,path"]
    for label, centre in (("near", 1.0), ("middle", 3.0), ("far", 5.0)):
        for k in range(15):
            sample_id = f"{label}-{k:02d}"
            _write_cloud(root / "xyz" / f"{sample_id}.xyz", round(centre + 0.02 * k, 2))
            lines.append(f"{sample_id},{label},xyz/{sample_id}.xyz")
    manifest = root / "manifest.csv"
    manifest.write_text("\n".join(lines) + "\n")
    return manifest
