import json
from pathlib import Path
from typing import Annotated, Optional

import typer

from psr.config import resolve_config
from psr.errors import InvalidParameterError
from psr.logger import get_logger
from psr.middleware import track_command
from psr.models.homology_model import PrimeField
from psr.routes.common import (
    ConfigOption,
    ModulusOption,
    OutputOption,
    PrecisionOption,
    ThreadsOption,
    emit,
    load_complex,
    load_filtration,
)
from psr.schemas.betti_schema import BettiTableDocument
from psr.schemas.complex_schema import IdealDocument
from psr.services.complex_service import complex_service
from psr.services.facet_service import facet_service
from psr.services.hochster_service import hochster_service
from psr.utils.io import betti_table_csv, dump_document, write_text
from psr.utils.svg import curve_svg, series_from_rows

algebra_router = typer.Typer()
logger = get_logger(__name__)


def _parse_entries(text: Optional[str]) -> Optional[list[tuple[int, int]]]:
    """`1,3;2,4` -> [(1, 3), (2, 4)]."""
    if not text:
        return None
    entries = []
    for chunk in text.split(";"):
        try:
            i, j = (int(part) for part in chunk.split(","))
        except ValueError:
            raise InvalidParameterError(f"Betti entry {chunk!r} is not of the form i,j")
        entries.append((i, j))
    return entries


@algebra_router.command("betti-table")
@track_command
def betti_table(
    complex_file: Annotated[Path, typer.Argument(help="Complex JSON (generating faces)")],
    modulus: ModulusOption = None,
    max_j: Annotated[Optional[int], typer.Option("--max-j", help="Only visit subsets up to this size")] = None,
    as_json: Annotated[bool, typer.Option("--json", help="Emit the table as JSON instead of CSV")] = False,
    pretty: Annotated[bool, typer.Option("--pretty", help="Also print the Macaulay2-style table to stderr")] = False,
    threads: ThreadsOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Graded Betti table of the Stanley-Reisner ring via Hochster's formula."""
    run = resolve_config("betti-table", config, inputs=[complex_file], modulus=modulus, threads=threads)
    complex = load_complex(complex_file)
    table = hochster_service.hochster_table(
        complex, PrimeField(run.modulus), max_j=max_j, cap=run.subset_cap, threads=run.threads
    )
    if pretty:
        typer.echo(str(table), err=True)
    text = dump_document(BettiTableDocument.from_domain(table, run.modulus)) if as_json else betti_table_csv(table)
    emit(text, output, run)


@algebra_router.command("persistent-betti")
@track_command
def persistent_betti(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    t: Annotated[float, typer.Option("--t", help="Source sublevel")],
    t_prime: Annotated[float, typer.Option("--t-prime", help="Target sublevel, t <= t'")],
    modulus: ModulusOption = None,
    as_json: Annotated[bool, typer.Option("--json", help="Emit the table as JSON instead of CSV")] = False,
    threads: ThreadsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Persistent graded Betti numbers beta^{t,t'}_{i,j}."""
    run = resolve_config(
        "persistent-betti", config, inputs=[source], modulus=modulus, threads=threads, precision=precision
    )
    filtration = load_filtration(source, run)
    table = hochster_service.persistent_hochster_table(
        filtration, t, t_prime, PrimeField(run.modulus), cap=run.subset_cap, threads=run.threads
    )
    text = (
        dump_document(BettiTableDocument.from_domain(table, precision=run.precision))
        if as_json
        else betti_table_csv(table)
    )
    emit(text, output, run)


@algebra_router.command("hf-vectors")
@track_command
def hf_vectors(
    source: Annotated[Path, typer.Argument(help="Complex JSON, or a filtration with --t/--t-prime/--curve")],
    t: Annotated[Optional[float], typer.Option("--t", help="Persistent: source sublevel")] = None,
    t_prime: Annotated[Optional[float], typer.Option("--t-prime", help="Persistent: target sublevel")] = None,
    curve: Annotated[bool, typer.Option("--curve", help="Step data over every critical value")] = False,
    lag: Annotated[int, typer.Option("--lag", help="Critical-value steps between t and t' on a curve")] = 0,
    svg: Annotated[Optional[Path], typer.Option("--svg", help="Also draw the curve as SVG")] = None,
    modulus: ModulusOption = None,
    threads: ThreadsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """h- and f-vectors, static or persistent."""
    run = resolve_config(
        "hf-vectors", config, inputs=[source], modulus=modulus, threads=threads, precision=precision
    )
    field = PrimeField(run.modulus)
    if lag < 0:
        raise InvalidParameterError(f"--lag must be >= 0, got {lag}")

    if curve:
        filtration = load_filtration(source, run)
        rows = hochster_service.hf_curve(
            filtration, field, lag=lag, cap=run.subset_cap, threads=run.threads, precision=run.precision
        )
        if svg is not None:
            xs, series = series_from_rows(rows)
            write_text(curve_svg(xs, series, title="persistent h-vector"), svg)
        emit(json.dumps(rows, indent=2) + "\n", output, run)
        return

    if (t is None) != (t_prime is None):
        raise InvalidParameterError("Give both --t and --t-prime for persistent vectors")
    if t is not None:
        filtration = load_filtration(source, run)
        h = hochster_service.persistent_h_vector(filtration, t, t_prime, field, run.subset_cap, run.threads)
        f = hochster_service.f_from_h(h, h.d)
        payload = {
            "t": t,
            "t_prime": t_prime,
            "d": h.d,
            "h": list(h.coefficients),
            "f": list(f.coefficients),
            "negative_h": h.has_negative,
        }
    else:
        complex = load_complex(source)
        d = complex.dim + 1
        table = hochster_service.hochster_table(complex, field, cap=run.subset_cap, threads=run.threads)
        h = hochster_service.h_vector_from_betti(table, complex.n_vertices, d)
        f = hochster_service.f_from_betti(table, complex.n_vertices, d)
        payload = {
            "n": complex.n_vertices,
            "d": d,
            "h": list(h.coefficients),
            "f": list(f.coefficients),
            "hilbert_numerator": hochster_service.hilbert_numerator(table),
        }
    emit(json.dumps(payload, indent=2) + "\n", output, run)


@algebra_router.command("betti-curve")
@track_command
def betti_curve(
    source: Annotated[Path, typer.Argument(help="Filtration JSON or XYZ point cloud")],
    entries: Annotated[Optional[str], typer.Option("--entries", help="Graded entries as i,j;i,j")] = None,
    lag: Annotated[int, typer.Option("--lag", help="Critical-value steps between t and t'")] = 0,
    svg: Annotated[Optional[Path], typer.Option("--svg", help="Also draw the curves as SVG")] = None,
    modulus: ModulusOption = None,
    threads: ThreadsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Reduced and graded Betti numbers at every critical value."""
    run = resolve_config(
        "betti-curve", config, inputs=[source], modulus=modulus, threads=threads, precision=precision
    )
    if lag < 0:
        raise InvalidParameterError(f"--lag must be >= 0, got {lag}")
    filtration = load_filtration(source, run)
    rows = hochster_service.betti_curve(
        filtration, PrimeField(run.modulus), _parse_entries(entries), lag=lag,
        cap=run.subset_cap, threads=run.threads, precision=run.precision,
    )
    if svg is not None:
        xs, series = series_from_rows(rows)
        write_text(curve_svg(xs, series, title="persistent Betti numbers"), svg)
    emit(json.dumps(rows, indent=2) + "\n", output, run)


@algebra_router.command("sr-ideal")
@track_command
def sr_ideal(
    complex_file: Annotated[Path, typer.Argument(help="Complex JSON (generating faces)")],
    as_json: Annotated[bool, typer.Option("--json", help="Emit JSON instead of text")] = False,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """Minimal generators of the Stanley-Reisner ideal and its facet prime decomposition."""
    run = resolve_config("sr-ideal", config, inputs=[complex_file])
    complex = load_complex(complex_file)
    generators = complex_service.stanley_reisner_ideal(complex)
    primes = sorted(facet_service.facet_prime_decomposition(complex))
    if as_json:
        document = IdealDocument(
            generators=[list(g.vertices) for g in generators],
            facet_primes=[list(p.generators) for p in primes],
        )
        emit(dump_document(document), output, run)
        return
    monomials = ["*".join(f"x{v}" for v in g.vertices) for g in generators]
    lines = [
        f"I = ({', '.join(monomials)})",
        "I = " + " ∩ ".join(str(p) for p in primes) if primes else "I = (all variables)",
        f"dim k[Delta] = {complex.krull_dim}",
    ]
    emit("\n".join(lines) + "\n", output, run)
