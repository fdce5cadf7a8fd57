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
    ThreadsOption,
    emit,
)
from psr.schemas.sample_schema import ClassificationDocument, EvalReportDocument
from psr.services.classify_service import classify_service
from psr.utils.io import distance_matrix_csv, dump_document, load_distance_matrix, load_manifest, write_text

classify_router = typer.Typer()
logger = get_logger(__name__)


@classify_router.command("classify")
@track_command
def classify(
    manifest: Annotated[Path, typer.Argument(help="CSV with id,label,path columns pointing at XYZ files")],
    k: Annotated[int, typer.Option("--k", help="Neighbors consulted per prediction")] = 5,
    test_fraction: Annotated[
        Optional[list[float]], typer.Option("--test-fraction", help="Held-out share; repeat for several")
    ] = None,
    repetitions: Annotated[int, typer.Option("--repetitions", help="Random splits per test fraction")] = 10,
    features: Annotated[str, typer.Option("--features", help="critical or homology")] = "critical",
    distances: Annotated[
        Optional[Path], typer.Option("--distances", help="Also write the distance matrix CSV here")
    ] = None,
    matrix_file: Annotated[
        Optional[Path], typer.Option("--matrix", help="Reuse a distance matrix CSV instead of extracting features")
    ] = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Seed for every random split")] = None,
    max_dim: MaxDimOption = None,
    radius_min: RadiusMinOption = None,
    radius_max: RadiusMaxOption = None,
    scale: ScaleOption = None,
    elements: ElementsOption = None,
    threads: ThreadsOption = None,
    precision: PrecisionOption = None,
    output: OutputOption = None,
    config: ConfigOption = None,
):
    """k-NN classification on Hausdorff distances between critical-value sets."""
    run = resolve_config(
        "classify", config, inputs=[manifest], seed=seed, max_dim=max_dim, radius_min=radius_min,
        radius_max=radius_max, scale=scale, elements=elements, threads=threads, precision=precision,
    )
    rows = load_manifest(manifest)
    if matrix_file is not None:
        matrix = load_distance_matrix(matrix_file)
        labels = {sample_id: label for sample_id, label, _ in rows}
        if set(labels) != set(matrix.ids):
            raise InvalidParameterError(f"{matrix_file} does not cover exactly the samples of {manifest}")
        logger.info(f"Reusing {len(matrix.ids)} x {len(matrix.ids)} distances from {matrix_file}")
    else:
        samples = classify_service.build_samples(rows, run, features)
        matrix = classify_service.pairwise_distances(samples, run.threads)
        labels = {sample.id: sample.label for sample in samples}
    if distances is not None:
        write_text(distance_matrix_csv(matrix, run.precision), distances)

    reports, aggregate = [], {}
    for fraction in test_fraction or [0.2, 0.5, 0.8]:
        batch = classify_service.evaluate(matrix, labels, k, fraction, repetitions, run.seed, run.threads)
        reports.extend(EvalReportDocument.from_domain(r, run.precision) for r in batch)
        aggregate[str(fraction)] = classify_service.aggregate(batch)

    note = None
    if any(not r.mcc_defined for r in reports):
        note = "matthews_corrcoef is reported as 0 where truth or prediction had a single class"
    document = ClassificationDocument(
        k=k, features=features, seed=run.seed, reports=reports, aggregate=aggregate, note=note
    )
    emit(dump_document(document), output, run)
