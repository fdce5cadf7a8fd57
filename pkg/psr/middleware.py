import functools
import time
import uuid

import typer

from psr.errors import PSRError
from psr.logger import get_logger

logger = get_logger(__name__)


def track_command(func):
    """Give each CLI invocation a run id, time it, and turn domain errors into exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        run_id = str(uuid.uuid4()).replace("-", "")[:10]
        logger.info(f"Run {run_id}: {func.__name__.replace('_', '-')} started")
        start_time = time.perf_counter()

        try:
            result = func(*args, **kwargs)
            process_time = time.perf_counter() - start_time
            logger.info(f"Run {run_id}: completed in {process_time:.4f}s")
            return result

        except PSRError as e:
            process_time = time.perf_counter() - start_time
            logger.error(f"Run {run_id}: failed after {process_time:.4f}s - {e.detail}")
            typer.echo(f"error: {e.detail}", err=True)
            raise typer.Exit(code=e.exit_code)

        except typer.Exit:
            raise

        except Exception as e:
            process_time = time.perf_counter() - start_time
            logger.error(f"Run {run_id}: error after {process_time:.4f}s - {str(e)}")
            raise

    return wrapper
