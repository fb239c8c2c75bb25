"""Job tracking and logging setup for CLI commands."""

import logging
import time
import uuid
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator

from twirlc.core.errors import EXIT_OK, TwirlcError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "INFO") -> None:
    """Configure the root logger once for a CLI process."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


@dataclass
class JobContext:
    """Per-command tracking state."""

    job_id: str
    command: str
    exit_code: int = EXIT_OK
    duration: float = 0.0


@contextmanager
def track_job(command: str) -> Iterator[JobContext]:
    """Assign a short job id to a command and log its duration and outcome."""
    job = JobContext(job_id=str(uuid.uuid4())[:8], command=command)
    start_time = time.time()
    logger.info(f"[{job.job_id}] {command} started")
    try:
        yield job
    except TwirlcError as exc:
        job.exit_code = exc.exit_code
        logger.error(f"[{job.job_id}] {command} failed: {exc.detail}")
        raise
    finally:
        job.duration = time.time() - start_time
        logger.info(
            f"[{job.job_id}] Completed {job.exit_code} in {job.duration:.4f}s"
        )
