"""
MLflow run lifecycle helpers for benchmark tracking.

Tracking is optional: without ``SYSID_MLFLOW_TRACKING_URI`` (or under
``SYSID_ENV=test``) both helpers are no-ops, and tracking failures never
abort a benchmark.
"""

import os
from contextlib import contextmanager
from typing import Any, Callable, Optional

import mlflow

from sysid.config import settings
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def tracking_enabled() -> bool:
    """Return True when runs should be sent to an MLflow tracking server."""
    if os.getenv("SYSID_ENV", settings.ENV) == "test":
        return False
    return bool(settings.MLFLOW_TRACKING_URI)


@contextmanager
def mlflow_context(run_name: Optional[str] = None):
    """
    Start (or reuse) an MLflow run for the duration of the block.

    Runs started here are always ended, and active runs opened by a
    caller are reused rather than nested.

    Args:
        run_name (Optional[str]): Run name shown in the MLflow UI.
    """
    if not tracking_enabled():
        logger.debug("MLflow tracking disabled")
        yield None
        return

    started_here = False
    run = None

    try:
        mlflow.set_tracking_uri(settings.MLFLOW_TRACKING_URI)
        mlflow.set_experiment(settings.MLFLOW_EXPERIMENT)

        active_run = mlflow.active_run()
        if active_run is None:
            run = mlflow.start_run(run_name=run_name)
            started_here = True
            logger.info(
                "MLflow run started",
                extra={"run_id": run.info.run_id, "run_name": run_name},
            )
        else:
            run = active_run
            logger.debug("Reusing MLflow run", extra={"run_id": run.info.run_id})

    except Exception:
        logger.warning("MLflow unavailable, continuing untracked", exc_info=True)
        yield None
        return

    try:
        yield run
    finally:
        if started_here:
            try:
                if mlflow.active_run():
                    mlflow.end_run()
                    logger.info("MLflow run ended", extra={"run_id": run.info.run_id})
            except Exception:
                logger.exception("Failed to end MLflow run")


def mlflow_safe(
    func: Callable[..., Any],
    *args: Any,
    swallow: bool = True,
    **kwargs: Any,
) -> Optional[Any]:
    """
    Call an MLflow function without letting tracking errors escape.

    Args:
        func (Callable[..., Any]): MLflow function, e.g. ``mlflow.log_metric``.
        *args (Any): Positional arguments for ``func``.
        swallow (bool): Log and suppress failures when True, re-raise otherwise.
        **kwargs (Any): Keyword arguments for ``func``.

    Returns:
        Optional[Any]: The function result, or None when skipped or failed.
    """
    if not tracking_enabled():
        return None

    try:
        return func(*args, **kwargs)
    except Exception:
        logger.warning(
            "MLflow call failed: %s",
            getattr(func, "__name__", repr(func)),
            exc_info=True,
        )
        if not swallow:
            raise
        return None
