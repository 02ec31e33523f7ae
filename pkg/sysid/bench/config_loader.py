"""
Loading experiment descriptions from JSON files.
"""

import json
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from sysid.bench.schemas import ExperimentConfig
from sysid.core.errors import ConfigError
from sysid.utils.logger import get_logger

logger = get_logger(__name__)


def load_experiment_config(
    path: Union[str, Path], *, seed: Optional[int] = None
) -> ExperimentConfig:
    """
    Parse and validate an experiment file.

    Args:
        path (Union[str, Path]): JSON file.
        seed (Optional[int]): Overrides the file's master seed.

    Raises:
        ConfigError: unreadable file, invalid JSON or schema violation.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"Cannot read experiment file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc

    if not isinstance(raw, dict):
        raise ConfigError(f"{path} must contain a JSON object")
    if seed is not None:
        raw["seed"] = seed

    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"Invalid experiment file {path}: {exc}") from exc

    logger.info(
        "Experiment loaded",
        extra={"path": str(path), "system": config.system, "runs": config.n_runs},
    )
    return config
