"""Run configuration for the command line and the report service."""

import json
import logging
import os
import pathlib
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import fields
from dataclasses import replace
from typing import Any
from typing import Literal

from aesworkbench.errors import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV = "AES_WORKBENCH_CONFIG"
FORMATS = ("json", "csv")

TFormat = Literal["json", "csv"]


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every state construction and verification run."""

    truncation: int = 256
    tail_threshold: float = 1e-14
    residual_tol: float = 1e-7
    output_dir: pathlib.Path = pathlib.Path(".")
    format: TFormat = "json"

    def __post_init__(self) -> None:
        """Validate the fields.

        Raises:
            ConfigError: If a field is out of range.
        """
        object.__setattr__(self, "output_dir", pathlib.Path(self.output_dir))
        if int(self.truncation) != self.truncation or self.truncation < 8:
            msg = f"truncation must be an integer >= 8, got {self.truncation!r}"
            raise ConfigError(msg)
        object.__setattr__(self, "truncation", int(self.truncation))
        for name in ("tail_threshold", "residual_tol"):
            value = getattr(self, name)
            if not value > 0:
                msg = f"{name} must be positive, got {value!r}"
                raise ConfigError(msg)
        if self.format not in FORMATS:
            msg = f"format must be one of {FORMATS}, got {self.format!r}"
            raise ConfigError(msg)

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: JSON-serialisable form of the configuration."""
        record = asdict(self)
        record["output_dir"] = str(self.output_dir)
        return record


def load_config(path: str | pathlib.Path | None = None, **overrides: Any) -> RunConfig:
    """Build a configuration from defaults, a JSON file and explicit overrides.

    Args:
        path (str | pathlib.Path | None, optional): JSON file to read. Falls back
        on the AES_WORKBENCH_CONFIG environment variable. Defaults to None.
        **overrides (Any): Field values taking precedence over the file. None
        values are ignored.

    Raises:
        ConfigError: If the file is unreadable or holds unknown keys.

    Returns:
        RunConfig: Validated configuration.
    """
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None

    known = {f.name for f in fields(RunConfig)}
    values: dict[str, Any] = {}

    if path is not None:
        try:
            content = json.loads(pathlib.Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            msg = f"Cannot read configuration file '{path}': {exc}"
            raise ConfigError(msg) from exc
        if not isinstance(content, dict):
            msg = f"Configuration file '{path}' must hold a JSON object"
            raise ConfigError(msg)
        unknown = set(content) - known
        if unknown:
            msg = f"Unknown configuration keys: {sorted(unknown)}"
            raise ConfigError(msg)
        values.update(content)
        logger.debug("Loaded configuration from %s", path)

    for key, value in overrides.items():
        if key not in known:
            msg = f"Unknown configuration key: {key!r}"
            raise ConfigError(msg)
        if value is not None:
            values[key] = value

    try:
        return replace(RunConfig(), **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
