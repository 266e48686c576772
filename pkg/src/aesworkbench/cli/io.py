"""Reading and writing output records.

Files are written once through a temporary file in the target directory and
moved into place with os.replace. Floats are written with repr, so records read
back are bit-identical.
"""

import csv
import io
import json
import logging
import os
import pathlib
import tempfile
from typing import Any
from typing import Iterable

import numpy as np

from aesworkbench.errors import InvalidSpec
from aesworkbench.solver import FockVector

logger = logging.getLogger(__name__)

COEFFICIENT_COLUMNS = ("n", "re", "im", "prob")


def write_atomic(path: pathlib.Path, text: str) -> pathlib.Path:
    """Write text to path through a temporary file and an atomic rename.

    Args:
        path (pathlib.Path): Target file; missing parent directories are created.
        text (str): Content.

    Returns:
        pathlib.Path: The target path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        pathlib.Path(tmp).unlink(missing_ok=True)
        raise
    logger.info("Wrote %s", path)
    return path


def _flatten(prefix: str, value: Any) -> Iterable[tuple[str, Any]]:
    if isinstance(value, dict):
        for key, item in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else str(key), item)
    elif isinstance(value, list) and not (
        value and isinstance(value[0], dict) and "n" in value[0]
    ):
        for i, item in enumerate(value):
            yield from _flatten(f"{prefix}[{i}]", item)
    else:
        yield prefix, value


def _csv_text(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def write_record(
    record: dict[str, Any], output_dir: pathlib.Path, stem: str, fmt: str
) -> list[pathlib.Path]:
    """Write a state record as JSON, or as coefficient and summary CSV files.

    Args:
        record (dict[str, Any]): JSON-serialisable record.
        output_dir (pathlib.Path): Target directory.
        stem (str): File name stem.
        fmt (str): "json" or "csv".

    Returns:
        list[pathlib.Path]: Written files.
    """
    if fmt == "json":
        path = output_dir / f"{stem}.json"
        return [write_atomic(path, json.dumps(record, indent=2) + "\n")]

    written = []
    rows = record.get("coefficients", {}).get("rows")
    if rows is not None:
        written.append(
            write_atomic(
                output_dir / f"{stem}.coefficients.csv",
                _csv_text(
                    COEFFICIENT_COLUMNS,
                    ([row[c] for c in COEFFICIENT_COLUMNS] for row in rows),
                ),
            )
        )
    summary = [
        (key, value)
        for key, value in _flatten("", record)
        if not key.startswith("coefficients.rows")
    ]
    summary_path = output_dir / f"{stem}.summary.csv"
    written.append(write_atomic(summary_path, _csv_text(("key", "value"), summary)))
    return written


def write_table(
    path: pathlib.Path, header: Iterable[str], rows: Iterable[Iterable[Any]]
) -> pathlib.Path:
    """Write a plain CSV table atomically."""
    return write_atomic(path, _csv_text(header, rows))


def read_record(path: str | pathlib.Path) -> dict[str, Any]:
    """Load a JSON record.

    Args:
        path (str | pathlib.Path): Record file.

    Raises:
        InvalidSpec: If the file cannot be read or parsed.

    Returns:
        dict[str, Any]: The record.
    """
    try:
        return json.loads(pathlib.Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        msg = f"Cannot read record '{path}': {exc}"
        raise InvalidSpec(msg) from exc


def read_coefficients(path: str | pathlib.Path) -> FockVector:
    """Re-ingest the coefficients of a JSON record or a coefficient CSV file.

    The coefficients are used exactly as stored, without renormalization.

    Args:
        path (str | pathlib.Path): A ``.json`` record or ``.coefficients.csv``.

    Raises:
        InvalidSpec: If the file holds no coefficients.

    Returns:
        FockVector: The stored vector.
    """
    path = pathlib.Path(path)
    if path.suffix == ".json":
        rows = read_record(path).get("coefficients", {}).get("rows")
        if not rows:
            msg = f"Record '{path}' holds no coefficients"
            raise InvalidSpec(msg)
        pairs = [(float(row["re"]), float(row["im"])) for row in rows]
    else:
        try:
            with path.open(newline="") as handle:
                reader = csv.DictReader(handle)
                pairs = [(float(row["re"]), float(row["im"])) for row in reader]
        except (OSError, KeyError, ValueError) as exc:
            msg = f"Cannot read coefficients from '{path}': {exc}"
            raise InvalidSpec(msg) from exc
    coeffs = np.array([complex(re, im) for re, im in pairs], dtype=complex)
    return FockVector.from_coefficients(coeffs, normalize=False)
