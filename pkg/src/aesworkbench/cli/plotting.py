"""Static figures of a state: photon-number distribution, Husimi Q, squeeze ellipse.

Every figure is written next to the data it was drawn from; the data file is the
authoritative output.
"""

import logging
import math
import pathlib
from typing import Any
from typing import Literal

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from aesworkbench import zoo  # noqa: E402
from aesworkbench.cli.commands import jsonable  # noqa: E402
from aesworkbench.cli.io import write_record  # noqa: E402
from aesworkbench.cli.io import write_table  # noqa: E402
from aesworkbench.config import RunConfig  # noqa: E402
from aesworkbench.moments import covariance_matrix  # noqa: E402
from aesworkbench.moments import husimi_integral  # noqa: E402
from aesworkbench.moments import husimi_q  # noqa: E402
from aesworkbench.moments import quadrature_report  # noqa: E402

logger = logging.getLogger(__name__)

PLOT_KINDS = ("pn-dist", "husimi-q", "squeeze-ellipse")
GRID_POINTS = 161
MIN_EXTENT = 4.0
ELLIPSE_POINTS = 181
DPI = 150

TPlot = Literal["pn-dist", "husimi-q", "squeeze-ellipse"]


def husimi_extent(bundle: zoo.StateBundle, tail_threshold: float) -> float:
    """Half-width of a square grid holding the state's Husimi function.

    Args:
        bundle (zoo.StateBundle): The state.
        tail_threshold (float): Largest accepted tail mass.

    Returns:
        float: max(4, sqrt<N> + 4 max(1, 2 sigma)) with sigma the largest
            quadrature deviation.
    """
    moments = quadrature_report(bundle.fock, tail_threshold)
    mean_n = float(np.sum(np.arange(bundle.fock.dim) * bundle.fock.probabilities()))
    spread = 2 * math.sqrt(max(moments.var_a, moments.var_b))
    return max(MIN_EXTENT, math.sqrt(mean_n) + 4 * max(1.0, spread))


def _save(fig: plt.Figure, path: pathlib.Path) -> pathlib.Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp.png")
    fig.savefig(tmp, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    tmp.replace(path)
    return path


def plot_pn_dist(
    bundle: zoo.StateBundle, config: RunConfig, stem: str
) -> list[pathlib.Path]:
    """Bar chart of |c_n|^2 and its table."""
    probs = bundle.fock.probabilities()
    n = np.arange(len(probs))
    data = {"kind": "pn-dist", "n": n, "prob": probs}

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(n, probs, width=0.8, color="tab:blue")
    ax.set_xlabel("n")
    ax.set_ylabel("P(n)")
    ax.set_title(f"Photon-number distribution: {bundle.family}")
    last = int(np.max(np.nonzero(probs > 1e-6 * probs.max())[0])) + 2
    ax.set_xlim(-0.5, last + 0.5)

    rows = zip(n.tolist(), probs.tolist())
    written = _write_data(data, config, stem, ("n", "prob"), rows)
    written.append(_save(fig, config.output_dir / f"{stem}.png"))
    return written


def plot_husimi_q(
    bundle: zoo.StateBundle, config: RunConfig, stem: str
) -> list[pathlib.Path]:
    """Filled contour of Q(alpha) and its grid."""
    extent = husimi_extent(bundle, config.tail_threshold)
    re = np.linspace(-extent, extent, GRID_POINTS)
    im = np.linspace(-extent, extent, GRID_POINTS)
    field = husimi_q(bundle.fock, re, im)
    integral = husimi_integral(field, re, im)
    logger.info("Husimi Q of %s integrates to %.6f", bundle.family, integral)
    data = {"kind": "husimi-q", "re": re, "im": im, "q": field, "integral": integral}

    fig, ax = plt.subplots(figsize=(6, 5.5))
    contour = ax.contourf(re, im, field, levels=60, cmap="viridis")
    fig.colorbar(contour, ax=ax, label="Q(alpha)")
    ax.set_xlabel("Re alpha")
    ax.set_ylabel("Im alpha")
    ax.set_title(f"Husimi Q: {bundle.family}")
    ax.set_aspect("equal")

    rows = (
        (float(x), float(y), float(field[j, i]))
        for j, y in enumerate(im)
        for i, x in enumerate(re)
    )
    written = _write_data(data, config, stem, ("re", "im", "q"), rows)
    written.append(_save(fig, config.output_dir / f"{stem}.png"))
    return written


def squeeze_ellipse(cov: np.ndarray, points: int = ELLIPSE_POINTS) -> np.ndarray:
    """One-deviation contour of a 2x2 covariance matrix, centered at zero.

    Args:
        cov (np.ndarray): Covariance of (X1, X2).
        points (int, optional): Samples. Defaults to ELLIPSE_POINTS.

    Returns:
        np.ndarray: Array of shape (points, 2).
    """
    values, vectors = np.linalg.eigh(cov)
    angle = np.linspace(0, 2 * np.pi, points)
    circle = np.stack([np.cos(angle), np.sin(angle)])
    return (vectors @ (np.sqrt(np.maximum(values, 0))[:, None] * circle)).T


def plot_squeeze_ellipse(
    bundle: zoo.StateBundle, config: RunConfig, stem: str
) -> list[pathlib.Path]:
    """Quadrature ellipse against the vacuum circle of radius 1/2."""
    moments = quadrature_report(bundle.fock, config.tail_threshold)
    cov = covariance_matrix(bundle.fock, config.tail_threshold)
    contour = squeeze_ellipse(cov) + np.array([moments.mean_a, moments.mean_b])
    values, vectors = np.linalg.eigh(cov)
    data = {
        "kind": "squeeze-ellipse",
        "moments": moments.as_record(),
        "covariance": cov,
        "axes": np.sqrt(np.maximum(values, 0)),
        "angle": math.atan2(vectors[1, 0], vectors[0, 0]),
        "x1": contour[:, 0],
        "x2": contour[:, 1],
    }

    angle = np.linspace(0, 2 * np.pi, ELLIPSE_POINTS)
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    ax.plot(contour[:, 0], contour[:, 1], color="tab:red", label="state")
    ax.plot(
        moments.mean_a + 0.5 * np.cos(angle),
        moments.mean_b + 0.5 * np.sin(angle),
        color="gray",
        linestyle="--",
        label="vacuum",
    )
    ax.set_xlabel("X1")
    ax.set_ylabel("X2")
    ax.set_title(f"Quadrature uncertainty: {bundle.family}")
    ax.set_aspect("equal")
    ax.legend()

    rows = zip(contour[:, 0].tolist(), contour[:, 1].tolist())
    written = _write_data(data, config, stem, ("x1", "x2"), rows)
    written.append(_save(fig, config.output_dir / f"{stem}.png"))
    return written


def _write_data(
    data: dict[str, Any],
    config: RunConfig,
    stem: str,
    header: tuple[str, ...],
    rows: Any,
) -> list[pathlib.Path]:
    record = jsonable({**data, "config": config.as_record()})
    if config.format == "json":
        return write_record(record, config.output_dir, stem, "json")
    return [write_table(config.output_dir / f"{stem}.csv", header, rows)]


PLOTTERS = {
    "pn-dist": plot_pn_dist,
    "husimi-q": plot_husimi_q,
    "squeeze-ellipse": plot_squeeze_ellipse,
}


def plot(
    kind: TPlot, bundle: zoo.StateBundle, config: RunConfig
) -> list[pathlib.Path]:
    """Draw one kind of figure and write it with its data.

    Args:
        kind (TPlot): Figure kind.
        bundle (zoo.StateBundle): The state.
        config (RunConfig): Run settings, output directory and data format.

    Raises:
        KeyError: If the kind is unknown.

    Returns:
        list[pathlib.Path]: Written files, data first.
    """
    return PLOTTERS[kind](bundle, config, f"{kind}-{bundle.family}")
