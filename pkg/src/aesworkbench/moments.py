"""Moments, uncertainty relations and phase-space summaries from Fock vectors.

Everything is a Fock sum over the truncated coefficients; closed-form moment
formulas are only used as test oracles.
"""

import logging
from dataclasses import asdict
from dataclasses import dataclass
from typing import Any
from typing import Literal

import numpy as np

from aesworkbench.errors import NotConverged
from aesworkbench.errors import ZeroMean
from aesworkbench.oracle import annihilation
from aesworkbench.oracle import creation
from aesworkbench.solver import TAIL_THRESHOLD
from aesworkbench.solver import FockVector

logger = logging.getLogger(__name__)

PADDING = 4
ZERO_MEAN_TOL = 1e-15

TPair = Literal["X1X2", "K1K2"]
TKind = Literal["ordinary", "generalized"]


@dataclass(frozen=True)
class MomentReport:
    """First and second moments of an observable pair (A, B) with C = -i[A, B]."""

    pair: TPair
    mean_a: float
    mean_b: float
    var_a: float
    var_b: float
    covar: float
    mean_c: float

    @property
    def robertson_residual(self) -> float:
        """float: var_A var_B - (<C>^2 + 4 covar^2) / 4, never below zero."""
        return self.var_a * self.var_b - 0.25 * (self.mean_c**2 + 4 * self.covar**2)

    @property
    def heisenberg_residual(self) -> float:
        """float: var_A var_B - <C>^2 / 4, never below zero."""
        return self.var_a * self.var_b - 0.25 * self.mean_c**2

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: Fields and both residuals."""
        record = asdict(self)
        record["robertson_residual"] = self.robertson_residual
        record["heisenberg_residual"] = self.heisenberg_residual
        return record


@dataclass(frozen=True)
class IntelligenceResult:
    """Outcome of an uncertainty-equality check."""

    passed: bool
    residual: float
    tol: float


def _padded(psi: FockVector, tail_threshold: float) -> np.ndarray:
    if psi.tail_mass > tail_threshold:
        msg = f"State tail mass {psi.tail_mass:.3g} above {tail_threshold:.3g}"
        raise NotConverged(msg, tail_mass=psi.tail_mass)
    return np.pad(psi.coeffs, (0, PADDING))


def _pair_report(
    pair: TPair, a_op: np.ndarray, b_op: np.ndarray, vec: np.ndarray, mean_c: float
) -> MomentReport:
    a_vec = a_op @ vec
    b_vec = b_op @ vec
    mean_a = float(np.vdot(vec, a_vec).real)
    mean_b = float(np.vdot(vec, b_vec).real)
    delta_a = a_vec - mean_a * vec
    delta_b = b_vec - mean_b * vec
    return MomentReport(
        pair=pair,
        mean_a=mean_a,
        mean_b=mean_b,
        var_a=float(np.vdot(delta_a, delta_a).real),
        var_b=float(np.vdot(delta_b, delta_b).real),
        covar=float(np.vdot(delta_a, delta_b).real),
        mean_c=mean_c,
    )


def quadrature_report(
    psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> MomentReport:
    """Moments of X1 = (a+ + a)/2 and X2 = i(a+ - a)/2, for which C = 1/2.

    Args:
        psi (FockVector): Normalized state.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Raises:
        NotConverged: If psi's tail is too heavy.

    Returns:
        MomentReport: The report.
    """
    vec = _padded(psi, tail_threshold)
    a = annihilation(len(vec)).entries
    ad = creation(len(vec)).entries
    return _pair_report("X1X2", (ad + a) / 2, 1j * (ad - a) / 2, vec, 0.5)


def su11_report(
    psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> MomentReport:
    """Moments of K1 = (a+^2 + a^2)/4 and K2 = (a+^2 - a^2)/4i, with C = K0.

    Args:
        psi (FockVector): Normalized state.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Raises:
        NotConverged: If psi's tail is too heavy.

    Returns:
        MomentReport: The report; mean_c is <K0> = <N>/2 + 1/4.
    """
    vec = _padded(psi, tail_threshold)
    a = annihilation(len(vec)).entries
    ad = creation(len(vec)).entries
    a2, ad2 = a @ a, ad @ ad
    mean_k0 = float(np.sum(np.abs(vec) ** 2 * (np.arange(len(vec)) / 2 + 0.25)))
    return _pair_report("K1K2", (ad2 + a2) / 4, (ad2 - a2) / 4j, vec, mean_k0)


def covariance_matrix(
    psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> np.ndarray:
    """Symmetrized covariance matrix of (X1, X2).

    Args:
        psi (FockVector): Normalized state.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Returns:
        np.ndarray: [[var X1, cov], [cov, var X2]].
    """
    report = quadrature_report(psi, tail_threshold)
    return np.array(
        [[report.var_a, report.covar], [report.covar, report.var_b]], dtype=float
    )


def intelligence_check(
    report: MomentReport, kind: TKind = "ordinary", tol: float | None = None
) -> IntelligenceResult:
    """Whether a state saturates the Heisenberg or the Robertson relation.

    Args:
        report (MomentReport): Moments of the pair.
        kind (TKind, optional): "ordinary" needs the Heisenberg equality and zero
            covariance, "generalized" the Robertson equality. Defaults to
            "ordinary".
        tol (float | None, optional): Tolerance. Defaults to
            1e-8 (1 + var_A var_B).

    Raises:
        ValueError: If kind is unknown.

    Returns:
        IntelligenceResult: Pass flag and the measured residual.
    """
    if tol is None:
        tol = 1e-8 * (1 + report.var_a * report.var_b)
    if kind == "ordinary":
        residual = max(abs(report.heisenberg_residual), abs(report.covar))
    elif kind == "generalized":
        residual = abs(report.robertson_residual)
    else:
        msg = f"Unknown intelligence kind {kind!r}"
        raise ValueError(msg)
    return IntelligenceResult(passed=residual <= tol, residual=residual, tol=tol)


def photon_stats(
    psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> tuple[float, float, float]:
    """Mean photon number, its variance and the Mandel Q parameter.

    Args:
        psi (FockVector): Normalized state.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Raises:
        NotConverged: If psi's tail is too heavy.
        ZeroMean: If <N> vanishes, leaving Q undefined.

    Returns:
        tuple[float, float, float]: <N>, Var N and (Var N - <N>) / <N>.
    """
    probs = np.abs(_padded(psi, tail_threshold)) ** 2
    n = np.arange(len(probs))
    mean = float(np.sum(n * probs))
    var = float(np.sum(n**2 * probs) - mean**2)
    if mean <= ZERO_MEAN_TOL:
        msg = "Mandel Q is undefined for <N> = 0"
        raise ZeroMean(msg)
    return mean, var, (var - mean) / mean


def husimi_q(psi: FockVector, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Husimi function Q(alpha) = e^{-|alpha|^2} |f(alpha*)|^2 / pi on a grid.

    Args:
        psi (FockVector): Normalized state.
        re (np.ndarray): Real parts of the grid, 1-D.
        im (np.ndarray): Imaginary parts of the grid, 1-D.

    Returns:
        np.ndarray: Field of shape (len(im), len(re)).
    """
    grid = np.asarray(re)[None, :] + 1j * np.asarray(im)[:, None]
    conj = grid.conj()
    term = np.ones_like(grid)
    total = psi.coeffs[0] * term
    for n in range(1, psi.dim):
        term = term * conj / np.sqrt(n)
        total = total + psi.coeffs[n] * term
    return np.exp(-np.abs(grid) ** 2) * np.abs(total) ** 2 / np.pi


def husimi_integral(field: np.ndarray, re: np.ndarray, im: np.ndarray) -> float:
    """Riemann sum of a field sampled on a uniform rectangular grid.

    Args:
        field (np.ndarray): Values of shape (len(im), len(re)).
        re (np.ndarray): Real grid.
        im (np.ndarray): Imaginary grid.

    Returns:
        float: The integral estimate.
    """
    dx = (re[-1] - re[0]) / (len(re) - 1)
    dy = (im[-1] - im[0]) / (len(im) - 1)
    return float(np.sum(field) * dx * dy)
