"""Verification suites run by ``aes-workbench verify``.

Each suite returns a SuiteReport of named checks with the measured value and the
tolerance it was held to. Random draws come from a seeded generator so reports
are reproducible.
"""

import cmath
import logging
import math
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Callable

import numpy as np

from aesworkbench import zoo
from aesworkbench.cli.commands import ode_points
from aesworkbench.cli.commands import truncation_for
from aesworkbench.complexfn import kummer_transform_pair
from aesworkbench.config import RunConfig
from aesworkbench.moments import intelligence_check
from aesworkbench.moments import quadrature_report
from aesworkbench.moments import su11_report
from aesworkbench.oracle import COMMUTATOR_TOL
from aesworkbench.oracle import apply_displacement
from aesworkbench.oracle import apply_squeeze
from aesworkbench.oracle import commutator_check
from aesworkbench.oracle import eigen_residual
from aesworkbench.oracle import fock_state
from aesworkbench.solver import AlgebraSpec
from aesworkbench.solver import AnalyticState
from aesworkbench.solver import FockVector
from aesworkbench.solver import converged_fock_vector
from aesworkbench.solver import fidelity
from aesworkbench.solver import kummer_branch_state
from aesworkbench.solver import ode_residual
from aesworkbench.solver import solve_with_vector

logger = logging.getLogger(__name__)

SEED = 20_240_611
DRAWS = 20
KUMMER_SAMPLES = 1000
KUMMER_RADIUS = 20.0
ROBERTSON_STATES = 1000
RANDOM_SUPPORT = 24
RANDOM_DIM = 64
ORACLE_DIM = 128
HERMITE_DIM = 96
COMMUTATOR_DIMS = (32, 64, 128)
ODE_TOL = 1e-7
FIDELITY_TOL = 1e-10
ORACLE_TOL = 1e-8
HERMITE_TOL = 1e-10
DUALITY_TOL = 1e-9
NORM_TOL = 1e-9
MOMENT_TOL = 1e-8
CAT_VARIANCE_TOL = 1e-10
FLOOR_TOL = 1e-10
EVEN_CAT_VARIANCE = 0.25 * math.tanh(1.0) + 0.125


@dataclass(frozen=True)
class Check:
    """One measured quantity against its tolerance."""

    name: str
    value: float
    tol: float
    passed: bool


@dataclass
class SuiteReport:
    """Checks of one suite."""

    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """bool: Whether every check passed."""
        return all(check.passed for check in self.checks)

    def below(self, name: str, value: float, tol: float) -> None:
        """Record a check that passes when value <= tol."""
        self.checks.append(Check(name, float(value), float(tol), bool(value <= tol)))

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: Suite name, overall result and every check."""
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [asdict(check) for check in self.checks],
        }


def _disk(rng: np.random.Generator, radius: float) -> complex:
    r = radius * math.sqrt(rng.uniform())
    return r * cmath.exp(2j * math.pi * rng.uniform())


def _squeeze(
    rng: np.random.Generator, low: float = 0.0, high: float = 0.75
) -> zoo.SqueezeParam:
    return zoo.SqueezeParam(rng.uniform(low, high), rng.uniform(0, 2 * math.pi))


def _eta(rng: np.random.Generator) -> complex:
    return complex(rng.uniform(0.5, 2.0), rng.uniform(-0.5, 0.5))


def _family_draws(
    rng: np.random.Generator, truncation: zoo.Truncation
) -> list[tuple[str, Callable[[], zoo.StateBundle]]]:
    """Desk-scale constructors, parameters drawn up front."""
    draws: list[tuple[str, Callable[[], zoo.StateBundle]]] = []
    for i in range(DRAWS):
        ups = _disk(rng, 1.5)
        n = int(rng.integers(0, 4))
        xi = _squeeze(rng)
        xi_small = _squeeze(rng, high=0.5)
        cat_amp = _disk(rng, 1.5) or 0.5
        tau = rng.uniform(0.2, 2.0)
        varphi = rng.uniform(0, 2 * math.pi)
        z = _disk(rng, 1.0)
        lam = _disk(rng, 1.0)
        eta = _eta(rng)
        draws += [
            (f"glauber#{i}", lambda u=ups: zoo.glauber(u, truncation)),
            (
                f"displaced-fock#{i}",
                lambda n=n, u=ups: zoo.displaced_fock(n, u, truncation),
            ),
            (
                f"displaced-squeezed#{i}",
                lambda x=xi, u=ups: zoo.displaced_squeezed(x, u, truncation),
            ),
            (
                f"dsfs#{i}",
                lambda n=n, x=xi, u=ups / 1.5: zoo.dsfs(n, x, u, truncation),
            ),
            (
                f"cat#{i}",
                lambda u=cat_amp, t=tau, p=varphi: zoo.cat(u, t, p, truncation),
            ),
            (
                f"cat-sdz#{i}",
                lambda u=cat_amp, t=tau, p=varphi, x=xi_small, z=z: zoo.cat_sdz(
                    u, t, p, x, z, truncation
                ),
            ),
            (
                f"su11-is#{i}",
                lambda la=lam, e=eta: zoo.su11_is(la, e, None, truncation),
            ),
            (
                f"su11-is-displaced-squeezed#{i}",
                lambda la=lam, e=eta, x=xi_small, z=z: zoo.su11_is_displaced_squeezed(
                    la, e, x, z, None, truncation
                ),
            ),
        ]
    return draws


def commutators(config: RunConfig) -> SuiteReport:
    """Two-photon and su(1,1) commutators on interior blocks."""
    report = SuiteReport("commutators")
    for dim in COMMUTATOR_DIMS:
        result = commutator_check(dim)
        for name, deviation in result.deviations.items():
            report.below(
                f"N={dim} {name}", deviation, COMMUTATOR_TOL * result.scales[name]
            )
    return report


def _max_ode_residual(state: AnalyticState) -> float:
    return max(ode_residual(state, point) for point in ode_points())


def eigen_residuals(config: RunConfig) -> SuiteReport:
    """Eigen-residual of every family and ODE residual of every case tag."""
    rng = np.random.default_rng(SEED)
    truncation = truncation_for(config)
    report = SuiteReport("eigen-residuals")
    for name, build in _family_draws(rng, truncation):
        bundle = build()
        residual = eigen_residual(bundle.spec, bundle.fock, config.tail_threshold)
        report.below(f"{name} eigen", residual.value, config.residual_tol)
        report.below(f"{name} ode", _max_ode_residual(bundle.state), ODE_TOL)

    hand_built = {
        "DegenerateBessel": AlgebraSpec(0, 1, 0, 0, 0.5, lam=0.2),
        "FirstOrderSqueezeLike": AlgebraSpec(1, 0, 0.3, 0, 0, lam=2),
    }
    for tag, spec in hand_built.items():
        state, fock = solve_with_vector(
            spec,
            dim=truncation.dim,
            tail_threshold=truncation.tail_threshold,
            max_dim=truncation.max_dim,
        )
        report.below(
            f"{tag} eigen",
            eigen_residual(spec, fock, config.tail_threshold).value,
            config.residual_tol,
        )
        report.below(f"{tag} ode", _max_ode_residual(state), ODE_TOL)
    return report


def _infidelity(a: FockVector, b: FockVector) -> float:
    return 1 - fidelity(a, b)


def _closed_form_norm_error(bundle: zoo.StateBundle, point: complex) -> float:
    """| |closed form| / |normalized state| - 1 | at one point."""
    return abs(abs(bundle.closed_form(point)) / abs(bundle.state.evaluate(point)) - 1)


def _padded(fock: FockVector, dim: int = ORACLE_DIM) -> FockVector:
    size = max(dim, fock.dim)
    return FockVector.from_coefficients(np.pad(fock.coeffs, (0, size - fock.dim)))


def _displace_squeeze(z: complex, xi: zoo.SqueezeParam, psi: FockVector) -> FockVector:
    """D(z) S(xi) psi by exponentiating the generators."""
    return apply_displacement(z, apply_squeeze(xi.xi, psi))


def reductions(config: RunConfig) -> SuiteReport:
    """Family reductions, closed normalizations and the CS/IS intersection."""
    rng = np.random.default_rng(SEED + 1)
    truncation = truncation_for(config)
    report = SuiteReport("reductions")
    for i in range(DRAWS):
        xi = _squeeze(rng, 0.1)
        ups = _disk(rng, 1.0)
        report.below(
            f"dsfs(n=0) = displaced-squeezed #{i}",
            _infidelity(
                zoo.dsfs(0, xi, ups, truncation).fock,
                zoo.displaced_squeezed(xi, ups, truncation).fock,
            ),
            FIDELITY_TOL,
        )

        n = int(rng.integers(1, 4))
        bundle = zoo.dsfs(n, xi, ups, truncation)
        report.below(
            f"dsfs closed-form normalization #{i}",
            _closed_form_norm_error(bundle, _disk(rng, 0.5)),
            NORM_TOL,
        )
        report.below(
            f"dsfs = D(upsilon)S(xi)|n> matrix route #{i}",
            _infidelity(
                bundle.fock, _displace_squeeze(ups, xi, fock_state(n, ORACLE_DIM))
            ),
            ORACLE_TOL,
        )

        amp = _disk(rng, 1.5) or 0.5
        tau = rng.uniform(0.2, 2.0)
        varphi = rng.uniform(0, 2 * math.pi)
        z = _disk(rng, 1.0)
        coeffs = zoo.cat_sdz_coefficients(amp, tau, varphi, xi, z, ORACLE_DIM)
        report.below(
            f"cat-sdz closed-form norm #{i}", abs(np.linalg.norm(coeffs) - 1), NORM_TOL
        )
        plain = zoo.cat_sdz_coefficients(
            amp, tau, varphi, zoo.SqueezeParam(0.0), 0, ORACLE_DIM
        )
        report.below(
            f"cat-sdz(xi=0, z=0) = cat #{i}",
            _infidelity(
                FockVector.from_coefficients(plain),
                zoo.cat(amp, tau, varphi, truncation).fock,
            ),
            FIDELITY_TOL,
        )
        report.below(
            f"cat-sdz Hermite form #{i}",
            np.max(
                np.abs(
                    coeffs[:HERMITE_DIM]
                    - zoo.cat_sdz_hermite_coefficients(
                        amp, tau, varphi, xi, z, HERMITE_DIM
                    )
                )
            ),
            HERMITE_TOL,
        )
        xi_small = _squeeze(rng, 0.1, 0.5)
        base = zoo.cat(amp, tau, varphi, truncation)
        report.below(
            f"cat-sdz = D(z)S(xi)|cat> matrix route #{i}",
            _infidelity(
                zoo.cat_sdz(amp, tau, varphi, xi_small, z, truncation).fock,
                _displace_squeeze(z, xi_small, _padded(base.fock)),
            ),
            ORACLE_TOL,
        )

        lam = _disk(rng, 1.0) or 0.5
        report.below(
            f"eta=1 intelligent state = even cat #{i}",
            _infidelity(
                zoo.su11_is(lam, 1, None, truncation).fock,
                zoo.even_cat(cmath.sqrt(2 * lam), truncation).fock,
            ),
            FIDELITY_TOL,
        )

        eta = _eta(rng)
        omega = zoo.ISParam(eta, 0).omega_eta
        vacuum = zoo.squeezed_vacuum(zoo.SqueezeParam.from_zeta(-omega), truncation)
        report.below(
            f"coherent/intelligent intersection #{i}",
            _infidelity(
                zoo.su11_is(-(eta + 1) * omega / 4, eta, None, truncation).fock,
                vacuum.fock,
            ),
            FIDELITY_TOL,
        )

        base = zoo.su11_is(lam, eta, None, truncation)
        moved = zoo.su11_is_displaced_squeezed(lam, eta, xi_small, z, None, truncation)
        report.below(
            f"IS displaced-squeezed = D(z)S(xi)|IS> matrix route #{i}",
            _infidelity(
                moved.fock,
                _displace_squeeze(z, xi_small, _padded(base.fock)),
            ),
            ORACLE_TOL,
        )
    return report


def _random_state(rng: np.random.Generator) -> FockVector:
    """Gaussian random amplitudes on the first RANDOM_SUPPORT number states."""
    coeffs = np.zeros(RANDOM_DIM, dtype=complex)
    coeffs[:RANDOM_SUPPORT] = rng.normal(size=RANDOM_SUPPORT) + 1j * rng.normal(
        size=RANDOM_SUPPORT
    )
    return FockVector.from_coefficients(coeffs)


def uncertainty(config: RunConfig) -> SuiteReport:
    """Intelligent-state moments, cat variances and the Robertson floor."""
    rng = np.random.default_rng(SEED + 2)
    truncation = truncation_for(config)
    tail = config.tail_threshold
    report = SuiteReport("uncertainty")

    for i in range(DRAWS):
        eta = _eta(rng)
        bundle = zoo.su11_is(_disk(rng, 1.0), eta, None, truncation)
        moments = su11_report(bundle.fock, tail)
        var_k1 = moments.mean_c / (2 * eta.real)
        report.below(
            f"su11-is var K1 #{i}", abs(moments.var_a - var_k1) / var_k1, MOMENT_TOL
        )
        report.below(
            f"su11-is var K2 #{i}",
            abs(moments.var_b - abs(eta) ** 2 * var_k1) / var_k1,
            MOMENT_TOL,
        )
        report.below(
            f"su11-is covariance #{i}",
            abs(moments.covar - eta.imag * var_k1) / var_k1,
            MOMENT_TOL,
        )
        check = intelligence_check(moments, "generalized")
        report.below(f"su11-is generalized equality #{i}", check.residual, check.tol)

    even = su11_report(zoo.even_cat(1.0, truncation).fock, tail)
    for label, value in (("K1", even.var_a), ("K2", even.var_b)):
        error = abs(value - EVEN_CAT_VARIANCE)
        report.below(f"even cat (1) var {label}", error, CAT_VARIANCE_TOL)

    for i in range(DRAWS):
        amp = _disk(rng, 2.0) or 0.5
        tau, varphi = rng.uniform(0.2, 2.0), rng.uniform(0, 2 * math.pi)
        bundle = zoo.cat(amp, tau, varphi, truncation)
        check = intelligence_check(su11_report(bundle.fock, tail), "ordinary")
        report.below(f"cat ordinary equality #{i}", check.residual, check.tol)

    for theta in (0.0, math.pi):
        xi = zoo.SqueezeParam(rng.uniform(0.1, 0.75), theta)
        bundle = zoo.displaced_squeezed(xi, _disk(rng, 1.5), truncation)
        moments = quadrature_report(bundle.fock, tail)
        report.below(
            f"displaced-squeezed theta={theta:.3g} Heisenberg",
            abs(moments.heisenberg_residual),
            FLOOR_TOL,
        )

    for name, build in _family_draws(rng, truncation):
        fock = build().fock
        for pair in (quadrature_report(fock, tail), su11_report(fock, tail)):
            label = f"{name} Robertson floor {pair.pair}"
            report.below(label, -pair.robertson_residual, FLOOR_TOL)

    worst: dict[str, float] = {}
    for _ in range(ROBERTSON_STATES):
        fock = _random_state(rng)
        for pair in (quadrature_report(fock, tail), su11_report(fock, tail)):
            worst[pair.pair] = max(
                worst.get(pair.pair, -math.inf), -pair.robertson_residual
            )
    for pair, value in worst.items():
        label = f"{ROBERTSON_STATES} random states Robertson floor {pair}"
        report.below(label, value, FLOOR_TOL)
    return report


def kummer_duality(config: RunConfig) -> SuiteReport:
    """Both branches of Delta give the same state; Kummer's identity holds."""
    rng = np.random.default_rng(SEED + 3)
    truncation = truncation_for(config)
    report = SuiteReport("kummer-duality")
    for i in range(DRAWS):
        n = int(rng.integers(0, 4))
        spec = zoo.dsfs_spec(n, _squeeze(rng, 0.1), _disk(rng, 1.0))
        states = [
            kummer_branch_state(
                spec,
                sign,
                tail_threshold=truncation.tail_threshold,
                max_dim=truncation.max_dim,
            )
            for sign in (1, -1)
        ]
        vectors = [
            converged_fock_vector(
                state, truncation.dim, truncation.tail_threshold, truncation.max_dim
            )
            for state in states
        ]
        report.below(
            f"dsfs branches as rays #{i}", _infidelity(*vectors), DUALITY_TOL
        )
        points = [_disk(rng, 1.0) for _ in range(8)]
        plus = np.array([states[0].evaluate(p) for p in points])
        minus = np.array([states[1].evaluate(p) for p in points])
        report.below(
            f"dsfs branches pointwise #{i}",
            np.max(np.abs(plus - minus)) / np.max(np.abs(plus)),
            DUALITY_TOL,
        )

    worst = 0.0
    for _ in range(KUMMER_SAMPLES):
        d = complex(rng.uniform(-2, 2), rng.uniform(-1, 1))
        c = rng.choice([0.5, 1.5])
        x = _disk(rng, KUMMER_RADIUS)
        direct, transformed = kummer_transform_pair(d, c, x)
        worst = max(worst, abs(direct - transformed) / max(abs(direct), 1e-300))
    report.below(
        f"1F1 Kummer transformation, {KUMMER_SAMPLES} samples",
        worst,
        DUALITY_TOL,
    )
    return report


SUITES: dict[str, Callable[[RunConfig], SuiteReport]] = {
    "commutators": commutators,
    "eigen-residuals": eigen_residuals,
    "reductions": reductions,
    "uncertainty": uncertainty,
    "kummer-duality": kummer_duality,
}


def run_suite(name: str, config: RunConfig) -> list[SuiteReport]:
    """Run one suite, or every suite for "all".

    Args:
        name (str): Suite name or "all".
        config (RunConfig): Run settings.

    Raises:
        KeyError: If the suite is unknown.

    Returns:
        list[SuiteReport]: One report per suite run.
    """
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        logger.info("Running suite %s", suite)
        report = SUITES[suite](config)
        failed = [check.name for check in report.checks if not check.passed]
        if failed:
            logger.warning("Suite %s: %d failed checks: %s", suite, len(failed), failed)
        reports.append(report)
    return reports


def suite_record(reports: list[SuiteReport], config: RunConfig) -> dict[str, Any]:
    """Machine-readable verification record."""
    return {
        "passed": all(report.passed for report in reports),
        "suites": [report.as_record() for report in reports],
        "config": config.as_record(),
    }
