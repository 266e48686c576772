"""Eigenstates of beta1 N + beta2 a^2 + beta3 a+^2 + beta4 a + beta5 a+.

In the Fock-Bargmann picture the eigenvalue equation becomes the second-order
ODE

    beta2 f'' + (beta1 z + beta4) f' + (beta3 z^2 + beta5 z - lambda) f = 0,

whose solutions are classified here into six cases. Each case has a closed form
(Kummer, Bessel/Airy, exponentials, first-order products). Fock coefficients are
obtained independently from the coefficient recurrence of the same ODE.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from dataclasses import replace
from enum import Enum
from typing import Any
from typing import Sequence

import numpy as np
from scipy.linalg import eigh
from scipy.linalg import lstsq
from scipy.linalg import svd
from scipy.special import gammaln

from aesworkbench.complexfn import TParity
from aesworkbench.complexfn import degenerate_kernel
from aesworkbench.complexfn import kummer_1f1
from aesworkbench.complexfn import nonpositive_integer
from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import NoEigenstate
from aesworkbench.errors import NonIntegerExponent
from aesworkbench.errors import NonNormalizable
from aesworkbench.errors import TruncationNotConverged

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-12
POLY_TOL = 1e-8
TAIL_WIDTH = 16
TAIL_THRESHOLD = 1e-14
GOOD_DIRECTION_TOL = 1e-6
PARALLEL_TOL = 1e-4
EXTRA_ROWS = 32
FORWARD_RESCALE = 1e100
HEAD_SIZE = 32
HEAD_POINTS = 128
PHASE_TOL = 1e-8
DEFAULT_DIM = 64
MAX_DIM = 512
STENCIL_RADIUS = 0.05
STENCIL_POINTS = 16

TMix = tuple[complex, complex]


class CaseTag(str, Enum):
    """Closed-form families of the eigenvalue ODE."""

    GENERAL_KUMMER = "GeneralKummer"
    DEGENERATE_BESSEL = "DegenerateBessel"
    CONSTANT_COEFF = "ConstantCoeff"
    FIRST_ORDER_SQUEEZE_LIKE = "FirstOrderSqueezeLike"
    OSCILLATOR = "Oscillator"
    HEISENBERG = "Heisenberg"


@dataclass(frozen=True)
class AlgebraSpec:
    """Coefficients of the algebra element and the requested eigenvalue."""

    beta1: complex
    beta2: complex
    beta3: complex
    beta4: complex
    beta5: complex
    lam: complex

    def __post_init__(self) -> None:
        """Coerce to complex and validate.

        Raises:
            InvalidSpec: If a value is not finite or all betas vanish.
        """
        for name in ("beta1", "beta2", "beta3", "beta4", "beta5", "lam"):
            try:
                value = complex(getattr(self, name))
            except (TypeError, ValueError) as exc:
                msg = f"{name} is not a complex number: {getattr(self, name)!r}"
                raise InvalidSpec(msg) from exc
            if not cmath.isfinite(value):
                msg = f"{name} must be finite, got {value!r}"
                raise InvalidSpec(msg)
            object.__setattr__(self, name, value)
        if self.scale == 0:
            msg = "At least one beta coefficient must be nonzero"
            raise InvalidSpec(msg)

    @classmethod
    def from_sequence(cls, betas: Sequence[complex], lam: complex) -> "AlgebraSpec":
        """Build a spec from five betas and an eigenvalue.

        Args:
            betas (Sequence[complex]): beta1 ... beta5.
            lam (complex): Eigenvalue.

        Raises:
            InvalidSpec: If there are not exactly five betas.

        Returns:
            AlgebraSpec: The spec.
        """
        if len(betas) != 5:
            msg = f"Expected 5 beta coefficients, got {len(betas)}"
            raise InvalidSpec(msg)
        return cls(*betas, lam=lam)

    @property
    def betas(self) -> tuple[complex, complex, complex, complex, complex]:
        """tuple: beta1 ... beta5."""
        return (self.beta1, self.beta2, self.beta3, self.beta4, self.beta5)

    @property
    def scale(self) -> float:
        """float: Largest beta modulus, the reference for zero tests."""
        return max(abs(b) for b in self.betas)

    def is_zero(self, value: complex) -> bool:
        """Whether a beta-sized quantity vanishes at the spec's scale."""
        return abs(value) <= ZERO_TOL * self.scale

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: Betas and eigenvalue by name."""
        return {
            "beta": list(self.betas),
            "lambda": self.lam,
        }


@dataclass(frozen=True)
class DerivedParams:
    """Case parameters of the closed-form solution.

    ``branch`` is "polynomial" when the selected parity terminates, "generic"
    otherwise, and None outside the Kummer case. ``parity`` is the parity picked
    when no mix is requested.
    """

    delta: complex | None = None
    sigma: complex | None = None
    mu: complex | None = None
    d: complex | None = None
    omega_plus: complex | None = None
    omega_minus: complex | None = None
    p: complex | None = None
    branch: str | None = None
    parity: TParity | None = None

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: All fields by name."""
        return {
            "delta": self.delta,
            "sigma": self.sigma,
            "mu": self.mu,
            "d": self.d,
            "omega_plus": self.omega_plus,
            "omega_minus": self.omega_minus,
            "p": self.p,
            "branch": self.branch,
            "parity": self.parity,
        }


@dataclass(frozen=True)
class AnalyticState:
    """A classified closed-form eigenfunction with its overall factor."""

    spec: AlgebraSpec
    case_tag: CaseTag
    params: DerivedParams
    mix: TMix = (1 + 0j, 0j)
    norm: complex = 1 + 0j

    def raw(self, alpha: complex) -> complex:
        """Value of the eigenfunction without the overall factor.

        Args:
            alpha (complex): Point of the complex plane.

        Returns:
            complex: The unnormalized value.
        """
        return _RAW_EVALUATORS[self.case_tag](self, complex(alpha))

    def evaluate(self, alpha: complex) -> complex:
        """Value of the normalized eigenfunction.

        Args:
            alpha (complex): Point of the complex plane.

        Returns:
            complex: norm times the raw value.
        """
        return self.norm * self.raw(alpha)

    def as_record(self) -> dict[str, Any]:
        """dict[str, Any]: Case, parameters, mix and normalization."""
        return {
            "case": self.case_tag.value,
            "params": self.params.as_record(),
            "mix": list(self.mix),
            "norm": self.norm,
        }


@dataclass(frozen=True, eq=False)
class FockVector:
    """Truncated Fock coefficients of a normalized state.

    ``norm`` is the l2 norm of the coefficients before normalization and
    ``phase`` the unit factor applied to make the leading coefficient real.
    """

    coeffs: np.ndarray
    tail_mass: float
    norm: float = 1.0
    phase: complex = 1 + 0j

    @property
    def dim(self) -> int:
        """int: Truncation dimension N."""
        return len(self.coeffs)

    @classmethod
    def from_coefficients(
        cls, coeffs: Sequence[complex] | np.ndarray, normalize: bool = True
    ) -> "FockVector":
        """Wrap raw coefficients, measuring the tail.

        Args:
            coeffs (Sequence[complex] | np.ndarray): c_0 ... c_{N-1}.
            normalize (bool, optional): Scale to unit norm. Defaults to True.

        Raises:
            InvalidSpec: If the vector is empty or zero.

        Returns:
            FockVector: The wrapped vector, phase left untouched.
        """
        coeffs = np.asarray(coeffs, dtype=complex).copy()
        if coeffs.size == 0:
            msg = "Empty coefficient vector"
            raise InvalidSpec(msg)
        nrm = float(np.linalg.norm(coeffs))
        if nrm == 0:
            msg = "Zero coefficient vector"
            raise InvalidSpec(msg)
        if normalize:
            coeffs = coeffs / nrm
        return cls(coeffs=coeffs, tail_mass=tail_mass(coeffs), norm=nrm)

    def evaluate(self, alpha: complex) -> complex:
        """Fock-Bargmann function sum_n c_n alpha^n / sqrt(n!)."""
        return complex(np.dot(self.coeffs, monomials(alpha, self.dim)))

    def probabilities(self) -> np.ndarray:
        """np.ndarray: Photon-number distribution |c_n|^2."""
        return np.abs(self.coeffs) ** 2


def tail_start(dim: int) -> int:
    """First index counted in the tail of a dim-dimensional vector."""
    return max(dim - TAIL_WIDTH, dim // 2)


def tail_mass(coeffs: np.ndarray) -> float:
    """Weight sum |c_n|^2 over the tail indices."""
    return float(np.sum(np.abs(coeffs[tail_start(len(coeffs)) :]) ** 2))


def monomials(alpha: complex, dim: int) -> np.ndarray:
    """Values alpha^n / sqrt(n!) for n < dim, built without overflow."""
    out = np.empty(dim, dtype=complex)
    out[0] = 1.0
    for n in range(1, dim):
        out[n] = out[n - 1] * alpha / math.sqrt(n)
    return out


def fidelity(psi: FockVector | np.ndarray, phi: FockVector | np.ndarray) -> float:
    """Phase-free overlap |<phi|psi>| of two vectors, zero-padded to equal size.

    Args:
        psi (FockVector | np.ndarray): First state.
        phi (FockVector | np.ndarray): Second state.

    Returns:
        float: The overlap modulus.
    """
    a = psi.coeffs if isinstance(psi, FockVector) else np.asarray(psi, dtype=complex)
    b = phi.coeffs if isinstance(phi, FockVector) else np.asarray(phi, dtype=complex)
    n = max(len(a), len(b))
    a = np.pad(a, (0, n - len(a)))
    b = np.pad(b, (0, n - len(b)))
    return float(abs(np.vdot(b, a)) / (np.linalg.norm(a) * np.linalg.norm(b)))


def gaussian_coefficients(zeta: complex, b: complex, dim: int) -> np.ndarray:
    """Fock coefficients of exp(zeta alpha^2 / 2 + b alpha), unnormalized.

    Args:
        zeta (complex): Quadratic coefficient.
        b (complex): Linear coefficient.
        dim (int): Number of coefficients.

    Returns:
        np.ndarray: c_0 = 1, c_1 = b, ...
    """
    out = np.zeros(dim, dtype=complex)
    out[0] = 1.0
    if dim > 1:
        out[1] = b
    for n in range(1, dim - 1):
        out[n + 1] = (b * out[n] + zeta * math.sqrt(n) * out[n - 1]) / math.sqrt(n + 1)
    return out


def classify(spec: AlgebraSpec) -> CaseTag:
    """Decide which closed form solves the eigenvalue equation.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.

    Raises:
        NoEigenstate: If the element has no eigenstate (a+ alone, or an a+^2
            term without lowering operators).
        NonNormalizable: If beta1 = beta2 = 0 with beta3, beta4 nonzero, whose
            solution carries a cubic exponent.

    Returns:
        CaseTag: The case.
    """
    b1, b2, b3, b4, _ = spec.betas
    if not spec.is_zero(b2):
        delta_sq = b1 * b1 - 4 * b2 * b3
        if abs(delta_sq) > ZERO_TOL * spec.scale**2:
            return CaseTag.GENERAL_KUMMER
        sigma = _degenerate_sigma(spec)
        if spec.is_zero(sigma):
            return CaseTag.CONSTANT_COEFF
        return CaseTag.DEGENERATE_BESSEL

    if not spec.is_zero(b1):
        if spec.is_zero(b3):
            return CaseTag.OSCILLATOR
        return CaseTag.FIRST_ORDER_SQUEEZE_LIKE

    if spec.is_zero(b4):
        msg = f"No eigenstate exists for beta={spec.betas}: no lowering operator"
        raise NoEigenstate(msg)
    if spec.is_zero(b3):
        return CaseTag.HEISENBERG
    msg = f"beta={spec.betas} gives a cubic exponent, which is never normalizable"
    raise NonNormalizable(msg)


def _degenerate_sigma(spec: AlgebraSpec) -> complex:
    b1, b2, _, b4, b5 = spec.betas
    return b5 - b1 * b4 / (2 * b2)


def _kummer_quantities(
    spec: AlgebraSpec, delta: complex
) -> tuple[complex, complex, complex]:
    """sigma, mu and d of the Kummer case for one branch of Delta."""
    b1, b2, _, b4, b5 = spec.betas
    sigma = b5 + (delta - b1) * b4 / (2 * b2)
    mu = (2 * b2 * b5 - b1 * b4) / delta**2
    energy = (
        b2 * sigma**2 / delta**2 - b4 * sigma / delta + (delta - b1) / 2 - spec.lam
    )
    return sigma, mu, energy / (2 * delta)


def _terminates(d: complex, parity: TParity) -> int | None:
    return nonpositive_integer(d if parity == "even" else d + 0.5, POLY_TOL)


def _validate_mix(mix: Sequence[complex] | None) -> TMix | None:
    if mix is None:
        return None
    if len(mix) != 2:
        msg = f"mix must hold two weights, got {mix!r}"
        raise InvalidSpec(msg)
    pair = (complex(mix[0]), complex(mix[1]))
    if pair == (0, 0):
        msg = "mix must not be (0, 0)"
        raise InvalidSpec(msg)
    return pair


def _kummer_branch_params(
    spec: AlgebraSpec, delta: complex, parity: TParity
) -> DerivedParams:
    """Kummer parameters on one branch of Delta, snapping a terminating d."""
    sigma, mu, d = _kummer_quantities(spec, delta)
    m = _terminates(d, parity)
    if m is not None:
        d = complex(-m) if parity == "even" else complex(-m - 0.5)
    logger.debug(
        "Kummer branch delta=%s parity=%s d=%s (%s)",
        delta,
        parity,
        d,
        "polynomial" if m is not None else "generic",
    )
    return DerivedParams(
        delta=delta,
        sigma=sigma,
        mu=mu,
        d=d,
        branch="polynomial" if m is not None else "generic",
        parity=parity,
    )


def _kummer_params(spec: AlgebraSpec, mix: TMix | None) -> DerivedParams:
    b1, b2 = spec.beta1, spec.beta2
    principal = cmath.sqrt(b1 * b1 - 4 * b2 * spec.beta3)

    def exponents(delta: complex) -> tuple[float, float]:
        return abs((delta - b1) / (2 * b2)), abs((-delta - b1) / (2 * b2))

    def component_ok(delta: complex, parity: TParity) -> bool:
        inner, outer = exponents(delta)
        if inner >= 1:
            return False
        d = _kummer_quantities(spec, delta)[2]
        return _terminates(d, parity) is not None or outer < 1

    branches = (principal, -principal)
    if mix is None:
        for delta in branches:
            d = _kummer_quantities(spec, delta)[2]
            for parity in ("even", "odd"):
                if _terminates(d, parity) is not None and exponents(delta)[0] < 1:
                    return _kummer_branch_params(spec, delta, parity)
        if max(exponents(principal)) < 1:
            return _kummer_branch_params(spec, principal, "even")
    else:
        used = [p for p, w in zip(("even", "odd"), mix) if w != 0]
        for delta in branches:
            if all(component_ok(delta, parity) for parity in used):
                return _kummer_branch_params(spec, delta, used[0])

    msg = (
        f"No normalizable Kummer solution for beta={spec.betas}, lambda={spec.lam}: "
        f"|(delta -/+ beta1)/(2 beta2)| = {exponents(principal)}"
    )
    raise NonNormalizable(msg)


def derive_params(
    spec: AlgebraSpec, mix: Sequence[complex] | None = None
) -> DerivedParams:
    """Compute the case parameters and pick a normalizable branch.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        mix (Sequence[complex] | None, optional): Even/odd weights the branch must
            support. Defaults to None.

    Raises:
        NonNormalizable: If no branch satisfies the case's normalizability
            condition.
        NonIntegerExponent: If a first-order exponent is not a nonnegative
            integer.

    Returns:
        DerivedParams: The parameters.
    """
    tag = classify(spec)
    mix = _validate_mix(mix)
    b1, b2, b3, b4, b5 = spec.betas
    lam = spec.lam

    if tag is CaseTag.GENERAL_KUMMER:
        return _kummer_params(spec, mix)

    if tag in (CaseTag.DEGENERATE_BESSEL, CaseTag.CONSTANT_COEFF):
        if abs(b1 / b2) >= 2:
            msg = f"|beta1/beta2| = {abs(b1 / b2):.6g} must be below 2"
            raise NonNormalizable(msg)
        if tag is CaseTag.DEGENERATE_BESSEL:
            sigma = _degenerate_sigma(spec)
            mu0 = (2 * b1 * b2 + 4 * b2 * lam + b4 * b4) / (4 * b2 * sigma)
            return DerivedParams(delta=0j, sigma=sigma, mu=mu0, parity="even")
        root = cmath.sqrt(b4 * b4 + 2 * b1 * b2 + 4 * b2 * lam)
        return DerivedParams(
            delta=0j,
            sigma=0j,
            omega_plus=(-b4 + root) / (2 * b2),
            omega_minus=(-b4 - root) / (2 * b2),
        )

    if tag in (CaseTag.FIRST_ORDER_SQUEEZE_LIKE, CaseTag.OSCILLATOR):
        shift = b4 / b1
        p = (lam + b5 * shift - b3 * shift * shift) / b1
        m = nonpositive_integer(-p, POLY_TOL)
        if m is None:
            msg = f"Exponent p={p} is not a nonnegative integer"
            raise NonIntegerExponent(msg)
        if abs(b3 / b1) >= 1:
            msg = f"|beta3/beta1| = {abs(b3 / b1):.6g} must be below 1"
            raise NonNormalizable(msg)
        return DerivedParams(mu=-shift, p=complex(m))

    if abs(b5 / b4) >= 1:
        msg = f"|beta5/beta4| = {abs(b5 / b4):.6g} must be below 1"
        raise NonNormalizable(msg)
    return DerivedParams()


def _default_mix(tag: CaseTag, params: DerivedParams) -> TMix:
    if tag is CaseTag.GENERAL_KUMMER and params.parity == "odd":
        return (0j, 1 + 0j)
    if tag is CaseTag.CONSTANT_COEFF and not _double_root(params):
        return (1 + 0j, 1 + 0j)
    return (1 + 0j, 0j)


def _double_root(params: DerivedParams) -> bool:
    wp, wm = params.omega_plus, params.omega_minus
    return abs(wp - wm) <= 1e-10 * max(1.0, abs(wp))


def solve(
    spec: AlgebraSpec,
    mix: Sequence[complex] | None = None,
    tail_threshold: float = TAIL_THRESHOLD,
    max_dim: int = MAX_DIM,
) -> AnalyticState:
    """Build the normalized closed-form eigenfunction.

    The overall factor is fixed numerically from a converged Fock vector so that
    the state has unit norm and a real positive leading coefficient.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        mix (Sequence[complex] | None, optional): Weights of the two independent
            solutions: (even, odd) kernels in the Kummer and Bessel cases, the
            (plus, minus) exponentials in the constant-coefficient case. Ignored
            by the first-order cases. Defaults to the even solution.
        tail_threshold (float, optional): Converged tail mass. Defaults to
            TAIL_THRESHOLD.
        max_dim (int, optional): Largest truncation tried. Defaults to MAX_DIM.

    Returns:
        AnalyticState: The normalized state.
    """
    state, _ = solve_with_vector(
        spec, mix, tail_threshold=tail_threshold, max_dim=max_dim
    )
    return state


def solve_with_vector(
    spec: AlgebraSpec,
    mix: Sequence[complex] | None = None,
    dim: int = DEFAULT_DIM,
    tail_threshold: float = TAIL_THRESHOLD,
    max_dim: int = MAX_DIM,
) -> tuple[AnalyticState, FockVector]:
    """Solve a spec and keep the converged Fock vector used for its norm.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        mix (Sequence[complex] | None, optional): Solution weights, as in solve.
            Defaults to None.
        dim (int, optional): First truncation tried. Defaults to DEFAULT_DIM.
        tail_threshold (float, optional): Converged tail mass. Defaults to
            TAIL_THRESHOLD.
        max_dim (int, optional): Largest truncation tried. Defaults to MAX_DIM.

    Returns:
        tuple[AnalyticState, FockVector]: The normalized state and its vector.
    """
    tag = classify(spec)
    params = derive_params(spec, mix)
    pair = _validate_mix(mix)
    if pair is None or tag in (
        CaseTag.FIRST_ORDER_SQUEEZE_LIKE,
        CaseTag.OSCILLATOR,
        CaseTag.HEISENBERG,
    ):
        pair = _default_mix(tag, params)
    state = AnalyticState(spec=spec, case_tag=tag, params=params, mix=pair)
    return _normalized(state, dim, tail_threshold, max_dim)


def _normalized(
    state: AnalyticState, dim: int, tail_threshold: float, max_dim: int
) -> tuple[AnalyticState, FockVector]:
    vector = converged_fock_vector(
        state, dim=dim, tail_threshold=tail_threshold, max_dim=max_dim
    )
    return replace(state, norm=vector.phase / vector.norm), vector


def kummer_branch_state(
    spec: AlgebraSpec,
    sign: int,
    mix: Sequence[complex] | None = None,
    tail_threshold: float = TAIL_THRESHOLD,
    max_dim: int = MAX_DIM,
) -> AnalyticState:
    """Kummer-case state written on a chosen branch of Delta.

    Both branches describe the same functions, related by Kummer's
    transformation; the branch is taken as given without the normalizability
    preference of derive_params.

    Args:
        spec (AlgebraSpec): A spec of the Kummer case.
        sign (int): +1 for the principal square root of Delta^2, -1 for the other.
        mix (Sequence[complex] | None, optional): (even, odd) weights. Defaults to
            the parity derive_params picks.
        tail_threshold (float, optional): Converged tail mass. Defaults to
            TAIL_THRESHOLD.
        max_dim (int, optional): Largest truncation tried. Defaults to MAX_DIM.

    Raises:
        InvalidSpec: If the spec is not in the Kummer case or sign is not +-1.

    Returns:
        AnalyticState: The normalized state.
    """
    if classify(spec) is not CaseTag.GENERAL_KUMMER:
        msg = f"beta={spec.betas} is not in the Kummer case"
        raise InvalidSpec(msg)
    if sign not in (1, -1):
        msg = f"sign must be +1 or -1, got {sign!r}"
        raise InvalidSpec(msg)
    pair = _validate_mix(mix)
    if pair is None:
        pair = _default_mix(CaseTag.GENERAL_KUMMER, derive_params(spec))
    parity = "even" if pair[0] != 0 else "odd"
    delta = sign * cmath.sqrt(spec.beta1**2 - 4 * spec.beta2 * spec.beta3)
    params = _kummer_branch_params(spec, delta, parity)
    state = AnalyticState(
        spec=spec, case_tag=CaseTag.GENERAL_KUMMER, params=params, mix=pair
    )
    return _normalized(state, DEFAULT_DIM, tail_threshold, max_dim)[0]


def evaluate(state: AnalyticState, alpha: complex) -> complex:
    """Value of a state's eigenfunction at alpha.

    Args:
        state (AnalyticState): The state.
        alpha (complex): Point of the complex plane.

    Returns:
        complex: The value, overall factor included.
    """
    return state.evaluate(alpha)


def _raw_kummer(state: AnalyticState, alpha: complex) -> complex:
    b1, b2 = state.spec.beta1, state.spec.beta2
    p = state.params
    ce, co = state.mix
    pre = cmath.exp((p.delta - b1) / (4 * b2) * alpha**2 - p.sigma / p.delta * alpha)
    y = alpha - p.mu
    x = -p.delta * y * y / (2 * b2)
    value = 0j
    if ce != 0:
        value += ce * kummer_1f1(p.d, 0.5, x)
    if co != 0:
        scale = cmath.sqrt(-p.delta / (2 * b2))
        value += co * scale * y * kummer_1f1(p.d + 0.5, 1.5, x)
    return pre * value


def _raw_bessel(state: AnalyticState, alpha: complex) -> complex:
    b1, b2, _, b4, _ = state.spec.betas
    p = state.params
    ce, co = state.mix
    pre = cmath.exp(-b1 * alpha**2 / (4 * b2) - b4 * alpha / (2 * b2))
    c = cmath.sqrt(p.sigma / b2)
    x = alpha - p.mu
    value = 0j
    if ce != 0:
        value += ce * degenerate_kernel(c, x, "even")
    if co != 0:
        value += co * degenerate_kernel(c, x, "odd")
    return pre * value


def _raw_constant(state: AnalyticState, alpha: complex) -> complex:
    b1, b2 = state.spec.beta1, state.spec.beta2
    p = state.params
    cp, cm = state.mix
    pre = cmath.exp(-b1 * alpha**2 / (4 * b2))
    if _double_root(p):
        return pre * (cp + cm * alpha) * cmath.exp(p.omega_plus * alpha)
    plus = cp * cmath.exp(p.omega_plus * alpha)
    return pre * (plus + cm * cmath.exp(p.omega_minus * alpha))


def _raw_first_order(state: AnalyticState, alpha: complex) -> complex:
    b1, _, b3, b4, b5 = state.spec.betas
    n = int(state.params.p.real)
    quad = -b3 / (2 * b1)
    lin = (b3 * b4 - b1 * b5) / b1**2
    return (alpha - state.params.mu) ** n * cmath.exp(quad * alpha**2 + lin * alpha)


def _raw_heisenberg(state: AnalyticState, alpha: complex) -> complex:
    spec = state.spec
    return cmath.exp(
        -spec.beta5 * alpha**2 / (2 * spec.beta4) + spec.lam * alpha / spec.beta4
    )


_RAW_EVALUATORS = {
    CaseTag.GENERAL_KUMMER: _raw_kummer,
    CaseTag.DEGENERATE_BESSEL: _raw_bessel,
    CaseTag.CONSTANT_COEFF: _raw_constant,
    CaseTag.FIRST_ORDER_SQUEEZE_LIKE: _raw_first_order,
    CaseTag.OSCILLATOR: _raw_first_order,
    CaseTag.HEISENBERG: _raw_heisenberg,
}


def ode_residual(state: AnalyticState, alpha: complex) -> float:
    """Relative residual of the eigenvalue ODE at one point.

    Derivatives come from the Taylor coefficients of the eigenfunction on a small
    circle around alpha.

    Args:
        state (AnalyticState): The state.
        alpha (complex): Point of the complex plane.

    Returns:
        float: |ODE| divided by the sum of the moduli of its three terms.
    """
    alpha = complex(alpha)
    nodes = alpha + STENCIL_RADIUS * np.exp(
        2j * np.pi * np.arange(STENCIL_POINTS) / STENCIL_POINTS
    )
    values = np.array([state.evaluate(node) for node in nodes])
    taylor = np.fft.fft(values) / STENCIL_POINTS
    f0 = state.evaluate(alpha)
    f1 = taylor[1] / STENCIL_RADIUS
    f2 = 2 * taylor[2] / STENCIL_RADIUS**2

    b1, b2, b3, b4, b5 = state.spec.betas
    terms = (
        b2 * f2,
        (b1 * alpha + b4) * f1,
        (b3 * alpha**2 + b5 * alpha - state.spec.lam) * f0,
    )
    scale = sum(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return float(abs(sum(terms)) / scale)


def recurrence_order(spec: AlgebraSpec) -> int:
    """Number of leading coefficients the forward recurrence leaves free.

    Two when beta2 is nonzero, one when only beta4 is, zero for an element
    without lowering operators.
    """
    if not spec.is_zero(spec.beta2):
        return 2
    if not spec.is_zero(spec.beta4):
        return 1
    return 0


def recurrence_matrix(spec: AlgebraSpec, length: int) -> np.ndarray:
    """Matrix of (M - lambda) on the first length number states.

    Row n is the coefficient recurrence

        beta2 sqrt((n+1)(n+2)) c_{n+2} + beta4 sqrt(n+1) c_{n+1}
        + (beta1 n - lambda) c_n + beta5 sqrt(n) c_{n-1}
        + beta3 sqrt(n(n-1)) c_{n-2} = 0.

    Coefficients past the truncation are dropped, so the last rows ask the
    solution to stop at length.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        length (int): Number of unknowns.

    Returns:
        np.ndarray: The length x length matrix.
    """
    b1, b2, b3, b4, b5 = spec.betas
    mat = np.zeros((length, length), dtype=complex)
    for n in range(length):
        mat[n, n] = b1 * n - spec.lam
        if n + 1 < length:
            mat[n, n + 1] = b4 * math.sqrt(n + 1)
        if n + 2 < length:
            mat[n, n + 2] = b2 * math.sqrt((n + 1) * (n + 2))
        if n >= 1:
            mat[n, n - 1] = b5 * math.sqrt(n)
        if n >= 2:
            mat[n, n - 2] = b3 * math.sqrt(n * (n - 1))
    return mat


def _decaying_solutions(spec: AlgebraSpec, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Least-residual vectors of the recurrence closed at dim + EXTRA_ROWS.

    Solutions that grow with n break the closing rows, so only decaying ones
    come out with a small residual.

    Returns:
        tuple[np.ndarray, np.ndarray]: Unit vectors as columns and their
            residuals relative to the largest singular value, smallest first.
    """
    length = dim + EXTRA_ROWS
    _, sing, vh = svd(recurrence_matrix(spec, length))
    order = max(recurrence_order(spec), 1)
    basis = vh[::-1][:order].conj().T
    residual = sing[::-1][:order] / sing[0]
    return basis, residual


def _forward_solutions(spec: AlgebraSpec, length: int) -> np.ndarray:
    """Recurrence solutions grown upward from unit seeds, one per column.

    Columns are rescaled whenever they pass FORWARD_RESCALE, which keeps them
    solutions up to a constant.
    """
    b1, b2, b3, b4, b5 = spec.betas
    order = recurrence_order(spec)
    columns = np.zeros((length, order), dtype=complex)
    for j in range(order):
        c = columns[:, j]
        c[j] = 1.0
        for n in range(length - order):
            acc = (b1 * n - spec.lam) * c[n]
            if order == 2:
                acc += b4 * math.sqrt(n + 1) * c[n + 1]
            if n >= 1:
                acc += b5 * math.sqrt(n) * c[n - 1]
            if n >= 2:
                acc += b3 * math.sqrt(n * (n - 1)) * c[n - 2]
            if order == 2:
                top = b2 * math.sqrt((n + 1) * (n + 2))
            else:
                top = b4 * math.sqrt(n + 1)
            c[n + order] = -acc / top
            peak = abs(c[n + order])
            if peak > FORWARD_RESCALE:
                c[: n + order + 1] /= peak
    return columns


def recurrence_tail_weight(spec: AlgebraSpec, dim: int) -> float:
    """Smallest tail weight over unit recurrence solutions at this truncation.

    Candidates are the solutions grown upward from the leading coefficients and
    the decaying solutions of the closed recurrence. The weight falls with dim
    for normalizable problems and stays of order one when every solution grows.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        dim (int): Truncation.

    Returns:
        float: The weight, between 0 and 1.
    """
    weights = [1.0]
    forward = _forward_solutions(spec, dim)
    if forward.shape[1]:
        forward = forward / np.linalg.norm(forward, axis=0)
        q, _ = np.linalg.qr(forward)
        tail = q[tail_start(dim) :]
        weights.append(float(eigh(tail.conj().T @ tail, eigvals_only=True)[0]))

    basis, residual = _decaying_solutions(spec, dim)
    for column in basis[:, residual < GOOD_DIRECTION_TOL].T:
        head = column[:dim]
        nrm = np.linalg.norm(head)
        if nrm > 0:
            weights.append(tail_mass(head / nrm))
    return float(min(max(w, 0.0) for w in weights))


def taylor_head(state: AnalyticState, size: int = HEAD_SIZE) -> np.ndarray:
    """Leading Taylor coefficients a_n of the raw eigenfunction around 0.

    Args:
        state (AnalyticState): The state.
        size (int, optional): Number of coefficients. Defaults to HEAD_SIZE.

    Returns:
        np.ndarray: a_0 ... a_{size-1}.
    """
    nodes = np.exp(2j * np.pi * np.arange(HEAD_POINTS) / HEAD_POINTS)
    values = np.array([state.raw(node) for node in nodes])
    return (np.fft.fft(values) / HEAD_POINTS)[:size]


def fock_vector(
    state: AnalyticState, dim: int, tail_threshold: float = TAIL_THRESHOLD
) -> FockVector:
    """Fock coefficients of a state from the coefficient recurrence.

    The recurrence is closed EXTRA_ROWS past dim and its decaying solutions are
    read off the smallest singular vectors. The combination matching the Taylor
    head of the closed form is kept.

    Args:
        state (AnalyticState): The state.
        dim (int): Truncation N, at least 8.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Raises:
        ValueError: If dim is below 8.
        TruncationNotConverged: If no decaying solution matches the closed form
            or the tail is too heavy at this truncation.

    Returns:
        FockVector: Normalized coefficients with a real positive leading entry.
    """
    if dim < 8:
        msg = f"Truncation must be at least 8, got {dim}"
        raise ValueError(msg)

    basis, residual = _decaying_solutions(state.spec, dim)
    good = basis[:, residual < GOOD_DIRECTION_TOL]
    if good.shape[1] == 0:
        msg = (
            f"No decaying recurrence solution at N={dim} "
            f"(smallest residual {residual[0]:.3g})"
        )
        raise TruncationNotConverged(msg)

    head = min(dim, HEAD_SIZE)
    seed = taylor_head(state, head)
    to_taylor = np.exp(-0.5 * gammaln(np.arange(head) + 1))
    weights_fit, *_ = lstsq(to_taylor[:, None] * good[:head], seed)
    raw = good @ weights_fit
    mismatch = np.linalg.norm(to_taylor * raw[:head] - seed)
    if mismatch > PARALLEL_TOL * np.linalg.norm(seed):
        msg = (
            f"Closed form is not a decaying recurrence solution at N={dim} "
            f"(mismatch {mismatch:.3g})"
        )
        raise TruncationNotConverged(msg)

    raw = raw[:dim]
    nrm = float(np.linalg.norm(raw))
    if nrm == 0:
        msg = f"Recurrence produced a zero vector at N={dim}"
        raise TruncationNotConverged(msg)
    lead = int(np.argmax(np.abs(raw) > PHASE_TOL * np.max(np.abs(raw))))
    phase = abs(raw[lead]) / raw[lead]
    coeffs = phase * raw / nrm
    mass = tail_mass(coeffs)
    if mass > tail_threshold:
        msg = f"Tail mass {mass:.3g} above {tail_threshold:.3g} at N={dim}"
        raise TruncationNotConverged(msg, tail_mass=mass)
    return FockVector(coeffs=coeffs, tail_mass=mass, norm=nrm, phase=complex(phase))


def converged_fock_vector(
    state: AnalyticState,
    dim: int = DEFAULT_DIM,
    tail_threshold: float = TAIL_THRESHOLD,
    max_dim: int = MAX_DIM,
) -> FockVector:
    """Fock vector at the smallest doubling of dim whose tail is converged.

    Args:
        state (AnalyticState): The state.
        dim (int, optional): First truncation tried. Defaults to DEFAULT_DIM.
        tail_threshold (float, optional): Converged tail mass. Defaults to
            TAIL_THRESHOLD.
        max_dim (int, optional): Cap on the truncation. Defaults to MAX_DIM.

    Raises:
        TruncationNotConverged: If the cap is reached first.

    Returns:
        FockVector: The converged vector.
    """
    dim = min(max(dim, 8), max_dim)
    while True:
        try:
            return fock_vector(state, dim, tail_threshold)
        except TruncationNotConverged as exc:
            if dim >= max_dim:
                raise
            logger.debug("N=%d not converged (%s), growing", dim, exc)
            dim = min(2 * dim, max_dim)


def fock_coefficients(
    spec: AlgebraSpec,
    mix: Sequence[complex] | None = None,
    dim: int = DEFAULT_DIM,
    tail_threshold: float = TAIL_THRESHOLD,
) -> FockVector:
    """Solve a spec and return its Fock coefficients at a fixed truncation.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        mix (Sequence[complex] | None, optional): Solution weights. Defaults to
            None.
        dim (int, optional): Truncation N. Defaults to DEFAULT_DIM.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Returns:
        FockVector: The coefficients.
    """
    state = solve(spec, mix, tail_threshold=tail_threshold)
    return fock_vector(state, dim, tail_threshold)
