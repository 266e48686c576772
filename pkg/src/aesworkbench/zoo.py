"""Named single-mode state families as eigenstates of two-photon algebra elements.

Each constructor returns a StateBundle carrying the algebra element and eigenvalue
the family satisfies, the solved closed form, a converged Fock vector, and the
family's explicit eigenfunction with its literature normalization.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Any
from typing import Callable
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from aesworkbench.complexfn import hermite
from aesworkbench.complexfn import hermite_sequence
from aesworkbench.errors import DegenerateNorm
from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import NonNormalizable
from aesworkbench.solver import DEFAULT_DIM
from aesworkbench.solver import MAX_DIM
from aesworkbench.solver import TAIL_THRESHOLD
from aesworkbench.solver import AlgebraSpec
from aesworkbench.solver import AnalyticState
from aesworkbench.solver import CaseTag
from aesworkbench.solver import FockVector
from aesworkbench.solver import classify
from aesworkbench.solver import derive_params
from aesworkbench.solver import gaussian_coefficients
from aesworkbench.solver import kummer_branch_state
from aesworkbench.solver import solve_with_vector

logger = logging.getLogger(__name__)

DESK_SQUEEZE = 0.75
DESK_AMPLITUDE = 2.0
NORM_FLOOR = 1e-14


@dataclass(frozen=True)
class SqueezeParam:
    """Squeeze xi = s e^{i theta}, with disk coordinate zeta = tanh s e^{i theta}."""

    s: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        """Validate the magnitude.

        Raises:
            InvalidSpec: If s is negative or not finite.
        """
        if not (math.isfinite(self.s) and math.isfinite(self.theta)) or self.s < 0:
            msg = f"Squeeze needs finite s >= 0, got s={self.s!r}, theta={self.theta!r}"
            raise InvalidSpec(msg)

    @classmethod
    def from_zeta(cls, zeta: complex) -> "SqueezeParam":
        """Squeeze whose disk coordinate is zeta, |zeta| < 1."""
        if abs(zeta) >= 1:
            msg = f"|zeta| must be below 1, got {abs(zeta)!r}"
            raise InvalidSpec(msg)
        return cls(s=math.atanh(abs(zeta)), theta=cmath.phase(zeta))

    @property
    def xi(self) -> complex:
        """complex: s e^{i theta}."""
        return self.s * cmath.exp(1j * self.theta)

    @property
    def zeta(self) -> complex:
        """complex: tanh s e^{i theta}."""
        return math.tanh(self.s) * cmath.exp(1j * self.theta)


@dataclass(frozen=True)
class CatParam:
    """Superposition N (|upsilon> + tau e^{i varphi} |-upsilon>)."""

    upsilon: complex
    tau: float = 1.0
    varphi: float = 0.0

    def __post_init__(self) -> None:
        """Validate tau.

        Raises:
            InvalidSpec: If tau is negative.
        """
        if self.tau < 0:
            msg = f"tau must be nonnegative, got {self.tau!r}"
            raise InvalidSpec(msg)

    @property
    def weight(self) -> complex:
        """complex: tau e^{i varphi}."""
        return self.tau * cmath.exp(1j * self.varphi)

    @property
    def norm_factor(self) -> float:
        """float: N = (1 + tau^2 + 2 tau e^{-2|upsilon|^2} cos varphi)^{-1/2}.

        Raises:
            DegenerateNorm: If the bracket vanishes.
        """
        overlap = math.exp(-2 * abs(self.upsilon) ** 2)
        denominator = 1 + self.tau**2 + 2 * self.tau * overlap * math.cos(self.varphi)
        if denominator <= NORM_FLOOR:
            msg = f"Cat normalization vanishes for {self}"
            raise DegenerateNorm(msg)
        return denominator**-0.5


@dataclass(frozen=True)
class ISParam:
    """SU(1,1) intelligent state parameters eta and lambda."""

    eta: complex
    lam: complex

    def __post_init__(self) -> None:
        """Validate eta.

        Raises:
            NonNormalizable: If Re eta <= 0.
        """
        if complex(self.eta).real <= 0:
            msg = f"Intelligent states need Re eta > 0, got eta={self.eta!r}"
            raise NonNormalizable(msg)

    @property
    def omega_eta(self) -> complex:
        """complex: Principal root of (1 - eta) / (1 + eta)."""
        return cmath.sqrt((1 - self.eta) / (1 + self.eta))


@dataclass(frozen=True)
class DisplacedSqueezedFrame:
    """D(z) S(xi) frame with its derived amplitudes."""

    xi: SqueezeParam
    z: complex = 0j

    @property
    def rho(self) -> complex:
        """complex: z - zeta z*."""
        return self.z - self.xi.zeta * self.z.conjugate()

    @property
    def u(self) -> complex:
        """complex: (z - zeta z*) / sqrt(1 - |zeta|^2)."""
        return self.rho * math.cosh(self.xi.s)

    @property
    def kappa(self) -> complex:
        """complex: i sqrt(sinh 2s e^{i theta})."""
        return 1j * cmath.sqrt(math.sinh(2 * self.xi.s) * cmath.exp(1j * self.xi.theta))

    def y(self, upsilon: complex) -> complex:
        """upsilon z* / cosh s."""
        return upsilon * self.z.conjugate() / math.cosh(self.xi.s)


@dataclass(frozen=True, eq=False)
class StateBundle:
    """A family member in all three representations."""

    family: str
    params: dict[str, Any]
    spec: AlgebraSpec
    state: AnalyticState
    fock: FockVector
    closed_form: Callable[[complex], complex]
    extras: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Truncation:
    """Fock truncation settings shared by the constructors."""

    dim: int = DEFAULT_DIM
    tail_threshold: float = TAIL_THRESHOLD
    max_dim: int = MAX_DIM


DEFAULT_TRUNCATION = Truncation()


def _warn_desk_scale(family: str, **amplitudes: float) -> None:
    for name, value in amplitudes.items():
        limit = DESK_SQUEEZE if name == "s" else DESK_AMPLITUDE
        if value > limit:
            logger.warning(
                "%s: %s=%.3g above desk scale %.3g, convergence may need a large N",
                family,
                name,
                value,
                limit,
            )


def _bundle(
    family: str,
    params: dict[str, Any],
    spec: AlgebraSpec,
    closed_form: Callable[[complex], complex],
    truncation: Truncation,
    mix: Sequence[complex] | None = None,
    extras: dict[str, Any] | None = None,
) -> StateBundle:
    state, fock = solve_with_vector(
        spec,
        mix,
        dim=truncation.dim,
        tail_threshold=truncation.tail_threshold,
        max_dim=truncation.max_dim,
    )
    logger.debug("%s: case %s, N=%d", family, state.case_tag.value, fock.dim)
    return StateBundle(
        family=family,
        params=params,
        spec=spec,
        state=state,
        fock=fock,
        closed_form=closed_form,
        extras=extras or {},
    )


def glauber(
    upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Coherent state |upsilon>, eigenstate of a.

    Args:
        upsilon (complex): Amplitude.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Returns:
        StateBundle: The state.
    """
    upsilon = complex(upsilon)
    _warn_desk_scale("glauber", upsilon=abs(upsilon))
    spec = AlgebraSpec(0, 0, 0, 1, 0, lam=upsilon)
    prefactor = math.exp(-abs(upsilon) ** 2 / 2)

    def closed_form(alpha: complex) -> complex:
        return prefactor * cmath.exp(upsilon * alpha)

    return _bundle("glauber", {"upsilon": upsilon}, spec, closed_form, truncation)


def displaced_fock(
    n: int, upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Displaced number state D(upsilon)|n>.

    Args:
        n (int): Photon number of the undisplaced state.
        upsilon (complex): Displacement.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Raises:
        InvalidSpec: If n is negative.

    Returns:
        StateBundle: The state.
    """
    if n < 0:
        msg = f"n must be nonnegative, got {n}"
        raise InvalidSpec(msg)
    upsilon = complex(upsilon)
    _warn_desk_scale("displaced-fock", upsilon=abs(upsilon))
    spec = AlgebraSpec(
        1, 0, 0, -upsilon.conjugate(), -upsilon, lam=n - abs(upsilon) ** 2
    )
    prefactor = math.exp(-abs(upsilon) ** 2 / 2) / math.sqrt(math.factorial(n))

    def closed_form(alpha: complex) -> complex:
        shifted = (alpha - upsilon.conjugate()) ** n
        return prefactor * shifted * cmath.exp(upsilon * alpha)

    return _bundle(
        "displaced-fock", {"n": n, "upsilon": upsilon}, spec, closed_form, truncation
    )


def displaced_squeezed_intelligence_form(
    xi: SqueezeParam, upsilon: complex
) -> dict[str, complex]:
    """Quadrature equation [c1 X1 + c2 X2] psi = e psi solved by D(upsilon)S(xi)|0>.

    Args:
        xi (SqueezeParam): Squeeze.
        upsilon (complex): Displacement.

    Returns:
        dict[str, complex]: Keys x1_coefficient, x2_coefficient and eigenvalue.
    """
    zeta = xi.zeta
    upsilon = complex(upsilon)
    return {
        "x1_coefficient": (1 - zeta) / (1 + zeta),
        "x2_coefficient": 1j,
        "eigenvalue": (upsilon - zeta * upsilon.conjugate()) / (1 + zeta),
    }


def displaced_squeezed(
    xi: SqueezeParam, upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Displaced squeezed vacuum D(upsilon)S(xi)|0>, eigenstate of a - zeta a+.

    Args:
        xi (SqueezeParam): Squeeze.
        upsilon (complex): Displacement.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Returns:
        StateBundle: The state.
    """
    upsilon = complex(upsilon)
    _warn_desk_scale("displaced-squeezed", s=xi.s, upsilon=abs(upsilon))
    zeta = xi.zeta
    spec = AlgebraSpec(0, 0, 0, 1, -zeta, lam=upsilon - zeta * upsilon.conjugate())
    lam0 = cmath.exp(
        -abs(upsilon) ** 2 / 2 + zeta * upsilon.conjugate() ** 2 / 2
    ) / math.sqrt(math.cosh(xi.s))

    def closed_form(alpha: complex) -> complex:
        return lam0 * cmath.exp(
            zeta * alpha**2 / 2 + (upsilon - zeta * upsilon.conjugate()) * alpha
        )

    u = math.cosh(xi.s) * upsilon - math.sinh(xi.s) * (
        cmath.exp(1j * xi.theta) * upsilon.conjugate()
    )
    extras = {
        "zeta": zeta,
        "u": u,
        "intelligence_form": displaced_squeezed_intelligence_form(xi, upsilon),
    }
    return _bundle(
        "displaced-squeezed",
        {"s": xi.s, "theta": xi.theta, "upsilon": upsilon},
        spec,
        closed_form,
        truncation,
        extras=extras,
    )


def squeezed_vacuum(
    xi: SqueezeParam, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Squeezed vacuum S(xi)|0>, the SU(1,1) coherent state."""
    return displaced_squeezed(xi, 0, truncation)


def dsfs_spec(n: int, xi: SqueezeParam, upsilon: complex) -> AlgebraSpec:
    """Algebra element and eigenvalue of D(upsilon)S(xi)|n>.

    Args:
        n (int): Photon number.
        xi (SqueezeParam): Squeeze.
        upsilon (complex): Displacement.

    Returns:
        AlgebraSpec: The spec, the number operator conjugated by D S.
    """
    s, theta = xi.s, xi.theta
    upsilon = complex(upsilon)
    ch2, sh2 = math.cosh(2 * s), math.sinh(2 * s)
    ep, em = cmath.exp(1j * theta), cmath.exp(-1j * theta)
    ups_c = upsilon.conjugate()
    shift = ch2 * abs(upsilon) ** 2 - 0.5 * sh2 * (em * upsilon**2 + ep * ups_c**2)
    return AlgebraSpec(
        ch2,
        -0.5 * sh2 * em,
        -0.5 * sh2 * ep,
        -ch2 * ups_c + sh2 * em * upsilon,
        -ch2 * upsilon + sh2 * ep * ups_c,
        lam=n - math.sinh(s) ** 2 - shift,
    )


def dsfs(
    n: int,
    xi: SqueezeParam,
    upsilon: complex,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """Displaced squeezed Fock state D(upsilon)S(xi)|n>.

    Args:
        n (int): Photon number.
        xi (SqueezeParam): Squeeze.
        upsilon (complex): Displacement.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Raises:
        InvalidSpec: If n is negative.

    Returns:
        StateBundle: The state, with its Hermite closed form.
    """
    if n < 0:
        msg = f"n must be nonnegative, got {n}"
        raise InvalidSpec(msg)
    upsilon = complex(upsilon)
    _warn_desk_scale("dsfs", s=xi.s, upsilon=abs(upsilon))
    spec = dsfs_spec(n, xi, upsilon)
    closed_form = _dsfs_closed_form(n, xi, upsilon)
    return _bundle(
        "dsfs",
        {"n": n, "s": xi.s, "theta": xi.theta, "upsilon": upsilon},
        spec,
        closed_form,
        truncation,
        extras={"zeta": xi.zeta},
    )


def _dsfs_closed_form(
    n: int, xi: SqueezeParam, upsilon: complex
) -> Callable[[complex], complex]:
    s, zeta = xi.s, xi.zeta
    ups_c = upsilon.conjugate()
    if s == 0:
        lam0 = math.exp(-abs(upsilon) ** 2 / 2) / math.sqrt(math.factorial(n))

        def plain(alpha: complex) -> complex:
            return lam0 * (alpha - ups_c) ** n * cmath.exp(upsilon * alpha)

        return plain

    w = cmath.sqrt(math.sinh(2 * s) * cmath.exp(-1j * xi.theta))
    lam0 = (
        (w / (2 * math.cosh(s))) ** n
        / math.sqrt(math.factorial(n) * math.cosh(s))
        * cmath.exp(-abs(upsilon) ** 2 / 2 + zeta * ups_c**2 / 2)
    )

    def closed_form(alpha: complex) -> complex:
        gauss = cmath.exp(zeta * alpha**2 / 2 + (upsilon - zeta * ups_c) * alpha)
        return lam0 * gauss * hermite(n, (alpha - ups_c) / w)

    return closed_form


def dsfs_kummer_alternate(
    n: int, xi: SqueezeParam, upsilon: complex
) -> AnalyticState:
    """D(upsilon)S(xi)|n> written on the other branch of Delta.

    Args:
        n (int): Photon number.
        xi (SqueezeParam): Squeeze, s > 0.
        upsilon (complex): Displacement.

    Returns:
        AnalyticState: The Kummer-transformed closed form, normalized.
    """
    return kummer_branch_state(dsfs_spec(n, xi, upsilon), sign=-1)


def cat(
    upsilon: complex,
    tau: float = 1.0,
    varphi: float = 0.0,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """Cat state N(|upsilon> + tau e^{i varphi}|-upsilon>), eigenstate of a^2.

    Args:
        upsilon (complex): Amplitude.
        tau (float, optional): Relative weight. Defaults to 1.0.
        varphi (float, optional): Relative phase. Defaults to 0.0.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Returns:
        StateBundle: The state.
    """
    return cat_sdz(
        upsilon, tau, varphi, SqueezeParam(0.0), 0j, truncation, family="cat"
    )


def even_cat(
    upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Even coherent state."""
    return cat(upsilon, 1.0, 0.0, truncation)


def odd_cat(
    upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Odd coherent state."""
    return cat(upsilon, 1.0, math.pi, truncation)


def yurke_stoler(
    upsilon: complex, truncation: Truncation = DEFAULT_TRUNCATION
) -> StateBundle:
    """Yurke-Stoler state, the cat with tau = 1 and varphi = pi/2."""
    return cat(upsilon, 1.0, math.pi / 2, truncation)


def cat_sdz_spec(
    upsilon: complex, xi: SqueezeParam, z: complex
) -> AlgebraSpec:
    """Element -2 zeta N + a^2 + zeta^2 a+^2 - 2 rho a + 2 zeta rho a+ and eigenvalue.

    Args:
        upsilon (complex): Cat amplitude.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.

    Returns:
        AlgebraSpec: The spec.
    """
    zeta = xi.zeta
    rho = DisplacedSqueezedFrame(xi, complex(z)).rho
    lam = upsilon**2 * (1 - abs(zeta) ** 2) + zeta - rho**2
    return AlgebraSpec(-2 * zeta, 1, zeta**2, -2 * rho, 2 * zeta * rho, lam=lam)


def cat_sdz_norm_factor(
    upsilon: complex, tau: float, varphi: float, xi: SqueezeParam, z: complex
) -> complex:
    """C+ normalizing C+ e^{zeta a^2/2} (e^{w+ a} + tau e^{i varphi} e^{w- a}).

    Here w+- = rho +- upsilon / cosh s, and tau e^{i varphi} is the weight between
    the two exponentials as written, not the weight of the undisplaced cat.

    Args:
        upsilon (complex): Cat amplitude.
        tau (float): Weight modulus.
        varphi (float): Weight phase.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.

    Raises:
        DegenerateNorm: If the norm bracket vanishes.

    Returns:
        complex: C+, real and positive.
    """
    upsilon = complex(upsilon)
    frame = DisplacedSqueezedFrame(xi, complex(z))
    zeta = xi.zeta
    u = frame.u
    y = frame.y(upsilon)
    bracket = (
        math.exp(2 * y.real)
        + tau**2 * math.exp(-2 * y.real)
        + 2 * tau * math.exp(-2 * abs(upsilon) ** 2) * math.cos(varphi - 2 * y.imag)
    )
    if bracket <= NORM_FLOOR:
        msg = f"Displaced squeezed cat normalization vanishes (bracket {bracket:.3g})"
        raise DegenerateNorm(msg)
    exponent = (
        abs(u) ** 2 + abs(upsilon) ** 2 + (zeta.conjugate() * (u**2 + upsilon**2)).real
    )
    return (math.cosh(xi.s) * math.exp(exponent) * bracket) ** -0.5


def _cat_sdz_weights(
    cat_param: CatParam, frame: DisplacedSqueezedFrame
) -> tuple[complex, float, float]:
    """C+ and the effective weight (tau, varphi) of D(z)S(xi)|cat>."""
    y = frame.y(cat_param.upsilon)
    tau = cat_param.tau * math.exp(2 * y.real)
    varphi = cat_param.varphi + 2 * y.imag
    c_plus = cat_sdz_norm_factor(cat_param.upsilon, tau, varphi, frame.xi, frame.z)
    return c_plus, tau, varphi


def cat_sdz_coefficients(
    upsilon: complex,
    tau: float,
    varphi: float,
    xi: SqueezeParam,
    z: complex,
    dim: int,
) -> np.ndarray:
    """Fock coefficients of D(z)S(xi)|cat> from the closed normalization.

    Each exponential e^{zeta a^2/2 + w a} expands into Hermite-type coefficients
    generated by a three-term recurrence.

    Args:
        upsilon (complex): Cat amplitude.
        tau (float): Weight of |-upsilon>.
        varphi (float): Phase of |-upsilon>.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.
        dim (int): Truncation.

    Returns:
        np.ndarray: c_0 ... c_{dim-1}, normalized up to truncation.
    """
    cat_param = CatParam(complex(upsilon), tau, varphi)
    frame = DisplacedSqueezedFrame(xi, complex(z))
    c_plus, tau_eff, varphi_eff = _cat_sdz_weights(cat_param, frame)
    shift = cat_param.upsilon / math.cosh(xi.s)
    plus = gaussian_coefficients(xi.zeta, frame.rho + shift, dim)
    minus = gaussian_coefficients(xi.zeta, frame.rho - shift, dim)
    return c_plus * (plus + tau_eff * cmath.exp(1j * varphi_eff) * minus)


def cat_sdz_hermite_coefficients(
    upsilon: complex,
    tau: float,
    varphi: float,
    xi: SqueezeParam,
    z: complex,
    dim: int,
) -> np.ndarray:
    """Fock coefficients of D(z)S(xi)|cat> written through Hermite polynomials.

    c_n = C+ (kappa / (2 cosh s))^n / sqrt(n!) [H_n((u + upsilon) / kappa)
    + tau' e^{i varphi'} H_n((u - upsilon) / kappa)], with the effective weight
    of _cat_sdz_weights. Only defined for s > 0.

    Args:
        upsilon (complex): Cat amplitude.
        tau (float): Weight of |-upsilon>.
        varphi (float): Phase of |-upsilon>.
        xi (SqueezeParam): Squeeze, with s > 0.
        z (complex): Displacement.
        dim (int): Truncation.

    Raises:
        InvalidSpec: If the squeeze vanishes.

    Returns:
        np.ndarray: c_0 ... c_{dim-1}.
    """
    if xi.s == 0:
        msg = "Hermite form of the squeezed cat needs s > 0"
        raise InvalidSpec(msg)
    cat_param = CatParam(complex(upsilon), tau, varphi)
    frame = DisplacedSqueezedFrame(xi, complex(z))
    c_plus, tau_eff, varphi_eff = _cat_sdz_weights(cat_param, frame)
    kappa = frame.kappa
    scale = kappa / (2 * math.cosh(xi.s))
    n = np.arange(dim)
    prefactor = np.exp(n * cmath.log(scale) - 0.5 * gammaln(n + 1))
    plus = hermite_sequence(dim - 1, (frame.u + cat_param.upsilon) / kappa)
    minus = hermite_sequence(dim - 1, (frame.u - cat_param.upsilon) / kappa)
    weight = tau_eff * cmath.exp(1j * varphi_eff)
    return c_plus * prefactor * (plus + weight * minus)


def cat_sdz(
    upsilon: complex,
    tau: float,
    varphi: float,
    xi: SqueezeParam,
    z: complex,
    truncation: Truncation = DEFAULT_TRUNCATION,
    family: str = "cat-sdz",
) -> StateBundle:
    """Displaced squeezed cat D(z)S(xi) N(|upsilon> + tau e^{i varphi}|-upsilon>).

    Args:
        upsilon (complex): Cat amplitude.
        tau (float): Weight of |-upsilon>.
        varphi (float): Phase of |-upsilon>.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.
        family (str, optional): Family name recorded in the bundle. Defaults to
            "cat-sdz".

    Raises:
        DegenerateNorm: If the cat normalization vanishes.

    Returns:
        StateBundle: The state.
    """
    upsilon, z = complex(upsilon), complex(z)
    cat_param = CatParam(upsilon, tau, varphi)
    cat_norm = cat_param.norm_factor
    _warn_desk_scale(family, s=xi.s, upsilon=abs(upsilon), z=abs(z))
    frame = DisplacedSqueezedFrame(xi, z)
    spec = cat_sdz_spec(upsilon, xi, z)
    zeta = xi.zeta
    shift = upsilon / math.cosh(xi.s)
    c_plus, tau_eff, varphi_eff = _cat_sdz_weights(cat_param, frame)
    weight = tau_eff * cmath.exp(1j * varphi_eff)

    if upsilon == 0:
        mix = (1 + weight, 0j)
    else:
        omega_plus = derive_params(spec).omega_plus
        if abs(omega_plus - frame.rho - shift) <= abs(omega_plus - frame.rho + shift):
            mix = (1, weight)
        else:
            mix = (weight, 1)

    def closed_form(alpha: complex) -> complex:
        gauss = cmath.exp(zeta * alpha**2 / 2 + frame.rho * alpha)
        return (
            c_plus
            * gauss
            * (cmath.exp(shift * alpha) + weight * cmath.exp(-shift * alpha))
        )

    params = {
        "upsilon": upsilon,
        "tau": tau,
        "varphi": varphi,
        "s": xi.s,
        "theta": xi.theta,
        "z": z,
    }
    extras = {
        "zeta": zeta,
        "rho": frame.rho,
        "u": frame.u,
        "kappa": frame.kappa,
        "y": frame.y(upsilon),
        "c_plus": c_plus,
        "cat_norm": cat_norm,
    }
    return _bundle(family, params, spec, closed_form, truncation, mix, extras)


def squeezed_cat(
    upsilon: complex,
    tau: float,
    varphi: float,
    xi: SqueezeParam,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """S(xi)|cat>, the rho = 0 member of cat_sdz."""
    return cat_sdz(upsilon, tau, varphi, xi, 0j, truncation, family="squeezed-cat")


def displaced_cat(
    upsilon: complex,
    tau: float,
    varphi: float,
    z: complex,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """D(z)|cat>, the zeta = 0 member of cat_sdz."""
    return cat_sdz(
        upsilon, tau, varphi, SqueezeParam(0.0), z, truncation, family="displaced-cat"
    )


def is_squeeze_axis(eta: complex) -> str | None:
    """Generator with the reduced variance in an ordinary SU(1,1) intelligent state.

    Args:
        eta (complex): Variance ratio parameter.

    Returns:
        str | None: "K1" for |eta| > 1, "K2" for |eta| < 1, None at |eta| = 1.
    """
    modulus = abs(eta)
    if math.isclose(modulus, 1.0, rel_tol=0, abs_tol=1e-12):
        return None
    return "K1" if modulus > 1 else "K2"


def su11_is_spec(lam: complex, eta: complex) -> AlgebraSpec:
    """eta K1 - i K2 written as (eta+1)/4 a^2 + (eta-1)/4 a+^2, with eigenvalue lam."""
    return AlgebraSpec(0, (eta + 1) / 4, (eta - 1) / 4, 0, 0, lam=lam)


def _is_mix(
    spec: AlgebraSpec, mix: Sequence[complex] | None, center: complex
) -> Sequence[complex] | None:
    """Turn (even, odd) weights about center into exponential weights when Delta = 0.

    At eta = 1 the solutions are e^{w+ a} and e^{w- a}; the even and odd
    combinations about center are cosh and sinh of (w+ - w-)(a - center)/2.
    """
    if classify(spec) is not CaseTag.CONSTANT_COEFF:
        return mix
    params = derive_params(spec)
    half = (params.omega_plus - params.omega_minus) / 2
    if abs(half) <= 1e-10 * max(1.0, abs(params.omega_plus)):
        return mix
    even, odd = (1 + 0j, 0j) if mix is None else (complex(mix[0]), complex(mix[1]))
    return (
        (even + odd) * cmath.exp(-half * center),
        (even - odd) * cmath.exp(half * center),
    )


def _is_bundle(
    family: str,
    params: dict[str, Any],
    spec: AlgebraSpec,
    mix: Sequence[complex] | None,
    truncation: Truncation,
    center: complex = 0j,
    extras: dict[str, Any] | None = None,
) -> StateBundle:
    mapped = _is_mix(spec, mix, center)
    state_holder: dict[str, AnalyticState] = {}

    def closed_form(alpha: complex) -> complex:
        return state_holder["state"].evaluate(alpha)

    bundle = _bundle(family, params, spec, closed_form, truncation, mapped, extras)
    state_holder["state"] = bundle.state
    return bundle


def su11_is(
    lam: complex,
    eta: complex,
    mix: Sequence[complex] | None = None,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """SU(1,1) intelligent state, eigenstate of eta K1 - i K2.

    In the two-photon realization the element is (eta+1)/4 a^2 + (eta-1)/4 a+^2.

    Args:
        lam (complex): Eigenvalue.
        eta (complex): Variance ratio parameter, Re eta > 0.
        mix (Sequence[complex] | None, optional): (even, odd) weights. Defaults to
            the even solution.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Returns:
        StateBundle: The state.
    """
    param = ISParam(complex(eta), complex(lam))
    spec = su11_is_spec(param.lam, param.eta)
    extras = {
        "omega_eta": param.omega_eta,
        "squeeze_axis": is_squeeze_axis(param.eta),
    }
    return _is_bundle(
        "su11-is",
        {"lambda": param.lam, "eta": param.eta},
        spec,
        mix,
        truncation,
        extras=extras,
    )


def su11_is_displaced_squeezed_spec(
    lam: complex, eta: complex, xi: SqueezeParam, z: complex
) -> AlgebraSpec:
    """Intelligent-state element conjugated by D(z)S(xi), scaled to beta2-form.

    Args:
        lam (complex): Eigenvalue of the undisplaced problem.
        eta (complex): Variance ratio parameter.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.

    Returns:
        AlgebraSpec: The transformed spec.
    """
    zeta = xi.zeta
    zc = zeta.conjugate()
    rho = DisplacedSqueezedFrame(xi, complex(z)).rho
    rc = rho.conjugate()
    ep, em = eta + 1, eta - 1
    return AlgebraSpec(
        -2 * zeta * ep - 2 * zc * em,
        ep + zc**2 * em,
        zeta**2 * ep + em,
        -2 * rho * ep + 2 * zc * rc * em,
        2 * zeta * rho * ep - 2 * rc * em,
        lam=4 * (1 - abs(zeta) ** 2) * lam + (zeta - rho**2) * ep + (zc - rc**2) * em,
    )


def su11_is_displaced_squeezed(
    lam: complex,
    eta: complex,
    xi: SqueezeParam,
    z: complex,
    mix: Sequence[complex] | None = None,
    truncation: Truncation = DEFAULT_TRUNCATION,
    family: str = "su11-is-displaced-squeezed",
) -> StateBundle:
    """D(z)S(xi)|lambda, eta>, an intelligent state moved by the two-photon group.

    Mix weights refer to the even and odd solutions of the transformed equation
    around its center mu = z*.

    Args:
        lam (complex): Eigenvalue of the undisplaced problem.
        eta (complex): Variance ratio parameter, Re eta > 0.
        xi (SqueezeParam): Squeeze.
        z (complex): Displacement.
        mix (Sequence[complex] | None, optional): (even, odd) weights. Defaults to
            the even solution.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.
        family (str, optional): Family name recorded in the bundle.

    Returns:
        StateBundle: The state.
    """
    param = ISParam(complex(eta), complex(lam))
    z = complex(z)
    _warn_desk_scale(family, s=xi.s, z=abs(z))
    spec = su11_is_displaced_squeezed_spec(param.lam, param.eta, xi, z)
    params = {
        "lambda": param.lam,
        "eta": param.eta,
        "s": xi.s,
        "theta": xi.theta,
        "z": z,
    }
    extras = {
        "zeta": xi.zeta,
        "rho": DisplacedSqueezedFrame(xi, z).rho,
        "omega_eta": param.omega_eta,
    }
    return _is_bundle(
        family, params, spec, mix, truncation, center=z.conjugate(), extras=extras
    )


def su11_is_squeezed(
    lam: complex,
    eta: complex,
    xi: SqueezeParam,
    mix: Sequence[complex] | None = None,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """S(xi)|lambda, eta>, the z = 0 member of su11_is_displaced_squeezed."""
    return su11_is_displaced_squeezed(
        lam, eta, xi, 0j, mix, truncation, family="su11-is-squeezed"
    )


def su11_is_displaced(
    lam: complex,
    eta: complex,
    z: complex,
    mix: Sequence[complex] | None = None,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """D(z)|lambda, eta>, the xi = 0 member of su11_is_displaced_squeezed."""
    return su11_is_displaced_squeezed(
        lam, eta, SqueezeParam(0.0), z, mix, truncation, family="su11-is-displaced"
    )


def raw_aes(
    betas: Sequence[complex],
    lam: complex,
    mix: Sequence[complex] | None = None,
    truncation: Truncation = DEFAULT_TRUNCATION,
) -> StateBundle:
    """Eigenstate of an arbitrary algebra element.

    Args:
        betas (Sequence[complex]): beta1 ... beta5.
        lam (complex): Eigenvalue.
        mix (Sequence[complex] | None, optional): Solution weights as in solve.
            Defaults to None.
        truncation (Truncation, optional): Fock settings. Defaults to
            DEFAULT_TRUNCATION.

    Returns:
        StateBundle: The state; its closed form is the solver's.
    """
    spec = AlgebraSpec.from_sequence(betas, lam)
    state_holder: dict[str, AnalyticState] = {}

    def closed_form(alpha: complex) -> complex:
        return state_holder["state"].evaluate(alpha)

    bundle = _bundle(
        "raw-aes",
        {"beta": list(spec.betas), "lambda": spec.lam, "mix": mix},
        spec,
        closed_form,
        truncation,
        mix,
    )
    state_holder["state"] = bundle.state
    return bundle
