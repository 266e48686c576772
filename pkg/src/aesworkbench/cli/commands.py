"""State families by name, parameter parsing and the output record.

The command line and the report service share everything here: both take
family parameters as strings (complex values written ``a+bi``) and both emit the
record ``{spec, derived, coefficients, moments, residuals, config}``.
"""

import cmath
import logging
import math
import re
from dataclasses import dataclass
from typing import Any
from typing import Callable
from typing import Literal
from typing import Mapping

import numpy as np
from scipy.special import gammaln

from aesworkbench import zoo
from aesworkbench.config import RunConfig
from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import ZeroMean
from aesworkbench.moments import photon_stats
from aesworkbench.moments import quadrature_report
from aesworkbench.moments import su11_report
from aesworkbench.oracle import eigen_residual
from aesworkbench.solver import HEAD_POINTS
from aesworkbench.solver import HEAD_SIZE
from aesworkbench.solver import MAX_DIM
from aesworkbench.solver import FockVector
from aesworkbench.solver import fidelity
from aesworkbench.solver import ode_residual

logger = logging.getLogger(__name__)

COMPLEX_PATTERN = re.compile(r"[0-9eE.+\-]+i?|[+\-]?i")
ODE_POINTS = 50
ODE_RADIUS = 3.0
GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))

TKind = Literal["complex", "real", "int", "complex_list"]


@dataclass(frozen=True)
class Family:
    """A named constructor and the parameters it reads."""

    name: str
    params: dict[str, TKind]
    defaults: dict[str, str]
    build: Callable[[dict[str, Any], zoo.Truncation], zoo.StateBundle]
    description: str


def parse_complex(text: str) -> complex:
    """Parse a complex number written ``a``, ``a+bi``, ``a-bi`` or ``bi``.

    Args:
        text (str): Value without spaces.

    Raises:
        InvalidSpec: If the text is not such a number or is not finite.

    Returns:
        complex: The value.
    """
    text = text.strip()
    if not COMPLEX_PATTERN.fullmatch(text):
        msg = f"Cannot read {text!r} as a complex number (expected a+bi)"
        raise InvalidSpec(msg)
    if text.endswith("i"):
        head = text[:-1]
        text = head + ("1j" if head in ("", "+", "-") or head[-1] in "+-" else "j")
    try:
        value = complex(text)
    except ValueError as exc:
        msg = f"Cannot read {text!r} as a complex number (expected a+bi)"
        raise InvalidSpec(msg) from exc
    if not cmath.isfinite(value):
        msg = f"Complex parameter must be finite, got {text!r}"
        raise InvalidSpec(msg)
    return value


def format_complex(value: complex) -> str:
    """Write a complex number in the ``a+bi`` form read by parse_complex."""
    value = complex(value)
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


def _parse_real(text: str) -> float:
    value = parse_complex(text)
    if value.imag != 0:
        msg = f"Expected a real number, got {text!r}"
        raise InvalidSpec(msg)
    return value.real


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        msg = f"Expected an integer, got {text!r}"
        raise InvalidSpec(msg) from exc


def _parse_list(text: str) -> list[complex]:
    return [parse_complex(part) for part in text.split(",")]


_PARSERS: dict[TKind, Callable[[str], Any]] = {
    "complex": parse_complex,
    "real": _parse_real,
    "int": _parse_int,
    "complex_list": _parse_list,
}


def _squeeze(values: dict[str, Any]) -> zoo.SqueezeParam:
    return zoo.SqueezeParam(values["s"], values["theta"])


def _mix(values: dict[str, Any]) -> list[complex] | None:
    return values.get("mix")


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in (
        Family(
            "glauber",
            {"upsilon": "complex"},
            {},
            lambda v, t: zoo.glauber(v["upsilon"], t),
            "Coherent state, eigenstate of a",
        ),
        Family(
            "displaced-fock",
            {"n": "int", "upsilon": "complex"},
            {},
            lambda v, t: zoo.displaced_fock(v["n"], v["upsilon"], t),
            "Displaced number state D(upsilon)|n>",
        ),
        Family(
            "displaced-squeezed",
            {"s": "real", "theta": "real", "upsilon": "complex"},
            {"theta": "0", "upsilon": "0"},
            lambda v, t: zoo.displaced_squeezed(_squeeze(v), v["upsilon"], t),
            "Displaced squeezed vacuum D(upsilon)S(xi)|0>",
        ),
        Family(
            "dsfs",
            {"n": "int", "s": "real", "theta": "real", "upsilon": "complex"},
            {"theta": "0", "upsilon": "0"},
            lambda v, t: zoo.dsfs(v["n"], _squeeze(v), v["upsilon"], t),
            "Displaced squeezed Fock state D(upsilon)S(xi)|n>",
        ),
        Family(
            "cat",
            {"upsilon": "complex", "tau": "real", "varphi": "real"},
            {"tau": "1", "varphi": "0"},
            lambda v, t: zoo.cat(v["upsilon"], v["tau"], v["varphi"], t),
            "Cat state N(|upsilon> + tau e^{i varphi}|-upsilon>)",
        ),
        Family(
            "even-cat",
            {"upsilon": "complex"},
            {},
            lambda v, t: zoo.even_cat(v["upsilon"], t),
            "Even coherent state",
        ),
        Family(
            "odd-cat",
            {"upsilon": "complex"},
            {},
            lambda v, t: zoo.odd_cat(v["upsilon"], t),
            "Odd coherent state",
        ),
        Family(
            "yurke-stoler",
            {"upsilon": "complex"},
            {},
            lambda v, t: zoo.yurke_stoler(v["upsilon"], t),
            "Yurke-Stoler state",
        ),
        Family(
            "cat-sdz",
            {
                "upsilon": "complex",
                "tau": "real",
                "varphi": "real",
                "s": "real",
                "theta": "real",
                "z": "complex",
            },
            {"tau": "1", "varphi": "0", "s": "0", "theta": "0", "z": "0"},
            lambda v, t: zoo.cat_sdz(
                v["upsilon"], v["tau"], v["varphi"], _squeeze(v), v["z"], t
            ),
            "Displaced squeezed cat D(z)S(xi)|cat>",
        ),
        Family(
            "su11-is",
            {"lambda": "complex", "eta": "complex", "mix": "complex_list"},
            {},
            lambda v, t: zoo.su11_is(v["lambda"], v["eta"], _mix(v), t),
            "SU(1,1) intelligent state, eigenstate of eta K1 - i K2",
        ),
        Family(
            "su11-is-squeezed",
            {
                "lambda": "complex",
                "eta": "complex",
                "s": "real",
                "theta": "real",
                "mix": "complex_list",
            },
            {"theta": "0"},
            lambda v, t: zoo.su11_is_squeezed(
                v["lambda"], v["eta"], _squeeze(v), _mix(v), t
            ),
            "Squeezed intelligent state S(xi)|lambda, eta>",
        ),
        Family(
            "su11-is-displaced",
            {
                "lambda": "complex",
                "eta": "complex",
                "z": "complex",
                "mix": "complex_list",
            },
            {},
            lambda v, t: zoo.su11_is_displaced(
                v["lambda"], v["eta"], v["z"], _mix(v), t
            ),
            "Displaced intelligent state D(z)|lambda, eta>",
        ),
        Family(
            "su11-is-displaced-squeezed",
            {
                "lambda": "complex",
                "eta": "complex",
                "s": "real",
                "theta": "real",
                "z": "complex",
                "mix": "complex_list",
            },
            {"theta": "0"},
            lambda v, t: zoo.su11_is_displaced_squeezed(
                v["lambda"], v["eta"], _squeeze(v), v["z"], _mix(v), t
            ),
            "Displaced squeezed intelligent state D(z)S(xi)|lambda, eta>",
        ),
        Family(
            "raw-aes",
            {"beta": "complex_list", "lambda": "complex", "mix": "complex_list"},
            {},
            lambda v, t: zoo.raw_aes(v["beta"], v["lambda"], _mix(v), t),
            "Eigenstate of beta1 N + beta2 a^2 + beta3 a+^2 + beta4 a + beta5 a+",
        ),
    )
}


def get_family(name: str) -> Family:
    """Look a family up by name.

    Args:
        name (str): Family name.

    Raises:
        InvalidSpec: If the family is unknown.

    Returns:
        Family: The family.
    """
    try:
        return FAMILIES[name]
    except KeyError:
        msg = f"Unknown family {name!r}; choose from {sorted(FAMILIES)}"
        raise InvalidSpec(msg) from None


def parse_params(family: Family, raw: Mapping[str, str]) -> dict[str, Any]:
    """Convert string parameters to the types a family expects.

    Optional parameters are "mix" and those with a default.

    Args:
        family (Family): Target family.
        raw (Mapping[str, str]): Parameter strings by name.

    Raises:
        InvalidSpec: If a parameter is unknown, missing or malformed.

    Returns:
        dict[str, Any]: Typed parameter values.
    """
    unknown = set(raw) - set(family.params)
    if unknown:
        msg = f"{family.name} does not take {sorted(unknown)}"
        raise InvalidSpec(msg)

    values: dict[str, Any] = {}
    for name, kind in family.params.items():
        text = raw.get(name, family.defaults.get(name))
        if text is None:
            if name == "mix":
                continue
            msg = f"{family.name} needs --{name}"
            raise InvalidSpec(msg)
        values[name] = _PARSERS[kind](text)
    return values


def truncation_for(config: RunConfig) -> zoo.Truncation:
    """Fock settings derived from a run configuration."""
    return zoo.Truncation(
        dim=config.truncation,
        tail_threshold=config.tail_threshold,
        max_dim=max(MAX_DIM, config.truncation),
    )


def build_state(
    name: str, raw: Mapping[str, str], config: RunConfig
) -> zoo.StateBundle:
    """Build a family member from string parameters.

    Args:
        name (str): Family name.
        raw (Mapping[str, str]): Parameter strings.
        config (RunConfig): Run settings.

    Returns:
        zoo.StateBundle: The state.
    """
    family = get_family(name)
    values = parse_params(family, raw)
    logger.info("Building %s with %s", name, values)
    return family.build(values, truncation_for(config))


def jsonable(value: Any) -> Any:
    """Recursively replace complex numbers by {"re", "im"} and arrays by lists."""
    if isinstance(value, complex):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def coefficient_rows(coeffs: np.ndarray) -> list[dict[str, Any]]:
    """Rows (n, re, im, prob) of a coefficient vector."""
    return [
        {"n": n, "re": float(c.real), "im": float(c.imag), "prob": float(abs(c) ** 2)}
        for n, c in enumerate(coeffs)
    ]


def closed_form_overlap(bundle: zoo.StateBundle) -> float:
    """Overlap of the family's explicit eigenfunction with the Fock vector head.

    The explicit function is sampled on the unit circle and its Taylor
    coefficients a_n are compared as a ray with c_n / sqrt(n!). Sampling noise
    stays at roundoff on that scale.
    """
    head = min(HEAD_SIZE, bundle.fock.dim)
    nodes = np.exp(2j * np.pi * np.arange(HEAD_POINTS) / HEAD_POINTS)
    values = np.array([bundle.closed_form(node) for node in nodes])
    taylor = (np.fft.fft(values) / HEAD_POINTS)[:head]
    to_taylor = np.exp(-0.5 * gammaln(np.arange(head) + 1))
    return fidelity(taylor, bundle.fock.coeffs[:head] * to_taylor)


def ode_points(count: int = ODE_POINTS, radius: float = ODE_RADIUS) -> np.ndarray:
    """Points spread evenly over the disk |alpha| <= radius on a sunflower spiral."""
    k = np.arange(count)
    r = radius * np.sqrt((k + 0.5) / count)
    return r * np.exp(1j * GOLDEN_ANGLE * k)


def moment_record(fock: FockVector, tail_threshold: float) -> dict[str, Any]:
    """Quadrature, su(1,1) and photon statistics of a Fock vector."""
    try:
        mean, var, mandel_q = photon_stats(fock, tail_threshold)
    except ZeroMean:
        mean, var, mandel_q = 0.0, 0.0, None
    return {
        "quadrature": quadrature_report(fock, tail_threshold).as_record(),
        "su11": su11_report(fock, tail_threshold).as_record(),
        "photon": {"mean": mean, "var": var, "mandel_q": mandel_q},
    }


def state_record(bundle: zoo.StateBundle, config: RunConfig) -> dict[str, Any]:
    """Assemble the output record of one state.

    Args:
        bundle (zoo.StateBundle): The state.
        config (RunConfig): Run settings.

    Returns:
        dict[str, Any]: {spec, derived, coefficients, moments, residuals, config},
            JSON-serialisable.
    """
    fock = bundle.fock
    eigen = eigen_residual(bundle.spec, fock, config.tail_threshold).value
    ode = max(ode_residual(bundle.state, point) for point in ode_points())
    overlap = closed_form_overlap(bundle)
    tol = config.residual_tol
    record = {
        "family": bundle.family,
        "params": bundle.params,
        "spec": bundle.spec.as_record(),
        "derived": {**bundle.state.as_record(), "extras": bundle.extras},
        "coefficients": {
            "dim": fock.dim,
            "tail_mass": fock.tail_mass,
            "rows": coefficient_rows(fock.coeffs),
        },
        "moments": moment_record(fock, config.tail_threshold),
        "residuals": {
            "eigen": eigen,
            "ode": ode,
            "closed_form_overlap": overlap,
            "tol": tol,
            "passed": eigen <= tol and ode <= tol and 1 - overlap <= tol,
        },
        "config": config.as_record(),
    }
    return jsonable(record)
