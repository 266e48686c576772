"""Complex-argument special functions used by the analytic eigenstates.

Everything here works in binary64 except the Kummer series, which falls back on
mpmath when the plain sum loses too many digits to cancellation.
"""

import cmath
import logging
import math
from typing import Callable
from typing import Literal

import mpmath
import numpy as np
from scipy.special import gammaln
from scipy.special import rgamma

from aesworkbench.errors import GammaPole
from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import NoConvergence
from aesworkbench.errors import Overflow
from aesworkbench.errors import PoleAtC

logger = logging.getLogger(__name__)

SERIES_EPS = np.finfo(float).eps / 4
STOP_RUN = 3
MAX_TERMS = 5000
CANCELLATION_LIMIT = 1e3
KUMMER_SWITCH = -5.0
INTEGER_TOL = 1e-12
HERMITE_MAX_N = 10_000

TParity = Literal["even", "odd"]


def nonpositive_integer(z: complex, tol: float = INTEGER_TOL) -> int | None:
    """Return m if z equals -m for a nonnegative integer m, else None.

    Args:
        z (complex): Value to test.
        tol (float, optional): Absolute tolerance. Defaults to INTEGER_TOL.

    Returns:
        int | None: The integer m, or None.
    """
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return None
    m = round(-z.real)
    if abs(z.real + m) > tol:
        return None
    return int(m)


def _check_finite(*values: complex) -> None:
    for value in values:
        if not cmath.isfinite(complex(value)):
            msg = f"Non-finite argument {value!r}"
            raise InvalidSpec(msg)


def _sum_series(
    first: complex, ratio: Callable[[int], complex], max_terms: int = MAX_TERMS
) -> tuple[complex, float]:
    """Sum a power series given its first term and its term ratio.

    The sum stops once STOP_RUN consecutive terms are below SERIES_EPS relative to
    the running sum, or as soon as a term is exactly zero (terminating series).

    Args:
        first (complex): Term of index 0.
        ratio (Callable[[int], complex]): Maps k to term_{k+1} / term_k.
        max_terms (int, optional): Term budget. Defaults to MAX_TERMS.

    Raises:
        NoConvergence: If the budget is exhausted.

    Returns:
        tuple[complex, float]: The sum and the largest term modulus.
    """
    term = complex(first)
    re_parts = [term.real]
    im_parts = [term.imag]
    largest = abs(term)
    running = term
    small = 0

    for k in range(max_terms):
        factor = ratio(k)
        if factor == 0:
            break
        term = term * factor
        if not cmath.isfinite(term):
            msg = f"Series term overflowed at index {k + 1}"
            raise NoConvergence(msg)
        re_parts.append(term.real)
        im_parts.append(term.imag)
        running += term
        largest = max(largest, abs(term))
        if abs(term) <= SERIES_EPS * abs(running):
            small += 1
            if small >= STOP_RUN:
                break
        else:
            small = 0
    else:
        msg = f"Series did not converge within {max_terms} terms"
        raise NoConvergence(msg)

    return complex(math.fsum(re_parts), math.fsum(im_parts)), largest


def _kummer_ratio(d: complex, c: complex, x: complex) -> Callable[[int], complex]:
    def ratio(k: int) -> complex:
        if d + k == 0:
            return 0
        return (d + k) / (c + k) * x / (k + 1)

    return ratio


def _kummer_series_mp(d: complex, c: complex, x: complex, dps: int) -> complex:
    """Sum the Kummer series with mpmath at the given working precision."""
    with mpmath.workdps(dps):
        d_mp = mpmath.mpc(d)
        c_mp = mpmath.mpc(c)
        x_mp = mpmath.mpc(x)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        eps = mpmath.mpf(10) ** (-dps)
        small = 0
        for k in range(MAX_TERMS):
            if d_mp + k == 0:
                break
            term = term * (d_mp + k) / (c_mp + k) * x_mp / (k + 1)
            total += term
            if abs(term) <= eps * abs(total):
                small += 1
                if small >= STOP_RUN:
                    break
            else:
                small = 0
        else:
            msg = f"Extended-precision series did not converge within {MAX_TERMS} terms"
            raise NoConvergence(msg)
        return complex(total)


def _kummer_direct(d: complex, c: complex, x: complex) -> complex:
    """Plain Taylor series of 1F1(d|c|x), with an mpmath retry on cancellation."""
    total, largest = _sum_series(1.0, _kummer_ratio(d, c, x))
    if largest == 0:
        return total
    loss = largest / abs(total) if total != 0 else math.inf
    if loss > CANCELLATION_LIMIT:
        dps = 20 + (int(math.ceil(math.log10(loss))) if math.isfinite(loss) else 40)
        logger.debug(
            "1F1(%s|%s|%s): cancellation ratio %.3g, retrying at %d digits",
            d,
            c,
            x,
            loss,
            dps,
        )
        total = _kummer_series_mp(d, c, x, dps)
    return total


def _snap(z: complex) -> complex:
    m = nonpositive_integer(z)
    return z if m is None else complex(-m)


def _check_pole(d: complex, c: complex) -> None:
    j = nonpositive_integer(c)
    if j is None:
        return
    m = nonpositive_integer(d)
    if m is not None and m <= j:
        return
    msg = f"1F1 lower parameter c={c} is a pole (d={d})"
    raise PoleAtC(msg)


def kummer_1f1(d: complex, c: complex, x: complex) -> complex:
    """Confluent hypergeometric function 1F1(d|c|x).

    Args:
        d (complex): Upper parameter.
        c (complex): Lower parameter.
        x (complex): Argument.

    Raises:
        PoleAtC: If c is a nonpositive integer not shielded by a terminating d.
        NoConvergence: If the series exceeds its term budget.

    Returns:
        complex: The function value.
    """
    d, c, x = complex(d), complex(c), complex(x)
    _check_finite(d, c, x)
    _check_pole(d, c)
    d, c = _snap(d), _snap(c)

    if x == 0:
        return 1 + 0j
    if nonpositive_integer(d) is None and x.real < KUMMER_SWITCH:
        return cmath.exp(x) * _kummer_direct(c - d, c, -x)
    return _kummer_direct(d, c, x)


def kummer_transform_pair(
    d: complex, c: complex, x: complex
) -> tuple[complex, complex]:
    """Both sides of Kummer's transformation, each summed directly.

    Args:
        d (complex): Upper parameter.
        c (complex): Lower parameter.
        x (complex): Argument.

    Returns:
        tuple[complex, complex]: 1F1(d|c|x) and e^x 1F1(c-d|c|-x).
    """
    d, c, x = complex(d), complex(c), complex(x)
    _check_finite(d, c, x)
    _check_pole(d, c)
    d, c = _snap(d), _snap(c)
    return _kummer_direct(d, c, x), cmath.exp(x) * _kummer_direct(c - d, c, -x)


def hermite_sequence(n_max: int, t: complex) -> np.ndarray:
    """Physicists' Hermite polynomials H_0(t) ... H_n_max(t).

    Args:
        n_max (int): Highest degree.
        t (complex): Argument.

    Raises:
        ValueError: If n_max is negative or above HERMITE_MAX_N.
        Overflow: If the recurrence leaves the binary64 range.

    Returns:
        np.ndarray: Complex array of length n_max + 1.
    """
    if n_max < 0 or n_max > HERMITE_MAX_N:
        msg = f"Hermite degree must lie in [0, {HERMITE_MAX_N}], got {n_max}"
        raise ValueError(msg)
    t = complex(t)
    out = np.empty(n_max + 1, dtype=complex)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * t
    for n in range(1, n_max):
        out[n + 1] = 2 * t * out[n] - 2 * n * out[n - 1]
        if not cmath.isfinite(out[n + 1]):
            msg = f"H_{n + 1}({t}) overflows"
            raise Overflow(msg)
    return out


def hermite(n: int, t: complex) -> complex:
    """Physicists' Hermite polynomial H_n(t) by the three-term recurrence.

    Args:
        n (int): Degree.
        t (complex): Argument.

    Returns:
        complex: H_n(t).
    """
    return complex(hermite_sequence(n, t)[n])


def hermite_kummer_even(m: int, x: complex) -> complex:
    """1F1(-m|1/2|x^2) written through H_{2m}(x)."""
    scale = math.exp(gammaln(m + 1) - gammaln(2 * m + 1))
    return (-1) ** m * scale * hermite(2 * m, x)


def hermite_kummer_odd(m: int, x: complex) -> complex:
    """x 1F1(-m|3/2|x^2) written through H_{2m+1}(x)."""
    scale = math.exp(gammaln(m + 1) - gammaln(2 * m + 2)) / 2
    return (-1) ** m * scale * hermite(2 * m + 1, x)


def parabolic_cylinder_D(nu: complex, x: complex) -> complex:  # noqa: N802
    """Parabolic cylinder function D_nu(x) assembled from two Kummer functions.

    Args:
        nu (complex): Order.
        x (complex): Argument.

    Raises:
        GammaPole: If both reciprocal Gamma factors vanish.

    Returns:
        complex: D_nu(x).
    """
    nu, x = complex(nu), complex(x)
    _check_finite(nu, x)
    r_even = complex(rgamma((1 - nu) / 2))
    r_odd = complex(rgamma(-nu / 2))
    if r_even == 0 and r_odd == 0:
        msg = f"Both Gamma factors of D_{nu} are at poles"
        raise GammaPole(msg)

    arg = x * x / 2
    bracket = 0j
    if r_even != 0:
        bracket += kummer_1f1(-nu / 2, 0.5, arg) * r_even
    if r_odd != 0:
        bracket -= math.sqrt(2) * x * kummer_1f1((1 - nu) / 2, 1.5, arg) * r_odd
    return math.sqrt(math.pi) * 2 ** (nu / 2) * cmath.exp(-x * x / 4) * bracket


def degenerate_kernel(c: complex, x: complex, parity: TParity) -> complex:
    """Entire Bessel combinations solving the degenerate (Airy-type) case.

    parity="odd" gives sqrt(x) J_{1/3}(2/3 c x^{3/2}) and parity="even" gives
    sqrt(x) J_{-1/3}(2/3 c x^{3/2}); both are summed as power series in x^3.

    Args:
        c (complex): Scale of the Bessel argument, nonzero.
        x (complex): Argument.
        parity (TParity): Which kernel.

    Raises:
        InvalidSpec: If c is zero or parity is unknown.
        NoConvergence: If the series exceeds its term budget.

    Returns:
        complex: The kernel value.
    """
    c, x = complex(c), complex(x)
    _check_finite(c, x)
    if c == 0:
        msg = "Degenerate kernel needs a nonzero scale c"
        raise InvalidSpec(msg)
    if parity not in ("even", "odd"):
        msg = f"Unknown parity {parity!r}"
        raise InvalidSpec(msg)

    third = c / 3
    z = -(third * third) * x**3
    shift = 4 / 3 if parity == "odd" else 2 / 3

    def ratio(k: int) -> complex:
        return z / ((k + 1) * (k + shift))

    total, _ = _sum_series(rgamma(shift), ratio)
    if parity == "odd":
        return third ** (1 / 3) * x * total
    return third ** (-1 / 3) * total


def airy_ai_neg(x: complex) -> complex:
    """Airy function Ai(-x)."""
    return (degenerate_kernel(1, x, "odd") + degenerate_kernel(1, x, "even")) / 3


def airy_bi_neg(x: complex) -> complex:
    """Airy function Bi(-x)."""
    even = degenerate_kernel(1, x, "even")
    return (even - degenerate_kernel(1, x, "odd")) / math.sqrt(3)
