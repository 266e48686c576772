import cmath
import logging
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from aesworkbench import zoo
from aesworkbench.errors import DegenerateNorm
from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import NonNormalizable
from aesworkbench.oracle import apply_displacement
from aesworkbench.oracle import apply_squeeze
from aesworkbench.oracle import eigen_residual
from aesworkbench.oracle import fock_state
from aesworkbench.solver import CaseTag
from aesworkbench.solver import FockVector
from aesworkbench.solver import fidelity
from tests.conftest import disk_points

ORACLE_DIM = 128


def padded(vector, dim=ORACLE_DIM):
    return FockVector.from_coefficients(np.pad(vector.coeffs, (0, dim - vector.dim)))


def assert_same_ray(psi, phi, tol=1e-8):
    assert fidelity(psi, phi) >= 1 - tol


def test_squeeze_param_disk_coordinate():
    xi = zoo.SqueezeParam(0.5, 0.3)
    assert xi.zeta == pytest.approx(math.tanh(0.5) * cmath.exp(0.3j))
    back = zoo.SqueezeParam.from_zeta(xi.zeta)
    assert back.s == pytest.approx(0.5)
    assert back.theta == pytest.approx(0.3)


@pytest.mark.parametrize("s", [-0.1, float("nan")])
def test_squeeze_param_rejects_bad_magnitude(s):
    with pytest.raises(InvalidSpec):
        zoo.SqueezeParam(s)


def test_squeeze_param_from_zeta_outside_disk():
    with pytest.raises(InvalidSpec):
        zoo.SqueezeParam.from_zeta(1.0)


def test_cat_norm_factor():
    assert zoo.CatParam(1).norm_factor == pytest.approx((2 + 2 * math.exp(-2)) ** -0.5)


def test_cat_norm_factor_degenerate():
    with pytest.raises(DegenerateNorm):
        zoo.CatParam(0, 1, math.pi).norm_factor


def test_cat_param_rejects_negative_weight():
    with pytest.raises(InvalidSpec):
        zoo.CatParam(1, -0.5)


def test_is_param_needs_positive_real_part():
    with pytest.raises(NonNormalizable):
        zoo.ISParam(-0.5 + 1j, 0.3)


@pytest.mark.parametrize(
    ("eta", "axis"), [(2, "K1"), (0.5, "K2"), (1, None), (0.6 + 0.8j, None)]
)
def test_is_squeeze_axis(eta, axis):
    assert zoo.is_squeeze_axis(eta) == axis


def test_glauber_closed_form_is_exact(rng):
    bundle = zoo.glauber(0.9 - 0.4j)
    assert bundle.state.case_tag is CaseTag.HEISENBERG
    for alpha in disk_points(rng, 6, radius=2.0):
        assert bundle.state.evaluate(alpha) == pytest.approx(
            bundle.closed_form(alpha), rel=1e-10
        )


def test_glauber_warns_above_desk_scale(caplog):
    with caplog.at_level(logging.WARNING, logger="aesworkbench.zoo"):
        zoo.glauber(3.0)
    assert "desk scale" in caplog.text


@pytest.mark.parametrize("n", [0, 1, 3])
def test_displaced_fock_matches_oracle(n):
    upsilon = 0.6 + 0.5j
    bundle = zoo.displaced_fock(n, upsilon)
    expected = apply_displacement(upsilon, fock_state(n, ORACLE_DIM))
    assert_same_ray(bundle.fock, expected)
    assert eigen_residual(bundle.spec, bundle.fock).value < 1e-10


def test_displaced_fock_rejects_negative_n():
    with pytest.raises(InvalidSpec):
        zoo.displaced_fock(-1, 0.5)


def test_displaced_squeezed_matches_oracle():
    xi = zoo.SqueezeParam(0.4, 1.1)
    upsilon = -0.3 + 0.7j
    bundle = zoo.displaced_squeezed(xi, upsilon)
    squeezed = apply_squeeze(xi.xi, fock_state(0, ORACLE_DIM))
    assert_same_ray(bundle.fock, apply_displacement(upsilon, squeezed))


def test_displaced_squeezed_closed_form_is_normalized(rng):
    bundle = zoo.displaced_squeezed(zoo.SqueezeParam(0.5, 0.2), 0.4 - 0.2j)
    for alpha in disk_points(rng, 5):
        assert abs(bundle.closed_form(alpha)) == pytest.approx(
            abs(bundle.state.evaluate(alpha)), rel=1e-9
        )


def test_displaced_squeezed_solves_quadrature_equation():
    xi = zoo.SqueezeParam(0.3, 0.6)
    upsilon = 0.5 + 0.1j
    bundle = zoo.displaced_squeezed(xi, upsilon)
    form = bundle.extras["intelligence_form"]
    dim = bundle.fock.dim
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    x1 = (a.T + a) / 2
    x2 = 1j * (a.T - a) / 2
    operator = form["x1_coefficient"] * x1 + form["x2_coefficient"] * x2
    out = operator @ bundle.fock.coeffs - form["eigenvalue"] * bundle.fock.coeffs
    assert np.linalg.norm(out[: dim - 4]) < 1e-10


def test_dsfs_without_photons_is_displaced_squeezed():
    xi = zoo.SqueezeParam(0.35, -0.4)
    upsilon = 0.2 + 0.6j
    assert_same_ray(
        zoo.dsfs(0, xi, upsilon).fock, zoo.displaced_squeezed(xi, upsilon).fock
    )


@pytest.mark.parametrize("n", [1, 2, 4])
def test_dsfs_closed_form_is_normalized(n, rng):
    bundle = zoo.dsfs(n, zoo.SqueezeParam(0.3, 0.5), 0.4 - 0.3j)
    for alpha in disk_points(rng, 5, radius=1.5):
        assert abs(bundle.closed_form(alpha)) == pytest.approx(
            abs(bundle.state.evaluate(alpha)), rel=1e-8
        )


def test_dsfs_kummer_alternate_agrees(rng):
    xi = zoo.SqueezeParam(0.3, 0.2)
    bundle = zoo.dsfs(2, xi, 0.3 + 0.3j)
    alternate = zoo.dsfs_kummer_alternate(2, xi, 0.3 + 0.3j)
    for alpha in disk_points(rng, 5):
        assert alternate.evaluate(alpha) == pytest.approx(
            bundle.state.evaluate(alpha), rel=1e-8
        )


def test_even_and_odd_cats_have_definite_parity():
    even = zoo.even_cat(1.3)
    odd = zoo.odd_cat(1.3)
    assert_allclose(even.fock.probabilities()[1::2], 0, atol=1e-20)
    assert_allclose(odd.fock.probabilities()[0::2], 0, atol=1e-20)


def test_cat_probabilities():
    upsilon = 1.1
    bundle = zoo.even_cat(upsilon)
    n = np.arange(0, bundle.fock.dim, 2)
    mean = upsilon**2
    log_poisson = -mean + n * math.log(mean) - np.array([math.lgamma(k + 1) for k in n])
    expected = 2 * np.exp(log_poisson) / (1 + math.exp(-2 * mean))
    assert_allclose(bundle.fock.probabilities()[0::2], expected, atol=1e-13)


def test_yurke_stoler_is_balanced():
    probs = zoo.yurke_stoler(1.0).fock.probabilities()
    poisson = np.exp(-1 - np.array([math.lgamma(k + 1) for k in range(len(probs))]))
    assert_allclose(probs, poisson, atol=1e-13)


def test_cat_sdz_coefficients_are_normalized():
    coeffs = zoo.cat_sdz_coefficients(
        1.0, 0.7, 0.4, zoo.SqueezeParam(0.4, 0.2), 0.5 + 0.3j, ORACLE_DIM
    )
    assert np.linalg.norm(coeffs) == pytest.approx(1, abs=1e-9)


def test_cat_sdz_matches_oracle():
    xi = zoo.SqueezeParam(0.3, 0.5)
    z = 0.4 - 0.2j
    base = zoo.cat(1.0, 0.8, 0.3)
    squeezed = apply_squeeze(xi.xi, padded(base.fock))
    expected = apply_displacement(z, squeezed)
    bundle = zoo.cat_sdz(1.0, 0.8, 0.3, xi, z)
    assert_same_ray(bundle.fock, expected)
    closed = zoo.cat_sdz_coefficients(1.0, 0.8, 0.3, xi, z, ORACLE_DIM)
    assert_same_ray(closed, expected)


def test_cat_sdz_hermite_form_matches_exponential_form():
    args = (1.0, 0.7, 0.4, zoo.SqueezeParam(0.4, 0.2), 0.5 + 0.3j)
    assert_allclose(
        zoo.cat_sdz_hermite_coefficients(*args, 64),
        zoo.cat_sdz_coefficients(*args, 64),
        atol=1e-12,
    )


def test_cat_sdz_hermite_form_needs_squeeze():
    with pytest.raises(InvalidSpec, match="s > 0"):
        zoo.cat_sdz_hermite_coefficients(1.0, 1.0, 0.0, zoo.SqueezeParam(0.0), 0, 16)


def test_squeezed_cat_matches_oracle():
    xi = zoo.SqueezeParam(0.4, 0.9)
    base = zoo.cat(0.8 - 0.3j, 0.5, 1.0)
    bundle = zoo.squeezed_cat(0.8 - 0.3j, 0.5, 1.0, xi)
    assert bundle.family == "squeezed-cat"
    assert_same_ray(bundle.fock, apply_squeeze(xi.xi, padded(base.fock)))


def test_displaced_cat_matches_oracle():
    z = -0.5 + 0.6j
    base = zoo.cat(1.2, 1.0, 0.0)
    bundle = zoo.displaced_cat(1.2, 1.0, 0.0, z)
    assert bundle.family == "displaced-cat"
    assert_same_ray(bundle.fock, apply_displacement(z, padded(base.fock)))


def test_cat_sdz_reduces_to_cat():
    plain = zoo.cat(0.9, 0.6, 1.2)
    reduced = zoo.cat_sdz(0.9, 0.6, 1.2, zoo.SqueezeParam(0.0), 0)
    assert_same_ray(plain.fock, reduced.fock, tol=1e-12)


def test_is_at_unit_eta_is_even_cat():
    lam = 0.4 + 0.3j
    bundle = zoo.su11_is(lam, 1)
    assert_same_ray(bundle.fock, zoo.even_cat(cmath.sqrt(2 * lam)).fock, tol=1e-10)


def test_is_meets_squeezed_vacuum():
    eta = 1.5 + 0.4j
    omega = zoo.ISParam(eta, 0).omega_eta
    bundle = zoo.su11_is(-(eta + 1) * omega / 4, eta)
    vacuum = zoo.squeezed_vacuum(zoo.SqueezeParam.from_zeta(-omega))
    assert_same_ray(bundle.fock, vacuum.fock, tol=1e-10)


def test_is_eigen_residual():
    bundle = zoo.su11_is(0.3 + 0.2j, 1.5 + 0.4j)
    assert bundle.state.case_tag is CaseTag.GENERAL_KUMMER
    assert eigen_residual(bundle.spec, bundle.fock).value < 1e-9


def test_is_displaced_squeezed_matches_oracle():
    lam, eta = 0.3 + 0.2j, 1.5 + 0.4j
    xi = zoo.SqueezeParam(0.2, 0.4)
    z = 0.3 + 0.1j
    base = zoo.su11_is(lam, eta)
    squeezed = apply_squeeze(xi.xi, padded(base.fock))
    expected = apply_displacement(z, squeezed)
    bundle = zoo.su11_is_displaced_squeezed(lam, eta, xi, z)
    assert_same_ray(bundle.fock, expected)


def test_is_displaced_matches_oracle():
    lam, eta = 0.3 + 0.2j, 2.0
    z = -0.2 + 0.3j
    base = zoo.su11_is(lam, eta)
    expected = apply_displacement(z, padded(base.fock))
    bundle = zoo.su11_is_displaced(lam, eta, z)
    assert bundle.family == "su11-is-displaced"
    assert_same_ray(bundle.fock, expected)


def test_raw_aes_builds_even_cat():
    bundle = zoo.raw_aes([0, 1, 0, 0, 0], 1, mix=(1, 1))
    assert_same_ray(bundle.fock, zoo.even_cat(1.0).fock, tol=1e-12)


def test_raw_aes_rejects_wrong_beta_count():
    with pytest.raises(InvalidSpec):
        zoo.raw_aes([0, 1, 0], 1)


def test_displaced_squeezed_amplitude_shrinks_along_squeeze_axis():
    bundle = zoo.displaced_squeezed(zoo.SqueezeParam(0.5, 0.0), 0.8)
    assert bundle.extras["u"] == pytest.approx(0.8 * math.exp(-0.5))
    rotated = zoo.displaced_squeezed(zoo.SqueezeParam(0.5, math.pi), 0.8j)
    assert rotated.extras["u"] == pytest.approx(0.8j * math.exp(-0.5))
