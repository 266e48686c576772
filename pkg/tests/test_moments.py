import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from aesworkbench import zoo
from aesworkbench.errors import NotConverged
from aesworkbench.errors import ZeroMean
from aesworkbench.moments import MomentReport
from aesworkbench.moments import covariance_matrix
from aesworkbench.moments import husimi_integral
from aesworkbench.moments import husimi_q
from aesworkbench.moments import intelligence_check
from aesworkbench.moments import photon_stats
from aesworkbench.moments import quadrature_report
from aesworkbench.moments import su11_report
from aesworkbench.oracle import fock_state
from aesworkbench.solver import FockVector

GRID = np.linspace(-6, 6, 121)


def test_vacuum_moments(vacuum):
    quad = quadrature_report(vacuum)
    assert quad.var_a == pytest.approx(0.25)
    assert quad.var_b == pytest.approx(0.25)
    assert quad.heisenberg_residual == pytest.approx(0, abs=1e-15)
    k = su11_report(vacuum)
    assert k.mean_c == pytest.approx(0.25)
    assert k.var_a == pytest.approx(0.125)
    assert k.var_b == pytest.approx(0.125)


def test_vacuum_covariance(vacuum):
    assert_allclose(covariance_matrix(vacuum), np.eye(2) / 4, atol=1e-15)


def test_vacuum_has_no_mandel_parameter(vacuum):
    with pytest.raises(ZeroMean):
        photon_stats(vacuum)


def test_coherent_state_is_minimum_uncertainty():
    upsilon = 0.8 + 0.6j
    fock = zoo.glauber(upsilon).fock
    quad = quadrature_report(fock)
    assert quad.mean_a == pytest.approx(upsilon.real)
    assert quad.mean_b == pytest.approx(upsilon.imag)
    assert intelligence_check(quad).passed
    mean, var, mandel_q = photon_stats(fock)
    assert mean == pytest.approx(1.0)
    assert var == pytest.approx(1.0)
    assert mandel_q == pytest.approx(0, abs=1e-10)


def test_number_state_statistics():
    psi = fock_state(3, 32)
    mean, var, mandel_q = photon_stats(psi)
    assert (mean, var, mandel_q) == pytest.approx((3, 0, -1))
    quad = quadrature_report(psi)
    assert quad.var_a == pytest.approx(7 / 4)
    assert not intelligence_check(quad).passed


def test_squeezed_vacuum_variances():
    s = 0.5
    quad = quadrature_report(zoo.squeezed_vacuum(zoo.SqueezeParam(s)).fock)
    assert quad.var_a == pytest.approx(math.exp(2 * s) / 4, rel=1e-10)
    assert quad.var_b == pytest.approx(math.exp(-2 * s) / 4, rel=1e-10)
    assert intelligence_check(quad).passed


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_displaced_squeezed_on_axis_is_ordinary_intelligent(theta):
    bundle = zoo.displaced_squeezed(zoo.SqueezeParam(0.4, theta), 0.3 - 0.2j)
    quad = quadrature_report(bundle.fock)
    assert abs(quad.heisenberg_residual) <= 1e-10
    assert intelligence_check(quad, "ordinary").passed


def test_rotated_squeeze_is_only_generalized_intelligent():
    bundle = zoo.displaced_squeezed(zoo.SqueezeParam(0.4, 1.0), 0)
    quad = quadrature_report(bundle.fock)
    assert not intelligence_check(quad, "ordinary").passed
    assert intelligence_check(quad, "generalized").passed


def test_even_cat_su11_variance():
    expected = 0.25 * math.tanh(1.0) + 0.125
    k = su11_report(zoo.even_cat(1.0).fock)
    assert k.var_a == pytest.approx(expected, abs=1e-10)
    assert k.var_b == pytest.approx(expected, abs=1e-10)
    assert intelligence_check(k, "ordinary").passed


def test_odd_cat_is_sub_poissonian():
    _, _, mandel_q = photon_stats(zoo.odd_cat(1.0).fock)
    assert mandel_q < 0


def test_intelligent_state_moments():
    eta = 1.5 + 0.4j
    k = su11_report(zoo.su11_is(0.3 + 0.2j, eta).fock)
    assert k.var_a == pytest.approx(k.mean_c / (2 * eta.real), rel=1e-8)
    assert k.var_b == pytest.approx(abs(eta) ** 2 * k.var_a, rel=1e-8)
    assert k.covar == pytest.approx(eta.imag * k.var_a, rel=1e-8)
    assert intelligence_check(k, "generalized").passed
    assert not intelligence_check(k, "ordinary").passed


@pytest.mark.parametrize("eta", [2.0, 0.5])
def test_real_eta_sets_variance_ratio(eta):
    k = su11_report(zoo.su11_is(0.2, eta).fock)
    assert k.var_b / k.var_a == pytest.approx(eta**2, rel=1e-8)
    assert intelligence_check(k, "ordinary").passed


def test_robertson_floor_holds_across_families():
    bundles = [
        zoo.dsfs(2, zoo.SqueezeParam(0.3, 0.7), 0.4j),
        zoo.cat(1.2, 0.5, 0.8),
        zoo.cat_sdz(0.9, 1.0, 0.0, zoo.SqueezeParam(0.2, 0.3), 0.3),
        zoo.su11_is_displaced(0.3, 1.2 - 0.3j, 0.2 + 0.1j),
    ]
    for bundle in bundles:
        for report in (quadrature_report(bundle.fock), su11_report(bundle.fock)):
            assert report.robertson_residual >= -1e-10


def test_intelligence_check_rejects_unknown_kind():
    report = MomentReport("X1X2", 0, 0, 0.25, 0.25, 0, 0.5)
    with pytest.raises(ValueError, match="kind"):
        intelligence_check(report, "strong")


def test_moment_report_record():
    record = MomentReport("X1X2", 0, 0, 0.5, 0.5, 0, 0.5).as_record()
    assert record["heisenberg_residual"] == pytest.approx(0.1875)
    assert record["pair"] == "X1X2"


def test_heavy_tail_is_rejected():
    psi = FockVector.from_coefficients(np.ones(16))
    with pytest.raises(NotConverged):
        quadrature_report(psi)


def test_husimi_of_vacuum(vacuum):
    field = husimi_q(vacuum, GRID, GRID)
    assert field.shape == (121, 121)
    grid = GRID[None, :] + 1j * GRID[:, None]
    assert_allclose(field, np.exp(-np.abs(grid) ** 2) / np.pi, atol=1e-15)


def test_husimi_of_coherent_state_is_shifted_gaussian():
    upsilon = 1.0 - 0.5j
    field = husimi_q(zoo.glauber(upsilon).fock, GRID, GRID)
    grid = GRID[None, :] + 1j * GRID[:, None]
    assert_allclose(field, np.exp(-np.abs(grid - upsilon) ** 2) / np.pi, atol=1e-12)


@pytest.mark.parametrize("upsilon", [0.5, 1.5])
def test_husimi_integrates_to_one(upsilon):
    field = husimi_q(zoo.even_cat(upsilon).fock, GRID, GRID)
    assert husimi_integral(field, GRID, GRID) == pytest.approx(1, abs=1e-3)
    assert_allclose(field, field[::-1, ::-1], atol=1e-12)
