import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import gammaln

from aesworkbench.errors import InvalidSpec
from aesworkbench.errors import NoEigenstate
from aesworkbench.errors import NonIntegerExponent
from aesworkbench.errors import NonNormalizable
from aesworkbench.oracle import eigen_residual
from aesworkbench.solver import TAIL_THRESHOLD
from aesworkbench.solver import AlgebraSpec
from aesworkbench.solver import CaseTag
from aesworkbench.solver import FockVector
from aesworkbench.solver import classify
from aesworkbench.solver import derive_params
from aesworkbench.solver import fidelity
from aesworkbench.solver import fock_coefficients
from aesworkbench.solver import gaussian_coefficients
from aesworkbench.solver import kummer_branch_state
from aesworkbench.solver import ode_residual
from aesworkbench.solver import recurrence_tail_weight
from aesworkbench.solver import solve
from aesworkbench.solver import solve_with_vector
from aesworkbench.solver import tail_mass
from aesworkbench.zoo import SqueezeParam
from aesworkbench.zoo import dsfs
from aesworkbench.zoo import dsfs_spec
from tests.conftest import disk_points

AIRY_SPEC = AlgebraSpec(0, 1, 0, 0, 0.5, lam=0.2)
FIRST_ORDER_SPEC = AlgebraSpec(1, 0, 0.3, 0, 0, lam=2)
DSFS_XI = SqueezeParam(0.5, 0.3)
DSFS_UPSILON = 0.7 + 0.2j


def fock_series(vector, alpha):
    n = np.arange(vector.dim)
    return complex(np.sum(vector.coeffs * alpha**n * np.exp(-0.5 * gammaln(n + 1))))


def test_spec_coerces_to_complex():
    spec = AlgebraSpec(1, 0, 0, 0, 0, lam=2)
    assert isinstance(spec.beta1, complex)
    assert spec.lam == 2 + 0j


@pytest.mark.parametrize(
    "betas",
    [(0, 0, 0, 0, 0), (float("nan"), 1, 0, 0, 0), (1, float("inf"), 0, 0, 0)],
)
def test_spec_rejects_invalid_betas(betas):
    with pytest.raises(InvalidSpec):
        AlgebraSpec(*betas, lam=0)


def test_spec_from_sequence_needs_five_betas():
    with pytest.raises(InvalidSpec, match="5 beta"):
        AlgebraSpec.from_sequence([1, 0, 0], 0)


@pytest.mark.parametrize(
    ("betas", "tag"),
    [
        ((0, 0, 0, 1, 0), CaseTag.HEISENBERG),
        ((0, 0, 0, 1, -0.3), CaseTag.HEISENBERG),
        ((1, 0, 0, 0, 0), CaseTag.OSCILLATOR),
        ((1, 0, 0.3, 0, 0), CaseTag.FIRST_ORDER_SQUEEZE_LIKE),
        ((0, 1, 0, 0, 0), CaseTag.CONSTANT_COEFF),
        ((1, 0.5, 0.5, 0, 0), CaseTag.CONSTANT_COEFF),
        ((0, 1, 0, 0, 0.5), CaseTag.DEGENERATE_BESSEL),
        ((2, 1, 0, 0, 0), CaseTag.GENERAL_KUMMER),
        ((0, 0.5, -0.2, 0, 0), CaseTag.GENERAL_KUMMER),
    ],
)
def test_classify(betas, tag):
    assert classify(AlgebraSpec(*betas, lam=0.1)) is tag


def test_classify_without_lowering_operator():
    with pytest.raises(NoEigenstate):
        classify(AlgebraSpec(0, 0, 0, 0, 1, lam=0))
    with pytest.raises(NoEigenstate):
        classify(AlgebraSpec(0, 0, 1, 0, 0, lam=0))


def test_classify_cubic_exponent_is_non_normalizable():
    with pytest.raises(NonNormalizable):
        classify(AlgebraSpec(0, 0, 1, 1, 0, lam=0))


def test_oscillator_needs_integer_exponent():
    with pytest.raises(NonIntegerExponent):
        derive_params(AlgebraSpec(1, 0, 0, 0, 0, lam=0.5))


def test_heisenberg_needs_small_raising_weight():
    with pytest.raises(NonNormalizable):
        derive_params(AlgebraSpec(0, 0, 0, 1, 1.2, lam=0))


def test_bessel_case_needs_small_number_weight():
    with pytest.raises(NonNormalizable):
        derive_params(AlgebraSpec(2.5, 1, 1.5625, 0, 0.5, lam=0))


def test_first_order_params():
    params = derive_params(FIRST_ORDER_SPEC)
    assert params.p == 2
    assert params.mu == 0


def test_mix_must_not_vanish():
    with pytest.raises(InvalidSpec):
        derive_params(AlgebraSpec(0, 1, 0, 0, 0, lam=1), mix=(0, 0))
    with pytest.raises(InvalidSpec):
        derive_params(AlgebraSpec(0, 1, 0, 0, 0, lam=1), mix=(1,))


def test_heisenberg_state_is_coherent(rng):
    upsilon = 0.8 - 0.5j
    state = solve(AlgebraSpec(0, 0, 0, 1, 0, lam=upsilon))
    for alpha in disk_points(rng, 5, radius=2.0):
        expected = cmath.exp(-abs(upsilon) ** 2 / 2 + upsilon * alpha)
        assert state.evaluate(alpha) == pytest.approx(expected, rel=1e-10)


def test_heisenberg_fock_vector_is_poissonian():
    upsilon = 1.2 + 0.3j
    _, vector = solve_with_vector(AlgebraSpec(0, 0, 0, 1, 0, lam=upsilon))
    n = np.arange(vector.dim)
    mean = abs(upsilon) ** 2
    expected = np.exp(-mean + n * math.log(mean) - [math.lgamma(k + 1) for k in n])
    assert_allclose(vector.probabilities(), expected, atol=1e-13)
    assert vector.tail_mass <= 1e-14
    assert vector.coeffs[0].real > 0
    assert vector.coeffs[0].imag == pytest.approx(0, abs=1e-15)


def test_first_order_state_matches_closed_form(rng):
    state = solve(FIRST_ORDER_SPEC)
    ratio = None
    for alpha in disk_points(rng, 4):
        expected = alpha**2 * cmath.exp(-0.15 * alpha**2)
        current = state.evaluate(alpha) / expected
        if ratio is not None:
            assert current == pytest.approx(ratio, rel=1e-9)
        ratio = current


@pytest.mark.parametrize("spec", [AIRY_SPEC, FIRST_ORDER_SPEC])
def test_ode_and_eigen_residuals(spec, rng):
    state, vector = solve_with_vector(spec)
    for alpha in disk_points(rng, 4, radius=0.8):
        assert ode_residual(state, alpha) < 1e-7
    assert eigen_residual(spec, vector).value < 1e-7


def test_constant_coefficient_mix_builds_even_cat():
    spec = AlgebraSpec(0, 1, 0, 0, 0, lam=1)
    _, vector = solve_with_vector(spec, mix=(1, 1))
    assert_allclose(vector.coeffs[1::2], 0, atol=1e-12)
    _, odd = solve_with_vector(spec, mix=(1, -1))
    assert_allclose(odd.coeffs[0::2], 0, atol=1e-12)


def test_kummer_branches_agree(rng):
    spec = dsfs_spec(1, SqueezeParam(0.4, 0.3), 0.5 + 0.2j)
    plus = kummer_branch_state(spec, 1)
    minus = kummer_branch_state(spec, -1)
    for alpha in disk_points(rng, 6, radius=1.5):
        assert plus.evaluate(alpha) == pytest.approx(minus.evaluate(alpha), rel=1e-8)


def test_kummer_branch_rejects_other_cases():
    with pytest.raises(InvalidSpec):
        kummer_branch_state(AlgebraSpec(0, 0, 0, 1, 0, lam=1), 1)
    with pytest.raises(InvalidSpec):
        kummer_branch_state(dsfs_spec(0, SqueezeParam(0.3), 0), 2)


def test_recurrence_tail_weight_decays_for_normalizable_spec():
    spec = AlgebraSpec(0, 0, 0, 1, 0, lam=1)
    assert recurrence_tail_weight(spec, 64) < 1e-20


@pytest.mark.parametrize("betas", [(0, 0, 0, 1, 1.2), (2.5, 1, 1.5625, 0, 0.5)])
@pytest.mark.parametrize("dim", [32, 64, 128])
def test_recurrence_tail_weight_stays_large_for_rejected_spec(betas, dim):
    assert recurrence_tail_weight(AlgebraSpec(*betas, lam=0), dim) > 0.1


def test_fock_coefficients_of_squeezed_vacuum():
    zeta = 0.5
    vector = fock_coefficients(AlgebraSpec(0, 0, 0, 1, -zeta, lam=0), dim=96)
    assert_allclose(vector.coeffs[1::2], 0, atol=1e-14)
    n = np.arange(0, 32, 2)
    ratios = vector.coeffs[n + 2] / vector.coeffs[n]
    assert_allclose(ratios, zeta * np.sqrt(n + 1) / np.sqrt(n + 2), rtol=1e-8)


def test_dsfs_fock_vector_converges():
    bundle = dsfs(2, DSFS_XI, DSFS_UPSILON)
    assert bundle.fock.tail_mass <= TAIL_THRESHOLD
    assert eigen_residual(bundle.spec, bundle.fock).value < 1e-9


def test_dsfs_series_matches_closed_form(rng):
    bundle = dsfs(2, DSFS_XI, DSFS_UPSILON)
    points = disk_points(rng, 20, radius=2.0)
    series = np.array([fock_series(bundle.fock, alpha) for alpha in points])
    exact = np.array([bundle.state.evaluate(alpha) for alpha in points])
    assert np.max(np.abs(series - exact)) <= 1e-8 * np.max(np.abs(exact))
    alpha = 1 + 0.5j
    assert fock_series(bundle.fock, alpha) == pytest.approx(
        bundle.state.evaluate(alpha), rel=1e-9
    )


def test_gaussian_coefficients_without_quadratic_term():
    b = 0.7 + 0.1j
    coeffs = gaussian_coefficients(0, b, 10)
    expected = [b**n / math.sqrt(math.factorial(n)) for n in range(10)]
    assert_allclose(coeffs, expected, rtol=1e-13)


def test_fidelity_pads_and_ignores_phase():
    psi = np.array([1, 1j]) / math.sqrt(2)
    assert fidelity(psi, 1j * np.array([1, 1j, 0, 0]) / math.sqrt(2)) == (
        pytest.approx(1)
    )
    assert fidelity(np.array([1, 0]), np.array([0, 1, 0])) == 0


def test_fock_vector_from_coefficients():
    vector = FockVector.from_coefficients([3, 4])
    assert_allclose(vector.coeffs, [0.6, 0.8])
    assert vector.norm == pytest.approx(5)
    raw = FockVector.from_coefficients([3, 4], normalize=False)
    assert_allclose(raw.coeffs, [3, 4])


@pytest.mark.parametrize("coeffs", [[], [0, 0, 0]])
def test_fock_vector_rejects_empty_or_zero(coeffs):
    with pytest.raises(InvalidSpec):
        FockVector.from_coefficients(coeffs)


def test_tail_mass_counts_last_indices():
    coeffs = np.zeros(64)
    coeffs[-1] = 0.5
    coeffs[0] = math.sqrt(0.75)
    assert tail_mass(coeffs) == pytest.approx(0.25)
