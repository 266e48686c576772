"""Brute-force checks on the truncated Fock space.

Operators are dense matrices on span{|0>, ..., |N-1>}. Anything that feels the
truncation edge (commutators, eigen-residuals) is read on an interior block that
leaves out the last EDGE rows.
"""

import logging
from dataclasses import dataclass
from dataclasses import field

import numpy as np
from scipy.linalg import expm

from aesworkbench.errors import NotConverged
from aesworkbench.errors import TruncationNotConverged
from aesworkbench.solver import TAIL_THRESHOLD
from aesworkbench.solver import AlgebraSpec
from aesworkbench.solver import FockVector
from aesworkbench.solver import tail_mass

logger = logging.getLogger(__name__)

EDGE = 4
PADDING = 64
COMMUTATOR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix of an operator with a readable label."""

    entries: np.ndarray
    label: str

    @property
    def dim(self) -> int:
        """int: Truncation dimension N."""
        return self.entries.shape[0]

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """Operator product."""
        label = f"{self.label}{other.label}"
        return OperatorMatrix(self.entries @ other.entries, label)

    def apply(self, psi: FockVector | np.ndarray) -> np.ndarray:
        """Act on a vector of the same dimension."""
        coeffs = psi.coeffs if isinstance(psi, FockVector) else psi
        return self.entries @ coeffs


@dataclass(frozen=True)
class Residual:
    """Norm of (M - lambda) psi on the interior rows."""

    value: float
    interior_dim: int


@dataclass
class CommutatorReport:
    """Deviation of each commutation relation on the interior block."""

    dim: int
    deviations: dict[str, float] = field(default_factory=dict)
    scales: dict[str, float] = field(default_factory=dict)

    def passed(self, tol: float = COMMUTATOR_TOL) -> bool:
        """Whether every relation holds to tol relative to its operand scale."""
        return all(self.deviations[k] <= tol * self.scales[k] for k in self.deviations)


def annihilation(dim: int) -> OperatorMatrix:
    """Matrix of a, with sqrt(n+1) on the first superdiagonal."""
    return OperatorMatrix(np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex), "a")


def creation(dim: int) -> OperatorMatrix:
    """Matrix of a+."""
    return OperatorMatrix(annihilation(dim).entries.T.copy(), "a+")


def number(dim: int) -> OperatorMatrix:
    """Matrix of N = a+ a."""
    return OperatorMatrix(np.diag(np.arange(dim)).astype(complex), "N")


def identity(dim: int) -> OperatorMatrix:
    """Identity matrix."""
    return OperatorMatrix(np.eye(dim, dtype=complex), "I")


def su11_generators(dim: int) -> dict[str, OperatorMatrix]:
    """Two-photon realization K0 = N/2 + 1/4, K+ = a+^2/2, K- = a^2/2, K1, K2.

    Args:
        dim (int): Truncation N.

    Returns:
        dict[str, OperatorMatrix]: Generators keyed by name.
    """
    a = annihilation(dim).entries
    ad = creation(dim).entries
    k_plus = ad @ ad / 2
    k_minus = a @ a / 2
    return {
        "K0": OperatorMatrix(np.diag(np.arange(dim) / 2 + 0.25).astype(complex), "K0"),
        "K+": OperatorMatrix(k_plus, "K+"),
        "K-": OperatorMatrix(k_minus, "K-"),
        "K1": OperatorMatrix((k_plus + k_minus) / 2, "K1"),
        "K2": OperatorMatrix((k_plus - k_minus) / 2j, "K2"),
    }


def build_element(spec: AlgebraSpec, dim: int) -> OperatorMatrix:
    """Matrix of beta1 N + beta2 a^2 + beta3 a+^2 + beta4 a + beta5 a+.

    Args:
        spec (AlgebraSpec): Algebra element (the eigenvalue is not used).
        dim (int): Truncation N, at least 8.

    Raises:
        ValueError: If dim is below 8.

    Returns:
        OperatorMatrix: The matrix.
    """
    if dim < 8:
        msg = f"Truncation must be at least 8, got {dim}"
        raise ValueError(msg)
    a = annihilation(dim).entries
    ad = creation(dim).entries
    entries = (
        spec.beta1 * np.diag(np.arange(dim))
        + spec.beta2 * (a @ a)
        + spec.beta3 * (ad @ ad)
        + spec.beta4 * a
        + spec.beta5 * ad
    )
    label = "{}N + {}a^2 + {}a+^2 + {}a + {}a+".format(*spec.betas)
    return OperatorMatrix(entries.astype(complex), label)


def _commutator(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    left = x @ y
    right = y @ x
    return left - right, max(np.max(np.abs(left)), np.max(np.abs(right)), 1.0)


def commutator_check(dim: int) -> CommutatorReport:
    """Check the two-photon and su(1,1) commutation relations.

    Args:
        dim (int): Truncation N, at least 16.

    Raises:
        ValueError: If dim is below 16.

    Returns:
        CommutatorReport: Deviation per relation on the block n < N - EDGE.
    """
    if dim < 16:
        msg = f"Commutator check needs N >= 16, got {dim}"
        raise ValueError(msg)
    a = annihilation(dim).entries
    ad = creation(dim).entries
    n_op = number(dim).entries
    eye = identity(dim).entries
    a2 = a @ a
    ad2 = ad @ ad
    k = {name: op.entries for name, op in su11_generators(dim).items()}

    relations = {
        "[a,a+] = I": (a, ad, eye),
        "[N,a] = -a": (n_op, a, -a),
        "[N,a+] = a+": (n_op, ad, ad),
        "[N,a^2] = -2a^2": (n_op, a2, -2 * a2),
        "[N,a+^2] = 2a+^2": (n_op, ad2, 2 * ad2),
        "[a^2,a+^2] = 4N + 2I": (a2, ad2, 4 * n_op + 2 * eye),
        "[a,a+^2] = 2a+": (a, ad2, 2 * ad),
        "[a+,a^2] = -2a": (ad, a2, -2 * a),
        "[K-,K+] = 2K0": (k["K-"], k["K+"], 2 * k["K0"]),
        "[K0,K+] = K+": (k["K0"], k["K+"], k["K+"]),
        "[K0,K-] = -K-": (k["K0"], k["K-"], -k["K-"]),
        "[K1,K2] = -iK0": (k["K1"], k["K2"], -1j * k["K0"]),
    }

    inner = dim - EDGE
    report = CommutatorReport(dim=dim)
    for name, (x, y, expected) in relations.items():
        comm, scale = _commutator(x, y)
        diff = (comm - expected)[:inner, :inner]
        report.deviations[name] = float(np.max(np.abs(diff)))
        report.scales[name] = float(scale)
    logger.debug("Commutators at N=%d: %s", dim, report.deviations)
    return report


def _check_converged(psi: FockVector, tail_threshold: float) -> None:
    if psi.tail_mass > tail_threshold:
        msg = f"Input tail mass {psi.tail_mass:.3g} above {tail_threshold:.3g}"
        raise NotConverged(msg, tail_mass=psi.tail_mass)


def eigen_residual(
    spec: AlgebraSpec, psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> Residual:
    """Eigen-residual ||(M - lambda) psi|| / (1 + |lambda|) on interior rows.

    Args:
        spec (AlgebraSpec): Algebra element and eigenvalue.
        psi (FockVector): Normalized, converged state.
        tail_threshold (float, optional): Largest accepted tail mass. Defaults to
            TAIL_THRESHOLD.

    Raises:
        NotConverged: If psi's tail is too heavy.

    Returns:
        Residual: The residual.
    """
    _check_converged(psi, tail_threshold)
    element = build_element(spec, psi.dim)
    out = element.apply(psi) - spec.lam * psi.coeffs
    inner = psi.dim - EDGE
    value = float(np.linalg.norm(out[:inner]) / (1 + abs(spec.lam)))
    return Residual(value=value, interior_dim=inner)


def _apply_unitary(
    generator: np.ndarray, psi: FockVector, tail_threshold: float
) -> FockVector:
    dim = psi.dim
    padded = np.zeros(generator.shape[0], dtype=complex)
    padded[:dim] = psi.coeffs
    out = expm(generator) @ padded
    head = out[:dim]
    lost = float(np.sum(np.abs(out[dim:]) ** 2))
    mass = tail_mass(head) + lost
    if mass > tail_threshold:
        msg = f"Transformed state leaks {mass:.3g} past N={dim}"
        raise TruncationNotConverged(msg, tail_mass=mass)
    return FockVector(coeffs=head, tail_mass=mass, norm=float(np.linalg.norm(head)))


def apply_displacement(
    z: complex, psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> FockVector:
    """Act with D(z) = exp(z a+ - z* a).

    The exponential is taken on a padded space and cut back to psi's dimension.

    Args:
        z (complex): Displacement.
        psi (FockVector): Converged state.
        tail_threshold (float, optional): Largest accepted tail mass, before and
            after. Defaults to TAIL_THRESHOLD.

    Raises:
        TruncationNotConverged: If the result does not fit in psi's dimension.

    Returns:
        FockVector: The displaced state, not renormalized.
    """
    _check_converged(psi, tail_threshold)
    size = psi.dim + PADDING
    a = annihilation(size).entries
    ad = creation(size).entries
    return _apply_unitary(z * ad - np.conj(z) * a, psi, tail_threshold)


def apply_squeeze(
    xi: complex, psi: FockVector, tail_threshold: float = TAIL_THRESHOLD
) -> FockVector:
    """Act with S(xi) = exp(xi a+^2 / 2 - xi* a^2 / 2).

    Args:
        xi (complex): Squeeze parameter s e^{i theta}.
        psi (FockVector): Converged state.
        tail_threshold (float, optional): Largest accepted tail mass, before and
            after. Defaults to TAIL_THRESHOLD.

    Raises:
        TruncationNotConverged: If the result does not fit in psi's dimension.

    Returns:
        FockVector: The squeezed state, not renormalized.
    """
    _check_converged(psi, tail_threshold)
    size = psi.dim + PADDING
    a = annihilation(size).entries
    ad = creation(size).entries
    return _apply_unitary(
        0.5 * xi * (ad @ ad) - 0.5 * np.conj(xi) * (a @ a), psi, tail_threshold
    )


def fock_state(n: int, dim: int) -> FockVector:
    """Number state |n> in a dim-dimensional truncation."""
    coeffs = np.zeros(dim, dtype=complex)
    coeffs[n] = 1.0
    return FockVector(coeffs=coeffs, tail_mass=tail_mass(coeffs))
