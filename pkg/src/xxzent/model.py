"""Two-qubit XXZ spin pair in a uniform field B and an inhomogeneous field b.

The Hamiltonian couples the xy-plane with strength J and the z-axis with Jz;
the site fields are B+b and B-b.  In the basis {|1,1>, |1,0>, |0,1>, |0,0>}
it is real symmetric with a single 2x2 inner block, so the full eigensystem
has a closed form built from eta = sqrt(b^2 + J^2), xi = b - eta and
zeta = b + eta.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field
from enum import Enum

import numpy as np

BOUNDARY_TOL = 1e-12
NORMALIZATION_TOL = 1e-9


class InvalidParameterError(ValueError):
    """Coupling or field value outside the accepted domain."""


class ZeroXYCouplingError(InvalidParameterError):
    """Closed-form paths divide by J and require J != 0."""


class NotNormalizedError(ValueError):
    """Pure-state amplitudes deviate from unit norm beyond tolerance."""


class Phase(Enum):
    DISENTANGLED = "disentangled"
    ENTANGLED = "entangled"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless couplings (J, Jz) and fields (B, b).

    B >= 0 is enforced; use :meth:`relaxed` to admit B < 0 for symmetry
    tests only.  J = 0 is accepted here (the spectral route handles it) but
    rejected by every closed-form operation.
    """

    J: float
    Jz: float
    B: float
    b: float
    allow_negative_uniform_field: InitVar[bool] = False

    def __post_init__(self, allow_negative_uniform_field: bool) -> None:
        for name in ("J", "Jz", "B", "b"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.B < 0.0 and not allow_negative_uniform_field:
            raise InvalidParameterError(
                f"uniform field B must be >= 0, got {self.B!r} "
                "(use ModelParams.relaxed for symmetry tests)"
            )

    @classmethod
    def relaxed(cls, J: float, Jz: float, B: float, b: float) -> "ModelParams":
        """Constructor admitting B < 0; intended for symmetry tests only."""
        return cls(J, Jz, B, b, allow_negative_uniform_field=True)


@dataclass(frozen=True)
class ClosedSpectrum:
    """Closed-form eigensystem; column k of `states` is the k-th eigenvector.

    Energy/eigenvector pairing: (e1, |0,0>), (e2, |1,1>), (e3, e4, the two
    normalized inner-block states with amplitude ratios xi/J and zeta/J on
    |1,0> relative to |0,1>).
    """

    e1: float
    e2: float
    e3: float
    e4: float
    eta: float
    xi: float
    zeta: float
    lam: float
    states: np.ndarray = field(repr=False)

    @property
    def energies(self) -> np.ndarray:
        return np.array([self.e1, self.e2, self.e3, self.e4])


@dataclass(frozen=True)
class PureState:
    """Two-qubit pure state a|0,0> + b|0,1> + c|1,0> + d|1,1>."""

    a: complex
    b: complex
    c: complex
    d: complex

    def vector(self) -> np.ndarray:
        """Amplitudes in the standard basis order {|1,1>,|1,0>,|0,1>,|0,0>}."""
        return np.array([self.d, self.c, self.b, self.a], dtype=complex)

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "PureState":
        v = np.asarray(v, dtype=complex)
        return cls(a=v[3], b=v[2], c=v[1], d=v[0])

    def projector(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class GroundStateReport:
    phase: Phase
    ground_energy: float
    ground_concurrence: float  # NaN on the boundary (degenerate ground level)
    threshold_Jz: float
    threshold_B: float


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Hamiltonian matrix in the standard basis; real symmetric, traceless."""
    h = np.zeros((4, 4), dtype=complex)
    h[0, 0] = (p.Jz + 2.0 * p.B) / 2.0
    h[1, 1] = (-p.Jz + 2.0 * p.b) / 2.0
    h[2, 2] = (-p.Jz - 2.0 * p.b) / 2.0
    h[3, 3] = (p.Jz - 2.0 * p.B) / 2.0
    h[1, 2] = h[2, 1] = p.J
    return h


def closed_spectrum(p: ModelParams) -> ClosedSpectrum:
    """Closed-form energies and normalized eigenvectors; requires J != 0."""
    if p.J == 0.0:
        raise ZeroXYCouplingError("closed-form spectrum requires J != 0")
    eta = math.hypot(p.b, p.J)
    xi = p.b - eta
    zeta = p.b + eta
    lam = xi / p.J
    mu = zeta / p.J
    e1 = (p.Jz - 2.0 * p.B) / 2.0
    e2 = (p.Jz + 2.0 * p.B) / 2.0
    e3 = -p.Jz / 2.0 - eta
    e4 = -p.Jz / 2.0 + eta
    states = np.zeros((4, 4), dtype=complex)
    states[3, 0] = 1.0  # |0,0>
    states[0, 1] = 1.0  # |1,1>
    n3 = math.sqrt(1.0 + lam * lam)
    states[1, 2] = lam / n3
    states[2, 2] = 1.0 / n3
    n4 = math.sqrt(1.0 + mu * mu)
    states[1, 3] = mu / n4
    states[2, 3] = 1.0 / n4
    return ClosedSpectrum(e1, e2, e3, e4, eta, xi, zeta, lam, states)


def ground_state(p: ModelParams) -> GroundStateReport:
    """Ground-state phase, energy and concurrence.

    The level crossing happens at eta = B - Jz: below it the product state
    |0,0> wins (zero concurrence), above it the entangled inner-block state
    wins with concurrence 2|lam|/(1+lam^2).  Within BOUNDARY_TOL of the
    crossing the ground level is degenerate and the concurrence is reported
    as NaN.
    """
    spectrum = closed_spectrum(p)
    gap = spectrum.eta - (p.B - p.Jz)
    threshold_jz = p.B - spectrum.eta
    threshold_b = spectrum.eta + p.Jz
    lam = spectrum.lam
    if abs(gap) <= BOUNDARY_TOL:
        return GroundStateReport(
            Phase.BOUNDARY, spectrum.e3, math.nan, threshold_jz, threshold_b
        )
    if gap < 0.0:
        return GroundStateReport(
            Phase.DISENTANGLED, spectrum.e1, 0.0, threshold_jz, threshold_b
        )
    concurrence = 2.0 * abs(lam) / (1.0 + lam * lam)
    return GroundStateReport(
        Phase.ENTANGLED, spectrum.e3, concurrence, threshold_jz, threshold_b
    )


def pure_concurrence(state: PureState) -> float:
    """Concurrence 2|ad - bc| of a normalized pure state."""
    norm_sq = (
        abs(state.a) ** 2 + abs(state.b) ** 2 + abs(state.c) ** 2 + abs(state.d) ** 2
    )
    if abs(norm_sq - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(f"state norm^2 deviates from 1 by {norm_sq - 1.0:.3e}")
    return 2.0 * abs(state.a * state.d - state.b * state.c)


def xxx_ground_concurrence(delta: float) -> float:
    """Ground concurrence 1/sqrt(1+delta^2) of the isotropic (Jz = J) pair.

    delta = b/J.  This is the Jz = J special case of the general ground
    concurrence evaluated under the doubled parameterization (J, B, b) ->
    (2J, 2B, 2b) used by the fig2 preset.
    """
    return 1.0 / math.sqrt(1.0 + delta * delta)
