"""Gibbs states of the spin pair and their concurrence.

Two independent density-matrix routes (closed form vs spectral decomposition
through the Jacobi solver) and two concurrence routes (generic Wootters vs
the X-state shortcut) cross-validate each other.  A scalar sign function g
decides concurrence positivity analytically and drives the root finders:

    |rho_23| * Z = exp(Jz/2T) * |J| * sinh(eta/T) / eta
    sqrt(rho_11 rho_44) * Z = exp(-Jz/2T)        (since E1 + E2 = Jz)

so concurrence > 0  iff  g = exp(Jz/T) * (|J|/eta) * sinh(eta/T) - 1 > 0,
independent of the uniform field B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .linalg import (
    SPIN_FLIP,
    NotPSDError,
    adjoint,
    hermitian_eigen,
    hermiticity_defect,
    psd_sqrt,
    singular_values,
)
from .model import ModelParams, ZeroXYCouplingError, build_hamiltonian, closed_spectrum

DENSITY_TOL = 1e-12
XSTATE_TOL = 1e-12
TEMPERATURE_GUARD = 1e-8
EXPONENT_GUARD = 700.0

METHOD_WOOTTERS = "generic-wootters"
METHOD_XSTATE = "xstate-shortcut"
METHOD_SIGN = "sign-function"


class NonPositiveTemperatureError(ValueError):
    """Gibbs construction requires T > 0."""


class BoltzmannOverflowError(OverflowError):
    """Boltzmann exponents exceed the overflow guard."""


class InvalidDensityMatrixError(ValueError):
    """Input fails the Hermitian / unit-trace / PSD density-matrix checks."""


class NotXStateError(ValueError):
    """Matrix entries outside the X-state sparsity pattern."""


@dataclass(frozen=True)
class GibbsDiagnostics:
    """Partition function and the closed-form entry building blocks."""

    Z: float
    m: float  # cosh(eta/T)
    n: float  # b * sinh(eta/T) / eta
    s: float  # exp(Jz/2T) * J * sinh(eta/T) / eta


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    wootters_roots: np.ndarray  # the four square-root eigenvalues, descending
    method: str
    sign_diagnostic: float | None = None


def _check_temperature(T: float) -> float:
    T = float(T)
    if not T > 0.0:
        raise NonPositiveTemperatureError(f"temperature must be > 0, got {T!r}")
    if T < TEMPERATURE_GUARD:
        raise BoltzmannOverflowError(
            f"temperature {T!r} below the overflow guard {TEMPERATURE_GUARD:g}"
        )
    return T


def _check_exponents(energies: np.ndarray, T: float) -> None:
    worst = float(np.max(np.abs(energies))) / T
    if worst > EXPONENT_GUARD:
        raise BoltzmannOverflowError(
            f"|E|/T = {worst:.3g} exceeds the exponent guard {EXPONENT_GUARD:g}"
        )


def _weights(J, Jz, B, b, T):
    """Shifted Boltzmann weights exp(-(E_k - E_min)/T); broadcasts.

    Weight order follows the closed-form energy labels: (w1, w2) for the
    outer product states, (w3, w4) for the inner pair with E3 <= E4.
    """
    eta = np.hypot(b, J)
    e1 = 0.5 * (Jz - 2.0 * B)
    e2 = 0.5 * (Jz + 2.0 * B)
    e3 = -0.5 * Jz - eta
    e4 = -0.5 * Jz + eta
    emin = np.minimum(np.minimum(e1, e2), e3)
    w1 = np.exp(-(e1 - emin) / T)
    w2 = np.exp(-(e2 - emin) / T)
    w3 = np.exp(-(e3 - emin) / T)
    w4 = np.exp(-(e4 - emin) / T)
    return eta, w1, w2, w3, w4


def _coherence(J, eta, w3, w4):
    """|rho_23| times the shifted partition sum; zero at eta = 0 (J = b = 0)."""
    safe = np.where(eta > 0.0, eta, 1.0)
    return np.where(eta > 0.0, np.abs(J) * (w3 - w4) / (2.0 * safe), 0.0)


def concurrence_values(J, Jz, B, b, T) -> np.ndarray:
    """Thermal concurrence via the X-state closed form; broadcasts over arrays.

    Total for any finite parameters with T > 0 (J = 0 gives a diagonal Gibbs
    state and hence zero).  This is the kernel behind grid sweeps.
    """
    eta, w1, w2, w3, w4 = _weights(J, Jz, B, b, T)
    zs = w1 + w2 + w3 + w4
    coh = _coherence(J, eta, w3, w4)
    corner = np.sqrt(w1 * w2)
    return np.minimum(np.maximum(0.0, 2.0 * (coh - corner) / zs), 1.0)


def log_sign_values(J, Jz, b, T) -> np.ndarray:
    """log of (g+1): Jz/T + log(|J|/eta) + log(sinh(eta/T)); broadcasts.

    Positive iff thermal concurrence is positive.  Computed in log form so
    the root finders can bracket without overflow; requires J != 0.
    """
    eta = np.hypot(b, J)
    x = eta / T
    log_sinh = x + np.log1p(-np.exp(-2.0 * x)) - math.log(2.0)
    return Jz / T + np.log(np.abs(J) / eta) + log_sinh


def concurrence_sign(p: ModelParams, T: float) -> float:
    """Sign function g = exp(Jz/T) * (|J|/eta) * sinh(eta/T) - 1.

    Thermal concurrence is positive iff g > 0; g does not depend on B.
    """
    if p.J == 0.0:
        raise ZeroXYCouplingError("sign function requires J != 0")
    T = _check_temperature(T)
    with np.errstate(over="ignore"):  # g = inf is a valid positive sign
        return float(np.expm1(log_sign_values(p.J, p.Jz, p.b, T)))


def gibbs_closed(p: ModelParams, T: float) -> tuple[np.ndarray, GibbsDiagnostics]:
    """Closed-form Gibbs state exp(-H/T)/Z and its diagnostics.

    Entries are assembled from shifted Boltzmann weights so the matrix never
    overflows; Z is always the energy trace sum(exp(-E_k/T)), which is what
    unit trace requires.
    """
    if p.J == 0.0:
        raise ZeroXYCouplingError("closed-form Gibbs state requires J != 0")
    T = _check_temperature(T)
    spec = closed_spectrum(p)
    _check_exponents(spec.energies, T)
    eta, w1, w2, w3, w4 = _weights(p.J, p.Jz, p.B, p.b, T)
    zs = w1 + w2 + w3 + w4
    half_sum = 0.5 * (w3 + w4)
    half_diff = 0.5 * (w3 - w4)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = w2 / zs
    rho[1, 1] = (half_sum - (p.b / eta) * half_diff) / zs
    rho[2, 2] = (half_sum + (p.b / eta) * half_diff) / zs
    rho[3, 3] = w1 / zs
    rho[1, 2] = rho[2, 1] = -(p.J / eta) * half_diff / zs
    x = eta / T
    emin = float(np.min(spec.energies))
    diagnostics = GibbsDiagnostics(
        Z=float(zs * math.exp(-emin / T)),
        m=math.cosh(x),
        n=p.b * math.sinh(x) / eta,
        s=float(p.J * (math.exp(-spec.e3 / T) - math.exp(-spec.e4 / T)) / (2.0 * eta)),
    )
    return rho, diagnostics


def gibbs_spectral(p: ModelParams, T: float) -> np.ndarray:
    """Gibbs state from the Jacobi eigensystem of the Hamiltonian.

    Independent of the closed form; accepts J = 0.
    """
    T = _check_temperature(T)
    values, vectors = hermitian_eigen(build_hamiltonian(p))
    _check_exponents(values, T)
    w = np.exp(-(values - values[0]) / T)
    rho = (vectors * w) @ vectors.conj().T / w.sum()
    return (rho + adjoint(rho)) / 2.0


def _check_density_matrix(rho: np.ndarray) -> None:
    defect = hermiticity_defect(rho)
    if defect > DENSITY_TOL:
        raise InvalidDensityMatrixError(f"not Hermitian: max asymmetry {defect:.3e}")
    trace_defect = abs(complex(np.trace(rho)) - 1.0)
    if trace_defect > DENSITY_TOL:
        raise InvalidDensityMatrixError(f"trace deviates from 1 by {trace_defect:.3e}")


def wootters_concurrence(rho: np.ndarray) -> ConcurrenceResult:
    """Concurrence max(0, 2*max(l_i) - sum(l_i)) for any two-qubit state.

    The l_i are the square roots of the eigenvalues of rho @ rho_tilde with
    rho_tilde = S conj(rho) S.  They are computed here as the singular
    values of the factor A = sqrt(rho) S conj(sqrt(rho)), which satisfies
    A adj(A) = sqrt(rho) rho_tilde sqrt(rho): never forming that product
    keeps tiny roots at full absolute accuracy (squaring would floor them at
    the square root of machine roundoff).  For real states A is Hermitian
    and the Jacobi eigensolver suffices; otherwise a one-sided Jacobi SVD
    handles it.
    """
    rho = np.asarray(rho, dtype=complex)
    _check_density_matrix(rho)
    try:
        root = psd_sqrt(rho)
    except NotPSDError as exc:
        raise InvalidDensityMatrixError(str(exc)) from exc
    factor = root @ SPIN_FLIP @ root.conj()
    if hermiticity_defect(factor) <= DENSITY_TOL:
        roots = np.sort(np.abs(hermitian_eigen(factor).values))[::-1]
    else:
        roots = singular_values(factor)
    value = min(max(0.0, 2.0 * roots[0] - roots.sum()), 1.0)
    return ConcurrenceResult(float(value), roots, METHOD_WOOTTERS)


def xstate_concurrence(rho: np.ndarray) -> ConcurrenceResult:
    """Closed-form concurrence 2*max(0, |rho_23| - sqrt(rho_11 rho_44)).

    Valid for states whose only nonzero entries are the diagonal and the
    central (|1,0>, |0,1>) coherence; raises NotXStateError otherwise.
    """
    rho = np.asarray(rho, dtype=complex)
    allowed = np.zeros((4, 4), dtype=bool)
    allowed[np.diag_indices(4)] = True
    allowed[1, 2] = allowed[2, 1] = True
    worst = float(np.max(np.abs(np.where(allowed, 0.0, rho))))
    if worst > XSTATE_TOL:
        raise NotXStateError(
            f"entry outside the X pattern has magnitude {worst:.3e} > {XSTATE_TOL:g}"
        )
    diag = np.clip(rho.diagonal().real, 0.0, None)
    coh = abs(rho[1, 2])
    corner = math.sqrt(diag[0] * diag[3])
    inner = math.sqrt(diag[1] * diag[2])
    roots = np.sort(np.array([inner + coh, max(inner - coh, 0.0), corner, corner]))[::-1]
    value = min(max(0.0, 2.0 * (coh - corner)), 1.0)
    return ConcurrenceResult(float(value), roots, METHOD_XSTATE)


def thermal_concurrence(p: ModelParams, T: float) -> ConcurrenceResult:
    """Concurrence of the Gibbs state at temperature T.

    The Gibbs state of this model is always an X state, so the shortcut
    route applies; the result carries the sign diagnostic g (reported as -1
    in the diagonal J = 0 limit, where the concurrence is identically zero).
    """
    T = _check_temperature(T)
    eta = float(np.hypot(p.b, p.J))
    energies = np.array(
        [
            0.5 * (p.Jz - 2.0 * p.B),
            0.5 * (p.Jz + 2.0 * p.B),
            -0.5 * p.Jz - eta,
            -0.5 * p.Jz + eta,
        ]
    )
    _check_exponents(energies, T)
    if p.J == 0.0:
        rho = gibbs_spectral(p, T)
        result = xstate_concurrence(rho)
        return replace(result, sign_diagnostic=-1.0)
    _, w1, w2, w3, w4 = _weights(p.J, p.Jz, p.B, p.b, T)
    zs = w1 + w2 + w3 + w4
    coh = float(_coherence(p.J, eta, w3, w4))
    corner = math.sqrt(w1 * w2)
    inner = math.sqrt(w3 * w4 + coh * coh)
    roots = np.sort(np.array([inner + coh, max(inner - coh, 0.0), corner, corner]))[::-1] / zs
    value = min(max(0.0, 2.0 * (coh - corner) / zs), 1.0)
    with np.errstate(over="ignore"):
        g = float(np.expm1(log_sign_values(p.J, p.Jz, p.b, T)))
    return ConcurrenceResult(float(value), roots, METHOD_XSTATE, sign_diagnostic=g)
