"""Seeded randomized cross-validation suites.

Every suite pits one computational route against an independent one (or
against an exact symmetry) over the same reproducible parameter draws.  The
draws come from a Philox counter-based generator so runs are reproducible
from the 64-bit seed alone; see the README for the exact draw recipe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eigen, hermiticity_defect
from .model import ModelParams, build_hamiltonian, closed_spectrum
from .thermal import (
    concurrence_values,
    gibbs_closed,
    gibbs_spectral,
    thermal_concurrence,
    wootters_concurrence,
    xstate_concurrence,
)

ORACLE_TOL = 1e-10
SYMMETRY_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-12
DENSITY_EIG_FLOOR = -1e-12

B_MONOTONIC_GRID = np.arange(0.0, 3.0 + 0.125, 0.25)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    samples: int
    max_error: float
    tolerance: float
    passed: bool
    worst: dict[str, float]
    details: dict[str, float] = field(default_factory=dict)


def draw_params(samples: int, seed: int) -> dict[str, np.ndarray]:
    """Reproducible parameter draws: |J| in [0.05,3] with random sign,
    Jz in [-3,3], B in [0,3], b in [-3,3], T in [0.05,5]."""
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random((samples, 6))
    return {
        "J": (0.05 + 2.95 * u[:, 0]) * np.where(u[:, 1] < 0.5, -1.0, 1.0),
        "Jz": -3.0 + 6.0 * u[:, 2],
        "B": 3.0 * u[:, 3],
        "b": -3.0 + 6.0 * u[:, 4],
        "T": 0.05 + 4.95 * u[:, 5],
    }


def _point(draws: dict[str, np.ndarray], i: int) -> dict[str, float]:
    return {name: float(draws[name][i]) for name in draws}


def _params(draws: dict[str, np.ndarray], i: int) -> ModelParams:
    return ModelParams(
        float(draws["J"][i]), float(draws["Jz"][i]),
        float(draws["B"][i]), float(draws["b"][i]),
    )


def _result(name, draws, errors, tol, details=None) -> SuiteResult:
    errors = np.asarray(errors, dtype=float)
    worst_index = int(np.argmax(errors))
    max_error = float(errors[worst_index])
    return SuiteResult(
        name=name,
        samples=len(errors),
        max_error=max_error,
        tolerance=tol,
        passed=bool(max_error <= tol),
        worst=_point(draws, worst_index),
        details=details or {},
    )


def suite_spectrum(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Closed-form energies vs Jacobi eigenvalues of the Hamiltonian."""
    n = len(draws["J"])
    errors = np.empty(n)
    for i in range(n):
        p = _params(draws, i)
        closed = np.sort(closed_spectrum(p).energies)
        numeric = hermitian_eigen(build_hamiltonian(p)).values
        errors[i] = np.max(np.abs(closed - numeric))
    return _result("spectrum-oracle", draws, errors, ORACLE_TOL)


def suite_gibbs(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Closed-form vs spectral Gibbs states, plus density-matrix validity."""
    n = len(draws["J"])
    errors = np.empty(n)
    worst_trace = 0.0
    worst_herm = 0.0
    min_eig = np.inf
    for i in range(n):
        p = _params(draws, i)
        T = float(draws["T"][i])
        closed, _ = gibbs_closed(p, T)
        spectral = gibbs_spectral(p, T)
        errors[i] = np.max(np.abs(closed - spectral))
        for rho in (closed, spectral):
            worst_trace = max(worst_trace, abs(complex(np.trace(rho)) - 1.0))
            worst_herm = max(worst_herm, hermiticity_defect(rho))
            min_eig = min(min_eig, float(hermitian_eigen(rho).values[0]))
    result = _result("gibbs-oracle", draws, errors, ORACLE_TOL)
    passed = result.passed and (
        worst_trace <= DENSITY_TRACE_TOL and min_eig >= DENSITY_EIG_FLOOR
    )
    return SuiteResult(
        result.name, result.samples, result.max_error, result.tolerance,
        passed, result.worst,
        details={
            "max_trace_defect": worst_trace,
            "max_hermiticity_defect": worst_herm,
            "min_eigenvalue": min_eig,
        },
    )


def suite_routes(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Generic Wootters vs X-state shortcut on the same Gibbs states."""
    n = len(draws["J"])
    errors = np.empty(n)
    for i in range(n):
        p = _params(draws, i)
        rho, _ = gibbs_closed(p, float(draws["T"][i]))
        errors[i] = abs(wootters_concurrence(rho).value - xstate_concurrence(rho).value)
    return _result("concurrence-routes", draws, errors, ORACLE_TOL)


def suite_b_symmetry(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Concurrence is even in the inhomogeneous field b."""
    n = len(draws["J"])
    errors = np.empty(n)
    for i in range(n):
        p = _params(draws, i)
        T = float(draws["T"][i])
        mirrored = ModelParams(p.J, p.Jz, p.B, -p.b)
        errors[i] = abs(
            thermal_concurrence(p, T).value - thermal_concurrence(mirrored, T).value
        )
    return _result("b-symmetry", draws, errors, SYMMETRY_TOL)


def suite_j_parity(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Concurrence is even in the xy coupling J."""
    n = len(draws["J"])
    errors = np.empty(n)
    for i in range(n):
        p = _params(draws, i)
        T = float(draws["T"][i])
        mirrored = ModelParams(-p.J, p.Jz, p.B, p.b)
        errors[i] = abs(
            thermal_concurrence(p, T).value - thermal_concurrence(mirrored, T).value
        )
    return _result("j-parity", draws, errors, SYMMETRY_TOL)


def suite_b_monotonic(draws: dict[str, np.ndarray]) -> SuiteResult:
    """Concurrence is nonincreasing in the uniform field B."""
    grid = B_MONOTONIC_GRID[np.newaxis, :]
    values = concurrence_values(
        draws["J"][:, np.newaxis],
        draws["Jz"][:, np.newaxis],
        grid,
        draws["b"][:, np.newaxis],
        draws["T"][:, np.newaxis],
    )
    increase = np.max(np.diff(values, axis=1), axis=1)
    return _result("b-monotonic-in-uniform-field", draws,
                   np.maximum(increase, 0.0), SYMMETRY_TOL)


ALL_SUITES = (
    suite_spectrum,
    suite_gibbs,
    suite_routes,
    suite_b_symmetry,
    suite_j_parity,
    suite_b_monotonic,
)


def run_suites(samples: int, seed: int) -> list[SuiteResult]:
    """Run every suite over one shared set of seeded draws."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    draws = draw_params(samples, seed)
    return [suite(draws) for suite in ALL_SUITES]
