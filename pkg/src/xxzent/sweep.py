"""Concurrence sweeps over parameter grids and critical-point finders.

Grids evaluate the vectorized X-state kernel, so full figure regeneration
takes milliseconds.  Critical points are zeros of the analytic sign function
g rather than "concurrence < eps" thresholds: g is monotone along every axis
searched here (decreasing in T where a root can exist, increasing in |b|),
so a bracket sign check plus bisection certifies existence and location.
Regimes where the concurrence only decays asymptotically report no finite
root instead of a fabricated one.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .model import ModelParams, ZeroXYCouplingError
from .thermal import (
    TEMPERATURE_GUARD,
    METHOD_XSTATE,
    _check_temperature,
    concurrence_values,
    log_sign_values,
)

PARAM_NAMES = ("J", "Jz", "B", "b", "T")

T_BRACKET = (1e-3, 50.0)
B_INHOMOGENEOUS_BRACKET = (0.0, 100.0)
BISECT_XTOL = 1e-12
ROOT_RESIDUAL_TOL = 1e-9
MAX_GRID_POINTS_2D = 1001


class InvalidAxisError(ValueError):
    """Malformed axis or inconsistent fixed/swept parameter split."""


class UnknownFigureError(ValueError):
    """Figure preset id outside 1..5."""


@dataclass(frozen=True)
class Axis:
    """Inclusive linear axis over one model parameter."""

    name: str
    start: float
    stop: float
    points: int

    def __post_init__(self) -> None:
        if self.name not in PARAM_NAMES:
            raise InvalidAxisError(
                f"axis name must be one of {PARAM_NAMES}, got {self.name!r}"
            )
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "stop", float(self.stop))
        object.__setattr__(self, "points", int(self.points))
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise InvalidAxisError("axis endpoints must be finite")
        if self.points < 1:
            raise InvalidAxisError(f"axis needs at least 1 point, got {self.points}")
        if self.points == 1:
            if self.start != self.stop:
                raise InvalidAxisError("a single-point axis requires start == stop")
        elif not self.start < self.stop:
            raise InvalidAxisError(
                f"axis requires start < stop, got [{self.start}, {self.stop}]"
            )
        if self.name == "T" and self.start < TEMPERATURE_GUARD:
            raise InvalidAxisError(f"T axis must start above {TEMPERATURE_GUARD:g}")
        if self.name == "B" and self.start < 0.0:
            raise InvalidAxisError("B axis must not go below 0")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepGrid:
    """Concurrence table over 1 or 2 axes; values shaped (points0[, points1])."""

    fixed: dict[str, float]
    axes: tuple[Axis, ...]
    values: np.ndarray = field(repr=False)
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CriticalPoint:
    """Certified root of the sign function, or a no-finite-root report."""

    axis: str
    location: float | None
    bracket: tuple[float, float] | None
    residual: float | None
    note: str = ""
    zero_temperature_boundary: float | None = None


def _validate_sweep(axes: Sequence[Axis], fixed: Mapping[str, float]) -> None:
    if not 1 <= len(axes) <= 2:
        raise InvalidAxisError(f"sweep takes 1 or 2 axes, got {len(axes)}")
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise InvalidAxisError(f"swept axes must be distinct, got {names}")
    if len(axes) == 2 and any(a.points > MAX_GRID_POINTS_2D for a in axes):
        raise InvalidAxisError(
            f"2-axis grids are capped at {MAX_GRID_POINTS_2D} points per axis"
        )
    expected = set(PARAM_NAMES) - set(names)
    if set(fixed) != expected:
        raise InvalidAxisError(
            f"fixed parameters must be exactly {sorted(expected)}, got {sorted(fixed)}"
        )
    for name, value in fixed.items():
        if not np.isfinite(value):
            raise InvalidAxisError(f"fixed {name} must be finite, got {value!r}")
    if "B" in fixed and fixed["B"] < 0.0:
        raise InvalidAxisError("fixed B must be >= 0")
    if "T" in fixed:
        _check_temperature(fixed["T"])


def axis_columns(axes: Sequence[Axis]) -> list[np.ndarray]:
    """Axis-major (first axis slowest) flattened coordinate columns."""
    if len(axes) == 1:
        return [axes[0].values()]
    mesh = np.meshgrid(*[a.values() for a in axes], indexing="ij")
    return [m.ravel() for m in mesh]


def sweep(axes: Sequence[Axis], fixed: Mapping[str, float]) -> SweepGrid:
    """Evaluate thermal concurrence on the grid spanned by `axes`.

    `fixed` must supply exactly the parameters not swept.  Output is
    deterministic and independent of evaluation order.
    """
    axes = tuple(axes)
    _validate_sweep(axes, fixed)
    params: dict[str, object] = {k: float(v) for k, v in fixed.items()}
    for axis, column in zip(axes, axis_columns(axes)):
        params[axis.name] = column
    flat = concurrence_values(
        params["J"], params["Jz"], params["B"], params["b"], params["T"]
    )
    shape = tuple(a.points for a in axes)
    return SweepGrid(
        fixed={k: float(v) for k, v in fixed.items()},
        axes=axes,
        values=np.asarray(flat, dtype=float).reshape(shape),
        metadata={"method": METHOD_XSTATE, "tolerances": {"route_agreement": 1e-10}},
    )


def _bisect(fun, lo: float, hi: float, flo: float, fhi: float) -> float:
    """Bisection for a sign change certified by the caller."""
    for _ in range(200):
        if hi - lo <= BISECT_XTOL:
            break
        mid = 0.5 * (lo + hi)
        fm = fun(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def critical_temperature(p: ModelParams) -> CriticalPoint:
    """Temperature above which the thermal concurrence vanishes.

    Bisection on the sign function over T in T_BRACKET; g is strictly
    decreasing in T wherever it can be positive, so a single sign check at
    the bracket ends decides existence.  Independent of B.
    """
    if p.J == 0.0:
        raise ZeroXYCouplingError("critical temperature requires J != 0")

    def h(T: float) -> float:
        return float(log_sign_values(p.J, p.Jz, p.b, T))

    lo, hi = T_BRACKET
    hlo, hhi = h(lo), h(hi)
    if hlo <= 0.0 and hhi <= 0.0:
        return CriticalPoint(
            "T", None, T_BRACKET, None,
            note="sign function g <= 0 across the bracket: no thermal "
            "entanglement at any temperature in it",
        )
    if hlo > 0.0 and hhi > 0.0:
        return CriticalPoint(
            "T", None, T_BRACKET, None,
            note="sign function g > 0 across the bracket: critical "
            "temperature lies above the bracket if it exists",
        )
    root = _bisect(h, lo, hi, hlo, hhi)
    return CriticalPoint("T", root, T_BRACKET, float(np.expm1(h(root))))


def critical_field(p: ModelParams, T: float, axis: str) -> CriticalPoint:
    """Critical inhomogeneous field (axis="b") or uniform field (axis="B").

    For axis="b" the sign function is increasing in b >= 0, so bisection
    over B_INHOMOGENEOUS_BRACKET finds the unique root when the bracket ends
    disagree in sign (b-symmetry gives the mirror root at -location).

    For axis="B" the sign of the concurrence does not depend on B at all, so
    no finite-temperature root exists; the report carries the zero-temperature
    phase boundary B^f = eta + Jz instead.
    """
    if p.J == 0.0:
        raise ZeroXYCouplingError("critical field requires J != 0")
    T = _check_temperature(T)
    if axis == "B":
        eta = float(np.hypot(p.b, p.J))
        g = float(np.expm1(log_sign_values(p.J, p.Jz, p.b, T)))
        if g > 0.0:
            note = (
                "sign of the concurrence is independent of B, so it stays "
                "positive for every B >= 0 at this temperature; the T -> 0 "
                "entanglement boundary is B^f = eta + Jz"
            )
        else:
            note = (
                "concurrence vanishes identically at this temperature for "
                "every B; the T -> 0 entanglement boundary is B^f = eta + Jz"
            )
        return CriticalPoint(
            "B", None, None, None, note=note, zero_temperature_boundary=eta + p.Jz
        )
    if axis != "b":
        raise InvalidAxisError(f"critical field axis must be 'b' or 'B', got {axis!r}")

    def h(b: float) -> float:
        return float(log_sign_values(p.J, p.Jz, b, T))

    lo, hi = B_INHOMOGENEOUS_BRACKET
    hlo, hhi = h(lo), h(hi)
    if hlo > 0.0 and hhi > 0.0:
        return CriticalPoint(
            "b", None, B_INHOMOGENEOUS_BRACKET, None,
            note="sign function g > 0 for every b in the bracket: the "
            "concurrence decays only asymptotically with |b| and has no "
            "finite critical inhomogeneous field here",
        )
    if hlo <= 0.0 and hhi <= 0.0:
        return CriticalPoint(
            "b", None, B_INHOMOGENEOUS_BRACKET, None,
            note="sign function g <= 0 across the bracket: no entanglement "
            "onset within it",
        )
    root = _bisect(h, lo, hi, hlo, hhi)
    return CriticalPoint(
        "b", root, B_INHOMOGENEOUS_BRACKET, float(np.expm1(h(root))),
        note="b-symmetric mirror root at the negated location",
    )


def _labeled(grid: SweepGrid, label: str, description: str) -> SweepGrid:
    metadata = dict(grid.metadata)
    metadata["label"] = label
    metadata["description"] = description
    return dataclasses.replace(grid, metadata=metadata)


def figure_data(figure: int, points: int = 201) -> list[SweepGrid]:
    """Preset sweep grids fig1..fig5 (see README for the parameter sets)."""
    if figure == 1:
        temps = Axis("T", 0.4, 1.0, 2)
        return [
            _labeled(
                sweep([Axis("b", -6.0, 6.0, points), temps],
                      {"J": 1.0, "Jz": 0.0, "B": 0.0}),
                "fig1_inhomogeneous",
                "concurrence vs b at J=1, Jz=0, B=0 for T in {0.4, 1.0}",
            ),
            _labeled(
                sweep([Axis("B", 0.0, 6.0, points), temps],
                      {"J": 1.0, "Jz": 0.0, "b": 0.0}),
                "fig1_uniform",
                "concurrence vs B at J=1, Jz=0, b=0 for T in {0.4, 1.0}",
            ),
        ]
    if figure == 2:
        axes = (Axis("B", 0.0, 1.0, points), Axis("T", 0.01, 0.6, points))
        columns = axis_columns(axes)
        flat = concurrence_values(-2.0, -2.0, 2.0 * columns[0], 0.916, columns[1])
        grid = SweepGrid(
            fixed={"J": -1.0, "Jz": -1.0, "b": 0.458},
            axes=axes,
            values=np.asarray(flat, dtype=float).reshape(points, points),
            metadata={
                "method": METHOD_XSTATE,
                "tolerances": {"route_agreement": 1e-10},
                "note": "isotropic Jz=J preset evaluated at doubled parameters "
                "(J,Jz,B,b) -> (2J,2Jz,2B,2b); axes are in the undoubled units",
            },
        )
        return [
            _labeled(grid, "fig2", "concurrence vs (B, T) at Jz=J=-1, b=0.458")
        ]
    if figure == 3:
        return [
            _labeled(
                sweep(
                    [Axis("b", -6.0, 6.0, points), Axis("T", 0.1, 2.1, points)],
                    {"J": 1.0, "Jz": jz, "B": 0.0},
                ),
                f"fig3_jz_{_slug(jz)}",
                f"concurrence vs (b, T) at J=1, B=0, Jz={jz}",
            )
            for jz in (0.0, 0.9)
        ]
    if figure == 4:
        return [
            _labeled(
                sweep([Axis("b", -3.0, 3.0, points)],
                      {"J": 1.0, "Jz": jz, "B": 0.8, "T": 0.6}),
                f"fig4_jz_{_slug(jz)}",
                f"concurrence vs b at J=1, B=0.8, T=0.6, Jz={jz}",
            )
            for jz in (0.0, 0.4, 0.9)
        ]
    if figure == 5:
        return [
            _labeled(
                sweep(
                    [Axis("T", 0.01, 2.0, points), Axis("B", 0.0, 3.0, points)],
                    {"J": 1.0, "Jz": 0.4, "b": b},
                ),
                f"fig5_b_{_slug(b)}",
                f"concurrence vs (T, B) at J=1, Jz=0.4, b={b}",
            )
            for b in (0.0, 0.8)
        ]
    raise UnknownFigureError(f"figure id must be 1..5, got {figure!r}")


def _slug(x: float) -> str:
    return f"{x:g}".replace(".", "p").replace("-", "m")
