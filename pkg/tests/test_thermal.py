import math

import numpy as np
import pytest

from xxzent.linalg import hermitian_eigen, hermiticity_defect
from xxzent.model import ModelParams, PureState, ZeroXYCouplingError, pure_concurrence
from xxzent.thermal import (
    BoltzmannOverflowError,
    InvalidDensityMatrixError,
    METHOD_XSTATE,
    NonPositiveTemperatureError,
    NotXStateError,
    concurrence_sign,
    concurrence_values,
    gibbs_closed,
    gibbs_spectral,
    log_sign_values,
    thermal_concurrence,
    wootters_concurrence,
    xstate_concurrence,
)

# frozen reference: 2*max(0, sinh(1) - 1) / (2 + 2*cosh(1))
C_REFERENCE = 2 * (math.sinh(1) - 1) / (2 + 2 * math.cosh(1))
Z_REFERENCE = 2 + 2 * math.cosh(1)
P_REFERENCE = ModelParams(1.0, 0.0, 0.0, 0.0)


def random_draw(rng, t_range=(0.05, 5.0)):
    p = ModelParams(
        rng.choice([-1.0, 1.0]) * rng.uniform(0.05, 3),
        rng.uniform(-3, 3), rng.uniform(0, 3), rng.uniform(-3, 3),
    )
    return p, rng.uniform(*t_range)


def bell_projector():
    s = 1 / math.sqrt(2)
    v = np.array([0.0, -s, s, 0.0], dtype=complex)
    return np.outer(v, v.conj())


class TestGibbsClosed:
    def test_reference_point(self):
        rho, diag = gibbs_closed(P_REFERENCE, 1.0)
        assert diag.Z == pytest.approx(Z_REFERENCE, abs=1e-13)
        expected = np.diag([1.0, math.cosh(1), math.cosh(1), 1.0]).astype(complex)
        expected[1, 2] = expected[2, 1] = -math.sinh(1)
        assert np.max(np.abs(rho - expected / Z_REFERENCE)) <= 1e-14
        assert diag.m == pytest.approx(math.cosh(1), abs=1e-15)
        assert diag.n == 0.0
        assert diag.s == pytest.approx(math.sinh(1), abs=1e-15)

    def test_infinite_temperature_limit(self):
        rho, _ = gibbs_closed(ModelParams(1.0, 0.4, 0.5, 0.2), 1e6)
        assert np.max(np.abs(rho.diagonal() - 0.25)) <= 1e-5
        assert abs(rho[1, 2]) <= 1e-5

    def test_commutes_with_hamiltonian(self):
        from xxzent.model import build_hamiltonian

        rng = np.random.default_rng(301)
        for _ in range(300):
            p, T = random_draw(rng)
            rho, _ = gibbs_closed(p, T)
            h = build_hamiltonian(p)
            assert np.max(np.abs(rho @ h - h @ rho)) <= 1e-12

    def test_unit_trace_and_psd(self):
        rng = np.random.default_rng(302)
        for _ in range(300):
            p, T = random_draw(rng)
            rho, diag = gibbs_closed(p, T)
            assert abs(np.trace(rho) - 1.0) <= 1e-12
            assert hermiticity_defect(rho) <= 1e-12
            assert hermitian_eigen(rho).values[0] >= -1e-12
            assert diag.Z > 0
            assert diag.m >= 1.0
            eta = float(np.hypot(p.b, p.J))
            assert abs(diag.n) <= math.sinh(eta / T) * (1 + 1e-12)

    def test_rejects_bad_temperature(self):
        with pytest.raises(NonPositiveTemperatureError):
            gibbs_closed(P_REFERENCE, 0.0)
        with pytest.raises(NonPositiveTemperatureError):
            gibbs_closed(P_REFERENCE, -1.0)
        with pytest.raises(BoltzmannOverflowError):
            gibbs_closed(P_REFERENCE, 1e-9)

    def test_exponent_guard(self):
        with pytest.raises(BoltzmannOverflowError):
            gibbs_closed(ModelParams(3.0, 3.0, 3.0, 3.0), 0.002)

    def test_rejects_zero_coupling(self):
        with pytest.raises(ZeroXYCouplingError):
            gibbs_closed(ModelParams(0.0, 1.0, 0.0, 0.0), 1.0)


class TestGibbsSpectral:
    def test_matches_closed_form(self):
        rng = np.random.default_rng(303)
        for _ in range(2000):
            p, T = random_draw(rng)
            closed, _ = gibbs_closed(p, T)
            spectral = gibbs_spectral(p, T)
            assert np.max(np.abs(closed - spectral)) <= 1e-10

    def test_diagonal_hamiltonian(self):
        rho = gibbs_spectral(ModelParams(0.0, 1.0, 0.0, 0.0), 1.0)
        off = rho - np.diag(rho.diagonal())
        assert np.max(np.abs(off)) == 0.0
        assert abs(np.trace(rho) - 1.0) <= 1e-12

    def test_low_temperature_projector(self):
        from xxzent.model import closed_spectrum

        spec = closed_spectrum(P_REFERENCE)
        ground = np.outer(spec.states[:, 2], spec.states[:, 2].conj())
        rho = gibbs_spectral(P_REFERENCE, 0.05)
        assert np.max(np.abs(rho - ground)) <= 1e-8


class TestWootters:
    def test_maximally_mixed(self):
        result = wootters_concurrence(np.eye(4, dtype=complex) / 4)
        assert result.value == 0.0
        assert np.allclose(result.wootters_roots, 0.25, atol=1e-12)

    def test_bell_projector(self):
        result = wootters_concurrence(bell_projector())
        assert result.value == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(result.wootters_roots, [1.0, 0.0, 0.0, 0.0], atol=1e-7)

    def test_pure_state_consistency(self):
        rng = np.random.default_rng(304)
        for _ in range(1000):
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            v /= np.linalg.norm(v)
            state = PureState.from_vector(v)
            result = wootters_concurrence(state.projector())
            assert abs(result.value - pure_concurrence(state)) <= 1e-10

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidDensityMatrixError):
            wootters_concurrence(np.eye(4, dtype=complex))

    def test_rejects_non_hermitian(self):
        rho = np.eye(4, dtype=complex) / 4
        rho[0, 1] = 1e-3
        with pytest.raises(InvalidDensityMatrixError):
            wootters_concurrence(rho)

    def test_rejects_negative_state(self):
        rho = np.diag([0.6, 0.5, 0.0, -0.1]).astype(complex)
        with pytest.raises(InvalidDensityMatrixError):
            wootters_concurrence(rho)


class TestXState:
    def test_maximally_mixed(self):
        assert xstate_concurrence(np.eye(4, dtype=complex) / 4).value == 0.0

    def test_bell_pattern(self):
        assert xstate_concurrence(bell_projector()).value == pytest.approx(1.0, abs=1e-15)

    def test_reference_gibbs(self):
        rho, _ = gibbs_closed(P_REFERENCE, 1.0)
        assert xstate_concurrence(rho).value == pytest.approx(C_REFERENCE, abs=1e-13)

    def test_rejects_corner_entries(self):
        rho = np.eye(4, dtype=complex) / 4
        rho[0, 3] = rho[3, 0] = 0.1
        with pytest.raises(NotXStateError):
            xstate_concurrence(rho)

    def test_agrees_with_wootters(self):
        rng = np.random.default_rng(305)
        for _ in range(2000):
            p, T = random_draw(rng)
            rho, _ = gibbs_closed(p, T)
            a = xstate_concurrence(rho)
            b = wootters_concurrence(rho)
            assert abs(a.value - b.value) <= 1e-10
            assert np.max(np.abs(a.wootters_roots - b.wootters_roots)) <= 1e-8


class TestThermalConcurrence:
    def test_reference_point(self):
        result = thermal_concurrence(P_REFERENCE, 1.0)
        assert result.value == pytest.approx(C_REFERENCE, abs=1e-13)
        assert result.method == METHOD_XSTATE

    def test_vanishes_above_critical_temperature(self):
        result = thermal_concurrence(P_REFERENCE, 2.0)
        assert result.value == 0.0
        assert result.sign_diagnostic < 0.0

    def test_sign_diagnostic_matches_sign_function(self):
        rng = np.random.default_rng(306)
        for _ in range(300):
            p, T = random_draw(rng)
            result = thermal_concurrence(p, T)
            assert result.sign_diagnostic == concurrence_sign(p, T)

    def test_positivity_iff_sign_positive(self):
        rng = np.random.default_rng(307)
        for _ in range(2000):
            p, T = random_draw(rng)
            result = thermal_concurrence(p, T)
            g = result.sign_diagnostic
            if abs(g) <= 1e-12:
                continue
            assert (result.value > 0.0) == (g > 0.0)

    def test_sign_invariant_in_uniform_field(self):
        signs = set()
        for B in (0.0, 1.0, 2.0, 5.0):
            value = thermal_concurrence(ModelParams(1.0, 0.4, B, 0.8), 0.6).value
            signs.add(value > 0.0)
        assert len(signs) == 1

    def test_matches_vectorized_kernel(self):
        rng = np.random.default_rng(308)
        for _ in range(500):
            p, T = random_draw(rng)
            scalar = thermal_concurrence(p, T).value
            kernel = float(concurrence_values(p.J, p.Jz, p.B, p.b, T))
            assert scalar == pytest.approx(kernel, rel=1e-12, abs=1e-15)

    def test_accepts_zero_coupling(self):
        result = thermal_concurrence(ModelParams(0.0, 1.0, 0.5, 0.3), 1.0)
        assert result.value == 0.0
        assert result.sign_diagnostic == -1.0

    def test_roots_match_wootters(self):
        rng = np.random.default_rng(309)
        for _ in range(300):
            p, T = random_draw(rng, t_range=(0.3, 5.0))
            direct = thermal_concurrence(p, T)
            rho, _ = gibbs_closed(p, T)
            generic = wootters_concurrence(rho)
            assert np.max(np.abs(direct.wootters_roots - generic.wootters_roots)) <= 1e-10

    def test_jz_enhancement(self):
        for b in np.linspace(-3, 3, 7):
            for T in np.linspace(0.1, 3, 7):
                values = [
                    thermal_concurrence(ModelParams(1.0, jz, 0.0, b), T).value
                    for jz in (0.0, 0.3, 0.6, 0.9)
                ]
                assert np.all(np.diff(values) >= -1e-12)

    def test_zero_temperature_limit(self):
        from xxzent.model import ground_state

        for p in (
            ModelParams(1.0, 0.4, 0.5, 0.3),
            ModelParams(1.0, 0.0, 2.0, 0.0),
            ModelParams(-1.5, -0.2, 0.3, 0.7),
            ModelParams(2.0, 1.0, 2.0, -1.2),
        ):
            report = ground_state(p)
            thermal = thermal_concurrence(p, 0.01).value
            assert abs(thermal - report.ground_concurrence) <= 1e-3

    def test_range_and_state_validity(self):
        rng = np.random.default_rng(310)
        for _ in range(500):
            p, T = random_draw(rng)
            value = thermal_concurrence(p, T).value
            assert 0.0 <= value <= 1.0


class TestConcurrenceSign:
    def test_root_of_reference_model(self):
        T = 1 / math.log(1 + math.sqrt(2))
        assert abs(concurrence_sign(P_REFERENCE, T)) <= 1e-10

    def test_direct_value(self):
        assert concurrence_sign(P_REFERENCE, 0.5) == pytest.approx(
            math.sinh(2) - 1, abs=1e-12
        )

    def test_independent_of_uniform_field(self):
        a = concurrence_sign(ModelParams(1.0, 0.4, 0.0, 0.8), 0.7)
        b = concurrence_sign(ModelParams(1.0, 0.4, 3.0, 0.8), 0.7)
        assert a == b

    def test_rejects_zero_coupling(self):
        with pytest.raises(ZeroXYCouplingError):
            concurrence_sign(ModelParams(0.0, 1.0, 0.0, 0.0), 1.0)

    def test_rejects_bad_temperature(self):
        with pytest.raises(NonPositiveTemperatureError):
            concurrence_sign(P_REFERENCE, -0.5)

    def test_log_form_is_overflow_safe(self):
        h = float(log_sign_values(3.0, 3.0, 3.0, 1e-3))
        assert math.isfinite(h) and h > 0


class TestSymmetries:
    def test_even_in_inhomogeneous_field(self):
        rng = np.random.default_rng(311)
        for _ in range(500):
            p, T = random_draw(rng)
            mirrored = ModelParams(p.J, p.Jz, p.B, -p.b)
            assert (
                thermal_concurrence(p, T).value
                == thermal_concurrence(mirrored, T).value
            )

    def test_even_in_coupling(self):
        rng = np.random.default_rng(312)
        for _ in range(500):
            p, T = random_draw(rng)
            mirrored = ModelParams(-p.J, p.Jz, p.B, p.b)
            assert (
                thermal_concurrence(p, T).value
                == thermal_concurrence(mirrored, T).value
            )

    def test_nonincreasing_in_uniform_field(self):
        rng = np.random.default_rng(313)
        grid = np.arange(0.0, 3.25, 0.25)
        for _ in range(300):
            p, T = random_draw(rng)
            values = concurrence_values(p.J, p.Jz, grid, p.b, T)
            assert np.all(np.diff(values) <= 1e-12)
