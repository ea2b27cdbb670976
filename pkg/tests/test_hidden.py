import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import p_values, phases, pz_pairs, unit_floats
from nonortho.hidden import (
    IDEAL_P,
    DecompositionParams,
    DegenerateDecompositionError,
    decompose,
    ensemble_nonortho,
    hidden_overlap,
    ideal_rho,
    max_ensemble,
    max_ensemble_branch,
    max_pair_z,
    pair_nonortho,
    z_of_alpha,
)
from nonortho.measures import n0
from nonortho.qstate import (
    KET_DOWN,
    KET_UP,
    DomainError,
    ValidationError,
    density_from_p,
    overlap2,
)

# z solving z(1-z) = 2 p (1-p) at p = 0.9, frozen from the exact quadratic.
ZSTAR_09 = 0.7645751311064591
ZSTAR_086 = 0.5959166304662544


@st.composite
def canonical_params(draw):
    a_sq = draw(st.floats(min_value=0.5, max_value=1.0))
    return DecompositionParams.from_weights(
        a_sq, draw(phases), draw(phases))


class TestParams:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError):
            DecompositionParams(1.0, 1.0)

    def test_rejects_small_alpha(self):
        with pytest.raises(DomainError):
            DecompositionParams(math.sqrt(0.3), math.sqrt(0.7))

    def test_from_weights_domain(self):
        with pytest.raises(DomainError):
            DecompositionParams.from_weights(0.3)

    def test_alpha_sq_round_trip(self):
        params = DecompositionParams.from_weights(0.8, 1.0, 2.0)
        assert params.alpha_sq == pytest.approx(0.8, abs=1e-12)


class TestZOfAlpha:
    @given(p_values)
    def test_half_alpha_pins_half(self, p):
        assert z_of_alpha(p, 0.5) == pytest.approx(0.5, abs=1e-12)

    @given(p_values)
    def test_unit_alpha_gives_p(self, p):
        assert z_of_alpha(p, 1.0) == pytest.approx(p, abs=1e-12)

    def test_example(self):
        assert z_of_alpha(0.9, 0.8) == pytest.approx(0.74, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            z_of_alpha(0.4, 0.8)
        with pytest.raises(DomainError):
            z_of_alpha(0.9, 0.3)

    @given(p_values, unit_floats, unit_floats)
    def test_monotone_into_range(self, p, f1, f2):
        lo, hi = sorted((0.5 + 0.5 * f1, 0.5 + 0.5 * f2))
        z_lo, z_hi = z_of_alpha(p, lo), z_of_alpha(p, hi)
        assert z_lo <= z_hi + 1e-12
        assert 0.5 - 1e-12 <= z_lo and z_hi <= p + 1e-12


class TestDecompose:
    def test_maximally_mixed_splits_orthogonal(self):
        dec = decompose(0.5, DecompositionParams.from_weights(0.5))
        assert dec.z == pytest.approx(0.5, abs=1e-12)
        assert overlap2(dec.phi1, dec.phi2) <= 1e-12

    def test_ideal_density_matrix(self):
        dec = decompose(IDEAL_P, DecompositionParams.from_weights(0.5))
        assert dec.z == pytest.approx(0.5, abs=1e-12)
        assert overlap2(dec.phi1, dec.phi2) == pytest.approx(0.5, abs=1e-12)
        assert n0(dec.phi1, dec.phi2) == pytest.approx(1.0, abs=1e-12)

    def test_unit_alpha_recovers_eigenbasis(self):
        dec = decompose(0.9, DecompositionParams.from_weights(1.0))
        assert dec.z == pytest.approx(0.9, abs=1e-12)
        assert overlap2(dec.phi1, KET_UP) == pytest.approx(1.0, abs=1e-12)
        assert overlap2(dec.phi2, KET_DOWN) == pytest.approx(1.0, abs=1e-12)
        assert overlap2(dec.phi1, dec.phi2) <= 1e-12

    def test_pure_state_needs_unit_alpha(self):
        with pytest.raises(DegenerateDecompositionError):
            decompose(1.0, DecompositionParams.from_weights(0.7))

    def test_pure_state_unit_alpha(self):
        dec = decompose(1.0, DecompositionParams.from_weights(1.0))
        assert dec.z == 1.0
        assert overlap2(dec.phi1, dec.phi2) <= 1e-12
        assert np.allclose(dec.density().matrix, np.diag([1.0, 0.0]), atol=1e-12)

    @given(p_values.filter(lambda p: p < 1.0 - 1e-6), canonical_params())
    def test_reconstruction(self, p, params):
        dec = decompose(p, params)
        target = density_from_p(p).matrix()
        assert np.max(np.abs(dec.density().matrix - target)) <= 1e-10

    @given(p_values.filter(lambda p: p < 1.0 - 1e-6), canonical_params())
    def test_consistency_with_closed_forms(self, p, params):
        dec = decompose(p, params)
        assert n0(dec.phi1, dec.phi2) == pytest.approx(
            pair_nonortho(p, dec.z), abs=1e-10)
        assert overlap2(dec.phi1, dec.phi2) == pytest.approx(
            hidden_overlap(p, dec.z), abs=1e-10)

    @given(p_values.filter(lambda p: p < 1.0 - 1e-6),
           st.floats(min_value=0.5, max_value=1.0), phases, phases,
           phases, phases)
    def test_phase_independence(self, p, a_sq, a1, b1, a2, b2):
        d1 = decompose(p, DecompositionParams.from_weights(a_sq, a1, b1))
        d2 = decompose(p, DecompositionParams.from_weights(a_sq, a2, b2))
        assert overlap2(d1.phi1, d1.phi2) == pytest.approx(
            overlap2(d2.phi1, d2.phi2), abs=1e-12)
        assert d1.z == pytest.approx(d2.z, abs=1e-12)


class TestHiddenOverlap:
    @given(p_values)
    def test_orthogonal_endpoint(self, p):
        assert hidden_overlap(p, p) == pytest.approx(0.0, abs=1e-12)

    def test_ideal_point(self):
        assert hidden_overlap(IDEAL_P, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_overlap_half_at_zstar(self):
        assert hidden_overlap(0.9, ZSTAR_09) == pytest.approx(0.5, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            hidden_overlap(0.9, 0.95)
        with pytest.raises(DomainError):
            hidden_overlap(0.9, 0.4)


class TestPairNonortho:
    def test_ideal(self):
        assert pair_nonortho(IDEAL_P, 0.5) == pytest.approx(1.0, abs=1e-12)

    @given(p_values)
    def test_zero_at_endpoint(self, p):
        assert pair_nonortho(p, p) == pytest.approx(0.0, abs=1e-12)

    def test_example(self):
        assert pair_nonortho(0.9, 0.6) == pytest.approx(0.75, abs=1e-12)


class TestEnsembleNonortho:
    def test_ideal(self):
        assert ensemble_nonortho(IDEAL_P, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_example_09_06(self):
        # overlap^2 = 0.625 >= 1/2 branch: 4 p (1-p) / z.
        assert ensemble_nonortho(0.9, 0.6) == pytest.approx(0.6, abs=1e-12)
        assert ensemble_nonortho(0.9, 0.6) == pytest.approx(
            2.0 * 0.4 * pair_nonortho(0.9, 0.6), abs=1e-12)

    @given(p_values)
    def test_zero_at_endpoint(self, p):
        assert ensemble_nonortho(p, p) == pytest.approx(0.0, abs=1e-12)

    @given(pz_pairs())
    def test_branch_agreement_everywhere(self, pz):
        # ensemble_nonortho raises InvariantError internally if the direct
        # and branch evaluations split; reaching here means they agree.
        p, z = pz
        value = ensemble_nonortho(p, z)
        assert 0.0 <= value <= 1.0 + 1e-12


class TestMaxPair:
    def test_ideal_point(self):
        assert max_pair_z(IDEAL_P) == pytest.approx(0.5, abs=1e-7)

    def test_p09(self):
        z = max_pair_z(0.9)
        assert z == pytest.approx(ZSTAR_09, abs=1e-12)
        assert pair_nonortho(0.9, z) == pytest.approx(1.0, abs=1e-10)

    def test_p086(self):
        z = max_pair_z(0.86)
        assert z == pytest.approx(ZSTAR_086, abs=1e-12)
        assert pair_nonortho(0.86, z) == pytest.approx(1.0, abs=1e-10)

    def test_infeasible_below_threshold(self):
        assert max_pair_z(0.8) is None

    @given(p_values)
    def test_feasibility_boundary(self, p):
        z = max_pair_z(p)
        if p * (1.0 - p) <= 0.125 - 1e-12:
            assert z is not None
            assert z * (1.0 - z) == pytest.approx(2.0 * p * (1.0 - p), abs=1e-12)
        elif p * (1.0 - p) >= 0.125 + 1e-12:
            assert z is None


class TestMaxEnsemble:
    def test_low_p(self):
        assert max_ensemble(0.6) == pytest.approx(0.08, abs=1e-12)
        assert max_ensemble_branch(0.6) == "overlap_lt_half"

    def test_high_p(self):
        assert max_ensemble(0.9) == pytest.approx(0.72, abs=1e-12)
        assert max_ensemble_branch(0.9) == "overlap_ge_half"

    def test_global_peak(self):
        assert max_ensemble(IDEAL_P) == pytest.approx(1.0, abs=1e-12)

    def test_grid_oracle_small(self):
        for p in np.linspace(0.5, 1.0, 21):
            zgrid = np.linspace(0.5, p, 2001)
            values = [ensemble_nonortho(p, z) for z in zgrid]
            k = int(np.argmax(values))
            assert values[k] == pytest.approx(max_ensemble(p), abs=1e-6)
            assert abs(zgrid[k] - 0.5) <= (zgrid[1] - zgrid[0] if p > 0.5 else 0.0) + 1e-12


class TestIdealRho:
    def test_value(self):
        assert ideal_rho().p == pytest.approx(0.5 * (1.0 + math.sqrt(0.5)), abs=1e-15)

    def test_uniqueness_probe(self):
        # Off the ideal p, no z is simultaneously a 50/50 split and
        # maximally nonorthogonal.
        for p in (IDEAL_P - 0.01, IDEAL_P + 0.01):
            zgrid = np.linspace(0.5, p, 4001)
            step = zgrid[1] - zgrid[0]
            for z in zgrid:
                if pair_nonortho(p, z) >= 1.0 - 1e-6:
                    assert abs(z - 0.5) > step
        # At the ideal p the joint condition is met at z = 1/2.
        assert pair_nonortho(IDEAL_P, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_max_ensemble_at_ideal(self):
        assert max_ensemble(ideal_rho().p) == pytest.approx(1.0, abs=1e-12)
