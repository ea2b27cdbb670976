import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import phases, pure_states, random_state
from nonortho.qstate import (
    KET_DOWN,
    KET_UP,
    Basis2,
    Density2,
    DomainError,
    PureState2,
    ValidationError,
    basis_from_state,
    density_from_p,
    format_state_literal,
    from_bloch,
    inner,
    measure_in_basis,
    orthogonal_complement,
    overlap2,
    parse_state_literal,
)


class TestPureState2:
    def test_renormalizes_small_deviation(self):
        s = PureState2(1.0 + 4e-10, 0.0)
        assert abs(s.a_up) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_large_deviation(self):
        with pytest.raises(ValidationError):
            PureState2(1.0, 0.5)

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            PureState2(complex(math.nan, 0.0), 0.0)

    def test_vector_matches_fields(self):
        s = from_bloch(1.0, 0.3)
        assert np.allclose(s.vector(), [s.a_up, s.a_down])


class TestOverlap:
    def test_orthogonal_pair(self):
        assert overlap2(KET_UP, KET_DOWN) == 0.0

    def test_global_phase(self):
        rotated = PureState2(cmath.exp(0.7j), 0.0)
        assert overlap2(KET_UP, rotated) == pytest.approx(1.0, abs=1e-15)

    def test_equal_superposition(self):
        plus = PureState2(math.sqrt(0.5), math.sqrt(0.5))
        assert overlap2(plus, KET_UP) == pytest.approx(0.5, abs=1e-15)

    @given(pure_states(), pure_states())
    def test_symmetry(self, x, y):
        assert overlap2(x, y) == pytest.approx(overlap2(y, x), abs=1e-12)

    @given(pure_states(), pure_states(), phases)
    def test_phase_invariance(self, x, y, gamma):
        shifted = PureState2(x.a_up * cmath.exp(1j * gamma),
                             x.a_down * cmath.exp(1j * gamma))
        assert overlap2(shifted, y) == pytest.approx(overlap2(x, y), abs=1e-12)

    @given(pure_states(), pure_states())
    def test_range(self, x, y):
        assert 0.0 <= overlap2(x, y) <= 1.0


class TestBloch:
    def test_north_pole(self):
        assert overlap2(from_bloch(0.0, 2.1), KET_UP) == pytest.approx(1.0)

    def test_south_pole(self):
        assert overlap2(from_bloch(math.pi, 0.0), KET_DOWN) == pytest.approx(1.0)

    def test_equator(self):
        assert overlap2(from_bloch(math.pi / 2, 0.0), KET_UP) == pytest.approx(0.5)


class TestOrthogonalComplement:
    def test_up_goes_down(self):
        assert overlap2(orthogonal_complement(KET_UP), KET_DOWN) == pytest.approx(1.0)

    def test_plus_state(self):
        plus = PureState2(math.sqrt(0.5), math.sqrt(0.5))
        assert overlap2(plus, orthogonal_complement(plus)) <= 1e-12

    @given(pure_states())
    def test_defining_property(self, x):
        assert overlap2(x, orthogonal_complement(x)) <= 1e-12


class TestDiagonalDensity:
    def test_maximally_mixed(self):
        d = density_from_p(0.5)
        assert np.allclose(d.matrix(), np.diag([0.5, 0.5]))

    def test_pure(self):
        assert density_from_p(1.0).eigenvalues() == (1.0, 0.0)

    def test_direct_construction(self):
        d = density_from_p(0.9)
        assert d.eigenvalues() == (0.9, pytest.approx(0.1))
        assert np.trace(d.matrix()) == pytest.approx(1.0)

    @pytest.mark.parametrize("p", [0.3, -0.1, 1.2])
    def test_domain(self, p):
        with pytest.raises(DomainError):
            density_from_p(p)


class TestDensity2:
    def test_accepts_valid(self):
        m = np.array([[0.7, 0.1 + 0.2j], [0.1 - 0.2j, 0.3]])
        d = Density2(m)
        assert d.eigenvalues().sum() == pytest.approx(1.0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            Density2(np.array([[0.5, 0.4], [0.1, 0.5]]))

    def test_rejects_bad_trace(self):
        with pytest.raises(ValidationError):
            Density2(np.array([[0.7, 0.0], [0.0, 0.7]]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValidationError):
            Density2(np.array([[1.2, 0.0], [0.0, -0.2]]))

    def test_matrix_is_read_only(self):
        d = Density2(np.diag([0.6, 0.4]).astype(complex))
        with pytest.raises(ValueError):
            d.matrix[0, 0] = 5.0


class TestBasis:
    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValidationError):
            Basis2(KET_UP, PureState2(math.sqrt(0.5), math.sqrt(0.5)))

    def test_measure_own_element(self):
        b = basis_from_state(from_bloch(0.8, 0.2))
        p0, p1 = measure_in_basis(b.b0, b)
        assert p0 == pytest.approx(1.0, abs=1e-12)
        assert p1 == pytest.approx(0.0, abs=1e-12)

    def test_equator_against_poles(self):
        b = Basis2(KET_UP, KET_DOWN)
        p0, p1 = measure_in_basis(from_bloch(math.pi / 2, 1.1), b)
        assert p0 == pytest.approx(0.5)
        assert p1 == pytest.approx(0.5)

    def test_completeness_over_random_pairs(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            x = random_state(rng)
            b = basis_from_state(random_state(rng))
            p0, p1 = measure_in_basis(x, b)
            assert abs(p0 + p1 - 1.0) <= 1e-12


class TestStateLiterals:
    def test_round_trip(self):
        s = from_bloch(1.234, 2.345)
        parsed = parse_state_literal(format_state_literal(s))
        assert overlap2(s, parsed) == pytest.approx(1.0, abs=1e-12)

    def test_documented_example(self):
        s = parse_state_literal("0.7071067811865476,0;0.7071067811865476,0")
        assert overlap2(s, KET_UP) == pytest.approx(0.5)

    @pytest.mark.parametrize("bad", ["1,0", "1;0", "1,0;0,0;0,0", "x,0;1,0"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValidationError):
            parse_state_literal(bad)

    def test_inner_conjugate_symmetry(self):
        x = from_bloch(0.7, 0.4)
        y = from_bloch(2.0, 5.0)
        assert inner(x, y) == pytest.approx(inner(y, x).conjugate())
