import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rfhquad import (
    HalfInt,
    QuadraticHamiltonian,
    build_block,
    crossing_times,
    cz_index_data,
    cz_index_path,
    cz_transverse,
    grading,
    hybrid_virtual_dim,
    orbit_family,
    sigma_index,
    stationary_fiber_dim,
    symplectic_direct_sum,
)
from rfhquad.errors import (
    CrossingDegenerate,
    DegenerateInput,
    InputError,
    NonIntegerResult,
    ZeroEta,
)

TWO_PI = 2 * np.pi


class TestHalfInt:
    def test_construction_and_str(self):
        assert str(HalfInt(4)) == "2"
        assert str(HalfInt(3)) == "3/2"
        assert str(HalfInt(-1)) == "-1/2"
        assert HalfInt.from_int(2) == HalfInt(4)

    def test_rejects_non_integers(self):
        with pytest.raises(InputError):
            HalfInt(1.5)
        with pytest.raises(InputError):
            HalfInt(True)

    def test_integrality(self):
        assert HalfInt(4).is_integer
        assert not HalfInt(3).is_integer
        assert HalfInt(4).as_int() == 2
        with pytest.raises(NonIntegerResult):
            HalfInt(3).as_int()

    def test_arithmetic(self):
        one_half = HalfInt(1)
        assert one_half + one_half == HalfInt.from_int(1)
        assert one_half - HalfInt(3) == HalfInt(-2)
        assert -one_half == HalfInt(-1)
        assert 3 * one_half == HalfInt(3)
        assert one_half + 1 == HalfInt(3)
        assert float(one_half) == 0.5

    def test_ordering(self):
        assert HalfInt(1) < HalfInt(2) <= HalfInt.from_int(1)
        assert HalfInt(5) > 2
        assert HalfInt(4) >= 2 and HalfInt(4) <= 2

    def test_hash_consistency(self):
        assert hash(HalfInt(4)) == hash(2)
        assert len({HalfInt(4), HalfInt.from_int(2)}) == 1


class TestCzPath:
    def test_full_rotation(self):
        assert cz_index_path(np.eye(2), TWO_PI) == HalfInt.from_int(2)

    def test_full_rotation_data(self):
        data = cz_index_data(np.eye(2), TWO_PI)
        assert data.sgn_start == 2
        assert data.interior == ()
        assert data.endpoint is not None and data.endpoint[1] == 2

    def test_one_and_a_half_rotations(self):
        data = cz_index_data(np.eye(2), 3 * np.pi)
        assert data.endpoint is None
        assert [round(t, 9) for t, _ in data.interior] == [round(TWO_PI, 9)]
        assert cz_index_path(np.eye(2), 3 * np.pi) == HalfInt.from_int(3)

    @pytest.mark.parametrize("k,N,mu", [(1, 1, 1.0), (2, 3, 0.7), (3, 2, 1.3), (4, 5, 1.0)])
    def test_scaled_identity_closed_form(self, k, N, mu):
        S = mu * np.eye(2 * k)
        assert cz_index_path(S, TWO_PI * N / mu) == HalfInt.from_int(2 * k * N)

    @pytest.mark.parametrize("T", [1.0, np.pi, TWO_PI, 10.0])
    def test_hyperbolic_vanishing(self, T):
        S = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert cz_index_path(S, T) == HalfInt.from_int(0)

    def test_empty_form(self):
        assert cz_index_path(np.zeros((0, 0)), 1.0) == HalfInt.from_int(0)

    def test_crossing_times(self):
        got = crossing_times(np.eye(2), 2 * TWO_PI + 0.1)
        assert np.allclose(got, (TWO_PI, 2 * TWO_PI))

    def test_additivity_on_direct_sum(self):
        S1 = 1.0 * np.eye(2)
        S2 = build_block("a", 1, 0.8).matrix
        S = symplectic_direct_sum(S1, S2)
        T = 3 * np.pi
        assert cz_index_path(S, T) == cz_index_path(S1, T) + cz_index_path(S2, T)

    def test_negation(self):
        S = np.diag([1.0, 2.0, 1.0, 2.0])
        T = 5.0
        assert cz_index_path(-S, T) == -cz_index_path(S, T)

    def test_input_errors(self):
        with pytest.raises(InputError):
            cz_index_path(np.eye(3), 1.0)
        with pytest.raises(InputError):
            cz_index_path(np.eye(2), 0.0)
        with pytest.raises(DegenerateInput):
            cz_index_path(np.diag([1.0, 0.0]), 1.0)

    def test_degenerate_crossing_form_reported(self):
        """A defective imaginary pair has a vanishing crossing form."""
        S = build_block("c", 2, 1.0j, gamma=1).matrix
        with pytest.raises(CrossingDegenerate):
            cz_index_path(S, 3 * np.pi)


class TestTransverseAndGrading:
    def test_transverse_single_frequency(self, h21):
        fam = orbit_family(h21, TWO_PI)
        assert cz_transverse(h21, fam) == HalfInt.from_int(2)

    def test_transverse_interleaved(self, h32):
        fam = orbit_family(h32, np.pi)
        assert cz_transverse(h32, fam) == HalfInt.from_int(3)

    def test_transverse_negative_action(self, h21):
        fam = orbit_family(h21, -TWO_PI)
        assert cz_transverse(h21, fam) == HalfInt.from_int(-2)

    def test_transverse_rejects_stationary(self, h21):
        from rfhquad import census, ActionWindow
        stat = census(h21, ActionWindow(-0.5, 0.5))[0]
        with pytest.raises(ZeroEta):
            cz_transverse(h21, stat)

    def test_sigma_index_sphere(self, h32):
        fam = orbit_family(h32, TWO_PI, side="H")  # m = 2
        assert sigma_index(fam, "max") == HalfInt(3)
        assert sigma_index(fam, "min") == HalfInt(-3)

    def test_sigma_index_stationary(self):
        from rfhquad import census, ActionWindow
        H = QuadraticHamiltonian.from_frequencies(
            3, 2, [1.0, 1.0], build_block("a", 1, 1.0).matrix)
        stat = census(H, ActionWindow(-0.5, 0.5))
        sigma0, sigma = stat[0], stat[1]
        assert sigma_index(sigma0, "max") == HalfInt(3)  # k - 1/2 at k=2
        assert sigma_index(sigma, "min") == HalfInt(-5)  # -(n - 1/2) at n=3
        assert sigma_index(sigma, "max") == HalfInt(3)

    def test_grading_positive_resonant(self):
        H = QuadraticHamiltonian.from_frequencies(
            3, 2, [1.0, 1.0], build_block("a", 1, 1.0).matrix)
        fam = orbit_family(H, TWO_PI, side="H0")
        assert fam.m == 2
        assert grading(fam, "min", H) == HalfInt.from_int(3)
        assert grading(fam, "max", H) == HalfInt.from_int(6)

    def test_grading_negative_action(self, h21):
        fam = orbit_family(h21, -TWO_PI, side="H0")
        assert grading(fam, "max", h21) == HalfInt.from_int(-1)
        assert grading(fam, "min", h21) == HalfInt.from_int(-2)


class TestHybridDimension:
    def test_equal_indices(self):
        cz = HalfInt.from_int(2)
        assert hybrid_virtual_dim(cz, cz, 1, 1) == 1
        assert hybrid_virtual_dim(cz, cz, 3, 3) == 3

    def test_mixed(self):
        assert hybrid_virtual_dim(HalfInt.from_int(2), HalfInt.from_int(4), 1, 3) == 4

    def test_non_integer_reported(self):
        with pytest.raises(NonIntegerResult):
            hybrid_virtual_dim(HalfInt(0), HalfInt(1), 1, 1)

    def test_stationary_fiber(self):
        # sigma-side max against sigma-side min for n=3, k=2
        assert stationary_fiber_dim(HalfInt(3), HalfInt(-5)) == 4


@given(st.integers(-40, 40), st.integers(-40, 40))
def test_halfint_total_order_consistent(a, b):
    x, y = HalfInt(a), HalfInt(b)
    assert (x < y) == (a < b)
    assert (x == y) == (a == b)
    assert float(x - y) == pytest.approx((a - b) / 2)


@given(st.integers(1, 4), st.integers(1, 4), st.floats(0.4, 2.5))
def test_rotation_index_monotone_in_period(k, N, mu):
    S = mu * np.eye(2 * k)
    small = cz_index_path(S, TWO_PI * N / mu)
    large = cz_index_path(S, TWO_PI * (N + 1) / mu)
    assert large - small == HalfInt.from_int(2 * k)
