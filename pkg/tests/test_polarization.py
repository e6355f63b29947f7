import numpy as np
import pytest

from photonloc.polarization import (
    AXES,
    axis_index,
    field_strength,
    gauge_transform,
    helicity_sum_matrix,
    longitudinal_projector,
    minkowski_dot,
    polarization_vector,
    transverse_helicity_sum_closed_form,
    transverse_outer_product,
    validate_helicities,
    wave_four_vector,
)
from photonloc.rotations import Direction, standard_rotation, spherical_to_cartesian, wigner_D

RT2 = np.sqrt(2.0)
Z_DIR = Direction(0.0, 0.0)
X_DIR = Direction(np.pi / 2, 0.0)


def random_direction(rng):
    return Direction(np.arccos(rng.uniform(-1, 1)), rng.uniform(0, 2 * np.pi))


class TestPolarizationVector:
    def test_z_axis_conjugate_components(self):
        np.testing.assert_allclose(
            polarization_vector(Z_DIR, +1).conjugate[1:],
            [-1 / RT2, 1j / RT2, 0.0],
            atol=1e-15,
        )
        np.testing.assert_allclose(
            polarization_vector(Z_DIR, 0).conjugate[1:], [0.0, 0.0, 1.0], atol=1e-15
        )
        np.testing.assert_allclose(
            polarization_vector(Z_DIR, -1).conjugate[1:],
            [1 / RT2, 1j / RT2, 0.0],
            atol=1e-15,
        )

    def test_x_axis_zero_helicity_is_x_unit_vector(self):
        # rotating the longitudinal z-axis vector must give khat itself
        pol = polarization_vector(X_DIR, 0)
        np.testing.assert_allclose(pol.conjugate[1:], [1.0, 0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(
            pol.spatial, standard_rotation(X_DIR) @ [0.0, 0.0, 1.0], atol=1e-15
        )

    def test_time_component_vanishes_in_radiation_gauge(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            pol = polarization_vector(random_direction(rng), 1)
            assert pol.components[0] == 0.0
            assert pol.gauge_tag == "radiation"

    def test_invalid_helicity_rejected(self):
        with pytest.raises(ValueError, match="helicity"):
            polarization_vector(Z_DIR, 2)

    def test_transversality_and_orthonormal_triad(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            d = random_direction(rng)
            khat = d.unit_vector
            pols = {lam: polarization_vector(d, lam) for lam in (-1, 0, 1)}
            for lam in (-1, 1):
                assert abs(khat @ pols[lam].spatial) < 1e-12
            for lam1 in (-1, 0, 1):
                for lam2 in (-1, 0, 1):
                    inner = pols[lam1].spatial @ pols[lam2].spatial.conj()
                    expected = 1.0 if lam1 == lam2 else 0.0
                    assert abs(inner - expected) < 1e-12

    def test_lorentz_condition_for_transverse_helicities(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            d = random_direction(rng)
            omega = rng.uniform(0.1, 5.0)
            k4 = wave_four_vector(omega, d)
            for lam in (-1, 1):
                assert abs(minkowski_dot(k4, polarization_vector(d, lam).components)) < 1e-12


class TestGaugeTransform:
    def test_zero_shift_is_identity(self):
        pol = polarization_vector(X_DIR, 1)
        shifted = gauge_transform(pol, 2.0, 0.0)
        np.testing.assert_allclose(shifted.components, pol.components, atol=1e-16)

    def test_longitudinal_shift_example(self):
        shifted = gauge_transform(polarization_vector(Z_DIR, 0), 1.0, 1.0)
        np.testing.assert_allclose(shifted.components, [1.0, 0.0, 0.0, 2.0], atol=1e-15)
        assert shifted.gauge_tag == "transformed"

    def test_preserves_lorentz_condition(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            d = random_direction(rng)
            omega = rng.uniform(0.1, 4.0)
            g = complex(rng.normal(), rng.normal())
            shifted = gauge_transform(polarization_vector(d, -1), omega, g)
            k4 = wave_four_vector(omega, d)
            assert abs(minkowski_dot(k4, shifted.components)) < 1e-12

    def test_nonpositive_energy_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            gauge_transform(polarization_vector(Z_DIR, 1), 0.0, 1.0)


class TestFieldStrength:
    def test_pure_gauge_polarization_gives_zero(self):
        from photonloc.polarization import PolarizationVector

        omega = 1.3
        k4 = wave_four_vector(omega, X_DIR).astype(complex)
        pure_gauge = PolarizationVector(k4, 1, X_DIR, "transformed")
        np.testing.assert_allclose(
            field_strength(omega, X_DIR, pure_gauge), np.zeros((4, 4)), atol=1e-15
        )

    def test_radiation_gauge_structure_along_z(self):
        f = field_strength(1.0, Z_DIR, polarization_vector(Z_DIR, 1))
        nonzero = np.abs(f) > 1e-14
        expected = np.zeros((4, 4), dtype=bool)
        for time_or_z in (0, 3):
            for tr in (1, 2):
                expected[time_or_z, tr] = expected[tr, time_or_z] = True
        assert (nonzero == expected).all()

    def test_antisymmetric(self):
        rng = np.random.default_rng(4)
        d = random_direction(rng)
        f = field_strength(0.7, d, polarization_vector(d, -1))
        np.testing.assert_allclose(f, -f.T, atol=1e-15)

    def test_invariant_under_gauge_shift(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            d = random_direction(rng)
            omega = rng.uniform(0.2, 3.0)
            g = complex(rng.normal(), rng.normal())
            pol = polarization_vector(d, 1)
            f0 = field_strength(omega, d, pol)
            f1 = field_strength(omega, d, gauge_transform(pol, omega, g))
            assert np.abs(f1 - f0).max() < 1e-12

    def test_nonpositive_energy_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            field_strength(-1.0, Z_DIR, polarization_vector(Z_DIR, 1))


class TestHelicitySum:
    def test_full_set_gives_identity(self):
        rng = np.random.default_rng(6)
        for j in (1, 2):
            d = random_direction(rng)
            full = range(-j, j + 1)
            np.testing.assert_allclose(
                helicity_sum_matrix(d, full, j=j), np.eye(2 * j + 1), atol=1e-13
            )

    def test_transverse_set_at_equator(self):
        got = helicity_sum_matrix(Direction(np.pi / 2, 0.0), (-1, 1))
        expected = np.array([[0.5, 0, 0.5], [0, 1, 0], [0.5, 0, 0.5]])
        np.testing.assert_allclose(got, expected, atol=1e-13)

    def test_transverse_set_at_pole(self):
        got = helicity_sum_matrix(Z_DIR, (-1, 1))
        np.testing.assert_allclose(got, np.diag([1.0, 0.0, 1.0]), atol=1e-14)

    def test_matches_closed_form_on_angle_grid(self):
        worst = 0.0
        for theta in np.linspace(0.0, np.pi, 20):
            for phi in np.linspace(0.0, 2 * np.pi, 20, endpoint=False):
                d = Direction(theta, phi)
                diff = np.abs(
                    helicity_sum_matrix(d, (-1, 1))
                    - transverse_helicity_sum_closed_form(d)
                ).max()
                worst = max(worst, diff)
        assert worst < 1e-12

    def test_spin2_subset_is_hermitian_with_trace_of_set_size(self):
        rng = np.random.default_rng(7)
        d = random_direction(rng)
        m = helicity_sum_matrix(d, (-2, 0, 2), j=2)
        np.testing.assert_allclose(m, m.conj().T, atol=1e-13)
        assert abs(np.trace(m).real - 3.0) < 1e-12

    def test_out_of_range_helicity_rejected(self):
        with pytest.raises(ValueError, match="range"):
            helicity_sum_matrix(Z_DIR, (-2, 2), j=1)
        with pytest.raises(ValueError, match="non-empty"):
            helicity_sum_matrix(Z_DIR, (), j=1)


class TestLongitudinalProjector:
    def test_rank_one_projector_properties(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            m = longitudinal_projector(random_direction(rng))
            np.testing.assert_allclose(m @ m, m, atol=1e-12)
            np.testing.assert_allclose(m, m.conj().T, atol=1e-12)
            assert abs(np.trace(m).real - 1.0) < 1e-12

    def test_angular_average_is_one_third_of_identity(self):
        # quadrature over the sphere: Gauss-Legendre in cos(theta), uniform azimuth
        mu, w = np.polynomial.legendre.leggauss(32)
        phis = np.arange(32) * 2 * np.pi / 32
        total = np.zeros((3, 3), dtype=complex)
        for m_node, weight in zip(mu, w):
            for phi in phis:
                total += weight * longitudinal_projector(
                    Direction(np.arccos(m_node), phi)
                )
        total *= (2 * np.pi / 32) / (4 * np.pi)
        np.testing.assert_allclose(total, np.eye(3) / 3.0, atol=1e-10)

    def test_closed_form_consistent_with_d_matrix_product(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            d = random_direction(rng)
            D = wigner_D(1, standard_rotation(d))
            product = np.outer(D[:, 1], D[:, 1].conj())
            assert np.abs(longitudinal_projector(d) - product).max() < 1e-13


class TestInverseFrameCoefficients:
    def test_match_rotated_z_axis_values(self):
        # contracting the inverse-frame D-matrix with the basis unitary must
        # reproduce the rotated conjugate polarization vectors
        rng = np.random.default_rng(10)
        u = spherical_to_cartesian()
        for _ in range(20):
            d = random_direction(rng)
            r0 = standard_rotation(d)
            inverse = wigner_D(1, r0).conj().T
            for row, lam in enumerate((1, 0, -1)):
                lhs = inverse[row] @ u
                rhs = r0 @ u[row]
                assert np.abs(lhs - rhs).max() < 1e-12
                expected = polarization_vector(d, lam).conjugate[1:]
                assert np.abs(lhs - expected).max() < 1e-12


class TestTransverseOuterProduct:
    def test_z_axis_values(self):
        assert abs(transverse_outer_product(Z_DIR, "z", "z")) < 1e-15
        assert abs(transverse_outer_product(Z_DIR, "x", "x") - 1.0) < 1e-15

    def test_matches_transverse_projector_everywhere(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            d = random_direction(rng)
            khat = d.unit_vector
            for i1 in range(3):
                for i2 in range(3):
                    value = transverse_outer_product(d, AXES[i1], AXES[i2])
                    expected = (i1 == i2) - khat[i1] * khat[i2]
                    assert abs(value - expected) < 1e-13

    def test_bad_axis_rejected(self):
        with pytest.raises(ValueError, match="axis"):
            transverse_outer_product(Z_DIR, "w", "x")


def test_axis_index_accepts_names_and_positions():
    assert axis_index("y") == 1
    assert axis_index(2) == 2


def test_validate_helicities_normalizes_and_rejects():
    assert validate_helicities([1, -1, 1], 1) == (-1, 1)
    with pytest.raises(ValueError, match="integers"):
        validate_helicities([0.5], 1)
