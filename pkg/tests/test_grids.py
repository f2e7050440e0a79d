import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import wigsim as ws
from wigsim import InvalidGridError, NonNormalizableError, UnnormalizedFieldError
from wigsim.grids import (
    PhaseSpaceGrid,
    QuadratureDistribution,
    field_from_samples,
    integrate_full,
    integrate_samples,
    marginal_over,
    overlap_trace,
    read_field_csv,
    renormalize,
    tensor_product,
    trapezoid_weights,
    wigner_from_wavefunction,
    write_field_csv,
)


class TestGridConstruction:
    def test_build_grid_shape_and_spacing(self):
        g = ws.build_grid(-4, 4, 17, -2, 2, 9)
        assert g.shape == (17, 9)
        assert g.mode_count == 1
        assert g.spacings == (0.5, 0.5)
        assert g.axis(0, "q")[0] == -4 and g.axis(0, "p")[-1] == 2

    def test_default_grid(self):
        g = ws.default_grid()
        assert g.shape == (1025, 1025)
        assert g.axes[0][0] == -16.0 and g.axes[0][-1] == 16.0

    def test_multimode_axes_order(self):
        g = ws.build_grid(-3, 3, 7, -5, 5, 11, modes=2)
        assert g.shape == (7, 11, 7, 11)
        assert np.array_equal(g.axis(1, "p"), g.axes[3])

    @pytest.mark.parametrize(
        "args",
        [
            (-4, 4, 2, -4, 4, 9),
            (4, -4, 9, -4, 4, 9),
            (-4, 4, 9, -4, np.inf, 9),
        ],
    )
    def test_build_grid_rejects(self, args):
        with pytest.raises(InvalidGridError):
            ws.build_grid(*args)

    def test_nonuniform_axis_rejected(self):
        with pytest.raises(InvalidGridError):
            PhaseSpaceGrid(axes=(np.array([0.0, 1.0, 3.0]), np.linspace(0, 1, 5)))

    def test_odd_axis_count_rejected(self):
        with pytest.raises(InvalidGridError):
            PhaseSpaceGrid(axes=(np.linspace(0, 1, 5),))

    def test_axes_are_read_only(self):
        g = ws.build_grid(-1, 1, 5, -1, 1, 5)
        with pytest.raises(ValueError):
            g.axes[0][0] = 7.0


class TestIntegration:
    def test_trapezoid_weights_sum(self):
        ax = np.linspace(-3, 5, 33)
        assert abs(trapezoid_weights(ax).sum() - 8.0) < 1e-12

    def test_separable_product(self):
        # int x^2 dx * int cos(y) dy over [-1,1] x [-pi/2,pi/2]
        g = ws.build_grid(-1, 1, 801, -np.pi / 2, np.pi / 2, 801)
        x, y = g.open_mesh()
        val = integrate_samples(x**2 * np.cos(y), g.axes)
        assert abs(val - (2.0 / 3.0) * 2.0) < 1e-5

    @given(st.integers(min_value=3, max_value=40))
    def test_constant_integral_is_volume(self, n):
        g = ws.build_grid(-2, 3, n, 0, 4, n)
        assert abs(integrate_samples(np.ones(g.shape), g.axes) - 20.0) < 1e-10

    def test_dimension_mismatch_rejected(self):
        g = ws.build_grid(-1, 1, 5, -1, 1, 5)
        with pytest.raises(ValueError):
            integrate_samples(np.ones(5), g.axes)


class TestWignerField:
    def test_normalized_flag_tracks_integral(self, grid_small):
        w = ws.vacuum_wigner(grid_small)
        assert w.normalized
        assert abs(integrate_full(w) - 1.0) < 1e-6
        half = field_from_samples(grid_small, w.samples / 2.0)
        assert not half.normalized

    def test_renormalize(self, grid_small):
        w = ws.vacuum_wigner(grid_small)
        scaled = field_from_samples(grid_small, w.samples * 3.0)
        back = renormalize(scaled)
        assert back.normalized
        assert abs(integrate_full(back) - 1.0) < 1e-12

    def test_renormalize_rejects_null_field(self, grid_small):
        null = field_from_samples(grid_small, np.zeros(grid_small.shape))
        with pytest.raises(NonNormalizableError):
            renormalize(null)

    def test_samples_read_only(self, grid_small):
        w = ws.vacuum_wigner(grid_small)
        with pytest.raises(ValueError):
            w.samples[0, 0] = 1.0

    def test_nonfinite_samples_rejected(self, grid_small):
        bad = np.zeros(grid_small.shape)
        bad[0, 0] = np.nan
        with pytest.raises(ValueError):
            field_from_samples(grid_small, bad)


class TestComposition:
    def test_tensor_product_integral_and_shape(self, grid_tiny):
        a = ws.vacuum_wigner(grid_tiny)
        b = ws.number_state_wigner(1, grid_tiny)
        joint = tensor_product(a, b)
        assert joint.mode_count == 2
        assert joint.normalized
        assert abs(integrate_full(joint) - 1.0) < 1e-6

    def test_tensor_product_requires_normalized(self, grid_tiny):
        a = ws.vacuum_wigner(grid_tiny)
        half = field_from_samples(grid_tiny, a.samples / 2.0)
        with pytest.raises(UnnormalizedFieldError):
            tensor_product(a, half)

    def test_marginal_inverts_tensor(self, grid_tiny):
        a = ws.vacuum_wigner(grid_tiny)
        b = ws.number_state_wigner(1, grid_tiny)
        joint = tensor_product(a, b)
        kept = marginal_over(joint, [0])
        assert np.max(np.abs(kept.samples - b.samples)) < 1e-9
        kept0 = marginal_over(joint, {1})
        assert np.max(np.abs(kept0.samples - a.samples)) < 1e-9

    def test_marginal_over_rejects_bad_modes(self, grid_tiny):
        a = ws.vacuum_wigner(grid_tiny)
        joint = tensor_product(a, a)
        with pytest.raises(ValueError):
            marginal_over(joint, [])
        with pytest.raises(ValueError):
            marginal_over(joint, [0, 1])
        with pytest.raises(ValueError):
            marginal_over(joint, [2])

    def test_overlap_trace_orthonormal_pair(self, grid_default, one_photon):
        vac = ws.vacuum_wigner(grid_default)
        assert abs(overlap_trace(vac, vac) - 1.0) < 1e-9
        assert abs(overlap_trace(one_photon, one_photon) - 1.0) < 1e-9
        assert abs(overlap_trace(vac, one_photon)) < 1e-9

    def test_overlap_trace_grid_mismatch(self, grid_default, grid_small):
        with pytest.raises(ws.GridMismatchError):
            overlap_trace(ws.vacuum_wigner(grid_default), ws.vacuum_wigner(grid_small))


class TestWavefunctionRoute:
    def test_vacuum_from_wavefunction(self, grid_small):
        # psi(q) = (2 pi)^(-1/4) exp(-q^2/4) gives the vacuum Gaussian
        w = wigner_from_wavefunction(
            lambda q: np.exp(-(np.asarray(q) ** 2) / 4.0), grid_small
        )
        ref = ws.vacuum_wigner(grid_small)
        assert np.max(np.abs(w.samples - ref.samples)) < 1e-8

    def test_unnormalized_input_accepted(self, grid_small):
        w = wigner_from_wavefunction(
            lambda q: 5.0 * np.exp(-(np.asarray(q) ** 2) / 4.0), grid_small
        )
        assert w.normalized

    def test_negligible_norm_rejected(self, grid_small):
        with pytest.raises(NonNormalizableError):
            wigner_from_wavefunction(
                lambda q: 1e-12 * np.exp(-((np.asarray(q) - 500.0) ** 2)), grid_small
            )


class TestQuadratureDistribution:
    def test_accepts_unit_density(self):
        ax = np.linspace(-8, 8, 257)
        dens = np.exp(-(ax**2) / 2.0) / np.sqrt(2.0 * np.pi)
        d = QuadratureDistribution(values=ax, densities=dens)
        assert d.densities.flags.writeable is False

    def test_rejects_negative_density(self):
        ax = np.linspace(-8, 8, 257)
        dens = np.exp(-(ax**2) / 2.0) / np.sqrt(2.0 * np.pi)
        dens[3] = -1e-3
        with pytest.raises(ValueError):
            QuadratureDistribution(values=ax, densities=dens)

    def test_rejects_unnormalized_density(self):
        ax = np.linspace(-8, 8, 257)
        with pytest.raises(ValueError):
            QuadratureDistribution(values=ax, densities=np.ones(ax.size))


class TestCsvRoundTrip:
    def test_roundtrip_preserves_field(self, tmp_path):
        g = ws.build_grid(-6, 6, 41, -6, 6, 41)
        w = ws.number_state_wigner(2, g)
        path = tmp_path / "field.csv"
        write_field_csv(w, path)
        back = read_field_csv(path)
        # coordinates pass through the %.12e text format, so equality is
        # to 12 significant digits rather than bit-exact
        for ax_in, ax_out in zip(w.grid.axes, back.grid.axes):
            assert np.allclose(ax_out, ax_in, rtol=1e-12, atol=1e-14)
        assert np.max(np.abs(back.samples - w.samples)) < 1e-12

    def test_write_is_deterministic(self, tmp_path):
        g = ws.build_grid(-6, 6, 41, -6, 6, 41)
        w = ws.number_state_wigner(2, g)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_field_csv(w, p1)
        write_field_csv(w, p2)
        assert p1.read_bytes() == p2.read_bytes()
