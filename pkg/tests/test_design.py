import numpy as np
import pytest

from lc_modulation.basis.bspline import basis_matrix, build_knots
from lc_modulation.basis.design import build_design, design_for_times, reflection_frequencies
from lc_modulation.config import BasisConfig, ModelConfig
from lc_modulation.constants import ComponentKind
from lc_modulation.exceptions import NonPositiveResult, ShapeMismatch


def _spec(frequencies, n=1, d=3, extra=()):
    return ModelConfig(frequencies=list(frequencies), extra_frequencies=list(extra),
                       basis=BasisConfig(n_intervals=n, degree=d), penalty_order=1)


def test_trend_only_design_is_basis(rng):
    times = np.sort(rng.uniform(0, 1, 12))
    kv = build_knots(times[0], times[-1], 3, 2)
    basis = basis_matrix(kv, times)
    design = build_design(basis, _spec([], n=3, d=2))
    np.testing.assert_array_equal(design.matrix, basis.matrix)


def test_zero_phase_row():
    times = np.array([0.0, 0.3, 0.7, 1.0])
    basis = basis_matrix(build_knots(0.0, 1.0, 1, 3), times)
    design = build_design(basis, _spec([2.0]))
    J = 4
    np.testing.assert_allclose(design.matrix[0, J:2 * J], basis.matrix[0])
    np.testing.assert_allclose(design.matrix[0, 2 * J:], 0.0)


def test_column_blocks(rng):
    times = np.sort(rng.uniform(0, 2, 10))
    design = design_for_times(times, _spec([1.5, 4.0]))
    B = design.basis.matrix
    assert design.n_columns == 20
    np.testing.assert_allclose(design.matrix[:, 4:8], B * np.cos(2 * np.pi * 1.5 * times)[:, None])
    np.testing.assert_allclose(design.matrix[:, 16:20], B * np.sin(2 * np.pi * 4.0 * times)[:, None])
    assert design.block_slice(ComponentKind.SIN, 1) == slice(12, 16)


def test_column_map_marks_extra_frequencies(rng):
    times = np.sort(rng.uniform(0, 1, 15))
    design = design_for_times(times, _spec([1.0], extra=[7.0]))
    assert design.n_columns == 4 * 5
    extra = [info for info in design.column_map if info.extra]
    assert len(extra) == 8
    assert {info.harmonic for info in extra} == {2}
    assert design.column_map[0].kind is ComponentKind.TREND


def test_basis_spec_mismatch(rng):
    times = np.sort(rng.uniform(0, 1, 10))
    basis = basis_matrix(build_knots(0.0, 1.0, 2, 3), np.clip(times, 0, 1))
    with pytest.raises(ShapeMismatch):
        build_design(basis, _spec([1.0], n=1, d=3))


def test_reassembly_from_blocks(rng):
    times = np.sort(rng.uniform(0, 3, 40))
    spec = _spec([0.7, 1.9], n=4, d=3)
    design = design_for_times(times, spec)
    theta = rng.normal(size=design.n_columns)
    J, B = design.n_basis, design.basis.matrix
    alpha, beta1, beta2, gamma1, gamma2 = (theta[i * J:(i + 1) * J] for i in range(5))
    w1, w2 = 2 * np.pi * 0.7, 2 * np.pi * 1.9
    expected = (B @ alpha + B @ beta1 * np.cos(w1 * times) + B @ beta2 * np.cos(w2 * times)
                + B @ gamma1 * np.sin(w1 * times) + B @ gamma2 * np.sin(w2 * times))
    np.testing.assert_allclose(design.matrix @ theta, expected, atol=1e-12)


def test_trend_only_coefficients(rng):
    times = np.sort(rng.uniform(0, 1, 20))
    design = design_for_times(times, _spec([3.0], n=2))
    theta = np.zeros(design.n_columns)
    theta[:design.n_basis] = rng.normal(size=design.n_basis)
    np.testing.assert_allclose(design.matrix @ theta, design.basis.matrix @ theta[:design.n_basis])


def test_reflection_frequencies():
    f = reflection_frequencies(1.611084, 24.468, [11, 14])
    assert f[0] == pytest.approx(18.3254, abs=5e-4)
    assert f[1] == pytest.approx(23.1587, abs=5e-4)


def test_reflection_offset_cancels():
    assert reflection_frequencies(1.0, 15.0, [30]) == [30.0]


def test_reflection_non_positive():
    with pytest.raises(NonPositiveResult):
        reflection_frequencies(5.0, 1.0, [0])
