import numpy as np
import pytest

from lc_modulation.config import SimulationConfig
from lc_modulation.constants import SIMULATION_INFO, SimulationKind
from lc_modulation.exceptions import BadPartition, BadRange
from lc_modulation.generators.ar2 import choose_blocks, gen_ar2_blocks, simulate_ar2
from lc_modulation.generators.benko import (
    Benko2011Params,
    BenkoParams,
    benko2011_components,
    benko2011_eval,
    benko_components,
    benko_model_eval,
)
from lc_modulation.generators.blazhko import BlazhkoParams, blazhko_times, gen_blazhko_am
from lc_modulation.generators.modulation import (
    CarrierParams,
    ModulationParams,
    am_harmonic_sidebands,
    am_sidebands,
    gen_am,
    gen_am_harmonic,
    gen_comb,
    gen_fm,
    harmonic_signal,
)
from lc_modulation.generators.scenarios import gen_demo, gen_scenario, sample_uniform_times, scenario_truth
from lc_modulation.generators.simulation_executor import SimulationExecutor
from lc_modulation.spectral.ar2 import Ar2Params, ar2_autocovariance


CARRIER = CarrierParams(amplitude=1.3, frequency=2.1, phase=0.4)
MOD = ModulationParams(frequency=0.05, am_amplitude=0.3, fm_amplitude=0.2, fm_deviation=0.5, phase=1.1)


def test_am_sidebands(rng):
    t = rng.uniform(0.0, 100.0, 50)
    np.testing.assert_allclose(gen_am(CARRIER, MOD, t), am_sidebands(CARRIER, MOD, t), atol=1e-12)


def test_zero_modulation_gives_carrier(rng):
    t = rng.uniform(0.0, 100.0, 50)
    quiet = ModulationParams(frequency=0.05)
    carrier = CARRIER.amplitude * np.sin(2 * np.pi * CARRIER.frequency * t + CARRIER.phase)
    np.testing.assert_allclose(gen_am(CARRIER, quiet, t), carrier, atol=1e-12)
    np.testing.assert_allclose(gen_fm(CARRIER, quiet, t), carrier, atol=1e-12)
    np.testing.assert_allclose(gen_comb(CARRIER, quiet, t), carrier, atol=1e-12)


def test_multi_harmonic_sidebands(rng):
    t = rng.uniform(0.0, 70.0, 80)
    harmonics = [(2.0, 0.4, 0.1), (4.0, 0.17, 2.5)]
    np.testing.assert_allclose(gen_am_harmonic(0.01, harmonics, 1.2, 0.05, 4.7, t),
                               am_harmonic_sidebands(0.01, harmonics, 1.2, 0.05, 4.7, t), atol=1e-12)


def test_carrier_frequency_must_be_positive():
    with pytest.raises(ValueError):
        CarrierParams(amplitude=1.0, frequency=0.0)


def test_benko_components_reassemble(rng):
    t = rng.uniform(0.0, 60.0, 40)
    p = BenkoParams(
        f0=2.0, f_m=0.05, m0=0.02, trend_terms=((0.01, 0.3),),
        harmonics=((0.4, 0.1), (0.17, 2.5)),
        am_terms=(((0.05, 0.2), (0.01, 1.0)), ((0.02, 0.5),)),
        fm_terms=(((0.1, 0.0),), ((0.2, 1.5), (0.05, 0.1))),
    )
    u, h = benko_components(p, t)
    np.testing.assert_allclose(harmonic_signal(u, h, p.frequencies, t), benko_model_eval(p, t), atol=1e-12)


def test_benko2011_components_reassemble(rng):
    t = rng.uniform(0.0, 60.0, 40)
    p = Benko2011Params(f0=2.0, f_m=0.05, a0=0.01, am_offset=1.1,
                        harmonics=((0.4, 0.1), (0.17, 2.5), (0.13, 5.0)),
                        am_terms=((0.1, 0.3),), fm_terms=((0.05, 1.0), (0.01, 0.2)))
    v, w = benko2011_components(p, t)
    np.testing.assert_allclose(harmonic_signal(v, w, p.frequencies, t), benko2011_eval(p, t), atol=1e-12)


def test_benko_term_count_checked():
    with pytest.raises(ValueError):
        BenkoParams(f0=2.0, f_m=0.05, harmonics=((0.4, 0.1),), am_terms=((), ()))


def test_sinusoidal_scenario_values():
    truth = scenario_truth("sinusoidal", [0.0, 0.25])
    np.testing.assert_allclose(truth.trend, [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(truth.amplitudes[:, :, 0], [[1.0, 1.0], [0.0, 0.0]], atol=1e-15)
    assert truth.frequencies == [20.0, 50.0]


def test_polynomial_scenario_values():
    truth = scenario_truth("polynomial", [0.0, 1.0])
    np.testing.assert_allclose(truth.trend, [0.0, 0.7])
    np.testing.assert_allclose(truth.amplitudes[:, 0], [[0.0, -1.0], [-0.5, 1.0]])
    np.testing.assert_allclose(truth.amplitudes[:, 1], [[0.0, 1.3], [0.5, -0.5]])


def test_scenario_is_deterministic():
    first, _ = gen_scenario("polynomial", n=3, seed=5)
    second, _ = gen_scenario("polynomial", n=3, seed=5)
    np.testing.assert_array_equal(first.times, second.times)
    np.testing.assert_array_equal(first.values, second.values)


def test_noiseless_scenario_equals_truth():
    ts, truth = gen_scenario("sinusoidal", n=50, seed=1, sigma2=0.0)
    np.testing.assert_allclose(ts.values, truth.mu)
    assert list(truth.columns()) == ["time", "mu", "m", "g11", "g21", "g12", "g22"]


def test_demo_truth_matches_its_formula():
    t = np.array([0.0, 10.0, 37.5, 100.0])
    expected = (-0.05 * t + (0.0002 * t - 0.0003 * t ** 2) * np.cos(2 * np.pi * 0.1 * t)
                + (1 - 0.0005 * t) * np.sin(2 * np.pi * 0.1 * t))
    np.testing.assert_allclose(scenario_truth("demo", t).mu, expected, atol=1e-12)

    ts, truth = gen_demo(n=40, seed=8, sigma2=0.0)
    np.testing.assert_allclose(ts.values, truth.mu)


def test_uniform_times():
    times = sample_uniform_times(10_000, 0.0, 1.0, seed=3)
    assert np.all(np.diff(times) > 0)
    assert abs(times.mean() - 0.5) < 0.02
    with pytest.raises(BadRange):
        sample_uniform_times(5, 1.0, 1.0)


def test_blazhko_modulation_factor():
    p = BlazhkoParams()
    assert p.u_c == pytest.approx(0.1 / 1.2)
    t = np.linspace(0.0, 20.0, 200001)
    assert np.max(p.modulation_factor(t)) == pytest.approx(2.2, abs=1e-6)


def test_blazhko_noiseless_reconstruction():
    ts, truth = gen_blazhko_am(BlazhkoParams(sigma2=0.0), seed=2, n=300, n_design=3000)
    np.testing.assert_allclose(ts.values, truth.mu, atol=1e-12)
    assert truth.amplitudes.shape == (2, 4, 300)
    assert truth.frequencies == [2.0, 4.0, 6.0, 8.0]


def test_blazhko_design_includes_endpoints():
    design = blazhko_times(n=50, n_design=500, seed=4)
    assert len(design.times) == 50
    assert design.times[0] == pytest.approx(0.03819)
    assert design.times[-1] == pytest.approx(69.37847)
    indices = np.rint((design.times - design.t0) / design.delta)
    np.testing.assert_allclose(design.times, design.t0 + indices * design.delta)


def test_blazhko_rejects_bad_parameters():
    with pytest.raises(ValueError):
        BlazhkoParams(h_depth=0.0)
    with pytest.raises(ValueError):
        blazhko_times(n=5, n_design=4)


def test_ar2_sample_covariance():
    p = Ar2Params()
    path = simulate_ar2(p, 200_000, seed=9)
    gamma = ar2_autocovariance(p, 1)
    centered = path - path.mean()
    lag1 = np.mean(centered[1:] * centered[:-1])
    assert lag1 == pytest.approx(gamma[1], rel=0.05)


def test_ar2_blocks():
    sample = gen_ar2_blocks(N=500, n_blocks=50, block_len=10, keep=30, seed=0)
    assert len(sample.sample) == 300
    assert len(sample.full) == 500
    assert np.all(np.diff(sample.blocks) > 0)
    np.testing.assert_array_equal(sample.sample.values, sample.full.values[sample.indices - 1])
    assert sample.full.times[0] == pytest.approx(0.67 + 0.33)


def test_ar2_keep_all_blocks():
    sample = gen_ar2_blocks(N=100, n_blocks=10, block_len=10, keep=10, seed=0)
    np.testing.assert_array_equal(sample.sample.values, sample.full.values)


def test_ar2_shared_blocks():
    first = gen_ar2_blocks(N=100, n_blocks=10, block_len=10, keep=4, seed=1, blocks=[7, 2, 3, 0])
    second = gen_ar2_blocks(N=100, n_blocks=10, block_len=10, keep=4, seed=2, blocks=[0, 2, 3, 7])
    assert first.blocks.tolist() == [0, 2, 3, 7]
    np.testing.assert_array_equal(first.sample.times, second.sample.times)
    assert not np.array_equal(first.sample.values, second.sample.values)


@pytest.mark.parametrize("kwargs", [
    dict(N=100, n_blocks=10, block_len=9),
    dict(N=100, n_blocks=10, block_len=10, keep=11),
    dict(N=100, n_blocks=10, block_len=10, keep=2, blocks=[3, 3]),
    dict(N=100, n_blocks=10, block_len=10, keep=2, blocks=[3, 10]),
])
def test_ar2_bad_partition(kwargs):
    with pytest.raises(BadPartition):
        gen_ar2_blocks(seed=0, **kwargs)


def test_choose_blocks():
    assert choose_blocks(5, 5, seed=0).tolist() == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("kind", list(SimulationKind))
def test_executor_runs_every_kind(kind):
    extra = {"n": 100, "n_design": 500} if kind is not SimulationKind.AR2 else \
        {"n": 100, "n_blocks": 10, "block_len": 10, "keep": 5}
    output = SimulationExecutor().execute(SimulationConfig(kind=kind, seed=3, **extra))
    assert output.kind is kind
    assert set(SIMULATION_INFO[kind].truth_columns) <= set(output.truth)
    assert list(output.data_columns()) == ["time", "value"]


def test_executor_is_deterministic():
    config = SimulationConfig(kind="blazhko", seed=11, n=60, n_design=600)
    first = SimulationExecutor().execute(config)
    second = SimulationExecutor().execute(config)
    np.testing.assert_array_equal(first.series.values, second.series.values)
    assert first.meta["delta"] == pytest.approx((69.37847 - 0.03819) / 599)
