import json

import pytest

from lc_modulation.cli import main, parse_floats, parse_tau_groups


def _single(directory, pattern):
    matches = sorted(directory.glob(pattern))
    assert len(matches) == 1, matches
    return matches[0]


@pytest.fixture
def sinusoidal_file(tmp_path):
    out = tmp_path / "sim"
    assert main(["simulate", "--kind", "sinusoidal", "--n", "300", "--seed", "1",
                 "--output-dir", str(out)]) == 0
    return _single(out, "simulate_*_data.csv")


def test_parse_floats_expands_ranges():
    assert parse_floats("1,2.5") == [1.0, 2.5]
    values = parse_floats("0:200:41")
    assert len(values) == 41
    assert values[6] == pytest.approx(30.0)
    with pytest.raises(ValueError):
        parse_floats("0:1")


def test_parse_tau_groups():
    assert parse_tau_groups("0,1;5") == [[0.0, 1.0], [5.0]]


def test_simulate_writes_data_truth_and_echo(tmp_path, capsys):
    assert main(["simulate", "--kind", "polynomial", "--n", "50", "--seed", "3",
                 "--output-dir", str(tmp_path)]) == 0
    printed = capsys.readouterr().out.split()
    assert len(printed) == 3
    truth = _single(tmp_path, "simulate_*_truth.csv").read_text().splitlines()
    assert truth[0] == "time,mu,m,g11,g21,g12,g22"
    assert len(truth) == 51
    echo = json.loads(_single(tmp_path, "simulate_*[0-9a-f].json").read_text())
    assert echo["config"]["simulation"]["seed"] == 3


def test_simulate_is_byte_identical(tmp_path):
    args = ["simulate", "--kind", "blazhko", "--n", "80", "--n-design", "800", "--seed", "5",
            "--output-dir", str(tmp_path)]
    assert main(args) == 0
    first = {path.name: path.read_bytes() for path in tmp_path.iterdir()}
    assert main(args) == 0
    second = {path.name: path.read_bytes() for path in tmp_path.iterdir()}
    assert first == second


def test_fit_reports_and_bands(sinusoidal_file, tmp_path, capsys):
    capsys.readouterr()
    out = tmp_path / "fit"
    code = main(["fit", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "30",
                 "--degree", "3", "--penalty-order", "2", "--tau", "50,1,2,10,1",
                 "--output-dir", str(out)])
    assert code == 0
    printed = capsys.readouterr().out.split()
    assert len(printed) == 7
    report = json.loads(_single(out, "fit_*[0-9a-f].json").read_text())
    assert report["n_obs"] == 300
    assert report["n_coefficients"] == 33 * 5
    assert report["edf"] < report["n_coefficients"]
    curves = _single(out, "fit_*_curves.csv").read_text().splitlines()
    assert curves[0] == "time,y,fitted,lower,upper,residual"


def test_fit_without_penalty_reports_column_aic(sinusoidal_file, tmp_path):
    out = tmp_path / "fit"
    assert main(["fit", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "10",
                 "--tau", "0", "--output-dir", str(out)]) == 0
    report = json.loads(_single(out, "fit_*[0-9a-f].json").read_text())
    c = report["n_coefficients"]
    assert report["aic"] == pytest.approx(report["mse"] + 2 * c * report["sigma2_0"] / report["n_obs"],
                                          rel=1e-8)


def test_fit_config_file_round_trip(sinusoidal_file, tmp_path):
    first = tmp_path / "first"
    assert main(["fit", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "10",
                 "--tau", "1", "--output-dir", str(first)]) == 0
    report = _single(first, "fit_*[0-9a-f].json")
    second = tmp_path / "second"
    assert main(["fit", "--config", str(report), "--output-dir", str(second)]) == 0
    assert (_single(second, "fit_*_curves.csv").read_text()
            == _single(first, "fit_*_curves.csv").read_text())


def test_tune_single_configuration(sinusoidal_file, tmp_path):
    assert main(["tune", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "10",
                 "--tau", "5", "--output-dir", str(tmp_path)]) == 0
    lines = _single(tmp_path, "tune_*_aic.csv").read_text().splitlines()
    assert len(lines) == 2
    result = json.loads(_single(tmp_path, "tune_*[0-9a-f].json").read_text())
    assert result["best"]["group_taus"] == [5.0]


def test_spectrum_of_block_sampled_ar2(tmp_path):
    sim = tmp_path / "sim"
    assert main(["simulate", "--kind", "ar2", "--seed", "2", "--output-dir", str(sim)]) == 0
    meta = json.loads(_single(sim, "simulate_*[0-9a-f].json").read_text())["meta"]
    data = _single(sim, "simulate_*_data.csv")

    out = tmp_path / "spec"
    assert main(["spectrum", "--input", str(data), "--t0", str(meta["t0"]), "--delta", str(meta["delta"]),
                 "--n-grid", str(meta["n_grid"]), "--band", "0.5,4.0", "--output-dir", str(out)]) == 0
    psd = _single(out, "spectrum_*_psd.csv").read_text().splitlines()
    assert psd[0] == "lambda,f,I,W_real,raw,smoothed"
    assert len(psd) == 501
    whiteness = json.loads(_single(out, "spectrum_*_whiteness.json").read_text())
    assert whiteness["white"] is False


def test_missing_input_file(tmp_path, capsys):
    code = main(["fit", "--input", str(tmp_path / "absent.csv"), "--freqs", "1",
                 "--output-dir", str(tmp_path)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_penalty_order_too_high(sinusoidal_file, tmp_path):
    assert main(["fit", "--input", str(sinusoidal_file), "--knots", "1", "--degree", "1",
                 "--penalty-order", "2", "--output-dir", str(tmp_path)]) == 2


def test_off_grid_spectrum_input(sinusoidal_file, tmp_path):
    assert main(["spectrum", "--input", str(sinusoidal_file), "--t0", "0", "--delta", "0.001",
                 "--output-dir", str(tmp_path)]) == 2


def test_singular_fit_is_numerical_failure(tmp_path):
    sim = tmp_path / "sim"
    assert main(["simulate", "--kind", "sinusoidal", "--n", "20", "--seed", "1",
                 "--output-dir", str(sim)]) == 0
    data = _single(sim, "simulate_*_data.csv")
    assert main(["fit", "--input", str(data), "--freqs", "20,50", "--knots", "30", "--tau", "0",
                 "--output-dir", str(tmp_path / "fit")]) == 3


def test_bad_level(sinusoidal_file, tmp_path):
    assert main(["fit", "--input", str(sinusoidal_file), "--level", "1.5",
                 "--output-dir", str(tmp_path)]) == 2


def test_unparseable_argument_exits_with_usage_code():
    with pytest.raises(SystemExit) as excinfo:
        main(["fit", "--knots", "many"])
    assert excinfo.value.code == 2


def _rerun_bytes(args, directory):
    assert main(args) == 0
    first = {path.name: path.read_bytes() for path in directory.iterdir()}
    assert main(args) == 0
    second = {path.name: path.read_bytes() for path in directory.iterdir()}
    assert first == second
    return first


def test_fit_is_byte_identical(sinusoidal_file, tmp_path):
    out = tmp_path / "fit"
    written = _rerun_bytes(["fit", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "10",
                            "--tau", "2", "--output-dir", str(out)], out)
    assert len(written) == 7


def test_threaded_tune_is_byte_identical(sinusoidal_file, tmp_path):
    base = ["tune", "--input", str(sinusoidal_file), "--freqs", "20,50", "--knots", "8,10",
            "--tau", "0.5,5,50"]
    threaded = tmp_path / "threaded"
    _rerun_bytes(base + ["--threads", "2", "--output-dir", str(threaded)], threaded)
    serial = tmp_path / "serial"
    assert main(base + ["--threads", "1", "--output-dir", str(serial)]) == 0
    assert (_single(threaded, "tune_*_aic.csv").read_bytes()
            == _single(serial, "tune_*_aic.csv").read_bytes())


def test_spectrum_is_byte_identical(tmp_path):
    sim = tmp_path / "sim"
    assert main(["simulate", "--kind", "ar2", "--seed", "6", "--output-dir", str(sim)]) == 0
    meta = json.loads(_single(sim, "simulate_*[0-9a-f].json").read_text())["meta"]
    out = tmp_path / "spec"
    _rerun_bytes(["spectrum", "--input", str(_single(sim, "simulate_*_data.csv")), "--t0", str(meta["t0"]),
                  "--delta", str(meta["delta"]), "--n-grid", str(meta["n_grid"]), "--output-dir", str(out)], out)


def test_spectrum_with_count_normalization(tmp_path):
    sim = tmp_path / "sim"
    assert main(["simulate", "--kind", "ar2", "--seed", "2", "--output-dir", str(sim)]) == 0
    meta = json.loads(_single(sim, "simulate_*[0-9a-f].json").read_text())["meta"]
    out = tmp_path / "spec"
    assert main(["spectrum", "--input", str(_single(sim, "simulate_*_data.csv")), "--t0", str(meta["t0"]),
                 "--delta", str(meta["delta"]), "--n-grid", str(meta["n_grid"]),
                 "--normalization", "count", "--output-dir", str(out)]) == 0
    echo = json.loads(_single(out, "spectrum_*_whiteness.json").read_text())
    assert echo["config"]["spectrum"]["normalization"] == "count"
