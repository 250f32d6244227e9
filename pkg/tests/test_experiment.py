import numpy as np
import pytest

from app.core.exceptions import DegenerateChannelError, ExportError
from app.core.numerics import db
from app.models.enums import SchemeId, SweepAxis
from app.schemas.results import SweepResult, SweepRow
from app.schemas.scenario import ScenarioConfig
from app.schemas.system import SystemConfig
from app.services.channel_service import path_gain
from app.services.experiment_service import (
    budget_split,
    expected_rx_power,
    export_csv,
    normalized_mse,
    power_for_snr,
    run_sweep,
)
from app.services.scheme2_service import mse_gain_db


@pytest.fixture
def config():
    """Default simulation setup."""
    return SystemConfig()


def make_scenario(base=None, grid=(10.0,), trials=20, seed=3, schemes=None, axis=SweepAxis.SNR_DB, **kwargs):
    return ScenarioConfig(
        base=base or SystemConfig(),
        sweep_axis=axis,
        grid=list(grid),
        trials=trials,
        seed=seed,
        schemes=schemes or [SchemeId.SCHEME1_OPTIMAL, SchemeId.SCHEME2_OPTIMAL],
        **kwargs,
    )


def rows_by_scheme(result):
    table = {}
    for row in result.rows:
        table.setdefault(row.scheme, []).append(row)
    return table


# ============================================================
# Calibration
# ============================================================

def test_expected_rx_power(config):
    reflected = config.M0 * config.gamma0 ** 2 * config.D1 ** -config.alpha1 * config.D2 ** -config.alpha2
    direct = path_gain(config.gamma0, config.D3, config.alpha3)
    assert expected_rx_power(config) == pytest.approx(reflected + direct)

    doubled = SystemConfig(M0=2 * config.M0)
    assert expected_rx_power(doubled) - direct == pytest.approx(2 * reflected)


def test_power_for_snr(config):
    P0 = power_for_snr(config, 0.0)
    assert P0 * expected_rx_power(config) == pytest.approx(config.sigma2 * (config.N + config.L_cp))
    assert power_for_snr(config, 10.0) == pytest.approx(10 * P0)

    P = power_for_snr(config, 13.7)
    snr = db(P * expected_rx_power(config) / (config.sigma2 * (config.N + config.L_cp)))
    assert abs(snr - 13.7) < 1e-12


def test_budget_split(config):
    gamma1, gamma2, eta1, eta2 = budget_split(config, 5.0)
    assert (eta1, eta2) == (256, 136)
    assert gamma1 * eta1 == pytest.approx(5.0)
    assert gamma2 * eta2 == pytest.approx(5.0)


def test_normalized_mse():
    assert normalized_mse(0.0, 3.0) == 0.0
    assert normalized_mse(2.5, 2.5) == 1.0
    assert normalized_mse(1.0 + 3.0, 2.0 + 6.0) == 0.5


def test_normalized_mse_zero_power():
    with pytest.raises(DegenerateChannelError):
        normalized_mse(1.0, 0.0)


# ============================================================
# Sweeps
# ============================================================

def test_noiseless_limit():
    result = run_sweep(make_scenario(grid=[200.0], trials=1), workers=1)
    assert len(result.rows) == 2
    for row in result.rows:
        assert row.mse_sim <= 1e-12


def test_one_row_per_grid_point_and_scheme():
    schemes = list(SchemeId)
    result = run_sweep(make_scenario(grid=[0.0, 20.0], trials=2, schemes=schemes), workers=1)
    assert [(r.axis_value, r.scheme) for r in result.rows] == [(v, s) for v in (0.0, 20.0) for s in schemes]
    assert all(r.mse_sim > 0 and r.mse_analytic > 0 and r.trials == 2 for r in result.rows)


def test_deterministic_across_worker_counts():
    scenario = make_scenario(grid=[5.0, 15.0], trials=8, schemes=list(SchemeId))
    serial = run_sweep(scenario, workers=1)
    parallel = run_sweep(scenario, workers=4)
    for a, b in zip(serial.rows, parallel.rows):
        assert a.mse_sim == b.mse_sim
        assert a.mse_analytic == b.mse_analytic


def test_scheme_streams_are_independent_of_selection():
    both = run_sweep(make_scenario(trials=5), workers=1)
    single = run_sweep(make_scenario(trials=5, schemes=[SchemeId.SCHEME2_OPTIMAL]), workers=1)
    assert rows_by_scheme(both)[SchemeId.SCHEME2_OPTIMAL][0].mse_sim == single.rows[0].mse_sim


def test_simulated_matches_analytic_for_single_tap():
    result = run_sweep(make_scenario(grid=[0.0, 10.0, 20.0], trials=200), workers=2)
    for row in result.rows:
        assert row.mse_sim == pytest.approx(row.mse_analytic, rel=0.05)


def test_gain_law_between_optimal_curves(config):
    result = run_sweep(make_scenario(grid=[0.0, 10.0, 20.0], trials=200), workers=2)
    gamma1, gamma2, _, _ = budget_split(config, 1.0)
    gain = mse_gain_db(gamma1, gamma2, config.N, config.M)

    table = rows_by_scheme(result)
    for s1, s2 in zip(table[SchemeId.SCHEME1_OPTIMAL], table[SchemeId.SCHEME2_OPTIMAL]):
        assert s1.mse_sim_db - s2.mse_sim_db == pytest.approx(gain, abs=0.3)


def test_benchmarks_lie_above_optimal_designs():
    result = run_sweep(make_scenario(grid=[0.0, 20.0], trials=50, schemes=list(SchemeId)), workers=2)
    table = rows_by_scheme(result)
    for i in range(2):
        for optimal, benchmarks in [
            (SchemeId.SCHEME1_OPTIMAL, [SchemeId.SCHEME1_RANDOM_REFLECTION, SchemeId.SCHEME1_RANDOM_PILOT]),
            (SchemeId.SCHEME2_OPTIMAL, [SchemeId.SCHEME2_RANDOM_REFLECTION, SchemeId.SCHEME2_RANDOM_PILOT]),
        ]:
            for benchmark in benchmarks:
                assert table[benchmark][i].mse_sim >= table[optimal][i].mse_sim
                assert table[benchmark][i].mse_analytic >= table[optimal][i].mse_analytic


def test_rician_factor_sweep():
    base = SystemConfig(L1=7, L2=2)
    scenario = make_scenario(
        base=base,
        axis=SweepAxis.KAPPA_DB,
        grid=[0.0, 10.0, 20.0, 30.0, 40.0],
        trials=400,
        snr_db=20.0,
    )
    table = rows_by_scheme(run_sweep(scenario, workers=2))
    scheme2 = [row.mse_sim for row in table[SchemeId.SCHEME2_OPTIMAL]]
    scheme1 = [row.mse_sim_db for row in table[SchemeId.SCHEME1_OPTIMAL]]

    assert scheme2[0] > scheme2[1] > scheme2[2]
    assert scheme2[3] / scheme2[4] <= 2.0
    assert max(scheme1) - min(scheme1) < 1.0


def test_rician_override_on_snr_axis():
    base = SystemConfig(L1=7, L2=2)
    los = run_sweep(make_scenario(base=base, trials=50, kappa_db=40.0), workers=1)
    nlos = run_sweep(make_scenario(base=base, trials=50, kappa_db=0.0), workers=1)
    assert rows_by_scheme(nlos)[SchemeId.SCHEME2_OPTIMAL][0].mse_sim > rows_by_scheme(los)[SchemeId.SCHEME2_OPTIMAL][0].mse_sim


# ============================================================
# CSV export
# ============================================================

def test_export_empty_result(tmp_path):
    path = tmp_path / "empty.csv"
    export_csv(SweepResult(axis=SweepAxis.SNR_DB, seed=0, rows=[]), path)
    assert path.read_text() == "axis,scheme,mse_sim,mse_analytic,trials,seconds\n"


def test_export_rows(tmp_path):
    rows = [
        SweepRow(axis_value=0.0, scheme=SchemeId.SCHEME1_OPTIMAL, mse_sim=0.1, mse_analytic=0.1 / 3, trials=4, seconds=1.25),
        SweepRow(axis_value=5.0, scheme=SchemeId.SCHEME2_OPTIMAL, mse_sim=1e-3, mse_analytic=2e-3, trials=4, seconds=0.5),
    ]
    result = SweepResult(axis=SweepAxis.SNR_DB, seed=0, rows=rows)
    path = tmp_path / "rows.csv"

    export_csv(result, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 3
    assert lines[1] == f"0.0,scheme1_optimal,0.1,{0.1 / 3!r},4,0.0"

    export_csv(result, path, include_timings=True)
    assert path.read_text().splitlines()[1].endswith(",1.25")


def test_export_is_reproducible(tmp_path):
    scenario = make_scenario(trials=3)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    export_csv(run_sweep(scenario, workers=1), first)
    export_csv(run_sweep(scenario, workers=3), second)
    assert first.read_bytes() == second.read_bytes()


def test_export_unwritable_path(tmp_path):
    with pytest.raises(ExportError) as exc_info:
        export_csv(SweepResult(axis=SweepAxis.SNR_DB, seed=0), tmp_path / "missing" / "out.csv")
    assert "out.csv" in str(exc_info.value)
