"""
Experiment Service

Monte-Carlo harness: SNR calibration, budget split between the two schemes,
normalized-MSE accumulation over channel realizations and CSV export.
"""

import csv
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import DegenerateChannelError, ExportError, SingularSystemError
from app.core.numerics import undb
from app.models.channel import ChannelRealization, LinkSet
from app.models.enums import ReceptionModel, SchemeId, SweepAxis
from app.schemas.results import SweepResult, SweepRow
from app.schemas.scenario import ScenarioConfig
from app.schemas.system import SystemConfig
from app.services.channel_service import cascade, path_gain, sample_link_set
from app.services.scheme1_service import (
    Scheme1Estimator,
    analytic_mse_scheme1,
    simulate_rx_scheme1,
    training_duration_scheme1,
)
from app.services.scheme2_service import (
    Scheme2Estimator,
    analytic_mse_scheme2,
    simulate_rx_scheme2,
    training_duration_scheme2,
)
from app.services.training_service import build_design


logger = logging.getLogger(__name__)

# Fixed order of the per-scheme random streams within a trial.
ALL_SCHEMES: List[SchemeId] = list(SchemeId)

MAX_DESIGN_RETRIES = 10

CSV_HEADER = ["axis", "scheme", "mse_sim", "mse_analytic", "trials", "seconds"]


# ============================================================
# Power calibration
# ============================================================

def expected_rx_power(config: SystemConfig) -> float:
    """E||d + Q theta||^2 = M0 gamma0^2 D1^-a1 D2^-a2 + gamma0 D3^-a3."""
    reflected = config.M0 * path_gain(config.gamma0, config.D1, config.alpha1) * path_gain(config.gamma0, config.D2, config.alpha2)
    return reflected + path_gain(config.gamma0, config.D3, config.alpha3)


def power_for_snr(config: SystemConfig, snr_db: float) -> float:
    """Training budget P giving the requested per-sample SNR over N + L_cp samples."""
    return undb(snr_db) * config.sigma2 * (config.N + config.L_cp) / expected_rx_power(config)


def budget_split(config: SystemConfig, P: float) -> Tuple[float, float, int, int]:
    """Per-sample powers (gamma1, gamma2) and durations (eta1, eta2) for a shared budget P."""
    eta1 = training_duration_scheme1(config)
    eta2 = training_duration_scheme2(config)
    return P / eta1, P / eta2, eta1, eta2


def normalized_mse(errors_sq_sum: float, channel_power_sum: float) -> float:
    """Accumulated squared error over accumulated true channel power."""
    if channel_power_sum <= 0:
        raise DegenerateChannelError("accumulated channel power is zero")
    return errors_sq_sum / channel_power_sum


# ============================================================
# Sweep execution
# ============================================================

@dataclass(frozen=True)
class _GridPoint:
    """Everything shared read-only by the trials of one grid point."""
    index: int
    value: float
    config: SystemConfig
    gamma1: float
    gamma2: float
    optimal: Dict[SchemeId, Tuple[object, float]]  # estimator, analytic per-coefficient MSE


@dataclass(frozen=True)
class _SchemeOutcome:
    error_sq: float
    analytic_sq: float
    seconds: float


@dataclass(frozen=True)
class _TrialOutcome:
    power: float
    schemes: Dict[SchemeId, _SchemeOutcome]


def _point_config(scenario: ScenarioConfig, value: float) -> Tuple[SystemConfig, float]:
    """System config and SNR (dB) at one grid value."""
    base = scenario.base
    if scenario.sweep_axis == SweepAxis.KAPPA_DB:
        return base.model_copy(update={"kappa": undb(value)}), scenario.snr_db
    if scenario.kappa_db is not None:
        base = base.model_copy(update={"kappa": undb(scenario.kappa_db)})
    return base, value


def _prepare_point(scenario: ScenarioConfig, index: int, value: float) -> _GridPoint:
    config, snr_db = _point_config(scenario, value)
    P = power_for_snr(config, snr_db)
    gamma1, gamma2, _, _ = budget_split(config, P)

    optimal = {}
    for scheme in scenario.schemes:
        if scheme.is_random:
            continue
        design = build_design(scheme, config, gamma1 if scheme.is_scheme1 else gamma2, rng=None)
        if scheme.is_scheme1:
            optimal[scheme] = (Scheme1Estimator(design), analytic_mse_scheme1(design, config.sigma2))
        else:
            optimal[scheme] = (Scheme2Estimator(design), analytic_mse_scheme2(design, config.sigma2))
    return _GridPoint(index=index, value=value, config=config, gamma1=gamma1, gamma2=gamma2, optimal=optimal)


def _draw_random_design(scheme: SchemeId, point: _GridPoint, rng: np.random.Generator):
    """Random benchmark design with redraws while the LS system is singular."""
    config = point.config
    gamma = point.gamma1 if scheme.is_scheme1 else point.gamma2
    for attempt in range(MAX_DESIGN_RETRIES + 1):
        design = build_design(scheme, config, gamma, rng)
        try:
            if scheme.is_scheme1:
                return Scheme1Estimator(design), analytic_mse_scheme1(design, config.sigma2)
            return Scheme2Estimator(design), analytic_mse_scheme2(design, config.sigma2)
        except SingularSystemError:
            logger.warning("Singular %s design on attempt %d, redrawing", scheme.value, attempt + 1)
    raise SingularSystemError(f"{scheme.value}: no full-rank design after {MAX_DESIGN_RETRIES} retries")


def _run_scheme(
    scheme: SchemeId,
    point: _GridPoint,
    links: LinkSet,
    realization: ChannelRealization,
    rng: np.random.Generator,
) -> _SchemeOutcome:
    start = time.perf_counter()
    config = point.config
    if scheme in point.optimal:
        estimator, analytic = point.optimal[scheme]
    else:
        estimator, analytic = _draw_random_design(scheme, point, rng)

    truth = realization.stacked()
    if scheme.is_scheme1:
        obs = simulate_rx_scheme1(estimator.design, realization, config.sigma2, rng)
        estimate = estimator.estimate(obs).stacked()
    else:
        obs = simulate_rx_scheme2(estimator.design, links, config.sigma2, rng, ReceptionModel.PHYSICAL)
        estimate = estimator.estimate(obs.y).lambda_hat

    error_sq = float(np.sum(np.abs(estimate - truth) ** 2))
    return _SchemeOutcome(
        error_sq=error_sq,
        analytic_sq=analytic * config.num_coefficients,
        seconds=time.perf_counter() - start,
    )


def _run_trial(scenario: ScenarioConfig, point: _GridPoint, trial: int) -> _TrialOutcome:
    """One channel realization seen by every scheme, each with its own stream."""
    streams = np.random.SeedSequence(scenario.seed, spawn_key=(point.index, trial)).spawn(1 + len(ALL_SCHEMES))
    links = sample_link_set(point.config, np.random.default_rng(streams[0]))
    realization = cascade(links, point.config.L)

    outcomes = {}
    for scheme in scenario.schemes:
        rng = np.random.default_rng(streams[1 + ALL_SCHEMES.index(scheme)])
        outcomes[scheme] = _run_scheme(scheme, point, links, realization, rng)
    return _TrialOutcome(power=realization.power(), schemes=outcomes)


def _worker_count(workers: Optional[int]) -> int:
    if workers is None:
        workers = settings.SIM_THREADS or os.cpu_count() or 1
    return max(1, int(workers))


def run_sweep(scenario: ScenarioConfig, workers: Optional[int] = None) -> SweepResult:
    """
    Monte-Carlo sweep over the scenario grid.

    Results depend only on the scenario and its seed: trial outcomes are
    reduced in trial order whatever the number of workers.
    """
    workers = _worker_count(workers)
    logger.info(
        "Sweep over %s with %d points, %d trials, %d schemes, %d workers",
        scenario.sweep_axis.value, len(scenario.grid), scenario.trials, len(scenario.schemes), workers,
    )

    rows: List[SweepRow] = []
    for index, value in enumerate(scenario.grid):
        start = time.perf_counter()
        point = _prepare_point(scenario, index, value)

        def trial_fn(trial: int) -> _TrialOutcome:
            return _run_trial(scenario, point, trial)

        if workers == 1:
            outcomes = [trial_fn(t) for t in range(scenario.trials)]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(trial_fn, range(scenario.trials)))

        power_sum = 0.0
        for outcome in outcomes:
            power_sum += outcome.power

        for scheme in scenario.schemes:
            error_sum = 0.0
            analytic_sum = 0.0
            seconds = 0.0
            for outcome in outcomes:
                error_sum += outcome.schemes[scheme].error_sq
                analytic_sum += outcome.schemes[scheme].analytic_sq
                seconds += outcome.schemes[scheme].seconds
            rows.append(SweepRow(
                axis_value=value,
                scheme=scheme,
                mse_sim=normalized_mse(error_sum, power_sum),
                mse_analytic=normalized_mse(analytic_sum, power_sum),
                trials=scenario.trials,
                seconds=seconds,
            ))
        logger.info("Grid point %s = %g done in %.2f s", scenario.sweep_axis.value, value, time.perf_counter() - start)

    return SweepResult(axis=scenario.sweep_axis, seed=scenario.seed, rows=rows)


# ============================================================
# Export
# ============================================================

def export_csv(result: SweepResult, path: Union[str, Path], include_timings: bool = False) -> None:
    """
    Write the sweep as CSV with full double precision.

    The seconds column holds 0.0 unless include_timings is set, so that a
    fixed seed reproduces the file byte for byte.
    """
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for row in result.rows:
                writer.writerow([
                    repr(float(row.axis_value)),
                    row.scheme.value,
                    repr(float(row.mse_sim)),
                    repr(float(row.mse_analytic)),
                    str(row.trials),
                    repr(float(row.seconds)) if include_timings else "0.0",
                ])
    except OSError as e:
        raise ExportError(str(e), str(path)) from e
