"""
Command-line interface

    python -m app simulate --scenario fig3.json --out fig3.csv
    python -m app verify --scenario fig3.json [--export design.csv]
    python -m app gain --scenario fig3.json
    python -m app scenarios

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 I/O failure.
"""

import argparse
import logging
import sys
from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import ExportError, ScenarioError, SimulationError
from app.services.experiment_service import export_csv, run_sweep
from app.services.report_service import build_gain_report, build_verify_report, export_optimal_designs
from app.services.scenario_service import list_scenarios, load_scenario, load_scenario_file


EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_IO_ERROR = 3

logger = logging.getLogger("app.cli")


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


# ============================================================
# Subcommands
# ============================================================

def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario, trials=args.trials, seed=args.seed)
    result = run_sweep(scenario)
    export_csv(result, args.out, include_timings=args.timings or settings.CSV_TIMINGS)

    print(f"{'axis':>8}  {'scheme':<27} {'sim (dB)':>10} {'analytic (dB)':>14} {'gap (dB)':>9}")
    print("-" * 72)
    for row in result.rows:
        gap = row.mse_sim_db - row.mse_analytic_db
        print(
            f"{row.axis_value:>8.2f}  {row.scheme.value:<27} "
            f"{row.mse_sim_db:>10.2f} {row.mse_analytic_db:>14.2f} {gap:>9.2f}"
        )
    print(f"\nWrote {len(result.rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_scenario_file(args.scenario).system
    report = build_verify_report(config)

    print("Orthogonality residuals (Frobenius, relative to ||c I||):")
    for check in report.checks:
        status = "ok" if check.passed else "FAIL"
        print(f"  {check.name:<20} {check.residual:>12.3e} {check.relative:>12.3e}  {status}")
    print()
    print(f"Training duration: eta0 = {report.eta0}, eta1 = {report.eta1}, eta2 = {report.eta2}")
    print(f"  eta2 / eta1 = {report.eta2 / report.eta1:.2f}")
    print(f"Multiplications: scheme 1 = {report.complexity_scheme1}, scheme 2 = {report.complexity_scheme2}")

    if args.export:
        scheme2_path, scheme1_path = export_optimal_designs(config, args.export)
        print(f"\nWrote designs to {scheme2_path} and {scheme1_path}")

    if not report.passed:
        for check in report.failing:
            print(f"verification failed: {check.name} (relative residual {check.relative:.3e})", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_gain(args: argparse.Namespace) -> int:
    config = load_scenario_file(args.scenario).system
    report = build_gain_report(config)
    print(f"P      = {report.P:.6g}")
    print(f"gamma1 = {report.gamma1:.6g}  (eta1 = {report.eta1})")
    print(f"gamma2 = {report.gamma2:.6g}  (eta2 = {report.eta2})")
    print(f"G      = {report.gain_db:.2f} dB")
    print(f"note: {report.note}")
    return EXIT_OK


def cmd_scenarios(args: argparse.Namespace) -> int:
    for name in list_scenarios():
        print(name)
    return EXIT_OK


# ============================================================
# Entry point
# ============================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-ofdm",
        description="IRS-assisted OFDM channel estimation simulator",
    )
    parser.add_argument("--log-level", help="Override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True, help="Command to run")

    sim_parser = subparsers.add_parser("simulate", help="Run a Monte-Carlo sweep and write CSV")
    sim_parser.add_argument("--scenario", default=settings.DEFAULT_SCENARIO, help="Scenario file or bundled name")
    sim_parser.add_argument("--out", required=True, help="Output CSV file")
    sim_parser.add_argument("--trials", type=int, help="Override trials per grid point")
    sim_parser.add_argument("--seed", type=int, help="Override root seed")
    sim_parser.add_argument("--timings", action="store_true", help="Write measured seconds into the CSV")
    sim_parser.set_defaults(handler=cmd_simulate)

    verify_parser = subparsers.add_parser("verify", help="Certify the optimal training designs")
    verify_parser.add_argument("--scenario", default=settings.DEFAULT_SCENARIO, help="Scenario file or bundled name")
    verify_parser.add_argument("--export", help="Write the optimal designs as CSV")
    verify_parser.set_defaults(handler=cmd_verify)

    gain_parser = subparsers.add_parser("gain", help="Budget split and MSE gain of Scheme 2")
    gain_parser.add_argument("--scenario", default=settings.DEFAULT_SCENARIO, help="Scenario file or bundled name")
    gain_parser.set_defaults(handler=cmd_gain)

    scenarios_parser = subparsers.add_parser("scenarios", help="List bundled scenarios")
    scenarios_parser.set_defaults(handler=cmd_scenarios)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except ExportError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO_ERROR
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except SimulationError as e:
        logger.error("Simulation failed: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
