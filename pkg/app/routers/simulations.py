"""
Simulation Router

Monte-Carlo sweeps over posted scenarios and access to the bundled ones.
"""

import logging
from typing import List

from fastapi import APIRouter, Depends, HTTPException, status

from app.core.config import Settings, get_settings
from app.core.exceptions import ScenarioError, SimulationError
from app.dependencies import to_http_exception
from app.schemas.results import SweepResult
from app.schemas.scenario import ScenarioFile
from app.services.experiment_service import run_sweep
from app.services.scenario_service import list_scenarios, load_scenario_file


logger = logging.getLogger(__name__)

router = APIRouter(tags=["Simulations"])


@router.post("/simulations", response_model=SweepResult)
def simulate(payload: ScenarioFile, settings: Settings = Depends(get_settings)):
    """
    Run a Monte-Carlo sweep.

    - **system**: system parameters (defaults reproduce the SNR sweep setup)
    - **sweep**: axis, grid, trials (at most API_MAX_TRIALS) and seed
    - **schemes**: schemes under test
    """
    if payload.sweep.trials > settings.API_MAX_TRIALS:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"trials = {payload.sweep.trials} exceeds the limit of {settings.API_MAX_TRIALS}"
        )
    try:
        return run_sweep(payload.to_config())
    except SimulationError as e:
        logger.warning("Simulation request failed: %s", e)
        raise to_http_exception(e)


@router.get("/scenarios", response_model=List[str])
def get_scenarios():
    """Names of the bundled scenarios."""
    return list_scenarios()


@router.get("/scenarios/{name}", response_model=ScenarioFile)
def get_scenario(name: str):
    """Validated content of a bundled scenario."""
    if name not in list_scenarios():
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Scenario {name} not found")
    try:
        return load_scenario_file(name)
    except ScenarioError as e:
        raise to_http_exception(e)
