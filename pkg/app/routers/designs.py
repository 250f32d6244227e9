"""
Training Design Router

Orthogonality certificates and MSE gain of the optimal training designs.
"""

from fastapi import APIRouter, Depends

from app.core.exceptions import SimulationError
from app.dependencies import get_default_scenario, to_http_exception
from app.schemas.results import GainReport, VerifyReport
from app.schemas.scenario import ScenarioFile
from app.schemas.system import SystemConfig
from app.services.report_service import build_gain_report, build_verify_report


router = APIRouter(prefix="/designs", tags=["Training Designs"])


@router.get("/verify", response_model=VerifyReport)
def verify_default(scenario: ScenarioFile = Depends(get_default_scenario)):
    """Certify both optimal designs for the bundled default scenario."""
    try:
        return build_verify_report(scenario.system)
    except SimulationError as e:
        raise to_http_exception(e)


@router.post("/verify", response_model=VerifyReport)
def verify(config: SystemConfig):
    """
    Certify both optimal designs for the given system.

    Returns the Frobenius residual of every orthogonality condition, the
    training durations eta0/eta1/eta2 and the multiplication counts.
    """
    try:
        return build_verify_report(config)
    except SimulationError as e:
        raise to_http_exception(e)


@router.post("/gain", response_model=GainReport)
def gain(config: SystemConfig):
    """Budget split gamma1/gamma2 and the MSE gain of Scheme 2 over Scheme 1 in dB."""
    try:
        return build_gain_report(config)
    except SimulationError as e:
        raise to_http_exception(e)
