from fastapi import Depends, HTTPException, status

from app.core.config import Settings, get_settings
from app.core.exceptions import ScenarioError, SimulationError, SingularSystemError
from app.schemas.scenario import ScenarioFile
from app.services.scenario_service import load_scenario_file


def get_default_scenario(settings: Settings = Depends(get_settings)) -> ScenarioFile:
    """Dependency for the bundled default scenario."""
    try:
        return load_scenario_file(settings.DEFAULT_SCENARIO)
    except ScenarioError as e:
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Default scenario unavailable: {e}"
        )


def to_http_exception(error: Exception) -> HTTPException:
    """Map simulator errors onto HTTP status codes: 422 singular design, 400 invalid input, 500 otherwise."""
    if isinstance(error, SingularSystemError):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(error))
    if isinstance(error, SimulationError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(error))
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"Simulation failed: {error}")
