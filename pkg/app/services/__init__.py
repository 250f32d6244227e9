# Services package
from app.services import (
    channel_service,
    training_service,
    scheme1_service,
    scheme2_service,
    experiment_service,
    scenario_service,
    report_service,
)

__all__ = [
    "channel_service",
    "training_service",
    "scheme1_service",
    "scheme2_service",
    "experiment_service",
    "scenario_service",
    "report_service",
]
