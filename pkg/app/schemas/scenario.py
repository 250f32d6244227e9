from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from app.models.enums import SchemeId, SweepAxis
from app.schemas.system import SystemConfig


class SweepSpec(BaseModel):
    """`sweep` section of a scenario file."""
    axis: SweepAxis = Field(..., description="Quantity varied across the grid")
    grid: List[float] = Field(..., min_length=1, description="Axis values in dB")
    trials: int = Field(1000, ge=1, description="Channel realizations per grid point")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="Root seed of all random streams")
    snr_db: float = Field(20.0, description="Fixed SNR when sweeping the Rician factor")
    kappa_db: Optional[float] = Field(None, description="Rician factor override when sweeping SNR")

    model_config = {"extra": "forbid"}


class ScenarioFile(BaseModel):
    """Scenario document: system parameters, sweep and schemes under test."""
    system: SystemConfig = Field(default_factory=SystemConfig)
    sweep: SweepSpec
    schemes: List[SchemeId] = Field(..., min_length=1)

    model_config = {
        "extra": "forbid",
        "json_schema_extra": {
            "examples": [
                {
                    "system": {"N": 128, "N0": 8, "L_cp": 8, "Ld": 8, "L1": 8, "L2": 1, "M": 15, "M0": 135},
                    "sweep": {"axis": "snr_db", "grid": [0, 5, 10, 15, 20], "trials": 1000, "seed": 2020},
                    "schemes": ["scheme1_optimal", "scheme2_optimal"],
                }
            ]
        },
    }

    def to_config(self) -> "ScenarioConfig":
        return ScenarioConfig(
            base=self.system,
            sweep_axis=self.sweep.axis,
            grid=self.sweep.grid,
            trials=self.sweep.trials,
            seed=self.sweep.seed,
            schemes=self.schemes,
            snr_db=self.sweep.snr_db,
            kappa_db=self.sweep.kappa_db,
        )


class ScenarioConfig(BaseModel):
    """Validated sweep ready to run."""
    base: SystemConfig
    sweep_axis: SweepAxis
    grid: List[float] = Field(..., min_length=1)
    trials: int = Field(..., ge=1)
    seed: int = Field(..., ge=0, lt=2 ** 64)
    schemes: List[SchemeId] = Field(..., min_length=1)
    snr_db: float = 20.0
    kappa_db: Optional[float] = None

    @model_validator(mode="after")
    def unique_schemes(self) -> "ScenarioConfig":
        if len(set(self.schemes)) != len(self.schemes):
            raise ValueError("schemes must not repeat")
        return self
