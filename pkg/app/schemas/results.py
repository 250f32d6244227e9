from typing import List, Optional

from pydantic import BaseModel, Field

from app.core.numerics import db
from app.models.enums import SchemeId, SweepAxis


# ============================================================
# Sweep results
# ============================================================

class SweepRow(BaseModel):
    """Simulated and analytic normalized MSE of one scheme at one grid point."""
    axis_value: float
    scheme: SchemeId
    mse_sim: float = Field(..., description="Normalized MSE from Monte-Carlo trials")
    mse_analytic: float = Field(..., description="Analytic MSE on the same normalization")
    trials: int
    seconds: float = Field(..., description="Wall time spent on this row")

    @property
    def mse_sim_db(self) -> float:
        return db(self.mse_sim)

    @property
    def mse_analytic_db(self) -> float:
        return db(self.mse_analytic)


class SweepResult(BaseModel):
    """All rows of a sweep, ordered by grid point then scheme."""
    axis: SweepAxis
    seed: int
    rows: List[SweepRow] = Field(default_factory=list)

    model_config = {"frozen": True}


# ============================================================
# Design verification and gain
# ============================================================

class ResidualCheck(BaseModel):
    """One orthogonality condition and its relative residual."""
    name: str
    residual: float
    scale: float
    relative: float
    passed: bool


class VerifyReport(BaseModel):
    """Orthogonality certificates, training durations and complexity of both designs."""
    checks: List[ResidualCheck]
    eta0: int = Field(..., description="Full-length OFDM training, (M+1)(N+L_cp)")
    eta1: int
    eta2: int
    complexity_scheme1: int
    complexity_scheme2: int
    passed: bool

    @property
    def failing(self) -> List[ResidualCheck]:
        return [c for c in self.checks if not c.passed]


class GainReport(BaseModel):
    """Budget split and MSE gain of Scheme 2 over Scheme 1."""
    P: float
    gamma1: float
    gamma2: float
    eta1: int
    eta2: int
    gain_db: float
    reported_gain_db: float = 11.53
    note: Optional[str] = None
