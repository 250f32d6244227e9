from math import gcd
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from app.core.exceptions import InvalidRootError


class SystemConfig(BaseModel):
    """
    Dimensions and physical parameters of the IRS-assisted OFDM link.

    Defaults reproduce the simulation setup of the SNR sweep: M = 15 sub-surfaces,
    L = 8 taps, N = 128 subcarriers, short symbols of N0 = 8 with an 8-sample CP.
    """

    # OFDM dimensions (samples)
    N: int = Field(128, ge=1, description="Subcarriers per full OFDM symbol")
    N0: int = Field(8, ge=1, description="Subcarriers per short OFDM symbol")
    L: Optional[int] = Field(None, ge=1, description="Maximum delay spread, max(Ld, L1+L2-1)")
    L_cp: int = Field(8, ge=1, description="Cyclic prefix length")
    Ld: int = Field(8, ge=1, description="BS->user delay spread")
    L1: int = Field(8, ge=1, description="BS->IRS delay spread")
    L2: int = Field(1, ge=1, description="IRS->user delay spread")
    I0: Optional[int] = Field(None, ge=1, description="Short OFDM symbols for Scheme 1 (default M+1)")

    # IRS
    M: int = Field(15, ge=1, description="Number of sub-surfaces")
    M0: int = Field(135, ge=1, description="Number of reflecting elements")
    omega: int = Field(1, ge=1, description="Zadoff-Chu root")

    # Power (linear)
    P: float = Field(1.0, gt=0, description="Total training energy budget")
    sigma2: float = Field(1e-11, gt=0, description="Noise power in watts (-80 dBm)")

    # Geometry and large-scale fading
    D1: float = Field(1.5, gt=0, description="IRS->user distance (m)")
    D2: float = Field(50.0, gt=0, description="BS->IRS distance (m)")
    D3: float = Field(51.0, gt=0, description="BS->user distance (m)")
    alpha1: float = Field(2.2, gt=0)
    alpha2: float = Field(2.4, gt=0)
    alpha3: float = Field(3.6, gt=0)
    gamma0: float = Field(1e-3, gt=0, description="Path loss at 1 m (-30 dB)")
    kappa: float = Field(10.0, ge=0, description="Rician factor of the IRS->user link (linear)")
    decay: float = Field(2.0, gt=0, description="Power delay profile decay constant (samples)")

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def check_invariants(self) -> "SystemConfig":
        spread = max(self.Ld, self.L1 + self.L2 - 1)
        if self.L is None:
            self.L = spread
        elif self.L != spread:
            raise ValueError(f"L must equal max(Ld, L1+L2-1) = {spread}, got {self.L}")
        if self.I0 is None:
            self.I0 = self.M + 1

        if self.M0 % self.M != 0:
            raise ValueError(f"M0 = {self.M0} is not a multiple of M = {self.M}")
        if self.L_cp < self.L:
            raise ValueError(f"cyclic prefix L_cp = {self.L_cp} shorter than delay spread L = {self.L}")
        if self.N0 < self.L:
            raise ValueError(f"short symbol N0 = {self.N0} shorter than delay spread L = {self.L}")
        if self.N < self.L * (self.M + 1):
            raise ValueError(
                f"N = {self.N} below L(M+1) = {self.L * (self.M + 1)}; "
                "multi-symbol training is not supported"
            )
        if self.I0 < self.M + 1:
            raise ValueError(f"I0 = {self.I0} below M+1 = {self.M + 1}")
        if gcd(self.omega, self.N) != 1:
            raise InvalidRootError(f"invalid root: omega = {self.omega} is not coprime to N = {self.N}")
        return self

    @property
    def mu(self) -> int:
        """Elements per sub-surface."""
        return self.M0 // self.M

    @property
    def num_coefficients(self) -> int:
        """Unknown channel coefficients, L(M+1)."""
        return self.L * (self.M + 1)
