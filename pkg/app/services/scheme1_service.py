"""
Scheme 1 Service

Short-OFDM-symbol-wise IRS reflection variation: frequency-domain received
model, LS estimator of [d, Q] and its analytic MSE.
"""

import numpy as np

from app.core.exceptions import InvalidDimensionError, InvalidParameterError, SingularSystemError
from app.core.numerics import RANK_TOLERANCE, as_complex_matrix, is_scaled_identity, ls_solve, right_ls_solve
from app.models.channel import ChannelRealization
from app.models.design import Scheme1Design
from app.models.enums import EstimatorPath
from app.models.estimate import ChannelEstimate, Scheme1Observation
from app.schemas.system import SystemConfig
from app.services.training_service import scheme1_pilot_matrix


def simulate_rx_scheme1(
    design: Scheme1Design,
    realization: ChannelRealization,
    sigma2: float,
    rng: np.random.Generator,
) -> Scheme1Observation:
    """
    Frequency-domain received short symbols, Z = S~ [d, Q] Psi + V.

    Column i is diag(s) F (d + Q theta^(i)) + v^(i); CP insertion and removal
    are implied by L_cp >= L.
    """
    if realization.L != design.L:
        raise InvalidDimensionError(f"realization has {realization.L} taps, design expects {design.L}")
    if realization.M != design.M:
        raise InvalidDimensionError(f"realization has {realization.M} sub-surfaces, design covers {design.M}")

    Z = scheme1_pilot_matrix(design) @ realization.as_matrix() @ design.psi
    if sigma2 > 0:
        shape = Z.shape
        Z = Z + np.sqrt(sigma2 / 2.0) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    return Scheme1Observation(Z=Z)


class Scheme1Estimator:
    """LS estimator for a fixed design; pseudo-inverse paths are resolved once."""

    def __init__(self, design: Scheme1Design, path: EstimatorPath = EstimatorPath.AUTO):
        self.design = design
        self.S = scheme1_pilot_matrix(design)

        pilot_gram = self.S.conj().T @ self.S
        psi_gram = design.psi @ design.psi.conj().T
        self.pilot_scale = float(np.real(np.trace(pilot_gram))) / design.L
        self.psi_scale = float(np.real(np.trace(psi_gram))) / (design.M + 1)
        orthogonal = is_scaled_identity(pilot_gram, self.pilot_scale) and is_scaled_identity(psi_gram, self.psi_scale)

        if path == EstimatorPath.CLOSED_FORM and not orthogonal:
            raise InvalidParameterError("closed-form pseudo-inverses require S~^H S~ = c1 I and Psi Psi^H = c2 I")
        self.closed_form = orthogonal if path == EstimatorPath.AUTO else path == EstimatorPath.CLOSED_FORM

    def estimate(self, obs: Scheme1Observation) -> ChannelEstimate:
        Z = as_complex_matrix(obs.Z)
        if Z.shape != (self.design.N0, self.design.I0):
            raise InvalidDimensionError(f"observation is {Z.shape}, expected {(self.design.N0, self.design.I0)}")

        if self.closed_form:
            H = (self.S.conj().T @ Z @ self.design.psi.conj().T) / (self.pilot_scale * self.psi_scale)
        else:
            H = right_ls_solve(ls_solve(self.S, Z), self.design.psi)
        return ChannelEstimate(d_hat=H[:, 0].copy(), Q_hat=H[:, 1:].copy())


def estimate_scheme1(
    design: Scheme1Design,
    obs: Scheme1Observation,
    path: EstimatorPath = EstimatorPath.AUTO,
) -> ChannelEstimate:
    """LS estimate [d_hat, Q_hat] = S~^dagger Z Psi^dagger."""
    return Scheme1Estimator(design, path).estimate(obs)


def _inverse_gram_trace(A: np.ndarray) -> float:
    """tr{(A^H A)^-1} for tall A (tr{(A A^H)^-1} for wide A) from singular values."""
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] <= RANK_TOLERANCE * sv[0]:
        raise SingularSystemError("training design is rank deficient")
    return float(np.sum(1.0 / sv ** 2))


def analytic_mse_scheme1(design: Scheme1Design, sigma2: float) -> float:
    """Per-coefficient MSE sigma2 / (L(M+1)) * tr{(S~^H S~)^-1} * tr{(Psi Psi^H)^-1}."""
    pilot_trace = _inverse_gram_trace(scheme1_pilot_matrix(design))
    psi_trace = _inverse_gram_trace(design.psi)
    return sigma2 / (design.L * (design.M + 1)) * pilot_trace * psi_trace


def training_duration_scheme1(config: SystemConfig) -> int:
    """eta_1 = (M+1)(N0+L_cp) sampling periods."""
    return (config.M + 1) * (config.N0 + config.L_cp)
