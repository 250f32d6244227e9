"""
Scheme 2 Service

Sampling-wise IRS reflection variation within one OFDM symbol: the received
signal model (idealized and physical), the LS estimator of
lambda = [d; q_1; ...; q_M] and its analytic MSE.
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from app.core.exceptions import InsufficientLengthError, InvalidDimensionError, InvalidParameterError, SingularSystemError
from app.core.numerics import RANK_TOLERANCE, as_complex_vector, is_scaled_identity, ls_solve
from app.models.channel import LinkSet
from app.models.design import Scheme2Design
from app.models.enums import EstimatorPath, ReceptionModel
from app.models.estimate import Scheme2Observation, StackedEstimate
from app.schemas.system import SystemConfig
from app.services.channel_service import cascade


logger = logging.getLogger(__name__)


# ============================================================
# Observation matrix
# ============================================================

def build_pilot_circulant(x, L: int) -> np.ndarray:
    """First L columns of the circulant matrix of x; column l is x shifted down by l."""
    x = as_complex_vector(x)
    if L < 1 or L > x.size:
        raise InvalidDimensionError(f"cannot take {L} cyclic shifts of a length-{x.size} pilot")
    return scipy.linalg.circulant(x)[:, :L]


def build_xi(design: Scheme2Design, L: Optional[int] = None, M: Optional[int] = None) -> np.ndarray:
    """
    Xi = [Theta_0 X, Theta_1 X, ..., Theta_M X] with Theta_0 = I.

    Args:
        design: Pilot and reflection table
        L: Taps per channel (defaults to design.L)
        M: Sub-surfaces (defaults to design.M)

    Returns:
        N x L(M+1) observation matrix
    """
    L = design.L if L is None else L
    M = design.M if M is None else M
    if design.N < L * (M + 1):
        raise InsufficientLengthError(f"N = {design.N} below L(M+1) = {L * (M + 1)}")
    if M > design.M:
        raise InvalidDimensionError(f"design has {design.M} reflection rows, {M} requested")

    X = build_pilot_circulant(design.x, L)
    n = np.arange(design.N)
    return np.hstack([design.reflection(m, n)[:, None] * X for m in range(M + 1)])


# ============================================================
# Received signal
# ============================================================

def _noise(rng: np.random.Generator, n: int, sigma2: float) -> np.ndarray:
    if sigma2 == 0:
        return np.zeros(n, dtype=np.complex128)
    return np.sqrt(sigma2 / 2.0) * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _physical_rx(design: Scheme2Design, links: LinkSet) -> np.ndarray:
    """
    Reflection applied at the IRS between the BS->IRS and IRS->user convolutions.

    r_m[n] = sum_l2 u_{m,l2} theta_m^((n-l2) mod N) w_m[(n-l2) mod N], with
    w_m the circular convolution of x and g_m.
    """
    circ = scipy.linalg.circulant(design.x)
    y = circ[:, : links.d.size] @ links.d
    if links.M == 0:
        return y

    W = circ[:, : links.g.shape[1]] @ links.g.T        # (N, M)
    Z = design.theta[: links.M].T * W                   # reflected at the IRS
    for l2 in range(links.L2):
        y = y + np.roll(Z, l2, axis=0) @ links.u[:, l2]
    return y


def simulate_rx_scheme2(
    design: Scheme2Design,
    links: LinkSet,
    sigma2: float,
    rng: np.random.Generator,
    model: ReceptionModel = ReceptionModel.PHYSICAL,
) -> Scheme2Observation:
    """
    Received pilot symbol after CP removal.

    The idealized model y = Xi lambda + v is exact only for a single-tap
    IRS->user link; with L2 > 1 the result is flagged as a model mismatch.
    """
    if links.M > design.M:
        raise InvalidDimensionError(f"design covers {design.M} sub-surfaces, links have {links.M}")

    if model == ReceptionModel.IDEALIZED:
        mismatch = links.L2 > 1
        if mismatch:
            logger.warning("Idealized Scheme 2 model used with L2 = %d > 1", links.L2)
        realization = cascade(links, design.L)
        xi = build_xi(design, design.L, links.M)
        y = xi @ realization.stacked()
    else:
        mismatch = False
        y = _physical_rx(design, links)

    y = y + _noise(rng, design.N, sigma2)
    return Scheme2Observation(y=y, model=model, model_mismatch=mismatch)


# ============================================================
# Estimation
# ============================================================

class Scheme2Estimator:
    """LS estimator for a fixed design; Xi and its pseudo-inverse path are computed once."""

    def __init__(self, design: Scheme2Design, path: EstimatorPath = EstimatorPath.AUTO):
        self.design = design
        self.xi = build_xi(design)
        gram = self.xi.conj().T @ self.xi
        self.scale = float(np.real(np.trace(gram))) / gram.shape[0]
        orthogonal = is_scaled_identity(gram, self.scale)

        if path == EstimatorPath.CLOSED_FORM and not orthogonal:
            raise InvalidParameterError("closed-form pseudo-inverse requires Xi^H Xi = c I")
        self.closed_form = orthogonal if path == EstimatorPath.AUTO else path == EstimatorPath.CLOSED_FORM

    def estimate(self, y) -> StackedEstimate:
        y = as_complex_vector(y)
        if y.size != self.design.N:
            raise InvalidDimensionError(f"observation has {y.size} samples, expected {self.design.N}")
        if self.closed_form:
            lambda_hat = self.xi.conj().T @ y / self.scale
        else:
            lambda_hat = ls_solve(self.xi, y)
        return StackedEstimate(lambda_hat=lambda_hat, L=self.design.L)


def estimate_scheme2(
    design: Scheme2Design,
    y,
    path: EstimatorPath = EstimatorPath.AUTO,
) -> StackedEstimate:
    """LS estimate lambda_hat = Xi^dagger y, scaled adjoint for orthogonal designs."""
    if isinstance(y, Scheme2Observation):
        y = y.y
    return Scheme2Estimator(design, path).estimate(y)


def analytic_mse_scheme2(design: Scheme2Design, sigma2: float, L: Optional[int] = None, M: Optional[int] = None) -> float:
    """Per-coefficient MSE sigma2 / (L(M+1)) * tr{(Xi^H Xi)^-1}."""
    L = design.L if L is None else L
    M = design.M if M is None else M
    sv = np.linalg.svd(build_xi(design, L, M), compute_uv=False)
    if sv[-1] <= RANK_TOLERANCE * sv[0]:
        raise SingularSystemError("Xi is rank deficient")
    return float(sigma2 / (L * (M + 1)) * np.sum(1.0 / sv ** 2))


# ============================================================
# Gain and overhead
# ============================================================

def mse_gain_db(gamma1: float, gamma2: float, N: int, M: int) -> float:
    """MSE gain of Scheme 2 over Scheme 1, 10 log10(gamma2 N / (gamma1 (M+1)))."""
    return float(10.0 * np.log10(gamma2 * N / (gamma1 * (M + 1))))


def training_duration_scheme2(config: SystemConfig) -> int:
    """eta_2 = N + L_cp sampling periods."""
    return config.N + config.L_cp
