from dataclasses import dataclass

import numpy as np

from app.models.enums import ReceptionModel


@dataclass(frozen=True)
class Scheme1Observation:
    """Stacked frequency-domain received short symbols, Z (N0 x I0)."""

    Z: np.ndarray


@dataclass(frozen=True)
class Scheme2Observation:
    """Received time-domain samples after CP removal."""

    y: np.ndarray  # (N,)
    model: ReceptionModel
    model_mismatch: bool = False  # idealized model used although L2 > 1


@dataclass(frozen=True)
class ChannelEstimate:
    """LS estimate of the direct and cascaded channels."""

    d_hat: np.ndarray  # (L,)
    Q_hat: np.ndarray  # (L, M)

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.d_hat, self.Q_hat.T.reshape(-1)])


@dataclass(frozen=True)
class StackedEstimate:
    """LS estimate of lambda = [d; q_1; ...; q_M]."""

    lambda_hat: np.ndarray  # (L(M+1),)
    L: int

    def partition(self) -> ChannelEstimate:
        blocks = self.lambda_hat.reshape(-1, self.L)
        return ChannelEstimate(d_hat=blocks[0].copy(), Q_hat=blocks[1:].T.copy())
