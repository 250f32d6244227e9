from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LinkSet:
    """Raw channel impulse responses of one realization."""

    d: np.ndarray  # (Ld,) BS->user
    g: np.ndarray  # (M, L1) BS->sub-surface
    u: np.ndarray  # (M, L2) sub-surface->user

    @property
    def M(self) -> int:
        return self.g.shape[0]

    @property
    def L2(self) -> int:
        return self.u.shape[1]


@dataclass(frozen=True)
class ChannelRealization:
    """Zero-padded direct CIR and cascaded channel matrix, h = d + Q theta."""

    d: np.ndarray  # (L,)
    Q: np.ndarray  # (L, M), column m is q_m

    @property
    def L(self) -> int:
        return self.d.size

    @property
    def M(self) -> int:
        return self.Q.shape[1]

    def stacked(self) -> np.ndarray:
        """lambda = [d; q_1; ...; q_M]."""
        return np.concatenate([self.d, self.Q.T.reshape(-1)])

    def as_matrix(self) -> np.ndarray:
        """[d, Q] as an L x (M+1) matrix."""
        return np.column_stack([self.d, self.Q])

    def power(self) -> float:
        """||[d, Q]||_F^2."""
        return float(np.sum(np.abs(self.d) ** 2) + np.sum(np.abs(self.Q) ** 2))
