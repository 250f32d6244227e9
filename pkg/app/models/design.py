from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Scheme1Design:
    """Short-OFDM pilot and symbol-wise IRS training reflection pattern."""

    s: np.ndarray      # (N0,) frequency-domain pilot
    psi: np.ndarray    # (M+1, I0), row 0 all ones
    gamma1: float      # per-subcarrier average power
    L: int             # channel taps to estimate

    @property
    def N0(self) -> int:
        return self.s.size

    @property
    def M(self) -> int:
        return self.psi.shape[0] - 1

    @property
    def I0(self) -> int:
        return self.psi.shape[1]


@dataclass(frozen=True)
class Scheme2Design:
    """Time-domain pilot and sampling-wise IRS reflection table."""

    x: np.ndarray      # (N,) time-domain pilot
    theta: np.ndarray  # (M, N), theta[m-1, n] is theta_m^(n)
    gamma2: float      # per-sample average power
    omega: int         # Zadoff-Chu root (0 when the pilot is not a ZC sequence)
    L: int             # channel taps to estimate

    @property
    def N(self) -> int:
        return self.x.size

    @property
    def M(self) -> int:
        return self.theta.shape[0]

    def reflection(self, m: int, n) -> np.ndarray:
        """theta_m^(n) with the N-periodic extension; m = 0 is the direct link."""
        n = np.asarray(n) % self.N
        if m == 0:
            return np.ones(n.shape, dtype=np.complex128)
        return self.theta[m - 1, n]


@dataclass(frozen=True)
class Scheme1Residuals:
    """Frobenius residuals of the Scheme 1 optimality conditions."""

    reflection: float  # ||Psi Psi^H - I0 I||_F
    pilot: float       # ||S^H S - gamma1 I||_F
    reflection_scale: float
    pilot_scale: float


@dataclass(frozen=True)
class Scheme2Residuals:
    """Frobenius residuals of the Scheme 2 orthogonality conditions."""

    pilot: float   # ||X^H X - c I||_F
    cross: float   # max over m != m' of ||X^H Theta_m^H Theta_m' X||_F
    xi: float      # ||Xi^H Xi - c I||_F
    c: float       # gamma2 * N
