"""
Training Design Service

Pilot signals and IRS training reflection patterns for both estimation
schemes: the jointly optimal designs, the random-phase benchmarks, and
numerical certificates of their orthogonality conditions.
"""

import csv
import logging
from math import gcd
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from app.core.exceptions import ExportError, InsufficientLengthError, InvalidParameterError, InvalidRootError
from app.core.numerics import dft_matrix, first_columns
from app.models.design import Scheme1Design, Scheme1Residuals, Scheme2Design, Scheme2Residuals
from app.models.enums import SchemeId
from app.schemas.system import SystemConfig
from app.services.scheme2_service import build_pilot_circulant, build_xi


logger = logging.getLogger(__name__)


# ============================================================
# Scheme 1: short-OFDM pilot and symbol-wise reflection
# ============================================================

def equipower_pilot(N0: int, gamma1: float) -> np.ndarray:
    """Frequency-domain pilot with |s_k|^2 = gamma1 on every subcarrier."""
    if N0 < 1 or gamma1 <= 0:
        raise InvalidParameterError(f"equipower pilot needs N0 >= 1 and gamma1 > 0, got {N0}, {gamma1}")
    return np.full(N0, np.sqrt(gamma1), dtype=np.complex128)


def dft_reflection_pattern(M: int, I0: Optional[int] = None) -> np.ndarray:
    """
    DFT training reflection pattern, Psi[m, i] = exp(-j2*pi*m*i/I0).

    Rows 0..M of the unnormalized I0-point DFT (I0 defaults to M+1), so that
    Psi Psi^H = I0 * I and row 0 (the direct link) is all ones.
    """
    I0 = M + 1 if I0 is None else I0
    if M < 1 or I0 < M + 1:
        raise InvalidParameterError(f"DFT pattern needs M >= 1 and I0 >= M+1, got M={M}, I0={I0}")
    m = np.arange(M + 1)[:, None]
    i = np.arange(I0)[None, :]
    return np.exp(-2j * np.pi * m * i / I0)


def random_reflection_pattern(M: int, I0: int, rng: np.random.Generator) -> np.ndarray:
    """Benchmark pattern: row 0 all ones, rows 1..M i.i.d. uniform phases."""
    if I0 < M + 1:
        raise InvalidParameterError(f"I0 = {I0} below M+1 = {M + 1}")
    psi = np.ones((M + 1, I0), dtype=np.complex128)
    psi[1:] = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=(M, I0)))
    return psi


def scheme1_pilot_matrix(design: Scheme1Design) -> np.ndarray:
    """S~ = diag(s) F with F the first L columns of the unitary N0-point DFT."""
    F = first_columns(dft_matrix(design.N0), design.L)
    return design.s[:, None] * F


def optimal_scheme1_design(config: SystemConfig, gamma1: float) -> Scheme1Design:
    return Scheme1Design(
        s=equipower_pilot(config.N0, gamma1),
        psi=dft_reflection_pattern(config.M, config.I0),
        gamma1=gamma1,
        L=config.L,
    )


def random_reflection_scheme1_design(config: SystemConfig, gamma1: float, rng: np.random.Generator) -> Scheme1Design:
    return Scheme1Design(
        s=equipower_pilot(config.N0, gamma1),
        psi=random_reflection_pattern(config.M, config.I0, rng),
        gamma1=gamma1,
        L=config.L,
    )


def random_pilot_scheme1_design(config: SystemConfig, gamma1: float, rng: np.random.Generator) -> Scheme1Design:
    """Random-phase time-domain short symbol, mapped to frequency by the unitary DFT."""
    x = random_pilot(config.N0, gamma1, rng)
    return Scheme1Design(
        s=dft_matrix(config.N0) @ x,
        psi=dft_reflection_pattern(config.M, config.I0),
        gamma1=gamma1,
        L=config.L,
    )


def verify_scheme1_orthogonality(design: Scheme1Design) -> Scheme1Residuals:
    """Residuals of Psi Psi^H = I0 I and S~^H S~ = gamma1 I."""
    gram = design.psi @ design.psi.conj().T
    S = scheme1_pilot_matrix(design)
    residuals = Scheme1Residuals(
        reflection=float(np.linalg.norm(gram - design.I0 * np.eye(design.M + 1))),
        pilot=float(np.linalg.norm(S.conj().T @ S - design.gamma1 * np.eye(design.L))),
        reflection_scale=float(design.I0),
        pilot_scale=float(design.gamma1),
    )
    logger.debug("Scheme 1 residuals: reflection=%.3e pilot=%.3e", residuals.reflection, residuals.pilot)
    return residuals


# ============================================================
# Scheme 2: Zadoff-Chu pilot and sampling-wise reflection
# ============================================================

def zadoff_chu_pilot(N: int, omega: int, gamma2: float) -> np.ndarray:
    """
    Zadoff-Chu pilot scaled to per-sample power gamma2.

    x_n = sqrt(gamma2) * exp(-j*pi*omega*n^2/N) for even N; odd N uses
    n(n+1) in the exponent so the sequence stays N-periodic.
    """
    if N < 1:
        raise InvalidParameterError(f"pilot length must be positive, got {N}")
    if gcd(omega, N) != 1:
        raise InvalidRootError(f"invalid root: omega = {omega} is not coprime to N = {N}")
    n = np.arange(N)
    chirp = n * n if N % 2 == 0 else n * (n + 1)
    return np.sqrt(gamma2) * np.exp(-1j * np.pi * omega * chirp / N)


def sampling_reflection_pattern(N: int, M: int, L: int, omega: int) -> np.ndarray:
    """
    Reflection table theta_m^(n) = x_{n-mL} / x_n for m = 1..M, n = 0..N-1.

    Returns:
        (M, N) array; row m-1 holds theta_m. For even N this is the closed form
        exp(j*pi*omega*(2n - mL)*mL/N).
    """
    if N < L * (M + 1):
        raise InsufficientLengthError(f"N = {N} below L(M+1) = {L * (M + 1)}")
    if gcd(omega, N) != 1:
        raise InvalidRootError(f"invalid root: omega = {omega} is not coprime to N = {N}")
    n = np.arange(N)[None, :]
    shift = (np.arange(1, M + 1) * L)[:, None]
    if N % 2 == 0:
        return np.exp(1j * np.pi * omega * (2 * n - shift) * shift / N)
    x = zadoff_chu_pilot(N, omega, 1.0)
    return x[(n - shift) % N] / x[n]


def random_pilot(N: int, gamma2: float, rng: np.random.Generator) -> np.ndarray:
    """Benchmark pilot with constant modulus sqrt(gamma2) and i.i.d. uniform phases."""
    if N < 1:
        raise InvalidParameterError(f"pilot length must be positive, got {N}")
    return np.sqrt(gamma2) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=N))


def symbol_constant_reflection(psi: np.ndarray, column: int, N: int) -> np.ndarray:
    """Hold one column of a symbol-wise pattern constant over all N samples."""
    return np.repeat(psi[1:, column][:, None], N, axis=1)


def dft_sampling_reflection(N: int, M: int) -> np.ndarray:
    """Rows 1..M of the N-point DFT used as a sampling-wise reflection table."""
    m = np.arange(1, M + 1)[:, None]
    n = np.arange(N)[None, :]
    return np.exp(-2j * np.pi * m * n / N)


def optimal_scheme2_design(config: SystemConfig, gamma2: float) -> Scheme2Design:
    return Scheme2Design(
        x=zadoff_chu_pilot(config.N, config.omega, gamma2),
        theta=sampling_reflection_pattern(config.N, config.M, config.L, config.omega),
        gamma2=gamma2,
        omega=config.omega,
        L=config.L,
    )


def random_reflection_scheme2_design(config: SystemConfig, gamma2: float, rng: np.random.Generator) -> Scheme2Design:
    return Scheme2Design(
        x=zadoff_chu_pilot(config.N, config.omega, gamma2),
        theta=np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=(config.M, config.N))),
        gamma2=gamma2,
        omega=config.omega,
        L=config.L,
    )


def random_pilot_scheme2_design(config: SystemConfig, gamma2: float, rng: np.random.Generator) -> Scheme2Design:
    return Scheme2Design(
        x=random_pilot(config.N, gamma2, rng),
        theta=sampling_reflection_pattern(config.N, config.M, config.L, config.omega),
        gamma2=gamma2,
        omega=0,
        L=config.L,
    )


def verify_scheme2_orthogonality(design: Scheme2Design, L: int, M: int) -> Scheme2Residuals:
    """
    Residuals of X^H X = c I and X^H Theta_m^H Theta_m' X = 0 (m != m').

    With M = 0 only the pilot condition applies and the cross residual is 0.
    """
    c = design.gamma2 * design.N
    X = build_pilot_circulant(design.x, L)
    pilot = float(np.linalg.norm(X.conj().T @ X - c * np.eye(L)))
    if M == 0:
        return Scheme2Residuals(pilot=pilot, cross=0.0, xi=pilot, c=c)

    xi = build_xi(design, L, M)
    gram = xi.conj().T @ xi
    cross = 0.0
    for m in range(M + 1):
        for mp in range(M + 1):
            if m != mp:
                block = gram[m * L:(m + 1) * L, mp * L:(mp + 1) * L]
                cross = max(cross, float(np.linalg.norm(block)))
    residual = float(np.linalg.norm(gram - c * np.eye(L * (M + 1))))
    logger.debug("Scheme 2 residuals: pilot=%.3e cross=%.3e xi=%.3e", pilot, cross, residual)
    return Scheme2Residuals(pilot=pilot, cross=cross, xi=residual, c=c)


# ============================================================
# Designs by scheme identifier
# ============================================================

def build_design(
    scheme: SchemeId,
    config: SystemConfig,
    gamma: float,
    rng: np.random.Generator,
) -> Union[Scheme1Design, Scheme2Design]:
    """Construct the training design of a scheme for per-sample power gamma."""
    builders = {
        SchemeId.SCHEME1_OPTIMAL: lambda: optimal_scheme1_design(config, gamma),
        SchemeId.SCHEME1_RANDOM_REFLECTION: lambda: random_reflection_scheme1_design(config, gamma, rng),
        SchemeId.SCHEME1_RANDOM_PILOT: lambda: random_pilot_scheme1_design(config, gamma, rng),
        SchemeId.SCHEME2_OPTIMAL: lambda: optimal_scheme2_design(config, gamma),
        SchemeId.SCHEME2_RANDOM_REFLECTION: lambda: random_reflection_scheme2_design(config, gamma, rng),
        SchemeId.SCHEME2_RANDOM_PILOT: lambda: random_pilot_scheme2_design(config, gamma, rng),
    }
    return builders[scheme]()


# ============================================================
# Training overhead and complexity
# ============================================================

def training_duration_conventional(config: SystemConfig) -> int:
    """eta_0 = (M+1)(N+L_cp): one full OFDM symbol per reflection pattern."""
    return (config.M + 1) * (config.N + config.L_cp)


def complexity_scheme1(config: SystemConfig) -> int:
    """Multiplications of the closed-form Scheme 1 estimator, N0 L (I0+1) + L I0 (M+1)."""
    return config.N0 * config.L * (config.I0 + 1) + config.L * config.I0 * (config.M + 1)


def complexity_scheme2(config: SystemConfig) -> int:
    """Multiplications of the closed-form Scheme 2 estimator, N L (M+1)."""
    return config.N * config.L * (config.M + 1)


# ============================================================
# Export
# ============================================================

def _design_streams(design: Union[Scheme1Design, Scheme2Design]) -> List[tuple]:
    if isinstance(design, Scheme1Design):
        streams = [("s", design.s)]
        streams += [(f"psi{m}", design.psi[m]) for m in range(design.M + 1)]
    else:
        streams = [("x", design.x)]
        streams += [(f"theta{m}", design.theta[m - 1]) for m in range(1, design.M + 1)]
    return streams


def export_design_csv(design: Union[Scheme1Design, Scheme2Design], path: Union[str, Path]) -> None:
    """Write one row per index n with the real and imaginary part of each stream."""
    streams = _design_streams(design)
    length = max(values.size for _, values in streams)
    header = ["n"]
    for name, _ in streams:
        header += [f"{name}_re", f"{name}_im"]

    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for n in range(length):
                row = [str(n)]
                for _, values in streams:
                    if n < values.size:
                        row += [repr(float(values[n].real)), repr(float(values[n].imag))]
                    else:
                        row += ["", ""]
                writer.writerow(row)
    except OSError as e:
        raise ExportError(str(e), str(path)) from e
