"""
Channel Service

Random multipath channel generation for the BS->user, BS->IRS and IRS->user
links, and their composition into the cascaded model h = d + Q theta.
"""

from typing import Tuple, Union

import numpy as np

from app.core.exceptions import InvalidDimensionError, InvalidParameterError, InvalidReflectionError
from app.core.numerics import as_complex_vector, linear_convolve
from app.models.channel import ChannelRealization, LinkSet
from app.schemas.system import SystemConfig


Size = Union[int, Tuple[int, ...]]

UNIT_MODULUS_TOL = 1e-9


# ============================================================
# Large-scale fading and delay profiles
# ============================================================

def path_gain(gamma0: float, D: float, alpha: float) -> float:
    """Distance-dependent path gain, gamma0 * D^-alpha."""
    if gamma0 <= 0 or D <= 0 or alpha <= 0:
        raise InvalidParameterError(
            f"path gain needs positive arguments, got gamma0={gamma0}, D={D}, alpha={alpha}"
        )
    return gamma0 * D ** (-alpha)


def exp_pdp(taps: int, decay: float) -> np.ndarray:
    """Exponentially decaying power delay profile normalized to unit sum."""
    if taps < 1:
        raise InvalidParameterError(f"power delay profile needs at least one tap, got {taps}")
    if decay <= 0:
        raise InvalidParameterError(f"decay must be positive, got {decay}")
    p = np.exp(-np.arange(taps) / decay)
    return p / p.sum()


def _complex_gaussian(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    """Unit-variance circularly-symmetric complex Gaussian samples."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _shape(size: Size, taps: int) -> Tuple[int, ...]:
    if isinstance(size, int):
        size = (size,)
    return tuple(size) + (taps,)


# ============================================================
# Small-scale fading
# ============================================================

def sample_rayleigh_link(
    profile: np.ndarray,
    total_gain: float,
    rng: np.random.Generator,
    size: Size = (),
) -> np.ndarray:
    """
    Draw a Rayleigh-fading CIR.

    Args:
        profile: Normalized tap powers
        total_gain: Expected ||h||^2
        rng: Random stream
        size: Leading batch shape, () for a single CIR

    Returns:
        Array of shape size + (taps,), tap l ~ CN(0, total_gain * profile[l])
    """
    profile = np.asarray(profile, dtype=float)
    scale = np.sqrt(total_gain * profile)
    return scale * _complex_gaussian(rng, _shape(size, profile.size))


def sample_rician_link(
    profile: np.ndarray,
    total_gain: float,
    kappa: float,
    rng: np.random.Generator,
    size: Size = (),
) -> np.ndarray:
    """
    Draw a Rician-fading CIR: LoS first tap, Rayleigh NLoS remaining taps.

    The LoS tap has magnitude sqrt(total_gain * kappa / (kappa + 1)) and a uniform
    random phase; the NLoS taps share total_gain / (kappa + 1) according to the
    profile restricted to taps 1..L2-1. A single-tap link is pure LoS.
    """
    if kappa < 0:
        raise InvalidParameterError(f"Rician factor must be non-negative, got {kappa}")
    profile = np.asarray(profile, dtype=float)
    shape = _shape(size, profile.size)
    h = np.zeros(shape, dtype=np.complex128)

    if profile.size == 1:
        los_power = total_gain
    else:
        los_power = total_gain * kappa / (kappa + 1.0)
        nlos = profile[1:] / profile[1:].sum()
        nlos_scale = np.sqrt(total_gain / (kappa + 1.0) * nlos)
        h[..., 1:] = nlos_scale * _complex_gaussian(rng, shape[:-1] + (profile.size - 1,))

    phase = rng.uniform(0.0, 2.0 * np.pi, size=shape[:-1])
    h[..., 0] = np.sqrt(los_power) * np.exp(1j * phase)
    return h


def sample_link_set(config: SystemConfig, rng: np.random.Generator) -> LinkSet:
    """
    Draw one independent realization of all links.

    The mu-element aggregation gain of each sub-surface is carried by its
    BS->IRS link, so E||q_m||^2 = mu * gamma0^2 * D1^-alpha1 * D2^-alpha2.
    """
    direct_gain = path_gain(config.gamma0, config.D3, config.alpha3)
    bs_irs_gain = config.mu * path_gain(config.gamma0, config.D2, config.alpha2)
    irs_user_gain = path_gain(config.gamma0, config.D1, config.alpha1)

    d = sample_rayleigh_link(exp_pdp(config.Ld, config.decay), direct_gain, rng)
    g = sample_rayleigh_link(exp_pdp(config.L1, config.decay), bs_irs_gain, rng, size=config.M)
    u = sample_rician_link(exp_pdp(config.L2, config.decay), irs_user_gain, config.kappa, rng, size=config.M)
    return LinkSet(d=d, g=g, u=u)


# ============================================================
# Cascaded model
# ============================================================

def cascade(links: LinkSet, L: int) -> ChannelRealization:
    """Compose q_m = g_m * u_m and zero-pad every CIR to length L."""
    spread = max(links.d.size, links.g.shape[1] + links.u.shape[1] - 1)
    if L < spread:
        raise InvalidDimensionError(f"L = {L} below the channel delay spread {spread}")

    d = np.zeros(L, dtype=np.complex128)
    d[: links.d.size] = links.d
    Q = np.zeros((L, links.M), dtype=np.complex128)
    for m in range(links.M):
        q = linear_convolve(links.g[m], links.u[m])
        Q[: q.size, m] = q
    return ChannelRealization(d=d, Q=Q)


def check_unit_modulus(theta: np.ndarray) -> None:
    """Reject reflection coefficients whose amplitude is not one."""
    deviation = np.max(np.abs(np.abs(theta) - 1.0)) if np.size(theta) else 0.0
    if deviation > UNIT_MODULUS_TOL:
        raise InvalidReflectionError(f"reflection amplitude deviates from one by {deviation:.3e}")


def effective_cir(realization: ChannelRealization, theta) -> np.ndarray:
    """Superimposed CIR h = d + Q theta for unit-modulus theta."""
    theta = as_complex_vector(theta)
    if theta.size != realization.M:
        raise InvalidDimensionError(f"theta has {theta.size} entries, expected {realization.M}")
    check_unit_modulus(theta)
    return realization.d + realization.Q @ theta
