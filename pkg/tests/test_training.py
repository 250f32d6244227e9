import csv

import numpy as np
import pytest

from app.core.exceptions import InsufficientLengthError, InvalidParameterError, InvalidRootError
from app.core.numerics import min_singular_ratio
from app.models.design import Scheme2Design
from app.models.enums import SchemeId
from app.schemas.system import SystemConfig
from app.services.scheme2_service import build_xi
from app.services.training_service import (
    build_design,
    complexity_scheme1,
    complexity_scheme2,
    dft_reflection_pattern,
    dft_sampling_reflection,
    equipower_pilot,
    export_design_csv,
    optimal_scheme1_design,
    optimal_scheme2_design,
    random_pilot,
    random_pilot_scheme1_design,
    random_reflection_pattern,
    sampling_reflection_pattern,
    symbol_constant_reflection,
    training_duration_conventional,
    verify_scheme1_orthogonality,
    verify_scheme2_orthogonality,
    zadoff_chu_pilot,
)


@pytest.fixture
def config():
    """Default simulation setup."""
    return SystemConfig()


@pytest.fixture
def rng():
    """Seeded random stream."""
    return np.random.default_rng(11)


def cyclic_autocorrelation(x, k):
    return np.sum(x * np.conj(np.roll(x, k)))


# ============================================================
# Scheme 1 designs
# ============================================================

def test_equipower_pilot():
    assert np.allclose(equipower_pilot(1, 1.0), [1.0])
    assert np.allclose(equipower_pilot(8, 4.0), 2.0)

    S = np.diag(equipower_pilot(8, 0.3))
    assert np.max(np.abs(S.conj().T @ S - 0.3 * np.eye(8))) < 1e-12


def test_equipower_pilot_rejects_non_positive_power():
    with pytest.raises(InvalidParameterError):
        equipower_pilot(8, 0.0)


def test_dft_reflection_pattern_two_subsurfaces():
    assert np.allclose(dft_reflection_pattern(1), [[1, 1], [1, -1]])


@pytest.mark.parametrize("M", [1, 3, 15, 31])
def test_dft_reflection_pattern_orthogonal(M):
    psi = dft_reflection_pattern(M)
    assert psi.shape == (M + 1, M + 1)
    assert np.allclose(psi[0], 1.0)
    assert np.max(np.abs(psi @ psi.conj().T - (M + 1) * np.eye(M + 1))) < 1e-10


def test_dft_reflection_pattern_longer_training():
    psi = dft_reflection_pattern(3, I0=6)
    assert psi.shape == (4, 6)
    assert np.max(np.abs(psi @ psi.conj().T - 6 * np.eye(4))) < 1e-10


def test_dft_reflection_pattern_rejects_short_training():
    with pytest.raises(InvalidParameterError):
        dft_reflection_pattern(3, I0=3)


def test_random_reflection_pattern(rng):
    psi = random_reflection_pattern(15, 16, rng)
    assert np.allclose(psi[0], 1.0)
    assert np.max(np.abs(np.abs(psi) - 1.0)) < 1e-12
    assert min_singular_ratio(psi) > 1e-10

    again = random_reflection_pattern(15, 16, np.random.default_rng(11))
    assert np.array_equal(psi, again)


def test_verify_scheme1_orthogonality(config):
    design = optimal_scheme1_design(config, gamma1=0.25)
    residuals = verify_scheme1_orthogonality(design)
    assert residuals.reflection < 1e-10 * residuals.reflection_scale
    assert residuals.pilot < 1e-12
    assert residuals.pilot_scale == 0.25


def test_random_time_domain_pilot_breaks_pilot_condition(config, rng):
    design = random_pilot_scheme1_design(config, 1.0, rng)
    assert np.allclose(np.mean(np.abs(design.s) ** 2), 1.0)
    assert verify_scheme1_orthogonality(design).pilot > 1e-3


# ============================================================
# Scheme 2 designs
# ============================================================

def test_zadoff_chu_small_cases():
    assert np.allclose(zadoff_chu_pilot(1, 1, 2.0), [np.sqrt(2.0)])

    x = zadoff_chu_pilot(4, 1, 1.0)
    e = np.exp(-1j * np.pi / 4)
    assert np.allclose(x, [1, e, -1, e])
    assert abs(cyclic_autocorrelation(x, 1)) < 1e-12


@pytest.mark.parametrize("N,omega", [(128, 1), (128, 3), (15, 2), (31, 1)])
def test_zadoff_chu_perfect_autocorrelation(N, omega):
    gamma2 = 0.5
    x = zadoff_chu_pilot(N, omega, gamma2)
    assert np.allclose(np.abs(x) ** 2, gamma2)
    for k in range(1, N):
        assert abs(cyclic_autocorrelation(x, k)) <= 1e-9 * gamma2 * N


def test_zadoff_chu_circulant_gram():
    x = zadoff_chu_pilot(128, 1, 1.0)
    C = np.column_stack([np.roll(x, k) for k in range(128)])
    assert np.max(np.abs(C.conj().T @ C - 128 * np.eye(128))) < 1e-9 * 128


def test_zadoff_chu_rejects_invalid_root():
    with pytest.raises(InvalidRootError, match="invalid root"):
        zadoff_chu_pilot(128, 2, 1.0)


def test_sampling_reflection_pattern_small_case():
    theta = sampling_reflection_pattern(4, 1, 1, 1)
    assert theta.shape == (1, 4)
    assert theta[0, 0] == pytest.approx(np.exp(-1j * np.pi / 4))
    assert theta[0, 1] == pytest.approx(np.exp(1j * np.pi / 4))


@pytest.mark.parametrize("N,M,L,omega", [(128, 15, 8, 1), (32, 3, 4, 3), (15, 2, 5, 1)])
def test_sampling_reflection_is_pilot_ratio(N, M, L, omega):
    x = zadoff_chu_pilot(N, omega, 1.0)
    theta = sampling_reflection_pattern(N, M, L, omega)
    n = np.arange(N)
    for m in range(1, M + 1):
        assert np.allclose(theta[m - 1], x[(n - m * L) % N] / x[n], atol=1e-10)
    assert np.allclose(np.abs(theta), 1.0)


def test_sampling_reflection_is_periodic():
    N, M, L = 128, 15, 8
    theta = sampling_reflection_pattern(N, M, L, 1)
    n = np.arange(N) + N
    shift = (np.arange(1, M + 1) * L)[:, None]
    extended = np.exp(1j * np.pi * (2 * n[None, :] - shift) * shift / N)
    assert np.allclose(extended, theta, atol=1e-9)


def test_sampling_reflection_rejects_short_symbol():
    with pytest.raises(InsufficientLengthError):
        sampling_reflection_pattern(64, 15, 8, 1)


def test_random_pilot(rng):
    x = random_pilot(128, 0.5, rng)
    assert np.allclose(np.abs(x), np.sqrt(0.5), atol=1e-12)
    assert np.array_equal(x, random_pilot(128, 0.5, np.random.default_rng(11)))
    assert abs(cyclic_autocorrelation(x, 1)) > 1e-6


def test_optimal_scheme2_design_is_orthogonal(config):
    gamma2 = 1.0 / 136
    design = optimal_scheme2_design(config, gamma2)
    residuals = verify_scheme2_orthogonality(design, config.L, config.M)
    c = gamma2 * config.N
    assert residuals.c == pytest.approx(c)
    assert residuals.pilot <= 1e-9 * c
    assert residuals.cross <= 1e-9 * c
    assert residuals.xi <= 1e-9 * c * np.sqrt(config.L * (config.M + 1))


@pytest.mark.parametrize("N,M,L", [(32, 3, 4), (15, 2, 5)])
def test_optimal_design_orthogonal_for_small_symbols(N, M, L):
    design = Scheme2Design(
        x=zadoff_chu_pilot(N, 1, 1.0),
        theta=sampling_reflection_pattern(N, M, L, 1),
        gamma2=1.0,
        omega=1,
        L=L,
    )
    xi = build_xi(design)
    assert np.allclose(xi.conj().T @ xi, N * np.eye(L * (M + 1)), atol=1e-9 * N)


def test_random_pilot_breaks_pilot_condition(config, rng):
    design = build_design(SchemeId.SCHEME2_RANDOM_PILOT, config, 1.0, rng)
    residuals = verify_scheme2_orthogonality(design, config.L, config.M)
    assert residuals.pilot > 1e-3 * residuals.c


def test_direct_only_checks_pilot_condition(config):
    design = optimal_scheme2_design(config, 1.0)
    residuals = verify_scheme2_orthogonality(design, config.L, 0)
    assert residuals.cross == 0.0
    assert residuals.pilot <= 1e-9 * residuals.c


def test_symbol_constant_dft_pattern_is_rank_deficient(config):
    x = zadoff_chu_pilot(config.N, 1, 1.0)
    psi = dft_reflection_pattern(config.M)
    design = Scheme2Design(x=x, theta=symbol_constant_reflection(psi, 1, config.N), gamma2=1.0, omega=1, L=config.L)
    assert min_singular_ratio(build_xi(design)) <= 1e-8


def test_sampling_wise_dft_pattern_is_rank_deficient(config):
    x = zadoff_chu_pilot(config.N, 1, 1.0)
    design = Scheme2Design(x=x, theta=dft_sampling_reflection(config.N, config.M), gamma2=1.0, omega=1, L=config.L)
    assert min_singular_ratio(build_xi(design)) <= 1e-8


# ============================================================
# Dispatch, overhead and export
# ============================================================

@pytest.mark.parametrize("scheme", list(SchemeId))
def test_build_design_dispatch(scheme, config, rng):
    design = build_design(scheme, config, 0.5, rng)
    assert design.L == config.L
    assert design.M == config.M
    if scheme.is_scheme1:
        assert design.N0 == config.N0 and design.I0 == config.I0
        assert np.allclose(design.psi[0], 1.0)
    else:
        assert design.N == config.N
        assert np.allclose(np.abs(design.theta), 1.0)
        assert np.allclose(np.abs(design.x) ** 2, 0.5)


def test_training_overhead_and_complexity(config):
    assert training_duration_conventional(config) == 16 * 136
    assert complexity_scheme1(config) == 8 * 8 * 17 + 8 * 16 * 16
    assert complexity_scheme2(config) == 128 * 8 * 16


def test_export_scheme2_design(config, tmp_path):
    path = tmp_path / "design.csv"
    export_design_csv(optimal_scheme2_design(config, 1.0), path)

    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0][:3] == ["n", "x_re", "x_im"]
    assert len(rows[0]) == 1 + 2 * (1 + config.M)
    assert len(rows) == 1 + config.N
    assert float(rows[1][1]) == pytest.approx(1.0)


def test_export_scheme1_design(config, tmp_path):
    path = tmp_path / "design.csv"
    export_design_csv(optimal_scheme1_design(config, 1.0), path)

    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0][:3] == ["n", "s_re", "s_im"]
    assert len(rows) == 1 + max(config.N0, config.I0)
    # s has N0 entries, Psi rows have I0 entries
    assert rows[-1][1] == ""
