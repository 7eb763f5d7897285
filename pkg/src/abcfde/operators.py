"""Discrete fractional operators on a uniform grid.

Riemann-Liouville integral, Atangana-Baleanu integral and the
Atangana-Baleanu derivative of Caputo type, all by product integration:
the weakly singular kernel is integrated exactly against a piecewise
linear interpolant (for the integrals) or piecewise constant slopes (for
the derivative), so no naive quadrature ever touches the singularity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .mittag_leffler import ml_two


@dataclass(frozen=True)
class Grid:
    """Uniform mesh tau_j = j T / N on [0, T]."""

    T: float
    N: int

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"T must be > 0, got {self.T}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")

    @property
    def h(self) -> float:
        return self.T / self.N

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.N + 1)


class BConvention(enum.Enum):
    """Normalization function B(alpha); both satisfy B(0) = B(1) = 1."""

    UNIT = "UNIT"  # B(alpha) = 1
    AB = "AB"  # B(alpha) = 1 - alpha + alpha / Gamma(alpha)


class KernelConvention(enum.Enum):
    """Coefficient of the singular integral in the integral equation.

    GAMMA uses alpha / (B Gamma(alpha)), the form implied by the
    operator definitions; PAPER_HYBRID uses alpha / (B (1 - alpha)).
    """

    GAMMA = "GAMMA"
    PAPER_HYBRID = "PAPER_HYBRID"


@dataclass(frozen=True)
class OperatorConfig:
    alpha: float
    b_convention: BConvention = BConvention.UNIT
    kernel_convention: KernelConvention = KernelConvention.GAMMA

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def b(self) -> float:
        """Value of the normalization function B(alpha)."""
        a = self.alpha
        if self.b_convention is BConvention.UNIT:
            return 1.0
        return 1.0 - a + a / math.gamma(a)

    @property
    def lam(self) -> float:
        """Kernel rate alpha / (1 - alpha)."""
        return self.alpha / (1.0 - self.alpha)


def _check_samples(samples, grid: Grid) -> np.ndarray:
    arr = np.asarray(samples, dtype=float)
    if arr.shape != (grid.N + 1,):
        raise DimensionMismatch(
            f"expected {grid.N + 1} samples, got shape {arr.shape}"
        )
    return arr


def rl_weights(grid: Grid, alpha: float) -> np.ndarray:
    """Product-trapezoidal weights for the Riemann-Liouville integral.

    Row n holds weights w_{n,j} such that
    (I^alpha omega)(tau_n) ~= sum_j w_{n,j} omega_j, exact for piecewise
    linear omega.  All weights are strictly positive for 0 < alpha < 1.
    """
    N = grid.N
    coef = grid.h**alpha / math.gamma(alpha + 2.0)
    kp = np.arange(N + 2, dtype=float) ** (alpha + 1.0)
    w = np.zeros((N + 1, N + 1))
    for n in range(1, N + 1):
        w[n, 0] = coef * (kp[n - 1] - kp[n] + (alpha + 1.0) * float(n) ** alpha)
        if n >= 2:
            m = np.arange(1, n)  # m = n - j for interior j = 1 .. n-1
            w[n, 1:n] = coef * (kp[m + 1] - 2.0 * kp[m] + kp[m - 1])[::-1]
        w[n, n] = coef
    return w


def rl_integral(samples, grid: Grid, alpha: float) -> np.ndarray:
    """Riemann-Liouville fractional integral of order alpha at the nodes.

    (1/Gamma(alpha)) int_0^tau (tau - s)^(alpha-1) omega(s) ds with omega
    piecewise linear; exact kernel moments, output[0] = 0.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    arr = _check_samples(samples, grid)
    N = grid.N
    coef = grid.h**alpha / math.gamma(alpha + 2.0)
    n = np.arange(N + 1, dtype=float)
    npow = n ** (alpha + 1.0)
    # boundary weight for j = 0 at each n >= 1
    c0 = np.empty(N + 1)
    c0[0] = 0.0
    nn = n[1:]
    c0[1:] = (nn - 1.0) ** (alpha + 1.0) - npow[1:] + (alpha + 1.0) * nn**alpha
    # interior second-difference weights b[m] = (m+1)^(a+1) - 2 m^(a+1) + (m-1)^(a+1)
    out = np.zeros(N + 1)
    out[1:] = coef * (c0[1:] * arr[0] + arr[1:])
    if N >= 2:
        m = np.arange(1, N, dtype=float)
        b = (m + 1.0) ** (alpha + 1.0) - 2.0 * m ** (alpha + 1.0) + (m - 1.0) ** (alpha + 1.0)
        # out[n] += coef * sum_{j=1}^{n-1} b[n-j] arr[j]  (discrete convolution)
        conv = np.convolve(arr[1:N], b)
        out[2:] += coef * conv[: N - 1]
    return out


def ab_integral(samples, grid: Grid, cfg: OperatorConfig) -> np.ndarray:
    """Atangana-Baleanu fractional integral at the nodes.

    (1 - alpha)/B(alpha) * omega + alpha/B(alpha) * (RL integral).
    """
    arr = _check_samples(samples, grid)
    a, B = cfg.alpha, cfg.b
    return (1.0 - a) / B * arr + a / B * rl_integral(arr, grid, a)


def ml_kernel_antiderivative(grid: Grid, cfg: OperatorConfig) -> np.ndarray:
    """Values F(k h) of the kernel antiderivative, k = 0 .. N.

    F(x) = int_0^x E_alpha(-lam u^alpha) du = x E_{alpha,2}(-lam x^alpha)
    with lam = alpha / (1 - alpha).
    """
    a, lam = cfg.alpha, cfg.lam
    x = grid.nodes
    out = np.empty(grid.N + 1)
    out[0] = 0.0
    for k in range(1, grid.N + 1):
        out[k] = x[k] * ml_two(a, 2.0, -lam * x[k] ** a)
    return out


def abc_derivative(samples, grid: Grid, cfg: OperatorConfig) -> np.ndarray:
    """Atangana-Baleanu-Caputo derivative at the nodes.

    B(alpha)/(1-alpha) int_0^tau E_alpha[-lam (tau-s)^alpha] omega'(s) ds
    with omega' replaced by the piecewise constant slopes of the samples
    and the Mittag-Leffler kernel integrated exactly on each subinterval.
    output[0] = 0.
    """
    arr = _check_samples(samples, grid)
    a, B = cfg.alpha, cfg.b
    slopes = np.diff(arr) / grid.h
    F = ml_kernel_antiderivative(grid, cfg)
    dF = np.diff(F)  # dF[m-1] = F(m h) - F((m-1) h), m = 1 .. N
    out = np.zeros(grid.N + 1)
    # out[n] = B/(1-a) * sum_{j=0}^{n-1} slopes[j] * dF[n-j-1]
    conv = np.convolve(slopes, dF)
    out[1:] = B / (1.0 - a) * conv[: grid.N]
    return out
