"""Mittag-Leffler functions on the real line.

Evaluates the one-parameter function E_a(z), the two-parameter function
E_{a,b}(z) and the three-parameter (Prabhakar) function E^r_{a,b}(z) by
direct series summation with compensated accumulation.  Arguments are
restricted to a moderate radius where the series is numerically safe;
larger arguments raise :class:`~abcfde.errors.NonConvergence` instead of
silently switching to asymptotic formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonConvergence

#: Default absolute tolerance for series truncation.
DEFAULT_TOL = 1e-13

#: Hard cap on the number of series terms.
MAX_TERMS = 10_000

#: Largest |z| accepted; the series is the wrong tool beyond this.
SAFE_RADIUS = 100.0


@dataclass(frozen=True)
class MlParams:
    """Parameter triple (alpha, beta, rho) of the Prabhakar function.

    rho = 1 and beta = 1 recover the classical one-parameter function.
    """

    alpha: float
    beta: float = 1.0
    rho: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if self.rho < 0:
            raise ValueError(f"rho must be >= 0, got {self.rho}")

    def __call__(self, z: float, tol: float = DEFAULT_TOL) -> float:
        return ml_prabhakar(self.alpha, self.beta, self.rho, z, tol=tol)


def pochhammer(gamma: float, k: int) -> float:
    """Rising factorial (gamma)_k = gamma (gamma+1) ... (gamma+k-1).

    (gamma)_0 = 1 by convention.  Overflow to +/-inf is permitted.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    out = 1.0
    for i in range(k):
        out *= gamma + i
    return out


def ml_prabhakar(
    alpha: float,
    beta: float,
    rho: float,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = MAX_TERMS,
) -> float:
    """Three-parameter Mittag-Leffler function E^rho_{alpha,beta}(z).

    Series sum_k (rho)_k / Gamma(alpha k + beta) * z^k / k!, summed term
    by term in log space (no intermediate overflow) with Kahan
    compensation.  Truncation: stop once
    ``|term_k| * max(1, |z|/(k+1)) < tol``.
    """
    MlParams(alpha, beta, rho)  # validate
    if abs(z) > SAFE_RADIUS:
        raise NonConvergence(
            f"|z| = {abs(z)} exceeds the safe summation radius {SAFE_RADIUS}"
        )
    lead = 1.0 / math.gamma(beta)
    if z == 0.0 or rho == 0.0:
        # rho = 0 kills every k >= 1 term through (rho)_k
        return lead

    if z < 0.0:
        peak = _peak_log_term(alpha, beta, rho, z, max_terms)
        if peak > _CANCELLATION_LOG:
            # alternating series with huge intermediate terms: doubles
            # would lose everything to cancellation
            return _ml_series_mp(alpha, beta, rho, z, tol, max_terms, peak)

    total = lead
    comp = 0.0
    u = 1.0  # (rho)_k z^k / k!, built by recurrence for full accuracy
    log_u = None  # log-space continuation once |u| nears overflow
    sign_u = 1.0
    for k in range(1, max_terms):
        factor = z * (rho + k - 1.0) / k
        if log_u is None:
            u *= factor
            if abs(u) > 1e290:
                # the numerator alone can overflow even when the term
                # (numerator over Gamma) stays representable
                log_u = math.log(abs(u))
                sign_u = math.copysign(1.0, u)
        else:
            log_u += math.log(abs(factor))
            sign_u *= math.copysign(1.0, factor)
        x = alpha * k + beta
        if log_u is not None:
            e = log_u - math.lgamma(x)
            term = sign_u * math.exp(e) if e < 709.0 else math.inf * sign_u
        elif x <= 170.0:
            term = u / math.gamma(x)
        elif u == 0.0:
            term = 0.0
        else:
            term = math.copysign(
                math.exp(math.log(abs(u)) - math.lgamma(x)), u
            )
        if math.isinf(term):
            raise NonConvergence(
                f"series term overflow at k={k} for "
                f"(alpha={alpha}, beta={beta}, rho={rho}, z={z})"
            )
        # Kahan compensated accumulation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) * max(1.0, abs(z) / (k + 1)) < tol:
            return total
    raise NonConvergence(
        f"series did not meet tol={tol} within {max_terms} terms for "
        f"(alpha={alpha}, beta={beta}, rho={rho}, z={z})"
    )


# peak |term| beyond which double-precision cancellation exceeds ~1e-12
_CANCELLATION_LOG = math.log(1e4)


def _log_term(alpha, beta, rho, z, k):
    return (
        math.lgamma(rho + k)
        - math.lgamma(rho)
        - math.lgamma(alpha * k + beta)
        + k * math.log(abs(z))
        - math.lgamma(k + 1)
    )


def _peak_log_term(alpha, beta, rho, z, max_terms):
    """Rough maximum of log|term_k|, probed on a geometric k ladder."""
    best = 0.0
    k = 1
    while k < max_terms:
        best = max(best, _log_term(alpha, beta, rho, z, k))
        k = max(k + 1, int(k * 1.25))
    return best


def _ml_series_mp(alpha, beta, rho, z, tol, max_terms, peak_log):
    """Arbitrary-precision fallback for cancellation-heavy arguments."""
    import mpmath as mp

    dps = int(peak_log / math.log(10.0)) + 30
    with mp.workdps(dps):
        za = mp.mpf(z)
        aa = mp.mpf(alpha)
        bb = mp.mpf(beta)
        rr = mp.mpf(rho)
        total = 1 / mp.gamma(bb)
        u = mp.mpf(1)
        for k in range(1, max_terms):
            u *= za * (rr + k - 1) / k
            term = u / mp.gamma(aa * k + bb)
            total += term
            if abs(term) * max(1.0, abs(z) / (k + 1)) < tol:
                return float(total)
    raise NonConvergence(
        f"series did not meet tol={tol} within {max_terms} terms for "
        f"(alpha={alpha}, beta={beta}, rho={rho}, z={z})"
    )


def ml_two(alpha: float, beta: float, z: float, tol: float = DEFAULT_TOL) -> float:
    """Two-parameter Mittag-Leffler function E_{alpha,beta}(z)."""
    return ml_prabhakar(alpha, beta, 1.0, z, tol=tol)


def ml_one(alpha: float, z: float, tol: float = DEFAULT_TOL) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z)."""
    return ml_prabhakar(alpha, 1.0, 1.0, z, tol=tol)
