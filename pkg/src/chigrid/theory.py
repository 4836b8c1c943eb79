"""Normalization constants, chi distribution, and limiting joint CDFs.

The normalized pair (a_T (M_cont - b_T), a_T (M_grid - b_{delta,T}))
converges to a joint law determined by the grid regime and the long-range
parameter r. All three limits are mixtures over an independent chi_m
variable of Gumbel-type kernels:

* sparse:   E exp(-(e^-x + e^-y) e^(-r + sqrt(2r) chi_m))
* pickands: same with e^-x + e^-y replaced by e^-x + e^-y - C(x, y), where
  C is the two-index Pickands-type constant for the grid,
* dense:    E exp(-e^(-min(x,y)) e^(-r + sqrt(2r) chi_m))  (both maxima
  normalized by b_T).

The mixture expectation is evaluated by adaptive quadrature; at r = 0 it
degenerates to the plain Gumbel value exp(-g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, special

from .chiproc import GridKind

__all__ = [
    "NormConstants",
    "LimitSpec",
    "FrechetViolation",
    "norm_constants",
    "chi_pdf",
    "chi_cdf",
    "chi_quantile",
    "tail_asymptotic",
    "mixture_expectation",
    "limit_marginal",
    "limit_joint",
]

QUAD_ABS_TOL = 1e-10
#: chi survival mass beyond the quadrature truncation point
TAIL_MASS = 1e-12


class FrechetViolation(Exception):
    """A supplied grid constant exceeds the Frechet bound min(e^-x, e^-y)."""


@dataclass(frozen=True)
class NormConstants:
    a_T: float
    b_T: float
    b_delta_T: float
    T: float
    m: int
    alpha: float
    grid_kind: GridKind
    H_alpha: float
    H_D_alpha: Optional[float] = None
    delta: Optional[float] = None


@dataclass(frozen=True)
class LimitSpec:
    """Parameters of one limiting joint CDF evaluation.

    ``pickands_term`` is the constant C(x, y) of the Pickands-grid limit at
    the evaluation point; it is ignored for the other kinds.
    """

    m: int
    r: float
    grid_kind: GridKind
    pickands_term: float = 0.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need m >= 1, got {self.m}")
        if self.r < 0.0:
            raise ValueError(f"need r >= 0, got {self.r}")
        if self.pickands_term < 0.0:
            raise ValueError(f"pickands_term must be >= 0, got {self.pickands_term}")


def _log_tail_constant(m: int, alpha: float, h: float, a_T: float) -> float:
    """log of 2^(1-m/2) Gamma(m/2)^-1 * h * a_T^(2/alpha + m - 2)."""
    return (
        (1.0 - m / 2.0) * math.log(2.0)
        - math.lgamma(m / 2.0)
        + math.log(h)
        + (2.0 / alpha + m - 2.0) * math.log(a_T)
    )


def norm_constants(
    T: float,
    m: int,
    alpha: float,
    grid_kind: GridKind,
    H_alpha: float,
    H_D_alpha: Optional[float] = None,
    delta: Optional[float] = None,
) -> NormConstants:
    """a_T, b_T and the grid-dependent b_{delta,T}.

    a_T = sqrt(2 ln T) and b_T = a_T + ln(2^(1-m/2) Gamma(m/2)^-1 H_alpha
    a_T^(2/alpha+m-2)) / a_T. The Pickands grid replaces H_alpha by the
    discrete constant H_{D,alpha}; the sparse grid uses delta^-1 a_T^(m-2)
    (no alpha-dependent power); the dense grid reuses b_T for both maxima.
    """
    if T <= math.e:
        raise ValueError(f"need T > e, got {T}")
    if not 0.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if H_alpha <= 0.0:
        raise ValueError(f"need H_alpha > 0, got {H_alpha}")
    a_T = math.sqrt(2.0 * math.log(T))
    b_T = a_T + _log_tail_constant(m, alpha, H_alpha, a_T) / a_T
    if grid_kind is GridKind.PICKANDS:
        if H_D_alpha is None or H_D_alpha <= 0.0:
            raise ValueError("Pickands grid needs H_D_alpha > 0")
        b_delta_T = a_T + _log_tail_constant(m, alpha, H_D_alpha, a_T) / a_T
    elif grid_kind is GridKind.SPARSE:
        if delta is None or delta <= 0.0:
            raise ValueError("sparse grid needs delta > 0")
        log_c = (
            (1.0 - m / 2.0) * math.log(2.0)
            - math.lgamma(m / 2.0)
            - math.log(delta)
            + (m - 2.0) * math.log(a_T)
        )
        b_delta_T = a_T + log_c / a_T
    else:
        b_delta_T = b_T
    return NormConstants(
        a_T, b_T, b_delta_T, T, m, alpha, grid_kind, H_alpha, H_D_alpha, delta
    )


def chi_pdf(z, m: int):
    """Density 2^(1-m/2) z^(m-1) e^(-z^2/2) / Gamma(m/2) of chi with m dof."""
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore"):
        logpdf = (
            (1.0 - m / 2.0) * math.log(2.0)
            - math.lgamma(m / 2.0)
            + (m - 1.0) * np.log(z, where=z > 0, out=np.full_like(z, -np.inf))
            - z * z / 2.0
        )
    out = np.where(z >= 0, np.exp(logpdf), 0.0)
    if m == 1:
        out = np.where(z == 0, math.sqrt(2.0 / math.pi), out)
    return float(out) if out.ndim == 0 else out


def chi_cdf(z, m: int):
    """P(chi_m <= z) via the regularized incomplete gamma function."""
    z = np.asarray(z, dtype=float)
    out = np.where(z > 0, special.gammainc(m / 2.0, z * z / 2.0), 0.0)
    return float(out) if out.ndim == 0 else out


def chi_quantile(p: float, m: int) -> float:
    """Inverse of chi_cdf."""
    return math.sqrt(2.0 * special.gammaincinv(m / 2.0, p))


def tail_asymptotic(u: float, T: float, m: int, alpha: float, H_alpha: float) -> float:
    """Leading-order P(max over [0,T] of chi_m > u) for high levels u:

    T * 2^(1-m/2) * H_alpha / Gamma(m/2) * u^(2/alpha + m - 2) * e^(-u^2/2).
    """
    if u <= 0.0:
        raise ValueError(f"need u > 0, got {u}")
    log_v = (
        math.log(T)
        + (1.0 - m / 2.0) * math.log(2.0)
        + math.log(H_alpha)
        - math.lgamma(m / 2.0)
        + (2.0 / alpha + m - 2.0) * math.log(u)
        - u * u / 2.0
    )
    return math.exp(log_v)


def mixture_expectation(g: float, r: float, m: int) -> float:
    """E exp(-g e^(-r + sqrt(2r) Z)) for Z chi-distributed with m dof.

    Quadrature on [0, z_max] with absolute tolerance 1e-10, truncated where
    the chi survival mass drops below 1e-12. Degenerate cases are exact:
    g = 0 gives 1, r = 0 gives exp(-g).
    """
    if g < 0.0:
        raise ValueError(f"need g >= 0, got {g}")
    if r < 0.0:
        raise ValueError(f"need r >= 0, got {r}")
    if g == 0.0:
        return 1.0
    if r == 0.0:
        return math.exp(-g)
    z_max = chi_quantile(1.0 - TAIL_MASS, m)
    s = math.sqrt(2.0 * r)

    def integrand(z):
        return math.exp(-g * math.exp(-r + s * z)) * chi_pdf(z, m)

    value, _ = integrate.quad(
        integrand, 0.0, z_max, epsabs=QUAD_ABS_TOL, epsrel=QUAD_ABS_TOL, limit=200
    )
    return min(max(value, 0.0), 1.0)


def limit_marginal(x: float, r: float, m: int) -> float:
    """Mixed Gumbel marginal CDF of either normalized maximum."""
    return mixture_expectation(math.exp(-x), r, m)


def limit_joint(x: float, y: float, spec: LimitSpec) -> float:
    """Limiting joint CDF at (x, y) for the grid regime in ``spec``."""
    if spec.grid_kind is GridKind.DENSE:
        return limit_marginal(min(x, y), spec.r, spec.m)
    g = math.exp(-x) + math.exp(-y)
    if spec.grid_kind is GridKind.PICKANDS:
        bound = min(math.exp(-x), math.exp(-y))
        if spec.pickands_term > bound + 1e-6:
            raise FrechetViolation(
                f"pickands_term {spec.pickands_term:.6g} exceeds the Frechet "
                f"bound min(e^-x, e^-y) = {bound:.6g} at (x, y) = ({x}, {y})"
            )
        g = max(g - spec.pickands_term, 0.0)
    return mixture_expectation(g, spec.r, spec.m)
