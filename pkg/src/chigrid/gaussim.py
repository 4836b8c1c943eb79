"""Exact synthesis of stationary Gaussian lattice paths and fBm.

Sampling is done by circulant embedding: the covariance sequence r(k*mesh)
is wrapped into a nonnegative-definite circulant whose eigenvalues are the
FFT of the first row; one FFT of complex white noise then yields an exact
stationary Gaussian path. Fractional Brownian motion is built by cumulating
exactly-simulated fractional Gaussian noise.

Two correlation families are supported:

* ``ExpPower``: r(t) = exp(-|t|^alpha), locally 1 - |t|^alpha + o(|t|^alpha).
* ``StrongMixture``: r(t) = (1-rho) exp(-|t|^alpha) + rho with
  rho = r / ln(T_horizon). Mixing an exponential-power path with an
  independent standard normal reproduces this family exactly, and as the
  horizon grows it satisfies r(T) ln T -> r, the long-range regime the
  limit theorems are parameterised by.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "Family",
    "CorrelationModel",
    "LatticeSpec",
    "SpectralEmbedding",
    "LatticePath",
    "VectorChiInput",
    "EmbeddingNotPSD",
    "eval_correlation",
    "build_embedding",
    "sample_path",
    "sample_vector_chi_input",
    "sample_fbm",
]

#: Largest tolerated share of negative eigenvalue mass before the embedding
#: is declared unusable; below it, negatives are clipped to zero.
CLIP_TOLERANCE = 1e-8

#: Number of times the circulant is doubled before giving up.
MAX_DOUBLINGS = 3


class EmbeddingNotPSD(Exception):
    """Circulant embedding kept a non-negligible negative spectrum."""


class Family(enum.Enum):
    EXP_POWER = "exp_power"
    STRONG_MIXTURE = "strong_mixture"


@dataclass(frozen=True)
class CorrelationModel:
    """Stationary correlation family with local exponent ``alpha``.

    ``r`` and ``T_horizon`` are only meaningful for ``STRONG_MIXTURE``,
    where the constant floor is rho = r / ln(T_horizon).
    """

    family: Family
    alpha: float
    r: float = 0.0
    T_horizon: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise ValueError(f"alpha must lie in (0, 2], got {self.alpha}")
        if self.r < 0.0:
            raise ValueError(f"long-range parameter r must be >= 0, got {self.r}")
        if self.family is Family.STRONG_MIXTURE:
            if self.T_horizon <= math.e:
                raise ValueError("StrongMixture needs T_horizon > e so ln T_horizon > 1")
            if not 0.0 <= self.rho < 1.0:
                raise ValueError(f"rho = r/ln(T_horizon) = {self.rho} outside [0, 1)")

    @property
    def rho(self) -> float:
        if self.family is Family.EXP_POWER:
            return 0.0
        return self.r / math.log(self.T_horizon)

    @staticmethod
    def exp_power(alpha: float) -> "CorrelationModel":
        return CorrelationModel(Family.EXP_POWER, alpha)

    @staticmethod
    def strong_mixture(alpha: float, r: float, T_horizon: float) -> "CorrelationModel":
        return CorrelationModel(Family.STRONG_MIXTURE, alpha, r, T_horizon)


@dataclass(frozen=True)
class LatticeSpec:
    """Uniform lattice 0, mesh, ..., (n_points-1)*mesh."""

    mesh: float
    n_points: int

    def __post_init__(self):
        if self.mesh <= 0.0:
            raise ValueError(f"mesh must be positive, got {self.mesh}")
        if self.n_points < 2:
            raise ValueError(f"need at least 2 lattice points, got {self.n_points}")

    @property
    def horizon(self) -> float:
        return (self.n_points - 1) * self.mesh

    def times(self) -> np.ndarray:
        return np.arange(self.n_points) * self.mesh

    @staticmethod
    def covering(T: float, mesh: float) -> "LatticeSpec":
        """Smallest lattice whose horizon reaches T."""
        return LatticeSpec(mesh, math.ceil(T / mesh - 1e-9) + 1)


@dataclass(eq=False)
class SpectralEmbedding:
    """Eigenvalues of the circulant covariance embedding (all >= 0)."""

    circulant_size: int
    eigenvalues: np.ndarray
    clipped_mass: float

    @property
    def sqrt_eigenvalues(self) -> np.ndarray:
        return np.sqrt(self.eigenvalues)


@dataclass(eq=False)
class LatticePath:
    spec: LatticeSpec
    values: np.ndarray


@dataclass(eq=False)
class VectorChiInput:
    """m component paths on a common lattice, independent given shared_z."""

    spec: LatticeSpec
    components: np.ndarray  # shape (m, n_points)
    m: int
    shared_z: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.components.shape != (self.m, self.spec.n_points):
            raise ValueError(
                f"components shape {self.components.shape} does not match "
                f"m={self.m}, n_points={self.spec.n_points}"
            )


def eval_correlation(model: CorrelationModel, t):
    """Correlation r(|t|); accepts scalars or arrays."""
    at = np.abs(np.asarray(t, dtype=float))
    base = np.exp(-(at ** model.alpha))
    if model.family is Family.EXP_POWER:
        out = base
    else:
        rho = model.rho
        out = (1.0 - rho) * base + rho
    return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out


def _next_pow2(n: int) -> int:
    return 1 << max(1, (n - 1).bit_length())


def _circulant_eigenvalues(cov_fn, size: int) -> tuple[np.ndarray, float, float]:
    """FFT eigenvalues of the symmetric circulant with row cov_fn(lag index).

    Returns (clipped eigenvalues, clipped negative mass, total |.| mass).
    """
    j = np.arange(size)
    row = cov_fn(np.minimum(j, size - j))
    lam = np.fft.fft(row).real
    total = float(np.abs(lam).sum())
    clipped = float(-lam[lam < 0.0].sum())
    return np.clip(lam, 0.0, None), clipped, total


def _embed(cov_fn, n_values: int, what: str) -> SpectralEmbedding:
    """Circulant embedding for n_values points, doubling until PSD enough."""
    size = _next_pow2(2 * (n_values - 1)) if n_values > 1 else 2
    last_rel = math.inf
    for _ in range(MAX_DOUBLINGS + 1):
        lam, clipped, total = _circulant_eigenvalues(cov_fn, size)
        last_rel = clipped / total if total > 0 else math.inf
        if last_rel <= CLIP_TOLERANCE:
            return SpectralEmbedding(size, lam, clipped)
        size *= 2
    raise EmbeddingNotPSD(
        f"{what}: negative eigenvalue mass ratio {last_rel:.3e} still above "
        f"{CLIP_TOLERANCE:.1e} after {MAX_DOUBLINGS} doublings (size {size // 2})"
    )


def build_embedding(model: CorrelationModel, spec: LatticeSpec) -> SpectralEmbedding:
    """Embedding of the covariance sequence r(k*mesh), k = 0..n_points-1."""
    return _cached_model_embedding(model, spec.mesh, spec.n_points)


@functools.lru_cache(maxsize=16)
def _cached_model_embedding(model: CorrelationModel, mesh: float, n_points: int) -> SpectralEmbedding:
    return _embed(
        lambda k: eval_correlation(model, k * mesh),
        n_points,
        f"correlation model {model.family.value} (alpha={model.alpha}, mesh={mesh})",
    )


@functools.lru_cache(maxsize=16)
def _cached_fgn_embedding(hurst: float, n_increments: int) -> SpectralEmbedding:
    def gamma(k):
        k = np.asarray(k, dtype=float)
        h2 = 2.0 * hurst
        return 0.5 * (np.abs(k + 1) ** h2 - 2.0 * np.abs(k) ** h2 + np.abs(k - 1) ** h2)

    return _embed(gamma, max(n_increments, 2), f"fGn increments (hurst={hurst})")


def sample_path(
    embedding: SpectralEmbedding, spec: LatticeSpec, rng: np.random.Generator
) -> LatticePath:
    """One exact stationary path; deterministic given the rng state.

    With eigenvalues lam_k and complex white noise eps_k, the real part of
    FFT(sqrt(lam) * eps) / sqrt(M) is Gaussian with exactly the circulant
    covariance, whose leading n_points x n_points block is the target
    Toeplitz covariance.
    """
    m_size = embedding.circulant_size
    noise = rng.standard_normal((2, m_size))
    spectral = embedding.sqrt_eigenvalues * (noise[0] + 1j * noise[1])
    values = np.fft.fft(spectral).real[: spec.n_points] / math.sqrt(m_size)
    return LatticePath(spec, values)


def sample_vector_chi_input(
    model: CorrelationModel, spec: LatticeSpec, m: int, rng: np.random.Generator
) -> VectorChiInput:
    """m independent copies of the model path, on one lattice.

    For the strong mixture the path decomposes exactly as
    sqrt(1-rho) * Y_i(t) + sqrt(rho) * Z_i with Y_i an exponential-power
    path and Z_i standard normal; the Z-draws are kept for diagnostics.
    """
    if m < 1:
        raise ValueError(f"need m >= 1 components, got {m}")
    if model.family is Family.EXP_POWER:
        base = model
        rho = 0.0
    else:
        base = CorrelationModel.exp_power(model.alpha)
        rho = model.rho
    embedding = build_embedding(base, spec)
    components = np.empty((m, spec.n_points))
    for i in range(m):
        components[i] = sample_path(embedding, spec, rng).values
    shared_z = None
    if model.family is Family.STRONG_MIXTURE:
        shared_z = rng.standard_normal(m)
        components = np.sqrt(1.0 - rho) * components + math.sqrt(rho) * shared_z[:, None]
    return VectorChiInput(spec, components, m, shared_z)


def sample_fbm(
    hurst: float, n_points: int, mesh: float, rng: np.random.Generator
) -> LatticePath:
    """Fractional Brownian motion on the lattice with B(0) = 0.

    E B(t)^2 = |t|^(2*hurst). hurst = 1 degenerates to the straight line
    t * Z. Otherwise unit-spacing fractional Gaussian noise is simulated
    exactly through its own circulant embedding and cumulated, scaled by
    mesh^hurst (self-similarity).
    """
    if not 0.0 < hurst <= 1.0:
        raise ValueError(f"hurst must lie in (0, 1], got {hurst}")
    spec = LatticeSpec(mesh, n_points)
    if hurst == 1.0:
        z = rng.standard_normal()
        return LatticePath(spec, spec.times() * z)
    embedding = _cached_fgn_embedding(hurst, n_points - 1)
    fgn = sample_path(embedding, LatticeSpec(1.0, max(n_points - 1, 2)), rng).values
    values = np.empty(n_points)
    values[0] = 0.0
    np.cumsum(fgn[: n_points - 1] * mesh**hurst, out=values[1:])
    return LatticePath(spec, values)
