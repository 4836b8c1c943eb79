"""Chi-process paths, grid regimes, and continuous/grid maxima pairs.

The chi-process is the pointwise Euclidean norm of m independent stationary
Gaussian components. Its maximum over [0, T] is approximated on a fine
lattice, and compared with the maximum over an observation grid whose
spacing rule delta(T) selects one of three regimes relative to the
correlation scale (2 ln T)^(-1/alpha):

* sparse:   delta(T) = delta0 constant (coarser than the correlation scale),
* pickands: delta(T) = D * (2 ln T)^(-1/alpha) (critical scale),
* dense:    delta(T) = (2 ln T)^(-2/alpha) (finer, asymptotically negligible).

Grids start at t = 0 and are snapped to the lattice so both maxima live on
a common probability space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gaussim import LatticeSpec, VectorChiInput

__all__ = [
    "GridKind",
    "GridSpec",
    "ChiPath",
    "MaximaPair",
    "GridFinerThanMesh",
    "DegenerateZeroVector",
    "chi_path",
    "nominal_spacing",
    "grid_spacing",
    "maxima_pair",
    "sphere_oracle",
]


class GridFinerThanMesh(Exception):
    """Nominal grid spacing fell below the lattice mesh; refine the mesh."""


class DegenerateZeroVector(Exception):
    """All m components vanished at a lattice point (probability zero)."""


class GridKind(enum.Enum):
    SPARSE = "sparse"
    PICKANDS = "pickands"
    DENSE = "dense"


@dataclass(frozen=True)
class GridSpec:
    """Observation grid {k * delta(T)} with the spacing rule of ``kind``."""

    kind: GridKind
    D: Optional[float] = None
    delta0: float = 1.0

    def __post_init__(self):
        if self.kind is GridKind.PICKANDS:
            if self.D is None or self.D <= 0.0:
                raise ValueError("Pickands grid needs D > 0")
        if self.kind is GridKind.SPARSE and self.delta0 <= 0.0:
            raise ValueError(f"sparse grid needs delta0 > 0, got {self.delta0}")


@dataclass(eq=False)
class ChiPath:
    spec: LatticeSpec
    values: np.ndarray
    m: int


@dataclass(frozen=True)
class MaximaPair:
    m_cont: float
    m_grid: float
    delta_used: float
    T: float


def chi_path(vec: VectorChiInput) -> ChiPath:
    """Pointwise Euclidean norm of the m components."""
    return ChiPath(vec.spec, np.sqrt((vec.components**2).sum(axis=0)), vec.m)


def nominal_spacing(grid: GridSpec, T: float, alpha: float) -> float:
    """delta(T) before snapping to the lattice."""
    if grid.kind is GridKind.SPARSE:
        return grid.delta0
    scale = (2.0 * math.log(T)) ** (-1.0 / alpha)
    if grid.kind is GridKind.PICKANDS:
        return grid.D * scale
    return scale**2  # dense: (2 ln T)^(-2/alpha)


def grid_spacing(
    grid: GridSpec, T: float, alpha: float, mesh: float
) -> tuple[float, int]:
    """Snap delta(T) to the nearest positive lattice multiple.

    Returns (delta_used, index stride). Raises GridFinerThanMesh when the
    nominal spacing cannot be represented on the lattice.
    """
    if T <= math.e:
        raise ValueError(f"need T > e, got {T}")
    nominal = nominal_spacing(grid, T, alpha)
    if nominal < mesh * (1.0 - 1e-9):
        raise GridFinerThanMesh(
            f"{grid.kind.value} grid wants delta(T) = {nominal:.6g} below the "
            f"lattice mesh {mesh:.6g}; refine the mesh"
        )
    stride = max(1, int(round(nominal / mesh)))
    return stride * mesh, stride


def maxima_pair(chi: ChiPath, grid: GridSpec, T: float, alpha: float) -> MaximaPair:
    """Maximum over all lattice points in [0, T] vs over the snapped grid."""
    mesh = chi.spec.mesh
    if chi.spec.horizon < T * (1.0 - 1e-12):
        raise ValueError(
            f"path horizon {chi.spec.horizon:.6g} does not cover T = {T:.6g}"
        )
    delta_used, stride = grid_spacing(grid, T, alpha, mesh)
    last = int(math.floor(T / mesh + 1e-9))
    window = chi.values[: last + 1]
    return MaximaPair(
        m_cont=float(window.max()),
        m_grid=float(window[::stride].max()),
        delta_used=delta_used,
        T=T,
    )


def sphere_oracle(
    vec: VectorChiInput, k: int, probes: int, rng: np.random.Generator
) -> tuple[float, float]:
    """Check the sphere representation of the chi value at lattice index k.

    The chi value equals sup over unit vectors v of <X(k), v>, attained at
    v = X(k)/|X(k)|. Returns (chi value, best inner product over that
    maximiser plus ``probes`` random unit vectors); the two must agree and
    no random probe may exceed the chi value.
    """
    if probes < 1:
        raise ValueError(f"need probes >= 1, got {probes}")
    x = vec.components[:, k]
    lhs = float(np.linalg.norm(x))
    if lhs == 0.0:
        raise DegenerateZeroVector(f"all components vanish at lattice index {k}")
    best = lhs  # attained at v = x / |x|
    w = rng.standard_normal((probes, vec.m))
    norms = np.linalg.norm(w, axis=1)
    w = w[norms > 0] / norms[norms > 0, None]
    best = max(best, float((w @ x).max()) if len(w) else -math.inf)
    return lhs, best
