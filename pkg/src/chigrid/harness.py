"""Experiment harness: config, seeded parallel runs, CDF comparison, output.

One experiment simulates n_rep independent chi-process paths at horizon T,
records the continuous-vs-grid maxima pair per replication, normalizes
them, and compares the empirical joint CDF on a grid of evaluation points
against the theoretical limiting CDF for the configured grid regime.

Replications are embarrassingly parallel: replication i draws from the
stream derived from (master_seed, i), workers fill disjoint slots, and
aggregation is a deterministic fold in replication order, so reports do
not depend on the worker count.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__ as _pkg_version
from . import chiproc, gaussim, pickands, theory
from .chiproc import GridKind, GridSpec, MaximaPair
from .gaussim import CorrelationModel, LatticeSpec
from .streams import (
    PURPOSE_H_ALPHA,
    PURPOSE_H_GRID,
    PURPOSE_TWO_INDEX,
    ReplicationStreams,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "OutputExists",
    "ExperimentConfig",
    "NormalizedPair",
    "ReplicationResult",
    "ConstantsBundle",
    "ComparisonReport",
    "parse_config",
    "run_experiment",
    "run_replications",
    "mesh_refinement_audit",
    "empirical_joint_cdf",
    "ks_distance",
    "resolve_constants",
    "theoretical_cdf",
    "write_outputs",
    "default_workers",
]

DEFAULT_ETA = 0.05
DEFAULT_EVAL_AXIS = (-2.0, -1.0, 0.0, 1.0, 2.0, 3.0)
DEFAULT_EVAL_POINTS = tuple((x, y) for x in DEFAULT_EVAL_AXIS for y in DEFAULT_EVAL_AXIS)
#: replications per constant estimation when constants_source = "estimate"
ESTIMATE_N_REP = 100_000
TWO_INDEX_N_REP = 20_000

OUTPUT_FILES = ("manifest.json", "samples.csv", "cdf.csv", "summary.json")


class ParseError(Exception):
    """Config document is not valid JSON / has unknown or duplicate keys."""


class ValidationError(Exception):
    """Config violates a domain invariant."""


class OutputExists(Exception):
    """Refusing to overwrite previous outputs without force."""


@dataclass(frozen=True)
class ExperimentConfig:
    m: int
    alpha: float
    r: float
    T: float
    grid: GridSpec
    n_rep: int
    master_seed: int
    eta: float = DEFAULT_ETA
    eval_points: tuple[tuple[float, float], ...] = DEFAULT_EVAL_POINTS
    constants_source: str = "estimate"
    H_alpha: Optional[float] = None
    H_D_alpha: Optional[float] = None
    pickands_terms: Optional[tuple[float, ...]] = None

    @property
    def mesh(self) -> float:
        """Lattice mesh eta * (2 ln T)^(-1/alpha)."""
        return self.eta * (2.0 * math.log(self.T)) ** (-1.0 / self.alpha)

    def model(self) -> CorrelationModel:
        if self.r > 0.0:
            return CorrelationModel.strong_mixture(self.alpha, self.r, self.T)
        return CorrelationModel.exp_power(self.alpha)

    def lattice(self) -> LatticeSpec:
        return LatticeSpec.covering(self.T, self.mesh)


@dataclass(frozen=True)
class NormalizedPair:
    norm_cont: float
    norm_grid: float


@dataclass(frozen=True)
class ReplicationResult:
    index: int
    pair: MaximaPair
    normalized: NormalizedPair


@dataclass(frozen=True)
class ConstantsBundle:
    """Constants actually used for normalization and the theoretical CDF."""

    source: str
    H_alpha: float
    H_D_alpha: Optional[float] = None
    pickands_terms: Optional[tuple[float, ...]] = None
    pickands_stderr: Optional[tuple[float, ...]] = None
    estimate_params: Optional[dict] = None


@dataclass(eq=False)
class ComparisonReport:
    config: ExperimentConfig
    results: list[ReplicationResult]
    empirical: np.ndarray
    theoretical: np.ndarray
    per_point: np.ndarray
    sup_distance: float
    marginal_ks_cont: float
    marginal_ks_grid: float
    constants: ConstantsBundle
    metadata: dict


# ---------------------------------------------------------------------------
# config parsing


def _reject_duplicates(pairs):
    seen = set()
    out = {}
    for key, value in pairs:
        if key in seen:
            raise ParseError(f"duplicate key '{key}'")
        seen.add(key)
        out[key] = value
    return out


_TOP_KEYS = {
    "m", "alpha", "r", "T", "grid", "eta", "n_rep", "master_seed",
    "eval_points", "constants_source", "H_alpha", "H_D_alpha", "pickands_terms",
}
_GRID_KEYS = {"kind", "D", "delta0"}


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(f"{path}{key}: missing required field")
    return obj[key]


def _as_real(value, path: str, integer: bool = False):
    ok = isinstance(value, int) if integer else isinstance(value, (int, float))
    if not ok or isinstance(value, bool) or not math.isfinite(float(value)):
        kind = "an integer" if integer else "a finite number"
        raise ParseError(f"{path}: expected {kind}, got {value!r}")
    return int(value) if integer else float(value)


def parse_config(document: str) -> ExperimentConfig:
    """Validated config from a JSON document; unknown keys are rejected."""
    try:
        raw = json.loads(document, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError("top-level document must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ParseError(f"unknown key(s): {', '.join(sorted(unknown))}")

    m = _as_real(_require(raw, "m", ""), "m", integer=True)
    alpha = _as_real(_require(raw, "alpha", ""), "alpha")
    r = _as_real(_require(raw, "r", ""), "r")
    T = _as_real(_require(raw, "T", ""), "T")
    n_rep = _as_real(_require(raw, "n_rep", ""), "n_rep", integer=True)
    master_seed = _as_real(_require(raw, "master_seed", ""), "master_seed", integer=True)
    eta = _as_real(raw.get("eta", DEFAULT_ETA), "eta")

    grid_raw = _require(raw, "grid", "")
    if not isinstance(grid_raw, dict):
        raise ParseError("grid: expected an object")
    unknown = set(grid_raw) - _GRID_KEYS
    if unknown:
        raise ParseError(f"grid: unknown key(s): {', '.join(sorted(unknown))}")
    kind_raw = _require(grid_raw, "kind", "grid.")
    try:
        kind = GridKind(kind_raw)
    except ValueError:
        raise ParseError(
            f"grid.kind: expected one of sparse/pickands/dense, got {kind_raw!r}"
        ) from None
    D = _as_real(grid_raw["D"], "grid.D") if "D" in grid_raw else None
    delta0 = _as_real(grid_raw.get("delta0", 1.0), "grid.delta0")

    if "eval_points" in raw:
        pts_raw = raw["eval_points"]
        if not isinstance(pts_raw, list) or not pts_raw:
            raise ParseError("eval_points: expected a nonempty list of [x, y] pairs")
        pts = []
        for i, p in enumerate(pts_raw):
            if not isinstance(p, list) or len(p) != 2:
                raise ParseError(f"eval_points[{i}]: expected an [x, y] pair")
            pts.append((_as_real(p[0], f"eval_points[{i}][0]"),
                        _as_real(p[1], f"eval_points[{i}][1]")))
        eval_points = tuple(pts)
    else:
        eval_points = DEFAULT_EVAL_POINTS

    source = raw.get("constants_source", "estimate")
    if source not in ("estimate", "provided"):
        raise ParseError(
            f"constants_source: expected 'estimate' or 'provided', got {source!r}"
        )
    H_alpha = _as_real(raw["H_alpha"], "H_alpha") if "H_alpha" in raw else None
    H_D_alpha = _as_real(raw["H_D_alpha"], "H_D_alpha") if "H_D_alpha" in raw else None
    terms = None
    if "pickands_terms" in raw:
        terms_raw = raw["pickands_terms"]
        if not isinstance(terms_raw, list) or len(terms_raw) != len(eval_points):
            raise ParseError(
                "pickands_terms: expected a list aligned with eval_points "
                f"(length {len(eval_points)})"
            )
        terms = tuple(_as_real(v, f"pickands_terms[{i}]") for i, v in enumerate(terms_raw))

    # domain invariants
    if m < 1:
        raise ValidationError(f"m: need an integer >= 1, got {m}")
    if not 0.0 < alpha <= 2.0:
        raise ValidationError(f"alpha: need alpha in (0, 2], got {alpha}")
    if r < 0.0:
        raise ValidationError(f"r: need r >= 0, got {r}")
    if T <= math.e:
        raise ValidationError(f"T: need T > e so ln T > 1, got {T}")
    if eta <= 0.0:
        raise ValidationError(f"eta: need eta > 0, got {eta}")
    if n_rep < 1:
        raise ValidationError(f"n_rep: need n_rep >= 1, got {n_rep}")
    if not -(2**63) <= master_seed < 2**64:
        raise ValidationError("master_seed: need a 64-bit integer")
    if source == "provided":
        if H_alpha is None:
            raise ValidationError("constants_source = provided requires H_alpha")
        if kind is GridKind.PICKANDS and H_D_alpha is None:
            raise ValidationError(
                "constants_source = provided with a pickands grid requires H_D_alpha"
            )
    if H_alpha is not None and H_alpha <= 0:
        raise ValidationError(f"H_alpha: need a positive value, got {H_alpha}")
    if H_D_alpha is not None and H_D_alpha <= 0:
        raise ValidationError(f"H_D_alpha: need a positive value, got {H_D_alpha}")
    try:
        grid = GridSpec(kind, D, delta0)
    except ValueError as exc:
        raise ValidationError(f"grid: {exc}") from exc
    return ExperimentConfig(
        m=m, alpha=alpha, r=r, T=T, grid=grid, n_rep=n_rep,
        master_seed=master_seed, eta=eta, eval_points=eval_points,
        constants_source=source, H_alpha=H_alpha, H_D_alpha=H_D_alpha,
        pickands_terms=terms,
    )


# ---------------------------------------------------------------------------
# replication execution

_WORKER_CTX: dict = {}


def _one_replication(config: ExperimentConfig, index: int) -> tuple[int, float, float, float]:
    rng = ReplicationStreams(config.master_seed).stream(index)
    vec = gaussim.sample_vector_chi_input(config.model(), config.lattice(), config.m, rng)
    chi = chiproc.chi_path(vec)
    pair = chiproc.maxima_pair(chi, config.grid, config.T, config.alpha)
    return index, pair.m_cont, pair.m_grid, pair.delta_used


def _one_audit_replication(config: ExperimentConfig, index: int) -> tuple[int, float, float, float]:
    """Fine-mesh continuous max and, for the same path, the max over every
    second lattice point (exactly the law of a run at twice the mesh)."""
    rng = ReplicationStreams(config.master_seed).stream(index)
    lattice = config.lattice()
    vec = gaussim.sample_vector_chi_input(config.model(), lattice, config.m, rng)
    chi = chiproc.chi_path(vec)
    last = int(math.floor(config.T / lattice.mesh + 1e-9))
    window = chi.values[: last + 1]
    return index, float(window.max()), float(window[::2].max()), 0.0

_REPLICATION_FNS = {
    "pair": _one_replication,
    "audit": _one_audit_replication,
}


def _worker_init(config: ExperimentConfig, mode: str):
    _WORKER_CTX["config"] = config
    _WORKER_CTX["mode"] = mode


def _worker_chunk(indices: Sequence[int]) -> list[tuple[int, float, float, float]]:
    fn = _REPLICATION_FNS[_WORKER_CTX["mode"]]
    config = _WORKER_CTX["config"]
    return [fn(config, i) for i in indices]


def default_workers() -> int:
    env = os.environ.get("CHIGRID_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def _run_indexed(
    config: ExperimentConfig, mode: str, workers: Optional[int]
) -> list[tuple[int, float, float, float]]:
    workers = default_workers() if workers is None else max(1, workers)
    fn = _REPLICATION_FNS[mode]
    indices = range(config.n_rep)
    if workers == 1:
        return [fn(config, i) for i in indices]
    chunk = max(1, math.ceil(config.n_rep / (workers * 8)))
    chunks = [list(indices[s : s + chunk]) for s in range(0, config.n_rep, chunk)]
    out: list = []
    with ProcessPoolExecutor(
        max_workers=workers, initializer=_worker_init, initargs=(config, mode)
    ) as pool:
        for part in pool.map(_worker_chunk, chunks):
            out.extend(part)
    return out


def run_replications(
    config: ExperimentConfig, workers: Optional[int] = None
) -> list[tuple[int, float, float, float]]:
    """(index, m_cont, m_grid, delta_used) per replication, in index order.

    Identical output for every worker count: streams are per-index and the
    fold is ordered.
    """
    return _run_indexed(config, "pair", workers)


# ---------------------------------------------------------------------------
# constants and theory values


def resolve_constants(config: ExperimentConfig) -> ConstantsBundle:
    """Constants for normalization/limits, estimated unless provided.

    Estimated constants use dedicated stream purposes of the master seed so
    they never overlap replication streams. Estimated Pickands-grid terms
    are clamped to the Frechet bound min(e^-x, e^-y).
    """
    if config.constants_source == "provided":
        return ConstantsBundle(
            "provided", config.H_alpha, config.H_D_alpha, config.pickands_terms
        )
    lam, mesh = pickands.default_window(config.alpha)
    params = {"lambda": lam, "mesh": mesh, "n_rep": ESTIMATE_N_REP}
    h_est = pickands.estimate_H(
        config.alpha, lam, mesh, ESTIMATE_N_REP,
        streams=ReplicationStreams(config.master_seed, PURPOSE_H_ALPHA),
    )
    h_alpha = config.H_alpha if config.H_alpha is not None else h_est.value
    if config.grid.kind is not GridKind.PICKANDS:
        return ConstantsBundle("estimate", h_alpha, estimate_params=params)
    delta_used, stride = chiproc.grid_spacing(
        config.grid, config.T, config.alpha, config.mesh
    )
    # grid step on the correlation scale: delta_used = D_eff (2 ln T)^(-1/alpha)
    d_eff = delta_used * (2.0 * math.log(config.T)) ** (1.0 / config.alpha)
    hd_est = pickands.estimate_H(
        config.alpha, lam, mesh, ESTIMATE_N_REP, D=d_eff,
        streams=ReplicationStreams(config.master_seed, PURPOSE_H_GRID),
    )
    h_d = config.H_D_alpha if config.H_D_alpha is not None else hd_est.value
    if config.pickands_terms is not None:
        return ConstantsBundle("estimate", h_alpha, h_d, config.pickands_terms, None, params)
    shifted = [
        (math.log(h_alpha) + x, math.log(h_d) + y) for (x, y) in config.eval_points
    ]
    table = pickands.estimate_two_index_table(
        shifted, config.alpha, config.m, d_eff, lam, mesh, TWO_INDEX_N_REP,
        streams=ReplicationStreams(config.master_seed, PURPOSE_TWO_INDEX),
    )
    factor = math.pi ** ((config.m - 1) / 2.0)
    terms, errs = [], []
    for (x, y), est in zip(config.eval_points, table):
        bound = min(math.exp(-x), math.exp(-y))
        terms.append(min(factor * est.value, bound))
        errs.append(factor * est.stderr)
    return ConstantsBundle(
        "estimate", h_alpha, h_d, tuple(terms), tuple(errs),
        {**params, "two_index_n_rep": TWO_INDEX_N_REP},
    )


def theoretical_cdf(config: ExperimentConfig, constants: ConstantsBundle) -> np.ndarray:
    values = np.empty(len(config.eval_points))
    for i, (x, y) in enumerate(config.eval_points):
        term = 0.0
        if config.grid.kind is GridKind.PICKANDS:
            if constants.pickands_terms is None:
                raise ValidationError("pickands grid needs pickands terms")
            term = constants.pickands_terms[i]
        spec = theory.LimitSpec(config.m, config.r, config.grid.kind, term)
        values[i] = theory.limit_joint(x, y, spec)
    return values


# ---------------------------------------------------------------------------
# empirical side


def empirical_joint_cdf(samples, eval_points) -> np.ndarray:
    """F_hat(x, y): fraction of sample pairs with both coordinates <= (x, y)."""
    arr = np.asarray(
        [(s.norm_cont, s.norm_grid) if isinstance(s, NormalizedPair) else tuple(s)
         for s in samples],
        dtype=float,
    )
    if arr.size == 0:
        raise ValueError("need at least one sample")
    pts = np.asarray(list(eval_points), dtype=float)
    cont = arr[:, 0][None, :] <= pts[:, 0][:, None]
    grid = arr[:, 1][None, :] <= pts[:, 1][:, None]
    return (cont & grid).mean(axis=1)


def ks_distance(sample: np.ndarray, cdf) -> float:
    """One-sample Kolmogorov-Smirnov sup distance against callable cdf."""
    xs = np.sort(np.asarray(sample, dtype=float))
    n = len(xs)
    fv = np.asarray([cdf(v) for v in xs])
    up = (np.arange(1, n + 1) / n - fv).max()
    down = (fv - np.arange(0, n) / n).max()
    return float(max(up, down))


# ---------------------------------------------------------------------------
# experiment pipeline


def _normalize(
    config: ExperimentConfig, constants: ConstantsBundle,
    raw: list[tuple[int, float, float, float]],
) -> tuple[list[ReplicationResult], theory.NormConstants]:
    delta_used = raw[0][3]
    nc = theory.norm_constants(
        config.T, config.m, config.alpha, config.grid.kind,
        constants.H_alpha, constants.H_D_alpha, delta_used,
    )
    results = []
    for index, m_cont, m_grid, d_used in raw:
        normalized = NormalizedPair(
            nc.a_T * (m_cont - nc.b_T), nc.a_T * (m_grid - nc.b_delta_T)
        )
        pair = MaximaPair(m_cont, m_grid, d_used, config.T)
        results.append(ReplicationResult(index, pair, normalized))
    return results, nc


def run_experiment(
    config: ExperimentConfig, workers: Optional[int] = None
) -> ComparisonReport:
    """Full pipeline: simulate, normalize, compare against the limit CDF."""
    t_start = time.perf_counter()
    constants = resolve_constants(config)
    t_constants = time.perf_counter()
    raw = run_replications(config, workers)
    t_sim = time.perf_counter()
    results, nc = _normalize(config, constants, raw)
    pairs = np.array(
        [(r.normalized.norm_cont, r.normalized.norm_grid) for r in results]
    )
    empirical = empirical_joint_cdf(pairs, config.eval_points)
    theoretical = theoretical_cdf(config, constants)
    per_point = empirical - theoretical
    marginal = lambda v: theory.limit_marginal(v, config.r, config.m)  # noqa: E731
    report = ComparisonReport(
        config=config,
        results=results,
        empirical=empirical,
        theoretical=theoretical,
        per_point=per_point,
        sup_distance=float(np.abs(per_point).max()),
        marginal_ks_cont=ks_distance(pairs[:, 0], marginal),
        marginal_ks_grid=ks_distance(pairs[:, 1], marginal),
        constants=constants,
        metadata={
            "master_seed": config.master_seed,
            "delta_used": results[0].pair.delta_used,
            "mesh": config.mesh,
            "n_lattice_points": config.lattice().n_points,
            "a_T": nc.a_T,
            "b_T": nc.b_T,
            "b_delta_T": nc.b_delta_T,
            "versions": _versions(),
            "runtimes": {
                "constants_s": t_constants - t_start,
                "simulation_s": t_sim - t_constants,
                "total_s": time.perf_counter() - t_start,
            },
        },
    )
    return report


def mesh_refinement_audit(
    config: ExperimentConfig, workers: Optional[int] = None
) -> tuple[np.ndarray, np.ndarray]:
    """Normalized continuous maxima at mesh eta and eta/2, coupled per path.

    Runs the replications at the finer mesh eta/2 and also records, for the
    same path, the maximum over every second lattice point; that restriction
    has exactly the law of an eta run, so the CDF difference of the two
    returned samples isolates discretization bias from Monte Carlo noise.
    """
    fine = dataclasses.replace(config, eta=config.eta / 2.0)
    raw = _run_indexed(fine, "audit", workers)
    fine_vals = np.empty(fine.n_rep)
    coarse_vals = np.empty(fine.n_rep)
    for index, m_fine, m_coarse, _ in raw:
        fine_vals[index] = m_fine
        coarse_vals[index] = m_coarse
    h_alpha = config.H_alpha if config.H_alpha is not None else 1.0
    nc = theory.norm_constants(
        config.T, config.m, config.alpha, GridKind.DENSE, h_alpha
    )
    return (
        nc.a_T * (fine_vals - nc.b_T),
        nc.a_T * (coarse_vals - nc.b_T),
    )


def _versions() -> dict:
    import scipy

    return {
        "chigrid": _pkg_version,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
    }


# ---------------------------------------------------------------------------
# persistence


def _float_repr(x: float) -> str:
    return repr(float(x))


def write_outputs(report: ComparisonReport, directory, force: bool = False) -> dict:
    """Write manifest.json, samples.csv, cdf.csv, summary.json.

    Existing output files are never overwritten unless force is set.
    Returns the manifest. CSV files use '.' decimals, LF line ends, and
    full round-trip float precision.
    """
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    existing = [f for f in OUTPUT_FILES if (directory / f).exists()]
    if existing and not force:
        raise OutputExists(
            f"output file(s) already present in {directory}: {', '.join(existing)}; "
            "pass force to overwrite"
        )

    config = report.config
    manifest = {
        "config": _config_to_dict(config),
        "master_seed": config.master_seed,
        "versions": report.metadata["versions"],
        "delta_used": report.metadata["delta_used"],
        "mesh": report.metadata["mesh"],
        "normalization": {
            "a_T": report.metadata["a_T"],
            "b_T": report.metadata["b_T"],
            "b_delta_T": report.metadata["b_delta_T"],
        },
        "constants": {
            "source": report.constants.source,
            "H_alpha": report.constants.H_alpha,
            "H_D_alpha": report.constants.H_D_alpha,
            "pickands_terms": list(report.constants.pickands_terms)
            if report.constants.pickands_terms is not None else None,
            "estimate_params": report.constants.estimate_params,
        },
    }
    _write_json(directory / "manifest.json", manifest)

    with open(directory / "samples.csv", "w", newline="") as fh:
        fh.write("replication_index,m_cont,m_grid,norm_cont,norm_grid\n")
        for r in report.results:
            fh.write(
                f"{r.index},{_float_repr(r.pair.m_cont)},{_float_repr(r.pair.m_grid)},"
                f"{_float_repr(r.normalized.norm_cont)},{_float_repr(r.normalized.norm_grid)}\n"
            )

    with open(directory / "cdf.csv", "w", newline="") as fh:
        fh.write("x,y,empirical,theoretical,diff\n")
        for (x, y), emp, theo, diff in zip(
            config.eval_points, report.empirical, report.theoretical, report.per_point
        ):
            fh.write(
                f"{_float_repr(x)},{_float_repr(y)},{_float_repr(emp)},"
                f"{_float_repr(theo)},{_float_repr(diff)}\n"
            )

    summary = {
        "sup_distance": report.sup_distance,
        "marginal_ks_cont": report.marginal_ks_cont,
        "marginal_ks_grid": report.marginal_ks_grid,
        "n_rep": config.n_rep,
        "runtimes": report.metadata["runtimes"],
    }
    _write_json(directory / "summary.json", summary)
    return manifest


def _config_to_dict(config: ExperimentConfig) -> dict:
    grid: dict = {"kind": config.grid.kind.value}
    if config.grid.kind is GridKind.PICKANDS:
        grid["D"] = config.grid.D
    if config.grid.kind is GridKind.SPARSE:
        grid["delta0"] = config.grid.delta0
    out = {
        "m": config.m,
        "alpha": config.alpha,
        "r": config.r,
        "T": config.T,
        "grid": grid,
        "eta": config.eta,
        "n_rep": config.n_rep,
        "master_seed": config.master_seed,
        "eval_points": [list(p) for p in config.eval_points],
        "constants_source": config.constants_source,
    }
    for key in ("H_alpha", "H_D_alpha"):
        if getattr(config, key) is not None:
            out[key] = getattr(config, key)
    if config.pickands_terms is not None:
        out["pickands_terms"] = list(config.pickands_terms)
    return out


def _write_json(path, payload: dict):
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
