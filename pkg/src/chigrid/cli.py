"""Command line interface.

Subcommands:

* ``simulate``   one replication, dump the component paths and maxima
* ``pickands``   estimate the constants for the configured model only
* ``limits``     theoretical joint CDF table only
* ``compare``    empirical CDF from an existing samples.csv vs theory
* ``experiment`` full pipeline: simulate, compare, persist

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 IO error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import chiproc, gaussim, harness, pickands, theory
from .chiproc import DegenerateZeroVector, GridFinerThanMesh, GridKind
from .gaussim import EmbeddingNotPSD
from .harness import OutputExists, ParseError, ValidationError
from .streams import PURPOSE_H_ALPHA, PURPOSE_H_GRID, ReplicationStreams
from .theory import FrechetViolation

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_CONFIG_ERRORS = (ParseError, ValidationError, ValueError)
_NUMERICAL_ERRORS = (
    EmbeddingNotPSD,
    GridFinerThanMesh,
    DegenerateZeroVector,
    FrechetViolation,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chigrid",
        description="Joint limit laws for continuous vs grid maxima of chi-processes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("simulate", "run one replication and dump the paths"),
        ("pickands", "estimate the Pickands-type constants only"),
        ("limits", "write the theoretical joint CDF table only"),
        ("compare", "compare an existing samples.csv against theory"),
        ("experiment", "full pipeline: simulate, compare, persist"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, type=Path, help="JSON config path")
        p.add_argument("--out", required=True, type=Path, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override master_seed")
        p.add_argument("--workers", type=int, default=None, help="parallel workers")
        p.add_argument("--force", action="store_true", help="overwrite outputs")
    return parser


def _load_config(args) -> harness.ExperimentConfig:
    try:
        text = args.config.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {args.config}: {exc}") from exc
    config = harness.parse_config(text)
    if args.seed is not None:
        import dataclasses

        config = dataclasses.replace(config, master_seed=args.seed)
    return config


def _refuse_existing(directory: Path, names: tuple[str, ...], force: bool):
    existing = [n for n in names if (directory / n).exists()]
    if existing and not force:
        raise OutputExists(
            f"output file(s) already present in {directory}: {', '.join(existing)}; "
            "use --force to overwrite"
        )


def _cmd_simulate(args) -> int:
    config = _load_config(args)
    args.out.mkdir(parents=True, exist_ok=True)
    _refuse_existing(args.out, ("paths.csv", "replication.json"), args.force)
    rng = ReplicationStreams(config.master_seed).stream(0)
    lattice = config.lattice()
    vec = gaussim.sample_vector_chi_input(config.model(), lattice, config.m, rng)
    chi = chiproc.chi_path(vec)
    pair = chiproc.maxima_pair(chi, config.grid, config.T, config.alpha)
    times = lattice.times()
    with open(args.out / "paths.csv", "w", newline="") as fh:
        header = ",".join(["t"] + [f"x{i + 1}" for i in range(config.m)] + ["chi"])
        fh.write(header + "\n")
        for j in range(lattice.n_points):
            row = [repr(float(times[j]))]
            row += [repr(float(vec.components[i, j])) for i in range(config.m)]
            row.append(repr(float(chi.values[j])))
            fh.write(",".join(row) + "\n")
    payload = {
        "m_cont": pair.m_cont,
        "m_grid": pair.m_grid,
        "delta_used": pair.delta_used,
        "T": pair.T,
        "mesh": config.mesh,
        "master_seed": config.master_seed,
    }
    (args.out / "replication.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {args.out / 'paths.csv'} ({lattice.n_points} points)")
    return EXIT_OK


def _cmd_pickands(args) -> int:
    config = _load_config(args)
    args.out.mkdir(parents=True, exist_ok=True)
    _refuse_existing(args.out, ("pickands.json",), args.force)
    lam, mesh = pickands.default_window(config.alpha)
    payload = {"alpha": config.alpha, "master_seed": config.master_seed, "estimates": {}}

    def record(name: str, est: pickands.PickandsEstimate):
        payload["estimates"][name] = {
            "value": est.value,
            "stderr": est.stderr,
            "lambda": est.lam,
            "mesh": est.mesh,
            "n_rep": est.n_rep,
            "kind": est.kind.value,
            "q999_exp_max": est.q999,
        }

    # two window lengths: the difference is the reported finite-window bias proxy
    for tag, window in (("H_alpha", lam), ("H_alpha_half_window", lam / 2.0)):
        record(
            tag,
            pickands.estimate_H(
                config.alpha, window, mesh, harness.ESTIMATE_N_REP,
                streams=ReplicationStreams(config.master_seed, PURPOSE_H_ALPHA),
            ),
        )
    payload["window_bias_proxy"] = abs(
        payload["estimates"]["H_alpha"]["value"]
        - payload["estimates"]["H_alpha_half_window"]["value"]
    )
    if config.grid.kind is GridKind.PICKANDS:
        delta_used, _ = chiproc.grid_spacing(
            config.grid, config.T, config.alpha, config.mesh
        )
        d_eff = delta_used * (2.0 * math.log(config.T)) ** (1.0 / config.alpha)
        payload["D_effective"] = d_eff
        record(
            "H_D_alpha",
            pickands.estimate_H(
                config.alpha, lam, mesh, harness.ESTIMATE_N_REP, D=d_eff,
                streams=ReplicationStreams(config.master_seed, PURPOSE_H_GRID),
            ),
        )
    (args.out / "pickands.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {args.out / 'pickands.json'}")
    return EXIT_OK


def _cmd_limits(args) -> int:
    config = _load_config(args)
    args.out.mkdir(parents=True, exist_ok=True)
    _refuse_existing(args.out, ("limits.csv",), args.force)
    constants = harness.resolve_constants(config)
    theoretical = harness.theoretical_cdf(config, constants)
    with open(args.out / "limits.csv", "w", newline="") as fh:
        fh.write("x,y,theoretical\n")
        for (x, y), value in zip(config.eval_points, theoretical):
            fh.write(f"{x!r},{y!r},{float(value)!r}\n")
    print(f"wrote {args.out / 'limits.csv'} ({len(theoretical)} points)")
    return EXIT_OK


def _cmd_compare(args) -> int:
    config = _load_config(args)
    samples_path = args.out / "samples.csv"
    if not samples_path.exists():
        raise OutputExists(f"compare needs an existing {samples_path}")
    _refuse_existing(args.out, ("cdf.csv", "summary.json"), args.force)
    pairs = []
    with open(samples_path, newline="") as fh:
        for row in csv.DictReader(fh):
            pairs.append((float(row["norm_cont"]), float(row["norm_grid"])))
    pairs = np.asarray(pairs)
    constants = harness.resolve_constants(config)
    empirical = harness.empirical_joint_cdf(pairs, config.eval_points)
    theoretical = harness.theoretical_cdf(config, constants)
    diff = empirical - theoretical
    marginal = lambda v: theory.limit_marginal(v, config.r, config.m)  # noqa: E731
    with open(args.out / "cdf.csv", "w", newline="") as fh:
        fh.write("x,y,empirical,theoretical,diff\n")
        for (x, y), e, t, d in zip(config.eval_points, empirical, theoretical, diff):
            fh.write(f"{x!r},{y!r},{float(e)!r},{float(t)!r},{float(d)!r}\n")
    summary = {
        "sup_distance": float(np.abs(diff).max()),
        "marginal_ks_cont": harness.ks_distance(pairs[:, 0], marginal),
        "marginal_ks_grid": harness.ks_distance(pairs[:, 1], marginal),
        "n_rep": len(pairs),
        "runtimes": {},
    }
    (args.out / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n"
    )
    print(f"sup_distance = {summary['sup_distance']:.6f}")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = _load_config(args)
    args.out.mkdir(parents=True, exist_ok=True)
    _refuse_existing(args.out, harness.OUTPUT_FILES, args.force)
    report = harness.run_experiment(config, args.workers)
    harness.write_outputs(report, args.out, force=args.force)
    print(
        f"n_rep = {config.n_rep}, sup_distance = {report.sup_distance:.6f}, "
        f"marginal KS (cont) = {report.marginal_ks_cont:.6f}, "
        f"outputs in {args.out}"
    )
    return EXIT_OK


_COMMANDS = {
    "simulate": _cmd_simulate,
    "pickands": _cmd_pickands,
    "limits": _cmd_limits,
    "compare": _cmd_compare,
    "experiment": _cmd_experiment,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _CONFIG_ERRORS as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OutputExists, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint():  # console script
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
