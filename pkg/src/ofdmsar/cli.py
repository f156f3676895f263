"""Batch command-line front-end.

Subcommands: ``allocate`` (power allocation for a channel and rate target),
``simulate`` (scene -> raw data -> focused image files), ``mse-sweep``
(MSE-vs-SNR table), ``tradeoff`` (imaging-vs-rate curve), ``scene-gen``
(demo scene files).  Every run echoes the resolved configuration and master
seed; identical config + seed gives byte-identical outputs.

Exit codes: 0 ok, 2 config error, 3 infeasible problem, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import allocation, azimuth, echo, metrics, rangeproc, scenes
from .config import Config, load_config
from .errors import (
    ConfigError,
    InfeasibleChannelError,
    InfeasibleRateError,
    SceneFormatError,
)
from .geometry import load_scene, save_scene
from .output import (
    write_allocation_csv,
    write_db_csv,
    write_pgm,
    write_table_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdmsar",
        description="OFDM SAR imaging and joint-waveform-design toolkit",
    )
    parser.add_argument("--config", type=Path, default=None, help="key=value config file")
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed")
    parser.add_argument("--out", type=Path, default=Path("."), help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("allocate", help="compute a power allocation")
    p.add_argument("--rate-target", type=str, default=None,
                   help="rate floor in bits per channel use, or 'capacity'")
    p.add_argument("--snr-db", type=float, default=None)

    p = sub.add_parser("simulate", help="synthesize echoes and form a SAR image")
    p.add_argument("--scene", type=str, default=None,
                   help="'point', 'car', or a scene file path (overrides config)")
    p.add_argument("--snr-db", type=float, default=None)

    p = sub.add_parser("mse-sweep", help="empirical vs analytic MSE over SNR")
    p.add_argument("--trials", type=int, default=None)

    p = sub.add_parser("tradeoff", help="imaging EMSE vs communication rate curve")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--snr-db", type=float, default=None)

    p = sub.add_parser("scene-gen", help="write a demo scene file")
    p.add_argument("--kind", choices=["point", "car"], default="point")

    return parser


def _echo_config(cfg: Config, seed: int) -> None:
    for name, value in cfg.items():
        print(f"{name} = {value}")
    print(f"seed = {seed}")


def _resolve_scene(cfg: Config, override: str | None, spec):
    kind = override if override is not None else cfg.scene
    if kind in ("point", "car"):
        return scenes.make_scene(kind, spec, cfg.scene_azimuth)
    return load_scene(kind, spec)


def _cmd_allocate(cfg: Config, args, out: Path) -> int:
    spec = cfg.waveform_spec()
    snr_db = args.snr_db if args.snr_db is not None else cfg.snr_db
    sigma2 = cfg.noise_power(snr_db)
    ch = cfg.channel_gains().rescaled(sigma2)
    policy = cfg.truncation_policy()
    capacity = allocation.achievable_rate(
        allocation.water_filling(ch, spec.power_budget), ch
    )
    if args.rate_target is None:
        alloc = allocation.imaging_optimal(spec.n_subcarriers, spec.power_budget)
    else:
        r0 = capacity if args.rate_target == "capacity" else float(args.rate_target)
        alloc = allocation.emse_rate_constrained(
            ch, spec.power_budget, r0, sigma2, policy
        )
    rate = allocation.achievable_rate(alloc, ch)
    with np.errstate(divide="ignore"):
        emse = float(policy.A * sigma2 * np.sum(1.0 / alloc.powers))
    print(f"capacity_bits = {capacity!r}")
    print(f"rate_bits = {rate!r}")
    print(f"rate_bits_scaled_by_bandwidth = {rate * spec.bandwidth!r}")
    print(f"emse = {emse!r}")
    write_allocation_csv(out / "allocation.csv", alloc, ch)
    print(f"wrote {out / 'allocation.csv'}")
    return EXIT_OK


def _cmd_simulate(cfg: Config, args, out: Path, seed: int) -> int:
    spec = cfg.waveform_spec()
    geom = cfg.geometry()
    snr_db = args.snr_db if args.snr_db is not None else cfg.snr_db
    sigma2 = cfg.noise_power(snr_db)
    scene = _resolve_scene(cfg, args.scene, spec)
    alloc = allocation.PowerAllocation.uniform(spec.n_subcarriers, spec.power_budget)
    cube = echo.synthesize_raw(spec, geom, scene, alloc, sigma2, seed)
    profiles = rangeproc.range_profile_cube(cube)
    corrected = azimuth.rcmc_bulk(profiles, geom, scene.range_cell_size)
    image = azimuth.azimuth_compress(corrected, geom)
    peak = np.unravel_index(np.argmax(np.abs(image.complex_image)), image.db_image.shape)
    print(f"peak_cell = {peak[0]} {peak[1]}")
    write_pgm(out / "image.pgm", image.db_image)
    write_db_csv(out / "image_db.csv", image.db_image)
    print(f"wrote {out / 'image.pgm'}")
    print(f"wrote {out / 'image_db.csv'}")
    return EXIT_OK


def _cmd_mse_sweep(cfg: Config, args, out: Path, seed: int) -> int:
    spec = cfg.waveform_spec()
    trials = args.trials if args.trials is not None else cfg.trials
    rows = metrics.mse_vs_snr(
        spec,
        cfg.channel_gains(),
        None,
        cfg.snr_grid_values(),
        trials,
        seed,
        cfg.truncation_policy(),
    )
    write_table_csv(out / "mse_sweep.csv", rows)
    print(f"wrote {out / 'mse_sweep.csv'}")
    return EXIT_OK


def _cmd_tradeoff(cfg: Config, args, out: Path) -> int:
    spec = cfg.waveform_spec()
    snr_db = args.snr_db if args.snr_db is not None else cfg.snr_db
    sigma2 = cfg.noise_power(snr_db)
    ch = cfg.channel_gains().rescaled(sigma2)
    n_points = args.points if args.points is not None else cfg.tradeoff_points
    points = allocation.tradeoff_sweep(
        ch, spec.power_budget, sigma2, cfg.truncation_policy(), n_points
    )
    rows = [
        {
            "rate_floor": pt.rate_floor,
            "rate_achieved": pt.rate_achieved,
            "emse": pt.emse,
        }
        for pt in points
    ]
    write_table_csv(out / "tradeoff.csv", rows)
    print(f"wrote {out / 'tradeoff.csv'}")
    return EXIT_OK


def _cmd_scene_gen(cfg: Config, args, out: Path) -> int:
    spec = cfg.waveform_spec()
    scene = scenes.make_scene(args.kind, spec, cfg.scene_azimuth)
    path = out / f"scene_{args.kind}.txt"
    save_scene(scene, path)
    print(f"wrote {path}")
    return EXIT_OK


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        out = args.out
        out.mkdir(parents=True, exist_ok=True)
        _echo_config(cfg, args.seed)
        if args.command == "allocate":
            return _cmd_allocate(cfg, args, out)
        if args.command == "simulate":
            return _cmd_simulate(cfg, args, out, args.seed)
        if args.command == "mse-sweep":
            return _cmd_mse_sweep(cfg, args, out, args.seed)
        if args.command == "tradeoff":
            return _cmd_tradeoff(cfg, args, out)
        if args.command == "scene-gen":
            return _cmd_scene_gen(cfg, args, out)
        raise AssertionError(f"unhandled command {args.command}")
    except (SceneFormatError, OSError) as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InfeasibleRateError, InfeasibleChannelError) as exc:
        print(f"error: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ConfigError, ValueError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
