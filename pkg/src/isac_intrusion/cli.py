"""``simulate`` command: run a Monte-Carlo experiment and export results."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import from_flat, load_config, to_flat
from .errors import ConfigError
from .harness import export_results, run_experiment


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simulate", description=__doc__)
    p.add_argument("--config", help="flat YAML config file (keys mirror ExperimentConfig fields)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--emit-sweeps", action="store_true", help="also write sweeps.csv")
    p.add_argument("--sigma-fading", type=float, help="fading std (dB)")
    p.add_argument("--tau", type=float, help="fine detection threshold (dB)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        values = load_config(args.config) if args.config else {}
        overrides = {"seed": args.seed, "trials": args.trials,
                     "sigma_fading": args.sigma_fading, "tau": args.tau}
        values.update({k: v for k, v in overrides.items() if v is not None})
        cfg = from_flat(values)
    except ConfigError as exc:
        print(f"simulate: invalid configuration: {exc}", file=sys.stderr)
        return 2

    metrics, records = run_experiment(cfg, keep_sweeps=args.emit_sweeps)
    try:
        paths = export_results(metrics, records, args.out, emit_sweeps=args.emit_sweeps, config=to_flat(cfg))
    except OSError as exc:
        print(f"simulate: {exc}", file=sys.stderr)
        return 1
    print(f"accuracy={metrics.accuracy:.3f} fpr={metrics.fpr:.3f} fnr={metrics.fnr:.3f} "
          f"angle_rmse_m={metrics.angle_rmse_m:.4f}")
    for path in paths:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
