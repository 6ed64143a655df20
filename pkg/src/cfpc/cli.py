"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 infeasible experiment.
"""

import argparse
import dataclasses
import logging
import sys

from cfpc.config import ConfigError, load_config
from cfpc.harness import ExperimentSpec, InfeasibleExperimentError, run_experiment
from cfpc.schemes import SchemeId

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _parse_schemes(text: str):
    schemes = []
    for name in text.split(","):
        name = name.strip().lower()
        if not name:
            continue
        try:
            schemes.append(SchemeId(name))
        except ValueError:
            raise ConfigError(f"unknown scheme {name!r}; expected "
                              "ippa, nppa, cppa, fppa")
    if not schemes:
        raise ConfigError("no schemes selected")
    return schemes


def _parse_sweep(text: str):
    points = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        try:
            m, n = token.split("x")
            points.append((int(m), int(n)))
        except ValueError:
            raise ConfigError(f"bad sweep point {token!r}; expected MxN")
    if not points:
        raise ConfigError("empty sweep")
    return points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfpc",
        description="Cell-free massive MIMO uplink power-control experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a Monte-Carlo experiment")
    run.add_argument("--config", required=True, help="TOML configuration file")
    run.add_argument("--seed", type=int, default=None,
                     help="override the configured RNG seed")
    run.add_argument("--realizations", type=int, default=100)
    run.add_argument("--schemes", default="ippa,nppa,cppa,fppa",
                     help="comma-separated subset of ippa,nppa,cppa,fppa")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument("--sweep", default=None,
                     help='AP/antenna sweep points, e.g. "100x1,50x2,25x4"')
    run.add_argument("--metric", choices=("pooled", "minrate"),
                     default="pooled",
                     help="50%%-likely statistic: pooled per-user SE or "
                          "per-realization minimum")
    run.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config = dataclasses.replace(config, rng_seed=args.seed)
        spec = ExperimentSpec(
            config=config,
            schemes=_parse_schemes(args.schemes),
            realizations=args.realizations,
            output_dir=args.out,
            sweep=_parse_sweep(args.sweep) if args.sweep else None,
            metric=args.metric,
        )
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        run_experiment(spec)
    except InfeasibleExperimentError as exc:
        print(f"infeasible experiment: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
