"""Command-line entry point: ``gavsa <experiment> [options]``."""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .baselines import Model
from .encoding import Construction, Measure, Mode
from .experiments import KINDS, ConfigError, ExperimentConfig, run, write_csv

SEED_ENV = "GAVSA_SEED"

# config-file keys and how to convert them; flags use the same names
_SCALARS = {
    "n_min": int, "n_max": int, "n_step": int, "trials": int, "seed": int, "jobs": int,
    "multiplier": int, "mode": Mode, "baseline_construction": Construction,
}
_LISTS = {"question": str, "construction": Construction, "measure": Measure, "models": Model, "regimes": str}
_FLAGS = ("definite_inner", "hamming_skip_blank", "restrict_to_top")


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment, lists are comma separated."""
    values: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            try:
                if key in _SCALARS:
                    values[key] = _SCALARS[key](value)
                elif key in _LISTS:
                    values[key] = [_LISTS[key](v.strip()) for v in value.split(",") if v.strip()]
                elif key in _FLAGS:
                    values[key] = _parse_bool(value)
                else:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            except ValueError as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gavsa",
        description="Monte Carlo benchmarks for geometric-algebra distributed representations.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = parser.add_subparsers(dest="kind", required=True, metavar="experiment")
    helps = {
        "recognize": "recognition percentage per N",
        "potential": "mean number of potential answers per N, with the estimate",
        "cancel": "share of trials whose answer is a potential answer",
        "compare": "GA against HRR and BSC at equal and scaled lengths",
        "estimate": "closed-form potential-answer estimates only",
    }
    for kind in KINDS:
        p = sub.add_parser(kind, help=helps[kind])
        p.add_argument("--question", nargs="+", help="question ids, e.g. 'PSmith#name'")
        p.add_argument("--n-min", type=int)
        p.add_argument("--n-max", type=int)
        p.add_argument("--n-step", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV} or 0)")
        p.add_argument("--construction", nargs="+", type=Construction, choices=list(Construction),
                       metavar="{plate,ao,ao-odd}")
        p.add_argument("--mode", type=Mode, choices=list(Mode), metavar="{rhs,reversed}")
        p.add_argument("--measure", nargs="+", type=Measure, choices=list(Measure),
                       metavar="{inner,hamming,euclid}")
        p.add_argument("--models", nargs="+", type=Model, choices=list(Model), metavar="{ga,hrr,bsc}")
        p.add_argument("--multiplier", type=int, help="baseline length factor (default: max blade count)")
        p.add_argument("--baseline-construction", type=Construction,
                       choices=[Construction.PLATE, Construction.AGENT_OBJECT], metavar="{plate,ao}")
        p.add_argument("--regimes", nargs="+", choices=["equal", "scaled"],
                       help="baseline vector lengths for compare: N, K*N or both")
        p.add_argument("--definite-inner", action="store_const", const=True,
                       help="score every shared blade as +1 instead of its reversion sign")
        p.add_argument("--hamming-skip-blank", action="store_const", const=True,
                       help="leave positions that are zero in both signatures out of U")
        p.add_argument("--restrict-to-top", action="store_const", const=True,
                       help="re-rank only the top inner-product set with the matrix measure")
        p.add_argument("--jobs", type=int, help="worker processes")
        p.add_argument("--config", help="flat key=value file; flags take precedence")
        p.add_argument("--out", help="CSV file (default: stdout)")
    return parser


def config_from_args(args: argparse.Namespace, environ=os.environ) -> ExperimentConfig:
    merged = read_config_file(args.config) if args.config else {}
    if SEED_ENV in environ and args.seed is None:
        try:
            merged["seed"] = int(environ[SEED_ENV])
        except ValueError:
            raise ConfigError(f"{SEED_ENV} must be an integer") from None
    cli = {
        "question": args.question, "n_min": args.n_min, "n_max": args.n_max, "n_step": args.n_step,
        "trials": args.trials, "seed": args.seed, "construction": args.construction, "mode": args.mode,
        "measure": args.measure, "models": args.models, "multiplier": args.multiplier,
        "baseline_construction": args.baseline_construction, "definite_inner": args.definite_inner,
        "hamming_skip_blank": args.hamming_skip_blank, "restrict_to_top": args.restrict_to_top,
        "jobs": args.jobs, "regimes": args.regimes,
    }
    merged.update({k: v for k, v in cli.items() if v is not None})

    kwargs: dict = {"kind": args.kind}
    renames = {"question": "questions", "construction": "constructions", "measure": "measures"}
    for key, value in merged.items():
        if key == "definite_inner":
            kwargs["definite"] = value
        elif key == "hamming_skip_blank":
            kwargs["count_blank"] = not value
        elif key in renames or key in ("models", "regimes"):
            kwargs[renames.get(key, key)] = tuple(value)
        else:
            kwargs[key] = value
    return ExperimentConfig(**kwargs)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
    except (ConfigError, OSError) as exc:
        print(f"gavsa: error: {exc}", file=sys.stderr)
        return 2
    rows = run(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
        logging.getLogger(__name__).info("wrote %d rows to %s", len(rows), args.out)
    else:
        write_csv(rows, sys.stdout)
    return 0
