# encoding: utf-8

import argparse
import json
import logging
import os
import sys

import yaml

from app import logger
from app.analyzer import SpaceAnalyzer
from app.config import load_config
from app.constants import (
    EXIT_FINDING,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    LOG_LEVEL_ENV_VAR,
    SEED_ENV_VAR,
    VALID_DOCUMENT_FORMATS,
    VALID_EXPORT_FORMATS,
    VALID_GENERATOR_KINDS,
    VALID_OUTPUT_FORMATS,
)
from app.exceptions import ConsistencyError, UltratreeError
from app.modules.serialization import load_space

SINGLE_SPACE_COMMANDS = {
    "validate": "Classify a distance table as ultrametric, metric or invalid",
    "balls": "List every ball of a space",
    "rigidity": "Decide membership in R with all three criteria",
    "check-r": "Full report with every certificate of membership in R",
    "ham-path": "Strictly decreasing Hamiltonian path and Hamiltonian cycle",
    "star": "Spanning star with distinct weights and star determination",
}

ENVIRONMENT_HELP = f"""environment variables:
  {SEED_ENV_VAR}    default seed, overridden by --seed
  {LOG_LEVEL_ENV_VAR}     debug, info (default), warning or error; logs go to stderr

exit status: 0 ok, 1 a property was found false, 2 bad input"""


def parse_ray(text):
    point, separator, weight = text.partition("=")
    if not separator or not point or not weight:
        raise argparse.ArgumentTypeError(f"Rays are written POINT=WEIGHT, got '{text}'")
    return point, weight


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ultratree",
        description="Analyze finite ultrametric spaces through their representing trees.",
        epilog=ENVIRONMENT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--config", "--c", default=None, help="Path to the config file")
    parser.add_argument(
        "--format",
        choices=VALID_OUTPUT_FORMATS,
        default=None,
        help="Report format (defaults to the config 'output' setting)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"Seed for generators and sampling (overrides {SEED_ENV_VAR} and the config 'seed')",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def space_parser(name, help_text, count=1):
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        if count == 1:
            sub.add_argument("space", help="Space document (.json or .csv)")
        else:
            sub.add_argument("first", help="First space document")
            sub.add_argument("second", help="Second space document")
        sub.add_argument(
            "--input-format",
            choices=VALID_DOCUMENT_FORMATS,
            default=None,
            help="Document format, detected from the extension by default",
        )
        return sub

    for name, help_text in SINGLE_SPACE_COMMANDS.items():
        space_parser(name, help_text)

    for name, help_text in (
        ("tree", "Build the representing tree"),
        ("gamma", "Build the ball graph and check whether it is a tree"),
    ):
        sub = space_parser(name, help_text)
        sub.add_argument(
            "--export",
            choices=VALID_EXPORT_FORMATS,
            default="json",
            help="Export the structure as a report or as DOT text",
        )

    iso = space_parser("iso", "Order, generators and orbits of the isometry group")
    iso.add_argument(
        "--list", action="store_true", help="List every isometry (up to iso_list_cap)"
    )

    space_parser("weaksim", "Decide weak similarity of two spaces", count=2)

    complete = subparsers.add_parser(
        "complete-star", help="Complete a weighted star to an ultrametric"
    )
    complete.add_argument("--center", required=True, help="Name of the star center")
    complete.add_argument(
        "--ray",
        dest="rays",
        action="append",
        required=True,
        type=parse_ray,
        help="Ray as POINT=WEIGHT, repeat for every ray",
    )

    gen = subparsers.add_parser("gen", help="Generate a random space document")
    gen.add_argument("kind", choices=VALID_GENERATOR_KINDS, help="Kind of space to generate")
    gen.add_argument("n", type=int, help="Number of points")
    gen.add_argument(
        "--document-format",
        choices=VALID_DOCUMENT_FORMATS,
        default="json",
        help="Format of the generated space document",
    )

    oracle_help = "Cross-check structural results against brute force"
    oracle = subparsers.add_parser(
        "oracle",
        help=oracle_help,
        description=f"{oracle_help}. Non-ultrametric spaces only get the brute-force isometries.",
    )
    oracle.add_argument("space", nargs="?", help="Space document to check")
    oracle.add_argument(
        "--input-format",
        choices=VALID_DOCUMENT_FORMATS,
        default=None,
        help="Document format, detected from the extension by default",
    )
    oracle.add_argument(
        "--sweep", type=int, default=None, metavar="N", help="Check N random spaces"
    )
    oracle.add_argument(
        "--jobs", type=int, default=None, help="Worker threads for --sweep (defaults to the config 'jobs')"
    )
    return parser


def render(report, fmt):
    if isinstance(report, str):
        return report
    if fmt == "json":
        return json.dumps(report.sections, indent=2) + "\n"
    return yaml.safe_dump(report.sections, sort_keys=False, default_flow_style=False)


def run_command(args, analyzer, seed):
    command = args.command
    if command == "complete-star":
        return analyzer.complete_star(args.rays, args.center)
    if command == "gen":
        return analyzer.gen(args.kind, args.n, seed, args.document_format)
    if command == "oracle" and args.sweep is not None:
        jobs = args.jobs or analyzer.config.jobs
        return analyzer.oracle_sweep(args.sweep, seed, jobs)
    if command == "weaksim":
        first = load_space(args.first, args.input_format)
        second = load_space(args.second, args.input_format)
        return analyzer.weaksim(first, second)

    space = load_space(args.space, args.input_format)
    logger.info("Loaded %s-point space from %s", len(space), args.space)
    if command in ("tree", "gamma"):
        return getattr(analyzer, command)(space, export=args.export)
    if command == "iso":
        return analyzer.iso(space, full_list=args.list)
    return getattr(analyzer, command.replace("-", "_"))(space)


def main(argv=None):
    """
    Ultratree entry point. Parses arguments and configs, runs one command
    and returns the exit status.
    """

    log_level = logger.level_from_env(os.environ.get(LOG_LEVEL_ENV_VAR))
    logger.init_logger(console=True, verbose=log_level)

    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle" and args.space is None and args.sweep is None:
        parser.error("oracle needs a space document or --sweep N")

    config = load_config(args.config)
    config.validate()
    if config.log_dir:
        logger.init_logger(console=True, log_dir=config.log_dir, verbose=log_level)
    logger.debug("Log level set to %s", logging.getLevelName(log_level))

    seed = args.seed if args.seed is not None else config.seed
    analyzer = SpaceAnalyzer(config)
    try:
        report = run_command(args, analyzer, seed)
    except ConsistencyError as err:
        logger.error("Consistency check failed: %s", err)
        return EXIT_FINDING
    except UltratreeError as err:
        logger.error(err)
        return EXIT_INPUT_ERROR
    except OSError as err:
        logger.error("Cannot read input: %s", err)
        return EXIT_INPUT_ERROR

    sys.stdout.write(render(report, args.format or config.output))
    if getattr(report, "finding", False):
        return EXIT_FINDING
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
