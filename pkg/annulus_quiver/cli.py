#!/usr/bin/env python3
"""
Command-line interface for annulus-quiver.
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from typing import Any

from .arquiver import build_gamma_bar_m, mesh_check
from .brustle import build_qm_prime
from .cluster import build_cluster_quiver_m, verify_stable_translation
from .constants import (
    DEFAULT_G,
    DEFAULT_H,
    DEFAULT_M,
    DEFAULT_MAX_LEVEL,
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
)
from .correspondence import verify_isomorphism
from .exceptions import AnnulusQuiverException, InvalidArcError, InvalidConfigError, NotAdmissibleError
from .export import document_from_quiver, to_dot, to_json
from .geometry import classify, load_config, parse_lift_arc, project, verify_classification
from .moves import elementary_moves, long_moves
from .quiver import TranslationQuiver
from .relations import verify_c1_c2, verify_diamonds, verify_e, verify_f_sweep, verify_factoring
from .schema import AnnulusArc, ArcClass, Config, ExportFormat, QuiverMode, Report, Suite
from .utils import logger

SUITES = [suite.value for suite in Suite]


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8') as file:
        file.write(text)
    logger.info(f'Wrote {len(text)} characters to {out}')


def build_quiver(cfg: Config, mode: QuiverMode) -> TranslationQuiver[Any]:
    if mode is QuiverMode.BRUSTLE:
        return build_qm_prime(cfg)
    if mode is QuiverMode.CLUSTER:
        return build_cluster_quiver_m(cfg)
    return build_gamma_bar_m(cfg)


def cmd_build(cfg: Config, mode: QuiverMode, output_format: ExportFormat, out: str | None) -> int:
    """Build a quiver and write it as DOT or JSON."""
    quiver = build_quiver(cfg, mode)
    document = document_from_quiver(quiver, mode)
    text = to_json(document) if output_format is ExportFormat.JSON else to_dot(document)
    try:
        write_output(text, out)
    except OSError as e:
        print(f'Error writing {out}: {e}', file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def run_suite(cfg: Config, suite: Suite, drop_arrow: int | None = None) -> Report:
    gamma = build_gamma_bar_m(cfg)
    if drop_arrow is not None:
        if not 0 <= drop_arrow < len(gamma.arrows):
            raise InvalidConfigError(f'{gamma.name} has no arrow {drop_arrow}', 'drop_arrow', drop_arrow)
        gamma = gamma.without_arrow(drop_arrow)
        logger.warning(f'Verifying {gamma.name}')
    selected = set(Suite) - {Suite.ALL} if suite is Suite.ALL else {suite}

    report = Report(title=f'verify {suite.value} g={cfg.g} h={cfg.h} m={cfg.m}')
    if Suite.ISO in selected:
        report.extend(verify_isomorphism(cfg, gamma))
    if Suite.MESH in selected:
        report.extend(mesh_check(gamma))
    if Suite.ORACLE in selected:
        report.extend(verify_classification(cfg))
    if Suite.RELATIONS in selected:
        report.extend(verify_c1_c2(cfg, gamma))
        report.extend(verify_f_sweep(cfg))
        report.extend(verify_e(cfg, gamma))
        report.extend(verify_diamonds(gamma))
        report.extend(verify_factoring(gamma))
    if Suite.CLUSTER in selected:
        report.extend(verify_stable_translation(build_cluster_quiver_m(cfg, gamma), gamma))
    return report


def cmd_verify(cfg: Config, suite: Suite, drop_arrow: int | None, out: str | None) -> int:
    """Run a verification suite, write the JSON report and exit 1 if any check failed."""
    report = run_suite(cfg, suite, drop_arrow)
    for check in report.failures:
        print(f'FAILED {check.name}: {check.witness}', file=sys.stderr)
    try:
        write_output(json.dumps(asdict(report), indent=2, sort_keys=True) + '\n', out)
    except OSError as e:
        print(f'Error writing {out}: {e}', file=sys.stderr)
        return EXIT_FAILED
    print(f'{len(report.checks) - len(report.failures)} of {len(report.checks)} checks passed', file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_moves(cfg: Config, arc: AnnulusArc, max_level: int) -> int:
    """Print the classification, elementary moves and long moves of an arc."""
    print(f'Arc {arc}: {classify(arc, cfg).value}')
    moves = elementary_moves(arc, cfg)
    print(f'Elementary moves ({len(moves)}):')
    for move, target in moves:
        print(f'  - fix {move.anchor.value}: {target}')

    long = long_moves(arc, cfg, max_level)
    print(f'Long moves up to level {max_level} ({len(long)}):')
    for move in long:
        print(f'  - anchored at {move.anchor.value}: {move.target}')
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    """Main CLI entry point."""
    parser = argparse.ArgumentParser(
        description='Geometric model of the module and cluster categories of affine type A',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Arcs are written [<index><o|i>,<index><o|i>], o for the outer boundary and i for the inner one.

Examples:
  %(prog)s build --g 3 --h 2 --m 1 --mode ar --format json --out gamma.json
  %(prog)s build --g 3 --h 2 --m 1 --mode cluster --format dot
  %(prog)s verify --g 2 --h 1 --m 1 --suite all
  %(prog)s verify --g 3 --h 2 --m 1 --suite iso --drop-arrow 0
  %(prog)s moves --g 3 --h 2 --arc "[0o,0i]"
        """,
    )
    parser.add_argument('--verbose', action='store_true', help='Log progress of every stage')

    config_parser = argparse.ArgumentParser(add_help=False)
    config_parser.add_argument('--g', type=int, default=DEFAULT_G, help='Marked points on the outer boundary')
    config_parser.add_argument('--h', type=int, default=DEFAULT_H, help='Marked points on the inner boundary')
    config_parser.add_argument('--m', type=int, default=DEFAULT_M, help='Truncation parameter')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    # Build command
    build_parser = subparsers.add_parser('build', parents=[config_parser], help='Build and export a quiver')
    build_parser.add_argument('--mode', choices=[mode.value for mode in QuiverMode], default=QuiverMode.AR.value)
    build_parser.add_argument('--format', choices=[fmt.value for fmt in ExportFormat], default=ExportFormat.JSON.value)
    build_parser.add_argument('--out', help='Output file, standard output when omitted')

    # Verify command
    verify_parser = subparsers.add_parser('verify', parents=[config_parser], help='Run verification suites')
    verify_parser.add_argument('--suite', choices=SUITES, default=Suite.ALL.value)
    verify_parser.add_argument('--drop-arrow', type=int, help='Delete the arrow with this id before verifying')
    verify_parser.add_argument('--out', help='Report file, standard output when omitted')

    # Moves command
    moves_parser = subparsers.add_parser('moves', parents=[config_parser], help='List the moves of an arc')
    moves_parser.add_argument('--arc', required=True, help='Arc lift, e.g. "[0o,0i]"')
    moves_parser.add_argument('--max-level', type=int, default=DEFAULT_MAX_LEVEL, help='Highest tube level listed')

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    if not args.command:
        parser.print_help()
        sys.exit(EXIT_USAGE)

    try:
        cfg = load_config({'g': args.g, 'h': args.h, 'm': args.m})
    except InvalidConfigError as e:
        parser.error(e.message)

    # Run the appropriate command
    try:
        if args.command == 'build':
            code = cmd_build(cfg, QuiverMode(args.mode), ExportFormat(args.format), args.out)
        elif args.command == 'verify':
            code = cmd_verify(cfg, Suite(args.suite), args.drop_arrow, args.out)
        else:
            try:
                arc = project(parse_lift_arc(args.arc), cfg)
            except InvalidArcError as e:
                parser.error(e.message)
            if classify(arc, cfg) is ArcClass.NOT_ADMISSIBLE:
                parser.error(f'{arc} is not admissible')
            code = cmd_moves(cfg, arc, args.max_level)
    except (InvalidConfigError, NotAdmissibleError) as e:
        parser.error(e.message)
    except AnnulusQuiverException as e:
        print(f'Error: {e}', file=sys.stderr)
        sys.exit(EXIT_FAILED)
    sys.exit(code)


if __name__ == '__main__':
    main()
