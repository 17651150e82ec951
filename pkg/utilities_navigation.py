# ///////////////////////////////////////////////////////////////////////
#
#                           UTILITIES NAVIGATION
#   Command-line surface of the engine: the argument parser, the command
#   table and the dispatch that turns engine errors into exit codes.
#
# ///////////////////////////////////////////////////////////////////////

import argparse
import sys
from utilities_config import get_run_config
from utilities_exceptions import EngineError
from commands.cmd_pi_hfp import run_pi_hfp
from commands.cmd_ext import run_ext
from commands.cmd_may import run_may
from commands.cmd_segal import run_segal
from commands.cmd_mk import run_mk
from commands.cmd_check import run_check
from global_parameters import *
import logging as log

logger_navigation = log.getLogger(LOGGER_NAVIGATION_KEY)

# -----------------------------------------------------------------------
#                          GLOBAL PARAMETERS
# -----------------------------------------------------------------------

COMMAND_TABLE = {
    COMMAND_PI_HFP: run_pi_hfp,
    COMMAND_EXT: run_ext,
    COMMAND_MAY: run_may,
    COMMAND_SEGAL: run_segal,
    COMMAND_MK: run_mk,
    COMMAND_CHECK: run_check,
}

COMMAND_HELP = {
    COMMAND_PI_HFP: 'homotopy of HF_p in spoke grading for one variant',
    COMMAND_EXT: 'cobar Ext table for a preset',
    COMMAND_MAY: 'May spectral sequence pages and charts',
    COMMAND_SEGAL: 'a-inverted abutment and the Segal verdict',
    COMMAND_MK: 'free summand counts, formula against oracle',
    COMMAND_CHECK: 'Hopf algebroid and comodule axiom suite',
}

# -----------------------------------------------------------------------
#                          ARGUMENT PARSER
# -----------------------------------------------------------------------

def add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--p', type=int, help='odd prime')
    parser.add_argument('--window', help='degree window m0:m1:n0:n1')
    parser.add_argument('--s-max', dest='s_max', type=int, help='largest cohomological degree')
    parser.add_argument('--beta', type=int, help="unit beta in the right unit of u_lambda")
    parser.add_argument('--beta-prime', dest='beta_prime', type=int, help="unit beta' in the right unit of u_spoke")
    parser.add_argument('--threads', type=int, help='worker threads for degreewise work')
    parser.add_argument('--out', help='output directory for reports')
    parser.add_argument('--svg', action='store_true', default=None, help='also write SVG charts')
    parser.add_argument('--monomial-cap', dest='monomial_cap', type=int, help='largest exponent tried for a free generator')

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='spoke-segal', description='Spoke-graded equivariant homotopy, cobar Ext and May spectral sequence engine.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    for command in COMMANDS:
        subparser = subparsers.add_parser(command, help=COMMAND_HELP[command])
        add_common_arguments(subparser)
        if command in (COMMAND_EXT, COMMAND_MAY, COMMAND_CHECK):
            subparser.add_argument('--n', type=int, help='truncation level of Gamma_n')
        if command in (COMMAND_EXT, COMMAND_CHECK):
            subparser.add_argument('--preset', choices=PRESETS, help='structure to compute with')
        if command in (COMMAND_MAY, COMMAND_SEGAL):
            subparser.add_argument('--disable-d1', dest='disable_d1', action='store_true', default=None, help='drop the d_1 components (negative control)')

    subparsers.choices[COMMAND_PI_HFP].add_argument('--variant', choices=VARIANTS, help='variant of the homotopy ring')
    subparsers.choices[COMMAND_EXT].add_argument('--associated-graded', dest='associated_graded', action='store_true', default=None, help='use E_0 Gamma_n and split Ext by May weight')
    subparsers.choices[COMMAND_MAY].add_argument('--cross-check', dest='cross_check', action='store_true', default=None, help='also compare E_infinity with the cobar Ext of Gamma_n')
    subparsers.choices[COMMAND_SEGAL].add_argument('--n-max', dest='n_max', type=int, help='largest truncation level')
    subparsers.choices[COMMAND_MK].add_argument('--k-max', dest='k_max', type=int, help='largest symmetric power')
    subparsers.choices[COMMAND_MK].add_argument('--seed', type=int, help='seed recorded in the report header')
    return parser

# -----------------------------------------------------------------------
#                      FUNCTIONS FOR NAVIGATION
# -----------------------------------------------------------------------

def normalize_argv(argv: list) -> list:
    # argparse reads "-12:2:-14:14" as a flag, so window values are glued to their option
    normalized = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token == '--window' and index + 1 < len(argv) and argv[index + 1].startswith('-'):
            normalized.append(f"--window={argv[index + 1]}")
            index += 2
            continue
        normalized.append(token)
        index += 1
    return normalized

def initial_navigation(argv: list = None) -> int:
    args = build_parser().parse_args(normalize_argv(sys.argv[1:] if argv is None else argv))

    try:
        config = get_run_config(args)
        logger_navigation.info(f"[INFO] Running {config.command}")
        status = COMMAND_TABLE[config.command](config)

    except EngineError as error:
        logger_navigation.error(f"[ERROR] {args.command} stopped by {type(error).__name__} (exit code {error.exit_code})")
        return error.exit_code
    except Exception as error:
        logger_navigation.error(f"[ERROR] An unknown error has occurred in {args.command}:\n\t- Msg: {error}")
        return EXIT_INTERNAL_ERROR

    if status == EXIT_OK:
        logger_navigation.info(f"[SUCCESS] {config.command} finished")
    else:
        logger_navigation.warning(f"[WARNING] {config.command} finished with failed checks (exit code {status})")
    return status
