"""
Command-line interface: constants, convergence, coarsen and compare.
"""

import argparse
import logging

from etdms import __version__
from etdms.errors import BlowUpError, ConfigError, EtdmsError, ScheduleError
from etdms.harness.commands import cmd_coarsen, cmd_compare, cmd_constants, cmd_convergence
from etdms.harness.config import (
    build_config,
    parse_coefficient,
    parse_config_file,
    write_run_meta,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _coefficient_list(text):
    return [parse_coefficient(item) for item in text.replace(",", " ").split()]


def _float_list(text):
    return [float(item) for item in text.replace(",", " ").split()]


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--model", choices=["nss", "linear"])
    common.add_argument("--eps", type=float)
    common.add_argument("--eps-convention", dest="eps_convention", choices=["squared", "linear"])
    common.add_argument("--N", type=int)
    common.add_argument("--L", type=float)
    common.add_argument("--dealias", action="store_true", default=None)
    common.add_argument("--order", type=int)
    common.add_argument("--tau", type=float)
    common.add_argument("--schedule", help="schedule file of 't_end tau' lines, or 'variable'")
    common.add_argument("--T", type=float)
    common.add_argument("--A", type=parse_coefficient, help="auto | formula | number")
    common.add_argument("--p", type=parse_coefficient, help="auto | number")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output directory")
    common.add_argument("--monitor-etilde", dest="monitor_every", type=int, metavar="STRIDE")
    common.add_argument("--quad-points", dest="quad_points", type=int)
    common.add_argument("--series-every", dest="series_every", type=int)
    common.add_argument("--snapshot-every", dest="snapshot_every", type=int)
    common.add_argument("--full-horizon", dest="full_horizon", action="store_true", default=None)
    common.add_argument("--no-progress", dest="progress", action="store_false", default=None)
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--quiet", action="store_true", help="warnings and errors only")
    return common


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="etdms",
        description="Stabilized ETD multistep solver for gradient flows",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    constants = sub.add_parser("constants", parents=[common], help="report stabilization constants")
    constants.add_argument("--beta", type=float, default=0.5)
    constants.add_argument("--gamma", type=float, default=0.5)
    constants.add_argument("--C-L", dest="C_L", type=float, default=1.0)

    convergence = sub.add_parser("convergence", parents=[common], help="temporal convergence sweep")
    convergence.add_argument("--taus", type=_float_list)
    convergence.add_argument("--A-list", dest="A_list", type=_coefficient_list)
    convergence.add_argument("--p-list", dest="p_list", type=_coefficient_list)
    convergence.add_argument("--workers", type=int)

    coarsen = sub.add_parser("coarsen", parents=[common], help="coarsening run")
    coarsen.add_argument("--init", help="start from an ETDS snapshot")
    coarsen.add_argument("--initial", choices=["uniform", "smooth"])
    coarsen.add_argument("--fit-window", dest="fit_window", type=float, nargs=2, metavar=("T0", "T1"))

    compare = sub.add_parser("compare", parents=[common], help="relative L2 difference of two snapshots")
    compare.add_argument("snapshot", help="snapshot to measure")
    compare.add_argument("reference", help="reference snapshot")
    return parser


CONFIG_FLAGS = (
    "model", "eps", "eps_convention", "N", "L", "dealias", "order", "tau", "schedule", "T",
    "A", "p", "seed", "out", "monitor_every", "quad_points", "series_every", "snapshot_every",
    "full_horizon", "progress", "taus", "A_list", "p_list", "workers", "init", "initial", "fit_window",
)


def config_from_args(args):
    """
    Resolved RunConfig from a config file plus explicitly given flags.

    Returns:
        RunConfig: Validated configuration for args.command
    """
    file_values = parse_config_file(args.config) if args.config else {}
    overrides = {key: getattr(args, key) for key in CONFIG_FLAGS if hasattr(args, key)}
    config = build_config(file_values, overrides).resolve(args.command)
    config.validate(args.command)
    return config


def configure_logging(args):
    root = logging.getLogger()
    if args.verbose:
        root.setLevel(logging.DEBUG)
    elif args.quiet:
        root.setLevel(logging.WARNING)


def main(argv=None):
    """
    Parse arguments and run a subcommand.

    Returns:
        int: 0 on success, 1 on a run failure, 2 on a configuration error
    """
    args = build_parser().parse_args(argv)
    configure_logging(args)

    try:
        config = config_from_args(args)
        if args.command == "constants":
            _, report = cmd_constants(config.order, args.beta, args.gamma, args.C_L, out_dir=config.out)
            write_run_meta(config.out, config, "constants", extra={"beta": args.beta, "gamma": args.gamma, "C_L": args.C_L})
            print(report)
        elif args.command == "convergence":
            for row in cmd_convergence(config):
                order = "" if row.order is None else f"{row.order:.3f}"
                print(f"{str(row.A):>8} {str(row.p):>6} {row.tau:12.6g} {row.error:14.6e} {order:>7}")
        elif args.command == "coarsen":
            state = cmd_coarsen(config)
            logging.info(f"Coarsening run finished at t={state.t_current:g} after {state.steps_taken} steps")
        elif args.command == "compare":
            value = cmd_compare(args.snapshot, args.reference)
            write_run_meta(config.out, config, "compare", extra={"snapshot": args.snapshot, "reference": args.reference})
            print(f"{value:.17g}")
    except (ConfigError, ScheduleError) as e:
        logging.error(f"Configuration error: {e}")
        return EXIT_USAGE
    except BlowUpError as e:
        logging.error(f"Run aborted: {e}")
        return EXIT_FAILURE
    except (EtdmsError, OSError, ValueError) as e:
        logging.error(f"Error running {args.command}: {e}")
        return EXIT_FAILURE
    return EXIT_OK
