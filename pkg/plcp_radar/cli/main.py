import argparse
import os.path as osp
import sys

from plcp_radar.analytic.quadrature import QuadratureError
from plcp_radar.cli import commands
from plcp_radar.cli.config import ScenarioConfig, DEFAULT_CONFIG, ENGINE_CHOICES
from plcp_radar.analytic.line_length import CONVENTIONS
from plcp_radar.optimizer.sweep import AXES, CSV_HEADER
from plcp_radar.utils import logger
from plcp_radar.utils.utils import ConfigError, ClassEncoder

COMMANDS = {
    'analytic': commands.cmd_analytic,
    'simulate': commands.cmd_simulate,
    'sweep': commands.cmd_sweep,
    'optimize': commands.cmd_optimize,
    'validate': commands.cmd_validate,
    'figures': commands.cmd_figures,
}

CONFIG_HELP = """
configuration keys (json object, flat keys carry their unit as suffix):
  %s

csv columns:
  sweep.csv                  %s
  fig6a-fig6d <panel>.csv    %s
  fig7, fig8 <panel>.csv     %s

exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 validation failure
""" % ('\n  '.join('%-22s default %r' % (k, v) for k, v in DEFAULT_CONFIG.items() if k != 'sweep_values'),
       ','.join(CSV_HEADER), ','.join(commands.SWEEP_PANEL_HEADER), ','.join(commands.OPTIMUM_PANEL_HEADER))


def _float_list(text):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated numbers, got %r' % text)


def build_parser():
    parser = argparse.ArgumentParser(prog='plcp-radar',
                                     description='Detection performance of automotive radars under '
                                                 'Poisson line Cox process interference',
                                     epilog=CONFIG_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('command', choices=sorted(COMMANDS), help='experiment to run')
    parser.add_argument('--config', type=str, default='', help='json file with the scenario configuration')
    parser.add_argument('--seed', type=int, default=None, help='base seed of the Monte Carlo engine')
    parser.add_argument('--trials', type=int, default=None, help='Monte Carlo realizations per estimate')
    parser.add_argument('--out', type=str, default=None, help='output directory, default plcp_radar_runs/<command>')
    parser.add_argument('--engine', choices=ENGINE_CHOICES, default=None, help='engines of sweep and figures')
    parser.add_argument('--convention', choices=CONVENTIONS, default=None,
                        help='average line length convention of the analytic engine')
    parser.add_argument('--axis', choices=sorted(AXES), default=None, help='sweep axis')
    parser.add_argument('--values', type=_float_list, default=None,
                        help='comma separated sweep values in the units of the axis')
    parser.add_argument('--panel', action='append', default=None,
                        help='figure group (fig6, fig7, fig8) or panel (fig6a ... fig6d), repeatable')
    parser.add_argument('--corrupt-beta-prime', action='store_true', help=argparse.SUPPRESS)
    return parser


def config_overrides(args):
    """ configuration keys set on the command line """
    overrides = dict()
    for flag, key in (('seed', 'seed'), ('trials', 'trials'), ('engine', 'engine'), ('convention', 'convention'),
                      ('axis', 'sweep_axis'), ('values', 'sweep_values')):
        value = getattr(args, flag)
        if value is not None:
            overrides[key] = value
    if args.corrupt_beta_prime:
        overrides['beta_prime_convention'] = 'one-way'
    return overrides


def load_config(args):
    overrides = config_overrides(args)
    if args.config:
        return ScenarioConfig.from_file(args.config, overrides)
    return ScenarioConfig.from_dict(DEFAULT_CONFIG, overrides)


def main(argv=None):
    """
    Returns:
        (int): exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as e:
        sys.stderr.write('configuration error: %s\n' % e)
        return commands.EXIT_CONFIG

    out_dir = args.out or osp.join('plcp_radar_runs', args.command)
    logger.configure(dir=out_dir, format_strs=['stdout', 'log'])
    manifest = dict(command=args.command, config=config.to_dict(), config_hash=config.config_hash(),
                    seed=config['seed'])
    try:
        if args.command == 'figures':
            report = commands.cmd_figures(config, out_dir, which=args.panel)
        else:
            report = COMMANDS[args.command](config, out_dir)
        exit_code = report.exit_code
        manifest['outputs'] = sorted(osp.basename(path) for path in report.outputs)
    except ConfigError as e:
        logger.error('configuration error: %s' % e)
        exit_code = commands.EXIT_CONFIG
    except (QuadratureError, commands.NumericFailure) as e:
        logger.error('numerical failure: %s' % e)
        exit_code = commands.EXIT_NUMERIC
    except ValueError as e:
        logger.error('invalid scenario: %s' % e)
        exit_code = commands.EXIT_CONFIG

    manifest['exit_code'] = exit_code
    logger.save_manifest(manifest, encoder=ClassEncoder)
    if logger.getkvs():
        logger.dumpkvs()
    logger.reset()
    return exit_code


def console_main():
    sys.exit(main())


if __name__ == '__main__':
    console_main()
