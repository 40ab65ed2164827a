from plcp_radar.cli import commands
from plcp_radar.cli.config import ScenarioConfig
from plcp_radar.utils import logger
from plcp_radar.utils.utils import ClassEncoder

import os
import json
import argparse
import time

plcp_radar_path = '/'.join(os.path.realpath(os.path.dirname(__file__)).split('/')[:-1])


def main(config, dump_path, panels):
    config = ScenarioConfig(config)

    # analytic reference point, then the validation grid, then the trend panels
    commands.cmd_analytic(config, dump_path)
    validation = commands.cmd_validate(config, dump_path)
    if validation.exit_code != commands.EXIT_OK:
        logger.warn('engines disagree on the validation grid, see validate.csv')
    commands.cmd_figures(config, dump_path, which=panels)


if __name__ == "__main__":
    idx = int(time.time())

    parser = argparse.ArgumentParser(description='PLCP radar: validation and trend figures')
    parser.add_argument('--config_file', type=str, default='', help='json file with run specifications')
    parser.add_argument('--dump_path', type=str, default=plcp_radar_path + '/data/figures/run_%d' % idx)
    parser.add_argument('--panel', action='append', default=None, help='fig6, fig7, fig8 or a single panel')

    args = parser.parse_args()

    if args.config_file:  # load configuration from json file
        with open(args.config_file, 'r') as f:
            config = json.load(f)

    else:  # use default config

        config = {
            'seed': 1,

            # radar link, reference automotive radar at 76.5 GHz
            'p_dbm': 10.0,
            'alpha': 2.0,
            'sigma_dbsm': 30.0,
            'beta_db': 10.0,

            # street network
            'lambda_l_per_m2': 0.005,
            'lambda_p_per_m': 0.01,
            'orientation': 'facing',

            # sector
            'omega_b_deg': 10.0,
            'range_m': 15.0,

            # engines
            'engine': 'analytic',  # engine of the trend panels, 'both' overlays the Monte Carlo estimates
            'convention': 'campbell',
            'trials': 20000,  # realizations per Monte Carlo estimate
            'n_partitions': 4,
            'parallel': True,

            # grids
            'omega_grid_step_deg': 0.5,
            'validation_grid': 'full',
            'figure_resolution': 'full',
            'n_jobs': 4,
        }

    # configure logger
    logger.configure(dir=args.dump_path, format_strs=['stdout', 'log'])

    # dump run configuration before starting
    json.dump(config, open(args.dump_path + '/params.json', 'w'), cls=ClassEncoder)

    # start the experiments
    main(config, args.dump_path, args.panel)
