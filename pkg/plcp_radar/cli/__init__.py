from plcp_radar.cli.config import ScenarioConfig, DEFAULT_CONFIG
from plcp_radar.cli.commands import cmd_analytic, cmd_simulate, cmd_sweep, cmd_optimize, cmd_validate, \
    cmd_figures, CommandReport
