"""
Experiment commands of the plcp-radar harness. Every command computes its results first and then
writes them, one csv per artifact, into the output directory. Outputs depend only on the configuration
(including its seed), so reruns reproduce them byte for byte.
"""
import itertools
import os.path as osp
from collections import namedtuple, OrderedDict

import numpy as np

from plcp_radar.analytic.detection import detection_probability, noise_limited_probability, \
    truncation_sensitivity, mean_interference_power
from plcp_radar.analytic.line_length import line_length_conventions
from plcp_radar.cli import plotting
from plcp_radar.montecarlo.estimators import estimate_pd, estimate_chord_stats, estimate_interference_power
from plcp_radar.optimizer.grid_search import optimal_beamwidth, optimal_beamwidth_sweep
from plcp_radar.optimizer.sweep import run_sweep, SweepGrid, CSV_HEADER
from plcp_radar.utils import logger

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VALIDATION = 4

""" Validation points as (lambda_l per m^2, lambda_p per m, omega_b in deg, range in m) """
VALIDATION_GRIDS = {
    'full': [(0.0, 0.01, 10.0, 15.0)] + list(itertools.product((0.005, 0.05), (0.01, 0.1), (5.0, 15.0),
                                                                (10.0, 15.0))),
    'quick': [(0.0, 0.01, 10.0, 15.0), (0.005, 0.01, 10.0, 15.0), (0.05, 0.1, 5.0, 10.0)],
}
VALIDATION_MIN_TOLERANCE = 0.02

""" Columns of the figure panel csv files, one row per curve and grid point """
SWEEP_PANEL_HEADER = ('curve',) + CSV_HEADER
OPTIMUM_PANEL_HEADER = ('curve', 'grid_axis', 'grid_value', 'omega_b_star_deg', 'n_d_star', 'saturated')


class CommandReport(namedtuple('CommandReport', ['command', 'outputs', 'exit_code', 'rows'])):
    """
    Args:
        command (str): subcommand name
        outputs (list): paths of the written files
        exit_code (int): process exit status
        rows (list): emitted rows, as OrderedDicts or SweepRows
    """
    __slots__ = ()


class NumericFailure(RuntimeError):
    """ an engine could not evaluate some grid point """


def write_rows(out_dir, stem, rows, echo=False):
    """
    Writes rows with a shared key order to <out_dir>/<stem>.csv through the run logger

    Returns:
        (str): path of the csv file
    """
    assert rows, 'nothing to write for %s' % stem
    format_strs = ['stdout', 'csv'] if echo else ['csv']
    with logger.scoped_configure(dir=out_dir, format_strs=format_strs, stem=stem):
        for row in rows:
            logger.logkvs(row)
            logger.dumpkvs()
    return osp.join(out_dir, '%s.csv' % stem)


def _scenario_columns(config):
    p = config.params
    return OrderedDict([('lambda_l', p['lambda_l_per_m2']), ('lambda_p', p['lambda_p_per_m']),
                        ('omega_b_deg', p['omega_b_deg']), ('range_m', p['range_m']),
                        ('r_target_m', config.scenario().target_range)])


# Single scenario
# ----------------------------------------
def cmd_analytic(config, out_dir):
    """
    Analytic p_D, l_avg in both conventions, n(R) and n_D of the configured scenario

    Returns:
        (CommandReport): one row, written to analytic.csv
    """
    scenario, q = config.scenario(), config.quadrature_spec()
    radar, net, s = scenario.radar, scenario.network, scenario.sector
    convention = config['convention']

    with logger.ProfileKV('analytic'):
        lengths = line_length_conventions(net, s, q)
        p_d = detection_probability(radar, net, s, scenario.target_range, q,
                                    beta_prime_convention=config['beta_prime_convention'])
        interference = mean_interference_power(radar, net, s, q, min_distance=config['min_distance_m'])
        truncation = truncation_sensitivity(radar, net, s, scenario.target_range, q)

    l_avg = lengths[convention]
    row = _scenario_columns(config)
    row.update([('engine', 'analytic'), ('convention', convention), ('p_d', p_d),
                ('e_r', noise_limited_probability(radar, scenario.target_range)),
                ('l_avg', l_avg), ('l_avg_paper', lengths['paper']), ('l_avg_campbell', lengths['campbell']),
                ('n_r', net.lambda_p * l_avg), ('n_d', net.lambda_p * l_avg * p_d),
                ('interference_w', interference), ('truncation_delta', truncation)])
    path = write_rows(out_dir, 'analytic', [row], echo=True)
    return CommandReport('analytic', [path], EXIT_OK, [row])


def cmd_simulate(config, out_dir):
    """
    Monte Carlo estimates with standard errors and confidence intervals

    Returns:
        (CommandReport): one row, written to simulate.csv
    """
    scenario, mc = config.scenario(), config.monte_carlo_spec()
    radar, net, s = scenario.radar, scenario.network, scenario.sector
    options = mc.options(s)

    with logger.ProfileKV('simulate'):
        p_d = estimate_pd(radar, net, s, scenario.target_range, verbose=True, **options)
        length, count = estimate_chord_stats(net, s, **options)
        interference = estimate_interference_power(radar, net, s, min_distance=config['min_distance_m'], **options)

    p_low, p_high = p_d.interval
    row = _scenario_columns(config)
    row.update([('engine', 'mc'), ('trials', mc.trials), ('seed', mc.seed), ('confidence', mc.confidence),
                ('p_d', p_d.mean), ('p_d_std_err', p_d.std_err), ('p_d_low', p_low), ('p_d_high', p_high),
                ('l_avg', length.mean), ('l_avg_std_err', length.std_err),
                ('n_r', count.mean), ('n_r_std_err', count.std_err), ('n_d', count.mean * p_d.mean),
                ('interference_w', interference.mean), ('interference_std_err', interference.std_err)])
    path = write_rows(out_dir, 'simulate', [row], echo=True)
    return CommandReport('simulate', [path], EXIT_OK, [row])


# Sweeps and optimization
# ----------------------------------------
def cmd_sweep(config, out_dir):
    """
    Evaluates the configured engines along the configured sweep axis

    Returns:
        (CommandReport): rows of the SweepTable written to sweep.csv, exit code 3 if any point failed
    """
    table = run_sweep(config.sweep_grid(), config.engines(), config.quadrature_spec(), config.monte_carlo_spec(),
                      convention=config['convention'], n_jobs=config['n_jobs'],
                      beta_prime_convention=config['beta_prime_convention'])
    path = osp.join(out_dir, 'sweep.csv')
    table.to_csv(path)
    logger.log('wrote %d sweep rows to %s' % (len(table), path))
    return CommandReport('sweep', [path], EXIT_NUMERIC if table.failures else EXIT_OK, table.rows)


def cmd_optimize(config, out_dir):
    """
    n_D lower bound over the half-beamwidth grid and its maximizer

    Returns:
        (CommandReport): one row per grid point, the maximizer flagged, written to optimize.csv
    """
    scenario, grid = config.scenario(), config.beamwidth_grid()
    optimum = optimal_beamwidth(scenario.radar, scenario.network, scenario.sector, grid,
                                config.quadrature_spec(), convention=config['convention'], n_jobs=config['n_jobs'])
    rows = []
    for i, (omega, n_d) in enumerate(zip(grid, optimum.values)):
        rows.append(OrderedDict([('omega_b_deg', float(np.round(np.rad2deg(omega), 10))), ('n_d', float(n_d)),
                                 ('optimal', int(i == optimum.index))]))
    path = write_rows(out_dir, 'optimize', rows)
    logger.log('optimal half-beamwidth %.2f deg, n_D %.6g%s' % (
        optimum.half_beamwidth_deg, optimum.n_d,
        ', saturated at the %s grid end' % optimum.boundary if optimum.saturated else ''))
    return CommandReport('optimize', [path], EXIT_OK, rows)


# Cross-engine validation
# ----------------------------------------
def validation_tolerance(std_err):
    return max(VALIDATION_MIN_TOLERANCE, 3 * std_err)


def cmd_validate(config, out_dir):
    """
    Compares analytic and Monte Carlo p_D on the built-in validation grid. A point passes when
    |analytic - mc| <= max(0.02, 3 SE).

    Returns:
        (CommandReport): per-point deltas written to validate.csv, exit code 4 if any point fails
    """
    q, mc = config.quadrature_spec(), config.monte_carlo_spec()
    rows = []
    for i, (lambda_l, lambda_p, omega_deg, range_m) in enumerate(VALIDATION_GRIDS[config['validation_grid']]):
        point = config.replace(lambda_l_per_m2=lambda_l, lambda_p_per_m=lambda_p, omega_b_deg=omega_deg,
                               range_m=range_m, r_target_m=None)
        scenario = point.scenario()
        radar, net, s = scenario.radar, scenario.network, scenario.sector
        analytic = detection_probability(radar, net, s, s.max_range, q,
                                         beta_prime_convention=config['beta_prime_convention'])
        estimate = estimate_pd(radar, net, s, s.max_range, **mc.options(s))
        delta = analytic - estimate.mean
        tolerance = validation_tolerance(estimate.std_err)
        rows.append(OrderedDict([('point', i), ('lambda_l', lambda_l), ('lambda_p', lambda_p),
                                 ('omega_b_deg', omega_deg), ('range_m', range_m), ('p_d_analytic', analytic),
                                 ('p_d_mc', estimate.mean), ('std_err', estimate.std_err), ('delta', delta),
                                 ('tolerance', tolerance), ('passed', int(abs(delta) <= tolerance))]))
        logger.debug('validation point %d: delta %.4g, tolerance %.4g' % (i, delta, tolerance))

    path = write_rows(out_dir, 'validate', rows, echo=True)
    failed = [row for row in rows if not row['passed']]
    for row in failed:
        logger.warn('validation point %d failed: |%.4g| > %.4g' % (row['point'], row['delta'], row['tolerance']))
    return CommandReport('validate', [path], EXIT_VALIDATION if failed else EXIT_OK, rows)


# Figures
# ----------------------------------------
class FigurePanel(namedtuple('FigurePanel', ['name', 'kind', 'axis', 'values', 'quick_values', 'metric',
                                             'x_scale', 'xlabel', 'ylabel', 'curves'])):
    """
    Args:
        name (str): panel name, stem of its csv and svg files
        kind (str): 'sweep' evaluates a metric along the axis, 'optimum' the optimal half-beamwidth
        axis (str): sweep axis
        values (list): axis values at full resolution
        quick_values (list): coarse axis values
        metric (str): plotted SweepRow column, unused for 'optimum' panels
        x_scale (float): factor between the axis value and the plotted abscissa
        curves (list): (label, config overrides) per curve
    """
    __slots__ = ()


def _curve(lambda_l, lambda_p=None, omega_deg=None):
    label = 'lambda_L=%g' % lambda_l
    overrides = dict(lambda_l_per_m2=lambda_l)
    if lambda_p is not None:
        label += ' lambda_P=%g' % lambda_p
        overrides['lambda_p_per_m'] = lambda_p
    if omega_deg is not None:
        label += ' Omega_B=%gdeg' % omega_deg
        overrides['omega_b_deg'] = omega_deg
    return label, overrides


_LAMBDA_P_VALUES = [round(0.01 * k, 2) for k in range(1, 11)]
_OMEGA_VALUES = [float(k) for k in range(1, 21)]

FIGURE_PANELS = OrderedDict((panel.name, panel) for panel in [
    FigurePanel('fig6a', 'sweep', 'range_m', [float(r) for r in range(5, 31)], [5.0, 10.0, 15.0, 20.0, 30.0],
                'p_d', 1.0, 'R (m)', 'p_D',
                [_curve(0.005, 0.01, 10.0), _curve(0.01, 0.1, 10.0), _curve(0.05, 0.05, 10.0)]),
    FigurePanel('fig6b', 'sweep', 'lambda_p', _LAMBDA_P_VALUES, [0.01, 0.04, 0.07, 0.1],
                'p_d', 1.0, 'lambda_P (1/m)', 'p_D',
                [_curve(0.005, omega_deg=5.0), _curve(0.05, omega_deg=5.0), _curve(0.005, omega_deg=15.0),
                 _curve(0.05, omega_deg=15.0)]),
    FigurePanel('fig6c', 'sweep', 'omega_b_deg', _OMEGA_VALUES, [1.0, 5.0, 10.0, 15.0, 20.0],
                'p_d', 2.0, '2 Omega_B (deg)', 'p_D',
                [_curve(0.005, 0.01), _curve(0.01, 0.1), _curve(0.05, 0.05)]),
    FigurePanel('fig6d', 'sweep', 'omega_b_deg', _OMEGA_VALUES, [1.0, 5.0, 10.0, 15.0, 20.0],
                'n_d', 2.0, '2 Omega_B (deg)', 'n_D',
                [_curve(0.01, 0.01), _curve(0.05, 0.05)]),
    FigurePanel('fig7', 'optimum', 'lambda_p', _LAMBDA_P_VALUES, [0.01, 0.05, 0.1],
                None, 1.0, 'lambda_P (1/m)', 'Omega_B* (deg)',
                [_curve(l) for l in (0.005, 0.01, 0.05)]),
    FigurePanel('fig8', 'optimum', 'range_m', [5.0 + 2.5 * k for k in range(15)], [5.0, 15.0, 30.0],
                None, 1.0, 'R (m)', 'Omega_B* (deg)',
                [_curve(0.01, 0.01), _curve(0.05, 0.05)]),
])
FIGURE_GROUPS = {'fig6': ['fig6a', 'fig6b', 'fig6c', 'fig6d'], 'fig7': ['fig7'], 'fig8': ['fig8']}


def resolve_panels(which):
    """
    Args:
        which (list): group names (fig6, fig7, fig8) or panel names, None or empty for all panels

    Returns:
        (list): panel names in canonical order
    """
    if not which:
        return list(FIGURE_PANELS)
    names = set()
    for item in which:
        if item in FIGURE_GROUPS:
            names.update(FIGURE_GROUPS[item])
        elif item in FIGURE_PANELS:
            names.add(item)
        else:
            raise ValueError('unknown figure panel %s, expected one of %s'
                             % (item, sorted(FIGURE_GROUPS) + list(FIGURE_PANELS)))
    return [name for name in FIGURE_PANELS if name in names]


def _sweep_panel(config, panel, values):
    rows, curves = [], []
    for label, overrides in panel.curves:
        point = config.replace(**overrides)
        table = run_sweep(SweepGrid(panel.axis, values, point.scenario()), point.engines(),
                          point.quadrature_spec(), point.monte_carlo_spec(), convention=point['convention'],
                          n_jobs=point['n_jobs'], beta_prime_convention=point['beta_prime_convention'])
        if table.failures:
            raise NumericFailure('%s, %s: %d grid points failed, first: %s'
                                 % (panel.name, label, len(table.failures), table.failures[0].error))
        for row in table:
            rows.append(OrderedDict([('curve', label)] + [(k, getattr(row, k)) for k in SWEEP_PANEL_HEADER[1:]]))
        for engine in point.engines():
            curves.append(('%s (%s)' % (label, engine), panel.x_scale * table.column('grid_value', engine),
                           table.column(panel.metric, engine)))
    return rows, curves


def _optimum_panel(config, panel, values):
    rows, curves = [], []
    for label, overrides in panel.curves:
        point = config.replace(**overrides)
        optima = optimal_beamwidth_sweep(point.scenario(), panel.axis, values, point.beamwidth_grid(),
                                         point.quadrature_spec(), convention=point['convention'],
                                         n_jobs=point['n_jobs'])
        for value, optimum in zip(values, optima):
            row = (label, panel.axis, float(value), float(np.round(optimum.half_beamwidth_deg, 10)), optimum.n_d,
                   int(optimum.saturated))
            rows.append(OrderedDict(zip(OPTIMUM_PANEL_HEADER, row)))
        curves.append((label, panel.x_scale * np.asarray(values, dtype=float),
                       np.array([o.half_beamwidth_deg for o in optima])))
    return rows, curves


def cmd_figures(config, out_dir, which=None):
    """
    Regenerates the trend panels: one csv and one svg line chart per panel

    Args:
        which (list): figure groups or panel names, all panels by default

    Returns:
        (CommandReport): written files and the rows of every panel
    """
    outputs, all_rows = [], []
    for name in resolve_panels(which):
        panel = FIGURE_PANELS[name]
        values = panel.values if config['figure_resolution'] == 'full' else panel.quick_values
        with logger.ProfileKV(name):
            if panel.kind == 'sweep':
                rows, curves = _sweep_panel(config, panel, values)
            else:
                rows, curves = _optimum_panel(config, panel, values)
        outputs.append(write_rows(out_dir, name, rows))
        outputs.append(plotting.line_chart(osp.join(out_dir, '%s.svg' % name), curves, panel.xlabel,
                                           panel.ylabel, title=name))
        all_rows.extend(rows)
        logger.log('%s: %d rows' % (name, len(rows)))
    return CommandReport('figures', outputs, EXIT_OK, all_rows)
