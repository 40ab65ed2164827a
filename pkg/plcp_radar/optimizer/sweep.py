from collections import namedtuple

import numpy as np
from joblib import Parallel, delayed

from plcp_radar.analytic.detection import detection_probability
from plcp_radar.analytic.line_length import DEFAULT_CONVENTION, avg_line_length
from plcp_radar.analytic.params import QuadratureSpec, db_to_linear
from plcp_radar.analytic.quadrature import QuadratureError
from plcp_radar.montecarlo.estimators import MonteCarloSpec, estimate_pd, estimate_chord_stats
from plcp_radar.utils import logger
from plcp_radar.utils.logger import format_value

ENGINES = ('analytic', 'mc')
CSV_HEADER = ('grid_axis', 'grid_value', 'engine', 'p_d', 'l_avg', 'n_r', 'n_d', 'std_err', 'trials')

""" Sweep axes with their interface units """
AXES = {
    'omega_b_deg': 'half-beamwidth in degrees',
    'lambda_p': 'vehicles per meter of street',
    'lambda_l': 'streets per unit (rad x m)',
    'range_m': 'sector range R in meters',
    'beta_db': 'SINR threshold in dB',
}


class Scenario(namedtuple('Scenario', ['radar', 'network', 'sector', 'r_target'])):
    """
    Fixed parameters of a run

    Args:
        radar (RadarParams): link parameters
        network (NetworkParams): intensities and interferer model
        sector (SectorGeometry): ego sector
        r_target (float): target range, None to follow the sector range
    """
    __slots__ = ()

    def __new__(cls, radar, network, sector, r_target=None):
        return super(Scenario, cls).__new__(cls, radar, network, sector, r_target)

    @property
    def target_range(self):
        return self.sector.max_range if self.r_target is None else min(self.r_target, self.sector.max_range)

    def with_value(self, axis, value):
        """
        Returns:
            (Scenario): copy with the parameter of the sweep axis set to value, given in interface units
        """
        if axis == 'omega_b_deg':
            return self._replace(sector=self.sector.with_half_beamwidth(np.deg2rad(value)))
        if axis == 'lambda_p':
            return self._replace(network=self.network.replace(lambda_p=value))
        if axis == 'lambda_l':
            return self._replace(network=self.network.replace(lambda_l=value))
        if axis == 'range_m':
            return self._replace(sector=self.sector.with_range(value))
        if axis == 'beta_db':
            return self._replace(radar=self.radar.replace(beta=float(db_to_linear(value))))
        raise ValueError('unknown sweep axis %s, expected one of %s' % (axis, sorted(AXES)))


class SweepGrid(namedtuple('SweepGrid', ['axis', 'values', 'scenario'])):
    """
    Args:
        axis (str): one of AXES
        values (tuple): strictly increasing grid values in the axis' interface units
        scenario (Scenario): parameters held fixed along the sweep
    """
    __slots__ = ()

    def __new__(cls, axis, values, scenario):
        if axis not in AXES:
            raise ValueError('unknown sweep axis %s, expected one of %s' % (axis, sorted(AXES)))
        values = tuple(float(v) for v in values)
        if len(values) == 0:
            raise ValueError('sweep grid over %s is empty' % axis)
        if any(b <= a for a, b in zip(values[:-1], values[1:])):
            raise ValueError('sweep values over %s must be strictly increasing, got %s' % (axis, values))
        if axis == 'omega_b_deg' and not (values[0] > 0 and values[-1] <= 45):
            raise ValueError('half-beamwidth grid must lie in (0, 45] degrees, got %s' % (values,))
        return super(SweepGrid, cls).__new__(cls, axis, values, scenario)

    def scenarios(self):
        return [self.scenario.with_value(self.axis, v) for v in self.values]


class SweepRow(namedtuple('SweepRow', CSV_HEADER + ('error',))):
    """
    One grid point evaluated by one engine. Analytic rows have std_err 0 and trials 0.
    Failed points keep NaN metrics and the failure message in `error`, which is not serialized.
    """
    __slots__ = ()

    def __new__(cls, grid_axis, grid_value, engine, p_d, l_avg, n_r, n_d, std_err, trials, error=''):
        return super(SweepRow, cls).__new__(cls, grid_axis, float(grid_value), engine, float(p_d), float(l_avg),
                                            float(n_r), float(n_d), float(std_err), int(trials), error)

    @classmethod
    def failed(cls, axis, value, engine, message):
        nan = float('nan')
        return cls(axis, value, engine, nan, nan, nan, nan, nan, 0, error=message)

    def cells(self):
        return [format_value(getattr(self, k)) for k in CSV_HEADER]


def _same_cell(a, b):
    if isinstance(a, float) and isinstance(b, float):
        return (np.isnan(a) and np.isnan(b)) or a == b
    return a == b


class SweepTable(object):
    """
    Rows ordered by grid index, then engine. Serializes to csv with the fixed header
    grid_axis,grid_value,engine,p_d,l_avg,n_r,n_d,std_err,trials
    """

    def __init__(self, rows):
        self.rows = list(rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, SweepTable) or len(self) != len(other):
            return False
        return all(_same_cell(getattr(a, k), getattr(b, k)) for a, b in zip(self.rows, other.rows)
                   for k in CSV_HEADER)

    def __ne__(self, other):
        return not self == other

    def select(self, engine):
        return SweepTable([row for row in self.rows if row.engine == engine])

    def column(self, name, engine=None):
        rows = self.rows if engine is None else self.select(engine).rows
        return np.array([getattr(row, name) for row in rows])

    @property
    def failures(self):
        return [row for row in self.rows if row.error]

    def to_csv_string(self):
        lines = [','.join(CSV_HEADER)] + [','.join(row.cells()) for row in self.rows]
        return '\n'.join(lines) + '\n'

    def to_csv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as f:
            f.write(self.to_csv_string())

    @classmethod
    def from_csv_string(cls, text):
        lines = text.splitlines()
        assert lines and tuple(lines[0].split(',')) == CSV_HEADER, 'unexpected sweep table header %s' % lines[:1]
        rows = []
        for line in lines[1:]:
            axis, value, engine, p_d, l_avg, n_r, n_d, std_err, trials = line.split(',')
            rows.append(SweepRow(axis, float(value), engine, float(p_d), float(l_avg), float(n_r), float(n_d),
                                 float(std_err), int(trials)))
        return cls(rows)

    @classmethod
    def from_csv(cls, path):
        with open(path, 'r', newline='', encoding='utf-8') as f:
            return cls.from_csv_string(f.read())


def evaluate_point(scenario, axis, value, engine, q=QuadratureSpec(), mc=MonteCarloSpec(),
                   convention=DEFAULT_CONVENTION, beta_prime_convention='two-way'):
    """
    Evaluates p_D, l_avg, n(R) and n_D of one scenario with one engine

    Returns:
        (SweepRow): the evaluated row, or a failed row carrying the error message
    """
    radar, net, s = scenario.radar, scenario.network, scenario.sector
    try:
        if engine == 'analytic':
            l_avg = avg_line_length(net, s, q, convention=convention)
            p_d = detection_probability(radar, net, s, scenario.target_range, q,
                                        beta_prime_convention=beta_prime_convention)
            n_r = net.lambda_p * l_avg
            return SweepRow(axis, value, engine, p_d, l_avg, n_r, n_r * p_d, 0.0, 0)
        if engine == 'mc':
            options = mc.options(s)
            p_d = estimate_pd(radar, net, s, scenario.target_range, **options)
            length, count = estimate_chord_stats(net, s, **options)
            return SweepRow(axis, value, engine, p_d.mean, length.mean, count.mean, count.mean * p_d.mean,
                            p_d.std_err, p_d.trials)
    except (QuadratureError, ValueError) as e:
        logger.warn('%s engine failed at %s=%s: %s' % (engine, axis, value, e))
        return SweepRow.failed(axis, value, engine, str(e))
    raise ValueError('unknown engine %s, expected one of %s' % (engine, ENGINES))


def run_sweep(grid, engines, q=QuadratureSpec(), mc=MonteCarloSpec(), convention=DEFAULT_CONVENTION, n_jobs=1,
              beta_prime_convention='two-way'):
    """
    Evaluates the requested engines at every grid point. Points are evaluated concurrently with
    joblib and assembled in grid order, analytic before mc.

    Args:
        grid (SweepGrid): axis, values and fixed parameters
        engines (iterable): subset of {'analytic', 'mc'}
        q (QuadratureSpec): analytic tolerances
        mc (MonteCarloSpec): Monte Carlo settings, every point uses the same seed
        convention (str): line-length convention of the analytic engine
        n_jobs (int): joblib workers

    Returns:
        (SweepTable): one row per grid point per engine
    """
    engines = set(engines)
    if not engines:
        raise ValueError('empty engine set, expected a subset of %s' % (ENGINES,))
    unknown = engines - set(ENGINES)
    if unknown:
        raise ValueError('unknown engines %s, expected a subset of %s' % (sorted(unknown), ENGINES))
    ordered = [e for e in ENGINES if e in engines]

    jobs = [delayed(evaluate_point)(scenario, grid.axis, value, engine, q, mc, convention, beta_prime_convention)
            for value, scenario in zip(grid.values, grid.scenarios()) for engine in ordered]
    with logger.ProfileKV('sweep'):
        rows = Parallel(n_jobs=n_jobs)(jobs)
    table = SweepTable(rows)
    for row in table.failures:
        logger.warn('failed row %s=%s (%s): %s' % (row.grid_axis, row.grid_value, row.engine, row.error))
    return table
