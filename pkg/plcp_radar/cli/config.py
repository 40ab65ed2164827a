"""
Scenario configuration: a flat json object with unit-suffixed keys. Missing keys take the defaults
below, which are the reference automotive radar link at 76.5 GHz.
"""
import json
import numbers
from collections import OrderedDict

import numpy as np

from plcp_radar.analytic.line_length import CONVENTIONS
from plcp_radar.analytic.detection import BETA_PRIME_CONVENTIONS
from plcp_radar.analytic.params import RadarParams, NetworkParams, QuadratureSpec, ORIENTATIONS
from plcp_radar.geometry.sector import SectorGeometry
from plcp_radar.montecarlo.estimators import MonteCarloSpec
from plcp_radar.optimizer.grid_search import beamwidth_grid
from plcp_radar.optimizer.sweep import Scenario, SweepGrid, AXES
from plcp_radar.utils.utils import ConfigError, config_hash

ENGINE_CHOICES = ('analytic', 'mc', 'both')

DEFAULT_CONFIG = OrderedDict([
    # radar link
    ('p_dbm', 10.0),
    ('alpha', 2.0),
    ('sigma_dbsm', 30.0),
    ('g_t_dbi', 10.0),
    ('g_r_dbi', 10.0),
    ('f_c_ghz', 76.5),
    ('n_d_dbm_hz', -174.0),
    ('bandwidth_khz', 25.0),
    ('beta_db', 10.0),
    # street network
    ('lambda_l_per_m2', 0.005),
    ('lambda_p_per_m', 0.01),
    ('orientation', 'facing'),
    ('same_street', False),
    # sector
    ('omega_b_deg', 10.0),
    ('range_m', 15.0),
    ('r_target_m', None),
    # analytic engine
    ('engine', 'analytic'),
    ('convention', 'campbell'),
    ('beta_prime_convention', 'two-way'),
    ('epsrel', 1e-4),
    ('epsabs', 1e-8),
    ('r_max_m', None),
    ('quad_limit', 200),
    # monte carlo engine
    ('trials', 10000),
    ('seed', 1),
    ('r_sim_m', None),
    ('w_line_m', None),
    ('n_partitions', 1),
    ('parallel', False),
    ('confidence', 0.99),
    ('min_distance_m', 1.0),
    # sweeps, optimization, figures
    ('sweep_axis', 'omega_b_deg'),
    ('sweep_values', [float(v) for v in range(1, 21)]),
    ('omega_grid_start_deg', 1.0),
    ('omega_grid_stop_deg', 20.0),
    ('omega_grid_step_deg', 0.5),
    ('n_jobs', 1),
    ('validation_grid', 'full'),
    ('figure_resolution', 'full'),
])


def _number(positive=False, non_negative=False, integer=False, lower=None, upper=None, unit=''):
    def check(key, value):
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise ConfigError(key, 'expected a number%s, got %r' % (' in ' + unit if unit else '', value))
        if integer and int(value) != value:
            raise ConfigError(key, 'expected an integer, got %r' % (value,))
        if positive and not value > 0:
            raise ConfigError(key, 'must be positive, got %s %s' % (value, unit))
        if non_negative and value < 0:
            raise ConfigError(key, 'must be non-negative, got %s %s' % (value, unit))
        if lower is not None and not value >= lower:
            raise ConfigError(key, 'must be >= %s %s, got %s %s' % (lower, unit, value, unit))
        if upper is not None and not value <= upper:
            raise ConfigError(key, 'must be <= %s %s, got %s %s' % (upper, unit, value, unit))
        return int(value) if integer else float(value)
    return check


def _optional(check):
    def optional(key, value):
        return None if value is None else check(key, value)
    return optional


def _choice(choices):
    def check(key, value):
        if value not in choices:
            raise ConfigError(key, 'must be one of %s, got %r' % (', '.join(choices), value))
        return value
    return check


def _flag(key, value):
    if not isinstance(value, bool):
        raise ConfigError(key, 'expected true or false, got %r' % (value,))
    return value


def _half_beamwidth_deg(key, value):
    value = _number(unit='deg')(key, value)
    if not 0 < value <= 45:
        raise ConfigError(key, 'half-beamwidth must lie in (0, 45] deg, got %s deg' % value)
    return value


def _values(key, value):
    if not isinstance(value, (list, tuple)) or len(value) == 0:
        raise ConfigError(key, 'expected a non-empty list of numbers, got %r' % (value,))
    return [_number()(key, v) for v in value]


FIELD_CHECKS = {
    'p_dbm': _number(unit='dBm'),
    'alpha': _number(lower=1, unit=''),
    'sigma_dbsm': _number(unit='dBsm'),
    'g_t_dbi': _number(unit='dBi'),
    'g_r_dbi': _number(unit='dBi'),
    'f_c_ghz': _number(positive=True, unit='GHz'),
    'n_d_dbm_hz': _number(unit='dBm/Hz'),
    'bandwidth_khz': _number(non_negative=True, unit='kHz'),
    'beta_db': _number(unit='dB'),
    'lambda_l_per_m2': _number(non_negative=True, unit='m^-2'),
    'lambda_p_per_m': _number(non_negative=True, unit='m^-1'),
    'orientation': _choice(ORIENTATIONS),
    'same_street': _flag,
    'omega_b_deg': _half_beamwidth_deg,
    'range_m': _number(positive=True, unit='m'),
    'r_target_m': _optional(_number(positive=True, unit='m')),
    'engine': _choice(ENGINE_CHOICES),
    'convention': _choice(CONVENTIONS),
    'beta_prime_convention': _choice(BETA_PRIME_CONVENTIONS),
    'epsrel': _number(positive=True),
    'epsabs': _number(positive=True),
    'r_max_m': _optional(_number(positive=True, unit='m')),
    'quad_limit': _number(integer=True, lower=1),
    'trials': _number(integer=True, lower=1),
    'seed': _number(integer=True, non_negative=True),
    'r_sim_m': _optional(_number(positive=True, unit='m')),
    'w_line_m': _optional(_number(positive=True, unit='m')),
    'n_partitions': _number(integer=True, lower=1),
    'parallel': _flag,
    'confidence': _number(positive=True, upper=0.999999),
    'min_distance_m': _number(positive=True, unit='m'),
    'sweep_axis': _choice(sorted(AXES)),
    'sweep_values': _values,
    'omega_grid_start_deg': _half_beamwidth_deg,
    'omega_grid_stop_deg': _half_beamwidth_deg,
    'omega_grid_step_deg': _number(positive=True, unit='deg'),
    'n_jobs': _number(integer=True),
    'validation_grid': _choice(('full', 'quick')),
    'figure_resolution': _choice(('full', 'quick')),
}
assert set(FIELD_CHECKS) == set(DEFAULT_CONFIG)


class ScenarioConfig(object):
    """
    Validated run configuration

    Args:
        params (dict): configuration keys, unknown keys are rejected and missing ones take defaults
    """

    def __init__(self, params=None):
        params = dict() if params is None else params
        if not isinstance(params, dict):
            raise ConfigError('config', 'expected a json object, got %s' % type(params).__name__)
        unknown = sorted(set(params) - set(DEFAULT_CONFIG))
        if unknown:
            raise ConfigError(unknown[0], 'unknown configuration key')
        self.params = OrderedDict()
        for key, default in DEFAULT_CONFIG.items():
            value = params.get(key, default)
            self.params[key] = FIELD_CHECKS[key](key, value)
        self._check_consistency()

    def _check_consistency(self):
        p = self.params
        if p['r_target_m'] is not None and p['r_target_m'] > p['range_m']:
            raise ConfigError('r_target_m', 'target range %s m exceeds the sector range %s m'
                              % (p['r_target_m'], p['range_m']))
        if p['r_max_m'] is not None and not p['r_max_m'] > p['range_m']:
            raise ConfigError('r_max_m', 'field radius %s m must exceed the range %s m' % (p['r_max_m'], p['range_m']))
        if p['r_sim_m'] is not None and p['r_sim_m'] < p['range_m']:
            raise ConfigError('r_sim_m', 'simulation radius %s m must be at least the range %s m'
                              % (p['r_sim_m'], p['range_m']))
        if p['w_line_m'] is not None and p['w_line_m'] < 2 * (p['r_sim_m'] or 10 * p['range_m']):
            raise ConfigError('w_line_m', 'vehicle window %s m must be at least twice the simulation radius'
                              % p['w_line_m'])
        if not p['omega_grid_start_deg'] < p['omega_grid_stop_deg']:
            raise ConfigError('omega_grid_stop_deg', 'grid stop %s deg must exceed grid start %s deg'
                              % (p['omega_grid_stop_deg'], p['omega_grid_start_deg']))
        values = p['sweep_values']
        if any(b <= a for a, b in zip(values[:-1], values[1:])):
            raise ConfigError('sweep_values', 'values must be strictly increasing, got %s' % values)
        if p['sweep_axis'] == 'omega_b_deg':
            for v in values:
                _half_beamwidth_deg('sweep_values', v)

    @classmethod
    def from_dict(cls, params, overrides=None):
        params = dict(params)
        params.update(overrides or {})
        return cls(params)

    @classmethod
    def from_file(cls, path, overrides=None):
        try:
            with open(path, 'r') as f:
                params = json.load(f)
        except (OSError, IOError) as e:
            raise ConfigError('config', 'cannot read %s: %s' % (path, e))
        except ValueError as e:
            raise ConfigError('config', 'malformed json in %s: %s' % (path, e))
        if not isinstance(params, dict):
            raise ConfigError('config', 'expected a json object in %s' % path)
        return cls.from_dict(params, overrides)

    def replace(self, **overrides):
        params = dict(self.params)
        params.update(overrides)
        return ScenarioConfig(params)

    def __getitem__(self, key):
        return self.params[key]

    def to_dict(self):
        return OrderedDict(self.params)

    def config_hash(self):
        return config_hash(self.params)

    # Model objects
    # ----------------------------------------
    def radar_params(self):
        p = self.params
        return RadarParams.from_db(p_dbm=p['p_dbm'], alpha=p['alpha'], sigma_dbsm=p['sigma_dbsm'],
                                   g_t_dbi=p['g_t_dbi'], g_r_dbi=p['g_r_dbi'], f_c_hz=p['f_c_ghz'] * 1e9,
                                   n_d_dbm_hz=p['n_d_dbm_hz'], bandwidth_hz=p['bandwidth_khz'] * 1e3,
                                   beta_db=p['beta_db'])

    def network_params(self):
        p = self.params
        return NetworkParams(p['lambda_l_per_m2'], p['lambda_p_per_m'], orientation=p['orientation'],
                             same_street=p['same_street'])

    def sector(self):
        return SectorGeometry(np.deg2rad(self.params['omega_b_deg']), self.params['range_m'])

    def scenario(self):
        return Scenario(self.radar_params(), self.network_params(), self.sector(), self.params['r_target_m'])

    def quadrature_spec(self):
        p = self.params
        return QuadratureSpec(epsrel=p['epsrel'], epsabs=p['epsabs'], r_max=p['r_max_m'], limit=p['quad_limit'])

    def monte_carlo_spec(self):
        p = self.params
        return MonteCarloSpec(trials=p['trials'], seed=p['seed'], r_sim=p['r_sim_m'], w_line=p['w_line_m'],
                              n_partitions=p['n_partitions'], parallel=p['parallel'], confidence=p['confidence'])

    def engines(self):
        engine = self.params['engine']
        return ('analytic', 'mc') if engine == 'both' else (engine,)

    def sweep_grid(self):
        return SweepGrid(self.params['sweep_axis'], self.params['sweep_values'], self.scenario())

    def beamwidth_grid(self):
        p = self.params
        return beamwidth_grid(p['omega_grid_start_deg'], p['omega_grid_stop_deg'], p['omega_grid_step_deg'])
