import numpy as np
from collections import namedtuple
from joblib import Parallel, delayed

from plcp_radar.analytic.detection import n_detections_lower_bound
from plcp_radar.analytic.line_length import DEFAULT_CONVENTION
from plcp_radar.analytic.params import QuadratureSpec
from plcp_radar.optimizer.sweep import Scenario
from plcp_radar.utils import logger


def beamwidth_grid(start_deg=1.0, stop_deg=20.0, step_deg=0.5):
    """
    Args:
        start_deg (float): smallest half-beamwidth in degrees
        stop_deg (float): largest half-beamwidth in degrees, included
        step_deg (float): grid step in degrees

    Returns:
        (np.ndarray): half-beamwidths in radians
    """
    if not (0 < start_deg < stop_deg and step_deg > 0):
        raise ValueError('invalid beamwidth grid %s:%s:%s degrees' % (start_deg, stop_deg, step_deg))
    n = int(round((stop_deg - start_deg) / step_deg)) + 1
    return np.deg2rad(start_deg + step_deg * np.arange(n))


class BeamwidthOptimum(namedtuple('BeamwidthOptimum', ['half_beamwidth', 'n_d', 'index', 'boundary', 'values'])):
    """
    Args:
        half_beamwidth (float): maximizing grid point in radians
        n_d (float): objective at the maximizer
        index (int): grid index of the maximizer
        boundary (str): 'lower' or 'upper' when the maximizer is a grid end, None when interior
        values (np.ndarray): objective on the whole grid
    """
    __slots__ = ()

    @property
    def saturated(self):
        return self.boundary is not None

    @property
    def half_beamwidth_deg(self):
        return float(np.rad2deg(self.half_beamwidth))


def grid_argmax(grid, values):
    """
    Maximizer of values over grid. NaN values never win, ties go to the smaller grid point.

    Args:
        grid (np.ndarray): increasing grid
        values (np.ndarray): objective on the grid

    Returns:
        (BeamwidthOptimum): argmax with its boundary flag
    """
    grid, values = np.asarray(grid, dtype=float), np.asarray(values, dtype=float)
    if grid.size == 0:
        raise ValueError('grid is empty')
    assert grid.shape == values.shape, 'grid and values differ in shape'
    if np.all(np.isnan(values)):
        raise ValueError('objective is undefined on the whole grid')
    index = int(np.argmax(np.where(np.isnan(values), -np.inf, values)))
    if grid.size > 1 and index == 0:
        boundary = 'lower'
    elif grid.size > 1 and index == grid.size - 1:
        boundary = 'upper'
    else:
        boundary = None
    return BeamwidthOptimum(float(grid[index]), float(values[index]), index, boundary, values)


def _n_d_at(radar, net, s, q, convention):
    return n_detections_lower_bound(radar, net, s, q, convention=convention)


def optimal_beamwidth(p, net, s, grid=None, q=QuadratureSpec(), convention=DEFAULT_CONVENTION, n_jobs=1):
    """
    Half-beamwidth maximizing the lower bound on expected detections n_D over a grid

    Args:
        p (RadarParams): link parameters
        net (NetworkParams): intensities
        s (SectorGeometry): sector template, its half-beamwidth is replaced by the grid values
        grid (np.ndarray): half-beamwidths in radians, defaults to beamwidth_grid()
        q (QuadratureSpec): quadrature tolerances
        n_jobs (int): joblib workers

    Returns:
        (BeamwidthOptimum): maximizer, flagged when it sits on a grid end
    """
    grid = beamwidth_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError('grid is empty')
    values = Parallel(n_jobs=n_jobs)(delayed(_n_d_at)(p, net, s.with_half_beamwidth(omega), q, convention)
                                     for omega in grid)
    optimum = grid_argmax(grid, values)
    logger.debug('optimal half-beamwidth %.2f deg, n_D %.4g%s' % (
        optimum.half_beamwidth_deg, optimum.n_d, ' (saturated at the %s grid end)' % optimum.boundary
        if optimum.saturated else ''))
    return optimum


def optimal_beamwidth_sweep(scenario, axis, values, grid=None, q=QuadratureSpec(), convention=DEFAULT_CONVENTION,
                            n_jobs=1):
    """
    Optimal half-beamwidth along a sweep of another parameter

    Args:
        scenario (Scenario): fixed parameters
        axis (str): sweep axis, e.g. 'lambda_p' or 'range_m'
        values (list): axis values in interface units

    Returns:
        (list): BeamwidthOptimum per value
    """
    assert isinstance(scenario, Scenario)
    optima = []
    for value in values:
        point = scenario.with_value(axis, value)
        optima.append(optimal_beamwidth(point.radar, point.network, point.sector, grid, q, convention, n_jobs))
    return optima
