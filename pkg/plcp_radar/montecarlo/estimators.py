import numpy as np
from collections import namedtuple
from scipy.stats import norm

from plcp_radar.analytic.params import noise_power
from plcp_radar.geometry.interference import interference_bounds
from plcp_radar.geometry.lines import GeneratingPoint, intersection_frame, is_parallel
from plcp_radar.geometry.sector import mutual_interference, sector_contains, clip_chord
from plcp_radar.montecarlo.base import TrialTask, MonteCarloSampler
from plcp_radar.montecarlo.plcp_sampler import SimulationWindow
from plcp_radar.utils import logger

DEFAULT_CONFIDENCE = 0.99


class EstimateWithCI(namedtuple('EstimateWithCI', ['mean', 'std_err', 'trials', 'confidence'])):
    """
    Sample mean with its standard error, std / sqrt(trials), and a normal confidence interval
    """
    __slots__ = ()

    @classmethod
    def from_samples(cls, samples, confidence=DEFAULT_CONFIDENCE):
        samples = np.asarray(samples, dtype=float)
        n = samples.shape[0]
        assert n >= 1, 'need at least one sample'
        std_err = float(np.std(samples, ddof=1) / np.sqrt(n)) if n > 1 else 0.0
        return cls(float(np.mean(samples)), std_err, int(n), float(confidence))

    @property
    def half_width(self):
        return float(norm.ppf(0.5 + self.confidence / 2) * self.std_err)

    @property
    def interval(self):
        return self.mean - self.half_width, self.mean + self.half_width

    def covers(self, value):
        low, high = self.interval
        return low <= value <= high

    def agrees_with(self, other, n_std_err=3.0):
        """ both estimates agree within n_std_err combined standard errors """
        return abs(self.mean - other.mean) <= n_std_err * np.hypot(self.std_err, other.std_err)


def _received_interference(positions, boresights, fading, s, radar, inner, outer):
    distance = np.hypot(positions[:, 0], positions[:, 1])
    active = mutual_interference(s, positions, boresights) & (distance <= outer) & (distance >= inner)
    if not np.any(active):
        return 0.0
    return float(4 * np.pi * radar.gamma * radar.power *
                 np.sum(fading[active] * distance[active] ** (-radar.alpha)))


class DetectionTask(TrialTask):
    """
    Success of the ego radar in one realization: SINR > beta, where the interference sums every
    vehicle within the field disk that passes the mutual-alignment predicate
    """
    outcome_names = ('success',)

    def __init__(self, radar, net, s, r_target, window):
        super(DetectionTask, self).__init__(net, window, sigma_bar=radar.sigma_bar)
        self.radar = radar
        self.sector = s
        self.r_target = r_target
        self.noise = noise_power(radar)

    def evaluate(self, realization):
        p = self.radar
        positions, boresights, fading = realization.all_vehicles()
        interference = _received_interference(positions, boresights, fading, self.sector, p, 0.0,
                                              self.window.r_sim)
        signal = p.gamma * realization.rcs * p.power * self.r_target ** (-2 * p.alpha)
        return (float(signal > p.beta * (self.noise + interference)),)


class ChordStatsTask(TrialTask):
    """
    Total street length and number of vehicles inside the sector, the ego street excluded
    """
    outcome_names = ('length', 'count')

    def __init__(self, net, s, window):
        super(ChordStatsTask, self).__init__(net, window)
        self.sector = s

    def evaluate(self, realization):
        length = float(np.sum(clip_chord(realization.theta, realization.r, self.sector)))
        count = float(np.count_nonzero(sector_contains(realization.positions(), self.sector)))
        return length, count


class InterferenceTask(TrialTask):
    """
    Aggregate interference power at the ego radar from mutually aligned vehicles in the
    annulus min_distance <= |w| <= r_sim
    """
    outcome_names = ('interference',)

    def __init__(self, radar, net, s, window, min_distance=1.0):
        super(InterferenceTask, self).__init__(net, window, sigma_bar=radar.sigma_bar)
        self.radar = radar
        self.sector = s
        self.min_distance = min_distance

    def evaluate(self, realization):
        positions, boresights, fading = realization.all_vehicles()
        return (_received_interference(positions, boresights, fading, self.sector, self.radar,
                                       self.min_distance, self.window.r_sim),)


def _sample(task, trials, seed, n_partitions, parallel, verbose):
    sampler = MonteCarloSampler(task, n_partitions=n_partitions, parallel=parallel, verbose=verbose)
    return sampler.obtain_samples(trials, seed)


def estimate_pd(p, net, s, r_target=None, trials=10000, seed=0, window=None, n_partitions=1, parallel=False,
                confidence=DEFAULT_CONFIDENCE, verbose=False):
    """
    Monte Carlo estimate of the detection success probability

    Args:
        p (RadarParams): link parameters
        net (NetworkParams): intensities and interferer model
        s (SectorGeometry): ego sector
        r_target (float): target range in meters, defaults to s.max_range
        trials (int): number of realizations
        seed (int): base seed
        window (SimulationWindow): defaults to SimulationWindow.for_sector(s)
        n_partitions (int): number of seeded trial partitions
        parallel (bool): evaluate the partitions in worker processes

    Returns:
        (EstimateWithCI): fraction of successful realizations
    """
    r_target = s.max_range if r_target is None else r_target
    window = SimulationWindow.for_sector(s) if window is None else window
    task = DetectionTask(p, net, s, r_target, window)
    outcomes = _sample(task, trials, seed, n_partitions, parallel, verbose)
    estimate = EstimateWithCI.from_samples(outcomes[:, 0], confidence)
    logger.debug('p_D estimate %.6f +- %.2g over %d trials' % (estimate.mean, estimate.std_err, trials))
    return estimate


def estimate_chord_stats(net, s, trials=10000, seed=0, window=None, n_partitions=1, parallel=False,
                         confidence=DEFAULT_CONFIDENCE, verbose=False):
    """
    Returns:
        (tuple): EstimateWithCI of the total in-sector street length in meters and of the in-sector vehicle count
    """
    window = SimulationWindow.for_sector(s) if window is None else window
    outcomes = _sample(ChordStatsTask(net, s, window), trials, seed, n_partitions, parallel, verbose)
    return (EstimateWithCI.from_samples(outcomes[:, 0], confidence),
            EstimateWithCI.from_samples(outcomes[:, 1], confidence))


def estimate_interference_power(p, net, s, trials=10000, seed=0, window=None, min_distance=1.0, n_partitions=1,
                                parallel=False, confidence=DEFAULT_CONFIDENCE, verbose=False):
    """
    Returns:
        (EstimateWithCI): mean aggregate interference power at the ego radar in W
    """
    window = SimulationWindow.for_sector(s) if window is None else window
    task = InterferenceTask(p, net, s, window, min_distance=min_distance)
    outcomes = _sample(task, trials, seed, n_partitions, parallel, verbose)
    return EstimateWithCI.from_samples(outcomes[:, 0], confidence)


def predicate_interval_disagreements(realization, s, tol=1e-6):
    """
    Compares, for every vehicle facing the perpendicular foot of its street, the mutual-alignment
    predicate with membership of its offset in the interference interval of the street.
    Vehicles within tol * max(1, |u|) of an interval endpoint are not counted.

    Returns:
        (tuple): (number of disagreements, number of vehicles compared)
    """
    positions, boresights = realization.positions(), realization.boresights()
    facing = realization.orientation == np.where(realization.offsets > 0, -1.0, 1.0)
    predicate = mutual_interference(s, positions, boresights)
    disagreements, compared = 0, 0
    for k in np.flatnonzero(facing):
        street = realization.street_index[k]
        frame = intersection_frame(GeneratingPoint(realization.theta[street], realization.r[street]))
        if is_parallel(frame):
            continue
        interval = interference_bounds(frame, s.half_beamwidth)
        # offset from the intersection along the frame direction
        v = np.dot(frame.direction, _tangent(frame.theta)) * realization.offsets[k] + frame.foot_parameter
        slack = tol * max(1.0, abs(frame.u))
        if not interval.empty and (abs(v - interval.lower) < slack or abs(v - interval.upper) < slack):
            continue
        compared += 1
        disagreements += int(bool(interval.contains(v)) != bool(predicate[k]))
    return disagreements, compared


def _tangent(theta):
    return np.array([-np.sin(theta), np.cos(theta)])


class MonteCarloSpec(namedtuple('MonteCarloSpec', ['trials', 'seed', 'r_sim', 'w_line', 'n_partitions',
                                                   'parallel', 'confidence'])):
    """
    Args:
        trials (int): realizations per estimate, >= 1
        seed (int): base seed
        r_sim (float): field and street sampling radius in meters, None for 10 R
        w_line (float): vehicle window half-length in meters, None for 2 r_sim
        n_partitions (int): seeded trial partitions
        parallel (bool): run partitions in worker processes
        confidence (float): confidence level of the reported intervals
    """
    __slots__ = ()

    def __new__(cls, trials=10000, seed=0, r_sim=None, w_line=None, n_partitions=1, parallel=False,
                confidence=DEFAULT_CONFIDENCE):
        if trials < 1:
            raise ValueError('trials must be >= 1, got %s' % trials)
        if n_partitions < 1:
            raise ValueError('n_partitions must be >= 1, got %s' % n_partitions)
        if not 0 < confidence < 1:
            raise ValueError('confidence must lie in (0, 1), got %s' % confidence)
        return super(MonteCarloSpec, cls).__new__(cls, int(trials), int(seed), r_sim, w_line, int(n_partitions),
                                                  bool(parallel), float(confidence))

    def window_for(self, s):
        return SimulationWindow.for_sector(s, r_sim=self.r_sim, w_line=self.w_line)

    def options(self, s):
        """ keyword arguments of the estimate_* functions """
        return dict(trials=self.trials, seed=self.seed, window=self.window_for(s), n_partitions=self.n_partitions,
                    parallel=self.parallel, confidence=self.confidence)
