import numpy as np
from collections import namedtuple

from plcp_radar.geometry.lines import street_points


class SimulationWindow(namedtuple('SimulationWindow', ['r_sim', 'w_line'])):
    """
    Args:
        r_sim (float): streets are sampled with r < r_sim and interferers are kept within distance r_sim
        w_line (float): half-length of the vehicle window on each street, centered at the perpendicular foot,
            at least 2 r_sim
    """
    __slots__ = ()

    def __new__(cls, r_sim, w_line=None):
        w_line = 2 * r_sim if w_line is None else w_line
        if not r_sim > 0:
            raise ValueError('r_sim must be positive, got %s m' % r_sim)
        if w_line < 2 * r_sim:
            raise ValueError('w_line must be at least 2 r_sim, got %s m < 2 x %s m' % (w_line, r_sim))
        return super(SimulationWindow, cls).__new__(cls, float(r_sim), float(w_line))

    @classmethod
    def for_sector(cls, s, r_sim=None, w_line=None):
        """ defaults r_sim = 10 R and w_line = 2 r_sim """
        r_sim = 10 * s.max_range if r_sim is None else r_sim
        if not r_sim >= s.max_range:
            raise ValueError('r_sim must be at least the range %s m, got %s m' % (s.max_range, r_sim))
        return cls(r_sim, w_line)


class PlcpRealization(namedtuple('PlcpRealization', ['theta', 'r', 'street_index', 'offsets', 'orientation',
                                                     'fading', 'ego_offsets', 'ego_orientation', 'ego_fading',
                                                     'rcs'])):
    """
    One sample of the street network and its vehicles around the ego radar. The ego street
    (generating point (0, 0)) is implicit, its vehicles are stored separately and are
    empty unless same-street interferers are enabled.

    Args:
        theta, r (np.ndarray): generating points of the streets
        street_index (np.ndarray): street of each vehicle
        offsets (np.ndarray): signed offset of each vehicle from the perpendicular foot of its street
        orientation (np.ndarray): +1 if the boresight is +tangent of the street, -1 otherwise
        fading (np.ndarray): unit-mean exponential power fading of each vehicle
        ego_offsets, ego_orientation, ego_fading (np.ndarray): vehicles on the ego street
        rcs (float): radar cross-section of the target in m^2
    """
    __slots__ = ()

    @property
    def n_streets(self):
        return len(self.theta)

    @property
    def n_vehicles(self):
        return len(self.offsets)

    def positions(self):
        theta = self.theta[self.street_index]
        return street_points(theta, self.r[self.street_index], self.offsets)

    def boresights(self):
        theta = self.theta[self.street_index]
        o = self.orientation
        return np.stack([-o * np.sin(theta), o * np.cos(theta)], axis=-1)

    def all_vehicles(self):
        """
        Returns:
            (tuple): positions (n, 2), boresights (n, 2) and fading (n,) of the vehicles of every street,
                     the ego street included
        """
        ego_positions = np.stack([np.zeros_like(self.ego_offsets), self.ego_offsets], axis=-1)
        ego_boresights = np.stack([np.zeros_like(self.ego_offsets), self.ego_orientation], axis=-1)
        return (np.concatenate([self.positions(), ego_positions]),
                np.concatenate([self.boresights(), ego_boresights]),
                np.concatenate([self.fading, self.ego_fading]))


def _orientations(offsets, mode, rng):
    # boresight sign along the street tangent, facing the perpendicular foot by default
    sign = np.where(offsets > 0, -1.0, 1.0)
    if mode == 'random-two-way':
        sign = sign * rng.choice([-1.0, 1.0], size=len(offsets))
    return sign


def sample_realization(net, window, seed, sigma_bar=1.0):
    """
    Samples streets in [0, 2pi) x (0, r_sim), a 1-D Poisson process of vehicles on each street within
    the window, their orientations and fading, and the target's radar cross-section.

    Args:
        net (NetworkParams): intensities and interferer model
        window (SimulationWindow): sampling window
        seed (int or np.random.SeedSequence or np.random.Generator): randomness
        sigma_bar (float): mean radar cross-section of the target in m^2

    Returns:
        (PlcpRealization): the sample
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

    n_streets = rng.poisson(net.lambda_l * 2 * np.pi * window.r_sim)
    theta = rng.uniform(0.0, 2 * np.pi, size=n_streets)
    r = rng.uniform(0.0, window.r_sim, size=n_streets)

    counts = rng.poisson(net.lambda_p * 2 * window.w_line, size=n_streets)
    street_index = np.repeat(np.arange(n_streets), counts)
    offsets = rng.uniform(-window.w_line, window.w_line, size=street_index.shape[0])
    orientation = _orientations(offsets, net.orientation, rng)
    fading = rng.exponential(1.0, size=offsets.shape[0])

    if net.same_street:
        n_ego = rng.poisson(net.lambda_p * 2 * window.w_line)
        ego_offsets = rng.uniform(-window.w_line, window.w_line, size=n_ego)
        ego_orientation = _orientations(ego_offsets, net.orientation, rng)
        ego_fading = rng.exponential(1.0, size=n_ego)
    else:
        ego_offsets, ego_orientation, ego_fading = np.zeros(0), np.zeros(0), np.zeros(0)

    rcs = rng.exponential(sigma_bar)
    return PlcpRealization(theta=theta, r=r, street_index=street_index, offsets=offsets, orientation=orientation,
                           fading=fading, ego_offsets=ego_offsets, ego_orientation=ego_orientation,
                           ego_fading=ego_fading, rcs=rcs)
