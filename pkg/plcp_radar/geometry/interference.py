import numpy as np
from collections import namedtuple

from plcp_radar.geometry.lines import is_parallel
from plcp_radar.geometry.sector import ANGLE_TOL

MAX_HALF_BEAMWIDTH = np.pi / 4


class InterferenceInterval(namedtuple('InterferenceInterval', ['lower', 'upper', 'empty'])):
    """
    Offsets v (from the intersection, along the frame direction) at which a vehicle facing the
    perpendicular foot and the ego radar are mutually beam-aligned.

    Args:
        lower (float): infimum a of the set
        upper (float): supremum b of the set, may be inf
        empty (bool): True iff the set has zero measure
    """
    __slots__ = ()

    @classmethod
    def make(cls, lower, upper):
        lower, upper = float(lower), float(upper)
        if not upper > lower:
            return EMPTY_INTERVAL
        return cls(lower, upper, False)

    @property
    def length(self):
        return 0.0 if self.empty else self.upper - self.lower

    def contains(self, v):
        v = np.asarray(v, dtype=float)
        if self.empty:
            return np.zeros(v.shape, dtype=bool)
        return (v > self.lower) & (v < self.upper)

    def clip(self, lower, upper):
        if self.empty:
            return self
        return InterferenceInterval.make(max(self.lower, lower), min(self.upper, upper))

EMPTY_INTERVAL = InterferenceInterval(0.0, 0.0, True)


def check_half_beamwidth(omega):
    if not 0 < omega < np.pi / 2:
        raise ValueError('half-beamwidth must lie in (0, pi/2) rad, got %s rad' % omega)
    if omega > MAX_HALF_BEAMWIDTH:
        raise ValueError('the mutual-alignment set is a single interval only for half-beamwidths up to '
                         'pi/4 rad, got %s rad' % omega)


def interference_bounds(f, omega):
    """
    Interval of offsets along a street at which a radar facing the perpendicular foot and the ego
    radar see each other. Boundary angles are assigned to the branch below them.

    Args:
        f (IntersectionFrame): frame of the street, not PARALLEL
        omega (float): half-beamwidth of both radars in radians, in (0, pi/4]

    Returns:
        (InterferenceInterval): lower and upper offset, upper may be inf
    """
    check_half_beamwidth(omega)
    if is_parallel(f):
        raise ValueError('a street parallel to the ego street has no intersection frame')
    u, theta = f.u, f.theta
    sin_o, tan_o = np.sin(omega), np.tan(omega)

    if u >= 0:
        theta = theta % np.pi
        if theta <= omega + ANGLE_TOL:
            return InterferenceInterval.make(u * np.sin(theta - omega) / sin_o, np.inf)
        if theta <= 2 * omega + ANGLE_TOL:
            return InterferenceInterval.make(u * np.sin(theta - omega) / sin_o,
                                             u * tan_o / (np.sin(theta) - np.cos(theta) * tan_o))
        if theta <= np.pi - 2 * omega + ANGLE_TOL:
            return EMPTY_INTERVAL
        if theta <= np.pi - omega + ANGLE_TOL:
            return InterferenceInterval.make(u * np.sin(theta + omega) / sin_o,
                                             u * tan_o / (np.sin(theta) + np.cos(theta) * tan_o))
        return InterferenceInterval.make(u * np.sin(theta + omega) / sin_o, np.inf)

    # behind the ego, theta in (pi, 2pi)
    if theta < np.pi + omega - ANGLE_TOL:
        zeta = theta - np.pi
    elif theta > 2 * np.pi - omega + ANGLE_TOL:
        zeta = 2 * np.pi - theta
    else:
        return EMPTY_INTERVAL
    return InterferenceInterval.make(-u * sin_o / np.sin(omega - zeta), np.inf)


def foot_interval(f, omega):
    """
    The interference interval expressed as offsets x from the perpendicular foot,
    where the distance to the ego is hypot(x, r)

    Returns:
        (tuple): (x_lower, x_upper) or None when empty
    """
    interval = interference_bounds(f, omega)
    if interval.empty:
        return None
    shift = f.u * abs(np.cos(f.theta))
    return interval.lower + shift, interval.upper + shift
