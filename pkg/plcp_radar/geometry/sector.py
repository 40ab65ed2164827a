import numpy as np
from collections import namedtuple


ANGLE_TOL = 1e-12
BORESIGHT = np.array([0.0, 1.0])


class SectorGeometry(namedtuple('SectorGeometry', ['half_beamwidth', 'max_range'])):
    """
    Radar sector C+(R) of the ego radar: apex at the origin, boresight along +y.

    Args:
        half_beamwidth (float): half-beamwidth Omega_B in radians, in (0, pi/2)
        max_range (float): maximum unambiguous range R in meters, > 0
    """
    __slots__ = ()

    def __new__(cls, half_beamwidth, max_range):
        if not 0 < half_beamwidth < np.pi / 2:
            raise ValueError('half-beamwidth must lie in (0, pi/2) rad, got %s rad' % half_beamwidth)
        if not max_range > 0:
            raise ValueError('range must be positive, got %s m' % max_range)
        return super(SectorGeometry, cls).__new__(cls, float(half_beamwidth), float(max_range))

    @classmethod
    def from_degrees(cls, half_beamwidth_deg, max_range):
        return cls(np.deg2rad(half_beamwidth_deg), max_range)

    def with_half_beamwidth(self, half_beamwidth):
        return SectorGeometry(half_beamwidth, self.max_range)

    def with_range(self, max_range):
        return SectorGeometry(self.half_beamwidth, max_range)

    @property
    def area(self):
        return self.half_beamwidth * self.max_range ** 2


def sector_area(s):
    return s.area


def in_cone(vectors, axis, half_angle):
    """
    Strict angular cone test, zero vectors are outside

    Args:
        vectors (np.ndarray): vectors of shape (..., 2)
        axis (np.ndarray): unit cone axes, shape (2,) or (..., 2)
        half_angle (float): cone half-angle in radians

    Returns:
        (np.ndarray): boolean mask
    """
    vectors = np.asarray(vectors, dtype=float)
    axis = np.asarray(axis, dtype=float)
    dot = vectors[..., 0] * axis[..., 0] + vectors[..., 1] * axis[..., 1]
    cross = vectors[..., 0] * axis[..., 1] - vectors[..., 1] * axis[..., 0]
    norm = np.hypot(vectors[..., 0], vectors[..., 1])
    off_axis = np.arctan2(np.abs(cross), dot)
    return (norm > 0) & (off_axis < half_angle - ANGLE_TOL)


def sector_contains(p, s):
    """
    Args:
        p (np.ndarray): planar point(s), shape (2,) or (n, 2)
        s (SectorGeometry): ego sector

    Returns:
        (bool or np.ndarray): True iff the point is strictly inside the angular cone and within range
    """
    p = np.asarray(p, dtype=float)
    inside = in_cone(p, BORESIGHT, s.half_beamwidth) & (np.hypot(p[..., 0], p[..., 1]) <= s.max_range)
    return bool(inside) if inside.ndim == 0 else inside


def mutual_interference(ego, position, boresight, half_beamwidth=None):
    """
    Mutual beam alignment of the ego radar and other radars. Range is not gated here,
    the interference field and path loss take care of it.

    Args:
        ego (SectorGeometry): ego sector, its half-beamwidth is used for both radars by default
        position (np.ndarray): positions of the other radars, shape (2,) or (n, 2)
        boresight (np.ndarray): unit boresights of the other radars, same shape
        half_beamwidth (float): half-beamwidth of the other radars, defaults to ego's

    Returns:
        (bool or np.ndarray): True iff the ego apex lies in the other cone and the other radar in the ego cone
    """
    other_beam = ego.half_beamwidth if half_beamwidth is None else half_beamwidth
    position = np.asarray(position, dtype=float)
    aligned = in_cone(position, BORESIGHT, ego.half_beamwidth) & in_cone(-position, boresight, other_beam)
    return bool(aligned) if aligned.ndim == 0 else aligned


def alpha_n(u, s):
    """
    Angle at which a line through (0, u) hits a corner of the sector

    Args:
        u (float or np.ndarray): intersection distance, >= 0
        s (SectorGeometry): ego sector

    Returns:
        (float or np.ndarray): arctan(R sin(Omega) / |R cos(Omega) - u|), pi/2 at u = R cos(Omega)
    """
    R, omega = s.max_range, s.half_beamwidth
    return np.arctan2(R * np.sin(omega), np.abs(R * np.cos(omega) - u))


""" Chord branches of a line through (0, u), 0 <= u <= R, at angle theta in (0, pi) """

def _to_arc(u, theta, R):
    return np.sqrt(np.maximum(R ** 2 - (u * np.sin(theta)) ** 2, 0.0))


def chord_l1(u, theta, s):
    R, omega = s.max_range, s.half_beamwidth
    return _to_arc(u, theta, R) - u * np.cos(theta) + u * np.sin(omega) / np.sin(theta + omega)


def chord_l2(u, theta, s):
    omega = s.half_beamwidth
    t2 = np.tan(omega) ** 2
    return 2 * u * np.tan(omega) * np.sin(theta) / (np.sin(theta) ** 2 - np.cos(theta) ** 2 * t2)


def chord_l3(u, theta, s):
    R, omega = s.max_range, s.half_beamwidth
    return _to_arc(u, theta, R) + u * np.cos(theta) + u * np.sin(omega) / np.sin(theta - omega)


def chord_l4(u, theta, s):
    return 2 * _to_arc(u, theta, s.max_range)


def chord_length(f, s):
    """
    Length of the intersection of a street with the sector, by the four chord branches

    Args:
        f (IntersectionFrame): frame of the street
        s (SectorGeometry): ego sector

    Returns:
        (float): chord length in meters, 0 when u lies outside [0, R]
    """
    u = f.u
    if u < 0 or u > s.max_range:
        return 0.0
    theta = f.theta % np.pi
    an = alpha_n(u, s)
    if theta <= an + ANGLE_TOL:
        length = chord_l1(u, theta, s)
    elif theta > np.pi - an + ANGLE_TOL:
        length = chord_l3(u, theta, s)
    elif u <= s.max_range * np.cos(s.half_beamwidth):
        length = chord_l2(u, theta, s)
    else:
        length = chord_l4(u, theta, s)
    return float(max(length, 0.0))


def clip_chord(theta, r, s):
    """
    Exact length of L(theta, r) inside the sector for any line, by clipping the line
    parameter against the two cone half-planes and the range disk.

    Args:
        theta (float or np.ndarray): generating angles
        r (float or np.ndarray): generating distances
        s (SectorGeometry): ego sector

    Returns:
        (float or np.ndarray): chord lengths in meters
    """
    theta = np.asarray(theta, dtype=float)
    r = np.asarray(r, dtype=float)
    R, omega = s.max_range, s.half_beamwidth
    foot = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
    tangent = np.stack([-np.sin(theta), np.cos(theta)], axis=-1)

    half = np.sqrt(np.maximum(R ** 2 - r ** 2, 0.0))
    lo, hi = -half, half.copy()
    empty = r > R

    # inward normals of the left and right cone edges
    for normal in (np.array([np.cos(omega), np.sin(omega)]), np.array([-np.cos(omega), np.sin(omega)])):
        offset = foot @ normal
        rate = tangent @ normal
        with np.errstate(divide='ignore', invalid='ignore'):
            bound = -offset / rate
        lo = np.where(rate > 0, np.maximum(lo, bound), lo)
        hi = np.where(rate < 0, np.minimum(hi, bound), hi)
        empty |= (rate == 0) & (offset < 0)

    length = np.where(empty, 0.0, np.maximum(hi - lo, 0.0))
    return float(length) if length.ndim == 0 else length
