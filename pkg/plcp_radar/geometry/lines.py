import numpy as np
from collections import namedtuple

TWO_PI = 2 * np.pi
PARALLEL_TOL = 1e-12


class GeneratingPoint(namedtuple('GeneratingPoint', ['theta', 'r'])):
    """
    A street of the Poisson line process, represented by its generating point.
    The street is the line x cos(theta) + y sin(theta) = r. The ego street is the
    y-axis, i.e. the generating point (0, 0), and the ego boresight is +y.

    Args:
        theta (float): angle of the street normal in radians, wrapped into [0, 2pi)
        r (float): perpendicular distance of the street from the origin in meters, >= 0
    """
    __slots__ = ()

    def __new__(cls, theta, r):
        if r < 0:
            raise ValueError('r must be non-negative, got %s m' % r)
        theta = float(theta) % TWO_PI
        if theta >= TWO_PI:
            theta = 0.0
        return super(GeneratingPoint, cls).__new__(cls, theta, float(r))

    @property
    def normal(self):
        return np.array([np.cos(self.theta), np.sin(self.theta)])

    @property
    def foot(self):
        """ foot of the perpendicular from the origin onto the street """
        return self.r * self.normal

    @property
    def tangent(self):
        return np.array([-np.sin(self.theta), np.cos(self.theta)])

    def contains(self, point, tol=1e-9):
        point = np.asarray(point, dtype=float)
        return abs(point[..., 0] * np.cos(self.theta) + point[..., 1] * np.sin(self.theta) - self.r) \
            <= tol * max(1.0, self.r)


class Parallel(object):
    """
    Marker for a street parallel to the ego street, it has no intersection point
    """
    def __repr__(self):
        return 'PARALLEL'

    def __reduce__(self):
        return 'PARALLEL'

PARALLEL = Parallel()


def is_parallel(frame):
    return frame is PARALLEL


class IntersectionFrame(namedtuple('IntersectionFrame', ['u', 'theta'])):
    """
    Coordinates of a street relative to its intersection with the ego street.
    Offsets v are measured from the intersection point (0, u) along `direction`,
    the unit vector of the street whose projection on the ego boresight is non-negative.

    Args:
        u (float): signed distance from the ego to the intersection, u = r / sin(theta)
        theta (float): intersection angle in radians, equal to the generating angle
    """
    __slots__ = ()

    @property
    def r(self):
        return abs(self.u * np.sin(self.theta))

    @property
    def direction(self):
        sign = 1.0 if np.cos(self.theta) >= 0 else -1.0
        return sign * np.array([-np.sin(self.theta), np.cos(self.theta)])

    @property
    def foot_parameter(self):
        """ offset v of the perpendicular foot, the point of the street closest to the ego """
        return -self.u * abs(np.cos(self.theta))

    def point_at(self, v):
        """
        Args:
            v (float or np.ndarray): offsets along the street from the intersection

        Returns:
            (np.ndarray): planar points of shape (..., 2)
        """
        v = np.asarray(v, dtype=float)
        d = self.direction
        return np.stack([v * d[0], self.u + v * d[1]], axis=-1)

    def foot_offset(self, v):
        """ signed offset from the perpendicular foot, the distance to the ego is hypot(foot_offset, r) """
        return np.asarray(v, dtype=float) + self.u * abs(np.cos(self.theta))


def intersection_frame(g):
    """
    Args:
        g (GeneratingPoint): street

    Returns:
        (IntersectionFrame or Parallel): frame of the intersection with the ego street,
            PARALLEL when |sin(theta)| < 1e-12
    """
    s = np.sin(g.theta)
    if abs(s) < PARALLEL_TOL:
        return PARALLEL
    return IntersectionFrame(u=g.r / s, theta=g.theta)


def interferer_distance(f, v):
    """
    Distance from the ego radar to a vehicle at offset v on the street of frame f

    Args:
        f (IntersectionFrame): frame of the street
        v (float or np.ndarray): offsets from the intersection along f.direction

    Returns:
        (float or np.ndarray): sqrt((u + v|cos(theta)|)^2 + (v sin(theta))^2)
    """
    v = np.asarray(v, dtype=float)
    w = np.hypot(f.u + v * abs(np.cos(f.theta)), v * np.sin(f.theta))
    return w if w.ndim else float(w)


def facing_boresight(offsets, theta):
    """
    Boresights of vehicles pointing along their street towards the perpendicular foot.
    Vehicles exactly at the foot face along +tangent.

    Args:
        offsets (np.ndarray): signed offsets s of the vehicles from the foot, position = foot + s * tangent
        theta (np.ndarray): generating angle of each vehicle's street

    Returns:
        (np.ndarray): unit boresights of shape (n, 2)
    """
    offsets = np.asarray(offsets, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sign = np.where(offsets > 0, -1.0, 1.0)
    return np.stack([-sign * np.sin(theta), sign * np.cos(theta)], axis=-1)


def street_points(theta, r, offsets):
    """
    Args:
        theta (np.ndarray): generating angles
        r (np.ndarray): generating distances
        offsets (np.ndarray): signed offsets from the perpendicular foot

    Returns:
        (np.ndarray): planar points foot + offset * tangent, shape (n, 2)
    """
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([r * c - offsets * s, r * s + offsets * c], axis=-1)
