"""
Expected total length of street inside the ego sector, and the expected number of vehicles there.

Two conventions are available:
    'paper'    integrates the four chord branches over (u, theta) in [0, R] x [0, pi] and scales by
               2 pi lambda_L R / (pi R), following the published chord formula.
    'campbell' integrates the exact chord of every line over the generating measure
               lambda_L dr dtheta, theta in [0, 2pi), r in (0, R). It has the closed form pi lambda_L Omega_B R^2,
               which is what avg_line_length returns; integrated_line_length evaluates the integral itself.
The Monte Carlo chord statistics agree with 'campbell', which is the default.

Both integrals do not depend on the intensities, so they are computed once per (sector, tolerances).
"""
from functools import lru_cache

import numpy as np

from plcp_radar.analytic.quadrature import integrate, integrate_pieces
from plcp_radar.geometry.sector import alpha_n, chord_l1, chord_l2, chord_l3, chord_l4, clip_chord, sector_area

CONVENTIONS = ('campbell', 'paper')
DEFAULT_CONVENTION = 'campbell'


@lru_cache(maxsize=256)
def _branch_integral(s, q):
    R, omega = s.max_range, s.half_beamwidth
    u_corner = R * np.cos(omega)

    def outer(branch, lower_fn, upper_fn):
        def inner(u):
            return integrate(lambda theta: branch(u, theta, s), lower_fn(u), upper_fn(u), q, label='chord')
        return inner

    an = lambda u: float(alpha_n(u, s))
    i1 = integrate(outer(chord_l1, lambda u: 0.0, an), 0.0, R, q, points=[u_corner], label='l1')
    i2 = integrate(outer(chord_l2, an, lambda u: np.pi - an(u)), 0.0, u_corner, q, label='l2')
    i3 = integrate(outer(chord_l3, lambda u: np.pi - an(u), lambda u: np.pi), 0.0, R, q,
                   points=[u_corner], label='l3')
    i4 = integrate(outer(chord_l4, an, lambda u: np.pi - an(u)), u_corner, R, q, label='l4')
    return i1 + i2 + i3 + i4


def _chord_kinks(theta, s):
    """ distances at which the line with normal angle theta passes a sector corner """
    R, omega = s.max_range, s.half_beamwidth
    return [R * np.sin(theta - omega), R * np.sin(theta + omega)]


@lru_cache(maxsize=256)
def _campbell_integral(s, q):
    R, omega = s.max_range, s.half_beamwidth
    inner = lambda theta: integrate(lambda r: clip_chord(theta, r, s), 0.0, R, q, points=_chord_kinks(theta, s),
                                    label='chord')
    breaks = sorted(set(np.concatenate([np.linspace(0.0, 2 * np.pi, 5),
                                        [np.pi / 2 - omega, np.pi / 2 + omega, 3 * np.pi / 2 - omega,
                                         3 * np.pi / 2 + omega, 2 * np.pi - omega, omega, np.pi - omega,
                                         np.pi + omega]])))
    return integrate_pieces(inner, breaks, q, label='campbell')


def avg_line_length(net, s, q, convention=DEFAULT_CONVENTION):
    """
    Args:
        net (NetworkParams): intensities
        s (SectorGeometry): ego sector
        q (QuadratureSpec): quadrature tolerances, used by the 'paper' convention
        convention (str): 'campbell' or 'paper'

    Returns:
        (float): expected total street length inside the sector in meters
    """
    if convention not in CONVENTIONS:
        raise ValueError('convention must be one of %s, got %s' % (CONVENTIONS, convention))
    if net.lambda_l == 0:
        return 0.0
    if convention == 'paper':
        return 2 * net.lambda_l * _branch_integral(s, q)
    return campbell_line_length(net, s)


def campbell_line_length(net, s):
    """ closed form of the 'campbell' convention """
    return np.pi * net.lambda_l * sector_area(s)


def integrated_line_length(net, s, q):
    """ the 'campbell' convention by quadrature of the exact chord over the generating measure """
    if net.lambda_l == 0:
        return 0.0
    return net.lambda_l * _campbell_integral(s, q)


def line_length_conventions(net, s, q):
    return dict((c, avg_line_length(net, s, q, convention=c)) for c in CONVENTIONS)


def expected_interferers(net, s, q, convention=DEFAULT_CONVENTION):
    """
    Expected number of vehicles of the other streets inside the sector, n(R) = lambda_P l_avg
    """
    if net.lambda_p == 0:
        return 0.0
    return net.lambda_p * avg_line_length(net, s, q, convention=convention)
