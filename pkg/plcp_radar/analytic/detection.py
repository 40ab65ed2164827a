"""
Detection success probability of the ego radar under Poisson line Cox process interference.

The target at range R_target succeeds when
    SINR = gamma sigma_c P R^{-2 alpha} / (N + sum_w 4 pi gamma P h_w |w|^{-alpha}) > beta,
with sigma_c ~ Exp(mean sigma_bar) and unit-mean exponential fading h_w. Conditioning on the
interference and using the Laplace functional of the line process gives
    p_D = e(R) exp(-lambda_L int_theta int_r 1 - exp(-lambda_P g(theta, r)) dr dtheta),
    g(theta, r) = int beta' / (|w|^alpha + beta') dv   over the mutual-alignment interval,
where beta' = 4 pi beta / (sigma_bar R^{-2 alpha}) and e(R) = exp(-beta N / (sigma_bar gamma P R^{-2 alpha})).
Interferers are restricted to the field disk |w| <= R_max of the QuadratureSpec.
"""
import numpy as np

from plcp_radar.analytic.line_length import DEFAULT_CONVENTION, expected_interferers
from plcp_radar.analytic.params import QuadratureSpec, noise_power
from plcp_radar.analytic.quadrature import integrate
from plcp_radar.geometry.interference import check_half_beamwidth, foot_interval
from plcp_radar.geometry.lines import GeneratingPoint, intersection_frame, is_parallel
from plcp_radar.utils import logger

BETA_PRIME_CONVENTIONS = ('two-way', 'one-way')


def beta_prime(p, r_target, convention='two-way'):
    """
    Args:
        p (RadarParams): link parameters
        r_target (float): target range in meters
        convention (str): 'two-way' uses R^{-2 alpha}; 'one-way' uses R^{-alpha} and only exists
            as a negative control for the cross-engine validation

    Returns:
        (float): 4 pi beta / (sigma_bar R^{-k alpha})
    """
    if convention not in BETA_PRIME_CONVENTIONS:
        raise ValueError('beta prime convention must be one of %s, got %s' % (BETA_PRIME_CONVENTIONS, convention))
    exponent = 2 * p.alpha if convention == 'two-way' else p.alpha
    return 4 * np.pi * p.beta * r_target ** exponent / p.sigma_bar


def noise_limited_probability(p, r_target):
    """ e(R), the success probability without interference """
    return float(np.exp(-p.beta * noise_power(p) * r_target ** (2 * p.alpha) / (p.sigma_bar * p.gamma * p.power)))


def theta_pieces(omega):
    """
    Intervals of generating angles whose streets carry a non-empty mutual-alignment interval,
    split at the branch changes
    """
    return [(0.0, omega), (omega, 2 * omega),
            (np.pi - 2 * omega, np.pi - omega), (np.pi - omega, np.pi),
            (np.pi, np.pi + omega), (2 * np.pi - omega, 2 * np.pi)]


def field_segments(theta, r, omega, outer, inner=0.0):
    """
    Mutual-alignment interval of street (theta, r) as foot offsets x, clipped to the annulus
    inner <= hypot(x, r) <= outer

    Returns:
        (list): list of (x_lower, x_upper) pairs
    """
    if r >= outer:
        return []
    frame = intersection_frame(GeneratingPoint(theta, r))
    if is_parallel(frame):
        return []
    interval = foot_interval(frame, omega)
    if interval is None:
        return []
    reach = np.sqrt(outer ** 2 - r ** 2)
    lo, hi = max(interval[0], -reach), min(interval[1], reach)
    if not hi > lo:
        return []
    if inner <= r:
        return [(lo, hi)]
    hole = np.sqrt(inner ** 2 - r ** 2)
    segments = [(lo, min(hi, -hole)), (max(lo, hole), hi)]
    return [(a, b) for a, b in segments if b > a]


def _arctan_difference(a, b, c):
    """ arctan(b / c) - arctan(a / c) for c > 0 """
    return np.arctan2(c * (b - a), c * c + a * b)


def per_line_load(segments, r, bp, alpha, q):
    """
    g = sum over segments of int beta' / ((x^2 + r^2)^{alpha/2} + beta') dx
    """
    total = 0.0
    if alpha == 2:
        c = np.sqrt(r * r + bp)
        for a, b in segments:
            total += bp / c * _arctan_difference(a, b, c)
        return total
    for a, b in segments:
        total += integrate(lambda x: bp / ((x * x + r * r) ** (alpha / 2) + bp), a, b, q, label='per-line load')
    return total


def laplace_exponent(p, net, s, r_target, q, field_radius=None, beta_prime_convention='two-way'):
    """
    lambda_L int int 1 - exp(-lambda_P g) dr dtheta over the streets other than the ego street

    Args:
        field_radius (float): radius of the interference field, defaults to q.field_radius(s)

    Returns:
        (float): non-negative exponent
    """
    lam = net.interferer_intensity
    if net.lambda_l == 0 or lam == 0:
        return 0.0
    omega = s.half_beamwidth
    check_half_beamwidth(omega)
    outer = q.field_radius(s) if field_radius is None else field_radius
    bp = beta_prime(p, r_target, beta_prime_convention)

    def over_r(theta):
        integrand = lambda r: -np.expm1(-lam * per_line_load(field_segments(theta, r, omega, outer), r, bp,
                                                             p.alpha, q))
        return integrate(integrand, 0.0, outer, q, points=[outer * np.sin(omega)], label='r-integral')

    total = sum(integrate(over_r, a, b, q, label='theta-integral') for a, b in theta_pieces(omega))
    return net.lambda_l * total


def same_street_exponent(p, net, r_target, q, field_radius):
    """
    lambda_P int_0^{R_max} beta' / (v^alpha + beta') dv, vehicles ahead of the ego on its own street
    """
    lam = net.interferer_intensity
    if lam == 0:
        return 0.0
    bp = beta_prime(p, r_target)
    if p.alpha == 2:
        return lam * np.sqrt(bp) * np.arctan(field_radius / np.sqrt(bp))
    return lam * integrate(lambda v: bp / (v ** p.alpha + bp), 0.0, field_radius, q, label='same-street load')


def detection_probability(p, net, s, r_target=None, q=QuadratureSpec(), field_radius=None,
                          beta_prime_convention='two-way'):
    """
    Args:
        p (RadarParams): link parameters
        net (NetworkParams): intensities and interferer model
        s (SectorGeometry): ego sector
        r_target (float): target range in meters, <= s.max_range, defaults to s.max_range
        q (QuadratureSpec): quadrature tolerances and field radius
        field_radius (float): overrides q.field_radius(s)
        beta_prime_convention (str): see beta_prime

    Returns:
        (float): detection success probability in [0, 1]
    """
    r_target = s.max_range if r_target is None else r_target
    if not 0 < r_target <= s.max_range:
        raise ValueError('target range must lie in (0, %s] m, got %s m' % (s.max_range, r_target))
    outer = q.field_radius(s) if field_radius is None else field_radius
    exponent = laplace_exponent(p, net, s, r_target, q, field_radius=outer,
                                beta_prime_convention=beta_prime_convention)
    if net.same_street:
        exponent += same_street_exponent(p, net, r_target, q, outer)
    return float(np.clip(noise_limited_probability(p, r_target) * np.exp(-exponent), 0.0, 1.0))


def n_detections_lower_bound(p, net, s, q=QuadratureSpec(), convention=DEFAULT_CONVENTION, **kwargs):
    """
    n_D >= n(R) p_D(R), the expected number of vehicles in the sector times the success probability at range R
    """
    n_r = expected_interferers(net, s, q, convention=convention)
    if n_r == 0:
        return 0.0
    return n_r * detection_probability(p, net, s, s.max_range, q, **kwargs)


def truncation_sensitivity(p, net, s, r_target=None, q=QuadratureSpec()):
    """
    Change of p_D when the interference field radius is doubled. With alpha = 2 the aggregate
    interference grows logarithmically with the field radius, so this is reported, not bounded.

    Returns:
        (float): p_D(R_max) - p_D(2 R_max), >= 0 up to quadrature error
    """
    outer = q.field_radius(s)
    p_near = detection_probability(p, net, s, r_target, q, field_radius=outer)
    p_far = detection_probability(p, net, s, r_target, q, field_radius=2 * outer)
    delta = p_near - p_far
    if abs(delta) > max(q.epsabs, q.epsrel * p_near):
        logger.warn('p_D changes by %.3g when the field radius is doubled from %g m' % (delta, outer))
    return delta


def mean_interference_power(p, net, s, q=QuadratureSpec(), min_distance=1.0, field_radius=None):
    """
    First moment of the aggregate interference at the ego radar, from mutually aligned vehicles in the
    annulus min_distance <= |w| <= R_max. The near-field exclusion keeps the moment finite for alpha >= 2.

    Returns:
        (float): expected interference power in W
    """
    if not min_distance > 0:
        raise ValueError('min_distance must be positive, got %s m' % min_distance)
    lam = net.interferer_intensity
    if lam == 0:
        return 0.0
    omega = s.half_beamwidth
    check_half_beamwidth(omega)
    outer = q.field_radius(s) if field_radius is None else field_radius
    scale = 4 * np.pi * p.gamma * p.power
    alpha = p.alpha

    def moment(segments, r):
        if alpha == 2:
            return sum(_arctan_difference(a, b, r) / r for a, b in segments)
        return sum(integrate(lambda x: (x * x + r * r) ** (-alpha / 2), a, b, q, label='path loss')
                   for a, b in segments)

    total = 0.0
    if net.lambda_l > 0:
        def over_r(theta):
            integrand = lambda r: moment(field_segments(theta, r, omega, outer, inner=min_distance), r)
            return integrate(integrand, 0.0, outer, q, points=[min_distance, outer * np.sin(omega)],
                             label='r-integral')
        total += net.lambda_l * lam * sum(integrate(over_r, a, b, q, label='theta-integral')
                                          for a, b in theta_pieces(omega))
    if net.same_street:
        total += lam * integrate(lambda v: v ** (-alpha), min_distance, outer, q, label='same-street moment')
    return scale * total
