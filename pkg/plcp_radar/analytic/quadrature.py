import warnings

import numpy as np
from scipy.integrate import quad, IntegrationWarning

from plcp_radar.utils import logger


class QuadratureError(RuntimeError):
    """
    Raised when an adaptive quadrature does not reach its tolerance within the subdivision limit

    Args:
        message (str): what was integrated
        partial_value (float): value at the point of failure
        achieved_error (float): error estimate at the point of failure
    """
    def __init__(self, message, partial_value=None, achieved_error=None):
        super(QuadratureError, self).__init__(
            '%s (partial value %s, achieved error %s)' % (message, partial_value, achieved_error))
        self.partial_value = partial_value
        self.achieved_error = achieved_error


def integrate(func, lower, upper, spec, points=None, label='integral'):
    """
    scipy's adaptive Gauss-Kronrod quadrature with the tolerances of a QuadratureSpec.
    Nested calls propagate the innermost failure.

    Args:
        func (callable): scalar integrand
        lower (float): lower limit
        upper (float): upper limit, finite
        spec (QuadratureSpec): tolerances and subdivision limit
        points (list): interior break points of the integrand
        label (str): name used in messages

    Returns:
        (float): value of the integral
    """
    if not upper > lower:
        return 0.0
    if points is not None:
        points = sorted(set(float(p) for p in points if lower < p < upper)) or None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', IntegrationWarning)
        value, abserr = quad(func, lower, upper, epsabs=spec.epsabs, epsrel=spec.epsrel,
                             limit=spec.limit, points=points)
    if caught:
        budget = max(spec.epsabs, spec.epsrel * abs(value))
        # scipy also warns on roundoff once the target is reached
        if not np.isfinite(value) or abserr > 10 * budget:
            raise QuadratureError('%s over [%s, %s] did not converge: %s' % (label, lower, upper, caught[0].message),
                                  partial_value=value, achieved_error=abserr)
        logger.debug('%s over [%s, %s] accepted with error %s' % (label, lower, upper, abserr))
    return value


def integrate_pieces(func, breaks, spec, label='integral'):
    """
    Sum of integrals over consecutive intervals [breaks[i], breaks[i+1]]
    """
    return sum(integrate(func, a, b, spec, label=label) for a, b in zip(breaks[:-1], breaks[1:]))
