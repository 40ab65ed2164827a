import numpy as np
from collections import namedtuple

SPEED_OF_LIGHT = 299792458.0
ORIENTATIONS = ('facing', 'random-two-way')


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


def dbm_to_watts(dbm):
    return db_to_linear(dbm) * 1e-3


def watts_to_dbm(watts):
    return linear_to_db(np.asarray(watts, dtype=float) * 1e3)


class RadarParams(namedtuple('RadarParams', ['power', 'alpha', 'sigma_bar', 'g_t', 'g_r', 'f_c',
                                             'n_d', 'bandwidth', 'beta'])):
    """
    Radar link parameters, all in linear units.

    Args:
        power (float): transmit power P in W
        alpha (float): path-loss exponent, >= 1
        sigma_bar (float): mean radar cross-section of the target in m^2
        g_t (float): transmit antenna gain
        g_r (float): receive antenna gain
        f_c (float): carrier frequency in Hz
        n_d (float): noise power spectral density in W/Hz, >= 0
        bandwidth (float): receiver bandwidth W in Hz, >= 0
        beta (float): SINR detection threshold, > 0
    """
    __slots__ = ()

    def __new__(cls, power, alpha, sigma_bar, g_t, g_r, f_c, n_d, bandwidth, beta):
        for name, value in (('power', power), ('sigma_bar', sigma_bar), ('g_t', g_t), ('g_r', g_r),
                            ('f_c', f_c), ('beta', beta)):
            if not value > 0:
                raise ValueError('%s must be positive, got %s' % (name, value))
        if not alpha >= 1:
            raise ValueError('path-loss exponent must be >= 1, got %s' % alpha)
        if n_d < 0 or bandwidth < 0:
            raise ValueError('noise density and bandwidth must be non-negative, got %s W/Hz and %s Hz'
                             % (n_d, bandwidth))
        return super(RadarParams, cls).__new__(cls, *map(float, (power, alpha, sigma_bar, g_t, g_r, f_c,
                                                                  n_d, bandwidth, beta)))

    @classmethod
    def from_db(cls, p_dbm=10.0, alpha=2.0, sigma_dbsm=30.0, g_t_dbi=10.0, g_r_dbi=10.0, f_c_hz=76.5e9,
                n_d_dbm_hz=-174.0, bandwidth_hz=25e3, beta_db=10.0):
        """ Builds the parameters from the interface units, defaults are the reference automotive link """
        return cls(power=float(dbm_to_watts(p_dbm)), alpha=alpha, sigma_bar=float(db_to_linear(sigma_dbsm)),
                   g_t=float(db_to_linear(g_t_dbi)), g_r=float(db_to_linear(g_r_dbi)), f_c=f_c_hz,
                   n_d=float(dbm_to_watts(n_d_dbm_hz)) if np.isfinite(n_d_dbm_hz) else 0.0,
                   bandwidth=bandwidth_hz, beta=float(db_to_linear(beta_db)))

    def to_db(self):
        """ Inverse of from_db """
        return dict(p_dbm=float(watts_to_dbm(self.power)), alpha=self.alpha,
                    sigma_dbsm=float(linear_to_db(self.sigma_bar)), g_t_dbi=float(linear_to_db(self.g_t)),
                    g_r_dbi=float(linear_to_db(self.g_r)), f_c_hz=self.f_c,
                    n_d_dbm_hz=float(watts_to_dbm(self.n_d)) if self.n_d > 0 else -np.inf,
                    bandwidth_hz=self.bandwidth, beta_db=float(linear_to_db(self.beta)))

    def replace(self, **kwargs):
        return self._replace(**kwargs)

    @property
    def effective_aperture(self):
        """ A_e = G_r c^2 / (4 pi f_c^2) """
        return self.g_r * SPEED_OF_LIGHT ** 2 / (4 * np.pi * self.f_c ** 2)

    @property
    def gamma(self):
        """ gamma = G_t A_e / (4 pi)^2 """
        return self.g_t * self.effective_aperture / (4 * np.pi) ** 2


def noise_power(p):
    return p.n_d * p.bandwidth


class NetworkParams(namedtuple('NetworkParams', ['lambda_l', 'lambda_p', 'orientation', 'same_street'])):
    """
    Street and vehicle intensities of the Poisson line Cox process.

    Args:
        lambda_l (float): density of generating points per unit (rad x m)
        lambda_p (float): vehicles per meter of street
        orientation (str): 'facing' (boresights towards the perpendicular foot) or
            'random-two-way' (each boresight flipped with probability 1/2)
        same_street (bool): add interferers on the ego street
    """
    __slots__ = ()

    def __new__(cls, lambda_l, lambda_p, orientation='facing', same_street=False):
        if lambda_l < 0 or lambda_p < 0:
            raise ValueError('intensities must be non-negative, got lambda_l=%s m^-2, lambda_p=%s m^-1'
                             % (lambda_l, lambda_p))
        if orientation not in ORIENTATIONS:
            raise ValueError('orientation must be one of %s, got %s' % (ORIENTATIONS, orientation))
        return super(NetworkParams, cls).__new__(cls, float(lambda_l), float(lambda_p), orientation,
                                                 bool(same_street))

    def replace(self, **kwargs):
        return self._replace(**kwargs)

    @property
    def interferer_intensity(self):
        """ intensity of vehicles whose boresight can face the ego """
        return self.lambda_p / 2 if self.orientation == 'random-two-way' else self.lambda_p


class QuadratureSpec(namedtuple('QuadratureSpec', ['epsrel', 'epsabs', 'r_max', 'limit'])):
    """
    Args:
        epsrel (float): relative tolerance of every nested quadrature
        epsabs (float): absolute tolerance of every nested quadrature
        r_max (float): radius of the interference field in meters, None for 10 R
        limit (int): maximum number of subintervals of the adaptive quadrature
    """
    __slots__ = ()

    def __new__(cls, epsrel=1e-4, epsabs=1e-8, r_max=None, limit=200):
        if not (epsrel > 0 and epsabs > 0):
            raise ValueError('quadrature tolerances must be positive, got epsrel=%s, epsabs=%s' % (epsrel, epsabs))
        if limit < 1:
            raise ValueError('quadrature subdivision limit must be >= 1, got %s' % limit)
        return super(QuadratureSpec, cls).__new__(cls, float(epsrel), float(epsabs), r_max, int(limit))

    def field_radius(self, s):
        r_max = 10 * s.max_range if self.r_max is None else self.r_max
        if not r_max > s.max_range:
            raise ValueError('interference field radius %s m must exceed the range %s m' % (r_max, s.max_range))
        return float(r_max)

    def halved(self):
        return self._replace(epsrel=self.epsrel / 2, epsabs=self.epsabs / 2)

    def replace(self, **kwargs):
        return self._replace(**kwargs)
