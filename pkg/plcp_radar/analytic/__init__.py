from plcp_radar.analytic.params import RadarParams, NetworkParams, QuadratureSpec, noise_power, \
    db_to_linear, linear_to_db, dbm_to_watts, watts_to_dbm
from plcp_radar.analytic.quadrature import QuadratureError
from plcp_radar.analytic.line_length import avg_line_length, expected_interferers, campbell_line_length, \
    integrated_line_length, line_length_conventions, CONVENTIONS, DEFAULT_CONVENTION
from plcp_radar.analytic.detection import beta_prime, noise_limited_probability, detection_probability, \
    n_detections_lower_bound, truncation_sensitivity, mean_interference_power
