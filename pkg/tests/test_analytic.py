import unittest
import numpy as np
from scipy.integrate import quad

from plcp_radar.analytic.params import RadarParams, NetworkParams, QuadratureSpec, noise_power, db_to_linear, \
    linear_to_db
from plcp_radar.analytic.quadrature import integrate, QuadratureError
from plcp_radar.analytic.line_length import avg_line_length, campbell_line_length, integrated_line_length, \
    line_length_conventions, expected_interferers
from plcp_radar.analytic.detection import beta_prime, noise_limited_probability, detection_probability, \
    n_detections_lower_bound, truncation_sensitivity, mean_interference_power, per_line_load, field_segments
from plcp_radar.geometry.sector import SectorGeometry


class TestParams(unittest.TestCase):

    def setUp(self):
        self.radar = RadarParams.from_db()

    def testReferenceLink(self):
        self.assertAlmostEqual(self.radar.power, 0.01)
        self.assertAlmostEqual(self.radar.sigma_bar, 1000.0)
        self.assertAlmostEqual(self.radar.beta, 10.0)
        self.assertLess(abs(self.radar.gamma / 7.74e-7 - 1), 1e-2)
        self.assertLess(abs(noise_power(self.radar) / 9.95e-17 - 1), 1e-2)

    def testDbRoundTrip(self):
        back = RadarParams.from_db(**self.radar.to_db())
        for a, b in zip(self.radar, back):
            self.assertLess(abs(a - b), 1e-12 * abs(a))
        self.assertAlmostEqual(float(linear_to_db(db_to_linear(-174.0))), -174.0, places=10)

    def testValidation(self):
        with self.assertRaises(ValueError):
            RadarParams.from_db(alpha=0.5)
        with self.assertRaises(ValueError):
            NetworkParams(-0.1, 0.01)
        with self.assertRaises(ValueError):
            NetworkParams(0.1, 0.01, orientation='sideways')
        with self.assertRaises(ValueError):
            QuadratureSpec(epsrel=0.0)
        with self.assertRaises(ValueError):
            QuadratureSpec(r_max=10.0).field_radius(SectorGeometry(0.1, 15.0))

    def testInterfererIntensity(self):
        self.assertEqual(NetworkParams(0.01, 0.1).interferer_intensity, 0.1)
        self.assertEqual(NetworkParams(0.01, 0.1, orientation='random-two-way').interferer_intensity, 0.05)
        self.assertEqual(QuadratureSpec().field_radius(SectorGeometry(0.1, 15.0)), 150.0)


class TestQuadrature(unittest.TestCase):

    def testIntegrate(self):
        q = QuadratureSpec()
        self.assertAlmostEqual(integrate(np.sin, 0.0, np.pi, q), 2.0, places=6)
        self.assertEqual(integrate(np.sin, 1.0, 1.0, q), 0.0)
        self.assertEqual(integrate(np.sin, 2.0, 1.0, q), 0.0)

    def testNonConvergenceRaises(self):
        q = QuadratureSpec(epsrel=1e-12, epsabs=1e-14, limit=1)
        with self.assertRaises(QuadratureError) as context:
            integrate(lambda x: np.sin(1.0 / x), 1e-4, 1.0, q, label='oscillating')
        self.assertIsNotNone(context.exception.achieved_error)
        self.assertIn('oscillating', str(context.exception))


class TestLineLength(unittest.TestCase):

    def setUp(self):
        self.q = QuadratureSpec()
        self.net = NetworkParams(0.005, 0.01)

    def testCampbellClosedForm(self):
        for omega_deg, R in [(10.0, 15.0), (5.0, 10.0), (20.0, 30.0)]:
            s = SectorGeometry.from_degrees(omega_deg, R)
            l_avg = avg_line_length(self.net, s, self.q, convention='campbell')
            self.assertEqual(l_avg, campbell_line_length(self.net, s))
            self.assertAlmostEqual(l_avg, np.pi * 0.005 * np.deg2rad(omega_deg) * R ** 2, places=10)
            self.assertLess(abs(integrated_line_length(self.net, s, self.q) / l_avg - 1), 1e-3)
        self.assertEqual(integrated_line_length(NetworkParams(0.0, 0.01), s, self.q), 0.0)

    def testLinearInLineIntensity(self):
        s = SectorGeometry.from_degrees(10.0, 15.0)
        double = self.net.replace(lambda_l=2 * self.net.lambda_l)
        for convention in ('campbell', 'paper'):
            single_length = avg_line_length(self.net, s, self.q, convention=convention)
            double_length = avg_line_length(double, s, self.q, convention=convention)
            self.assertLess(abs(double_length / (2 * single_length) - 1), 1e-12, convention)

    def testConventionsDiffer(self):
        s = SectorGeometry.from_degrees(10.0, 15.0)
        lengths = line_length_conventions(self.net, s, self.q)
        self.assertEqual(set(lengths), {'paper', 'campbell'})
        self.assertGreater(lengths['paper'] / lengths['campbell'], 1.5)

    def testDegenerate(self):
        s = SectorGeometry.from_degrees(10.0, 15.0)
        self.assertEqual(avg_line_length(NetworkParams(0.0, 0.01), s, self.q), 0.0)
        self.assertEqual(expected_interferers(NetworkParams(0.005, 0.0), s, self.q), 0.0)
        with self.assertRaises(ValueError):
            avg_line_length(self.net, s, self.q, convention='crofton')

    def testExpectedInterferers(self):
        s = SectorGeometry.from_degrees(10.0, 15.0)
        self.assertAlmostEqual(expected_interferers(self.net, s, self.q),
                               0.01 * avg_line_length(self.net, s, self.q), places=10)


class TestDetection(unittest.TestCase):

    def setUp(self):
        self.radar = RadarParams.from_db()
        self.net = NetworkParams(0.005, 0.01)
        self.s = SectorGeometry.from_degrees(10.0, 15.0)
        self.q = QuadratureSpec()

    def testBetaPrime(self):
        self.assertLess(abs(beta_prime(self.radar, 15.0) / 6361.7 - 1), 1e-4)
        self.assertAlmostEqual(beta_prime(self.radar, 15.0, 'one-way'), 4 * np.pi * 10 * 15.0 ** 2 / 1000)
        with self.assertRaises(ValueError):
            beta_prime(self.radar, 15.0, 'three-way')

    def testNoiseLimited(self):
        e_r = noise_limited_probability(self.radar, 15.0)
        self.assertLess(abs((1 - e_r) / 6.5e-6 - 1), 2e-2)

    def testNoLinesGivesNoiseLimited(self):
        e_r = noise_limited_probability(self.radar, 15.0)
        self.assertAlmostEqual(detection_probability(self.radar, NetworkParams(0.0, 0.1), self.s), e_r, places=10)
        self.assertAlmostEqual(detection_probability(self.radar, NetworkParams(0.05, 0.0), self.s), e_r, places=10)

    def testProbabilityRange(self):
        p_d = detection_probability(self.radar, self.net, self.s, q=self.q)
        self.assertGreater(p_d, 0.0)
        self.assertLess(p_d, 1.0)

    def testHalvedTolerancesAgree(self):
        for net, s in [(self.net, self.s), (NetworkParams(0.05, 0.1), SectorGeometry.from_degrees(5.0, 10.0))]:
            coarse = detection_probability(self.radar, net, s, q=self.q)
            fine = detection_probability(self.radar, net, s, q=self.q.halved())
            self.assertLess(abs(coarse - fine), max(self.q.epsabs, self.q.epsrel * abs(fine)))
        self.assertEqual(self.q.halved().epsrel, self.q.epsrel / 2)

    def testMonotoneInParameters(self):
        def p_d(radar=self.radar, net=self.net, s=self.s, r_target=None):
            return detection_probability(radar, net, s, r_target, self.q)

        curves = [
            [p_d(net=NetworkParams(l, 0.01)) for l in (0.005, 0.01, 0.05)],
            [p_d(net=NetworkParams(0.005, l)) for l in (0.01, 0.05, 0.1)],
            [p_d(s=SectorGeometry.from_degrees(o, 15.0)) for o in (5.0, 10.0, 20.0)],
            [p_d(radar=self.radar.replace(beta=float(db_to_linear(b)))) for b in (5.0, 10.0, 15.0)],
            [p_d(r_target=r) for r in (5.0, 10.0, 15.0)],
            [p_d(radar=RadarParams.from_db(n_d_dbm_hz=n)) for n in (-174.0, -140.0, -120.0)],
        ]
        for values in curves:
            self.assertTrue(np.all(np.diff(values) < 0), values)

    def testRangeIncreasesInterference(self):
        values = [detection_probability(self.radar, self.net, SectorGeometry.from_degrees(10.0, R))
                  for R in (5.0, 15.0, 30.0)]
        self.assertTrue(np.all(np.diff(values) < 0), values)

    def testOrientationAndSameStreet(self):
        facing = detection_probability(self.radar, self.net, self.s)
        two_way = detection_probability(self.radar, self.net._replace(orientation='random-two-way'), self.s)
        same_street = detection_probability(self.radar, self.net._replace(same_street=True), self.s)
        self.assertGreater(two_way, facing)
        self.assertLess(same_street, facing)

    def testCorruptedBetaPrimeIsOptimistic(self):
        net = NetworkParams(0.05, 0.1)
        s = SectorGeometry.from_degrees(5.0, 10.0)
        correct = detection_probability(self.radar, net, s)
        corrupted = detection_probability(self.radar, net, s, beta_prime_convention='one-way')
        self.assertGreater(corrupted - correct, 0.05)

    def testInvalidInputs(self):
        with self.assertRaises(ValueError):
            detection_probability(self.radar, self.net, SectorGeometry.from_degrees(50.0, 15.0))
        with self.assertRaises(ValueError):
            detection_probability(self.radar, self.net, self.s, r_target=20.0)

    def testClosedFormLoad(self):
        bp = beta_prime(self.radar, 15.0)
        segments = field_segments(0.3, 4.0, self.s.half_beamwidth, 150.0)
        self.assertTrue(segments)
        reference = sum(quad(lambda x: bp / (x * x + 16.0 + bp), a, b, epsabs=1e-12)[0] for a, b in segments)
        self.assertAlmostEqual(per_line_load(segments, 4.0, bp, 2.0, self.q), reference, places=8)
        # other path-loss exponents go through quadrature
        load_3 = per_line_load(segments, 4.0, bp, 3.0, self.q)
        reference_3 = sum(quad(lambda x: bp / ((x * x + 16.0) ** 1.5 + bp), a, b)[0] for a, b in segments)
        self.assertLess(abs(load_3 / reference_3 - 1), 1e-4)

    def testFieldSegments(self):
        omega = self.s.half_beamwidth
        self.assertEqual(field_segments(0.3, 200.0, omega, 150.0), [])
        self.assertEqual(field_segments(np.pi / 2, 10.0, omega, 150.0), [])
        outer = field_segments(0.05, 0.5, omega, 150.0)
        annulus = field_segments(0.05, 0.5, omega, 150.0, inner=1.0)
        for a, b in annulus:
            self.assertTrue(all(np.hypot(x, 0.5) >= 1.0 - 1e-12 for x in (a, b)))
        self.assertLessEqual(sum(b - a for a, b in annulus), sum(b - a for a, b in outer))

    def testLowerBound(self):
        n_d = n_detections_lower_bound(self.radar, self.net, self.s, self.q)
        n_r = expected_interferers(self.net, self.s, self.q)
        self.assertAlmostEqual(n_d, n_r * detection_probability(self.radar, self.net, self.s), places=10)
        self.assertEqual(n_detections_lower_bound(self.radar, NetworkParams(0.0, 0.01), self.s, self.q), 0.0)

    def testTruncationSensitivity(self):
        delta = truncation_sensitivity(self.radar, NetworkParams(0.05, 0.05), self.s, q=self.q)
        self.assertGreaterEqual(delta, -1e-6)

    def testMeanInterference(self):
        net = NetworkParams(0.05, 0.05)
        self.assertEqual(mean_interference_power(self.radar, NetworkParams(0.0, 0.05), self.s), 0.0)
        near = mean_interference_power(self.radar, net, self.s, min_distance=0.5)
        far = mean_interference_power(self.radar, net, self.s, min_distance=2.0)
        self.assertGreater(near, far)
        self.assertGreater(far, 0.0)
        with self.assertRaises(ValueError):
            mean_interference_power(self.radar, net, self.s, min_distance=0.0)
