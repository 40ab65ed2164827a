import unittest
import numpy as np

from plcp_radar.analytic.params import RadarParams, NetworkParams, QuadratureSpec
from plcp_radar.analytic.detection import noise_limited_probability, mean_interference_power
from plcp_radar.analytic.line_length import avg_line_length
from plcp_radar.geometry.lines import GeneratingPoint
from plcp_radar.geometry.sector import SectorGeometry
from plcp_radar.montecarlo.plcp_sampler import SimulationWindow, sample_realization
from plcp_radar.montecarlo.base import MonteCarloSampler
from plcp_radar.montecarlo.estimators import EstimateWithCI, DetectionTask, InterferenceTask, MonteCarloSpec, \
    estimate_pd, estimate_chord_stats, estimate_interference_power, predicate_interval_disagreements


class TestSampler(unittest.TestCase):

    def setUp(self):
        self.net = NetworkParams(0.05, 0.05)
        self.window = SimulationWindow(60.0)

    def testWindow(self):
        self.assertEqual(self.window.w_line, 120.0)
        self.assertEqual(SimulationWindow.for_sector(SectorGeometry(0.1, 15.0)).r_sim, 150.0)
        with self.assertRaises(ValueError):
            SimulationWindow(60.0, w_line=30.0)
        with self.assertRaises(ValueError):
            SimulationWindow(60.0, w_line=90.0)
        self.assertEqual(SimulationWindow(60.0, w_line=150.0).w_line, 150.0)
        with self.assertRaises(ValueError):
            SimulationWindow.for_sector(SectorGeometry(0.1, 15.0), r_sim=10.0)

    def testDeterminism(self):
        a = sample_realization(self.net, self.window, 42)
        b = sample_realization(self.net, self.window, 42)
        c = sample_realization(self.net, self.window, 43)
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x, y)
        self.assertFalse(a.n_vehicles == c.n_vehicles and np.array_equal(a.offsets, c.offsets))

    def testNoStreets(self):
        realization = sample_realization(NetworkParams(0.0, 0.05), self.window, 1)
        self.assertEqual(realization.n_streets, 0)
        self.assertEqual(realization.n_vehicles, 0)
        positions, boresights, fading = realization.all_vehicles()
        self.assertEqual(positions.shape, (0, 2))

    def testVehiclesOnTheirStreets(self):
        realization = sample_realization(self.net, self.window, 5)
        self.assertGreater(realization.n_vehicles, 0)
        positions, boresights = realization.positions(), realization.boresights()
        for k in range(realization.n_vehicles):
            street = realization.street_index[k]
            g = GeneratingPoint(realization.theta[street], realization.r[street])
            self.assertTrue(g.contains(positions[k], tol=1e-9))
            # facing the perpendicular foot
            self.assertGreaterEqual(np.dot(boresights[k], g.foot - positions[k]), -1e-9)
        np.testing.assert_allclose(np.linalg.norm(boresights, axis=-1), 1.0)

    def testSameStreetVehicles(self):
        realization = sample_realization(self.net._replace(same_street=True), self.window, 5)
        self.assertGreater(len(realization.ego_offsets), 0)
        ahead = realization.ego_offsets > 0
        np.testing.assert_array_equal(realization.ego_orientation[ahead], -1.0)
        positions, _, fading = realization.all_vehicles()
        self.assertEqual(len(positions), realization.n_vehicles + len(realization.ego_offsets))
        self.assertEqual(len(fading), len(positions))

    def testStreetCountMean(self):
        counts = [sample_realization(self.net, self.window, seed).n_streets for seed in range(300)]
        expected = 0.05 * 2 * np.pi * 60.0
        self.assertLess(abs(np.mean(counts) - expected), 5 * np.sqrt(expected / 300))

    def testPredicateMatchesIntervals(self):
        s = SectorGeometry.from_degrees(10.0, 15.0)
        compared = 0
        for seed in range(5):
            realization = sample_realization(self.net._replace(orientation='random-two-way'), self.window, seed)
            disagreements, n = predicate_interval_disagreements(realization, s)
            self.assertEqual(disagreements, 0)
            compared += n
        self.assertGreater(compared, 100)


class TestEstimators(unittest.TestCase):

    def setUp(self):
        self.radar = RadarParams.from_db()
        self.s = SectorGeometry.from_degrees(10.0, 15.0)

    def testEstimateWithCI(self):
        estimate = EstimateWithCI.from_samples([0.0, 1.0, 1.0, 0.0], confidence=0.99)
        self.assertEqual(estimate.mean, 0.5)
        self.assertAlmostEqual(estimate.std_err, np.std([0, 1, 1, 0], ddof=1) / 2)
        self.assertAlmostEqual(estimate.half_width, 2.5758293 * estimate.std_err, places=6)
        self.assertTrue(estimate.covers(0.2))
        self.assertFalse(estimate.covers(2.0))
        self.assertEqual(EstimateWithCI.from_samples([3.0]).std_err, 0.0)
        self.assertTrue(estimate.agrees_with(EstimateWithCI(0.6, 0.1, 100, 0.99)))

    def testSpec(self):
        spec = MonteCarloSpec(trials=10, seed=3)
        options = spec.options(self.s)
        self.assertEqual(options['window'].r_sim, 150.0)
        self.assertEqual(options['trials'], 10)
        with self.assertRaises(ValueError):
            MonteCarloSpec(trials=0)
        with self.assertRaises(ValueError):
            MonteCarloSpec(confidence=1.0)

    def testSeededReproducibility(self):
        net = NetworkParams(0.05, 0.05)
        a = estimate_pd(self.radar, net, self.s, trials=50, seed=9, n_partitions=3)
        b = estimate_pd(self.radar, net, self.s, trials=50, seed=9, n_partitions=3)
        self.assertEqual(a, b)
        self.assertEqual(a.trials, 50)

    def testSerialAndParallelAgree(self):
        task = DetectionTask(self.radar, NetworkParams(0.05, 0.05), self.s, 15.0, SimulationWindow(150.0))
        serial = MonteCarloSampler(task, n_partitions=3, parallel=False).obtain_samples(31, seed=4)
        parallel = MonteCarloSampler(task, n_partitions=3, parallel=True).obtain_samples(31, seed=4)
        self.assertEqual(serial.shape, (31, 1))
        np.testing.assert_array_equal(serial, parallel)

    def testNoiseLimitedCoverage(self):
        # raised noise floor, so that e(R) is near 1/2
        radar = RadarParams.from_db(n_d_dbm_hz=-124.0)
        e_r = noise_limited_probability(radar, 15.0)
        self.assertTrue(0.3 < e_r < 0.7)
        net = NetworkParams(0.0, 0.05)
        covered = 0
        for batch in range(100):
            estimate = estimate_pd(radar, net, self.s, trials=400, seed=1000 + batch, confidence=0.99)
            covered += int(estimate.covers(e_r))
        self.assertGreaterEqual(covered, 95)

    def testChordStatsSelectCampbell(self):
        q = QuadratureSpec()
        points = [(NetworkParams(0.005, 0.01), self.s),
                  (NetworkParams(0.01, 0.05), SectorGeometry.from_degrees(5.0, 10.0)),
                  (NetworkParams(0.05, 0.01), SectorGeometry.from_degrees(20.0, 30.0))]
        for seed, (net, s) in enumerate(points):
            length, count = estimate_chord_stats(net, s, trials=20000, seed=2 + seed,
                                                 window=SimulationWindow(s.max_range), confidence=0.999)
            campbell = avg_line_length(net, s, q, convention='campbell')
            paper = avg_line_length(net, s, q, convention='paper')
            self.assertTrue(length.covers(campbell), (s, length, campbell))
            self.assertFalse(length.covers(paper), (s, length, paper))
            self.assertLess(abs(count.mean - net.lambda_p * campbell), 5 * count.std_err + 1e-12)

    def testMoreTrialsAgree(self):
        net = NetworkParams(0.05, 0.05)
        estimate = estimate_pd(self.radar, net, self.s, trials=2000, seed=21)
        refined = estimate_pd(self.radar, net, self.s, trials=8000, seed=22)
        self.assertTrue(estimate.agrees_with(refined), (estimate, refined))
        self.assertLess(refined.std_err, estimate.std_err)
        length, _ = estimate_chord_stats(net, self.s, trials=2000, seed=23, window=SimulationWindow(15.0))
        refined_length, _ = estimate_chord_stats(net, self.s, trials=8000, seed=24, window=SimulationWindow(15.0))
        self.assertTrue(length.agrees_with(refined_length), (length, refined_length))

    def testInterferenceMonotoneInBeamwidth(self):
        net = NetworkParams(0.05, 0.05)
        window = SimulationWindow(150.0)
        outcomes = []
        for omega_deg in (5.0, 10.0, 20.0):
            task = InterferenceTask(self.radar, net, SectorGeometry.from_degrees(omega_deg, 15.0), window)
            outcomes.append(task.run_trials(40, np.random.SeedSequence(8))[:, 0])
        self.assertTrue(np.all(outcomes[1] >= outcomes[0]))
        self.assertTrue(np.all(outcomes[2] >= outcomes[1]))
        self.assertGreater(outcomes[2].sum(), 0.0)

    def testMeanInterferenceAgreesWithCampbell(self):
        net = NetworkParams(0.05, 0.05)
        s = SectorGeometry.from_degrees(15.0, 15.0)
        estimate = estimate_interference_power(self.radar, net, s, trials=4000, seed=6, min_distance=1.0)
        analytic = mean_interference_power(self.radar, net, s, min_distance=1.0)
        self.assertLess(abs(estimate.mean - analytic), 5 * estimate.std_err)
