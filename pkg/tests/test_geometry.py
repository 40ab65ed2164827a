import unittest
import numpy as np

from plcp_radar.geometry.lines import GeneratingPoint, IntersectionFrame, PARALLEL, is_parallel, \
    intersection_frame, interferer_distance, facing_boresight, street_points
from plcp_radar.geometry.sector import SectorGeometry, sector_contains, mutual_interference, in_cone, alpha_n, \
    chord_length, chord_l1, chord_l2, chord_l3, chord_l4, clip_chord
from plcp_radar.geometry.interference import InterferenceInterval, EMPTY_INTERVAL, interference_bounds, \
    foot_interval


def brute_force_alignment(frame, omega, v):
    """ mutual alignment of the ego and vehicles at offsets v that face the perpendicular foot """
    s = SectorGeometry(omega, 1.0)
    points = frame.point_at(v)
    to_foot = frame.point_at(frame.foot_parameter) - points
    norm = np.linalg.norm(to_foot, axis=-1, keepdims=True)
    boresight = np.where(norm > 0, to_foot / np.where(norm > 0, norm, 1.0), frame.direction)
    return mutual_interference(s, points, boresight)


def bisect_transition(frame, omega, v_in, v_out, tol=1e-10):
    inside = bool(brute_force_alignment(frame, omega, np.array([v_in]))[0])
    while abs(v_out - v_in) > tol * max(1.0, abs(frame.u)):
        mid = 0.5 * (v_in + v_out)
        if bool(brute_force_alignment(frame, omega, np.array([mid]))[0]) == inside:
            v_in = mid
        else:
            v_out = mid
    return 0.5 * (v_in + v_out)


def indicator_chord(theta, r, s, n=200001):
    """ in-sector length of a line by a fine scan of its points """
    g = GeneratingPoint(theta, r)
    t = np.linspace(-s.max_range, s.max_range, n)
    points = g.foot + t[:, None] * g.tangent
    return np.count_nonzero(sector_contains(points, s)) * (t[1] - t[0])


class TestLines(unittest.TestCase):

    def testGeneratingPoint(self):
        g = GeneratingPoint(-0.5, 3.0)
        self.assertAlmostEqual(g.theta, 2 * np.pi - 0.5)
        self.assertTrue(g.contains(g.foot))
        self.assertTrue(g.contains(g.foot + 7.0 * g.tangent))
        self.assertFalse(g.contains(g.foot + 0.1 * g.normal))
        with self.assertRaises(ValueError):
            GeneratingPoint(1.0, -1.0)

    def testIntersectionFrame(self):
        frame = intersection_frame(GeneratingPoint(np.pi / 2, 5.0))
        self.assertAlmostEqual(frame.u, 5.0)
        frame = intersection_frame(GeneratingPoint(3 * np.pi / 2, 5.0))
        self.assertAlmostEqual(frame.u, -5.0)
        self.assertTrue(is_parallel(intersection_frame(GeneratingPoint(0.0, 3.0))))
        self.assertTrue(is_parallel(intersection_frame(GeneratingPoint(np.pi, 3.0))))
        self.assertIs(intersection_frame(GeneratingPoint(0.0, 3.0)), PARALLEL)

    def testFramePointsLieOnStreet(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            g = GeneratingPoint(rng.uniform(0, 2 * np.pi), rng.uniform(0.1, 30.0))
            frame = intersection_frame(g)
            if is_parallel(frame):
                continue
            v = rng.uniform(-50, 50, size=5)
            points = frame.point_at(v)
            for p in points:
                self.assertTrue(g.contains(p, tol=1e-7))
            self.assertGreaterEqual(frame.direction[1], 0.0)
            np.testing.assert_allclose(frame.point_at(0.0), [0.0, frame.u], atol=1e-12)
            np.testing.assert_allclose(frame.point_at(frame.foot_parameter), g.foot, atol=1e-7 * max(1, abs(frame.u)))

    def testInterfererDistance(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            frame = IntersectionFrame(rng.uniform(-40, 40), rng.uniform(0.05, np.pi - 0.05))
            v = rng.uniform(-60, 60, size=7)
            w = interferer_distance(frame, v)
            self.assertTrue(np.all(w >= 0))
            np.testing.assert_allclose(w, np.linalg.norm(frame.point_at(v), axis=-1), rtol=1e-10, atol=1e-10)
            np.testing.assert_allclose(w, np.hypot(frame.foot_offset(v), frame.r), rtol=1e-10, atol=1e-10)
            self.assertAlmostEqual(interferer_distance(frame, 0.0), abs(frame.u))

    def testInterfererDistanceIncreasingBeyondMinimum(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            frame = IntersectionFrame(rng.uniform(-40, 40), rng.uniform(0.05, np.pi - 0.05))
            v_min = -frame.u * abs(np.cos(frame.theta))
            w = interferer_distance(frame, v_min + np.linspace(0.0, 100.0, 201))
            self.assertTrue(np.all(np.diff(w) > 0))
            self.assertLessEqual(w[0], interferer_distance(frame, v_min - 1.0))
            self.assertEqual(interferer_distance(frame, 0.0), abs(frame.u))

    def testFacingBoresight(self):
        boresights = facing_boresight(np.array([3.0, -3.0]), np.array([0.0, 0.0]))
        np.testing.assert_allclose(boresights, [[0.0, -1.0], [0.0, 1.0]], atol=1e-15)
        points = street_points(np.array([0.0, 0.0]), np.array([4.0, 4.0]), np.array([3.0, -3.0]))
        np.testing.assert_allclose(points, [[4.0, 3.0], [4.0, -3.0]], atol=1e-15)


class TestSector(unittest.TestCase):

    def setUp(self):
        self.s = SectorGeometry.from_degrees(10.0, 15.0)

    def testValidation(self):
        with self.assertRaises(ValueError):
            SectorGeometry(0.0, 15.0)
        with self.assertRaises(ValueError):
            SectorGeometry(np.pi / 2, 15.0)
        with self.assertRaises(ValueError):
            SectorGeometry(0.1, 0.0)
        self.assertAlmostEqual(self.s.area, np.deg2rad(10.0) * 225.0)

    def testSectorContains(self):
        self.assertTrue(sector_contains([0.0, 10.0], self.s))
        self.assertTrue(sector_contains([0.0, 15.0], self.s))
        self.assertFalse(sector_contains([0.0, 16.0], self.s))
        self.assertFalse(sector_contains([10.0, 1.0], self.s))
        self.assertFalse(sector_contains([0.0, -5.0], self.s))
        self.assertFalse(sector_contains([0.0, 0.0], self.s))
        mask = sector_contains(np.array([[0.0, 10.0], [10.0, 1.0]]), self.s)
        self.assertEqual(list(mask), [True, False])

    def testInCone(self):
        self.assertTrue(in_cone(np.array([0.1, 1.0]), np.array([0.0, 1.0]), 0.2))
        self.assertFalse(in_cone(np.array([1.0, 1.0]), np.array([0.0, 1.0]), np.pi / 4))

    def testMutualInterference(self):
        self.assertTrue(mutual_interference(self.s, [0.0, 10.0], [0.0, -1.0]))
        self.assertFalse(mutual_interference(self.s, [0.0, 10.0], [0.0, 1.0]))
        self.assertFalse(mutual_interference(self.s, [10.0, 0.0], [-1.0, 0.0]))
        # range is not gated
        self.assertTrue(mutual_interference(self.s, [0.0, 100.0], [0.0, -1.0]))

    def testAlphaN(self):
        self.assertAlmostEqual(alpha_n(0.0, self.s), self.s.half_beamwidth)
        self.assertAlmostEqual(alpha_n(self.s.max_range * np.cos(self.s.half_beamwidth), self.s), np.pi / 2)

    def testChordExamples(self):
        self.assertEqual(chord_length(IntersectionFrame(0.0, np.pi / 2), self.s), 0.0)
        self.assertEqual(chord_length(IntersectionFrame(-1.0, np.pi / 2), self.s), 0.0)
        self.assertEqual(chord_length(IntersectionFrame(20.0, np.pi / 2), self.s), 0.0)
        # line x = 2 parallel to the boresight, inside the 30 degree cone beyond y = 2 cot(30)
        s = SectorGeometry.from_degrees(30.0, 15.0)
        self.assertAlmostEqual(clip_chord(0.0, 2.0, s), np.sqrt(221.0) - 2.0 / np.tan(np.pi / 6))
        self.assertEqual(clip_chord(3 * np.pi / 2, 5.0, s), 0.0)
        self.assertEqual(clip_chord(1.0, 20.0, s), 0.0)

    def testChordBranchesMatchClipping(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            s = SectorGeometry(np.deg2rad(rng.uniform(2.0, 45.0)), rng.uniform(5.0, 30.0))
            u = rng.uniform(0.0, s.max_range)
            theta = rng.uniform(1e-3, np.pi - 1e-3)
            frame = IntersectionFrame(u, theta)
            self.assertAlmostEqual(chord_length(frame, s), clip_chord(theta, u * np.sin(theta), s),
                                   delta=1e-6 * s.max_range)

    def testChordSymmetricAboutBoresight(self):
        rng = np.random.default_rng(13)
        for _ in range(1000):
            s = SectorGeometry(np.deg2rad(rng.uniform(2.0, 45.0)), rng.uniform(5.0, 30.0))
            u = rng.uniform(0.0, s.max_range)
            theta = rng.uniform(1e-3, np.pi / 2)
            self.assertAlmostEqual(chord_length(IntersectionFrame(u, theta), s),
                                   chord_length(IntersectionFrame(u, np.pi - theta), s), delta=1e-9 * s.max_range)

    def testChordContinuousAcrossBranches(self):
        rng = np.random.default_rng(14)
        for _ in range(500):
            s = SectorGeometry(np.deg2rad(rng.uniform(2.0, 45.0)), rng.uniform(5.0, 30.0))
            R = s.max_range
            u_corner = R * np.cos(s.half_beamwidth)
            u = rng.uniform(0.0, R)
            an = float(alpha_n(u, s))
            middle = chord_l2 if u <= u_corner else chord_l4
            self.assertAlmostEqual(chord_l1(u, an, s), middle(u, an, s), delta=1e-6 * R)
            self.assertAlmostEqual(chord_l3(u, np.pi - an, s), middle(u, np.pi - an, s), delta=1e-6 * R)
            # across u = R cos(Omega)
            self.assertAlmostEqual(chord_l2(u_corner, np.pi / 2, s), chord_l4(u_corner, np.pi / 2, s), delta=1e-6 * R)
            theta = rng.uniform(1e-3, np.pi - 1e-3)
            below = chord_length(IntersectionFrame(u_corner * (1 - 1e-10), theta), s)
            above = chord_length(IntersectionFrame(u_corner * (1 + 1e-10), theta), s)
            self.assertAlmostEqual(below, above, delta=1e-6 * R)

    def testChordMatchesIndicatorScan(self):
        rng = np.random.default_rng(12)
        checked = 0
        for _ in range(400):
            s = SectorGeometry(np.deg2rad(rng.uniform(2.0, 45.0)), rng.uniform(5.0, 30.0))
            u = rng.uniform(0.0, s.max_range)
            theta = rng.uniform(1e-3, np.pi - 1e-3)
            length = chord_length(IntersectionFrame(u, theta), s)
            if length < 0.1 * s.max_range:
                continue
            reference = indicator_chord(theta, u * np.sin(theta), s)
            self.assertLess(abs(length - reference) / length, 1e-3)
            checked += 1
        self.assertGreater(checked, 100)


class TestInterferenceBounds(unittest.TestCase):

    def testInterval(self):
        interval = InterferenceInterval.make(1.0, 3.0)
        self.assertEqual(interval.length, 2.0)
        self.assertEqual(list(interval.contains([0.5, 2.0, 3.0])), [False, True, False])
        self.assertIs(InterferenceInterval.make(3.0, 1.0), EMPTY_INTERVAL)
        self.assertEqual(interval.clip(2.0, 10.0), InterferenceInterval(2.0, 3.0, False))
        self.assertTrue(interval.clip(4.0, 5.0).empty)

    def testPerpendicularStreetIsEmpty(self):
        frame = IntersectionFrame(10.0, np.pi / 2)
        self.assertTrue(interference_bounds(frame, np.deg2rad(10.0)).empty)
        self.assertIsNone(foot_interval(frame, np.deg2rad(10.0)))

    def testShallowStreetIsUnbounded(self):
        omega = np.deg2rad(10.0)
        interval = interference_bounds(IntersectionFrame(10.0, np.deg2rad(5.0)), omega)
        self.assertFalse(interval.empty)
        self.assertEqual(interval.upper, np.inf)
        self.assertAlmostEqual(interval.lower, 10.0 * np.sin(np.deg2rad(-5.0)) / np.sin(omega))

    def testWideBeamRejected(self):
        with self.assertRaises(ValueError):
            interference_bounds(IntersectionFrame(10.0, 0.3), np.deg2rad(50.0))
        with self.assertRaises(ValueError):
            interference_bounds(PARALLEL, 0.1)

    def testMatchesBruteForce(self):
        rng = np.random.default_rng(7)
        draws = 0
        while draws < 1000:
            g = GeneratingPoint(rng.uniform(0, 2 * np.pi), rng.uniform(0.1, 30.0))
            omega = np.deg2rad(rng.uniform(2.0, 45.0))
            frame = intersection_frame(g)
            if is_parallel(frame):
                continue
            draws += 1
            interval = interference_bounds(frame, omega)
            scale = max(1.0, abs(frame.u))
            v = np.linspace(-100 * scale, 100 * scale, 4001)
            mask = brute_force_alignment(frame, omega, v)

            # pointwise agreement away from the endpoints
            near = np.zeros(v.shape, dtype=bool)
            if not interval.empty:
                near = (np.abs(v - interval.lower) < 1e-6 * scale) | (np.abs(v - interval.upper) < 1e-6 * scale)
            disagree = (interval.contains(v) != mask) & ~near
            self.assertFalse(np.any(disagree), 'predicate mismatch for %s, omega %s: %s' % (g, omega, interval))

            # refined transitions sit on the interval endpoints
            for i in np.flatnonzero(mask[1:] != mask[:-1]):
                edge = bisect_transition(frame, omega, v[i], v[i + 1])
                self.assertFalse(interval.empty)
                self.assertLess(min(abs(edge - interval.lower), abs(edge - interval.upper)), 1e-6 * scale)
