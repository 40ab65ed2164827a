from plcp_radar.montecarlo.plcp_sampler import SimulationWindow, PlcpRealization, sample_realization
from plcp_radar.montecarlo.base import TrialTask, MonteCarloSampler
from plcp_radar.montecarlo.estimators import EstimateWithCI, DetectionTask, ChordStatsTask, InterferenceTask, \
    MonteCarloSpec, estimate_pd, estimate_chord_stats, estimate_interference_power, \
    predicate_interval_disagreements
