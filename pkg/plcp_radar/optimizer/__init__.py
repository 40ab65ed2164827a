from plcp_radar.optimizer.sweep import Scenario, SweepGrid, SweepRow, SweepTable, run_sweep, evaluate_point, \
    AXES, ENGINES, CSV_HEADER
from plcp_radar.optimizer.grid_search import beamwidth_grid, BeamwidthOptimum, grid_argmax, optimal_beamwidth, \
    optimal_beamwidth_sweep
