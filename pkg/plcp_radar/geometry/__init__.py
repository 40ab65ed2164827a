from plcp_radar.geometry.lines import GeneratingPoint, IntersectionFrame, PARALLEL, is_parallel, \
    intersection_frame, interferer_distance, facing_boresight, street_points
from plcp_radar.geometry.sector import SectorGeometry, sector_area, sector_contains, mutual_interference, \
    alpha_n, chord_length, clip_chord, in_cone
from plcp_radar.geometry.interference import InterferenceInterval, interference_bounds, foot_interval
