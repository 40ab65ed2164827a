from plcp_radar.utils.utils import *
