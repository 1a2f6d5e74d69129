"""Ground-to-UAV 140 GHz directional link toolkit.

Geometry, antenna main-lobe model, Weibull/Rician fading, the dB-domain
link model with calibrated/full orientation handling, hover-jitter
trajectories, correlation statistics and 3-dB alignment analysis.
"""

from ._backend import backend_name, use_backend
from .alignment import (AlignmentResult, PatternConfig, footprint_ratio, sweep_3db,
                        three_db_radius)
from .antenna import AntennaPattern, footprint_diameter, gain_dbi
from .channel import (AxisSpec, ChannelParams, ModelMode, PowerMap, difference_map,
                      fit_path_loss_exponent, mean_snr_db, power_map, sample_snr_db)
from .fading import (FitReport, RicianParams, WeibullParams, classify_fading,
                     rician_cdf, rician_fit_moments, rician_pdf, rician_sample,
                     weibull_cdf, weibull_fit_mle, weibull_pdf, weibull_sample)
from .geometry import (LinkGeometry, StationPose, UavPose, link_distance, link_geometry,
                       off_boresight_angles)
from .stats import (CorrelationReport, correlation_matrix, empirical_cdf, ks_statistic,
                    pearson_correlation)
from .trajectory import (FlightLog, FlightSample, JitterParams, load_flight_log,
                         predict_over_log, simulate_hover, write_flight_log)

__version__ = "0.1.0"
