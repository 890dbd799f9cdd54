"""Linear dynamics of a trapped-atom optical parametric amplifier with
atomic collisions: spectra, instability regimes, intensities and
atom-photon entanglement."""

__version__ = "0.1.0"

from .model import (COMMUTATOR, SWAP, ConsistencyError, InitialState, ModelParams,
                    ParameterError, PhysicalInputs, build_dynamics_matrix, reduce_physical)
from .spectral import (CharPoly, Spectrum, char_poly, eigenfrequencies, frequencies,
                       multiset_distance, numeric_spectrum_oracle)
from .stability import (BoundaryCurve, Regime, RegimeTag, classify_analytic, classify_spectral,
                        growth_rate, threshold_chi_squared, trace_boundary)
from .dynamics import (CovarianceState, IntensityRecord, Propagator, evolve_moments, intensity,
                       intensity_from_moments, intensity_series, propagator,
                       propagator_series_oracle)
from .entanglement import (YRecord, entanglement_series, window_stats, y_closed_form,
                           y_from_covariances)
