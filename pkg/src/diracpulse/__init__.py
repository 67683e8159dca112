"""1D spectral Dirac simulator for pure-gauge pulses and the free-field
energy they extract."""
from .dirac import (DiracParams, EnergyReport, NumericalCorruptionError, SpinorField,
                    energy, energy_split, free_propagate, h0_apply, make_gaussian_packet,
                    make_plane_wave, project_branch)
from .grid import Grid1D, make_grid
from .kernels import BACKEND
from .observables import (charge_density, continuity_residual, current_density,
                          div_current)
from .pulse import (ChiProfile, ExtractionImpossibleError, ExtractionResult,
                    ResolutionWarning, apply_pulse, chi_from_current, f_for_target,
                    predict_delta_divergence, predict_delta_gradient,
                    predict_delta_quadratic, run_extraction, run_pulse)

__version__ = "0.1.0"
