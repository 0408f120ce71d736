"""Spin-1 Duffin-Kemmer bound states on the static 3-sphere.

Closed-form fields for the three helicity classes, residual checks of the
component equations, and finite-difference spectrum oracles.
"""
from .assembler import (AssemblyOptions, Field10, assemble, assemble_massless, assemble_nonzero_sigma,
                        assemble_zero_sigma, invert_ladder)
from .errors import (AssemblyError, ConvergenceError, DegenerateEnergyError, DomainError, InversionError,
                     PoleError)
from .modes import (Branch, HelicityClass, ModeSpec, SpectralPoint, energy_nonzero_sigma, energy_zero_sigma,
                    enumerate_modes, lambda_of, sigma_of, spectral_point)
from .oracles import OracleResult, Shift, axial_oracle, radial_oracle, spectrum_crosscheck
from .profiles import axial_phi2, barred_pair, delta_apply, ladder_apply, radial_phi2
from .specfun import HypParams, hyp2f1, hyp2f1_derivative, pochhammer
from .verifier import (Grid2D, ResidualReport, verify_all, verify_first_order_system, verify_helicity,
                       verify_lorentz, verify_second_order, verify_zero_sigma_chain)

__version__ = "0.1.0"
