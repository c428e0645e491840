"""Single-photon transport in a coupled-resonator waveguide with a side cavity.

The cavity is either a single lossless mode or a leaky (Lorentzian) cavity.
Scattering coefficients follow from the complex effective potential the cavity
induces on resonator 0; :mod:`crwscatter.oracle` holds independent numerical
checks of both.
"""

from .errors import (
    BranchPoint,
    ConfigError,
    DegenerateInput,
    IntegratorFailure,
    InvalidDiscretization,
    LatticeTooSmall,
    OutOfBand,
    ScatteringError,
    ToleranceNotMet,
)
from .model import WaveguideParams, dispersion, group_velocity, momentum_from_energy
from .potential import (
    ComplexPotential,
    LorentzianCavityParams,
    PerfectCavityParams,
    potential_imperfect,
    potential_perfect,
    potential_resonant,
    spectral_density,
)
from .scattering import ScatteringResult, amplitudes, coefficients, conservation_deficit, sweep

__version__ = "0.1.0"
