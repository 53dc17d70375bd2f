"""Classical capacity of bosonic Gaussian channels with correlated thermal noise."""

from memchan.channel import (
    InputStrategy,
    NoiseModel,
    Pattern,
    input_covariance,
    mixture_covariance,
    modulation_covariance,
    noise_covariance,
    output_covariance,
)
from memchan.errors import DomainError, MemchanError, UnphysicalStateError, ValidationError
from memchan.gaussian import (
    beamsplitter_transform,
    entropy,
    g_entropy,
    symplectic_spectrum_biquadratic,
    symplectic_spectrum_general,
)
from memchan.optimize import (
    OptimizationResult,
    capacity_gain,
    optimize_rate,
    optimize_rate_fixed_eta,
)
from memchan.rates import (
    RatePoint,
    monomodal_capacity,
    rate_closed_form,
    rate_generic,
    squeezing_db,
)

__version__ = "0.1.0"
