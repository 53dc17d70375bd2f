"""Covariance matrices of the two-use bosonic channel with correlated noise.

Two uses of a thermal channel add Gaussian noise with covariance ``γ^N`` to
the input covariance.  The memory coefficient ``x`` correlates the noise on
the two uses.  The input ensemble is a two-mode squeezed vacuum carrying
``η·n̄`` photons per mode, displaced by a Gaussian modulation that carries
the remaining ``(1-η)·n̄`` photons with correlation ``y`` across the modes
(``q`` displacements correlated, ``p`` displacements anticorrelated).

The internal ``_*_blocks`` helpers broadcast over numpy arrays of ``eta``
and ``y`` so that rate grids can be built in one shot; the public
constructors take parameter records and return a single 4x4 matrix.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from memchan.errors import ValidationError
from memchan.gaussian import VACUUM_VARIANCE

__all__ = [
    "Pattern",
    "NoiseModel",
    "InputStrategy",
    "noise_covariance",
    "input_covariance",
    "output_covariance",
    "modulation_covariance",
    "mixture_covariance",
    "covariance_stacks",
    "monomodal_output_covariance",
    "monomodal_mixture_covariance",
    "squeezing_parameter",
]


class Pattern(enum.Enum):
    """Correlation pattern of the noise across the two channel uses.

    ``PHASE_SENSITIVE`` anticorrelates the ``q`` noise and correlates the ``p``
    noise; in the beam-splitter basis each output mode then sees different
    noise on its two quadratures.  ``SYMMETRIC`` gives both quadratures the
    same sign of correlation, so each beam-splitter mode is phase-insensitive.
    """

    PHASE_SENSITIVE = "phase-sensitive"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class NoiseModel:
    """Thermal noise with ``N`` photons per use and memory coefficient ``x``."""

    N: float
    x: float = 0.0
    pattern: Pattern = Pattern.PHASE_SENSITIVE

    def __post_init__(self):
        if not math.isfinite(self.N) or self.N < 0:
            raise ValidationError(f"noise N must be finite and >= 0, got {self.N!r}")
        if not 0.0 <= self.x <= 1.0:
            raise ValidationError(f"memory x must lie in [0, 1], got {self.x!r}")
        if not isinstance(self.pattern, Pattern):
            object.__setattr__(self, "pattern", Pattern(self.pattern))


@dataclass(frozen=True)
class InputStrategy:
    """Input ensemble: entanglement fraction ``eta``, modulation correlation ``y``
    and mean photon number ``nbar`` per mode."""

    eta: float
    y: float = 0.0
    nbar: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValidationError(f"eta must lie in [0, 1], got {self.eta!r}")
        if not -1.0 <= self.y <= 1.0:
            raise ValidationError(f"y must lie in [-1, 1], got {self.y!r}")
        if not math.isfinite(self.nbar) or self.nbar <= 0:
            raise ValidationError(f"nbar must be finite and > 0, got {self.nbar!r}")

    @property
    def squeezing(self):
        return squeezing_parameter(self.eta, self.nbar)


def squeezing_parameter(eta, nbar):
    """Two-mode squeezing ``r`` with ``sinh²r = η·n̄``."""
    return np.arcsinh(np.sqrt(eta * nbar))


def _assemble(diag, corr_q, corr_p):
    """Two-mode matrix with equal diagonal and q-q / p-p cross terms only."""
    diag, corr_q, corr_p = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (diag, corr_q, corr_p))
    )
    out = np.zeros(diag.shape + (4, 4))
    for i in range(4):
        out[..., i, i] = diag
    out[..., 0, 2] = out[..., 2, 0] = corr_q
    out[..., 1, 3] = out[..., 3, 1] = corr_p
    return out


def _tmsv_correlation(eta, nbar):
    # (1/2) sinh 2r with sinh²r = η n̄
    return np.sqrt(eta * nbar * (1.0 + eta * nbar))


def _input_blocks(eta, nbar):
    c = _tmsv_correlation(eta, nbar)
    return _assemble(VACUUM_VARIANCE + eta * nbar, -c, c)


def _noise_blocks(model):
    N, x = model.N, model.x
    p_sign = 1.0 if model.pattern is Pattern.PHASE_SENSITIVE else -1.0
    return _assemble(N, -x * N, p_sign * x * N)


def _modulation_blocks(eta, y, nbar):
    m = (1.0 - eta) * nbar
    return _assemble(m, y * m, -y * m)


def noise_covariance(model):
    """Covariance ``γ^N`` of the noise added over two uses of the channel."""
    return _noise_blocks(model)


def input_covariance(strategy):
    """Two-mode squeezed vacuum with ``sinh²r = η·n̄``; a pure state."""
    return _input_blocks(strategy.eta, strategy.nbar)


def output_covariance(strategy, model):
    """Covariance of each output state: input plus noise."""
    return input_covariance(strategy) + noise_covariance(model)


def modulation_covariance(strategy):
    """Covariance of the classical displacement distribution.

    Each mode gets ``(1-η)·n̄`` per quadrature; the cross terms are ``+y`` on
    ``q`` and ``-y`` on ``p`` in those units.
    """
    return _modulation_blocks(strategy.eta, strategy.y, strategy.nbar)


def mixture_covariance(strategy, model):
    """Covariance of the averaged output state (energy constraint saturated)."""
    return output_covariance(strategy, model) + modulation_covariance(strategy)


def covariance_stacks(eta, y, nbar, model):
    """Output and mixture covariances for arrays of ``eta`` and ``y``.

    ``eta`` and ``y`` broadcast against each other; the result is a pair of
    arrays of shape ``broadcast(eta, y).shape + (4, 4)``.  No range checks are
    done here, callers validate the box.
    """
    eta, y = np.broadcast_arrays(np.asarray(eta, dtype=float), np.asarray(y, dtype=float))
    out = _input_blocks(eta, nbar) + _noise_blocks(model)
    return out, out + _modulation_blocks(eta, y, nbar)


def monomodal_output_covariance(N):
    """Single-use output covariance for a coherent input: ``(1/2 + N) I₂``."""
    return (VACUUM_VARIANCE + N) * np.eye(2)


def monomodal_mixture_covariance(nbar, N):
    """Single-use averaged output for Gaussian coherent-state modulation."""
    return (VACUUM_VARIANCE + nbar + N) * np.eye(2)
