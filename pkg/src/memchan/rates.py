"""Transmission rates and one-shot capacities.

Rates are Holevo quantities of Gaussian input ensembles, reported in bits per
channel use (per mode).  Calling the optimum over the ensemble family a
*capacity* assumes that Gaussian ensembles are optimal for these channels,
which is conjectured but unproven.

Two independent routes compute the two-use rate:

* :func:`rate_closed_form` uses the doubly-degenerate symplectic eigenvalues
  ``sqrt(u² - v²)`` available for the phase-sensitive noise pattern;
* :func:`rate_generic` builds the full covariance matrices and takes their
  entropies through the dense symplectic spectrum.
"""

from dataclasses import dataclass

import numpy as np

from memchan.channel import (
    InputStrategy,
    Pattern,
    covariance_stacks,
    mixture_covariance,
    output_covariance,
    squeezing_parameter,
)
from memchan.errors import DomainError, UnphysicalStateError, ValidationError
from memchan.gaussian import (
    PHYSICALITY_TOL,
    VACUUM_VARIANCE,
    beamsplitter_transform,
    g_entropy,
    symplectic_spectrum_general,
)

__all__ = [
    "PATH_EQUIVALENCE_TOL",
    "RatePoint",
    "monomodal_capacity",
    "rate_closed_form",
    "rate_generic",
    "rate",
    "rate_grid",
    "squeezing_db",
]

PATH_EQUIVALENCE_TOL = 1e-10


@dataclass(frozen=True)
class RatePoint:
    """Rate of one input strategy.

    ``lambda_out`` and ``lambda_mix`` hold the two symplectic eigenvalue
    moduli (descending) of the output and mixture covariances.  With the
    phase-sensitive pattern both entries coincide.
    """

    eta: float
    y: float
    rate_bits_per_mode: float
    lambda_out: tuple
    lambda_mix: tuple


def _check_nbar_noise(nbar, N):
    if not np.isfinite(nbar) or nbar <= 0:
        raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
    if not np.isfinite(N) or N < 0:
        raise DomainError(f"N must be finite and >= 0, got {N!r}")


def monomodal_capacity(nbar, N):
    """One-shot capacity ``g(n̄ + N) - g(N)`` of the memoryless thermal channel."""
    _check_nbar_noise(nbar, N)
    return g_entropy(nbar + N) - g_entropy(N)


def _degenerate_moduli(eta, y, nbar, N, x):
    c = np.sqrt(eta * nbar * (1.0 + eta * nbar))
    u_out = VACUUM_VARIANCE + eta * nbar + N
    v_out = c + x * N
    u_mix = VACUUM_VARIANCE + nbar + N
    v_mix = c + x * N - y * (1.0 - eta) * nbar
    sq_out = u_out * u_out - v_out * v_out
    sq_mix = u_mix * u_mix - v_mix * v_mix
    if np.any(sq_out < -PHYSICALITY_TOL) or np.any(sq_mix < -PHYSICALITY_TOL):
        raise UnphysicalStateError("u² < v²: parameters give an unphysical state")
    return np.sqrt(np.maximum(sq_out, 0.0)), np.sqrt(np.maximum(sq_mix, 0.0))


def _g_shifted(lam):
    return g_entropy(np.maximum(lam - VACUUM_VARIANCE, 0.0))


def rate_closed_form(strategy, model):
    """Rate per mode from the closed-form degenerate symplectic eigenvalues.

    Only valid for :attr:`Pattern.PHASE_SENSITIVE` noise.
    """
    if model.pattern is not Pattern.PHASE_SENSITIVE:
        raise ValidationError("closed-form rate needs the phase-sensitive noise pattern")
    lam_out, lam_mix = _degenerate_moduli(
        strategy.eta, strategy.y, strategy.nbar, model.N, model.x
    )
    lam_out, lam_mix = float(lam_out), float(lam_mix)
    value = _g_shifted(lam_mix) - _g_shifted(lam_out)
    return RatePoint(strategy.eta, strategy.y, value, (lam_out, lam_out), (lam_mix, lam_mix))


def rate_generic(strategy, model, basis="modes"):
    """Rate per mode ``[S(γ̄) - S(γ_out)] / 2`` from the full covariance matrices.

    ``basis="beamsplitter"`` rotates both matrices into the ``±`` basis first;
    the result must not change.
    """
    gamma_out = output_covariance(strategy, model)
    gamma_mix = mixture_covariance(strategy, model)
    if basis == "beamsplitter":
        gamma_out = beamsplitter_transform(gamma_out)
        gamma_mix = beamsplitter_transform(gamma_mix)
    elif basis != "modes":
        raise ValidationError(f"unknown basis {basis!r}")
    lam_out = symplectic_spectrum_general(gamma_out)
    lam_mix = symplectic_spectrum_general(gamma_mix)
    for lam in (lam_out, lam_mix):
        if np.any(lam < VACUUM_VARIANCE - PHYSICALITY_TOL):
            raise UnphysicalStateError(f"symplectic eigenvalue below 1/2: {lam!r}")
    value = float(np.sum(_g_shifted(lam_mix)) - np.sum(_g_shifted(lam_out))) / 2.0
    return RatePoint(
        strategy.eta,
        strategy.y,
        value,
        tuple(float(v) for v in lam_out),
        tuple(float(v) for v in lam_mix),
    )


def rate(strategy, model):
    """Rate by the fastest valid route: closed form when the pattern allows it."""
    if model.pattern is Pattern.PHASE_SENSITIVE:
        return rate_closed_form(strategy, model)
    return rate_generic(strategy, model)


def rate_grid(eta, y, nbar, model, method="auto"):
    """Vectorized rate over broadcast arrays of ``eta`` and ``y``.

    ``method`` is ``"closed"``, ``"generic"`` or ``"auto"`` (closed form for the
    phase-sensitive pattern).  Inputs outside ``[0, 1] x [-1, 1]`` raise.
    """
    eta = np.asarray(eta, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any((eta < 0) | (eta > 1)) or np.any(np.abs(y) > 1):
        raise ValidationError("eta must lie in [0, 1] and y in [-1, 1]")
    _check_nbar_noise(nbar, model.N)
    if method == "auto":
        method = "closed" if model.pattern is Pattern.PHASE_SENSITIVE else "generic"
    if method == "closed":
        if model.pattern is not Pattern.PHASE_SENSITIVE:
            raise ValidationError("closed-form rate needs the phase-sensitive noise pattern")
        lam_out, lam_mix = _degenerate_moduli(eta, y, nbar, model.N, model.x)
        return _g_shifted(lam_mix) - _g_shifted(lam_out)
    if method == "generic":
        gamma_out, gamma_mix = covariance_stacks(eta, y, nbar, model)
        lam_out = symplectic_spectrum_general(gamma_out)
        lam_mix = symplectic_spectrum_general(gamma_mix)
        s_out = np.sum(_g_shifted(lam_out), axis=-1)
        s_mix = np.sum(_g_shifted(lam_mix), axis=-1)
        return (s_mix - s_out) / 2.0
    raise ValidationError(f"unknown method {method!r}")


def squeezing_db(eta, nbar):
    """Quadrature squeezing ``10 log10(e^{2r})`` in dB, with ``sinh²r = η·n̄``."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    if not nbar > 0:
        raise DomainError(f"nbar must be > 0, got {nbar!r}")
    r = squeezing_parameter(eta, nbar)
    return float(20.0 * r / np.log(10.0))

