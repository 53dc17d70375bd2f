"""Deterministic maximization of the two-use rate over ``(eta, y)``.

The search runs in two stages:

1. a coarse grid over the box ``[0, 1] x [-1, 1]``;
2. nested golden-section refinement seeded at the grid argmax.  The outer
   search runs over ``eta`` on the profile ``max_y R(eta, y)``.  The inner
   search (:func:`optimize_rate_fixed_eta`) runs its own 1D grid over ``y``
   followed by golden section.

Golden section never lands on a bracket end, so both ends are evaluated
explicitly.  That is how ``y* = 1`` or ``eta* = 0`` come out exactly.  The
final answer is also compared with the ``eta = 0`` slice optimum; when the
two agree within the rate tolerance the unentangled point wins.
"""

import math
from dataclasses import dataclass

import numpy as np

from memchan.channel import InputStrategy, NoiseModel, Pattern
from memchan.errors import DomainError, ValidationError
from memchan.rates import rate, rate_grid

__all__ = [
    "DEFAULT_GRID",
    "OptimizationResult",
    "optimize_rate",
    "optimize_rate_fixed_eta",
    "capacity_gain",
]

DEFAULT_GRID = 101
DEFAULT_RATE_TOL = 1e-6
DEFAULT_ARG_TOL = 1e-4
DEFAULT_MAX_ITER = 200
# the eta profile needs a sharper inner y than the outer eta resolution
_INNER_TOL_FACTOR = 1e-3
_MAX_BRACKET_SHIFTS = 50
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    eta_star: float
    y_star: float
    rate_star: float
    gain: float
    rate_eta0: float
    y_eta0: float
    evaluations: int
    converged: bool
    nbar: float
    N: float
    x: float
    pattern: Pattern


class _Objective:
    """Rate as a function of ``(eta, y)`` with an evaluation counter."""

    def __init__(self, nbar, model):
        self.nbar = nbar
        self.model = model
        self.evaluations = 0

    def __call__(self, eta, y):
        self.evaluations += 1
        return rate(InputStrategy(eta, y, self.nbar), self.model).rate_bits_per_mode

    def grid(self, eta, y):
        values = rate_grid(eta, y, self.nbar, self.model)
        self.evaluations += values.size
        return values


def _golden_max(f, lo, hi, tol, max_iter):
    """Golden-section maximization of a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x, f(x), converged)`` for the best of the interior estimate and
    both bracket ends.  On exact ties the earlier candidate wins (interior
    first, then ``lo``, then ``hi``).
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    converged = False
    for _ in range(max_iter):
        if b - a <= tol:
            converged = True
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    else:
        converged = b - a <= tol
    best = (c, fc) if fc >= fd else (d, fd)
    for end in (lo, hi):
        fe = f(end)
        if fe > best[1]:
            best = (end, fe)
    return best[0], best[1], converged


def _tie_break(values, keys, rate_tol):
    """Index of the maximum, preferring the smallest key among near-ties."""
    values = np.ravel(values)
    near = np.flatnonzero(values >= values.max() - rate_tol)
    order = np.lexsort(tuple(np.ravel(k)[near] for k in reversed(keys)))
    return int(near[order[0]])


def _model(N, x, pattern):
    return NoiseModel(float(N), float(x), Pattern(pattern))


def _fixed_eta(objective, eta, grid, rate_tol, arg_tol, max_iter):
    ys = np.linspace(-1.0, 1.0, grid)
    values = objective.grid(np.full_like(ys, eta), ys)
    i = _tie_break(values, (np.abs(ys),), rate_tol)
    step = ys[1] - ys[0]
    lo, hi = max(-1.0, ys[i] - step), min(1.0, ys[i] + step)
    y, value, converged = _golden_max(lambda v: objective(eta, v), lo, hi, arg_tol, max_iter)
    if values[i] > value:
        y, value = float(ys[i]), float(values[i])
    return float(y), float(value), converged


def optimize_rate_fixed_eta(
    nbar,
    N,
    x,
    pattern=Pattern.PHASE_SENSITIVE,
    eta=0.0,
    tolerance=DEFAULT_RATE_TOL,
    arg_tolerance=DEFAULT_ARG_TOL,
    grid=DEFAULT_GRID,
    max_iter=DEFAULT_MAX_ITER,
):
    """Maximize the rate over ``y`` in ``[-1, 1]`` at fixed ``eta``.

    Returns ``(y_star, rate_star)``.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValidationError(f"eta must lie in [0, 1], got {eta!r}")
    _validate(nbar, tolerance, arg_tolerance, grid)
    objective = _Objective(float(nbar), _model(N, x, pattern))
    y, value, _ = _fixed_eta(objective, float(eta), grid, tolerance, arg_tolerance, max_iter)
    return y, value


def _validate(nbar, tolerance, arg_tolerance, grid):
    if not np.isfinite(nbar) or nbar <= 0:
        raise DomainError(f"nbar must be finite and > 0, got {nbar!r}")
    if not tolerance > 0 or not arg_tolerance > 0:
        raise ValidationError("tolerances must be > 0")
    if grid < 2:
        raise ValidationError(f"grid resolution must be >= 2, got {grid!r}")


def optimize_rate(
    nbar,
    N,
    x,
    pattern=Pattern.PHASE_SENSITIVE,
    tolerance=DEFAULT_RATE_TOL,
    arg_tolerance=DEFAULT_ARG_TOL,
    grid=DEFAULT_GRID,
    max_iter=DEFAULT_MAX_ITER,
):
    """Maximize the rate over the full ``(eta, y)`` box.

    Args:
        nbar: mean input photon number per mode.
        N: thermal noise photons per use.
        x: memory coefficient in ``[0, 1]``.
        pattern: noise correlation pattern.
        tolerance: rate tolerance used for tie detection (bits).
        arg_tolerance: final bracket width in ``eta``.  The inner ``y``
            searches run a thousand times finer.
        grid: coarse grid resolution per axis.
        max_iter: iteration budget of each golden-section search.

    Returns:
        OptimizationResult.  ``converged`` is False when some search ran out
        of iterations; the best point found is returned regardless.

    Raises:
        DomainError: if the unentangled optimum is not positive, so the gain
            is undefined.
    """
    _validate(nbar, tolerance, arg_tolerance, grid)
    model = _model(N, x, pattern)
    nbar = float(nbar)
    objective = _Objective(nbar, model)
    inner_tol = arg_tolerance * _INNER_TOL_FACTOR

    etas = np.linspace(0.0, 1.0, grid)
    ys = np.linspace(-1.0, 1.0, grid)
    E, Y = np.meshgrid(etas, ys, indexing="ij")
    values = objective.grid(E, Y)
    k = _tie_break(values, (E, np.abs(Y)), tolerance)
    eta_grid, grid_best = float(E.flat[k]), float(values.flat[k])

    converged = True
    profile_cache = {}

    def profile(eta):
        nonlocal converged
        if eta not in profile_cache:
            y, value, ok = _fixed_eta(objective, eta, grid, tolerance, inner_tol, max_iter)
            converged &= ok
            profile_cache[eta] = (y, value)
        return profile_cache[eta][1]

    step = etas[1] - etas[0]
    lo, hi = max(0.0, eta_grid - 2 * step), min(1.0, eta_grid + 2 * step)
    for _ in range(_MAX_BRACKET_SHIFTS):
        eta, value, ok = _golden_max(profile, lo, hi, arg_tolerance, max_iter)
        converged &= ok
        if eta == lo and lo > 0.0:
            lo, hi = max(0.0, lo - 2 * step), lo + 2 * step
        elif eta == hi and hi < 1.0:
            lo, hi = hi - 2 * step, min(1.0, hi + 2 * step)
        else:
            break
    else:
        converged = False
    y_star = profile_cache[eta][0]

    y0, rate0, ok = _fixed_eta(objective, 0.0, grid, tolerance, inner_tol, max_iter)
    converged &= ok
    if rate0 <= 0:
        raise DomainError("unentangled optimum rate is not positive; gain undefined")
    if grid_best > value:
        eta, y_star, value = eta_grid, float(Y.flat[k]), grid_best
    if value - rate0 <= tolerance:
        eta, y_star, value = 0.0, y0, rate0

    return OptimizationResult(
        eta_star=float(eta),
        y_star=float(y_star),
        rate_star=float(value),
        gain=float(value / rate0),
        rate_eta0=float(rate0),
        y_eta0=float(y0),
        evaluations=objective.evaluations,
        converged=bool(converged),
        nbar=nbar,
        N=float(N),
        x=float(x),
        pattern=model.pattern,
    )


def capacity_gain(nbar, N, x, pattern=Pattern.PHASE_SENSITIVE, **kwargs):
    """Ratio of the optimum over ``(eta, y)`` to the optimum at ``eta = 0``."""
    return optimize_rate(nbar, N, x, pattern, **kwargs).gain
