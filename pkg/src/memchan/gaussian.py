"""Covariance-matrix algebra, symplectic spectra and entropies of Gaussian states.

Conventions used throughout the package:

* quadratures are ordered ``[q1, p1, ..., qs, ps]``;
* ``[q, p] = i``, so the vacuum has covariance ``I / 2``;
* entropies are in bits.

Covariance matrices are plain ``numpy`` arrays of shape ``(2s, 2s)``.  The
general spectrum and entropy routines also accept stacks ``(..., 2s, 2s)``.
"""

import numpy as np

from memchan.errors import DomainError, UnphysicalStateError, ValidationError

__all__ = [
    "VACUUM_VARIANCE",
    "SYMMETRY_TOL",
    "PHYSICALITY_TOL",
    "g_entropy",
    "symplectic_form",
    "check_covariance",
    "symplectic_eigenvalues_raw",
    "symplectic_spectrum_general",
    "symplectic_spectrum_biquadratic",
    "entropy",
    "beamsplitter_matrix",
    "beamsplitter_transform",
    "is_physical",
]

VACUUM_VARIANCE = 0.5
SYMMETRY_TOL = 1e-12
# modulus slack below 1/2, and discriminant slack in the biquadratic
PHYSICALITY_TOL = 1e-9
_G_CUTOFF = 1e-12
_DISC_ULPS = 64

_LN2 = np.log(2.0)
_J = np.array([[0.0, 1.0j], [-1.0j, 0.0]])


def g_entropy(x):
    r"""Entropy in bits of a thermal state with mean photon number ``x``.

    .. math:: g(x) = (x+1)\log_2(x+1) - x\log_2 x,\qquad g(0) = 0

    Works elementwise on arrays.  Arguments below ``1e-12`` return 0.

    Raises:
        DomainError: if any argument is negative or not finite.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"g_entropy needs finite arguments, got {x!r}")
    if np.any(arr < 0):
        raise DomainError(f"g_entropy needs nonnegative arguments, got {x!r}")
    pos = arr >= _G_CUTOFF
    safe = np.where(pos, arr, 1.0)
    # log(x+1) + x log(1 + 1/x): no cancellation for large x
    out = np.where(pos, (np.log1p(safe) + safe * np.log1p(1.0 / safe)) / _LN2, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def symplectic_form(s):
    """Direct sum of ``s`` copies of ``J = [[0, i], [-i, 0]]``.

    ``J`` is Hermitian and squares to the identity, so the form is its own
    inverse.
    """
    return np.kron(np.eye(s), _J)


def check_covariance(gamma, modes=None):
    """Validate shape and symmetry of a (stack of) covariance matrices.

    Returns the matrix as a float array.  ``modes`` pins the mode count.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim < 2 or gamma.shape[-1] != gamma.shape[-2]:
        raise ValidationError(f"covariance must be square, got shape {gamma.shape}")
    dim = gamma.shape[-1]
    if dim == 0 or dim % 2:
        raise ValidationError(f"covariance dimension must be 2s, got {dim}")
    if modes is not None and dim != 2 * modes:
        raise ValidationError(f"expected a {2 * modes}x{2 * modes} covariance, got {dim}x{dim}")
    if not np.all(np.isfinite(gamma)):
        raise ValidationError("covariance has non-finite entries")
    asym = np.max(np.abs(gamma - np.swapaxes(gamma, -1, -2)))
    if asym > SYMMETRY_TOL * max(1.0, float(np.max(np.abs(gamma)))):
        raise ValidationError(f"covariance is not symmetric (max asymmetry {asym:.3e})")
    return gamma


def symplectic_eigenvalues_raw(gamma):
    """All ``2s`` eigenvalues of ``(⊕J)^{-1} γ``, sorted ascending.

    For a positive definite ``γ`` these are real and come in ``±λ`` pairs.
    """
    gamma = check_covariance(gamma)
    s = gamma.shape[-1] // 2
    ev = np.linalg.eigvals(symplectic_form(s) @ gamma)
    return np.sort(ev.real, axis=-1)


def symplectic_spectrum_general(gamma):
    """Symplectic eigenvalue moduli of an ``s``-mode covariance matrix.

    Dense eigen-decomposition of ``(⊕J)^{-1} γ``.  The ``±λ`` pairs are
    collapsed by averaging the two moduli of each pair, leaving ``s`` values
    sorted in descending order.  Accepts stacks of matrices.
    """
    moduli = np.sort(np.abs(symplectic_eigenvalues_raw(gamma)), axis=-1)[..., ::-1]
    pairs = moduli.reshape(moduli.shape[:-1] + (-1, 2))
    return pairs.mean(axis=-1)


def _det2(m):
    return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]


def _det2_abs(m):
    return m[..., 0, 0] * m[..., 1, 1] + m[..., 0, 1] * m[..., 1, 0]


def symplectic_spectrum_biquadratic(gamma):
    """Two-mode symplectic spectrum from the 2x2 block determinants.

    With ``γ = [[γ1, σ], [σᵀ, γ2]]`` the squared moduli solve

        λ⁴ − (det γ1 + det γ2 + 2 det σ) λ² + det γ = 0.

    Returns the two moduli in descending order.

    Raises:
        UnphysicalStateError: the discriminant or a root is negative beyond
            ``PHYSICALITY_TOL``.
    """
    gamma = check_covariance(gamma, modes=2)
    if gamma.ndim != 2:
        raise ValidationError("biquadratic spectrum takes a single 4x4 matrix")
    delta = _det2(gamma[:2, :2]) + _det2(gamma[2:, 2:]) + 2.0 * _det2(gamma[:2, 2:])
    det = float(np.linalg.det(gamma))
    disc = delta * delta - 4.0 * det
    if disc < -PHYSICALITY_TOL:
        raise UnphysicalStateError(f"negative discriminant {disc:.3e} in biquadratic")
    # rounding floor of disc; below it the spectrum is degenerate to working precision
    mag = np.abs(gamma)
    scale = _det2_abs(mag[:2, :2]) + _det2_abs(mag[2:, 2:]) + 2.0 * _det2_abs(mag[:2, 2:])
    if disc < _DISC_ULPS * np.finfo(float).eps * abs(delta) * scale:
        disc = 0.0
    root = np.sqrt(max(disc, 0.0))
    hi = 0.5 * (delta + root)
    # det / hi avoids cancellation in (delta - root) / 2
    lo = det / hi if hi > 0 else 0.5 * (delta - root)
    if lo < -PHYSICALITY_TOL:
        raise UnphysicalStateError(f"negative squared symplectic eigenvalue {lo:.3e}")
    return np.sqrt([hi, max(lo, 0.0)])


def entropy(gamma):
    """Von Neumann entropy (bits) of the Gaussian state with covariance ``gamma``.

    Sum of ``g(|λ_j| - 1/2)`` over the symplectic spectrum; moduli marginally
    below 1/2 are clamped.  Accepts stacks of matrices.
    """
    lam = symplectic_spectrum_general(gamma)
    if np.any(lam < VACUUM_VARIANCE - PHYSICALITY_TOL):
        raise UnphysicalStateError(f"symplectic eigenvalue below 1/2: {np.min(lam)!r}")
    total = np.sum(g_entropy(np.maximum(lam - VACUUM_VARIANCE, 0.0)), axis=-1)
    if np.ndim(total) == 0:
        return float(total)
    return total


def is_physical(gamma, tol=PHYSICALITY_TOL):
    """True when every symplectic eigenvalue modulus is at least ``1/2 - tol``."""
    lam = symplectic_spectrum_general(gamma)
    return bool(np.all(lam >= VACUUM_VARIANCE - tol))


def beamsplitter_matrix():
    """Orthogonal symplectic map ``(q1, p1, q2, p2) -> (q+, p+, q-, p-)``."""
    h = np.sqrt(0.5)
    return np.array(
        [
            [h, 0.0, h, 0.0],
            [0.0, h, 0.0, h],
            [h, 0.0, -h, 0.0],
            [0.0, h, 0.0, -h],
        ]
    )


def beamsplitter_transform(gamma):
    """Express a two-mode covariance matrix in the 50/50 beam-splitter basis.

    Returns ``S γ Sᵀ`` with ``S`` from :func:`beamsplitter_matrix`.  ``S`` is
    an involution, so applying the transform twice gives back ``gamma``.
    Accepts stacks of matrices.
    """
    gamma = check_covariance(gamma, modes=2)
    bs = beamsplitter_matrix()
    return bs @ gamma @ bs.T
