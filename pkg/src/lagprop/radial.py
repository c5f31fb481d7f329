"""Square-root/square substitutions, radialization in two dimensions, the
explicit coefficient bridge between the one-dimensional Laguerre basis and
the two-dimensional Hermite basis, radiality testing, and the discrete
spherical average.

The bridge rests on the pointwise identity

    l_n(x1^2 + x2^2) = (-1)^n sum_{k=0}^{n} c(n, k) h_{2k}(x1) h_{2n-2k}(x2)

with c(n, k) = sqrt(pi (2k)! (2n-2k)!) / (2^n k! (n-k)!), all lying in
(0, sqrt(pi)].  A one-dimensional Laguerre field therefore maps onto the
even-index Hermite blocks |m| = 2n, and radial two-dimensional Hermite
fields map back.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

from .coeffspace import CoefficientField
from .expand import SampledFunction

__all__ = [
    "EvennessError",
    "NotRadialError",
    "bridge_hermite_to_laguerre",
    "bridge_laguerre_to_hermite",
    "c_coeff",
    "check_radial",
    "inverse_sqrt_substitution",
    "radialize",
    "spherical_average",
    "sqrt_substitution",
]

_EVEN_PROBES = np.array([0.13, 0.57, 1.31, 2.7, 4.9, 7.3])


class EvennessError(ValueError):
    """The supplied function is not even on the probe set."""


class NotRadialError(ValueError):
    """A Hermite field is not the image of a radial profile."""

    def __init__(self, message, worst_index=None, deviation=None):
        super().__init__(message)
        self.worst_index = worst_index
        self.deviation = deviation


def c_coeff(n: int, k: int) -> float:
    """Bridge coefficient sqrt(pi (2k)! (2n-2k)!) / (2^n k! (n-k)!).

    Evaluated through log-gamma sums and exponentiated once, so it stays
    accurate out to n = 500.  Lies in (0, sqrt(pi)].
    """
    if not 0 <= k <= n <= 500:
        raise ValueError("need 0 <= k <= n <= 500")
    log_val = (
        0.5 * math.log(math.pi)
        + 0.5 * (math.lgamma(2 * k + 1) + math.lgamma(2 * (n - k) + 1))
        - n * math.log(2.0)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
    )
    return math.exp(log_val)


def _c_row(n: int) -> np.ndarray:
    k = np.arange(n + 1, dtype=float)
    log_val = (
        0.5 * math.log(math.pi)
        + 0.5 * (gammaln(2 * k + 1) + gammaln(2 * (n - k) + 1))
        - n * math.log(2.0)
        - gammaln(k + 1)
        - gammaln(n - k + 1)
    )
    return np.exp(log_val)


def _check_even(g: SampledFunction, tol: float = 1e-9):
    if g.dim != 1:
        raise ValueError("evenness applies to one-variable functions")
    left = np.asarray(g(-_EVEN_PROBES), dtype=complex)
    right = np.asarray(g(_EVEN_PROBES), dtype=complex)
    gap = np.abs(left - right).max()
    if gap > tol:
        raise EvennessError(f"|g(x) - g(-x)| reaches {gap:.3e} on the probe set")


def sqrt_substitution(g: SampledFunction) -> SampledFunction:
    """Even g on R -> f on R_+ with f(x) = g(sqrt(x))."""
    _check_even(g)
    return SampledFunction(1, lambda x: g(np.sqrt(np.asarray(x, dtype=float))))


def inverse_sqrt_substitution(f: SampledFunction) -> SampledFunction:
    """f on R_+ -> even g on R with g(r) = f(r^2)."""
    if f.dim != 1:
        raise ValueError("expected a one-variable function")
    return SampledFunction(1, lambda r: f(np.asarray(r, dtype=float) ** 2))


def radialize(g: SampledFunction) -> SampledFunction:
    """Even g on R -> radial g~(x1, x2) = g(sqrt(x1^2 + x2^2)) on R^2."""
    _check_even(g)

    def evaluator(x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return g(np.sqrt(x1 * x1 + x2 * x2))

    return SampledFunction(2, evaluator)


def check_radial(phi: SampledFunction, tol: float = 1e-9, n_angles: int = 8) -> float:
    """Worst rotation-invariance defect of a two-variable function.

    Probes a few radii against n_angles rotations; raises NotRadialError
    beyond tol and returns the worst defect otherwise.
    """
    if phi.dim != 2:
        raise ValueError("radiality applies to two-variable functions")
    radii = np.array([0.3, 0.9, 1.7, 3.1])
    base = np.asarray(phi(radii, np.zeros_like(radii)), dtype=complex)
    worst = 0.0
    for j in range(n_angles):
        th = 2.0 * math.pi * (j + 0.37) / n_angles
        vals = np.asarray(phi(radii * math.cos(th), radii * math.sin(th)), dtype=complex)
        worst = max(worst, float(np.abs(vals - base).max()))
    if worst > tol:
        raise NotRadialError(f"rotation-invariance defect {worst:.3e} exceeds {tol:.1e}")
    return worst


def bridge_laguerre_to_hermite(a: CoefficientField, n_modes: int | None = None) -> CoefficientField:
    """One-dimensional Laguerre coefficients -> two-dimensional Hermite field.

    Mode n lands on the block b[2k, 2n-2k] = (-1)^n c(n,k) a_n, 0 <= k <= n;
    every other entry is zero.  The output has shape (2N-1, 2N-1) for N
    input modes.
    """
    if a.dim != 1:
        raise ValueError("bridge expects a one-dimensional field")
    n_modes = a.shape[0] if n_modes is None else min(n_modes, a.shape[0])
    size = max(2 * n_modes - 1, 1)
    out = np.zeros((size, size), dtype=complex)
    for n in range(n_modes):
        row = _c_row(n)
        k = np.arange(n + 1)
        out[2 * k, 2 * (n - k)] = (-1) ** n * row * a.entries[n]
    return CoefficientField(out)


def bridge_hermite_to_laguerre(b: CoefficientField, tol: float = 1e-10) -> CoefficientField:
    """Radial two-dimensional Hermite field -> one-dimensional Laguerre field.

    Requires every odd-index entry to vanish (within tol) and, per block n,
    the rescaled values (-1)^n b[2k, 2n-2k] / c(n,k) to agree across k
    within tol; the common value (averaged over k) becomes a_n.  Only
    blocks fully inside the array are recovered; entries of truncated
    blocks must be below tol.
    """
    if b.dim != 2:
        raise ValueError("bridge expects a two-dimensional Hermite field")
    m1, m2 = b.shape
    entries = b.unmasked()
    odd = np.zeros(b.shape, dtype=bool)
    odd[1::2, :] = True
    odd[:, 1::2] = True
    if odd.any():
        viol = np.abs(np.where(odd, entries, 0.0))
        worst_flat = int(viol.argmax())
        if viol.ravel()[worst_flat] > tol:
            idx = np.unravel_index(worst_flat, b.shape)
            raise NotRadialError(
                f"odd-index entry {idx} has magnitude {viol.ravel()[worst_flat]:.3e}",
                worst_index=idx,
                deviation=float(viol.ravel()[worst_flat]),
            )
    n_full = (min(m1, m2) - 1) // 2
    coeffs = np.zeros(n_full + 1, dtype=complex)
    for n in range(n_full + 1):
        k = np.arange(n + 1)
        vals = (-1) ** n * entries[2 * k, 2 * (n - k)] / _c_row(n)
        mean = vals.mean()
        dev = np.abs(vals - mean)
        if dev.max() > tol:
            worst_k = int(dev.argmax())
            raise NotRadialError(
                f"block n={n} inconsistent at k={worst_k}: deviation {dev.max():.3e}",
                worst_index=(n, worst_k),
                deviation=float(dev.max()),
            )
        coeffs[n] = mean
    # truncated blocks (indices 2k + 2j > 2 n_full) must carry no content
    even = ~odd if odd.any() else np.ones(b.shape, dtype=bool)
    deg = np.add.outer(np.arange(m1), np.arange(m2))
    leftover = np.abs(np.where(even & (deg > 2 * n_full), entries, 0.0))
    if leftover.max() > tol:
        idx = np.unravel_index(int(leftover.argmax()), b.shape)
        raise NotRadialError(
            f"entry {idx} lies in a truncated block with magnitude {leftover.max():.3e}",
            worst_index=idx,
            deviation=float(leftover.max()),
        )
    return CoefficientField(coeffs)


def spherical_average(phi: SampledFunction, n_angles: int) -> SampledFunction:
    """Average of phi over n_angles equispaced rotations (two dimensions).

    The trapezoid rule on the circle is spectrally accurate for smooth phi;
    the result is exactly invariant under the n_angles-fold rotations, so
    averaging twice equals averaging once.
    """
    if phi.dim != 2:
        raise ValueError("spherical_average applies to two-variable functions")
    if n_angles < 8:
        raise ValueError("need at least 8 angles")
    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    cos_t, sin_t = np.cos(angles), np.sin(angles)

    def evaluator(x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        total = np.zeros(np.broadcast(x1, x2).shape, dtype=complex)
        for c, s in zip(cos_t, sin_t):
            total = total + np.asarray(phi(c * x1 - s * x2, s * x1 + c * x2), dtype=complex)
        return total / n_angles

    return SampledFunction(2, evaluator, {"n_angles": n_angles})
