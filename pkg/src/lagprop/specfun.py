"""Stable special-function kernels: Laguerre/Hermite function families,
a modified Bessel function I0 for complex arguments, and Gauss quadrature
rules with "lifted" weights for integration against plain Lebesgue measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = [
    "QuadratureRule",
    "bessel_i0",
    "gauss_rule",
    "hermite_h",
    "laguerre_l",
]

# exp() overflows just past this; used to signal unrepresentable I0 values.
_EXP_MAX = 709.0

# Series/asymptotic split for bessel_i0.  On the imaginary axis the power
# series loses e^{|w|} digits to cancellation, so the radius is capped where
# that loss stays below ~1e-9 (|w|=12 -> eps*e^12 ~ 4e-11); the two-branch
# asymptotic expansion reaches ~1e-11 relative at the same radius.
_I0_SERIES_RADIUS = 12.0


def laguerre_l(n_max: int, x) -> np.ndarray:
    """Orthonormal Laguerre functions l_0 .. l_{n_max} at ``x``.

    Parameters
    ----------
    n_max : int
        Largest index (>= 0).
    x : float or ndarray
        Evaluation points, x >= 0.

    Returns
    -------
    ndarray, shape (n_max + 1,) + shape(x)
        ``out[n]`` is l_n(x) = L_n(x) e^{-x/2}.

    Notes
    -----
    The three-term recurrence

        (n + 1) l_{n+1} = (2n + 1 - x) l_n - n l_{n-1},    l_0 = e^{-x/2},

    is run directly on the exponentially damped functions.  Running it on
    the polynomials L_n and multiplying by e^{-x/2} afterwards overflows for
    x beyond ~700; the damped form instead underflows gracefully to zero far
    outside the oscillatory region.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.exp(-x / 2.0)
    if n_max == 0:
        return out
    out[1] = (1.0 - x) * out[0]
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
    return out


def hermite_h(n_max: int, x) -> np.ndarray:
    """Orthonormal Hermite functions h_0 .. h_{n_max} at ``x``.

    Uses h_0 = pi^{-1/4} e^{-x^2/2} and

        h_{n+1}(x) = x sqrt(2/(n+1)) h_n(x) - sqrt(n/(n+1)) h_{n-1}(x).

    Returns an array of shape (n_max + 1,) + shape(x).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = math.pi ** -0.25 * np.exp(-x * x / 2.0)
    if n_max == 0:
        return out
    out[1] = x * math.sqrt(2.0) * out[0]
    for n in range(1, n_max):
        out[n + 1] = x * math.sqrt(2.0 / (n + 1)) * out[n] - math.sqrt(
            n / (n + 1)
        ) * out[n - 1]
    return out


def _i0_series(z: np.ndarray) -> np.ndarray:
    """Power series sum_n (z/2)^{2n} / (n!)^2, elementwise on complex z."""
    u = z * z / 4.0
    term = np.ones_like(u)
    total = np.ones_like(u)
    for k in range(1, 160):
        term = term * u / (k * k)
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1.0)):
            break
    return total


def _i0_asymptotic(z: np.ndarray) -> np.ndarray:
    """Large-argument expansion of I0, both exponential branches, Re z >= 0.

    I0(z) ~ e^z/sqrt(2 pi z) * sum_k b_k z^{-k}
            + sigma e^{-z}/sqrt(2 pi z) * sum_k (-1)^k b_k z^{-k},

    with b_k = ((2k-1)!!)^2 / (k! 8^k) and sigma = +-i by the sign of Im z.
    Terms are accumulated per element until they stop decreasing.
    """
    s_plus = np.ones_like(z)
    s_minus = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, 80):
        nxt = term * ((2 * k - 1) ** 2) / (8.0 * k) / z
        # freeze elements once the (divergent) series turns around
        active &= np.abs(nxt) < np.abs(term)
        if not active.any():
            break
        term = np.where(active, nxt, 0.0)
        s_plus = s_plus + term
        s_minus = s_minus + term * (-1) ** k
    pref = 1.0 / np.sqrt(2.0 * math.pi * z)
    sigma = np.where(z.imag > 0, 1j, -1j)
    out = pref * (np.exp(z) * s_plus + sigma * np.exp(-z) * s_minus)
    # I0 is real on the real axis; drop the spurious imaginary residue so
    # that I0(conj w) == conj(I0(w)) holds exactly.
    return np.where(z.imag == 0, out.real.astype(complex), out)


def bessel_i0(w):
    """Modified Bessel function I0 of a complex argument.

    Power series for |w| <= 12, two-branch large-argument asymptotics
    beyond; the evenness I0(-w) = I0(w) reduces everything to Re w >= 0.
    Accepts scalars or ndarrays; returns complex with the same shape.

    Raises
    ------
    OverflowError
        If e^{Re w} (after reflection) exceeds the double range, i.e. the
        result itself is not representable.
    """
    w_arr = np.asarray(w, dtype=complex)
    scalar = w_arr.ndim == 0
    z = np.where(w_arr.real < 0, -w_arr, w_arr)
    if np.any(z.real - 0.5 * np.log(2.0 * math.pi * np.maximum(np.abs(z), 1.0)) > _EXP_MAX):
        raise OverflowError("bessel_i0: e^{Re w} exceeds the floating range")
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) <= _I0_SERIES_RADIUS
    if small.any():
        out[small] = _i0_series(z[small])
    big = ~small
    if big.any():
        out[big] = _i0_asymptotic(z[big])
    return complex(out[()]) if scalar else out


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for one of the weights e^{-x} on (0,inf), e^{-x^2} on R,
    or 1 on [a,b].

    ``lifted_weights`` are the weights divided by the weight function at the
    nodes (w_i e^{x_i}, w_i e^{x_i^2}, or w_i), for integrating functions
    that do not carry the classical weight.  Raw ``weights`` underflow to
    zero for laguerre/hermite orders beyond a few hundred (nodes reach the
    e^{-x} ~ 1e-308 range); ``lifted_weights`` stay finite for every order
    up to 512 and are what the expansion routines consume.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    lifted_weights: np.ndarray
    order: int
    interval: tuple[float, float] | None = None


def _scaled_tail(kind: str, n_last: int, x: np.ndarray):
    """Run the damped recurrence up to index ``n_last`` with exponent
    tracking, so huge Laguerre nodes (x ~ 2000, e^{-x/2} underflows) keep
    full relative accuracy.

    Returns (prev, last, log_scale): value_n = mant * e^{log_scale}.
    """
    if kind == "laguerre":
        prev = np.zeros_like(x)
        last = np.ones_like(x)
        log_scale = -x / 2.0
    else:
        prev = np.zeros_like(x)
        last = np.full_like(x, math.pi ** -0.25)
        log_scale = -x * x / 2.0
    for n in range(n_last):
        if kind == "laguerre":
            nxt = ((2 * n + 1 - x) * last - n * prev) / (n + 1)
        else:
            nxt = x * math.sqrt(2.0 / (n + 1)) * last - math.sqrt(n / (n + 1)) * prev
        prev, last = last, nxt
        mag = np.maximum(np.abs(prev), np.abs(last))
        fix = mag > 1e120
        if fix.any():
            prev = np.where(fix, prev * 1e-120, prev)
            last = np.where(fix, last * 1e-120, last)
            log_scale = np.where(fix, log_scale + 120.0 * math.log(10.0), log_scale)
    return prev, last, log_scale


def _polish_nodes(kind: str, order: int, x: np.ndarray) -> np.ndarray:
    """One Newton step on the order-th basis function; scale factors cancel
    in the ratio, so the scaled mantissas are used directly."""
    prev, last, _ = _scaled_tail(kind, order, x)
    if kind == "laguerre":
        deriv = order * (last - prev) / x - last / 2.0
    else:
        deriv = math.sqrt(2.0 * order) * prev - x * last
    step = last / deriv
    return x - step


@lru_cache(maxsize=64)
def _cached_rule(kind: str, order: int, interval: tuple[float, float] | None):
    if kind == "laguerre":
        diag = 2.0 * np.arange(order) + 1.0
        off = np.arange(1.0, order)
        x = eigh_tridiagonal(diag, off, eigvals_only=True)
        x = _polish_nodes(kind, order, x)
        _, tail, log_scale = _scaled_tail(kind, order + 1, x)
        log_lifted = (
            np.log(x) - 2.0 * math.log(order + 1) - 2.0 * np.log(np.abs(tail)) - 2.0 * log_scale
        )
        lifted = np.exp(log_lifted)
        with np.errstate(under="ignore"):
            weights = np.exp(log_lifted - x)
    elif kind == "hermite":
        diag = np.zeros(order)
        off = np.sqrt(np.arange(1.0, order) / 2.0)
        x = eigh_tridiagonal(diag, off, eigvals_only=True)
        if order > 1:
            x = _polish_nodes(kind, order, x)
        x = (x - x[::-1]) / 2.0  # enforce exact +- symmetry
        prev, _, log_scale = _scaled_tail(kind, order, x)
        log_lifted = -math.log(order) - 2.0 * np.log(np.abs(prev)) - 2.0 * log_scale
        lifted = np.exp(log_lifted)
        with np.errstate(under="ignore"):
            weights = np.exp(log_lifted - x * x)
    else:
        a, b = interval
        diag = np.zeros(order)
        k = np.arange(1.0, order)
        off = k / np.sqrt(4.0 * k * k - 1.0)
        x, vecs = eigh_tridiagonal(diag, off)
        w = 2.0 * vecs[0] ** 2
        x = 0.5 * (b - a) * x + 0.5 * (b + a)
        weights = 0.5 * (b - a) * w
        lifted = weights
    for arr in (x, weights, lifted):
        arr.setflags(write=False)
    return QuadratureRule(kind, x, weights, lifted, order, interval)


def gauss_rule(kind: str, order: int, interval: tuple[float, float] = (-1.0, 1.0)) -> QuadratureRule:
    """Gauss quadrature rule from the symmetric tridiagonal Jacobi matrix.

    Parameters
    ----------
    kind : {"laguerre", "hermite", "legendre"}
    order : int
        Number of nodes, 1 <= order <= 512.
    interval : (a, b)
        Only used for ``kind="legendre"``.

    Nodes are the (ascending) eigenvalues of the Jacobi matrix, polished by
    one Newton step on the damped basis functions; weights come from the
    classical closed forms evaluated through the lifted (log-scaled)
    recurrence, which keeps them meaningful where the raw weights underflow.
    """
    if kind not in ("laguerre", "hermite", "legendre"):
        raise ValueError(f"unknown quadrature kind {kind!r}")
    if not 1 <= order <= 512:
        raise ValueError("order must be in [1, 512]")
    key_interval = tuple(float(v) for v in interval) if kind == "legendre" else None
    return _cached_rule(kind, order, key_interval)
