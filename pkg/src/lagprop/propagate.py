"""Diagonal operators built from the Laguerre-operator symbol, the
closed-form integral kernel of the propagator, a Hille-Hardy verifier, and
the continuity-verdict table for the exponential family.

The diagonal family acts on coefficient fields by

    apply_power:  a_n -> (rho |n| + c)^r a_n        (principal branch)
    apply_exp:    a_n -> e^{z (rho |n| + c)^r} a_n

and, with w = e^z, |w| <= 1, w != 1, the same exponential map has the
integral kernel

    K_z(x, y) = (1-w)^{-d} prod_j exp(-(1+w)(x_j+y_j) / (2(1-w)))
                          * I0(2 sqrt(x_j y_j w) / (1-w)),

whose one-dimensional form is the Hille-Hardy closed sum of
sum_n l_n(x) l_n(y) w^n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coeffspace import CoefficientField
from .expand import SampledFunction
from .specfun import bessel_i0, gauss_rule, laguerre_l

__all__ = [
    "HilleHardyResult",
    "IllposednessReport",
    "KernelParams",
    "PropagatorSpec",
    "PropagatorVerdict",
    "SingularSymbolError",
    "apply_exp",
    "apply_power",
    "classify_propagator",
    "demonstrate_illposedness",
    "hille_hardy_check",
    "kernel_apply",
    "kernel_eval",
]

OVERFLOW_EXPONENT = 700.0  # modes with Re(z * symbol) beyond this get masked


class SingularSymbolError(ValueError):
    """Negative power requested while some eigenvalue rho|n|+c vanishes."""


def _is_nonneg_integer(value: complex, tol: float = 1e-12) -> bool:
    if abs(value.imag) > tol:
        return False
    return value.real > -tol and abs(value.real - round(value.real)) <= tol


@dataclass(frozen=True)
class PropagatorSpec:
    """Parameters (rho, c, r, z) of the diagonal family.

    The symbol on mode n is (rho |n| + c)^r with the principal branch and
    0^r = 0 for r > 0; for r < 0 the family requires -c/rho not to be a
    nonnegative integer, so no eigenvalue vanishes.
    """

    rho: complex = 1.0
    c: complex = 0.0
    r: float = 1.0
    z: complex = 0.0

    def __post_init__(self):
        if self.rho == 0:
            raise ValueError("rho must be nonzero")
        if self.r < 0 and _is_nonneg_integer(complex(self.c) / -complex(self.rho)):
            raise SingularSymbolError(
                f"r={self.r} < 0 with -c/rho = {complex(self.c)/-complex(self.rho)} in N0"
            )

    def symbol(self, degrees: np.ndarray) -> np.ndarray:
        """(rho |n| + c)^r over an array of total degrees |n|."""
        base = complex(self.rho) * degrees.astype(complex) + complex(self.c)
        if self.r == 1.0:
            return base
        if self.r < 0 and np.any(np.abs(base) < 1e-14):
            raise SingularSymbolError("vanishing eigenvalue under a negative power")
        out = np.zeros_like(base)
        nz = base != 0
        out[nz] = base[nz] ** self.r
        return out


def apply_power(spec: PropagatorSpec, c: CoefficientField) -> CoefficientField:
    """a_n -> (rho |n| + c)^r a_n (spec.z is not used)."""
    lam = spec.symbol(c.total_degree())
    return CoefficientField(lam * c.entries, mask=c.mask)


def apply_exp(spec: PropagatorSpec, c: CoefficientField) -> CoefficientField:
    """a_n -> e^{z (rho |n| + c)^r} a_n.

    Modes with Re(z * symbol) > 700 are flagged in the result's ``mask``
    (the entries are still computed, so divergence demonstrations can run
    to completion); masked entries are excluded from norms.
    """
    lam = spec.symbol(c.total_degree())
    exponent = complex(spec.z) * lam
    over = exponent.real > OVERFLOW_EXPONENT
    with np.errstate(over="ignore", invalid="ignore"):
        entries = np.exp(exponent) * c.entries
    mask = None
    if over.any() or c.mask is not None:
        mask = over if c.mask is None else (over | c.mask)
    return CoefficientField(entries, mask=mask)


@dataclass(frozen=True)
class KernelParams:
    """Kernel-side parameters: w = e^z on the closed unit disk, w != 1.

    z with e^z = 1 (z in 2 pi i Z) is rejected here even though the
    diagonal map is the identity there; use the multiplier path for it.
    """

    w: complex
    dim: int = 1

    def __post_init__(self):
        if abs(self.w) > 1.0 + 1e-12:
            raise ValueError(f"|w| must be <= 1, got {abs(self.w)}")
        if abs(1.0 - self.w) <= 1e-12:
            raise ValueError("w too close to 1; the kernel degenerates")
        if not 1 <= self.dim <= 3:
            raise ValueError("dim must be 1..3")


def kernel_eval_1d(w: complex, x, y):
    """One-axis kernel (1-w)^{-1} e^{-(1+w)(x+y)/(2(1-w))} I0(2 sqrt(xyw)/(1-w)).

    x, y broadcast elementwise; the square root is the principal branch.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    one_minus = 1.0 - w
    pref = np.exp(-0.5 * (1.0 + w) / one_minus * (x + y))
    arg = 2.0 * np.sqrt(x * y * w) / one_minus
    return pref * bessel_i0(arg) / one_minus


def kernel_eval(kp: KernelParams, x, y) -> complex:
    """Closed-form kernel K_z(x, y) at single points of the positive orthant."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != (kp.dim,) or y.shape != (kp.dim,):
        raise ValueError(f"x and y must have {kp.dim} components")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("kernel is defined for x, y > 0 componentwise")
    val = 1.0 + 0.0j
    for j in range(kp.dim):
        val *= complex(kernel_eval_1d(kp.w, x[j], y[j]))
    return val


def _kernel_quad_axis(w: complex, fvals: np.ndarray, nodes, lifted, x):
    """Integrate fvals (sampled on nodes) against the 1-axis kernel at x."""
    return np.sum(lifted * fvals * kernel_eval_1d(w, x, nodes))


def kernel_apply(
    kp: KernelParams,
    f: SampledFunction,
    quad_order: int = 200,
    convergence_probes=None,
) -> SampledFunction:
    """x -> int f(y) K_z(x, y) dy by lifted Gauss-Laguerre per axis.

    The returned function carries ``meta['oscillatory'] = True`` when
    |w| = 1 (the integrand only oscillates into convergence there, so the
    quadrature accuracy is not guaranteed), and ``meta['converged']`` from
    an order-doubling check at a few probe points: it is set False when
    doubling quad_order moves the result by more than 1e-4 relative.
    """
    if f.dim != kp.dim:
        raise ValueError("function dim does not match kernel dim")
    w = kp.w

    def sample(order: int):
        rule = gauss_rule("laguerre", order)
        grids = np.meshgrid(*([rule.nodes] * kp.dim), indexing="ij")
        return rule, np.asarray(f(*grids), dtype=complex)

    def apply_at(rule, fvals, points: np.ndarray) -> np.ndarray:
        out = np.empty(len(points), dtype=complex)
        for i, p in enumerate(points):
            tmp = fvals
            for j in range(kp.dim - 1, -1, -1):
                kern = kernel_eval_1d(w, float(p[j]), rule.nodes)
                tmp = np.tensordot(tmp, rule.lifted_weights * kern, axes=([-1], [0]))
            out[i] = tmp
        return out

    rule0, fvals0 = sample(quad_order)
    meta = {"oscillatory": bool(abs(abs(w) - 1.0) < 1e-12), "quad_order": quad_order}
    if convergence_probes is None:
        convergence_probes = np.full((3, kp.dim), 1.0) * np.array([[0.5], [2.0], [7.0]])
    probes = np.atleast_2d(np.asarray(convergence_probes, dtype=float))
    coarse = apply_at(rule0, fvals0, probes)
    fine = apply_at(*sample(min(2 * quad_order, 512)), probes)
    scale = max(float(np.abs(fine).max()), 1e-30)
    drift = float(np.abs(fine - coarse).max()) / scale
    meta["convergence_drift"] = drift
    meta["converged"] = drift <= 1e-4

    def evaluator(*coords):
        coords = [np.asarray(ci, dtype=float) for ci in coords]
        if len(coords) != kp.dim:
            raise ValueError(f"expected {kp.dim} coordinate arrays")
        bshape = np.broadcast(*coords).shape
        pts = np.column_stack(
            [np.broadcast_to(ci, bshape).ravel() for ci in coords]
        ) if bshape else np.array([[float(ci) for ci in coords]])
        vals = apply_at(rule0, fvals0, pts)
        return vals.reshape(bshape) if bshape else vals[0]

    return SampledFunction(kp.dim, evaluator, meta)


@dataclass(frozen=True)
class HilleHardyResult:
    series: complex
    closed: complex
    abs_err: float


def hille_hardy_check(w: complex, x: float, y: float, N: int) -> HilleHardyResult:
    """Truncated sum_{n<=N} l_n(x) l_n(y) w^n against the closed form."""
    if abs(w) > 0.999:
        raise ValueError("|w| must be <= 0.999 so the series converges usably")
    lx = laguerre_l(N, float(x))
    ly = laguerre_l(N, float(y))
    powers = np.power(complex(w), np.arange(N + 1))
    series = complex(np.sum(lx * ly * powers))
    closed = complex(kernel_eval_1d(w, x, y))
    return HilleHardyResult(series, closed, abs(series - closed))


@dataclass(frozen=True)
class PropagatorVerdict:
    verdict: str  # isomorphism | injection_not_surjection | discontinuous
    boundary: bool
    alpha: float
    r: float
    kind: str


def classify_propagator(
    z: complex, r: float, c: complex, alpha: float, kind: str
) -> PropagatorVerdict:
    """Continuity verdict for e^{z E^r_c} on the alpha-indexed classes.

    Re z = 0: isomorphism for every alpha.  Re z != 0: isomorphism while
    alpha is below the critical value 1/r (strictly below for the Roumieu
    quantifier, up to and including it for Beurling); above it the decaying
    direction Re z < 0 is a continuous injection that is not onto, and the
    growing direction Re z > 0 is discontinuous.  alpha exactly at 1/r is
    flagged as a boundary case.
    """
    if z == 0:
        raise ValueError("z must be nonzero")
    if r <= 0 or alpha <= 0:
        raise ValueError("r and alpha must be positive")
    if kind not in ("roumieu", "beurling"):
        raise ValueError("kind must be 'roumieu' or 'beurling'")
    boundary = abs(alpha * r - 1.0) < 1e-12
    if z.real == 0:
        return PropagatorVerdict("isomorphism", boundary, alpha, r, kind)
    # at the critical index the Beurling quantifier still gives isomorphism,
    # the Roumieu one does not; away from it the two agree
    below = (kind == "beurling") if boundary else alpha < 1.0 / r
    if below:
        return PropagatorVerdict("isomorphism", boundary, alpha, r, kind)
    if z.real < 0:
        return PropagatorVerdict("injection_not_surjection", boundary, alpha, r, kind)
    return PropagatorVerdict("discontinuous", boundary, alpha, r, kind)


@dataclass(frozen=True)
class IllposednessReport:
    z: complex
    alpha: float
    checkpoints: tuple
    partial_sups: tuple
    ratio: float  # S(N) / S(N/4)
    strictly_increasing: bool


def demonstrate_illposedness(z: complex, alpha: float, N: int) -> IllposednessReport:
    """Divergence witness for Re z > 0 above the critical index.

    Uses the explicit sequence a_n = e^{-(1+n)^(1/alpha)} and reports the
    partial sups

        S(M) = max_{n <= M} |e^{z n} a_n| e^{-h n^(1/(2 alpha))},  h = 1,

    at M = N/4, N/2, N.  The weight is the dual sequence-space weight
    1/theta_{h,alpha}(n); an unbounded propagated sequence makes S blow up
    through the checkpoints, while phases (Re z = 0) or sub-critical decay
    leave it flat.
    """
    if N < 100:
        raise ValueError("N must be at least 100")
    n = np.arange(N + 1, dtype=float)
    log_a = -((1.0 + n) ** (1.0 / alpha))
    log_weighted = complex(z).real * n + log_a - n ** (1.0 / (2.0 * alpha))
    checkpoints = (N // 4, N // 2, N)
    sups = tuple(float(np.exp(np.max(log_weighted[: m + 1]))) for m in checkpoints)
    ratio = sups[2] / sups[0]
    increasing = sups[0] < sups[1] < sups[2]
    return IllposednessReport(z, alpha, checkpoints, sups, ratio, increasing)
