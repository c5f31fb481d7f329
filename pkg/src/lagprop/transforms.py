"""Fractional transforms diagonalized by the Laguerre and Hermite bases,
plus verifiers for the identity chains connecting them.

On Laguerre coefficients the fractional Hankel-Clifford transform of order
(e^{i t_1}, ..., e^{i t_d}) multiplies a_n by prod_j e^{i t_j n_j}; the
choice t_j = pi is the ordinary Hankel-Clifford transform (-1)^{|n|}.  The
same map has a product integral kernel (one unit-modulus kernel factor per
axis) whenever every t_j is nonzero mod 2 pi.  The fractional Hankel
transform acts on even one-variable functions by phasing the Laguerre
coefficients of g(sqrt(.)), and the fractional Fourier transform acts on
Hermite coefficients by b_n -> e^{-i pi rho |n| / 2} b_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffspace import CoefficientField
from .expand import (
    SampledFunction,
    hermite_analyze,
    hermite_synthesize,
    laguerre_analyze,
    laguerre_synthesize,
)
from .propagate import KernelParams, kernel_apply
from .radial import check_radial

__all__ = [
    "FracOrder",
    "Frac1Report",
    "Frac3Report",
    "default_probes",
    "frac_fourier",
    "frac_hankel",
    "hankel_clifford_frac",
    "hankel_clifford_kernel",
    "verify_frac1",
    "verify_frac3",
]


def default_probes(n: int = 20, lo: float = 0.05, hi: float = 10.0) -> np.ndarray:
    """Log-spaced probe abscissae used by the identity verifiers."""
    return np.geomspace(lo, hi, n)


@dataclass(frozen=True)
class FracOrder:
    """Per-axis phases t_j defining the order (e^{i t_1}, ..., e^{i t_d})."""

    phases: tuple[float, ...]

    def __init__(self, phases):
        if np.isscalar(phases):
            phases = (float(phases),)
        object.__setattr__(self, "phases", tuple(float(t) for t in phases))
        if not 1 <= len(self.phases) <= 3:
            raise ValueError("dim must be 1..3")

    @property
    def dim(self) -> int:
        return len(self.phases)

    def axis_nonzero(self) -> list[bool]:
        return [abs(math.remainder(t, 2.0 * math.pi)) > 1e-12 for t in self.phases]


def hankel_clifford_frac(order: FracOrder, c: CoefficientField) -> CoefficientField:
    """Multiplier form: a_n -> prod_j e^{i t_j n_j} a_n."""
    if order.dim != c.dim:
        raise ValueError("order and field dims differ")
    grids = np.indices(c.shape)
    phase = np.zeros(c.shape)
    for t, g in zip(order.phases, grids):
        phase = phase + t * g
    return CoefficientField(np.exp(1j * phase) * c.entries, mask=c.mask)


def hankel_clifford_kernel(
    order: FracOrder, f: SampledFunction, quad_order: int = 200
) -> SampledFunction:
    """Kernel form: the d-fold product-kernel integral with w_j = e^{i t_j}.

    Every axis phase must be nonzero mod 2 pi (w_j = 1 degenerates the
    kernel factor).  The result carries the oscillatory-accuracy flag of
    the underlying unit-modulus kernel quadrature.
    """
    if order.dim != f.dim:
        raise ValueError("order and function dims differ")
    if not all(order.axis_nonzero()):
        raise ValueError("kernel form needs t_j != 0 (mod 2 pi) on every axis")
    ws = [complex(np.exp(1j * t)) for t in order.phases]
    if order.dim == 1:
        return kernel_apply(KernelParams(ws[0], 1), f, quad_order)
    # apply one axis at a time; each pass integrates out a single variable
    current = f
    for axis, w in enumerate(ws):
        current = _kernel_one_axis(w, current, axis, order.dim, quad_order)
    current.meta["oscillatory"] = True
    return current


def _kernel_one_axis(w, f, axis, dim, quad_order):
    from .propagate import kernel_eval_1d
    from .specfun import gauss_rule

    rule = gauss_rule("laguerre", quad_order)

    def evaluator(*coords):
        coords = [np.asarray(ci, dtype=float) for ci in coords]
        bshape = np.broadcast(*coords).shape
        flat = [np.broadcast_to(ci, bshape).ravel() for ci in coords]
        out = np.empty(flat[0].size, dtype=complex)
        for i in range(flat[0].size):
            args = []
            for j in range(dim):
                args.append(np.full_like(rule.nodes, flat[j][i]) if j != axis else rule.nodes)
            fvals = np.asarray(f(*args), dtype=complex)
            kern = kernel_eval_1d(w, float(flat[axis][i]), rule.nodes)
            out[i] = np.sum(rule.lifted_weights * fvals * kern)
        return out.reshape(bshape) if bshape else out[0]

    return SampledFunction(dim, evaluator, dict(f.meta))


def frac_hankel(
    t: float, g: SampledFunction, shape: int, quad_order: int | None = None
) -> SampledFunction:
    """Fractional Hankel transform of an even one-variable function.

    With f(x) = g(sqrt(x)) expanded as sum a_n l_n, the transform is

        x -> sum_n a_n e^{i n t} l_n(x^2),

    2 pi periodic in t, the identity at t = 0, and it reduces to the
    Hankel-Clifford transform composed with the square substitution at
    t = pi.
    """
    from .radial import sqrt_substitution

    f = sqrt_substitution(g)  # checks evenness
    a = laguerre_analyze(f, shape, quad_order)
    phased = hankel_clifford_frac(FracOrder(t), a)

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        return laguerre_synthesize(phased, (x * x).ravel()).reshape(x.shape) if x.ndim else laguerre_synthesize(phased, x * x)

    return SampledFunction(1, evaluator, {"order_phase": float(t), "modes": shape})


def frac_fourier(rho: float, c: CoefficientField) -> CoefficientField:
    """Fractional Fourier transform on Hermite coefficients.

    b_n -> e^{-i pi rho |n| / 2} b_n; period 4 in rho, with rho = 1 the
    unitary Fourier transform (phases (-i)^{|n|}).
    """
    phase = np.exp(-0.5j * math.pi * rho * c.total_degree())
    return CoefficientField(phase * c.entries, mask=c.mask)


@dataclass(frozen=True)
class Frac1Report:
    err_multiplier: float
    err_kernel: float | None
    max_abs_error: float


def verify_frac1(
    g: SampledFunction,
    t: float,
    shape: int,
    quad_order: int | None = None,
    probes: np.ndarray | None = None,
) -> Frac1Report:
    """Check the chain: fractional Hankel of g at x, the diagonal Laguerre
    exponential of f = g(sqrt(.)) at x^2, and the integral-kernel transform
    of f at x^2 all agree.

    The probe abscissae are x = sqrt(s) with s log-spaced in (0.05, 10), so
    the Laguerre-side evaluations happen on the default probe grid.  The
    kernel leg is skipped (err_kernel None) when t = 0 mod 2 pi, where the
    kernel degenerates but both multiplier legs are the identity.
    """
    from .propagate import PropagatorSpec, apply_exp
    from .radial import sqrt_substitution

    s_vals = default_probes() if probes is None else np.asarray(probes, dtype=float)
    x_vals = np.sqrt(s_vals)

    leg_hankel = frac_hankel(t, g, shape, quad_order)(x_vals)

    f = sqrt_substitution(g)
    a = laguerre_analyze(f, shape, quad_order)
    diag = apply_exp(PropagatorSpec(rho=1.0, c=0.0, r=1.0, z=1j * t), a)
    leg_diag = laguerre_synthesize(diag, s_vals)

    err_multiplier = float(np.abs(leg_hankel - leg_diag).max())

    err_kernel = None
    if FracOrder(t).axis_nonzero()[0]:
        image = hankel_clifford_kernel(FracOrder(t), f, quad_order or 256)
        leg_kernel = image(s_vals)
        err_kernel = float(
            max(np.abs(leg_kernel - leg_diag).max(), np.abs(leg_kernel - leg_hankel).max())
        )
    max_err = max(err_multiplier, err_kernel or 0.0)
    return Frac1Report(err_multiplier, err_kernel, max_err)


@dataclass(frozen=True)
class Frac3Report:
    max_abs_error: float
    radial_defect: float


def verify_frac3(
    g_radial: SampledFunction,
    rho: float,
    shape: int,
    quad_order: int | None = None,
    n_probes: int = 20,
) -> Frac3Report:
    """Check that the fractional Fourier transform of a radial function on
    R^2 equals the phased Laguerre expansion of its profile evaluated at
    x1^2 + x2^2.

    Left leg: two-dimensional Hermite analysis of g~, the diagonal phases
    e^{-i pi rho |m|/2}, Hermite synthesis at probe points.  Right leg: the
    profile f(x) = g~(sqrt(x), 0) analyzed in the Laguerre basis, phased by
    e^{-i pi rho n}, synthesized at x1^2 + x2^2.  Probes sit on a spiral
    with radii log-spaced in (0.2, 3).
    """
    defect = check_radial(g_radial)

    radii = np.geomspace(0.2, 3.0, n_probes)
    angles = 2.0 * math.pi * np.arange(n_probes) / n_probes
    pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])

    herm_shape = 2 * shape - 1
    b = hermite_analyze(g_radial, (herm_shape, herm_shape))
    left = hermite_synthesize(frac_fourier(rho, b), pts)

    profile = SampledFunction(1, lambda x: g_radial(np.sqrt(np.asarray(x, float)), np.zeros_like(np.asarray(x, float))))
    a = laguerre_analyze(profile, shape, quad_order)
    phased = hankel_clifford_frac(FracOrder(-math.pi * rho), a)
    right = laguerre_synthesize(phased, pts[:, 0] ** 2 + pts[:, 1] ** 2)

    return Frac3Report(float(np.abs(left - right).max()), defect)
