"""Analysis (function -> coefficients) and synthesis (coefficients -> point
values) in the Laguerre basis on the positive orthant and the Hermite basis
on R^d, for d <= 3.

Analysis integrates f * basis_n against plain Lebesgue measure with the
lifted Gauss weights from :mod:`lagprop.specfun`; the classical weight is
already inside the basis functions, so the quadrature stays overflow-free
out to the largest nodes.  Synthesis uses Clenshaw accumulation of the
three-term recurrences, one axis at a time, with fixed summation order so
results are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .coeffspace import CoefficientField
from .specfun import gauss_rule, hermite_h, laguerre_l

__all__ = [
    "EvaluationError",
    "SampledFunction",
    "default_quad_order",
    "hermite_analyze",
    "hermite_synthesize",
    "laguerre_analyze",
    "laguerre_synthesize",
]

MAX_DIM = 3


class EvaluationError(ValueError):
    """The black-box evaluator returned a non-finite value at a node."""


@dataclass
class SampledFunction:
    """A black-box function of d variables.

    ``evaluator`` receives d coordinate arrays (numpy broadcasting style,
    as in ``lambda x, y: np.exp(-(x + y) / 2)``) and must return finite
    values elementwise.  ``meta`` carries diagnostics such as oscillatory-
    accuracy or quadrature-convergence flags set by kernel routines.
    """

    dim: int
    evaluator: Callable
    meta: dict = field(default_factory=dict)

    def __call__(self, *coords):
        return self.evaluator(*coords)


def default_quad_order(shape) -> int:
    return 2 * int(np.max(shape)) + 16


def _normalize_shape(shape, dim=None):
    shape = (int(shape),) if np.isscalar(shape) else tuple(int(s) for s in shape)
    if dim is not None and len(shape) != dim:
        raise ValueError(f"shape has {len(shape)} axes but the function has dim {dim}")
    if len(shape) > MAX_DIM:
        raise ValueError(f"dim is capped at {MAX_DIM}")
    return shape


_EINSUM = {1: "ai,i->a", 2: "ai,bj,ij->ab", 3: "ai,bj,ck,ijk->abc"}


def _analyze(kind: str, f: SampledFunction, shape, quad_order) -> CoefficientField:
    shape = _normalize_shape(shape, f.dim)
    if any(s == 0 for s in shape):
        return CoefficientField(np.zeros(shape, dtype=complex))
    if quad_order is None:
        quad_order = default_quad_order(shape)
    if quad_order < 2 * max(shape):
        raise ValueError("quad_order must be at least 2*max(shape)")
    rule = gauss_rule(kind, quad_order)
    basis = laguerre_l if kind == "laguerre" else hermite_h
    table = basis(max(shape) - 1, rule.nodes)
    grids = np.meshgrid(*([rule.nodes] * len(shape)), indexing="ij")
    values = np.asarray(f(*grids), dtype=complex)
    if values.shape != grids[0].shape:
        values = np.broadcast_to(values, grids[0].shape)
    if not np.all(np.isfinite(values)):
        raise EvaluationError("evaluator returned a non-finite value at a quadrature node")
    mats = [rule.lifted_weights * table[:n, :] for n in shape]
    entries = np.einsum(_EINSUM[len(shape)], *mats, values)
    return CoefficientField(entries)


def laguerre_analyze(f: SampledFunction, shape, quad_order: int | None = None) -> CoefficientField:
    """Laguerre coefficients a_n = int f(x) l_n(x) dx, tensorized per axis.

    Exact (to ~1e-10 relative) whenever f is polynomial * e^{-|x|_1/2} with
    polynomial degree < quad_order - max(shape) per axis.
    """
    return _analyze("laguerre", f, shape, quad_order)


def hermite_analyze(f: SampledFunction, shape, quad_order: int | None = None) -> CoefficientField:
    """Hermite coefficients b_n = int f(x) h_n(x) dx, tensorized per axis."""
    return _analyze("hermite", f, shape, quad_order)


def _clenshaw_laguerre(coeffs: np.ndarray, x: float) -> np.ndarray:
    """Contract the last axis of ``coeffs`` with (l_0(x), ..., l_{N-1}(x))."""
    n_modes = coeffs.shape[-1]
    b1 = np.zeros(coeffs.shape[:-1], dtype=complex)
    b2 = np.zeros_like(b1)
    for k in range(n_modes - 1, -1, -1):
        a_k = (2 * k + 1 - x) / (k + 1)  # l_{k+1} = a_k l_k + b_... with b_{k+1} = -(k+1)/(k+2)
        b1, b2 = coeffs[..., k] + a_k * b1 - ((k + 1) / (k + 2)) * b2, b1
    return b1 * np.exp(-x / 2.0)


def _clenshaw_hermite(coeffs: np.ndarray, x: float) -> np.ndarray:
    n_modes = coeffs.shape[-1]
    b1 = np.zeros(coeffs.shape[:-1], dtype=complex)
    b2 = np.zeros_like(b1)
    for k in range(n_modes - 1, -1, -1):
        a_k = x * np.sqrt(2.0 / (k + 1))
        b1, b2 = coeffs[..., k] + a_k * b1 - np.sqrt((k + 1) / (k + 2)) * b2, b1
    return b1 * (np.pi**-0.25) * np.exp(-x * x / 2.0)


def _synthesize(clenshaw, c: CoefficientField, points):
    pts = np.asarray(points, dtype=float)
    scalar = False
    if c.dim == 1:
        if pts.ndim == 0:
            pts, scalar = pts[None], True
        pts = pts.reshape(-1, 1)
    else:
        if pts.ndim == 1:
            pts, scalar = pts[None, :], True
        if pts.ndim != 2 or pts.shape[1] != c.dim:
            raise ValueError(f"points must have shape (m, {c.dim})")
    out = np.empty(len(pts), dtype=complex)
    entries = c.unmasked()
    for i, p in enumerate(pts):
        tmp = entries
        for j in range(c.dim - 1, -1, -1):
            tmp = clenshaw(tmp, float(p[j]))
        out[i] = tmp
    return out[0] if scalar else out


def laguerre_synthesize(c: CoefficientField, points):
    """Evaluate sum_n a_n prod_j l_{n_j}(x_j) at the given points.

    ``points`` is a scalar or 1-D array for d=1, else an (m, d) array; the
    return matches (complex scalar or (m,) array).
    """
    return _synthesize(_clenshaw_laguerre, c, points)


def hermite_synthesize(c: CoefficientField, points):
    """Evaluate sum_n b_n prod_j h_{n_j}(x_j) at the given points."""
    return _synthesize(_clenshaw_hermite, c, points)
