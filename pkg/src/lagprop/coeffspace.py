"""Coefficient containers over multi-indices, weighted sequence norms, and
tail-growth classification.

A finite truncation stands in for the infinite expansions throughout, and
the classifier is a tail heuristic, not a proof: it fits

    log|a_n| ~ log C - h |n|^(1/alpha)

over the tail half of the nonzero entries and maps the fitted rate h to a
space kind.  Decay (h > 0) points at the Roumieu-type function classes with
that alpha, growth (h < 0) at their duals; polynomially bounded tails are
"tempered".  Beurling-vs-Roumieu is a quantifier over all rates h and has no
finite-truncation test, so ``beurling`` / ``dual_beurling`` (and likewise
``schwartz``) exist as kinds a caller may assert but are never auto-detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CoefficientField",
    "DegenerateFitError",
    "GrowthProfile",
    "classify",
    "fit_growth",
    "s_norm",
    "theta_norm",
]

RESIDUAL_THRESHOLD = 0.5  # log units; worse fits classify as "unclassified"


class DegenerateFitError(ValueError):
    """Raised when a growth fit has no usable tail data."""


@dataclass(frozen=True)
class CoefficientField:
    """Complex coefficients a_n over multi-indices n in prod [0, N_j).

    The flattened order is row-major (C order), which fixes the
    flat-index <-> multi-index bijection.  ``mask``, when present, marks
    per-mode overflow; masked entries are excluded from norms.
    """

    entries: np.ndarray
    mask: np.ndarray | None = None

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim < 1 or arr.ndim > 3:
            raise ValueError("dim must be between 1 and 3")
        object.__setattr__(self, "entries", arr)
        if self.mask is not None:
            m = np.asarray(self.mask, dtype=bool)
            if m.shape != arr.shape:
                raise ValueError("mask shape must match entries")
            object.__setattr__(self, "mask", m)
        elif not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")

    @property
    def dim(self) -> int:
        return self.entries.ndim

    @property
    def shape(self) -> tuple[int, ...]:
        return self.entries.shape

    @classmethod
    def delta(cls, index, shape) -> "CoefficientField":
        """Unit coefficient at one multi-index, zeros elsewhere."""
        shape = (shape,) if np.isscalar(shape) else tuple(shape)
        index = (index,) if np.isscalar(index) else tuple(index)
        entries = np.zeros(shape, dtype=complex)
        entries[index] = 1.0
        return cls(entries)

    def total_degree(self) -> np.ndarray:
        """|n| = n_1 + ... + n_d for every entry, same shape as entries."""
        return np.indices(self.shape).sum(axis=0)

    def unmasked(self) -> np.ndarray:
        if self.mask is None:
            return self.entries
        return np.where(self.mask, 0.0, self.entries)

    def l2_norm(self) -> float:
        mags = np.abs(self.unmasked().ravel())
        peak = mags.max() if mags.size else 0.0
        if peak == 0.0:
            return 0.0
        return float(peak * np.sqrt(((mags / peak) ** 2).sum()))

    def multi_indices(self):
        """Row-major list of multi-indices matching entries.ravel()."""
        return list(np.ndindex(*self.shape))


def s_norm(c: CoefficientField, N: int) -> float:
    """sup_n |a_n| <n>^N with <n> = (1 + |n|^2)^(1/2)."""
    bracket = np.sqrt(1.0 + c.total_degree().astype(float) ** 2)
    return float(np.max(np.abs(c.unmasked()) * bracket**N))


def theta_norm(c: CoefficientField, p, r: float, alpha: float) -> float:
    """l^p norm of |a_n| e^{r |n|^(1/(2 alpha))}, p in {1, 2, inf}."""
    if r <= 0 or alpha <= 0:
        raise ValueError("r and alpha must be positive")
    weight = np.exp(r * c.total_degree().astype(float) ** (1.0 / (2.0 * alpha)))
    vals = np.abs(c.unmasked()).ravel() * weight.ravel()
    if p == 1:
        return float(vals.sum())
    if p == 2:
        peak = vals.max()
        if peak == 0.0:
            return 0.0
        return float(peak * np.sqrt(((vals / peak) ** 2).sum()))
    if p in (np.inf, "inf", float("inf")):
        return float(vals.max())
    raise ValueError("p must be 1, 2, or inf")


def _tail_data(c: CoefficientField):
    """(|n|, log|a_n|) over the tail half of the nonzero entries."""
    degrees = c.total_degree().ravel().astype(float)
    mags = np.abs(c.unmasked().ravel())
    keep = mags > 0
    if keep.sum() < 16:
        raise DegenerateFitError("need at least 16 nonzero entries to fit a tail")
    degrees, mags = degrees[keep], mags[keep]
    order = np.argsort(degrees, kind="stable")
    degrees, mags = degrees[order], mags[order]
    half = len(degrees) // 2
    return degrees[half:], np.log(mags[half:])


def _least_squares_line(x: np.ndarray, y: np.ndarray):
    """Fit y ~ intercept + slope * x; returns (slope, intercept, rms residual)."""
    if np.ptp(x) == 0:
        raise DegenerateFitError("tail degrees are constant; fit is singular")
    design = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return float(coef[0]), float(coef[1]), float(np.sqrt(np.mean(resid**2)))


def fit_growth(c: CoefficientField, alpha: float):
    """Least-squares fit log|a_n| ~ log C - h |n|^(1/alpha) over the tail.

    Returns (h, C, residual).  h > 0 means decay at the alpha scale
    (Roumieu-compatible), h < 0 growth (dual-side); residual is the RMS
    misfit in log units.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    degrees, logmag = _tail_data(c)
    slope, intercept, resid = _least_squares_line(degrees ** (1.0 / alpha), logmag)
    return -slope, float(np.exp(intercept)), resid


@dataclass(frozen=True)
class GrowthProfile:
    """Fitted tail profile of a coefficient sequence.

    kind is one of schwartz | tempered | roumieu | beurling | dual_roumieu
    | dual_beurling | unclassified; alpha/h/C describe the stretched-
    exponential model, residual its RMS misfit in log units.
    """

    kind: str
    alpha: float | None
    h: float
    C: float
    residual: float

    def __post_init__(self):
        if self.kind in ("roumieu", "beurling") and not self.h > 0:
            raise ValueError(f"{self.kind} requires h > 0, got {self.h}")


def classify(c: CoefficientField, alpha: float, tol: float = 1e-3) -> GrowthProfile:
    """Classify the tail of ``c`` at the given alpha scale.

    Polynomially bounded tails (the power-law model log|a_n| ~ log C +
    N log<n> explains the tail at least as well as the stretched
    exponential) are tempered; otherwise h >= tol is roumieu(alpha),
    h <= -tol is dual_roumieu(alpha).  Fits worse than 0.5 log units, or
    small-|h| tails that are not polynomial, come back unclassified.
    """
    h, C, resid = fit_growth(c, alpha)
    degrees, logmag = _tail_data(c)
    log_bracket = 0.5 * np.log1p(degrees**2)
    try:
        _, _, resid_poly = _least_squares_line(log_bracket, logmag)
    except DegenerateFitError:
        resid_poly = np.inf
    if resid_poly <= RESIDUAL_THRESHOLD and resid_poly <= resid + 1e-12:
        return GrowthProfile("tempered", None, h, C, resid_poly)
    if resid <= RESIDUAL_THRESHOLD:
        if h >= tol:
            return GrowthProfile("roumieu", alpha, h, C, resid)
        if h <= -tol:
            return GrowthProfile("dual_roumieu", alpha, h, C, resid)
        if resid_poly <= RESIDUAL_THRESHOLD:
            return GrowthProfile("tempered", None, h, C, resid_poly)
    return GrowthProfile("unclassified", alpha, h, C, resid)
