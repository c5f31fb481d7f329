"""Spectral toolbox for the Laguerre operator: expansions, propagators,
closed-form kernels, fractional Hankel/Fourier transforms, the radial
Laguerre-Hermite bridge, and a diagonal Cauchy solver."""

from .specfun import QuadratureRule, bessel_i0, gauss_rule, hermite_h, laguerre_l

__all__ = [
    "QuadratureRule",
    "bessel_i0",
    "gauss_rule",
    "hermite_h",
    "laguerre_l",
]
