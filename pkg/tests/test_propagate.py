import cmath
import math

import numpy as np
import pytest

from lagprop.coeffspace import CoefficientField
from lagprop.expand import SampledFunction, laguerre_analyze, laguerre_synthesize
from lagprop.propagate import (
    KernelParams,
    PropagatorSpec,
    SingularSymbolError,
    apply_exp,
    apply_power,
    classify_propagator,
    demonstrate_illposedness,
    hille_hardy_check,
    kernel_apply,
    kernel_eval,
)
from lagprop.specfun import laguerre_l


def random_field(n_modes, seed=0, dim=1):
    rng = np.random.default_rng(seed)
    shape = (n_modes,) * dim
    return CoefficientField(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


class TestApplyPower:
    def test_plain_laguerre_eigenvalues(self):
        c = CoefficientField.delta(5, 8)
        out = apply_power(PropagatorSpec(rho=1, c=0, r=1), c)
        assert out.entries[5] == 5.0

    def test_shifted_square(self):
        c = CoefficientField.delta(2, 6)
        out = apply_power(PropagatorSpec(rho=1, c=1, r=2), c)
        assert out.entries[2] == pytest.approx(9.0)

    def test_negative_power_with_vanishing_eigenvalue(self):
        with pytest.raises(SingularSymbolError):
            apply_power(PropagatorSpec(rho=1, c=0, r=-1), CoefficientField.delta(1, 4))

    def test_negative_power_valid(self):
        out = apply_power(PropagatorSpec(rho=1, c=0.5, r=-1), CoefficientField.delta(3, 6))
        assert out.entries[3] == pytest.approx(1 / 3.5)

    def test_principal_branch(self):
        # rho|n|+c = -2 at n=1: (-2)^{1/2} = i sqrt(2) on the principal branch
        out = apply_power(PropagatorSpec(rho=-1, c=-1, r=0.5), CoefficientField.delta(1, 3))
        assert out.entries[1] == pytest.approx(1j * math.sqrt(2), abs=1e-14)

    def test_self_adjointness_witness(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            a = random_field(10, seed=rng.integers(1 << 30))
            b = random_field(10, seed=rng.integers(1 << 30))
            spec = PropagatorSpec(rho=1.5, c=0.25, r=2.0)
            lhs = np.vdot(b.entries, apply_power(spec, a).entries)
            rhs = np.vdot(apply_power(spec, b).entries, a.entries)
            assert abs(lhs - rhs) < 1e-12 * (1 + abs(lhs))


class TestApplyExp:
    def test_decay(self):
        out = apply_exp(PropagatorSpec(z=-1.0), CoefficientField.delta(1, 4))
        assert out.entries[1] == pytest.approx(math.exp(-1))

    def test_unitarity_pure_imaginary(self):
        c = random_field(64, seed=1)
        out = apply_exp(PropagatorSpec(z=0.7j), c)
        assert out.l2_norm() == pytest.approx(c.l2_norm(), abs=1e-13)

    def test_inverse_composition(self):
        c = random_field(32, seed=2)
        z = 0.3 - 0.2j
        back = apply_exp(PropagatorSpec(z=-z), apply_exp(PropagatorSpec(z=z), c))
        assert np.abs(back.entries - c.entries).max() < 1e-12

    def test_semigroup(self):
        c = random_field(64, seed=3)
        z1, z2 = 0.2 + 0.5j, -0.1 + 0.9j
        once = apply_exp(PropagatorSpec(z=z1 + z2), c)
        twice = apply_exp(PropagatorSpec(z=z2), apply_exp(PropagatorSpec(z=z1), c))
        rel = np.abs(once.entries - twice.entries) / np.maximum(1.0, np.abs(once.entries))
        assert rel.max() < 1e-12

    def test_overflow_mask(self):
        c = CoefficientField(np.ones(200, dtype=complex))
        out = apply_exp(PropagatorSpec(z=4.0), c)
        assert out.mask is not None
        assert out.mask[176:].all() and not out.mask[:176].any()  # 4n > 700 from n=176
        assert np.isfinite(out.l2_norm())  # masked entries excluded


class TestKernel:
    def test_symmetry(self):
        rng = np.random.default_rng(7)
        kp = KernelParams(w=0.4 + 0.3j, dim=2)
        for _ in range(10):
            x, y = rng.uniform(0.1, 8.0, size=(2, 2))
            assert abs(kernel_eval(kp, x, y) - kernel_eval(kp, y, x)) < 1e-13

    def test_eigen_series_oracle(self):
        # truncated sum_k w^k l_k(1)^2 converges to K at w = 0.3
        kp = KernelParams(w=0.3, dim=1)
        vals = laguerre_l(300, 1.0)
        series = float(np.sum(0.3 ** np.arange(301) * vals**2))
        assert kernel_eval(kp, 1.0, 1.0).real == pytest.approx(series, abs=1e-12)
        assert abs(kernel_eval(kp, 1.0, 1.0).imag) < 1e-15

    def test_w_zero_limit(self):
        kp = KernelParams(w=0.0, dim=1)
        for x, y in [(0.5, 1.0), (3.0, 0.2)]:
            assert kernel_eval(kp, x, y) == pytest.approx(math.exp(-(x + y) / 2), abs=1e-15)

    def test_rejects_w_equal_one(self):
        with pytest.raises(ValueError):
            KernelParams(w=1.0)
        with pytest.raises(ValueError):
            KernelParams(w=1.2)

    def test_kernel_apply_eigenfunction(self):
        kp = KernelParams(w=0.5, dim=1)
        for n in (0, 1, 3):
            f = SampledFunction(1, lambda x, n=n: laguerre_l(n, x)[n])
            image = kernel_apply(kp, f, quad_order=128)
            x = np.array([0.3, 1.0, 4.0])
            assert np.abs(image(x) - 0.5**n * laguerre_l(n, x)[n]).max() < 1e-8
            assert image.meta["converged"]

    def test_kernel_apply_oscillatory_ground_state(self):
        kp = KernelParams(w=cmath.exp(1j), dim=1)
        f = SampledFunction(1, lambda x: np.exp(-x / 2))
        image = kernel_apply(kp, f, quad_order=128)
        x = np.array([0.5, 2.0])
        assert np.abs(image(x) - np.exp(-x / 2)).max() < 1e-6
        assert image.meta["oscillatory"]

    def test_kernel_apply_matches_multiplier_path(self):
        w = 0.5 + 0.2j
        kp = KernelParams(w=w, dim=1)
        f = SampledFunction(1, lambda x: (1 + x) * np.exp(-x / 2))
        image = kernel_apply(kp, f, quad_order=160)
        coeffs = laguerre_analyze(f, shape=24)
        diag = apply_exp(PropagatorSpec(z=cmath.log(w)), coeffs)
        x = np.linspace(0.2, 9.0, 20)
        assert np.abs(image(x) - laguerre_synthesize(diag, x)).max() < 1e-7


class TestHilleHardy:
    def test_w_zero(self):
        # only the n=0 term survives; the two sides differ by one rounding
        res = hille_hardy_check(0.0, 0.7, 2.2, 50)
        assert res.abs_err < 1e-15
        assert res.series == pytest.approx(math.exp(-0.35) * math.exp(-1.1), abs=1e-15)

    def test_real_w(self):
        res = hille_hardy_check(0.5, 1.0, 2.0, 200)
        assert res.abs_err < 1e-10

    def test_complex_w(self):
        res = hille_hardy_check(-0.5 + 0.3j, 0.5, 0.5, 300)
        assert res.abs_err < 1e-9

    def test_rejects_large_w(self):
        with pytest.raises(ValueError):
            hille_hardy_check(0.9995, 1.0, 1.0, 100)


class TestClassifyPropagator:
    def test_pure_imaginary_always_isomorphism(self):
        for alpha in (0.3, 1.0, 5.0):
            for kind in ("roumieu", "beurling"):
                v = classify_propagator(1j, 1.0, 0.0, alpha, kind)
                assert v.verdict == "isomorphism"

    def test_decaying_above_threshold(self):
        v = classify_propagator(-1.0, 1.0, 0.0, 2.0, "roumieu")
        assert v.verdict == "injection_not_surjection"

    def test_growing_above_threshold(self):
        v = classify_propagator(1.0, 1.0, 0.0, 2.0, "roumieu")
        assert v.verdict == "discontinuous"

    def test_below_threshold_isomorphism(self):
        for z in (1.0, -1.0, 0.5 + 0.5j):
            assert classify_propagator(z, 1.0, 0.3j, 0.5, "roumieu").verdict == "isomorphism"

    def test_boundary_quantifier_split(self):
        # alpha = 1/r exactly: Beurling keeps the isomorphism, Roumieu loses it
        vb = classify_propagator(1.0, 2.0, 0.0, 0.5, "beurling")
        vr = classify_propagator(1.0, 2.0, 0.0, 0.5, "roumieu")
        assert vb.verdict == "isomorphism" and vb.boundary
        assert vr.verdict == "discontinuous" and vr.boundary
        vr_neg = classify_propagator(-2.0, 2.0, 0.0, 0.5, "roumieu")
        assert vr_neg.verdict == "injection_not_surjection"

    def test_r_scales_threshold(self):
        assert classify_propagator(1.0, 0.5, 0.0, 1.5, "roumieu").verdict == "isomorphism"
        assert classify_propagator(1.0, 0.5, 0.0, 2.5, "roumieu").verdict == "discontinuous"


class TestIllposednessDemo:
    def test_supercritical_divergence(self):
        rep = demonstrate_illposedness(0.1, 2.0, 400)
        assert rep.ratio > 1e6
        assert rep.strictly_increasing

    def test_subcritical_bounded(self):
        rep = demonstrate_illposedness(0.1, 0.5, 400)
        assert rep.ratio < 2.0

    def test_pure_phase_flat(self):
        rep = demonstrate_illposedness(1j, 2.0, 400)
        assert rep.ratio == pytest.approx(1.0, abs=1e-12)
        assert not rep.strictly_increasing

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            demonstrate_illposedness(0.1, 2.0, 50)
