"""Configuration-driven command-line front end.

Commands
--------
verify SUITE [--tol X] [--out REPORT.json]
    Run a named identity-verification suite; exit 0 iff every check passes.
solve --config CFG.json --out OUT.csv [--strict]
    Solve a Cauchy problem, write the trajectory as CSV plus a summary
    JSON next to it.
classify --config CFG.json [--out OUT.json]
    Print the continuity verdict for the exponential propagator.
kernel --config CFG.json --out OUT.csv
    Tabulate the closed-form kernel on a grid.
transform --config CFG.json --out OUT.csv
    Apply a fractional transform to coefficient input and sample it.

Exit codes: 0 pass, 1 check failure, 2 config error, 3 numeric failure in
strict mode.  The environment variable LAGPROP_THREADS, when set, must be a
positive integer and caps the worker threads any command may use (the
current implementations are sequential, so it is validated and recorded).

All numeric output uses the shortest round-trip decimal (Python ``repr``),
so identical configs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from dataclasses import dataclass

import jsonschema
import numpy as np

from .cauchy import CauchyProblem, poly_source, solve
from .coeffspace import CoefficientField, DegenerateFitError, fit_growth
from .expand import (
    SampledFunction,
    hermite_analyze,
    hermite_synthesize,
    laguerre_analyze,
    laguerre_synthesize,
)
from .propagate import (
    KernelParams,
    PropagatorSpec,
    apply_exp,
    classify_propagator,
    demonstrate_illposedness,
    hille_hardy_check,
    kernel_apply,
    kernel_eval_1d,
)
from .radial import (
    bridge_laguerre_to_hermite,
    c_coeff,
    radialize,
    spherical_average,
)
from .specfun import gauss_rule, hermite_h, laguerre_l
from .transforms import FracOrder, frac_fourier, hankel_clifford_frac, verify_frac1, verify_frac3

SUITES = (
    "hille_hardy",
    "orthonormality",
    "kernel_vs_multiplier",
    "bridge",
    "frac_identities",
    "posedness",
    "all",
)


class ConfigError(Exception):
    pass


def _require_env_threads() -> int | None:
    raw = os.environ.get("LAGPROP_THREADS")
    if raw is None:
        return None
    try:
        val = int(raw)
    except ValueError:
        raise ConfigError(f"LAGPROP_THREADS must be an integer, got {raw!r}")
    if val < 1:
        raise ConfigError("LAGPROP_THREADS must be >= 1")
    return val


# ---------------------------------------------------------------------------
# config parsing

_DECIMAL = {
    "type": ["number", "string"],
    "pattern": r"^-?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$",
}
_COMPLEX = {
    "type": "object",
    "properties": {"re": _DECIMAL, "im": _DECIMAL},
    "required": ["re"],
    "additionalProperties": False,
}
_MODE_ENTRY = {
    "type": "object",
    "properties": {
        "n": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "re": _DECIMAL,
        "im": _DECIMAL,
    },
    "required": ["n", "re"],
    "additionalProperties": False,
}

SOLVE_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1, "maximum": 3},
        "rho": _COMPLEX,
        "c": _COMPLEX,
        "r": _DECIMAL,
        "T": _DECIMAL,
        "modes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "initial": {
            "type": "object",
            "properties": {
                "type": {"const": "coeffs"},
                "data": {"type": "array", "items": _MODE_ENTRY},
            },
            "required": ["type", "data"],
            "additionalProperties": False,
        },
        "source": {
            "type": "object",
            "properties": {
                "type": {"const": "coeffs_poly"},
                "per_mode": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {
                            "n": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                            "poly": {"type": "array", "items": _DECIMAL},
                        },
                        "required": ["n", "poly"],
                        "additionalProperties": False,
                    },
                },
            },
            "required": ["type", "per_mode"],
            "additionalProperties": False,
        },
        "output_times": {"type": "array", "items": _DECIMAL},
        "fit_alpha": _DECIMAL,
    },
    "required": ["dim", "rho", "c", "r", "T", "modes", "initial", "output_times"],
    "additionalProperties": False,
}

CLASSIFY_SCHEMA = {
    "type": "object",
    "properties": {
        "z": _COMPLEX,
        "r": _DECIMAL,
        "c": _COMPLEX,
        "alpha": _DECIMAL,
        "kind": {"enum": ["roumieu", "beurling"]},
    },
    "required": ["z", "r", "alpha", "kind"],
    "additionalProperties": False,
}

KERNEL_SCHEMA = {
    "type": "object",
    "properties": {
        "w": _COMPLEX,
        "x": {"type": "array", "items": _DECIMAL, "minItems": 1},
        "y": {"type": "array", "items": _DECIMAL, "minItems": 1},
    },
    "required": ["w", "x", "y"],
    "additionalProperties": False,
}

TRANSFORM_SCHEMA = {
    "type": "object",
    "properties": {
        "which": {"enum": ["frac_fourier", "frac_hankel", "hankel_clifford"]},
        "params": {
            "type": "object",
            "properties": {
                "rho": _DECIMAL,
                "t": _DECIMAL,
                "phases": {"type": "array", "items": _DECIMAL},
            },
            "additionalProperties": False,
        },
        "modes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "input": {
            "type": "object",
            "properties": {
                "type": {"const": "coeffs"},
                "data": {"type": "array", "items": _MODE_ENTRY},
            },
            "required": ["type", "data"],
            "additionalProperties": False,
        },
        "points": {"type": "array", "minItems": 1},
    },
    "required": ["which", "params", "modes", "input", "points"],
    "additionalProperties": False,
}


def _num(value) -> float:
    return float(value)


def _cplx(obj) -> complex:
    return complex(_num(obj["re"]), _num(obj.get("im", 0.0)))


def load_config(path: str, schema: dict) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config {path} violates the schema: {exc.message}")
    return doc


def _field_from_entries(data, shape) -> CoefficientField:
    entries = np.zeros(tuple(shape), dtype=complex)
    for item in data:
        idx = tuple(item["n"])
        if len(idx) != len(shape):
            raise ConfigError(f"mode index {idx} does not match dim {len(shape)}")
        if any(i >= s for i, s in zip(idx, shape)):
            raise ConfigError(f"mode index {idx} outside modes {list(shape)}")
        entries[idx] = complex(_num(item["re"]), _num(item.get("im", 0.0)))
    return CoefficientField(entries)


# ---------------------------------------------------------------------------
# deterministic writers


def _fmt(x) -> str:
    return repr(float(x))


def _write_lines(path: str | None, lines: list[str]):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------------------
# verify suites


@dataclass
class Check:
    name: str
    error: float
    tol: float

    def passed(self, override: float | None) -> bool:
        tol = self.tol if override is None else override
        return self.error <= tol


def _suite_hille_hardy() -> list[Check]:
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(50):
        radius = 0.9 * math.sqrt(rng.uniform())
        angle = rng.uniform(0, 2 * math.pi)
        w = radius * cmath.exp(1j * angle)
        x = rng.uniform(0.1, 20.0)
        y = rng.uniform(0.1, 20.0)
        worst = max(worst, hille_hardy_check(w, x, y, 300).abs_err)
    spot1 = hille_hardy_check(0.5, 1.0, 2.0, 200).abs_err
    spot2 = hille_hardy_check(-0.5 + 0.3j, 0.5, 0.5, 300).abs_err
    return [
        Check("hille_hardy.random_50", worst, 1e-9),
        Check("hille_hardy.spot_real", spot1, 1e-10),
        Check("hille_hardy.spot_complex", spot2, 1e-9),
    ]


def _suite_orthonormality() -> list[Check]:
    checks = []
    for kind, basis in (("laguerre", laguerre_l), ("hermite", hermite_h)):
        rule = gauss_rule(kind, 164)
        table = basis(40, rule.nodes)
        gram = (table * rule.lifted_weights) @ table.T
        leak = float(np.abs(gram - np.eye(41)).max())
        checks.append(Check(f"orthonormality.{kind}_n40", leak, 1e-10))
    return checks


def _smooth_test_functions():
    return [
        SampledFunction(1, lambda x: np.exp(-x / 2)),
        SampledFunction(1, lambda x: (1 + x) * np.exp(-x / 2)),
        SampledFunction(1, lambda x: x**2 * np.exp(-0.6 * x)),
        SampledFunction(1, lambda x: np.exp(-x) * np.cos(x)),
        SampledFunction(1, lambda x: (1 + x**2) * np.exp(-0.7 * x)),
    ]


def _suite_kernel_vs_multiplier() -> list[Check]:
    probes = np.geomspace(0.1, 9.0, 20)
    shape, quad = 28, 192
    worst_smooth, worst_osc = 0.0, 0.0
    for w in (0.5, 0.3 + 0.4j, cmath.exp(1j)):
        kp = KernelParams(w, 1)
        oscillatory = abs(abs(w) - 1.0) < 1e-12
        for f in _smooth_test_functions():
            image = kernel_apply(kp, f, quad_order=quad)
            coeffs = laguerre_analyze(f, shape=shape)
            diag = apply_exp(PropagatorSpec(z=cmath.log(w)), coeffs)
            err = float(np.abs(image(probes) - laguerre_synthesize(diag, probes)).max())
            if oscillatory:
                worst_osc = max(worst_osc, err)
            else:
                worst_smooth = max(worst_smooth, err)
    return [
        Check("kernel_vs_multiplier.interior", worst_smooth, 1e-6),
        Check("kernel_vs_multiplier.oscillatory", worst_osc, 1e-4),
    ]


def _suite_bridge() -> list[Check]:
    rng = np.random.default_rng(11)
    a = CoefficientField(rng.standard_normal(12) + 1j * rng.standard_normal(12))
    b = bridge_laguerre_to_hermite(a)
    grid = np.linspace(0.1, 2.8, 10)
    pts = np.array([(u, v) for u in grid for v in grid])
    lhs = hermite_synthesize(b, pts)
    rhs = laguerre_synthesize(a, pts[:, 0] ** 2 + pts[:, 1] ** 2)
    synth_err = float(np.abs(lhs - rhs).max())
    c_excess = max(
        max(c_coeff(n, k) for k in range(n + 1)) - math.sqrt(math.pi) for n in range(61)
    )
    return [
        Check("bridge.synthesis_agreement", synth_err, 1e-8),
        Check("bridge.c_bound_n60", max(0.0, c_excess), 1e-12),
    ]


def _suite_frac_identities() -> list[Check]:
    checks = []
    rng = np.random.default_rng(23)
    coef = rng.standard_normal(6)

    def profile(r):
        s = np.asarray(r) ** 2
        table = laguerre_l(5, s)
        return np.tensordot(coef, table, axes=([0], [0]))

    g2 = radialize(SampledFunction(1, profile))
    worst3 = max(verify_frac3(g2, rho, shape=6).max_abs_error for rho in (0.5, 1.0, 1.5))
    checks.append(Check("frac_identities.frac3_rho_grid", worst3, 1e-6))

    g1 = SampledFunction(1, lambda x: (1 + x**2) * np.exp(-(x**2) / 2))
    rep = verify_frac1(g1, t=1.0, shape=14, quad_order=256)
    checks.append(Check("frac_identities.frac1_multiplier", rep.err_multiplier, 1e-10))
    checks.append(Check("frac_identities.frac1_kernel", rep.err_kernel, 1e-5))

    x = np.arange(-20.0, 20.0, 0.01)
    table = hermite_h(6, x)
    worst_f = 0.0
    for n in range(7):
        xi = np.array([0.0, 0.7, 1.9])
        direct = np.array(
            [np.trapezoid(table[n] * np.exp(-1j * x * s), x) for s in xi]
        ) / math.sqrt(2 * math.pi)
        got = hermite_synthesize(frac_fourier(1.0, CoefficientField.delta(n, 7)), xi)
        worst_f = max(worst_f, float(np.abs(got - direct).max()))
    checks.append(Check("frac_identities.fourier_oracle_n6", worst_f, 1e-8))

    c = CoefficientField(rng.standard_normal(12) + 1j * rng.standard_normal(12))
    round4 = frac_fourier(1.0, frac_fourier(1.0, frac_fourier(1.0, frac_fourier(1.0, c))))
    checks.append(
        Check("frac_identities.fourier_period4", float(np.abs(round4.entries - c.entries).max()), 1e-10)
    )
    return checks


_EXPECTED_VERDICTS = {
    # (sign Re z, alpha, kind) -> verdict, transcribed from the continuity
    # theorems: Re z = 0 always isomorphism; otherwise alpha < 1 (Roumieu)
    # resp. alpha <= 1 (Beurling) keeps the isomorphism at r = 1, and above
    # the critical index decay gives injection-not-surjection, growth
    # discontinuity.
    (0, 0.5, "roumieu"): "isomorphism",
    (0, 1.0, "roumieu"): "isomorphism",
    (0, 2.0, "roumieu"): "isomorphism",
    (0, 0.5, "beurling"): "isomorphism",
    (0, 1.0, "beurling"): "isomorphism",
    (0, 2.0, "beurling"): "isomorphism",
    (1, 0.5, "roumieu"): "isomorphism",
    (1, 1.0, "roumieu"): "discontinuous",
    (1, 2.0, "roumieu"): "discontinuous",
    (1, 0.5, "beurling"): "isomorphism",
    (1, 1.0, "beurling"): "isomorphism",
    (1, 2.0, "beurling"): "discontinuous",
    (-1, 0.5, "roumieu"): "isomorphism",
    (-1, 1.0, "roumieu"): "injection_not_surjection",
    (-1, 2.0, "roumieu"): "injection_not_surjection",
    (-1, 0.5, "beurling"): "isomorphism",
    (-1, 1.0, "beurling"): "isomorphism",
    (-1, 2.0, "beurling"): "injection_not_surjection",
}


def _suite_posedness() -> list[Check]:
    z_by_sign = {0: 1j, 1: 1.0 + 0.5j, -1: -1.0 + 0.5j}
    mismatches = 0
    for (sign, alpha, kind), expected in _EXPECTED_VERDICTS.items():
        got = classify_propagator(z_by_sign[sign], 1.0, 0.0, alpha, kind).verdict
        if got != expected:
            mismatches += 1
    rep_super = demonstrate_illposedness(0.1, 2.0, 400)
    rep_sub = demonstrate_illposedness(0.1, 0.5, 400)
    return [
        Check("posedness.verdict_grid_18", float(mismatches), 0.0),
        Check("posedness.divergence_ratio_margin", 1e6 / rep_super.ratio, 1.0),
        Check("posedness.subcritical_ratio", rep_sub.ratio, 2.0),
    ]


def _suite_extras() -> list[Check]:
    rng = np.random.default_rng(31)
    c = CoefficientField(rng.standard_normal(64) + 1j * rng.standard_normal(64))
    out = apply_exp(PropagatorSpec(z=0.37j), c)
    unitary_err = abs(out.l2_norm() - c.l2_norm())
    z1, z2 = 0.1 + 0.4j, -0.2 + 1.1j
    once = apply_exp(PropagatorSpec(z=z1 + z2), c)
    twice = apply_exp(PropagatorSpec(z=z2), apply_exp(PropagatorSpec(z=z1), c))
    semi_err = float(
        (np.abs(once.entries - twice.entries) / np.maximum(1.0, np.abs(once.entries))).max()
    )

    lam = 3.0
    p = CauchyProblem(
        dim=1,
        spec=PropagatorSpec(rho=1.0, c=0.0),
        T=2.0,
        initial=CoefficientField(np.zeros(4, dtype=complex)),
        output_times=[2.0],
        source=poly_source({3: [1.0]}),
    )
    got = solve(p).states[0].entries[3]
    duhamel_err = abs(got - (cmath.exp(-1j * lam * 2.0) - 1.0) / lam)

    gt = radialize(SampledFunction(1, lambda r: np.exp(-(r**2) / 2) * (1 + r**2)))
    avg = spherical_average(gt, 16)
    twice_avg = spherical_average(avg, 16)
    pts = np.array([[0.3, 0.4], [1.0, -1.2], [-0.7, 0.2]])
    idem_err = float(np.abs(twice_avg(pts[:, 0], pts[:, 1]) - avg(pts[:, 0], pts[:, 1])).max())
    harmonic = spherical_average(SampledFunction(2, lambda x, y: x), 12)
    kill_err = float(np.abs(harmonic(pts[:, 0], pts[:, 1])).max())
    return [
        Check("extras.unitarity", unitary_err, 1e-13),
        Check("extras.semigroup", semi_err, 1e-12),
        Check("extras.duhamel_vs_closed_form", float(duhamel_err), 1e-12),
        Check("extras.spherical_idempotent", idem_err, 1e-12),
        Check("extras.spherical_kills_harmonic", kill_err, 1e-12),
    ]


_SUITE_RUNNERS = {
    "hille_hardy": (_suite_hille_hardy,),
    "orthonormality": (_suite_orthonormality,),
    "kernel_vs_multiplier": (_suite_kernel_vs_multiplier,),
    "bridge": (_suite_bridge,),
    "frac_identities": (_suite_frac_identities,),
    "posedness": (_suite_posedness,),
    "all": (
        _suite_hille_hardy,
        _suite_orthonormality,
        _suite_kernel_vs_multiplier,
        _suite_bridge,
        _suite_frac_identities,
        _suite_posedness,
        _suite_extras,
    ),
}


def cmd_verify(suite: str, tol: float | None, out: str | None) -> int:
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    checks: list[Check] = []
    for runner in _SUITE_RUNNERS[suite]:
        checks.extend(runner())
    report = {
        "suite": suite,
        "tol_override": tol,
        "threads": _require_env_threads(),
        "checks": [
            {
                "name": c.name,
                "error": c.error,
                "tol": c.tol if tol is None else tol,
                "pass": c.passed(tol),
            }
            for c in checks
        ],
    }
    report["passed"] = all(item["pass"] for item in report["checks"])
    _write_lines(out, [_json_dump(report)])
    if out is not None:
        status = "pass" if report["passed"] else "FAIL"
        sys.stdout.write(f"verify {suite}: {status} ({len(checks)} checks)\n")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------
# solve / classify / kernel / transform


def cmd_solve(config_path: str, out: str, strict: bool) -> int:
    cfg = load_config(config_path, SOLVE_SCHEMA)
    dim = cfg["dim"]
    modes = cfg["modes"]
    if len(modes) != dim:
        raise ConfigError("modes length must equal dim")
    initial = _field_from_entries(cfg["initial"]["data"], modes)
    source = None
    if "source" in cfg:
        table = {
            tuple(item["n"]): [_num(v) for v in item["poly"]]
            for item in cfg["source"]["per_mode"]
        }
        for idx in table:
            if len(idx) != dim:
                raise ConfigError(f"source mode index {idx} does not match dim")
        source = poly_source(table)
    try:
        spec = PropagatorSpec(rho=_cplx(cfg["rho"]), c=_cplx(cfg["c"]), r=_num(cfg["r"]))
        problem = CauchyProblem(
            dim=dim,
            spec=spec,
            T=_num(cfg["T"]),
            initial=initial,
            output_times=[_num(t) for t in cfg["output_times"]],
            source=source,
        )
    except ValueError as exc:
        raise ConfigError(str(exc))
    traj = solve(problem)

    header = ["time", "flat_index"] + [f"n_{j + 1}" for j in range(dim)] + ["re", "im", "overflow"]
    lines = [",".join(header)]
    indices = initial.multi_indices()
    for t, state in zip(traj.times, traj.states):
        flat = state.entries.ravel()
        mask = (state.mask if state.mask is not None else np.zeros(state.shape, bool)).ravel()
        for flat_idx, n_idx in enumerate(indices):
            val = flat[flat_idx]
            lines.append(
                ",".join(
                    [_fmt(t), str(flat_idx)]
                    + [str(k) for k in n_idx]
                    + [_fmt(val.real), _fmt(val.imag), "1" if mask[flat_idx] else "0"]
                )
            )
    _write_lines(out, lines)

    alpha = _num(cfg.get("fit_alpha", 1.0))
    summary = {"times": [float(t) for t in traj.times], "l2_norms": [], "fitted_h": [], "fit_alpha": alpha}
    for state in traj.states:
        summary["l2_norms"].append(state.l2_norm())
        try:
            h, _, _ = fit_growth(state, alpha)
            summary["fitted_h"].append(h)
        except DegenerateFitError:
            summary["fitted_h"].append(None)
    _write_lines(out + ".summary.json", [_json_dump(summary)])
    if strict and traj.overflow_mask.any():
        sys.stderr.write("solve: overflow in strict mode\n")
        return 3
    return 0


def cmd_classify(config_path: str, out: str | None) -> int:
    cfg = load_config(config_path, CLASSIFY_SCHEMA)
    c_val = _cplx(cfg["c"]) if "c" in cfg else 0.0
    try:
        verdict = classify_propagator(
            _cplx(cfg["z"]), _num(cfg["r"]), c_val, _num(cfg["alpha"]), cfg["kind"]
        )
    except ValueError as exc:
        raise ConfigError(str(exc))
    line = verdict.verdict + (" boundary" if verdict.boundary else "")
    sys.stdout.write(line + "\n")
    if out is not None:
        _write_lines(
            out,
            [
                _json_dump(
                    {
                        "verdict": verdict.verdict,
                        "boundary": verdict.boundary,
                        "alpha": verdict.alpha,
                        "r": verdict.r,
                        "kind": verdict.kind,
                    }
                )
            ],
        )
    return 0


def cmd_kernel(config_path: str, out: str) -> int:
    cfg = load_config(config_path, KERNEL_SCHEMA)
    try:
        kp = KernelParams(_cplx(cfg["w"]), 1)
    except ValueError as exc:
        raise ConfigError(str(exc))
    xs = [_num(v) for v in cfg["x"]]
    ys = [_num(v) for v in cfg["y"]]
    if any(v <= 0 for v in xs + ys):
        raise ConfigError("kernel grid points must be positive")
    lines = ["x,y,reK,imK"]
    for x in xs:
        for y in ys:
            val = complex(kernel_eval_1d(kp.w, x, y))
            lines.append(",".join([_fmt(x), _fmt(y), _fmt(val.real), _fmt(val.imag)]))
    _write_lines(out, lines)
    return 0


def cmd_transform(config_path: str, out: str) -> int:
    cfg = load_config(config_path, TRANSFORM_SCHEMA)
    which = cfg["which"]
    modes = cfg["modes"]
    field = _field_from_entries(cfg["input"]["data"], modes)
    params = cfg["params"]
    points = cfg["points"]

    if which == "frac_fourier":
        if "rho" not in params:
            raise ConfigError("frac_fourier needs params.rho")
        transformed = frac_fourier(_num(params["rho"]), field)
        synth = hermite_synthesize
        eval_points = np.asarray([[_num(v) for v in np.atleast_1d(p)] for p in points], dtype=float)
    elif which == "hankel_clifford":
        if "phases" not in params:
            raise ConfigError("hankel_clifford needs params.phases")
        phases = [_num(v) for v in params["phases"]]
        if len(phases) != field.dim:
            raise ConfigError("phases length must equal dim")
        transformed = hankel_clifford_frac(FracOrder(tuple(phases)), field)
        synth = laguerre_synthesize
        eval_points = np.asarray([[_num(v) for v in np.atleast_1d(p)] for p in points], dtype=float)
    else:  # frac_hankel: input is the profile's Laguerre field, points are x
        if "t" not in params:
            raise ConfigError("frac_hankel needs params.t")
        if field.dim != 1:
            raise ConfigError("frac_hankel input must be one-dimensional")
        transformed = hankel_clifford_frac(FracOrder(_num(params["t"])), field)
        synth = laguerre_synthesize
        eval_points = np.asarray([[_num(p) ** 2] for p in points], dtype=float)

    if eval_points.shape[1] != field.dim:
        raise ConfigError(f"points must have {field.dim} coordinates")
    values = synth(transformed, eval_points if field.dim > 1 else eval_points[:, 0])
    coord_names = [f"x_{j + 1}" for j in range(eval_points.shape[1])]
    lines = [",".join(coord_names + ["re", "im"])]
    for p_raw, val in zip(points, values):
        coords = [_fmt(v) for v in np.atleast_1d(p_raw)]
        lines.append(",".join(coords + [_fmt(val.real), _fmt(val.imag)]))
    _write_lines(out, lines)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagprop", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run an identity-verification suite")
    p_verify.add_argument("suite", help="|".join(SUITES))
    p_verify.add_argument("--tol", type=float, default=None)
    p_verify.add_argument("--out", default=None)

    p_solve = sub.add_parser("solve", help="solve a Cauchy problem from a config")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--out", required=True)
    p_solve.add_argument("--strict", action="store_true")

    p_classify = sub.add_parser("classify", help="continuity verdict for a propagator")
    p_classify.add_argument("--config", required=True)
    p_classify.add_argument("--out", default=None)

    p_kernel = sub.add_parser("kernel", help="tabulate the closed-form kernel")
    p_kernel.add_argument("--config", required=True)
    p_kernel.add_argument("--out", required=True)

    p_transform = sub.add_parser("transform", help="apply a fractional transform")
    p_transform.add_argument("--config", required=True)
    p_transform.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _require_env_threads()
        if args.command == "verify":
            return cmd_verify(args.suite, args.tol, args.out)
        if args.command == "solve":
            return cmd_solve(args.config, args.out, args.strict)
        if args.command == "classify":
            return cmd_classify(args.config, args.out)
        if args.command == "kernel":
            return cmd_kernel(args.config, args.out)
        if args.command == "transform":
            return cmd_transform(args.config, args.out)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
