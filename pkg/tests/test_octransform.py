import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octool.octransform import (
    FunctionSpec,
    apply_jacobi_cherednik,
    oc_inverse,
    oc_transform,
    plancherel_residual,
    plancherel_residual_detailed,
    transform_grid,
)
from octool.quad import QuadConfig
from octool.specfun import JacobiParams, eigenfunction_g, weight_a

P1 = JacobiParams(0.5, -0.5)
P2 = JacobiParams(1.0, 0.5)
P3 = JacobiParams(1.5, 1.5)
CFG = QuadConfig()
LOOSE = QuadConfig(rel_tol=1e-6, abs_tol=1e-6)

BUMP = FunctionSpec("bump", params={"center": 0.0, "width": 1.0})
GAUSS = FunctionSpec("gaussian", params={"scale": 1.0})


def test_function_spec_evaluation():
    f = FunctionSpec("bump", params={"center": 1.0, "width": 0.3})
    assert f(1.0) > 0.0
    assert f(0.69) == 0.0 and f(1.31) == 0.0
    assert f.support() == (0.7, 1.3)
    g = FunctionSpec("gaussian", params={"scale": 2.0})
    assert g(0.0) == 1.0
    assert g(2.0) == pytest.approx(math.exp(-1.0), rel=1e-15)


def test_function_spec_serialization_roundtrip():
    specs = [
        BUMP,
        FunctionSpec("constant_one", domain="unit_interval"),
        FunctionSpec("extremal_eps", params={"p": 2.0, "eps": 0.1}, jacobi=P1),
        FunctionSpec("sampled", params={"xs": np.array([0.0, 1.0, 2.0]),
                                        "ys": np.array([3.0, 2.0, 1.0]),
                                        "interp": "previous"}),
    ]
    for f in specs:
        g = FunctionSpec.from_dict(f.to_dict())
        xs = np.linspace(-1, 3, 41)
        assert np.allclose(np.asarray(f(xs), dtype=float),
                           np.asarray(g(xs), dtype=float), atol=0, rtol=0)


def test_log_abs_decomp_consistency():
    f = FunctionSpec("extremal_delta", params={"p": 2.0, "delta": 0.2}, jacobi=P1)
    xs = np.array([0.1, 0.5, 0.9])
    plain, a_coeff = f.log_abs_decomp(xs)
    from octool.specfun import log_weight_a
    rebuilt = plain + a_coeff * log_weight_a(P1, xs)
    assert np.allclose(rebuilt, np.log(f(xs)), rtol=1e-12)


def _trapz_transform(f, p, lam, lo, hi, n=4001):
    xs = np.linspace(lo, hi, n)
    g = np.array([eigenfunction_g(p, lam, float(-x)) for x in xs])
    vals = np.asarray(f(xs)) * g * weight_a(p, xs)
    t1 = np.trapezoid(vals, xs)
    t2 = np.trapezoid(vals[::2], xs[::2])
    return t1 + (t1 - t2) / 3.0  # Richardson-extrapolated trapezoid


@pytest.mark.parametrize("lam", [0.7, 1.3, 4.0])
def test_transform_vs_independent_quadrature(lam):
    v = oc_transform(BUMP, P2, lam, CFG)
    truth = _trapz_transform(BUMP, P2, lam, -1.0, 1.0)
    assert abs(v - truth) <= 1e-5 * max(abs(truth), 1e-3)


def test_transform_sine_closed_form():
    # at (1/2,-1/2), even f: transform = (2/lam) * int_0^inf f sin(lam x) sinh x dx
    for lam in (0.6, 2.0):
        xs = np.linspace(0.0, 1.0, 20001)
        integrand = BUMP(xs) * np.sin(lam * xs) * np.sinh(xs)
        truth = 2.0 / lam * np.trapezoid(integrand, xs)
        v = oc_transform(BUMP, P1, lam, CFG)
        assert abs(v - truth) <= 1e-7 * max(abs(truth), 1e-3)


def test_transform_linearity():
    lam = 1.1
    va = oc_transform(BUMP, P2, lam, CFG)
    vb = oc_transform(GAUSS, P2, lam, CFG)
    combo = lambda x: 2.0 * BUMP(x) - 0.5 * GAUSS(x)
    vc = oc_transform(combo, P2, lam, CFG)
    assert abs(vc - (2.0 * va - 0.5 * vb)) <= 1e-7


def test_transform_grid_matches_pointwise():
    lams = np.array([0.5, 1.0, 2.0, 5.0])
    vals, errs = transform_grid(BUMP, P2, lams, CFG)
    for lam, v, e in zip(lams, vals, errs):
        truth = oc_transform(BUMP, P2, float(lam), CFG)
        assert abs(v - truth) <= 10 * max(e, 1e-9)


def _noise_cut_interpolant(f, p, cfg):
    lams = np.arange(cfg.lambda_min, cfg.truncation_lambda, 0.02)
    vals, errs = transform_grid(f, p, lams, cfg)
    u = np.where(np.abs(vals) <= 10.0 * errs, 0.0, vals.real)
    return lams, u


def test_roundtrip_and_conjugation():
    lams, u = _noise_cut_interpolant(BUMP, P2, CFG)
    g = lambda lam: np.interp(np.abs(lam), lams, u)
    peak = float(BUMP(0.0))
    for x in (0.0, 0.5, 1.0):
        v = oc_inverse(g, P2, x, LOOSE)
        assert abs(v.real - float(BUMP(x))) <= 0.02 * peak, x
        if x == 0.5:
            # real even input: the reconstruction must be essentially real
            assert abs(v.imag) <= 1e-6


@pytest.mark.parametrize("p,f,limit", [
    (P1, GAUSS, 1e-10),
    (P2, GAUSS, 1e-10),
    (P3, GAUSS, 1e-10),
    (P1, BUMP, 0.05),
    (P3, BUMP, 0.05),
])
def test_plancherel_identity(p, f, limit):
    lhs, rhs, gap = plancherel_residual(f, p, CFG)
    assert gap <= limit
    assert rhs.real > 0.0


def test_plancherel_error_estimate_honest():
    lhs, rhs, gap, err = plancherel_residual_detailed(BUMP, P1, CFG)
    assert abs(lhs - rhs.real) <= max(err, 1e-12) + 1e-12 * lhs


def test_plancherel_gap_decreases_with_lambda_truncation():
    gap40 = plancherel_residual(BUMP, P1, CFG)[2]
    cfg80 = QuadConfig(truncation_lambda=80.0)
    gap80 = plancherel_residual(BUMP, P1, cfg80)[2]
    assert gap80 < gap40


@settings(max_examples=10, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.2, 2.0))
def test_eigen_equation_property(lam, x):
    g = lambda y: eigenfunction_g(P2, lam, float(y))
    t_val = apply_jacobi_cherednik(g, P2, x)
    target = 1j * lam * eigenfunction_g(P2, lam, x)
    assert abs(t_val - target) <= 1e-5 * max(abs(target), 1e-6)
