"""Norms and boundedness constants for the Hausdorff operator.

Weighted L^p norms, grand Lebesgue norms on finite-measure intervals, the
dilation constants controlling operator bounds (a_sup/a_inf, E, b_sup/b_inf,
the L^p -> L^q constant, the grand-bound constant), the extremal witness
functions from the sharpness arguments, the power-mean lemma for
non-increasing functions, and the monotone-integrand membership gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivergentIntegralError,
    KernelNotIntegrableError,
    MonotonicityError,
    ParameterError,
    SupportError,
)
from .hausdorff import KernelSpec, _integrate_kernel, hausdorff_log_grid
from .octransform import FunctionSpec
from .quad import (
    IntegralResult,
    QuadConfig,
    integrate_finite,
    integrate_to_infinity,
    integrate_to_zero,
)
from .specfun import JacobiParams, log_weight_a, weight_a, weight_ratio_extrema

__all__ = [
    "NormResult",
    "interval_measure",
    "lp_norm",
    "grand_norm",
    "a_constants",
    "e_constant",
    "b_constants",
    "lp_lq_constant",
    "grand_bound_constant",
    "LogInterpFunction",
    "hausdorff_lp_norm",
    "extremal_function",
    "power_lemma_check",
    "mphi_check",
]

# substitution cutoff in log coordinates: e^(-0.05 s) reaches 1e-13 by s=600
_LOG_CUTOFF = 600.0


@dataclass
class NormResult:
    """A non-negative extended-real value with an error estimate; ``detail``
    optionally carries grids or maximizer diagnostics."""

    value: float
    err_estimate: float
    detail: dict | None = None

    def __float__(self) -> float:
        return float(self.value)


def _integrate_log_sub(g, a: float, b: float, cfg: QuadConfig) -> IntegralResult:
    """Integrate g over (a, b) in (0, inf], in log coordinates at a singular
    0 endpoint or an infinite endpoint so power-law behaviour becomes
    exponential; g must accept log-x when flagged."""
    # g here takes x directly; the substitution passes x = e^s computed by us
    if b == math.inf:
        start = max(a, 1.0)
        def h(s):
            s = np.asarray(s, dtype=float)
            x = start * np.exp(s)
            with np.errstate(over="ignore"):
                return g(x) * x
        r = integrate_to_infinity(h, 0.0, cfg, cutoff=_LOG_CUTOFF)
        if start > a:
            r = r + _integrate_log_sub(g, a, start, cfg)
        return r
    if a == 0.0:
        def h(s):
            s = np.asarray(s, dtype=float)
            x = b * np.exp(-s)
            return g(x) * x
        return integrate_to_infinity(h, 0.0, cfg, cutoff=_LOG_CUTOFF)
    return integrate_finite(g, a, b, cfg)


def interval_measure(p: JacobiParams, interval: tuple[float, float],
                     cfg: QuadConfig) -> float:
    """Weight mass of the interval: integral of A over it."""
    a, b = interval
    if not a < b:
        return 0.0
    pieces = [(a, 0.0), (0.0, b)] if a < 0.0 < b else [(a, b)]
    total = 0.0
    for lo, hi in pieces:
        lo, hi = sorted((abs(lo), abs(hi)))
        r = _integrate_log_sub(lambda x: weight_a(p, x), lo, hi, cfg)
        total += float(r.value)
    return total


def _lp_integral(f: FunctionSpec, p_exp: float, params: JacobiParams,
                 domain: tuple[float, float], cfg: QuadConfig) -> IntegralResult:
    """Integral of |f|^p_exp A over domain, computed in log space so that
    f ~ A^(-1/p) tails neither overflow nor underflow."""
    flo, fhi = f.support()
    a, b = max(domain[0], flo), min(domain[1], fhi)
    if not a < b:
        return IntegralResult(0.0, 0.0, 0)

    def g(x):
        x = np.asarray(x, dtype=float)
        plain, a_coeff = f.log_abs_decomp(x)
        plain = np.atleast_1d(plain)
        # combined weight exponent, cancelled symbolically so huge log A
        # values cannot absorb the plain part in floating point
        w_coeff = p_exp * a_coeff + 1.0
        out = np.zeros(x.shape)
        live = plain > -math.inf
        if np.any(live):
            expo = p_exp * plain[live]
            if w_coeff != 0.0:
                expo = expo + w_coeff * log_weight_a(params, x[live])
            out[live] = np.exp(np.minimum(expo, 709.0))
        return out

    pieces = [(a, 0.0), (0.0, b)] if a < 0.0 < b else [(a, b)]
    total = IntegralResult(0.0, 0.0, 0)
    for lo, hi in pieces:
        s_lo, s_hi = sorted((abs(lo), abs(hi)))
        sign = -1.0 if hi <= 0.0 else 1.0
        total = total + _integrate_log_sub(
            lambda x: g(sign * x), s_lo, s_hi, cfg
        )
    return total


def lp_norm(f: FunctionSpec, p_exp: float, params: JacobiParams,
            domain: tuple[float, float], cfg: QuadConfig) -> NormResult:
    """(integral of |f|^p_exp A over domain)^(1/p_exp); +inf on divergence."""
    if not p_exp > 0:
        raise ParameterError("lp_norm requires p_exp > 0")
    try:
        r = _lp_integral(f, p_exp, params, domain, cfg)
    except DivergentIntegralError:
        return NormResult(math.inf, math.inf)
    base = float(r.value)
    if base == 0.0:
        return NormResult(0.0, 0.0)
    value = base ** (1.0 / p_exp)
    err = value * r.err_estimate / (p_exp * base)
    return NormResult(value, err)


def grand_norm(f: FunctionSpec, p_exp: float, params: JacobiParams,
               interval: tuple[float, float], cfg: QuadConfig,
               n_eps: int = 64) -> NormResult:
    """sup over 0 < eps < p_exp - 1 of
    eps^(1/(p-eps)) ((1/A(I)) int_I |f|^(p-eps) A)^(1/(p-eps)),
    on a geometric eps grid refined toward both endpoints."""
    if not p_exp > 1:
        raise ParameterError("grand_norm requires p_exp > 1")
    mass = interval_measure(params, interval, cfg)
    if not 0.0 < mass < math.inf:
        raise ParameterError("grand_norm needs an interval of finite positive mass")
    width = p_exp - 1.0
    half = n_eps // 2
    frac = np.geomspace(1e-8, 0.5, half)
    eps_grid = np.unique(np.concatenate([width * frac, width * (1.0 - frac)]))
    values, errs = [], []
    for eps in eps_grid:
        q = p_exp - eps
        try:
            r = _lp_integral(f, q, params, interval, cfg)
        except DivergentIntegralError:
            return NormResult(math.inf, math.inf,
                              {"eps_grid": eps_grid, "divergent_at": float(eps)})
        ratio = float(r.value) / mass
        if ratio == 0.0:
            values.append(0.0)
            errs.append(0.0)
            continue
        v = eps ** (1.0 / q) * ratio ** (1.0 / q)
        values.append(v)
        errs.append(v * r.err_estimate / (q * max(float(r.value), 1e-300)))
    values = np.asarray(values)
    i = int(np.argmax(values))
    return NormResult(
        float(values[i]), float(errs[i]),
        {"eps_grid": eps_grid, "values": values, "argmax_eps": float(eps_grid[i])},
    )


def _kernel_positive_on(k: KernelSpec, lo: float, hi: float) -> bool:
    """Whether the kernel has mass on (lo, hi), by support overlap plus a
    positivity spot check."""
    klo, khi = k.support()
    a, b = max(lo, klo), min(hi, khi)
    if not a < b:
        return False
    t = np.geomspace(max(a, 1e-12) * (1 + 1e-9), min(b, 1e9), 129)
    return bool(np.any(k(t) > 0.0))


def _sup_inf_factor(params: JacobiParams, t: float, which: str,
                    cfg: QuadConfig) -> float:
    sup, inf = weight_ratio_extrema(params, t, cfg)
    return sup if which == "sup" else inf


def a_constants(k: KernelSpec, p_exp: float, params: JacobiParams,
                cfg: QuadConfig) -> tuple[float, float]:
    """(a_sup, a_inf): t-integrals of (phi(t)/t) t^(1/p) times the
    (sup / inf over u) of A(u)/A(tu), raised to 1 - 1/p."""
    if not p_exp > 1:
        raise ParameterError("a_constants require p_exp > 1")
    power = 1.0 - 1.0 / p_exp

    # sup ratio is +inf for every t < 1: any kernel mass there gives +inf
    if _kernel_positive_on(k, 0.0, 1.0):
        a_sup = math.inf
    else:
        a_sup = _a_integral(k, p_exp, params, power, "sup", 1.0, math.inf, cfg)
    # inf ratio vanishes for every t > 1; only t < 1 contributes
    a_inf = _a_integral(k, p_exp, params, power, "inf", 0.0, 1.0, cfg)
    return a_sup, a_inf


def _a_integral(k: KernelSpec, p_exp: float, params: JacobiParams,
                power: float, which: str, lo: float, hi: float,
                cfg: QuadConfig) -> float:
    klo, khi = k.support()
    a, b = max(lo, klo), min(hi, khi)
    if not a < b:
        return 0.0

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for i, ti in enumerate(t.ravel()):
            extremum = _sup_inf_factor(params, float(ti), which, cfg)
            if extremum == 0.0:
                continue
            out.ravel()[i] = (
                float(k(ti)) / ti * ti ** (1.0 / p_exp) * extremum ** power
            )
        return out

    try:
        r = _integrate_kernel(integrand, a, b, cfg)
    except DivergentIntegralError:
        return math.inf
    return float(r.value)


def e_constant(k: KernelSpec, p_exp: float, cfg: QuadConfig) -> float:
    """E(phi, p) = integral over t > 1 of (phi(t)/t) t^(1/p); requires the
    kernel supported in [1, inf)."""
    if not p_exp > 0:
        raise ParameterError("e_constant requires p_exp > 0")
    if _kernel_positive_on(k, 0.0, 1.0):
        raise SupportError("e_constant requires the kernel supported in [1, inf)")
    lo, hi = k.support()
    a = max(lo, 1.0)
    if not a < hi:
        return 0.0

    def integrand(t):
        t = np.asarray(t, dtype=float)
        return k(t) / t * t ** (1.0 / p_exp)

    try:
        r = _integrate_kernel(integrand, a, hi, cfg)
    except DivergentIntegralError:
        return math.inf
    return float(r.value)


def b_constants(k: KernelSpec, p_exp: float, params: JacobiParams,
                cfg: QuadConfig) -> tuple[float, float]:
    """(b_sup, b_inf): (integral of phi^p times ratio-extremum^(p-1))^(1/p);
    the negative exponent p - 1 swaps which extremum forces divergence."""
    if not 0.0 < p_exp < 1.0:
        raise ParameterError("b_constants require 0 < p_exp < 1")
    power = p_exp - 1.0

    # inf ratio is 0 for t > 1 and 0^(p-1) = +inf: mass there gives +inf
    if _kernel_positive_on(k, 1.0, math.inf):
        b_inf = math.inf
    else:
        b_inf = _b_integral(k, p_exp, params, power, "inf", 0.0, 1.0, cfg)
    # sup ratio is +inf for t < 1 and inf^(p-1) = 0: only t > 1 contributes
    b_sup = _b_integral(k, p_exp, params, power, "sup", 1.0, math.inf, cfg)
    return b_sup, b_inf


def _b_integral(k: KernelSpec, p_exp: float, params: JacobiParams,
                power: float, which: str, lo: float, hi: float,
                cfg: QuadConfig) -> float:
    klo, khi = k.support()
    a, b = max(lo, klo), min(hi, khi)
    if not a < b:
        return 0.0

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for i, ti in enumerate(t.ravel()):
            extremum = _sup_inf_factor(params, float(ti), which, cfg)
            if extremum in (0.0, math.inf):
                continue
            out.ravel()[i] = float(k(ti)) ** p_exp * extremum ** power
        return out

    try:
        r = _integrate_kernel(integrand, a, b, cfg)
    except DivergentIntegralError:
        return math.inf
    return float(r.value) ** (1.0 / p_exp)


def lp_lq_constant(k: KernelSpec, p_exp: float, q_exp: float,
                   params: JacobiParams, cfg: QuadConfig) -> float:
    """The L^p -> L^q bound constant for 1 < q < p: the t-integral of
    (phi(t)/t) t^(1/q) (u-integral of (A(u)^(q-q/p)/A(tu)^(q-1))^(p/(p-q)))
    raised to (p-q)/(pq)."""
    if not 1.0 < q_exp < p_exp:
        raise ParameterError("lp_lq_constant requires 1 < q < p")
    s = p_exp / (p_exp - q_exp)
    c1 = q_exp - q_exp / p_exp
    c2 = q_exp - 1.0
    rho2 = 2.0 * (params.alpha + params.beta + 1.0)

    def inner(t: float) -> float:
        # exponential rate at u -> inf: converges iff c1 < c2 t
        rate = rho2 * s * (c1 - c2 * t)
        if rate >= 0.0:
            return math.inf

        def gu(u):
            u = np.asarray(u, dtype=float)
            expo = s * (c1 * log_weight_a(params, u) - c2 * log_weight_a(params, t * u))
            return np.exp(np.minimum(expo, 709.0))

        cutoff = max(cfg.truncation_x, 200.0 / abs(rate) * rho2)
        r = integrate_to_infinity(gu, 1.0, cfg, cutoff=cutoff)
        r = r + integrate_to_zero(gu, 1.0, cfg)
        return 2.0 * float(r.value)

    def integrand(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for i, ti in enumerate(t.ravel()):
            phi = float(k(ti))
            if phi == 0.0:
                continue
            iv = inner(float(ti))
            if iv == math.inf:
                raise DivergentIntegralError(
                    f"inner dilation integral diverges at t={ti:g}"
                )
            out.ravel()[i] = (
                phi / ti * ti ** (1.0 / q_exp)
                * iv ** ((p_exp - q_exp) / (p_exp * q_exp))
            )
        return out

    lo, hi = k.support()
    try:
        r = _integrate_kernel(integrand, lo, hi, cfg)
    except DivergentIntegralError:
        return math.inf
    return float(r.value)


def grand_bound_constant(k: KernelSpec, p_exp: float, params: JacobiParams,
                         cfg: QuadConfig, n_sigma: int = 64) -> float:
    """(A(1))^2 (p-1) inf over 0 < sigma < p-1 of
    sigma^(-1/(p-sigma)) E(phi, p-sigma), by grid search with one
    golden-section refinement around the grid minimum."""
    if not p_exp > 1:
        raise ParameterError("grand_bound_constant requires p_exp > 1")
    if _kernel_positive_on(k, 0.0, 1.0):
        raise SupportError(
            "grand_bound_constant requires the kernel supported in [1, inf)"
        )
    width = p_exp - 1.0
    half = n_sigma // 2
    frac = np.geomspace(1e-6, 0.5, half)
    grid = np.unique(np.concatenate([width * frac, width * (1.0 - frac)]))

    def objective(sigma: float) -> float:
        e = e_constant(k, p_exp - sigma, cfg)
        if e == math.inf:
            return math.inf
        return sigma ** (-1.0 / (p_exp - sigma)) * e

    vals = np.array([objective(s) for s in grid])
    if not np.any(np.isfinite(vals)):
        raise KernelNotIntegrableError(
            "E(phi, p - sigma) is infinite for every grid sigma"
        )
    i = int(np.argmin(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    phi_ratio = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - phi_ratio * (b - a)
    d = a + phi_ratio * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(40):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - phi_ratio * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi_ratio * (b - a)
            fd = objective(d)
    best = min(float(np.min(vals)), fc, fd)
    a1 = weight_a(params, 1.0)
    return a1 * a1 * (p_exp - 1.0) * best


class LogInterpFunction:
    """A non-negative function tabulated as log-value against log-argument
    on (0, inf), linearly interpolated in log-log coordinates (exact for
    powers).  Provides the protocol lp_norm/grand_norm need."""

    def __init__(self, grid, log_vals):
        self.grid = np.asarray(grid, dtype=float)
        self.log_vals = np.asarray(log_vals, dtype=float)
        if self.grid.ndim != 1 or self.grid.shape != self.log_vals.shape:
            raise ParameterError("grid and log_vals must be matching 1-d arrays")
        if not np.all(np.diff(self.grid) > 0) or self.grid[0] <= 0:
            raise ParameterError("grid must be positive increasing")

    def support(self) -> tuple[float, float]:
        return float(self.grid[0]), float(self.grid[-1])

    def log_abs(self, x):
        xx = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full(xx.shape, -math.inf)
        inside = (xx >= self.grid[0]) & (xx <= self.grid[-1])
        out[inside] = np.interp(
            np.log(xx[inside]), np.log(self.grid), self.log_vals
        )
        if np.ndim(x) == 0:
            return float(out[0])
        return out

    def log_abs_decomp(self, x):
        return self.log_abs(x), 0.0

    def __call__(self, x):
        la = self.log_abs(x)
        return np.exp(np.minimum(np.atleast_1d(la), 709.0)) if np.ndim(x) else float(np.exp(min(la, 709.0)))


def hausdorff_lp_norm(k: KernelSpec, f, p_exp: float, params: JacobiParams,
                      domain: tuple[float, float], cfg: QuadConfig) -> NormResult:
    """(integral over domain of (H f)^p_exp A)^(1/p_exp) for non-negative f,
    with H f evaluated in log space at every quadrature node; +inf on
    divergence."""
    if not p_exp > 0:
        raise ParameterError("hausdorff_lp_norm requires p_exp > 0")
    a, b = domain
    acc = [0.0, 0.0]  # integrand-mass-weighted inner relative error

    def g(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape)
        live = x != 0.0
        if np.any(live):
            # core = log H f + log A(x): combining the exponents here avoids
            # cancelling two huge floats when A(x) over/underflows in logs
            core, rel = hausdorff_log_grid(
                k, f, params, x[live], cfg, include_weight=False
            )
            if np.any(core == math.inf):
                raise DivergentIntegralError("H f is infinite at a quadrature node")
            expo = p_exp * core + (1.0 - p_exp) * log_weight_a(params, x[live])
            vals = np.where(
                np.isfinite(core), np.exp(np.minimum(expo, 709.0)), 0.0
            )
            out[live] = vals
            acc[0] += float(np.sum(rel * vals))
            acc[1] += float(np.sum(vals))
        return out

    pieces = [(a, 0.0), (0.0, b)] if a < 0.0 < b else [(a, b)]
    total = IntegralResult(0.0, 0.0, 0)
    try:
        for lo, hi in pieces:
            s_lo, s_hi = sorted((abs(lo), abs(hi)))
            sign = -1.0 if hi <= 0.0 else 1.0
            total = total + _integrate_log_sub(
                lambda x: g(sign * x), s_lo, s_hi, cfg
            )
    except DivergentIntegralError:
        return NormResult(math.inf, math.inf)
    base = float(total.value)
    if base == 0.0:
        return NormResult(0.0, 0.0)
    value = base ** (1.0 / p_exp)
    # inner H f relative error enters the integrand to power p_exp
    inner_rel = acc[0] / acc[1] if acc[1] > 0.0 else 0.0
    err_frac = total.err_estimate / base + p_exp * inner_rel
    return NormResult(value, value * err_frac / p_exp)


def extremal_function(kind: str, params: JacobiParams, **kw) -> FunctionSpec:
    """The sharpness witnesses: kind in {"eps", "delta", "zero"} with their
    defining parameters (p and eps / delta)."""
    if kind == "eps":
        return FunctionSpec(
            "extremal_eps", params={"p": kw["p"], "eps": kw["eps"]}, jacobi=params
        )
    if kind == "delta":
        return FunctionSpec(
            "extremal_delta", params={"p": kw["p"], "delta": kw["delta"]},
            jacobi=params,
        )
    if kind == "zero":
        return FunctionSpec("extremal_zero", params={"p": kw["p"]}, jacobi=params)
    raise ParameterError(f"unknown extremal kind {kind!r}")


def power_lemma_check(h: FunctionSpec, s: float,
                      cfg: QuadConfig) -> tuple[float, float]:
    """For non-negative non-increasing h on (a, b) and 0 < s < 1:
    lhs = (int h)^s, rhs = s int h(t)^s (t-a)^(s-1) dt; the lemma asserts
    lhs <= rhs."""
    if not 0.0 < s < 1.0:
        raise ParameterError("power_lemma_check requires 0 < s < 1")
    a, b = h.support()
    if h.family == "zero" or not a < b:
        return 0.0, 0.0
    if not (np.isfinite(a) and np.isfinite(b)):
        raise ParameterError("power_lemma_check needs a bounded support")
    probe = np.linspace(a, b, 257)[1:-1]
    vals = h(probe)
    if np.any(vals < 0.0):
        raise MonotonicityError("h must be non-negative")
    if np.any(np.diff(vals) > 1e-12 * (np.max(np.abs(vals)) + 1e-300)):
        raise MonotonicityError("h must be non-increasing on its support")
    lhs_int = integrate_finite(lambda t: np.asarray(h(t)), a, b, cfg)
    lhs = float(lhs_int.value) ** s

    def g(u):
        # u = t - a, singular weight u^(s-1) at 0
        u = np.asarray(u, dtype=float)
        return np.asarray(h(a + u)) ** s * u ** (s - 1.0)

    rhs_int = integrate_to_zero(g, b - a, cfg)
    rhs = s * float(rhs_int.value)
    return lhs, rhs


def mphi_check(k: KernelSpec, f: FunctionSpec, params: JacobiParams,
               x: float, t_grid=None) -> bool:
    """Whether t -> (phi(t)/t) f(x/t) A(x/t)/A(x) is non-increasing on the
    sampled grid (the membership gate for the quasi-Banach upper bound)."""
    if x == 0.0:
        raise ParameterError("mphi_check requires x != 0")
    if f.family == "zero":
        return True
    if t_grid is None:
        t_grid = np.geomspace(1e-3, 1e3, 601)
    t = np.asarray(t_grid, dtype=float)
    u = x / t
    fv = np.asarray(f(u), dtype=float)
    vals = np.zeros(t.shape)
    live = fv != 0.0
    if np.any(live):
        log_ratio = log_weight_a(params, u[live]) - log_weight_a(params, x)
        vals[live] = (
            k(t[live]) / t[live] * fv[live]
            * np.exp(np.minimum(log_ratio, 700.0))
        )
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    return not np.any(np.diff(vals) > 1e-12 * (scale + 1e-300))
