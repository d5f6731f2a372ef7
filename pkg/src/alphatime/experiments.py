"""Experiment catalog: each entry turns a resolved config into records and criteria."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from .composition import CompositionSpec, u_ictbap, u_mc, u_quadrature
from .config import ConfigError, ExperimentConfig, FieldSpec
from .densities import (
    density_pde_residual,
    subordinator_pde_residual,
    weighted_kernel_integral,
    weighted_kernel_integral_direct,
)
from .exit_time import BallDomain, exit_time_mc
from .finite_diff import FDStencil
from .montecarlo import mc_samples
from .residuals import (
    ResidualReport,
    check_btp,
    check_thm_alpha,
    check_thm_cauchy,
    check_thm_eps,
    check_thm_fk,
    check_thm_ictbap,
)
from .sampling import AlphaIndex, sample_subordinator, sample_symmetric_stable
from .semigroups import PlaneWave
from .skbm import (
    SpectralCoefficients,
    SpectralDomain,
    boundary_sup,
    laplace_bridge,
    semigroup_property_check,
    skbm_mc,
    skbm_pde_residual,
)


@dataclass
class Criterion:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), "value": self.value,
                "tolerance": self.tolerance, "detail": self.detail}


@dataclass
class Outcome:
    records: list[dict] = field(default_factory=list)
    criteria: list[Criterion] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)


@dataclass(frozen=True)
class Experiment:
    id: str
    description: str
    anchor: str
    fields: dict
    run: Callable[[ExperimentConfig], Outcome]


# -- shared helpers -----------------------------------------------------------------------------

_FD_FIELDS = {
    "x_grid": FieldSpec("floats", [0.0, 0.4, 1.1], "evaluation points (1-d)"),
    "base_step": FieldSpec("float", None, "finite-difference base step (default per order)"),
    "richardson": FieldSpec("int", 2, "Richardson levels"),
}
_MC_FIELDS = {
    "mc_n": FieldSpec("int", 1_000_000, "Monte Carlo sample size for the quadrature cross-check (0 skips)"),
    "mc_t": FieldSpec("float", 1.0, "time of the cross-check"),
    "mc_x": FieldSpec("float", 0.3, "point of the cross-check"),
}


def _stencil(cfg, order: int) -> FDStencil:
    return FDStencil(order, cfg["base_step"], cfg["richardson"])


def _residual_records(rep: ResidualReport, **extra) -> list[dict]:
    rows = []
    for p in rep.points:
        rows.append({"tag": rep.theorem_tag, **extra, "t": p.t, "x": p.x[0] if len(p.x) == 1 else list(p.x),
                     "lhs": p.lhs, "rhs": p.rhs, "abs_residual": p.abs_residual,
                     "rel_residual": p.rel_residual, "fd_error": p.fd_error})
    return rows


def _residual_criterion(name: str, rep: ResidualReport) -> Criterion:
    value = rep.max_abs_residual if rep.criterion == "absolute" else rep.max_rel_residual
    return Criterion(name, rep.passed, value, rep.tolerance, f"{rep.criterion} residual, {len(rep.points)} points")


def _x_independence(name: str, reps: list[ResidualReport]) -> Criterion:
    spread = max(r.x_spread for r in reps)
    return Criterion(name, spread <= 1e-12, spread, 1e-12, "spread of residual / f(x) across x")


def _mc_crosscheck(out: Outcome, name: str, spec: CompositionSpec, cfg) -> None:
    n = cfg["mc_n"]
    if n <= 0:
        return
    t, x = cfg["mc_t"], cfg["mc_x"]
    quad, qerr = u_quadrature(spec, t, x, full_output=True)
    est = u_mc(spec, t, x, n, cfg["seed"], workers=cfg["workers"])
    gap = abs(quad - est.mean)
    out.records.append({"tag": f"mc-{spec.variant}", "t": t, "x": x, "quadrature": quad,
                        "quadrature_error": qerr, "mc_mean": est.mean, "mc_stderr": est.stderr, "n": est.n})
    out.criteria.append(Criterion(name, gap <= 4 * est.stderr, gap, 4 * est.stderr,
                                  f"|quadrature - MC| <= 4 stderr (quadrature error {qerr:.2g})"))


# -- plane-wave identities ------------------------------------------------------------------------

def _run_thm21(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-4
    reps = []
    for k in cfg["kappa"]:
        rep = check_thm_cauchy(k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2), tol)
        reps.append(rep)
        out.records += _residual_records(rep, kappa=k)
        out.criteria.append(_residual_criterion(f"residual kappa={k:g}", rep))
    out.criteria.append(_x_independence("x-independence", reps))
    _mc_crosscheck(out, "quadrature vs MC", CompositionSpec("cauchy-time", PlaneWave(cfg["kappa"][0])), cfg)
    return out


def _run_thm22(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-4
    reps = []
    for e in cfg["epsilon"]:
        for k in cfg["kappa"]:
            rep = check_thm_eps(k, e, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2), tol)
            reps.append(rep)
            out.records += _residual_records(rep, kappa=k, epsilon=e)
            out.criteria.append(_residual_criterion(f"residual eps={e:g} kappa={k:g}", rep))
    out.criteria.append(_x_independence("x-independence", reps))
    spec = CompositionSpec("eps-weighted", PlaneWave(cfg["kappa"][-1]), epsilon=cfg["epsilon"][0])
    _mc_crosscheck(out, "quadrature vs MC", spec, cfg)
    return out


def _run_thm23(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-4
    for c in cfg["c"]:
        for k in cfg["kappa"]:
            good = check_thm_fk(k, c, "derivation-consistent", cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2), tol)
            lit = check_thm_fk(k, c, "literal", cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2), tol)
            out.records += _residual_records(good, kappa=k, c=c)
            out.records += _residual_records(lit, kappa=k, c=c)
            out.criteria.append(_residual_criterion(f"derivation-consistent c={c:g} kappa={k:g}", good))
            out.extras.setdefault("literal_max_rel", {})[f"c={c:g},kappa={k:g}"] = lit.max_rel_residual
            if c == cfg["gap_c"] and k == cfg["gap_kappa"]:
                out.criteria.append(_literal_gap(lit, c, k))
    spec = CompositionSpec("feynman-kac", PlaneWave(cfg["kappa"][0]), c=min(cfg["c"]))
    _mc_crosscheck(out, "quadrature vs MC", spec, cfg)
    return out


def _literal_gap(lit: ResidualReport, c: float, k: float) -> Criterion:
    # literal - consistent = -c Lap u, so |lhs - rhs_literal| = |c| k^2 |g f|
    beta = k * k - c
    worst = 0.0
    for p in lit.points:
        f = math.cos(k * p.x[0])
        if abs(f) < 1e-8:
            continue
        expected = abs(c) * k * k * weighted_kernel_integral(1, beta, p.t).value * abs(f)
        worst = max(worst, abs(p.abs_residual - expected) / expected)
    return Criterion(f"literal gap equals |c| k^2 g (c={c:g}, kappa={k:g})", worst <= 1e-3, worst, 1e-3,
                     "relative deviation of the literal residual from the analytic gap")


def _run_thm24(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-6
    for k2 in cfg["k2"]:
        k = math.sqrt(k2)
        rep = check_thm_ictbap(k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2), tol)
        out.records += _residual_records(rep, k2=k2)
        out.criteria.append(_residual_criterion(f"residual |kappa|^2={k2:g}", rep))
        worst, bound = 0.0, 0.0
        for t in cfg["t_grid"]:
            for x in cfg["x_grid"]:
                v = u_ictbap(k, t, x)
                gap = abs(v.quadrature - v.closed)
                out.records.append({"tag": "ictbap-quadrature", "k2": k2, "t": t, "x": x, "closed": v.closed,
                                    "quadrature_re": v.quadrature.real, "quadrature_im": v.quadrature.imag,
                                    "quadrature_error": v.error})
                if gap > v.error:
                    worst = max(worst, gap - v.error)
                bound = max(bound, v.error)
        out.criteria.append(Criterion(f"quadrature vs closed form |kappa|^2={k2:g}", worst == 0.0, worst, 0.0,
                                      f"excess of |quadrature - closed| over reported error (max error {bound:.3g})"))
    _mc_crosscheck(out, "quadrature vs MC", CompositionSpec("ictbap", PlaneWave(math.sqrt(cfg["k2"][-1]))), cfg)
    return out


def _run_thm25(cfg) -> Outcome:
    out = Outcome()
    for a in cfg["alpha"]:
        idx = AlphaIndex.of(a)
        for k in cfg["kappa"]:
            rep = check_thm_alpha(idx, k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2 * idx.m),
                                  cfg["tolerance"], experimental=cfg["experimental"])
            out.records += _residual_records(rep, alpha=a, kappa=k)
            if rep.asserted:
                out.criteria.append(_residual_criterion(f"residual alpha={a} kappa={k:g}", rep))
            else:
                out.extras.setdefault("exploratory_max_rel", {})[f"alpha={a},kappa={k:g}"] = rep.max_rel_residual
    # the alpha = 1 member must reproduce the Cauchy-time check exactly
    k = cfg["kappa"][0]
    one = check_thm_alpha(1, k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2))
    ref = check_thm_cauchy(k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2))
    diff = max(abs(p.abs_residual - q.abs_residual) for p, q in zip(one.points, ref.points))
    out.criteria.append(Criterion("alpha=1 agrees with the Cauchy-time check", diff == 0.0, diff, 0.0,
                                  "bitwise comparison of residuals"))
    spec = CompositionSpec("alpha-time", PlaneWave(k), alpha=cfg["alpha"][0])
    _mc_crosscheck(out, "quadrature vs MC", spec, cfg)
    return out


def _run_btp(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-5
    for k in cfg["kappa"]:
        rep = check_btp(k, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 1), tol)
        out.records += _residual_records(rep, kappa=k)
        out.criteria.append(_residual_criterion(f"residual kappa={k:g}", rep))
    _mc_crosscheck(out, "quadrature vs MC", CompositionSpec("btp", PlaneWave(cfg["kappa"][0])), cfg)
    return out


# -- exit problem -------------------------------------------------------------------------------

def _run_exit(cfg) -> Outcome:
    out = Outcome()
    n = cfg["n"]
    ball = BallDomain(n, cfg["R"])
    x = cfg["x"] if cfg["x"] is not None else [0.0] * n
    res = exit_time_mc(ball, x, cfg["h"], cfg["N"], cfg["seed"], two_stage=cfg["two_stage"], workers=cfg["workers"])
    for lv in res.levels:
        row = {"tag": "exit-level", "h": lv.h, "collapsed_mean": lv.collapsed.mean,
               "collapsed_stderr": lv.collapsed.stderr}
        if lv.two_stage is not None:
            row.update(two_stage_mean=lv.two_stage.mean, two_stage_stderr=lv.two_stage.stderr)
        out.records.append(row)
    out.extras["exit"] = res.as_dict()
    tol = cfg["tolerance"] or 0.05
    rel = abs(res.collapsed.mean - res.oracle) / res.oracle
    out.criteria.append(Criterion("extrapolated collapsed mean vs oracle", rel <= tol, rel, tol,
                                  f"oracle {res.oracle:g}, relative error"))
    if res.two_stage is not None:
        rel2 = abs(res.two_stage.mean - res.oracle) / res.oracle
        out.criteria.append(Criterion("extrapolated two-stage mean vs oracle", rel2 <= tol, rel2, tol,
                                      f"oracle {res.oracle:g}, relative error"))
        out.criteria.append(Criterion("two-stage vs collapsed", res.getoor_gap <= 4 * res.joint_stderr,
                                      res.getoor_gap, 4 * res.joint_stderr, "within 4 joint stderr"))
    if len(res.levels) >= 3:
        e = [lv.collapsed for lv in res.levels[-3:]]
        lhs = abs(e[1].mean - e[2].mean)
        rhs = abs(e[0].mean - e[1].mean) + 2.0 * max(v.stderr for v in e)
        out.criteria.append(Criterion("refinement trend converges", lhs < rhs, lhs, rhs,
                                      "|e(h/2) - e(h/4)| < |e(h) - e(h/2)| + 2 stderr"))
    return out


# -- SKBM ---------------------------------------------------------------------------------------

_TERM = re.compile(r"^([+-]?\s*(?:\d+(?:\.\d*)?(?:e[+-]?\d+)?)?)\s*\*?\s*sin\(\s*(\d*)\s*\*?\s*x\s*\)$")


def parse_sine_sum(text: str) -> SpectralCoefficients:
    """``"sin(x)+0.5*sin(3x)"`` or ``"bump"`` / ``"bump:L"`` (first L modes of an indicator) on (0, pi)."""
    s = text.replace(" ", "").lower()
    if s.startswith("bump"):
        L = int(s.split(":", 1)[1]) if ":" in s else 20
        return SpectralCoefficients.indicator_bump(L)
    terms = re.findall(r"[+-]?[^+-]+", s)
    amps: dict[int, float] = {}
    for term in terms:
        m = _TERM.match(term)
        if not m:
            raise ConfigError(f"cannot parse term {term!r} in {text!r}")
        coef = m.group(1).replace(" ", "")
        a = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        l = int(m.group(2) or 1)
        amps[l] = amps.get(l, 0.0) + a
    return SpectralCoefficients.from_sines(SpectralDomain.interval(), amps)


def _run_skbm(cfg) -> Outcome:
    out = Outcome()
    coeffs = parse_sine_sum(cfg["f"])
    a = AlphaIndex.of(cfg["alpha"])
    rep = skbm_pde_residual(coeffs, a, cfg["t_grid"], cfg["x_grid"], _stencil(cfg, 2 * a.m), cfg["tolerance"])
    out.records += _residual_records(rep, alpha=str(a), f=cfg["f"])
    out.criteria.append(_residual_criterion("spectral Lap^k + FD time residual", rep))
    bsup = boundary_sup(coeffs, a, cfg["t_grid"])
    out.criteria.append(Criterion("boundary sup", bsup < 1e-10, bsup, 1e-10, "max |u| at x = 0 and x = pi"))
    sg = semigroup_property_check(coeffs, a, 0.5, 0.5, cfg["x_grid"])
    out.criteria.append(Criterion("semigroup property", sg < 1e-12, sg, 1e-12, "t1 = t2 = 0.5"))
    if a.fraction == 1:
        v, err = laplace_bridge(1.0, a, 1.0)
        gap = abs(v - math.exp(-1.0))
        out.criteria.append(Criterion("Laplace identity int e^-s u_1(s) ds = e^-1", gap <= 1e-8, gap, 1e-8,
                                      f"quadrature error {err:.2g}"))
    if cfg["mc_n"] > 0:
        res = skbm_mc(coeffs, a, cfg["mc_t"], cfg["mc_x"], cfg["h"], cfg["mc_n"], cfg["seed"], workers=cfg["workers"])
        for h, est in res.estimates:
            out.records.append({"tag": "skbm-mc", "h": h, "t": cfg["mc_t"], "x": cfg["mc_x"], "mc_mean": est.mean,
                                "mc_stderr": est.stderr, "spectral": res.spectral})
        out.extras["skbm_mc"] = res.as_dict()
        gap = abs(res.finest.mean - res.spectral)
        out.criteria.append(Criterion("MC vs spectral", res.passed, gap, res.tolerance,
                                      "within max(4 stderr, refinement bias band)"))
    return out


# -- samplers and densities ---------------------------------------------------------------------

def _cf_draw(count, gen, *, alpha, xi):
    y = sample_symmetric_stable(alpha, 1.0, gen, size=count)
    return np.cos(np.outer(y, xi))


def _laplace_draw(count, gen, *, beta, lam):
    s = sample_subordinator(beta, 1.0, gen, size=count)
    return np.exp(-np.outer(s, lam))


def _run_samplers(cfg) -> Outcome:
    out = Outcome()
    N, xi = cfg["N"], np.asarray(cfg["xi"])
    tol = 4.0 / math.sqrt(N)
    for i, a in enumerate(cfg["alpha"]):
        idx = AlphaIndex.of(a)
        vals = mc_samples(partial(_cf_draw, alpha=idx, xi=xi), N, cfg["seed"], workers=cfg["workers"],
                          first_stream=i << 20)
        emp = vals.mean(axis=0)
        for x, e in zip(xi, emp):
            target = math.exp(-abs(x) ** idx.value)
            out.records.append({"tag": "stable-cf", "alpha": a, "xi": float(x), "empirical": float(e),
                                "exact": target})
            out.criteria.append(Criterion(f"E cos(xi Y) alpha={a} xi={x:g}", abs(e - target) <= tol,
                                          abs(float(e) - target), tol, "4/sqrt(N)"))
    lam = np.asarray(cfg["lam"])
    for j, b in enumerate(cfg["beta"]):
        beta = AlphaIndex.of(b).value
        vals = mc_samples(partial(_laplace_draw, beta=beta, lam=lam), N, cfg["seed"], workers=cfg["workers"],
                          first_stream=(len(cfg["alpha"]) + j) << 20)
        emp, se = vals.mean(axis=0), vals.std(axis=0, ddof=1) / math.sqrt(N)
        for l, e, s in zip(lam, emp, se):
            target = math.exp(-l ** beta)
            out.records.append({"tag": "subordinator-laplace", "beta": b, "lam": float(l), "empirical": float(e),
                                "stderr": float(s), "exact": target})
            out.criteria.append(Criterion(f"E exp(-lam T) beta={b} lam={l:g}", abs(e - target) <= 4 * s,
                                          abs(float(e) - target), 4 * float(s), "4 stderr"))
    return out


def _run_densities(cfg) -> Outcome:
    out = Outcome()
    tol = cfg["tolerance"] or 1e-8
    w1, w2 = 0.0, 0.0
    for t in cfg["t_grid"]:
        for s in cfg["s_grid"]:
            r1 = abs(density_pde_residual(1, t, s))
            r2 = abs(subordinator_pde_residual(t, s))
            w1, w2 = max(w1, r1), max(w2, r2)
            out.records.append({"tag": "kernel-pde", "t": t, "s": s, "cauchy_harmonic": r1, "levy_heat": r2})
    out.criteria.append(Criterion("Cauchy density: (d_s^2 + d_t^2) p = 0", w1 <= tol, w1, tol, "max |residual|"))
    out.criteria.append(Criterion("1/2-subordinator density: d_s u = d_t^2 u", w2 <= tol, w2, tol, "max |residual|"))
    worst = 0.0
    for a in cfg["alpha"]:
        for beta in cfg["beta"]:
            p = weighted_kernel_integral(a, beta, 1.0)
            d = weighted_kernel_integral_direct(a, beta, 1.0)
            gap = abs(p.value - d.value)
            excess = max(gap - (p.error + d.error + 1e-12), 0.0)
            worst = max(worst, excess)
            out.records.append({"tag": "kernel-integral", "alpha": a, "beta": beta, "parseval": p.value,
                                "direct": d.value, "error_bound": p.error + d.error})
    out.criteria.append(Criterion("weighted kernel integral: Parseval vs density quadrature", worst == 0.0, worst,
                                  0.0, "excess over combined reported error"))
    v, err = laplace_bridge(1.0, 1, 1.0)
    gap = abs(v - math.exp(-1.0))
    out.criteria.append(Criterion("Laplace identity int e^-s u_1(s) ds = e^-1", gap <= 1e-8, gap, 1e-8,
                                  f"quadrature error {err:.2g}"))
    return out


_PW = {"t_grid": FieldSpec("floats", [0.5, 1.0, 2.0], "times")}

CATALOG: dict[str, Experiment] = {e.id: e for e in [
    Experiment("thm21", "Cauchy-time process: second-order time PDE on plane waves",
               "Cauchy-time PDE d2u/dt2 = -2 Lap f/(pi t) - Lap^2 u",
               {"kappa": FieldSpec("floats", [0.5, 1.0, 2.0]), **_PW, **_FD_FIELDS, **_MC_FIELDS}, _run_thm21),
    Experiment("thm22", "epsilon-scaled Cauchy-time process with killing weight exp(-S/eps)",
               "epsilon-weighted Cauchy-time PDE",
               {"kappa": FieldSpec("floats", [0.0, 1.0]), "epsilon": FieldSpec("floats", [0.5, 1.0, 2.0]),
                **_PW, **_FD_FIELDS, **_MC_FIELDS}, _run_thm22),
    Experiment("thm23", "Feynman-Kac Cauchy-time PDE, literal and derivation-consistent assemblies",
               "Feynman-Kac Cauchy-time PDE with potential c",
               {"kappa": FieldSpec("floats", [1.0, 2.0]), "c": FieldSpec("floats", [0.0, -1.0]),
                "gap_c": FieldSpec("float", -1.0), "gap_kappa": FieldSpec("float", 1.0),
                **_PW, **_FD_FIELDS, **_MC_FIELDS}, _run_thm23),
    Experiment("thm24", "imaginary-Cauchy-time Brownian-angle process: d2u/dt2 = (Lap + 1)^2 u",
               "ICTBAP Kuramoto-Sivashinsky-type PDE",
               {"k2": FieldSpec("floats", [0.0, 1.0, 2.0, 4.0]), **_PW, **_FD_FIELDS, **_MC_FIELDS}, _run_thm24),
    Experiment("thm25", "alpha-time process with alpha = 1/m: time PDE of order 2m",
               "rational alpha-time PDE (-1)^(l+1) d^{2m}u/dt^{2m} = ...",
               {"alpha": FieldSpec("alphas", ["1/2", "1/3"]), "kappa": FieldSpec("floats", [0.5, 1.0]),
                "t_grid": FieldSpec("floats", [1.0, 2.0]), "experimental": FieldSpec("bool", False),
                **_FD_FIELDS, **_MC_FIELDS}, _run_thm25),
    Experiment("btp", "Brownian-time process: du/dt = Lap f/sqrt(pi t) + Lap^2 u",
               "Brownian-time PDE (alpha = 2)",
               {"kappa": FieldSpec("floats", [0.5, 1.0, 2.0]), **_PW, **_FD_FIELDS, **_MC_FIELDS}, _run_btp),
    Experiment("exit", "mean exit time of the Cauchy-time Brownian motion from a ball",
               "exit-time problem Lap u = -1, u = 0 on the boundary",
               {"n": FieldSpec("int", 1), "R": FieldSpec("float", 1.0), "x": FieldSpec("floats", None),
                "N": FieldSpec("int", 100_000), "h": FieldSpec("floats", [1e-3, 5e-4, 2.5e-4]),
                "two_stage": FieldSpec("bool", True)}, _run_exit),
    Experiment("skbm", "subordinate killed Brownian motion on (0, pi): spectral PDE, semigroup and MC",
               "SKBM PDE Lap^k u + (-1)^(k+1) d^{2m}u/dt^{2m} = 0",
               {"alpha": FieldSpec("alpha", "1"), "f": FieldSpec("str", "sin(x)"),
                "t_grid": FieldSpec("floats", [0.5, 1.0, 2.0]),
                "x_grid": FieldSpec("floats", [0.3, 1.0, math.pi / 2, 2.5]),
                "base_step": FieldSpec("float", None), "richardson": FieldSpec("int", 2),
                "mc_n": FieldSpec("int", 100_000, "Monte Carlo sample size (0 skips)"),
                "mc_t": FieldSpec("float", 1.0), "mc_x": FieldSpec("float", math.pi / 2),
                "h": FieldSpec("float", 2e-3, "coarsest Brownian step; h/2 is also run")}, _run_skbm),
    Experiment("samplers", "characteristic-function and Laplace-transform checks of the samplers",
               "stable clock exp(-t|xi|^alpha) and subordinator exp(-t lam^beta)",
               {"alpha": FieldSpec("alphas", ["1/3", "1/2", "1", "3/2", "2"]),
                "xi": FieldSpec("floats", [0.5, 1.0, 2.0]), "N": FieldSpec("int", 1_000_000),
                "beta": FieldSpec("alphas", ["1/2", "1/3"]), "lam": FieldSpec("floats", [0.5, 1.0, 2.0])},
               _run_samplers),
    Experiment("densities", "kernel PDEs of the Cauchy and 1/2-subordinator densities, kernel integrals",
               "Cauchy kernel harmonicity and Levy-density heat identity",
               {"t_grid": FieldSpec("floats", [0.5, 1.0, 2.0]), "s_grid": FieldSpec("floats", [0.3, 1.0, 2.0]),
                "alpha": FieldSpec("alphas", ["1/2", "1", "3/2"]),
                "beta": FieldSpec("floats", [0.5, 1.0, 2.0])}, _run_densities),
]}
