"""Stable and subordinator densities, and the weighted kernel integral.

The weighted kernel integral

    g(t; alpha, beta) = 2 * int_0^inf p_t^alpha(0, s) exp(-beta s) ds

is the time profile of ``E f(X(|Y(t)|))`` for any plane wave with
``T_s f = exp(-beta s) f``; every plane-wave PDE check runs through it.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .finite_diff import FDStencil, fd_derivative
from .sampling import AlphaIndex

__all__ = [
    "QuadratureError",
    "WeightedKernelIntegral",
    "stable_density",
    "stable_density_series",
    "stable_density_even_deriv_at_zero",
    "subordinator_density",
    "weighted_kernel_integral",
    "kernel_profile",
    "weighted_kernel_integral_direct",
    "density_pde_residual",
    "subordinator_pde_residual",
]

# exp(-CUTOFF) is negligible against double precision
_CUTOFF = 45.0


class QuadratureError(RuntimeError):
    """Quadrature did not reach its tolerance; ``bound`` is the achieved error estimate."""

    def __init__(self, message: str, bound: float):
        super().__init__(f"{message} (achieved error bound {bound:.3g})")
        self.bound = bound


def _quad(func, a, b, *, tol=1e-13, what="integral", **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(func, a, b, epsabs=kw.pop("epsabs", 0.0), epsrel=tol,
                                        limit=kw.pop("limit", 500), **kw)
        except integrate.IntegrationWarning as exc:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                value, err = integrate.quad(func, a, b, epsabs=0.0, epsrel=tol, limit=500, **kw)
            if not err <= max(1e3 * tol * abs(value), 1e-14):
                raise QuadratureError(f"{what} did not converge: {exc}", err) from None
    return value, err


def _alpha(alpha) -> AlphaIndex:
    return AlphaIndex.of(alpha)


def _fourier_density(a: float, t: float, s: float) -> float:
    s = abs(s)
    if s == 0.0:
        return stable_density_even_deriv_at_zero(a, t, 0)
    if a < 1.0:
        # Rotating xi -> i r turns the cosine inversion into a damped integral:
        # p = (1/pi) int_0^inf exp(-s r - t r^a cos(pi a/2)) sin(t r^a sin(pi a/2)) dr
        c, sn = math.cos(math.pi * a / 2), math.sin(math.pi * a / 2)
        f = lambda r: math.exp(-s * r - t * r ** a * c) * math.sin(t * r ** a * sn)
        value, _ = _quad(f, 0.0, np.inf, limit=1000, what="stable density")
    else:
        # exp(-t xi^a) is negligible past xi_max; QAWO handles the cosine weight
        xi_max = (_CUTOFF / t) ** (1.0 / a)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            value, err = integrate.quad(lambda x: math.exp(-t * x ** a), 0.0, xi_max, weight="cos",
                                        wvar=s, epsabs=1e-17, epsrel=1e-13, limit=5000)
        if not err < 1e-11:
            raise QuadratureError("stable density Fourier inversion did not converge", err)
    return value / math.pi


def stable_density(alpha, t: float, s):
    """Transition density ``p_t^alpha(0, s)`` of the symmetric stable process on R.

    ``alpha = 1`` and ``alpha = 2`` use the Cauchy and Gaussian closed forms;
    other indices invert the Fourier transform ``exp(-t |xi|**alpha)``
    (rotated onto the imaginary axis when ``alpha < 1``).  Accepts scalar or
    array ``s``.
    """
    a = _alpha(alpha)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    s_arr = np.abs(np.asarray(s, dtype=float))
    if a.fraction == 1:
        out = t / (math.pi * (s_arr ** 2 + t ** 2))
    elif a.fraction == 2:
        out = np.exp(-s_arr ** 2 / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
    else:
        out = np.vectorize(lambda v: _fourier_density(a.value, t, float(v)), otypes=[float])(s_arr)
    return float(out) if np.ndim(out) == 0 else out


def stable_density_series(alpha, t: float, s: float, terms: int = 60) -> float:
    """Bergstrom power series in ``1/s`` (convergent for alpha < 1, asymptotic otherwise).

    ``p = (1/pi) sum_k (-1)^(k+1) Gamma(alpha k + 1) sin(k pi alpha / 2) t^k s^(-alpha k - 1) / k!``
    """
    a = _alpha(alpha).value
    s = abs(s)
    total = 0.0
    for k in range(1, terms + 1):
        size = math.exp(math.lgamma(a * k + 1) - math.lgamma(k + 1) + k * math.log(t)
                        - (a * k + 1) * math.log(s))
        total += (-1) ** (k + 1) * size * math.sin(k * math.pi * a / 2)
        # sin(k pi a / 2) can vanish, so stop on the envelope only
        if size < 1e-18 * abs(total):
            break
    return total / math.pi


def stable_density_even_deriv_at_zero(alpha, t: float, j: int) -> float:
    """``d^{2j}/ds^{2j} p_t^alpha(0, s)`` at ``s = 0``.

    Differentiating the cosine inversion under the integral gives
    ``(-1)^j Gamma((2j+1)/alpha) / (pi alpha t^((2j+1)/alpha))``.
    """
    a = _alpha(alpha).value
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if j < 0 or int(j) != j:
        raise ValueError("j must be a non-negative integer")
    p = (2 * j + 1) / a
    return (-1) ** j * math.exp(math.lgamma(p) - p * math.log(t)) / (math.pi * a)


def _subordinator_beta(beta) -> Fraction:
    b = Fraction(str(beta)) if isinstance(beta, str) else Fraction(beta).limit_denominator(1000)
    if not 0 < b < 1:
        raise ValueError(f"subordinator index must lie in (0, 1), got {beta}")
    return b


def subordinator_density(beta, t: float, s) -> float:
    """Density ``u_t^beta(s)`` of the ``beta``-stable subordinator at time ``t``.

    ``beta = 1/2`` is the Levy density ``t (4 pi s^3)^(-1/2) exp(-t^2 / (4 s))``.
    Other indices use Kanter's non-oscillatory integral
    ``u_1(s) = b/((1-b) pi) s^(-1/(1-b)) int_0^pi A(phi) exp(-A(phi) s^(-b/(1-b))) d phi``
    with ``A(phi) = (sin(b phi)/sin phi)^(1/(1-b)) sin((1-b) phi)/sin(b phi)``,
    rescaled by ``u_t(s) = t^(-1/b) u_1(s t^(-1/b))``.  This branch is
    numerical and validated only through the Laplace transform.
    """
    b = _subordinator_beta(beta)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    s_arr = np.asarray(s, dtype=float)
    if np.any(s_arr <= 0):
        raise ValueError("s must be positive")
    if b == Fraction(1, 2):
        out = t / np.sqrt(4.0 * math.pi * s_arr ** 3) * np.exp(-t * t / (4.0 * s_arr))
    else:
        bf = float(b)
        e = 1.0 / (1.0 - bf)
        scale = t ** (-1.0 / bf)

        def kanter(phi):
            return (math.sin(bf * phi) / math.sin(phi)) ** e * math.sin((1.0 - bf) * phi) / math.sin(bf * phi)

        def one(sv):
            y = sv * scale
            z = y ** (-bf * e)
            f = lambda phi: kanter(phi) * math.exp(-kanter(phi) * z)
            v = _quad(f, 0.0, math.pi, tol=1e-12, what="subordinator density")[0]
            return scale * bf * e / math.pi * y ** (-e) * v

        out = np.vectorize(one, otypes=[float])(s_arr)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class WeightedKernelIntegral:
    """``2 int_0^inf p_t^alpha(0, s) exp(-beta s) ds`` with its quadrature error."""

    alpha: AlphaIndex
    beta: float
    t: float
    value: float
    error: float = 0.0


_LD = np.longdouble
_PI_LD = _LD("3.14159265358979323846264338327950288")


@lru_cache(maxsize=None)
def _gauss_legendre_ld(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1] polished to extended precision."""
    x = np.polynomial.legendre.leggauss(n)[0].astype(_LD)
    for _ in range(3):
        p0, p1 = np.ones_like(x), x.copy()
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        dp = n * (x * p1 - p0) / (x * x - 1)
        x = x - p1 / dp
    p0, p1 = np.ones_like(x), x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1)
    return x, 2 / ((1 - x * x) * dp * dp)


@lru_cache(maxsize=None)
def _graded_rule(top: _LD, n: int, levels: int) -> tuple[np.ndarray, np.ndarray]:
    # panels [0, top 2^-levels], ..., [top/2, top], refined geometrically towards 0
    edges = np.concatenate([[_LD(0)], top * _LD(2) ** -np.arange(levels, -1, -1).astype(_LD)])
    x, w = _gauss_legendre_ld(n)
    mid, half = (edges[:-1] + edges[1:]) / 2, (edges[1:] - edges[:-1]) / 2
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def _kernel_profile(l: int, m: int, beta, t, n: int = 20, levels: int = 40):
    """``(2/pi) int_0^{pi/2} exp(-t beta^a tan(theta)^a) d theta`` in extended precision.

    ``xi = beta tan(theta)`` turns the Parseval form into this bounded
    integrand.  On ``[0, pi/4]`` the map ``theta = phi^m`` makes
    ``tan(theta)^(l/m)`` analytic in ``phi``; on ``[pi/4, pi/2]`` the variable
    ``psi = pi/2 - theta`` sees ``exp(-c cot(psi)^a)``, flat to all orders at
    0.  Both halves use a fixed graded Gauss-Legendre rule, so the result is
    a smooth function of ``t`` and ``beta`` (no adaptive switching), which
    is what high-order time differences need.
    """
    a = _LD(l) / _LD(m)
    c = _LD(t) * _LD(beta) ** a
    quarter = _PI_LD / 4
    phi, w1 = _graded_rule(quarter ** (_LD(1) / m), n, levels)
    low = np.sum(w1 * m * phi ** (m - 1) * np.exp(-c * np.tan(phi ** m) ** a))
    psi, w2 = _graded_rule(quarter, n, levels)
    high = np.sum(w2 * np.exp(-c / np.tan(psi) ** a))
    return 2 / _PI_LD * (low + high)


def kernel_profile(alpha, beta, t):
    """Extended-precision value of the weighted kernel integral (see ``weighted_kernel_integral``).

    Accepts ``numpy.longdouble`` times so finite differences can resolve
    high-order derivatives.
    """
    a = _alpha(alpha)
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if beta == 0:
        return _LD(1)
    return _kernel_profile(a.l, a.m, beta, t)


def weighted_kernel_integral(alpha, beta: float, t: float) -> WeightedKernelIntegral:
    """Weighted kernel integral via its Parseval form.

    ``g = (2 beta / pi) int_0^inf exp(-t xi^alpha) / (beta^2 + xi^2) d xi``:
    the Fourier transform of ``exp(-beta |s|)`` is a Lorentzian, so the
    integrand is positive, non-oscillatory and has no heavy tail.  The
    error is the gap to a rule with more nodes, floored at double rounding.
    """
    a = _alpha(alpha)
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if beta == 0:
        return WeightedKernelIntegral(a, 0.0, float(t), 1.0, 0.0)
    v = _kernel_profile(a.l, a.m, beta, t)
    check = _kernel_profile(a.l, a.m, beta, t, n=30, levels=60)
    value = float(v)
    return WeightedKernelIntegral(a, float(beta), float(t), value, float(abs(v - check)) + 2.0 * math.ulp(value))


def weighted_kernel_integral_direct(alpha, beta: float, t: float, tol: float = 1e-12) -> WeightedKernelIntegral:
    """Same integral by quadrature in ``s`` against the density itself (cross-check).

    The range is cut at ``L`` where ``exp(-beta L)`` times the tail bound
    ``int_L^inf p ds <= 1`` is below ``tol``; the cut is reported as error.
    """
    a = _alpha(alpha)
    if beta <= 0:
        return WeightedKernelIntegral(a, float(beta), float(t), 1.0, 0.0)
    cut = max(-math.log(tol) / beta, 10.0 * t ** (1.0 / a.value))
    f = lambda s: stable_density(a, t, s) * math.exp(-beta * s)
    pts = [x for x in (t ** (1.0 / a.value), 1.0 / beta) if x < cut]
    v, e = _quad(f, 0.0, cut, tol=1e-12, points=sorted(pts), what="direct kernel integral")
    return WeightedKernelIntegral(a, float(beta), float(t), 2.0 * v, 2.0 * e + 2.0 * math.exp(-beta * cut))


def _pde_orders(a: AlphaIndex) -> tuple[int, int]:
    return a.l, a.m


def density_pde_residual(alpha, t: float, s: float, fd: FDStencil | None = None) -> float:
    """Residual of ``((d/ds)^{2l} + (-1)^{l+1} (d/dt)^{2m}) p_t^alpha(0, s)`` at ``(t, s)``.

    With ``alpha = l/m``.  Both derivatives are finite differences of the
    density; for ``alpha = 1`` the density is exact so only FD error remains.
    """
    a = _alpha(alpha)
    if a.fraction not in (Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3)):
        raise ValueError(f"density PDE residual supported for alpha in {{1/3, 1/2, 1, 2}}, got {a}")
    l, m = _pde_orders(a)
    fd = fd or FDStencil(2)
    ds = fd_derivative(lambda v: stable_density(a, t, v), 2 * l, s,
                       FDStencil(2 * l, fd.base_step, fd.richardson_levels)).value
    dt = fd_derivative(lambda v: stable_density(a, v, s), 2 * m, t,
                       FDStencil(2 * m, fd.base_step, fd.richardson_levels), lower=0.0).value
    return ds + (-1) ** (l + 1) * dt


def subordinator_pde_residual(t: float, s: float, fd: FDStencil | None = None, beta=Fraction(1, 2)) -> float:
    """Residual ``d/ds u_t(s) - d^2/dt^2 u_t(s)`` for the 1/2-stable subordinator."""
    if _subordinator_beta(beta) != Fraction(1, 2):
        raise ValueError("only the closed-form beta = 1/2 branch is supported")
    if not s > 0:
        raise ValueError("s must be positive")
    fd = fd or FDStencil(2)
    du_ds = fd_derivative(lambda v: subordinator_density(beta, t, v), 1, s,
                          FDStencil(1, fd.base_step, fd.richardson_levels), lower=0.0).value
    d2u_dt2 = fd_derivative(lambda v: subordinator_density(beta, v, s), 2, t,
                            FDStencil(2, fd.base_step, fd.richardson_levels), lower=0.0).value
    return du_ds - d2u_dt2
