"""Special functions backing the closed-form densities.

Log-gamma, the regularized incomplete beta function, and the Gauss
hypergeometric function in the shape F(1, n, n+1; z) that the two-sided
power density needs, plus a general Euler-integral evaluator used as an
independent cross-check of the series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError

__all__ = [
    "HyperParams",
    "log_gamma",
    "log_beta",
    "incomplete_beta",
    "hyp2f1_1_n",
    "euler_hyp2f1",
]

_SERIES_RTOL = 1e-15
_SERIES_MAX_TERMS = 10**6
# continued fraction controls
_CF_EPS = 1e-16
_CF_MAX_ITER = 500
_CF_TINY = 1e-300


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) for a, b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction failed for a={a}, b={b}, x={x}")


def incomplete_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_x(a, b), absolute accuracy ~1e-14.

    Continued-fraction evaluation with the symmetry pivot at
    x = (a+1)/(a+b+2), so both tails are computed from a rapidly
    converging fraction.
    """
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete_beta requires a, b > 0, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"incomplete_beta requires 0 <= x <= 1, got x={x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def _hyp_series(n: float, z: float) -> float:
    # F(1,n,n+1;z) = n * sum_k z^k / (n+k)
    total = 1.0 / n
    zk = 1.0
    for k in range(1, _SERIES_MAX_TERMS):
        zk *= z
        term = zk / (n + k)
        total += term
        if term < _SERIES_RTOL * total:
            break
    return n * total


def _hyp_integer_log_form(n: int, z: float) -> float:
    # F(1,n,n+1;z) = n z^-n (-log(1-z) - sum_{m=1}^{n-1} z^m/m)
    tail = -math.log1p(-z)
    zm = 1.0
    for m in range(1, n):
        zm *= z
        tail -= zm / m
    return n * z ** (-n) * tail


def hyp2f1_1_n(n: float, z: float) -> float:
    """Gauss hypergeometric F(1, n, n+1; z) for n > 0 and 0 <= z < 1.

    Power series away from 1; for integer n and z close to 1 the closed
    logarithmic form takes over (the series converges too slowly there).
    """
    if not n > 0:
        raise DomainError(f"hyp2f1_1_n requires n > 0, got {n}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"hyp2f1_1_n requires 0 <= z < 1, got {z} (diverges at z=1)")
    if z == 0.0:
        return 1.0
    n_int = round(n)
    if z > 0.9 and abs(n - n_int) < 1e-12 and n_int >= 1:
        return _hyp_integer_log_form(int(n_int), z)
    return _hyp_series(n, z)


def _hyp_1n_array(n: float, z: np.ndarray) -> np.ndarray:
    """Vectorized F(1,n,n+1;z) for a grid of z in [0,1); internal helper."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    n_int = round(n)
    is_int = abs(n - n_int) < 1e-12 and n_int >= 1
    near1 = z > 0.9
    if is_int and np.any(near1):
        zz = z[near1]
        tail = -np.log1p(-zz)
        zm = np.ones_like(zz)
        for m in range(1, int(n_int)):
            zm = zm * zz
            tail -= zm / m
        out[near1] = n * zz ** (-float(n_int)) * tail
    rest = ~near1 if is_int else np.ones_like(z, dtype=bool)
    if np.any(rest):
        zz = z[rest]
        total = np.full_like(zz, 1.0 / n)
        zk = np.ones_like(zz)
        for k in range(1, _SERIES_MAX_TERMS):
            zk = zk * zz
            term = zk / (n + k)
            total += term
            if np.max(term) < _SERIES_RTOL * np.min(total):
                break
        out[rest] = n * total
    return out


@dataclass(frozen=True)
class HyperParams:
    """Parameters (a, b, c; z) for the Euler integral representation.

    Requires c > b > 0 and 0 <= z < 1.
    """

    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if not (self.c > self.b > 0):
            raise DomainError(f"Euler integral requires c > b > 0, got b={self.b}, c={self.c}")
        if not 0.0 <= self.z < 1.0:
            raise DomainError(f"Euler integral requires 0 <= z < 1, got z={self.z}")
        if not math.isfinite(self.a):
            raise DomainError("parameter a must be finite")


def euler_hyp2f1(p: HyperParams) -> float:
    """F(a,b,c;z) via adaptive quadrature of the Euler integral.

    The algebraic endpoint weight t^(b-1) (1-t)^(c-b-1) is handled by the
    QAWS rule, leaving the smooth factor (1-tz)^-a to the integrand.
    """
    front = math.exp(log_gamma(p.c) - log_gamma(p.b) - log_gamma(p.c - p.b))
    a, z = p.a, p.z
    val, _ = integrate.quad(
        lambda t: (1.0 - t * z) ** (-a),
        0.0,
        1.0,
        weight="alg",
        wvar=(p.b - 1.0, p.c - p.b - 1.0),
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return front * val
