"""Quadrature building blocks: tanh-sinh rules and complex-valued wrappers.

The tanh-sinh (double-exponential) rules here serve the mixture-density
integrals, whose integrands have algebraic/log singularities at panel edges.
Nodes are generated together with their *distances to both endpoints*
(computed without cancellation), so integrands can evaluate factors like
``(b - x)**-0.5`` accurately deep in the node tail.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate

__all__ = [
    "tanh_sinh",
    "tanh_sinh_0L",
    "tanh_sinh_2d",
    "complex_quad",
    "circle_derivative",
]

_T_MAX = 4.0  # weights below ~1e-37 past |t|=4; nothing left to resolve


@lru_cache(maxsize=16)
def _unit_rule(level: int):
    """Nodes/weights on (0,1) at mesh h=2**-level.

    Returns (p, q, w): node positions p, complementary distances q = 1 - p
    (computed stably), and weights, so that sum(w * g(p)) ~ integral of g.
    """
    h = 2.0 ** (-level)
    k = np.arange(-int(_T_MAX / h), int(_T_MAX / h) + 1)
    t = k * h
    y = 0.5 * np.pi * np.sinh(t)
    # p = (1+tanh(y))/2 = 1/(1+exp(-2y)); q = 1-p = 1/(1+exp(2y))
    p = 1.0 / (1.0 + np.exp(-2.0 * y))
    q = 1.0 / (1.0 + np.exp(2.0 * y))
    w = h * 0.5 * np.pi * np.cosh(t) / np.cosh(y) ** 2
    keep = (p > 0.0) & (q > 0.0) & (w > 1e-300)
    return p[keep], q[keep], w[keep]


def tanh_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    tol: float = 1e-10,
    min_level: int = 4,
    max_level: int = 9,
) -> tuple[complex, float]:
    """Integrate vectorized ``f`` over the finite interval (a, b).

    Returns (value, error_estimate); the estimate is the change between the
    two finest levels.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        v, e = tanh_sinh(f, b, a, tol=tol, min_level=min_level, max_level=max_level)
        return -v, e
    span = b - a
    prev = None
    err = math.inf
    for level in range(min_level, max_level + 1):
        p, q, w = _unit_rule(level)
        x = a + span * p
        total = span * np.sum(w * f(x))
        if prev is not None:
            err = abs(total - prev)
            if err <= tol * max(1.0, abs(total)):
                return total, err
        prev = total
    return prev, err


def tanh_sinh_0L(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    length: float,
    *,
    tol: float = 1e-10,
    min_level: int = 4,
    max_level: int = 9,
) -> tuple[complex, float]:
    """Integrate over (0, L) where ``f(x, xc)`` also receives xc = L - x stably.

    ``length`` may be ``inf``; the half-line is folded through s -> s/(1-s)
    (xc is then passed as inf).
    """
    if length == 0:
        return 0.0, 0.0
    infinite = math.isinf(length)
    prev = None
    err = math.inf
    for level in range(min_level, max_level + 1):
        p, q, w = _unit_rule(level)
        if infinite:
            x = p / q
            xc = np.full_like(x, np.inf)
            ww = w / q**2
        else:
            x = length * p
            xc = length * q
            ww = length * w
        total = np.sum(ww * f(x, xc))
        if prev is not None:
            err = abs(total - prev)
            if err <= tol * max(1.0, abs(total)):
                return total, err
        prev = total
    return prev, err


def tanh_sinh_2d(
    f: Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    ulen: float,
    vlen: float,
    *,
    tol: float = 1e-9,
    min_level: int = 4,
    max_level: int = 7,
) -> tuple[float, float]:
    """Tensor tanh-sinh over (0, ulen) x (0, vlen).

    ``f(u, uc, v, vc)`` must broadcast: u, uc are column vectors and v, vc row
    vectors; uc = ulen - u and vc = vlen - v are supplied stably.  Either
    length may be ``inf`` (folded via s/(1-s)).
    """
    if ulen == 0 or vlen == 0:
        return 0.0, 0.0
    prev = None
    err = math.inf
    for level in range(min_level, max_level + 1):
        p, q, w = _unit_rule(level)
        if math.isinf(ulen):
            u, uc, wu = p / q, np.full_like(p, np.inf), w / q**2
        else:
            u, uc, wu = ulen * p, ulen * q, ulen * w
        if math.isinf(vlen):
            v, vc, wv = p / q, np.full_like(p, np.inf), w / q**2
        else:
            v, vc, wv = vlen * p, vlen * q, vlen * w
        vals = f(u[:, None], uc[:, None], v[None, :], vc[None, :])
        total = float(wu @ vals @ wv)
        if prev is not None:
            err = abs(total - prev)
            if err <= tol * max(1.0, abs(total)):
                return total, err
        prev = total
    return prev, err


def complex_quad(f: Callable[[float], complex], a: float, b: float, **kwargs) -> complex:
    """scipy.integrate.quad for a complex-valued integrand (re/im separately)."""
    kwargs.setdefault("epsabs", 1e-12)
    kwargs.setdefault("epsrel", 1e-12)
    kwargs.setdefault("limit", 200)
    re = integrate.quad(lambda x: f(x).real, a, b, **kwargs)[0]
    im = integrate.quad(lambda x: f(x).imag, a, b, **kwargs)[0]
    return re + 1j * im


def circle_derivative(f: Callable[[complex], complex], z: complex, order: int, radius: float, m: int = 64) -> complex:
    """k-th derivative of an analytic ``f`` at ``z`` via the Cauchy integral
    formula on a circle of the given radius (trapezoid rule; spectrally
    accurate).  Used as an independent oracle for closed-form derivatives."""
    theta = 2.0 * np.pi * np.arange(m) / m
    ring = z + radius * np.exp(1j * theta)
    vals = np.array([f(w) for w in ring])
    coeff = np.mean(vals * np.exp(-1j * order * theta))
    return math.factorial(order) * coeff / radius**order
