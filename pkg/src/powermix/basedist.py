"""Catalog of base univariate laws: pdf/cdf/quantile/sampling plus Stieltjes
transforms S(F,z) = integral of 1/(z-x) dF(x) with derivatives.

Closed transform forms are attached wherever the law admits one (piecewise
polynomial densities get an exact log/recurrence engine, arcsin/semicircle
get hand-derived formulas, Cauchy and the normal are elementary / Faddeeva);
everything else falls back to adaptive quadrature.  The square-root branch is
fixed throughout so that S(F,z) ~ 1/z at infinity, which is also the unique
branch with Im S < 0 on the upper half-plane.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, special

from .errors import DomainError, MomentError
from .rng import RandomStream

__all__ = [
    "Distribution",
    "StieltjesClosedForm",
    "uniform",
    "arcsin",
    "semicircle",
    "beta",
    "power",
    "triangular",
    "cauchy",
    "normal",
    "point_mass",
    "power_semicircle",
    "stieltjes_closed_form",
    "poly_density_stieltjes",
]

_SQRT2 = math.sqrt(2.0)
_UNLIMITED = 99  # closed derivatives available at any order we will ever ask for


def _fmt_num(v: float) -> str:
    f = float(v)
    if f.is_integer() and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def sqrt_z2m1(z: complex) -> complex:
    """sqrt(z^2 - 1) on the branch cut [-1, 1], ~ z at infinity."""
    return cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def _st_kernel(z: complex, x, order: int):
    # d^order/dz^order of 1/(z-x)
    sign = -1.0 if order % 2 else 1.0
    return sign * math.factorial(order) * (z - x) ** (-(order + 1))


# ---------------------------------------------------------------------------
# exact Stieltjes transform of a piecewise polynomial density
# ---------------------------------------------------------------------------

def poly_density_stieltjes(segments, z: complex, order: int) -> complex:
    """S^(order)(z) for a density that is polynomial on each segment.

    ``segments`` is a list of (lo, hi, coeffs) with coeffs ordered by
    ascending power.  Uses I_j = z I_{j-1} - (hi^j - lo^j)/j with
    I_0 = log((z-lo)/(z-hi)) and its differentiated recurrence; far from the
    support it switches to the moment series of S to avoid cancellation.
    """
    radius = max(max(abs(lo), abs(hi)) for lo, hi, _ in segments)
    if abs(z) > 8.0 * max(radius, 1.0):
        return _poly_stieltjes_far(segments, z, order)
    total = 0.0j
    for lo, hi, coeffs in segments:
        deg = len(coeffs) - 1
        # table[k][j] = I_j^(k)
        table = [[0.0j] * (deg + 1) for _ in range(order + 1)]
        table[0][0] = cmath.log((z - lo) / (z - hi))
        for k in range(1, order + 1):
            table[k][0] = (-1.0) ** (k - 1) * math.factorial(k - 1) * (
                (z - lo) ** (-k) - (z - hi) ** (-k)
            )
        for j in range(1, deg + 1):
            table[0][j] = z * table[0][j - 1] - (hi**j - lo**j) / j
            for k in range(1, order + 1):
                table[k][j] = z * table[k][j - 1] + k * table[k - 1][j - 1]
        total += sum(c * table[order][j] for j, c in enumerate(coeffs) if c)
    return total


def _poly_stieltjes_far(segments, z: complex, order: int) -> complex:
    def raw_moment(m):
        return sum(
            c * (hi ** (m + j + 1) - lo ** (m + j + 1)) / (m + j + 1)
            for lo, hi, coeffs in segments
            for j, c in enumerate(coeffs)
            if c
        )

    total = 0.0j
    zc = z ** (-order - 1)
    sign = (-1.0) ** order
    for m in range(0, 300):
        fac = 1.0
        for i in range(1, order + 1):
            fac *= m + i
        term = raw_moment(m) * sign * fac * zc / z**m
        total += term
        if m > 4 and abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return total


# ---------------------------------------------------------------------------
# distribution base
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StieltjesClosedForm:
    spec: "Distribution"
    evaluate: Callable[[complex, int], complex]
    derivative_order: int


class Distribution:
    """Immutable univariate law; subclasses fill in the numeric surface."""

    kind: str = "?"

    # --- support / basic surface -------------------------------------------------
    @property
    def support(self) -> tuple[float, float]:
        raise NotImplementedError

    def pdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def cdf_left(self, x):
        """P(X < x); differs from cdf only at atoms."""
        return self.cdf(x)

    def quantile(self, u):
        arr, scalar = _as_array(u)
        if np.any((arr <= 0.0) | (arr >= 1.0)):
            raise DomainError("quantile requires u in the open interval (0, 1)")
        return _ret(self._quantile(arr), scalar)

    def _quantile(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sample(self, stream: RandomStream, count: int) -> np.ndarray:
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def variance(self) -> float:
        raise NotImplementedError

    @property
    def has_moments(self) -> bool:
        return True

    def raw_moment(self, j: int) -> float:
        """E X^j by adaptive quadrature (overridden with closed forms)."""
        if not self.has_moments:
            raise MomentError(f"{self.kind} has no finite moments")
        lo, hi = self.support
        val, _ = integrate.quad(lambda x: x**j * self.pdf(x), lo, hi, limit=200)
        return val

    def pdf_edge(self, x, dlo, dhi):
        """Density evaluated from stable distances to the support endpoints.

        dlo = x - lo, dhi = hi - x (either may be inf).  Bounded laws with
        endpoint singularities override this; the default ignores the
        distances.
        """
        return self.pdf(x)

    # --- Stieltjes ----------------------------------------------------------------
    stieltjes_order: int | None = None  # max closed derivative order; None = no closed form

    def _check_off_support(self, z: complex):
        lo, hi = self.support
        if math.isinf(lo) or math.isinf(hi):
            if z.imag == 0.0:
                raise DomainError(f"z={z} lies on the support of {self.kind}")
        elif z.imag == 0.0 and lo <= z.real <= hi:
            raise DomainError(f"z={z} lies on the support [{lo}, {hi}] of {self.kind}")

    def stieltjes(self, z: complex, order: int = 0) -> complex:
        """order-th derivative of S(F, .) at z; closed form where cataloged,
        adaptive quadrature otherwise."""
        z = complex(z)
        if order < 0:
            raise DomainError("order must be >= 0")
        self._check_off_support(z)
        if self.stieltjes_order is not None and order <= self.stieltjes_order:
            return self._stieltjes_closed(z, order)
        return self._stieltjes_quad(z, order)

    def stieltjes_quad(self, z: complex, order: int = 0) -> complex:
        """Quadrature route, exposed separately so tests can pit it against
        the closed forms."""
        z = complex(z)
        self._check_off_support(z)
        return self._stieltjes_quad(z, order)

    def _stieltjes_closed(self, z: complex, order: int) -> complex:
        raise NotImplementedError

    def _stieltjes_quad(self, z: complex, order: int) -> complex:
        raise NotImplementedError

    # --- misc ----------------------------------------------------------------------
    def spec_string(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


def _alg_quad(g, lo, hi, wvar) -> complex:
    """integral of w(x) g(x) over (lo,hi), w the QAWS algebraic weight."""
    kw = dict(weight="alg", wvar=wvar, epsabs=1e-13, epsrel=1e-13, limit=250)
    re = integrate.quad(lambda x: g(x).real, lo, hi, **kw)[0]
    im = integrate.quad(lambda x: g(x).imag, lo, hi, **kw)[0]
    return re + 1j * im


def _plain_quad(g, lo, hi, **kw) -> complex:
    kw.setdefault("epsabs", 1e-13)
    kw.setdefault("epsrel", 1e-13)
    kw.setdefault("limit", 250)
    re = integrate.quad(lambda x: g(x).real, lo, hi, **kw)[0]
    im = integrate.quad(lambda x: g(x).imag, lo, hi, **kw)[0]
    return re + 1j * im


# ---------------------------------------------------------------------------
# concrete laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True, repr=False)
class Uniform(Distribution):
    a: float
    b: float
    kind = "uniform"
    stieltjes_order = _UNLIMITED

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"uniform requires a < b, got ({self.a}, {self.b})")

    @property
    def support(self):
        return (self.a, self.b)

    def _segments(self):
        return [(self.a, self.b, [1.0 / (self.b - self.a)])]

    def pdf(self, x):
        arr, scalar = _as_array(x)
        inside = (arr >= self.a) & (arr <= self.b)
        return _ret(np.where(inside, 1.0 / (self.b - self.a), 0.0), scalar)

    def pdf_edge(self, x, dlo, dhi):
        return np.where((dlo > 0) & (dhi > 0), 1.0 / (self.b - self.a), 0.0)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(np.clip((arr - self.a) / (self.b - self.a), 0.0, 1.0), scalar)

    def _quantile(self, u):
        return self.a + (self.b - self.a) * u

    def sample(self, stream, count):
        return stream.uniform(self.a, self.b, count)

    def mean(self):
        return 0.5 * (self.a + self.b)

    def variance(self):
        return (self.b - self.a) ** 2 / 12.0

    def raw_moment(self, j):
        return (self.b ** (j + 1) - self.a ** (j + 1)) / ((j + 1) * (self.b - self.a))

    def _stieltjes_closed(self, z, order):
        return poly_density_stieltjes(self._segments(), z, order)

    def _stieltjes_quad(self, z, order):
        return _plain_quad(lambda x: _st_kernel(z, x, order) / (self.b - self.a), self.a, self.b)

    def spec_string(self):
        return f"uniform({_fmt_num(self.a)},{_fmt_num(self.b)})"


@dataclass(frozen=True, repr=False)
class Arcsin(Distribution):
    """Arcsin law on [-1,1] (density 1/(pi sqrt(1-x^2))) or its [0,1] sibling."""

    lo: float
    hi: float
    kind = "arcsin"
    stieltjes_order = 3

    def __post_init__(self):
        if (self.lo, self.hi) not in ((-1.0, 1.0), (0.0, 1.0)):
            raise DomainError("arcsin supports are (-1,1) or (0,1)")

    @property
    def support(self):
        return (self.lo, self.hi)

    @property
    def _unit(self):  # True for the [0,1] variant
        return self.lo == 0.0

    def pdf(self, x):
        arr, scalar = _as_array(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self._unit:
                v = 1.0 / (np.pi * np.sqrt(arr * (1.0 - arr)))
            else:
                v = 1.0 / (np.pi * np.sqrt(1.0 - arr * arr))
        v = np.where((arr > self.lo) & (arr < self.hi), v, 0.0)
        return _ret(v, scalar)

    def pdf_edge(self, x, dlo, dhi):
        # on both supports the density is 1/(pi sqrt(dlo*dhi))
        with np.errstate(divide="ignore"):
            return 1.0 / (np.pi * np.sqrt(dlo * dhi))

    def cdf(self, x):
        arr, scalar = _as_array(x)
        if self._unit:
            c = np.clip(arr, 0.0, 1.0)
            v = 2.0 / np.pi * np.arcsin(np.sqrt(c))
        else:
            c = np.clip(arr, -1.0, 1.0)
            v = 0.5 + np.arcsin(c) / np.pi
        return _ret(v, scalar)

    def _quantile(self, u):
        if self._unit:
            return np.sin(0.5 * np.pi * u) ** 2
        return np.sin(np.pi * (u - 0.5))

    def sample(self, stream, count):
        draws = stream.beta(0.5, 0.5, count)
        return draws if self._unit else 2.0 * draws - 1.0

    def mean(self):
        return 0.5 if self._unit else 0.0

    def variance(self):
        return 0.125 if self._unit else 0.5

    def _base_closed(self, z, order):
        # transform of the (-1,1) arcsin: S = 1/w, w = sqrt(z^2-1)
        w = sqrt_z2m1(z)
        if order == 0:
            return 1.0 / w
        if order == 1:
            return -z / w**3
        if order == 2:
            return (2.0 * z * z + 1.0) / w**5
        if order == 3:
            return -3.0 * z * (2.0 * z * z + 3.0) / w**7
        raise DomainError("closed arcsin transform available to order 3")

    def _stieltjes_closed(self, z, order):
        if self._unit:
            return 2.0 ** (order + 1) * self._base_closed(2.0 * z - 1.0, order)
        return self._base_closed(z, order)

    def _stieltjes_quad(self, z, order):
        return _alg_quad(
            lambda x: _st_kernel(z, x, order) / np.pi, self.lo, self.hi, (-0.5, -0.5)
        )

    def spec_string(self):
        return f"arcsin({_fmt_num(self.lo)},{_fmt_num(self.hi)})"


@dataclass(frozen=True, repr=False)
class Semicircle(Distribution):
    """Wigner semicircle on [-1,1]; S(F,z) = 2(z - sqrt(z^2-1))."""

    kind = "semicircle"
    stieltjes_order = 3

    @property
    def support(self):
        return (-1.0, 1.0)

    def pdf(self, x):
        arr, scalar = _as_array(x)
        inside = (arr >= -1.0) & (arr <= 1.0)
        v = np.where(inside, 2.0 / np.pi * np.sqrt(np.maximum(1.0 - arr * arr, 0.0)), 0.0)
        return _ret(v, scalar)

    def pdf_edge(self, x, dlo, dhi):
        return 2.0 / np.pi * np.sqrt(np.maximum(dlo * dhi, 0.0))

    def cdf(self, x):
        arr, scalar = _as_array(x)
        c = np.clip(arr, -1.0, 1.0)
        v = 0.5 + (c * np.sqrt(1.0 - c * c) + np.arcsin(c)) / np.pi
        return _ret(v, scalar)

    def _quantile(self, u):
        return 2.0 * special.betaincinv(1.5, 1.5, u) - 1.0

    def sample(self, stream, count):
        return 2.0 * stream.beta(1.5, 1.5, count) - 1.0

    def mean(self):
        return 0.0

    def variance(self):
        return 0.25

    def _stieltjes_closed(self, z, order):
        w = sqrt_z2m1(z)
        if order == 0:
            return 2.0 / (z + w)  # = 2(z - w), written without cancellation
        if order == 1:
            return -2.0 / (w * (z + w))
        if order == 2:
            return 2.0 / w**3
        if order == 3:
            return -6.0 * z / w**5
        raise DomainError("closed semicircle transform available to order 3")

    def _stieltjes_quad(self, z, order):
        return _alg_quad(lambda x: 2.0 / np.pi * _st_kernel(z, x, order), -1.0, 1.0, (0.5, 0.5))

    def spec_string(self):
        return "semicircle(-1,1)"


@dataclass(frozen=True, repr=False)
class Beta(Distribution):
    alpha: float
    beta: float
    kind = "beta"

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError(f"beta requires alpha, beta > 0, got ({self.alpha}, {self.beta})")

    @property
    def support(self):
        return (0.0, 1.0)

    def _is_integer_pair(self):
        return (
            float(self.alpha).is_integer()
            and float(self.beta).is_integer()
            and self.alpha + self.beta < 40
        )

    @property
    def stieltjes_order(self):  # type: ignore[override]
        if self._is_integer_pair() or (self.alpha, self.beta) in ((0.5, 0.5), (1.5, 1.5)):
            return _UNLIMITED if self._is_integer_pair() else 3
        return None

    def _segments(self):
        a, b = int(self.alpha), int(self.beta)
        norm = math.exp(special.gammaln(a + b) - special.gammaln(a) - special.gammaln(b))
        coeffs = [0.0] * (a + b - 1)
        for j in range(b):
            coeffs[a - 1 + j] = norm * math.comb(b - 1, j) * (-1.0) ** j
        return [(0.0, 1.0, coeffs)]

    def pdf(self, x):
        arr, scalar = _as_array(x)
        inside = (arr > 0.0) & (arr < 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            logv = (
                special.xlogy(self.alpha - 1.0, arr)
                + special.xlog1py(self.beta - 1.0, -arr)
                - special.betaln(self.alpha, self.beta)
            )
            v = np.where(inside, np.exp(logv), 0.0)
        return _ret(v, scalar)

    def pdf_edge(self, x, dlo, dhi):
        lb = special.betaln(self.alpha, self.beta)
        with np.errstate(divide="ignore"):
            return dlo ** (self.alpha - 1.0) * dhi ** (self.beta - 1.0) * math.exp(-lb)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(special.betainc(self.alpha, self.beta, np.clip(arr, 0.0, 1.0)), scalar)

    def _quantile(self, u):
        return special.betaincinv(self.alpha, self.beta, u)

    def sample(self, stream, count):
        return stream.beta(self.alpha, self.beta, count)

    def mean(self):
        return self.alpha / (self.alpha + self.beta)

    def variance(self):
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))

    def raw_moment(self, j):
        return math.exp(
            special.gammaln(self.alpha + j)
            - special.gammaln(self.alpha)
            + special.gammaln(self.alpha + self.beta)
            - special.gammaln(self.alpha + self.beta + j)
        )

    def _stieltjes_closed(self, z, order):
        if self._is_integer_pair():
            return poly_density_stieltjes(self._segments(), z, order)
        if (self.alpha, self.beta) == (0.5, 0.5):
            return Arcsin(0.0, 1.0)._stieltjes_closed(z, order)
        if (self.alpha, self.beta) == (1.5, 1.5):
            # affine image of the semicircle: X = (S+1)/2
            return 2.0 ** (order + 1) * Semicircle()._stieltjes_closed(2.0 * z - 1.0, order)
        raise DomainError("no closed transform for these beta parameters")

    def _stieltjes_quad(self, z, order):
        norm = math.exp(-special.betaln(self.alpha, self.beta))
        return _alg_quad(
            lambda x: norm * _st_kernel(z, x, order),
            0.0,
            1.0,
            (self.alpha - 1.0, self.beta - 1.0),
        )

    def spec_string(self):
        return f"beta({_fmt_num(self.alpha)},{_fmt_num(self.beta)})"


@dataclass(frozen=True, repr=False)
class Power(Distribution):
    """Power law on [0,1]: cdf x^n, density n x^(n-1), n >= 1."""

    n: float
    kind = "power"

    def __post_init__(self):
        if not self.n >= 1:
            raise DomainError(f"power requires n >= 1, got {self.n}")

    @property
    def support(self):
        return (0.0, 1.0)

    @property
    def stieltjes_order(self):  # type: ignore[override]
        return _UNLIMITED if float(self.n).is_integer() and self.n < 40 else None

    def pdf(self, x):
        arr, scalar = _as_array(x)
        inside = (arr > 0.0) & (arr <= 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            v = np.where(inside, self.n * arr ** (self.n - 1.0), 0.0)
        return _ret(v, scalar)

    def pdf_edge(self, x, dlo, dhi):
        return self.n * dlo ** (self.n - 1.0)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(np.clip(arr, 0.0, 1.0) ** self.n, scalar)

    def _quantile(self, u):
        return u ** (1.0 / self.n)

    def sample(self, stream, count):
        return stream.generator.power(self.n, count)

    def mean(self):
        return self.n / (self.n + 1.0)

    def variance(self):
        return self.n / (self.n + 2.0) - (self.n / (self.n + 1.0)) ** 2

    def raw_moment(self, j):
        return self.n / (self.n + j)

    def _stieltjes_closed(self, z, order):
        k = int(self.n)
        coeffs = [0.0] * k
        coeffs[k - 1] = float(self.n)
        return poly_density_stieltjes([(0.0, 1.0, coeffs)], z, order)

    def _stieltjes_quad(self, z, order):
        return _alg_quad(lambda x: self.n * _st_kernel(z, x, order), 0.0, 1.0, (self.n - 1.0, 0.0))

    def spec_string(self):
        return f"power({_fmt_num(self.n)})"


@dataclass(frozen=True, repr=False)
class Triangular(Distribution):
    """Symmetric triangular law on [0,1] (peak at 1/2)."""

    kind = "triangular"
    stieltjes_order = _UNLIMITED

    @property
    def support(self):
        return (0.0, 1.0)

    def _segments(self):
        return [(0.0, 0.5, [0.0, 4.0]), (0.5, 1.0, [4.0, -4.0])]

    def pdf(self, x):
        arr, scalar = _as_array(x)
        v = np.where(
            (arr >= 0.0) & (arr <= 1.0), 4.0 * np.minimum(arr, 1.0 - arr), 0.0
        )
        return _ret(np.maximum(v, 0.0), scalar)

    def pdf_edge(self, x, dlo, dhi):
        return 4.0 * np.minimum(dlo, dhi)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        c = np.clip(arr, 0.0, 1.0)
        v = np.where(c <= 0.5, 2.0 * c * c, 1.0 - 2.0 * (1.0 - c) ** 2)
        return _ret(v, scalar)

    def _quantile(self, u):
        return np.where(u <= 0.5, np.sqrt(u / 2.0), 1.0 - np.sqrt((1.0 - u) / 2.0))

    def sample(self, stream, count):
        return stream.triangular(0.0, 0.5, 1.0, count)

    def mean(self):
        return 0.5

    def variance(self):
        return 1.0 / 24.0

    def _stieltjes_closed(self, z, order):
        return poly_density_stieltjes(self._segments(), z, order)

    def _stieltjes_quad(self, z, order):
        return _plain_quad(
            lambda x: _st_kernel(z, x, order) * 4.0 * np.minimum(x, 1.0 - x),
            0.0,
            1.0,
            points=[0.5],
        )

    def spec_string(self):
        return "triangular"


@dataclass(frozen=True, repr=False)
class Cauchy(Distribution):
    location: float
    scale: float
    kind = "cauchy"
    stieltjes_order = _UNLIMITED

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"cauchy requires scale > 0, got {self.scale}")

    @property
    def support(self):
        return (-math.inf, math.inf)

    @property
    def has_moments(self):
        return False

    def pdf(self, x):
        arr, scalar = _as_array(x)
        t = (arr - self.location) / self.scale
        return _ret(1.0 / (np.pi * self.scale * (1.0 + t * t)), scalar)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(0.5 + np.arctan((arr - self.location) / self.scale) / np.pi, scalar)

    def _quantile(self, u):
        return self.location + self.scale * np.tan(np.pi * (u - 0.5))

    def sample(self, stream, count):
        return self.location + self.scale * stream.standard_cauchy(count)

    def mean(self):
        raise MomentError("cauchy has no mean")

    def variance(self):
        raise MomentError("cauchy has no variance")

    def raw_moment(self, j):
        if j == 0:
            return 1.0
        raise MomentError("cauchy has no finite moments")

    def _stieltjes_closed(self, z, order):
        s = 1.0 if z.imag > 0 else -1.0
        pole = complex(self.location, -s * self.scale)
        return (-1.0) ** order * math.factorial(order) * (z - pole) ** (-(order + 1))

    def _stieltjes_quad(self, z, order):
        return _plain_quad(lambda x: self.pdf(x) * _st_kernel(z, x, order), -np.inf, np.inf)

    def spec_string(self):
        return f"cauchy({_fmt_num(self.location)},{_fmt_num(self.scale)})"


@dataclass(frozen=True, repr=False)
class Normal(Distribution):
    mu: float
    sigma: float
    kind = "normal"
    stieltjes_order = _UNLIMITED

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"normal requires sigma > 0, got {self.sigma}")

    @property
    def support(self):
        return (-math.inf, math.inf)

    def pdf(self, x):
        arr, scalar = _as_array(x)
        t = (arr - self.mu) / self.sigma
        return _ret(np.exp(-0.5 * t * t) / (self.sigma * math.sqrt(2.0 * np.pi)), scalar)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(special.ndtr((arr - self.mu) / self.sigma), scalar)

    def _quantile(self, u):
        return self.mu + self.sigma * special.ndtri(u)

    def sample(self, stream, count):
        return stream.normal(self.mu, self.sigma, count)

    def mean(self):
        return self.mu

    def variance(self):
        return self.sigma**2

    def raw_moment(self, j):
        # E X^j via binomial over central moments
        total = 0.0
        for i in range(0, j + 1, 2):
            total += (
                math.comb(j, i)
                * self.mu ** (j - i)
                * self.sigma**i
                * math.prod(range(1, i, 2))
            )
        return total

    def _stieltjes_closed(self, z, order):
        if z.imag < 0:
            return self._stieltjes_closed(z.conjugate(), order).conjugate()
        zeta = (z - self.mu) / (self.sigma * _SQRT2)
        # w^(k) via w' = -2 zeta w + 2i/sqrt(pi)
        w = [complex(special.wofz(zeta))]
        if order >= 1:
            w.append(-2.0 * zeta * w[0] + 2.0j / math.sqrt(math.pi))
        for k in range(2, order + 1):
            w.append(-2.0 * ((k - 1) * w[k - 2] + zeta * w[k - 1]))
        return (
            -1.0j
            * math.sqrt(math.pi / 2.0)
            * 2.0 ** (-order / 2.0)
            * w[order]
            / self.sigma ** (order + 1)
        )

    def _stieltjes_quad(self, z, order):
        return _plain_quad(lambda x: self.pdf(x) * _st_kernel(z, x, order), -np.inf, np.inf)

    def spec_string(self):
        return f"normal({_fmt_num(self.mu)},{_fmt_num(self.sigma)})"


@dataclass(frozen=True, repr=False)
class PointMass(Distribution):
    c: float
    kind = "point_mass"
    stieltjes_order = _UNLIMITED

    @property
    def support(self):
        return (self.c, self.c)

    def pdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(np.where(arr == self.c, np.inf, 0.0), scalar)

    def cdf(self, x):
        arr, scalar = _as_array(x)
        return _ret(np.where(arr >= self.c, 1.0, 0.0), scalar)

    def cdf_left(self, x):
        arr, scalar = _as_array(x)
        return _ret(np.where(arr > self.c, 1.0, 0.0), scalar)

    def _quantile(self, u):
        return np.full_like(u, self.c)

    def sample(self, stream, count):
        return np.full(count, float(self.c))

    def mean(self):
        return self.c

    def variance(self):
        return 0.0

    def raw_moment(self, j):
        return self.c**j

    def _check_off_support(self, z):
        if z == complex(self.c):
            raise DomainError(f"z coincides with the atom at {self.c}")

    def _stieltjes_closed(self, z, order):
        return (-1.0) ** order * math.factorial(order) * (z - self.c) ** (-(order + 1))

    def _stieltjes_quad(self, z, order):
        return self._stieltjes_closed(z, order)

    def spec_string(self):
        return f"point_mass({_fmt_num(self.c)})"


@dataclass(frozen=True, repr=False)
class PowerSemicircle(Distribution):
    """Density 3(1-x^2)/4 on [-1,1]; the Beta(2,2) law pushed to [-1,1]."""

    kind = "power_semicircle"
    stieltjes_order = _UNLIMITED

    @property
    def support(self):
        return (-1.0, 1.0)

    def _segments(self):
        return [(-1.0, 1.0, [0.75, 0.0, -0.75])]

    def pdf(self, x):
        arr, scalar = _as_array(x)
        inside = (arr >= -1.0) & (arr <= 1.0)
        return _ret(np.where(inside, 0.75 * (1.0 - arr * arr), 0.0), scalar)

    def pdf_edge(self, x, dlo, dhi):
        return 0.75 * dlo * dhi

    def cdf(self, x):
        arr, scalar = _as_array(x)
        c = np.clip(arr, -1.0, 1.0)
        return _ret((2.0 + 3.0 * c - c**3) / 4.0, scalar)

    def _quantile(self, u):
        # real root in [-1,1] of q^3 - 3q + (4u-2) = 0, by the trig formula
        cval = 4.0 * u - 2.0
        phi = (np.arccos(-cval / 2.0) + 4.0 * np.pi) / 3.0
        return 2.0 * np.cos(phi)

    def sample(self, stream, count):
        return 2.0 * stream.beta(2.0, 2.0, count) - 1.0

    def mean(self):
        return 0.0

    def variance(self):
        return 0.2

    def _stieltjes_closed(self, z, order):
        return poly_density_stieltjes(self._segments(), z, order)

    def _stieltjes_quad(self, z, order):
        return _alg_quad(lambda x: 0.75 * _st_kernel(z, x, order), -1.0, 1.0, (1.0, 1.0))

    def spec_string(self):
        return "power_semicircle"


# ---------------------------------------------------------------------------
# factories (the catalog's public spelling)
# ---------------------------------------------------------------------------

def uniform(a: float, b: float) -> Uniform:
    return Uniform(float(a), float(b))


def arcsin(lo: float = -1.0, hi: float = 1.0) -> Arcsin:
    return Arcsin(float(lo), float(hi))


def semicircle(lo: float = -1.0, hi: float = 1.0) -> Semicircle:
    if (float(lo), float(hi)) != (-1.0, 1.0):
        raise DomainError("semicircle is cataloged on (-1, 1)")
    return Semicircle()


def beta(alpha: float, b: float) -> Beta:
    return Beta(float(alpha), float(b))


def power(n: float) -> Power:
    return Power(float(n))


def triangular() -> Triangular:
    return Triangular()


def cauchy(location: float = 0.0, scale: float = 1.0) -> Cauchy:
    return Cauchy(float(location), float(scale))


def normal(mu: float = 0.0, sigma: float = 1.0) -> Normal:
    return Normal(float(mu), float(sigma))


def point_mass(c: float) -> PointMass:
    return PointMass(float(c))


def power_semicircle() -> PowerSemicircle:
    return PowerSemicircle()


def stieltjes_closed_form(dist: Distribution) -> StieltjesClosedForm | None:
    """Closed-transform wrapper, or None when only quadrature is available."""
    order = dist.stieltjes_order
    if order is None:
        return None
    return StieltjesClosedForm(spec=dist, evaluate=dist._stieltjes_closed, derivative_order=order)
