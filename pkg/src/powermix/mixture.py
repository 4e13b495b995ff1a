"""Directed power mixtures and two-sided power (TSP) mixtures.

A mixture couples two independent component laws X1, X2 with a power (or
overridden) weight W on [0,1].  Sampling follows the constructive form
Z = Y1 + W (Y2 - Y1) for the undirected family and Z = X1 + W (X2 - X1)
for the directed one (the latter reproduces the directed conditional CDF
exactly for both orderings of the pair, with the same W law).

Component draws are consumed in a fixed order (X1 batch, X2 batch, W batch),
which is part of the reproducibility contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .basedist import Distribution, Power, Uniform, Beta, PointMass
from .errors import DomainError
from .quadrature import tanh_sinh_2d
from .rng import RandomStream
from .specfun import _hyp_1n_array, incomplete_beta

__all__ = [
    "MixtureSpec",
    "ConditionalLaw",
    "conditional_cdf",
    "draw_components",
    "sample_tsp",
    "sample_directed",
    "sample_mixture",
    "midrange_form",
    "tsp_pdf_uniform",
    "tsp_cdf_uniform",
    "tsp_pdf_uniform_betaweight",
    "conditional_pdf_given_w",
    "mixture_pdf_numeric",
    "mixture_pdf",
    "combined_support",
]


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


@dataclass(frozen=True)
class MixtureSpec:
    """Directed (order-sensitive) or undirected/TSP mixture of two laws.

    ``weight`` overrides the default power(n) mixing law; the override is
    only defined for the undirected construction Y1 + W (Y2 - Y1).
    """

    family: str
    x1: Distribution
    x2: Distribution
    n: float | None = None
    weight: Distribution | None = field(default=None)

    def __post_init__(self):
        if self.family not in ("directed", "undirected"):
            raise DomainError(f"unknown mixture family {self.family!r}")
        if self.weight is None:
            if self.n is None:
                raise DomainError("mixture needs a power parameter n or a weight override")
            if not self.n >= 1:
                raise DomainError(f"power parameter must satisfy n >= 1, got {self.n}")
        else:
            if self.family != "undirected":
                raise DomainError("a weight override is only defined for the undirected family")
            lo, hi = self.weight.support
            if lo < 0.0 or hi > 1.0:
                raise DomainError("weight override must be supported in [0, 1]")

    @property
    def weight_dist(self) -> Distribution:
        return self.weight if self.weight is not None else Power(float(self.n))

    def spec_string(self) -> str:
        name = "tsp" if self.family == "undirected" else "directed"
        if self.weight is not None:
            head = f"w={self.weight.spec_string()}"
        else:
            from .basedist import _fmt_num

            head = f"n={_fmt_num(self.n)}"
        return f"{name}({head}, x1={self.x1.spec_string()}, x2={self.x2.spec_string()})"

    def __repr__(self):
        return self.spec_string()


def combined_support(spec: MixtureSpec) -> tuple[float, float]:
    a1, b1 = spec.x1.support
    a2, b2 = spec.x2.support
    return (min(a1, a2), max(b1, b2))


# ---------------------------------------------------------------------------
# conditional law given (x1, x2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionalLaw:
    """Frozen conditional CDF z -> F(z | X1=x1, X2=x2)."""

    x1: float
    x2: float
    family: str
    n: float | None = None
    weight: Distribution | None = None

    def __post_init__(self):
        if self.family not in ("directed", "undirected"):
            raise DomainError(f"unknown family {self.family!r}")
        if self.weight is None and self.n is None:
            raise DomainError("conditional law needs n or a weight law")
        if self.weight is not None and self.family != "undirected":
            raise DomainError("weight override is undirected-only")

    @property
    def weight_dist(self) -> Distribution:
        return self.weight if self.weight is not None else Power(float(self.n))

    def cdf(self, z):
        arr, scalar = _as_array(z)
        lo, hi = min(self.x1, self.x2), max(self.x1, self.x2)
        if self.x1 == self.x2:
            # degenerate interval: point mass by continuity
            return _ret(np.where(arr >= lo, 1.0, 0.0), scalar)
        if self.family == "undirected":
            t = np.clip((arr - lo) / (hi - lo), 0.0, 1.0)
            v = self.weight_dist.cdf(t)
        else:
            t = np.clip((arr - self.x1) / (self.x2 - self.x1), 0.0, 1.0)
            tn = t ** float(self.n)
            v = tn if self.x1 < self.x2 else 1.0 - tn
        return _ret(v, scalar)

    def sample(self, stream: RandomStream, count: int) -> np.ndarray:
        w = self.weight_dist.sample(stream, count)
        if self.family == "undirected":
            lo, hi = min(self.x1, self.x2), max(self.x1, self.x2)
            return lo + w * (hi - lo)
        return self.x1 + w * (self.x2 - self.x1)


def conditional_cdf(law: ConditionalLaw, z):
    """Exact piecewise conditional CDF (free-function spelling)."""
    return law.cdf(z)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def draw_components(spec: MixtureSpec, stream: RandomStream, count: int):
    """Draw the (X1, X2, W) triples a sampler consumes, in contract order."""
    x1 = spec.x1.sample(stream, count)
    x2 = spec.x2.sample(stream, count)
    w = spec.weight_dist.sample(stream, count)
    return x1, x2, w


def sample_tsp(spec: MixtureSpec, stream: RandomStream, count: int) -> np.ndarray:
    """Z = Y1 + W (Y2 - Y1) with Y1 = min(X1,X2), Y2 = max(X1,X2)."""
    if spec.family != "undirected":
        raise DomainError("sample_tsp requires an undirected spec")
    x1, x2, w = draw_components(spec, stream, count)
    y1 = np.minimum(x1, x2)
    y2 = np.maximum(x1, x2)
    return y1 + w * (y2 - y1)


def sample_directed(spec: MixtureSpec, stream: RandomStream, count: int) -> np.ndarray:
    """Z = X1 + W (X2 - X1) with W ~ power(n); reproduces the directed
    conditional CDF for either ordering of the pair."""
    if spec.family != "directed":
        raise DomainError("sample_directed requires a directed spec")
    x1, x2, w = draw_components(spec, stream, count)
    return x1 + w * (x2 - x1)


def sample_mixture(spec: MixtureSpec, stream: RandomStream, count: int) -> np.ndarray:
    if spec.family == "undirected":
        return sample_tsp(spec, stream, count)
    return sample_directed(spec, stream, count)


def midrange_form(x1, x2, w):
    """Equivalent TSP representation (X1+X2)/2 + (W - 1/2) |X1 - X2|."""
    return 0.5 * (x1 + x2) + (w - 0.5) * np.abs(x1 - x2)


# ---------------------------------------------------------------------------
# closed densities for uniform(0,1) components
# ---------------------------------------------------------------------------

def tsp_pdf_uniform(n: float, z):
    """Density of the TSP mixture of two uniform(0,1) laws with power(n) weight.

    n on either side of 1 is fine (the n=1 case is the log form); the family
    is continuous in n.
    """
    if not n > 0:
        raise DomainError(f"tsp_pdf_uniform requires n > 0, got {n}")
    arr, scalar = _as_array(z)
    out = np.zeros_like(arr)
    inside = (arr > 0.0) & (arr < 1.0)
    zz = arr[inside]
    if zz.size:
        if n == 1:
            out[inside] = -2.0 * special.xlog1py(1.0 - zz, -zz) - 2.0 * special.xlogy(zz, zz)
        else:
            hyp = _hyp_1n_array(n, zz)
            # 1 - z^(n-1) computed as -expm1((n-1) log z) to stay accurate near n=1
            one_minus = -np.expm1((n - 1.0) * np.log(zz))
            out[inside] = (
                2.0 * n * zz / (n - 1.0) * one_minus + 2.0 * (1.0 - zz) * zz**n * hyp
            )
    return _ret(out, scalar)


def tsp_cdf_uniform(n: float, z):
    """CDF matching :func:`tsp_pdf_uniform`; closed form via F(1,n,n+1;z)."""
    if not n > 0:
        raise DomainError(f"tsp_cdf_uniform requires n > 0, got {n}")
    arr, scalar = _as_array(z)
    out = np.where(arr >= 1.0, 1.0, 0.0)
    inside = (arr > 0.0) & (arr < 1.0)
    zz = arr[inside]
    if zz.size:
        if n == 1:
            vals = zz + (1.0 - zz) * special.xlog1py(1.0 - zz, -zz) - special.xlogy(zz, zz) * zz
        else:
            hyp = _hyp_1n_array(n, zz)
            one_minus = -np.expm1((n - 1.0) * np.log(zz))
            vals = (
                zz**n
                - (1.0 - zz) ** 2 * zz**n * hyp
                + n * zz**2 * one_minus / (n - 1.0)
            )
        out[inside] = vals
    return _ret(out, scalar)


def tsp_pdf_uniform_betaweight(n: float, m: float, z):
    """TSP density for uniform(0,1) components with a Beta(n, m) weight.

    The printed beta-ratio coefficients reduce to (n+m-1)/(n-1) and
    (n+m-1)/(m-1); both beta arguments must stay positive, hence n, m > 1.
    """
    if not (n > 1 and m > 1):
        raise DomainError(f"beta-weight density needs n > 1 and m > 1, got ({n}, {m})")
    arr, scalar = _as_array(z)
    out = np.zeros_like(arr)
    inside = (arr > 0.0) & (arr < 1.0)
    c1 = (n + m - 1.0) / (n - 1.0)
    c2 = (n + m - 1.0) / (m - 1.0)
    for idx in np.argwhere(inside).ravel():
        zz = float(arr[idx])
        out[idx] = c1 * 2.0 * zz * (1.0 - incomplete_beta(zz, n - 1.0, m)) + c2 * 2.0 * (
            1.0 - zz
        ) * incomplete_beta(zz, n, m - 1.0)
    return _ret(out, scalar)


def conditional_pdf_given_w(w: float, z):
    """Density of the uniform-component TSP given W = w (triangle at w)."""
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"w must lie in [0, 1], got {w}")
    arr, scalar = _as_array(z)
    out = np.zeros_like(arr)
    inside = (arr > 0.0) & (arr < 1.0)
    zz = arr[inside]
    left = zz <= w
    vals = np.empty_like(zz)
    if w > 0.0:
        vals[left] = 2.0 * zz[left] / w
    else:
        vals[left] = 0.0  # empty set when w = 0
    if w < 1.0:
        vals[~left] = 2.0 * (1.0 - zz[~left]) / (1.0 - w)
    else:
        vals[~left] = 0.0
    out[inside] = vals
    return _ret(out, scalar)


# ---------------------------------------------------------------------------
# unconditional density by 2D quadrature
# ---------------------------------------------------------------------------

def _require_densities(spec: MixtureSpec):
    for part, name in ((spec.x1, "x1"), (spec.x2, "x2"), (spec.weight_dist, "weight")):
        if isinstance(part, PointMass):
            raise DomainError(f"mixture_pdf_numeric needs a density for {name}")


def _panel_value(spec: MixtureSpec, z: float, region: int, tol: float, max_level: int) -> float:
    """One of the two rectangles {x1 < z < x2} (region 1) / {x2 < z < x1} (2).

    The axes are substituted so both distances from z and from the support
    endpoints are available without cancellation; the (y2-y1)^-n corner
    singularity sits at the axes' origin where tanh-sinh clusters nodes.
    """
    f1, f2, fw = spec.x1, spec.x2, spec.weight_dist
    a1, b1 = f1.support
    a2, b2 = f2.support
    if region == 1:
        u_lo, u_hi = max(0.0, z - b1), z - a1
        v_lo, v_hi = max(0.0, a2 - z), b2 - z
    else:
        u_lo, u_hi = max(0.0, a1 - z), b1 - z
        v_lo, v_hi = max(0.0, z - b2), z - a2
    su = u_hi - u_lo
    sv = v_hi - v_lo
    if not (su > 0.0) or not (sv > 0.0):
        return 0.0
    c_u = (b1 - z if region == 1 else z - a1) + u_lo  # distance offset on the u side
    c_v = (z - a2 if region == 1 else b2 - z) + v_lo

    undirected = spec.family == "undirected"

    def integrand(s, sc, t, tc):
        u = u_lo + s
        v = v_lo + t
        tot = u + v
        targ = (v if (undirected and region == 2) else u) / tot
        kern = fw.pdf(targ) / tot
        if region == 1:
            x1 = z - u
            x2 = z + v
            p1 = f1.pdf_edge(x1, sc, c_u + s)
            p2 = f2.pdf_edge(x2, c_v + t, tc)
        else:
            x1 = z + u
            x2 = z - v
            p1 = f1.pdf_edge(x1, c_u + s, sc)
            p2 = f2.pdf_edge(x2, tc, c_v + t)
        return kern * p1 * p2

    val, _ = tanh_sinh_2d(integrand, su, sv, tol=tol, max_level=max_level)
    return val


def mixture_pdf_numeric(spec: MixtureSpec, z: float, *, tol: float = 1e-9, max_level: int = 7) -> float:
    """Unconditional mixture density at z by 2D adaptive quadrature of the
    conditional density against the product law of (X1, X2)."""
    _require_densities(spec)
    z = float(z)
    lo, hi = combined_support(spec)
    if z <= lo or z >= hi:
        return 0.0
    return _panel_value(spec, z, 1, tol, max_level) + _panel_value(spec, z, 2, tol, max_level)


def mixture_pdf(spec: MixtureSpec, z, *, tol: float = 1e-9):
    """Mixture density with closed-form routing; returns (values, method)."""
    iid_unit_uniform = (
        spec.family == "undirected"
        and isinstance(spec.x1, Uniform)
        and isinstance(spec.x2, Uniform)
        and (spec.x1.a, spec.x1.b) == (0.0, 1.0)
        and (spec.x2.a, spec.x2.b) == (0.0, 1.0)
    )
    if iid_unit_uniform and spec.weight is None:
        method = "closed-log" if spec.n == 1 else "closed-power"
        return tsp_pdf_uniform(float(spec.n), z), method
    if (
        iid_unit_uniform
        and isinstance(spec.weight, Beta)
        and spec.weight.alpha > 1
        and spec.weight.beta > 1
    ):
        return (
            tsp_pdf_uniform_betaweight(spec.weight.alpha, spec.weight.beta, z),
            "closed-betaweight",
        )
    arr, scalar = _as_array(z)
    vals = np.array([mixture_pdf_numeric(spec, float(t), tol=tol) for t in np.atleast_1d(arr)])
    return (float(vals[0]) if scalar else vals), "quadrature"
