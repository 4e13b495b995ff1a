"""Moments of TSP variables: the three equivalent moment expansions, the
mean/variance formulas, the named uniform/normal closed forms, and
Monte-Carlo order-statistic tables with standard errors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .basedist import Distribution, Normal, PointMass, Uniform
from .errors import DomainError, MomentError
from .mixture import MixtureSpec, sample_mixture
from .rng import RandomStream
from .specfun import log_gamma

__all__ = [
    "MomentReport",
    "OrderStatMoments",
    "order_stat_moments_uniform",
    "order_stat_moments_normal",
    "order_stat_moments_point",
    "order_stat_moments_mc",
    "order_stat_moments_closed",
    "weight_central_moment",
    "moment_thm_a",
    "moment_thm_b",
    "moment_thm_c",
    "moment_mc",
    "tsp_mean",
    "tsp_variance",
    "uniform_moment_formula",
]


@dataclass(frozen=True)
class MomentReport:
    k: int
    value: float
    std_error: float | None
    method: str


@dataclass(frozen=True)
class OrderStatMoments:
    """Table of E(Y1^i Y2^j), i+j <= k_max, for Y1=min(X1,X2), Y2=max(X1,X2)."""

    k_max: int
    entries: Mapping[tuple[int, int], float]
    std_errors: Mapping[tuple[int, int], float]
    source: str

    def __post_init__(self):
        if abs(self.entries[(0, 0)] - 1.0) > 1e-15:
            raise DomainError("order-statistic table must have E(Y1^0 Y2^0) = 1")
        if (1, 0) in self.entries and (0, 1) in self.entries:
            slack = 4.0 * (self.std_errors.get((1, 0), 0.0) + self.std_errors.get((0, 1), 0.0))
            if self.entries[(1, 0)] > self.entries[(0, 1)] + slack:
                raise DomainError("order-statistic table violates E(Y1) <= E(Y2)")

    def moment(self, i: int, j: int) -> float:
        try:
            return self.entries[(i, j)]
        except KeyError:
            raise DomainError(f"order-statistic table missing E(Y1^{i} Y2^{j})") from None

    def se(self, i: int, j: int) -> float:
        return self.std_errors.get((i, j), 0.0)


def _pairs(k_max):
    return [(i, j) for i in range(k_max + 1) for j in range(k_max + 1 - i)]


def order_stat_moments_uniform(k_max: int) -> OrderStatMoments:
    """Closed table for iid uniform(0,1): E(Y1^i Y2^j) = 2/((i+1)(i+j+2))."""
    entries = {(i, j): 2.0 / ((i + 1) * (i + j + 2)) for i, j in _pairs(k_max)}
    return OrderStatMoments(k_max, entries, {k: 0.0 for k in entries}, "closed_form")


def _abs_normal_moment(r: int) -> float:
    # E |N(0,1)|^r
    return 2.0 ** (r / 2.0) * math.exp(log_gamma((r + 1) / 2.0)) / math.sqrt(math.pi)


def order_stat_moments_normal(mu: float, sigma: float, k_max: int) -> OrderStatMoments:
    """Closed table for iid normal(mu, sigma): expand Y = (S -/+ T)/2 with
    S = X1+X2 and T = |X1-X2| independent."""
    s_law = Normal(2.0 * mu, sigma * math.sqrt(2.0))
    t_scale = sigma * math.sqrt(2.0)
    max_deg = 2 * k_max
    s_mom = [s_law.raw_moment(m) for m in range(max_deg + 1)]
    t_mom = [t_scale**r * _abs_normal_moment(r) for r in range(max_deg + 1)]
    entries = {}
    for i, j in _pairs(k_max):
        total = 0.0
        for p in range(i + 1):
            for q in range(j + 1):
                total += (
                    math.comb(i, p)
                    * math.comb(j, q)
                    * (-1.0) ** (i - p)
                    * s_mom[p + q]
                    * t_mom[(i - p) + (j - q)]
                )
        entries[(i, j)] = total * 0.5 ** (i + j)
    return OrderStatMoments(k_max, entries, {k: 0.0 for k in entries}, "closed_form")


def order_stat_moments_point(a: float, b: float, k_max: int) -> OrderStatMoments:
    y1, y2 = min(a, b), max(a, b)
    entries = {(i, j): y1**i * y2**j for i, j in _pairs(k_max)}
    return OrderStatMoments(k_max, entries, {k: 0.0 for k in entries}, "closed_form")


def order_stat_moments_mc(
    x1: Distribution,
    x2: Distribution,
    k_max: int,
    n_samples: int,
    stream: RandomStream,
) -> OrderStatMoments:
    """Monte-Carlo table with per-entry standard errors; deterministic per stream."""
    _require_component_moments(x1, x2)
    d1 = x1.sample(stream, n_samples)
    d2 = x2.sample(stream, n_samples)
    y1 = np.minimum(d1, d2)
    y2 = np.maximum(d1, d2)
    entries, ses = {}, {}
    for i, j in _pairs(k_max):
        if i == j == 0:
            entries[(0, 0)], ses[(0, 0)] = 1.0, 0.0
            continue
        vals = y1**i * y2**j
        entries[(i, j)] = float(np.mean(vals))
        ses[(i, j)] = float(np.std(vals, ddof=1) / math.sqrt(n_samples))
    return OrderStatMoments(
        k_max, entries, ses, f"monte_carlo(N={n_samples}, seed={stream.seed_entropy})"
    )


def order_stat_moments_closed(x1: Distribution, x2: Distribution, k_max: int) -> OrderStatMoments | None:
    """Closed table when one is known for the pair, else None."""
    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        return order_stat_moments_point(x1.c, x2.c, k_max)
    if (
        isinstance(x1, Uniform)
        and isinstance(x2, Uniform)
        and (x1.a, x1.b) == (0.0, 1.0)
        and (x2.a, x2.b) == (0.0, 1.0)
    ):
        return order_stat_moments_uniform(k_max)
    if isinstance(x1, Normal) and isinstance(x2, Normal) and x1 == x2:
        return order_stat_moments_normal(x1.mu, x1.sigma, k_max)
    return None


def _require_component_moments(*dists):
    for d in dists:
        if not d.has_moments:
            raise MomentError(f"{d.spec_string()} has no finite moments; moment formulas do not apply")


def weight_central_moment(weight: Distribution, i: int) -> float:
    """E (W - 1/2)^i by binomial expansion over the closed raw moments of W."""
    return sum(
        math.comb(i, j) * weight.raw_moment(j) * (-0.5) ** (i - j) for j in range(i + 1)
    )


# ---------------------------------------------------------------------------
# the three equivalent expansions
# ---------------------------------------------------------------------------

def moment_thm_a(os: OrderStatMoments, n: float, k: int) -> MomentReport:
    """EZ^k from the power-weight beta integrals against E(Y1^i Y2^(k-i))."""
    if k == 0:
        return MomentReport(0, 1.0, 0.0, "thm411a")
    front = n * math.exp(log_gamma(k + 1.0) - log_gamma(k + n + 1.0))
    value, err = 0.0, 0.0
    for i in range(k + 1):
        coef = front * math.exp(log_gamma(k - i + n) - log_gamma(k - i + 1.0))
        value += coef * os.moment(i, k - i)
        err += abs(coef) * os.se(i, k - i)
    se = err if err else 0.0
    return MomentReport(k, value, se, "thm411a")


def moment_thm_c(os: OrderStatMoments, n: float, k: int) -> MomentReport:
    """EZ^k = sum_i C(k,i) n/(n+i) E(Y1^(k-i) (Y2-Y1)^i)."""
    if k == 0:
        return MomentReport(0, 1.0, 0.0, "thm411c")
    value, err = 0.0, 0.0
    for i in range(k + 1):
        coef = math.comb(k, i) * n / (n + i)
        for m in range(i + 1):
            c2 = coef * math.comb(i, m) * (-1.0) ** (i - m)
            value += c2 * os.moment(k - m, m)
            err += abs(c2) * os.se(k - m, m)
    return MomentReport(k, value, err, "thm411c")


def moment_thm_b(
    spec: MixtureSpec,
    k: int,
    *,
    joint: str = "auto",
    n_samples: int = 10**6,
    stream: RandomStream | None = None,
) -> MomentReport:
    """EZ^k via the midrange representation: binomial over E(W-1/2)^i and the
    joint moments E[(X1+X2)^(k-i) |X1-X2|^i].

    The joint factorizes only for iid normal components (sum and difference
    independent); that closed path is used when available, otherwise the
    joint expectation is estimated by Monte Carlo in a single pass.
    """
    _require_component_moments(spec.x1, spec.x2)
    if k == 0:
        return MomentReport(0, 1.0, 0.0, "thm411b")
    w = spec.weight_dist
    wc = [weight_central_moment(w, i) for i in range(k + 1)]

    iid_normal = isinstance(spec.x1, Normal) and spec.x1 == spec.x2
    use_closed = joint == "closed" or (joint == "auto" and iid_normal)
    if use_closed:
        if not iid_normal:
            raise DomainError("closed joint moments are only available for iid normal components")
        s_law = Normal(2.0 * spec.x1.mu, spec.x1.sigma * math.sqrt(2.0))
        t_scale = spec.x1.sigma * math.sqrt(2.0)
        value = sum(
            math.comb(k, i)
            * 0.5 ** (k - i)
            * wc[i]
            * s_law.raw_moment(k - i)
            * (t_scale**i * _abs_normal_moment(i))
            for i in range(k + 1)
        )
        return MomentReport(k, value, 0.0, "thm411b")

    if stream is None:
        raise DomainError("Monte-Carlo joint moments need an explicit random stream")
    d1 = spec.x1.sample(stream, n_samples)
    d2 = spec.x2.sample(stream, n_samples)
    s = d1 + d2
    t = np.abs(d1 - d2)
    per_draw = np.zeros_like(s)
    for i in range(k + 1):
        per_draw += math.comb(k, i) * 0.5 ** (k - i) * wc[i] * s ** (k - i) * t**i
    value = float(np.mean(per_draw))
    se = float(np.std(per_draw, ddof=1) / math.sqrt(n_samples))
    return MomentReport(k, value, se, "thm411b")


def moment_mc(
    spec: MixtureSpec, k: int, n_samples: int, stream: RandomStream
) -> MomentReport:
    """Plain Monte Carlo on the sampler itself."""
    _require_component_moments(spec.x1, spec.x2)
    if k == 0:
        return MomentReport(0, 1.0, 0.0, "monte_carlo")
    z = sample_mixture(spec, stream, n_samples)
    vals = z ** float(k)
    return MomentReport(
        k,
        float(np.mean(vals)),
        float(np.std(vals, ddof=1) / math.sqrt(n_samples)),
        "monte_carlo",
    )


# ---------------------------------------------------------------------------
# mean / variance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderStatSummary:
    mu1: float
    mu2: float
    var1: float
    var2: float
    cov: float
    source: str


def order_stat_summary(
    x1: Distribution,
    x2: Distribution,
    *,
    stream: RandomStream | None = None,
    n_samples: int = 10**6,
) -> OrderStatSummary:
    """(mu1, mu2, sigma1^2, sigma2^2, sigma12) of (Y1, Y2); closed where known."""
    _require_component_moments(x1, x2)
    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        y1, y2 = min(x1.c, x2.c), max(x1.c, x2.c)
        return OrderStatSummary(y1, y2, 0.0, 0.0, 0.0, "closed_form")
    if isinstance(x1, Uniform) and x1 == x2:
        span = x1.b - x1.a
        return OrderStatSummary(
            x1.a + span / 3.0,
            x1.a + 2.0 * span / 3.0,
            span**2 / 18.0,
            span**2 / 18.0,
            span**2 / 36.0,
            "closed_form",
        )
    if isinstance(x1, Normal) and x1 == x2:
        mu, sig = x1.mu, x1.sigma
        half = sig / math.sqrt(math.pi)
        v = sig**2 * (1.0 - 1.0 / math.pi)
        return OrderStatSummary(mu - half, mu + half, v, v, sig**2 / math.pi, "closed_form")
    if stream is None:
        raise DomainError("no closed order-statistic summary for this pair; pass a random stream")
    d1 = x1.sample(stream, n_samples)
    d2 = x2.sample(stream, n_samples)
    y1 = np.minimum(d1, d2)
    y2 = np.maximum(d1, d2)
    cov = float(np.mean(y1 * y2) - np.mean(y1) * np.mean(y2))
    return OrderStatSummary(
        float(np.mean(y1)),
        float(np.mean(y2)),
        float(np.var(y1, ddof=1)),
        float(np.var(y2, ddof=1)),
        cov,
        f"monte_carlo(N={n_samples})",
    )


def tsp_mean(spec: MixtureSpec, *, stream: RandomStream | None = None, n_samples: int = 10**6) -> float:
    """EZ = (mu1 + n mu2)/(n+1) for power weights; EW-weighted mean otherwise."""
    s = order_stat_summary(spec.x1, spec.x2, stream=stream, n_samples=n_samples)
    if spec.weight is None:
        n = float(spec.n)
        return (s.mu1 + n * s.mu2) / (n + 1.0)
    ew = spec.weight_dist.raw_moment(1)
    return s.mu1 + ew * (s.mu2 - s.mu1)


def tsp_variance(spec: MixtureSpec, *, stream: RandomStream | None = None, n_samples: int = 10**6) -> float:
    """Var Z; the power-weight case follows the printed closed formula."""
    s = order_stat_summary(spec.x1, spec.x2, stream=stream, n_samples=n_samples)
    if spec.weight is None:
        n = float(spec.n)
        num = (
            n * (s.mu1 - s.mu2) ** 2
            + n * (n + 1.0) ** 2 * s.var2
            + 2.0 * (n + 1.0) * (s.var1 + n * s.cov)
        )
        return num / ((n + 1.0) ** 2 * (n + 2.0))
    w = spec.weight_dist
    ew = w.raw_moment(1)
    varw = w.raw_moment(2) - ew**2
    egap2 = (s.mu2 - s.mu1) ** 2 + s.var1 + s.var2 - 2.0 * s.cov
    var_cond_mean = (1.0 - ew) ** 2 * s.var1 + ew**2 * s.var2 + 2.0 * ew * (1.0 - ew) * s.cov
    return varw * egap2 + var_cond_mean


def uniform_moment_formula(n: float, k: int) -> float:
    """Printed k-th moment of the uniform-component TSP variable."""
    if k == 0:
        return 1.0
    front = n * math.exp(log_gamma(k + 1.0) - log_gamma(n + k + 1.0))
    return front * sum(
        math.exp(log_gamma(k - i + n) - log_gamma(k - i + 1.0))
        * 2.0
        / ((k + 2) * (i + 1))
        for i in range(k + 1)
    )
