"""Numeric verification of the transform identities.

The engine checks, at points z off the supports:

* the partial-fraction identity behind the transform calculus (an exact
  algebraic statement, evaluated in floating point),
* the mixture relation S^(n)(F_Z1, z)/n = -S(F_X1, z) S^(n-1)(F_X2, z),
  with the mixture transform obtained by quadrature against the numeric
  mixture density (never via the identity itself),
* its iid n=2 corollary -S'(F_Z1, z) = S(F_X, z)^2,
* the third-derivative relation for the undirected n=2 family.  The
  symmetric two-variable kernel 1/((z-x1)(z-x2)(x2-x1)^2) printed for that
  relation diverges against continuous product laws and fails for point
  masses at generic z; rewriting the underlying partial fractions in terms
  of the order statistics gives the convergent kernel
  1/((z-y1)(z-y2)^3), and that is the double transform the residual check
  uses.  The symmetric kernel remains available with an explicit diagonal
  excision, which reports divergence instead of guessing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .basedist import Distribution, PointMass, poly_density_stieltjes
from .errors import DivergenceError, DomainError
from .mixture import MixtureSpec, combined_support, mixture_pdf_numeric
from .quadrature import _unit_rule
from .rng import RandomStream

__all__ = [
    "ComplexPoint",
    "ResidualReport",
    "MIN_SUPPORT_DISTANCE",
    "support_distance",
    "MixtureStieltjes",
    "lemma21_residual",
    "lemma21_sweep",
    "lemma22_residual",
    "lemma22_sweep",
    "eq31_residual",
    "eq31_sweep",
    "double_stieltjes",
    "double_stieltjes_excised",
    "ordered_double_stieltjes",
    "thm441_residual",
    "thm441_sweep",
]

ComplexPoint = complex  # points are plain complex numbers throughout

MIN_SUPPORT_DISTANCE = 0.1


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    points: tuple
    residuals: tuple
    tolerance: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def support_distance(z: complex, dist: Distribution) -> float:
    """Euclidean distance from z to the closed support of a law."""
    z = complex(z)
    lo, hi = dist.support
    if math.isinf(lo) or math.isinf(hi):
        return abs(z.imag)
    dx = max(lo - z.real, 0.0, z.real - hi)
    return math.hypot(dx, z.imag)


def _check_distance(z: complex, dists, min_distance: float = MIN_SUPPORT_DISTANCE):
    for d in dists:
        gap = support_distance(z, d)
        if gap < min_distance:
            raise DomainError(
                f"z={z} is {gap:.3g} from the support of {d.spec_string()}; "
                f"need at least {min_distance}"
            )


# ---------------------------------------------------------------------------
# partial-fraction identity (pure arithmetic)
# ---------------------------------------------------------------------------

def lemma21_residual(x1: float, x2: float, z: float, n: int) -> float:
    """|LHS - RHS| of the n-th order partial fraction identity.

    The (n-1)-th derivative in x2 is expanded in closed form through the
    partial fractions of 1/((z-x2)(x1-x2)), not by numerical
    differentiation.
    """
    if len({x1, x2, z}) < 3:
        raise DomainError("x1, x2, z must be pairwise distinct")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise DomainError(f"n must be an integer >= 1, got {n}")
    # d^{n-1}/dx2^{n-1} [1/((z-x2)(x1-x2))]
    #   = (n-1)! [ (z-x2)^-n / (x1-z) + (x1-x2)^-n / (z-x1) ]
    deriv_over_fact = (z - x2) ** float(-n) / (x1 - z) + (x1 - x2) ** float(-n) / (z - x1)
    lhs = -1.0 / ((z - x1) * (x2 - x1) ** float(n)) + (-1.0) ** n * deriv_over_fact
    rhs = 1.0 / ((x1 - z) * (x2 - z) ** float(n))
    return abs(lhs - rhs)


def lemma21_sweep(
    count: int = 100,
    seed: int = 42,
    n_values=(1, 2, 3, 4, 5),
    *,
    tolerance: float = 1e-11,
    low: float = -3.0,
    high: float = 3.0,
    min_gap: float = 0.1,
) -> ResidualReport:
    """Relative residuals on a random grid of distinct (x1, x2, z) triples."""
    gen = RandomStream(seed).generator
    points, residuals = [], []
    while len(points) < count:
        x1, x2, z = gen.uniform(low, high, 3)
        if min(abs(x1 - x2), abs(x1 - z), abs(x2 - z)) < min_gap:
            continue
        n = int(n_values[len(points) % len(n_values)])
        rhs = 1.0 / ((x1 - z) * (x2 - z) ** float(n))
        rel = lemma21_residual(x1, x2, z, n) / max(1.0, abs(rhs))
        points.append((float(x1), float(x2), float(z), n))
        residuals.append(float(rel))
    return ResidualReport("lemma21", tuple(points), tuple(residuals), tolerance)


# ---------------------------------------------------------------------------
# mixture transform by quadrature against the numeric density
# ---------------------------------------------------------------------------

class MixtureStieltjes:
    """S^(k)(F_Z, .) for a mixture, by integrating (z-t)^(-k-1) against the
    numeric mixture density on a fixed tanh-sinh grid.

    The density values are cached once, so evaluations at many z and many
    derivative orders reuse the same (expensive) 2D quadratures.  This path
    never invokes the transform identities it is used to test.
    """

    def __init__(
        self,
        spec: MixtureSpec,
        *,
        level: int = 6,
        pdf_tol: float = 1e-10,
        pdf_max_level: int = 7,
    ):
        lo, hi = combined_support(spec)
        if math.isinf(lo) or math.isinf(hi):
            raise DomainError("numeric mixture transform needs bounded component supports")
        self.spec = spec
        self.lo, self.hi = lo, hi
        p, _, w = _unit_rule(level)
        span = hi - lo
        self.nodes = lo + span * p
        self.weights = span * w
        self.density = np.array(
            [
                mixture_pdf_numeric(spec, float(t), tol=pdf_tol, max_level=pdf_max_level)
                for t in self.nodes
            ]
        )
        self.mass = float(self.weights @ self.density)

    def __call__(self, z: complex, order: int = 0) -> complex:
        z = complex(z)
        sign = -1.0 if order % 2 else 1.0
        kern = sign * math.factorial(order) * (z - self.nodes) ** (-(order + 1))
        return complex(np.sum(self.weights * self.density * kern))


def lemma22_residual(
    mix: MixtureSpec,
    z: complex,
    *,
    z1_law: Distribution | None = None,
    transform: MixtureStieltjes | None = None,
) -> complex:
    """S^(n)(F_Z1, z)/n + S(F_X1, z) S^(n-1)(F_X2, z).

    ``z1_law`` short-circuits the numeric transform when the mixture law is
    known in closed form (the Cauchy fixed point); otherwise the cached
    numeric ``transform`` (built on demand) supplies S^(n)(F_Z1, .).
    """
    if mix.family != "directed":
        raise DomainError("the n-th derivative relation addresses the directed family")
    n = _integer_power(mix)
    z = complex(z)
    _check_distance(z, (mix.x1, mix.x2))
    if z1_law is not None:
        sn = z1_law.stieltjes(z, n)
    else:
        if transform is None:
            transform = MixtureStieltjes(mix)
        sn = transform(z, n)
    return sn / n + mix.x1.stieltjes(z, 0) * mix.x2.stieltjes(z, n - 1)


def _integer_power(mix: MixtureSpec) -> int:
    if mix.n is None:
        raise DomainError("identity checks need a power-weight mixture")
    n = float(mix.n)
    if abs(n - round(n)) > 1e-12 or n < 1:
        raise DomainError(f"identity checks need integer n >= 1, got {n}")
    return int(round(n))


def lemma22_sweep(
    mix: MixtureSpec,
    points,
    *,
    z1_law: Distribution | None = None,
    tolerance: float | None = None,
    transform: MixtureStieltjes | None = None,
) -> ResidualReport:
    if tolerance is None:
        tolerance = 1e-8 if z1_law is not None else 1e-6
    if z1_law is None and transform is None:
        transform = MixtureStieltjes(mix)
    residuals = [
        abs(lemma22_residual(mix, z, z1_law=z1_law, transform=transform)) for z in points
    ]
    return ResidualReport("lemma22", tuple(points), tuple(residuals), tolerance)


def eq31_residual(
    mix: MixtureSpec, z: complex, *, transform: MixtureStieltjes | None = None
) -> complex:
    """-S'(F_Z1, z) - S(F_X, z)^2 for an iid directed n=2 mixture."""
    if mix.family != "directed" or _integer_power(mix) != 2:
        raise DomainError("the first-derivative corollary addresses directed n=2 mixtures")
    if mix.x1 != mix.x2:
        raise DomainError("the corollary requires identically distributed components")
    z = complex(z)
    _check_distance(z, (mix.x1,))
    if transform is None:
        transform = MixtureStieltjes(mix)
    sx = mix.x1.stieltjes(z, 0)
    return -transform(z, 1) - sx * sx


def eq31_sweep(
    mix: MixtureSpec,
    points,
    *,
    tolerance: float = 1e-6,
    transform: MixtureStieltjes | None = None,
) -> ResidualReport:
    if transform is None:
        transform = MixtureStieltjes(mix)
    residuals = [abs(eq31_residual(mix, z, transform=transform)) for z in points]
    return ResidualReport("eq31", tuple(points), tuple(residuals), tolerance)


# ---------------------------------------------------------------------------
# double transforms
# ---------------------------------------------------------------------------

def _kernel_symmetric(x1, x2, z):
    return 1.0 / ((z - x1) * (z - x2) * (x2 - x1) ** 2)


def double_stieltjes_excised(
    x1: Distribution, x2: Distribution, z: complex, delta: float
) -> complex:
    """The symmetric-kernel double integral restricted to |x2 - x1| > delta."""
    z = complex(z)
    _check_distance(z, (x1, x2))
    if delta <= 0:
        raise DomainError("excision width must be positive")
    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        if abs(x2.c - x1.c) <= delta:
            return 0.0
        return _kernel_symmetric(x1.c, x2.c, z)
    if isinstance(x1, PointMass) or isinstance(x2, PointMass):
        atom, cont, swap = (
            (x1.c, x2, False) if isinstance(x1, PointMass) else (x2.c, x1, True)
        )
        lo, hi = cont.support

        def slab(a, b):
            if a >= b:
                return 0.0
            f = (
                (lambda t: cont.pdf(t) * _kernel_symmetric(atom, t, z))
                if not swap
                else (lambda t: cont.pdf(t) * _kernel_symmetric(t, atom, z))
            )
            re = integrate.quad(lambda t: f(t).real, a, b, epsabs=1e-12, limit=200)[0]
            im = integrate.quad(lambda t: f(t).imag, a, b, epsabs=1e-12, limit=200)[0]
            return re + 1j * im

        return slab(lo, min(hi, atom - delta)) + slab(max(lo, atom + delta), hi)

    lo1, hi1 = x1.support
    lo2, hi2 = x2.support

    def inner(t1, part):
        def f(t2):
            return x2.pdf(t2) * getattr(_kernel_symmetric(t1, t2, z), part)

        total = 0.0
        a, b = lo2, min(hi2, t1 - delta)
        if a < b:
            total += integrate.quad(f, a, b, epsabs=1e-12, limit=200)[0]
        a, b = max(lo2, t1 + delta), hi2
        if a < b:
            total += integrate.quad(f, a, b, epsabs=1e-12, limit=200)[0]
        return total

    re = integrate.quad(
        lambda t1: x1.pdf(t1) * inner(t1, "real"), lo1, hi1, epsabs=1e-10, limit=200
    )[0]
    im = integrate.quad(
        lambda t1: x1.pdf(t1) * inner(t1, "imag"), lo1, hi1, epsabs=1e-10, limit=200
    )[0]
    return re + 1j * im


def double_stieltjes(
    x1: Distribution,
    x2: Distribution,
    z: complex,
    *,
    deltas=(0.08, 0.04, 0.02),
    rtol: float = 1e-6,
) -> complex:
    """Symmetric-kernel double transform with diagonal-excision auditing.

    Point-mass pairs with distinct atoms are exact.  For other component
    pairs the excised integral is evaluated on a shrinking sequence of
    widths; if the increments do not contract the integral is divergent
    (the kernel's (x2-x1)^-2 strip carries non-cancelling mass) and a
    :class:`DivergenceError` is raised with the audit trail.
    """
    z = complex(z)
    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        if x1.c == x2.c:
            raise DivergenceError("components share an atom; the kernel is not integrable")
        _check_distance(z, (x1, x2))
        return _kernel_symmetric(x1.c, x2.c, z)
    vals = [double_stieltjes_excised(x1, x2, z, d) for d in deltas]
    d1 = abs(vals[1] - vals[0])
    d2 = abs(vals[2] - vals[1])
    if d2 <= 0.6 * d1 and d2 <= rtol * max(1.0, abs(vals[2])):
        return vals[2]
    raise DivergenceError(
        "symmetric-kernel double transform does not converge as the diagonal "
        f"excision shrinks: values {vals} at widths {deltas}"
    )


def ordered_double_stieltjes(x1: Distribution, x2: Distribution, z: complex) -> complex:
    """Convergent double transform over the order statistics:
    E[ 1/((z-Y1)(z-Y2)^3) ] for Y1 = min(X1,X2), Y2 = max(X1,X2)."""
    z = complex(z)
    _check_distance(z, (x1, x2))

    def kern(y1, y2):
        return 1.0 / ((z - y1) * (z - y2) ** 3)

    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        return kern(min(x1.c, x2.c), max(x1.c, x2.c))
    if isinstance(x1, PointMass) or isinstance(x2, PointMass):
        atom, cont = (x1.c, x2) if isinstance(x1, PointMass) else (x2.c, x1)
        lo, hi = cont.support

        def f(t):
            return cont.pdf(t) * kern(min(atom, t), max(atom, t))

        re = integrate.quad(lambda t: f(t).real, lo, hi, epsabs=1e-12, limit=200, points=[atom] if lo < atom < hi else None)[0]
        im = integrate.quad(lambda t: f(t).imag, lo, hi, epsabs=1e-12, limit=200, points=[atom] if lo < atom < hi else None)[0]
        return re + 1j * im

    lo1, hi1 = x1.support
    lo2, hi2 = x2.support

    def inner(t1, part):
        def f(t2):
            return x2.pdf(t2) * getattr(kern(min(t1, t2), max(t1, t2)), part)

        pts = [t1] if lo2 < t1 < hi2 else None
        return integrate.quad(f, lo2, hi2, epsabs=1e-12, limit=200, points=pts)[0]

    re = integrate.quad(
        lambda t1: x1.pdf(t1) * inner(t1, "real"), lo1, hi1, epsabs=1e-10, limit=200
    )[0]
    im = integrate.quad(
        lambda t1: x1.pdf(t1) * inner(t1, "imag"), lo1, hi1, epsabs=1e-10, limit=200
    )[0]
    return re + 1j * im


# ---------------------------------------------------------------------------
# third-derivative relation (undirected, n = 2)
# ---------------------------------------------------------------------------

def _tsp2_pointmass_transform(a: float, b: float, z: complex, order: int) -> complex:
    """Closed S^(order)(F_Z, z) for the undirected n=2 law on a fixed pair."""
    y1, y2 = min(a, b), max(a, b)
    if y1 == y2:
        return PointMass(y1).stieltjes(z, order)
    span2 = (y2 - y1) ** 2
    segments = [(y1, y2, [-2.0 * y1 / span2, 2.0 / span2])]
    return poly_density_stieltjes(segments, z, order)


def thm441_residual(
    x1: Distribution,
    x2: Distribution,
    z: complex,
    *,
    transform: MixtureStieltjes | None = None,
) -> complex:
    """Signed residual of the third-derivative relation for undirected n=2:

        -1/2 S'''(F_Z, z) - [ S'(F_X1, z) S'(F_X2, z) + 2 T(F_X1, F_X2, z) ]

    with T the order-statistics double transform (the convergent form of the
    two-variable kernel).  S''' comes from quadrature against the numeric
    mixture density, except for point-mass pairs where both sides are closed.
    """
    z = complex(z)
    _check_distance(z, (x1, x2))
    if isinstance(x1, PointMass) and isinstance(x2, PointMass):
        s3 = _tsp2_pointmass_transform(x1.c, x2.c, z, 3)
    else:
        if transform is None:
            transform = MixtureStieltjes(MixtureSpec("undirected", x1, x2, n=2))
        s3 = transform(z, 3)
    lhs = -0.5 * s3
    rhs = x1.stieltjes(z, 1) * x2.stieltjes(z, 1) + 2.0 * ordered_double_stieltjes(x1, x2, z)
    return lhs - rhs


def thm441_sweep(
    x1: Distribution,
    x2: Distribution,
    points,
    *,
    tolerance: float | None = None,
    transform: MixtureStieltjes | None = None,
) -> ResidualReport:
    pointmass_pair = isinstance(x1, PointMass) and isinstance(x2, PointMass)
    if tolerance is None:
        tolerance = 1e-10 if pointmass_pair else 1e-5
    if not pointmass_pair and transform is None:
        transform = MixtureStieltjes(MixtureSpec("undirected", x1, x2, n=2))
    residuals = [abs(thm441_residual(x1, x2, z, transform=transform)) for z in points]
    return ResidualReport("thm441", tuple(points), tuple(residuals), tolerance)
