"""Sum formulas for spherical-wave Fisher assemblies, exact and closed form.

Five scalar sums over normalized element offsets x = position / r capture
everything the spherical-wave Fisher block needs:

    s_theta2 = sum x^2 / nu1          s_theta = sum x / sqrt(nu1)
    s_r      = sum (x s - 1) / sqrt(nu1)
    s_r2     = sum (x s - 1)^2 / nu1  s_thetar = sum x (x s - 1) / nu1

with nu1 = 1 - 2 x sin(theta) + x^2 and s = sin(theta).  The "direct"
functions evaluate them exactly (compensated summation, so the odd sums
vanish exactly on broadside).  The "riemann" / "closed" functions treat each
sum as a midpoint Riemann approximation of an integral over the aperture and
evaluate antiderivatives at the partition edges: for the element-level sums
a double integral (over the subarray extent and the subarray-centre extent,
hence second-level antiderivatives g_*), for the subarray-level sums a
single integral (first-level antiderivatives f_*).

Since nu1 = (x - sin theta)^2 + cos^2(theta) >= cos^2(theta) > 0 for
|theta| < pi/2, every logarithm and inverse hyperbolic tangent below is
well defined on that whole strip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .array_layouts import ArrayLayout, element_positions, subarray_centers
from .errors import DomainError, SingularityNearPi2
from .geometry import SceneGeometry

# Above this |theta| the closed-form evaluation loses accuracy fast as the
# integrands pile up near the theta -> pi/2 singularity; callers get an error
# instead of quietly degrading numbers.  The direct sums have no such cap.
THETA_RIEMANN_CAP = 1.45


@dataclass(frozen=True)
class SumFormulas:
    """The five aperture sums plus the number of summed terms."""

    s_theta2: float
    s_theta: float
    s_r: float
    s_r2: float
    s_thetar: float
    n: int


@dataclass(frozen=True)
class RiemannBounds:
    """Partition-edge offsets (normalized by r) for the double midpoint sum.

    x1 < x2 <= x3 < x4 whenever the subarray extent is smaller than the
    centre extent; x4 = -x1 and x3 = -x2 exactly.
    """

    x1: float
    x2: float
    x3: float
    x4: float
    delta_d: float
    delta_big_d: float


# ---------------------------------------------------------------------------
# scalar building blocks
# ---------------------------------------------------------------------------

def nu1(x: float, theta: float) -> float:
    return 1.0 - 2.0 * x * math.sin(theta) + x * x


def nu2(x: float, theta: float) -> float:
    return (x - math.sin(theta)) / math.cos(theta)


def _artanh(z: float) -> float:
    # half-log form; the abs() keeps the expression defined under rounding
    # at |z| -> 1 even though the analytic argument never reaches it here
    return 0.5 * math.log(abs((1.0 + z) / (1.0 - z)))


def _log_q_plus_u(x: float, theta: float) -> float:
    """ln(sqrt(nu1) + x - sin theta), stable for large negative x.

    For u = x - sin(theta) < 0 the direct sum cancels; use
    (q + u)(q - u) = cos^2(theta) to rewrite it.
    """
    u = x - math.sin(theta)
    q = math.sqrt(nu1(x, theta))
    if u >= 0.0:
        return math.log(q + u)
    c = math.cos(theta)
    return 2.0 * math.log(c) - math.log(q - u)


# ---------------------------------------------------------------------------
# first-level antiderivatives (single integral over the aperture)
# ---------------------------------------------------------------------------

def f_x2_over_nu1(x: float, theta: float) -> float:
    """Antiderivative of x^2 / nu1."""
    s, c = math.sin(theta), math.cos(theta)
    return x + s * math.log(nu1(x, theta)) - (math.cos(2.0 * theta) / c) * math.atan(nu2(x, theta))


def f_x_over_sqrt_nu1(x: float, theta: float) -> float:
    """Antiderivative of x / sqrt(nu1)."""
    s = math.sin(theta)
    q = math.sqrt(nu1(x, theta))
    return q + s * _artanh((x - s) / q)


def f_one_over_sqrt_nu1(x: float, theta: float) -> float:
    """Antiderivative of 1 / sqrt(nu1)."""
    return _log_q_plus_u(x, theta)


def f_x_over_nu1(x: float, theta: float) -> float:
    """Antiderivative of x / nu1."""
    return math.tan(theta) * math.atan(nu2(x, theta)) + 0.5 * math.log(nu1(x, theta))


# helper antiderivatives the second level composes from

def f_log_nu1(x: float, theta: float) -> float:
    """Antiderivative of ln(nu1)."""
    s, c = math.sin(theta), math.cos(theta)
    return (x - s) * math.log(nu1(x, theta)) - 2.0 * x + 2.0 * c * math.atan(nu2(x, theta))


def f_atan_nu2(x: float, theta: float) -> float:
    """Antiderivative of arctan(nu2)."""
    c = math.cos(theta)
    v = nu2(x, theta)
    return c * (v * math.atan(v) - 0.5 * math.log(v * v + 1.0))


def f_sqrt_nu1(x: float, theta: float) -> float:
    """Antiderivative of sqrt(nu1)."""
    s, c = math.sin(theta), math.cos(theta)
    q = math.sqrt(nu1(x, theta))
    return 0.5 * (x - s) * q + 0.5 * c * c * _log_q_plus_u(x, theta)


def f_artanh_shift(x: float, theta: float) -> float:
    """Antiderivative of artanh((x - sin theta) / sqrt(nu1))."""
    s = math.sin(theta)
    q = math.sqrt(nu1(x, theta))
    u = x - s
    return u * _artanh(u / q) - q


def f_log_shift(x: float, theta: float) -> float:
    """Antiderivative of ln(sqrt(nu1) + x - sin theta)."""
    s = math.sin(theta)
    q = math.sqrt(nu1(x, theta))
    return (x - s) * _log_q_plus_u(x, theta) - q


# ---------------------------------------------------------------------------
# second-level antiderivatives (double integral: subarray x centre extents)
# ---------------------------------------------------------------------------

def g_theta2(x: float, theta: float) -> float:
    """Antiderivative of f_x2_over_nu1."""
    s, c = math.sin(theta), math.cos(theta)
    return 0.5 * x * x + s * f_log_nu1(x, theta) - (math.cos(2.0 * theta) / c) * f_atan_nu2(x, theta)


def g_theta(x: float, theta: float) -> float:
    """Antiderivative of f_x_over_sqrt_nu1."""
    return f_sqrt_nu1(x, theta) + math.sin(theta) * f_artanh_shift(x, theta)


def g_r(x: float, theta: float) -> float:
    """Antiderivative of f_one_over_sqrt_nu1."""
    return f_log_shift(x, theta)


def g_thetar(x: float, theta: float) -> float:
    """Antiderivative of f_x_over_nu1."""
    return math.tan(theta) * f_atan_nu2(x, theta) + 0.5 * f_log_nu1(x, theta)


def g_theta2_psi0(psi: float) -> float:
    """Broadside form of g_theta2 in span-angle coordinates (x = tan psi).

    Strictly increasing on (0, pi/2): its derivative is
    (tan(psi) - psi) sec^2(psi) > 0.
    """
    if not abs(psi) < math.pi / 2.0:
        raise DomainError(f"|psi| < pi/2 required, got {psi!r}")
    t = math.tan(psi)
    return 0.5 * t * t - psi * t - math.log(math.cos(psi))


# ---------------------------------------------------------------------------
# direct (exact) sums
# ---------------------------------------------------------------------------

def _direct_sums(xs, theta: float) -> SumFormulas:
    s = math.sin(theta)
    terms_t2, terms_t, terms_r, terms_r2, terms_tr = [], [], [], [], []
    n = 0
    for x in xs:
        v = nu1(x, theta)
        if v <= 0.0:
            raise DomainError(f"nu1 <= 0 at x = {x!r}, theta = {theta!r}")
        q = math.sqrt(v)
        u = x * s - 1.0
        terms_t2.append(x * x / v)
        terms_t.append(x / q)
        terms_r.append(u / q)
        terms_r2.append(u * u / v)
        terms_tr.append(x * u / v)
        n += 1
    return SumFormulas(
        s_theta2=math.fsum(terms_t2),
        s_theta=math.fsum(terms_t),
        s_r=math.fsum(terms_r),
        s_r2=math.fsum(terms_r2),
        s_thetar=math.fsum(terms_tr),
        n=n,
    )


def sw_sums_direct(layout: ArrayLayout, geom: SceneGeometry) -> SumFormulas:
    """Exact element-level sums for the spherical-wave model."""
    xs = element_positions(layout) / geom.r
    return _direct_sums(xs.tolist(), geom.theta)


def hspw_sums_direct(layout: ArrayLayout, geom: SceneGeometry) -> SumFormulas:
    """Exact subarray-centre sums for the hybrid spherical/planar model."""
    xs = subarray_centers(layout) / geom.r
    return _direct_sums(xs.tolist(), geom.theta)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def riemann_bounds(layout: ArrayLayout, r: float) -> RiemannBounds:
    """Partition edges of the double midpoint sum, normalized by r."""
    if not r > 0.0:
        raise DomainError(f"range must be positive, got {r!r}")
    delta_d = layout.d / r
    delta_big_d = layout.big_d / r
    half_inner = 0.5 * layout.M * delta_d
    half_outer = 0.5 * layout.K * delta_big_d
    return RiemannBounds(
        x1=-half_outer - half_inner,
        x2=-half_outer + half_inner,
        x3=half_outer - half_inner,
        x4=half_outer + half_inner,
        delta_d=delta_d,
        delta_big_d=delta_big_d,
    )


def _check_riemann_theta(theta: float) -> None:
    # The slack keeps grid points that should sit exactly on the cap (for
    # example linspace hitting 1.4500000000000002) from being rejected.
    if abs(theta) > THETA_RIEMANN_CAP + 1e-9:
        raise SingularityNearPi2(
            f"closed-form sums need |theta| <= {THETA_RIEMANN_CAP}, got {theta!r}; "
            "use the direct sums instead"
        )


def sw_sums_riemann(layout: ArrayLayout, geom: SceneGeometry) -> SumFormulas:
    """Closed-form element-level sums via the double midpoint approximation."""
    _check_riemann_theta(geom.theta)
    b = riemann_bounds(layout, geom.r)
    pref = 1.0 / (b.delta_d * b.delta_big_d)
    s = math.sin(geom.theta)
    theta = geom.theta

    def four_point(g):
        return g(b.x4, theta) - g(b.x3, theta) - g(b.x2, theta) + g(b.x1, theta)

    s_theta2 = pref * four_point(g_theta2)
    if theta == 0.0:
        # The odd-symmetry sums vanish identically on broadside; evaluating
        # the four-point combination there returns only rounding noise
        # amplified by pref, so return the exact zeros.
        s_theta = 0.0
        s_thetar = 0.0
    else:
        s_theta = pref * four_point(g_theta)
        s_thetar = s * s_theta2 - pref * four_point(g_thetar)
    s_r = s * s_theta - pref * four_point(g_r)
    n = layout.n_elements
    s_r2 = n - math.cos(theta) ** 2 * s_theta2
    return SumFormulas(s_theta2, s_theta, s_r, s_r2, s_thetar, n)


def hspw_sums_closed(layout: ArrayLayout, geom: SceneGeometry) -> SumFormulas:
    """Closed-form subarray-centre sums via the single midpoint approximation."""
    b = riemann_bounds(layout, geom.r)
    a = 0.5 * layout.K * b.delta_big_d
    s = math.sin(geom.theta)
    theta = geom.theta

    def edge_diff(f):
        return (f(a, theta) - f(-a, theta)) / b.delta_big_d

    s_theta2 = edge_diff(f_x2_over_nu1)
    s_theta = edge_diff(f_x_over_sqrt_nu1)
    s_r = s * s_theta - edge_diff(f_one_over_sqrt_nu1)
    s_thetar = s * s_theta2 - edge_diff(f_x_over_nu1)
    s_r2 = layout.K - math.cos(theta) ** 2 * s_theta2
    return SumFormulas(s_theta2, s_theta, s_r, s_r2, s_thetar, layout.K)


# ---------------------------------------------------------------------------
# broadside specializations
# ---------------------------------------------------------------------------

def sw_theta0_sums(layout: ArrayLayout, r: float) -> SumFormulas:
    """Closed-form element-level sums on broadside (theta = 0).

    Even/odd symmetry collapses the four-point combination to twice the
    difference of the two positive partition edges and zeroes the odd sums.
    """
    b = riemann_bounds(layout, r)
    pref = 2.0 / (b.delta_d * b.delta_big_d)
    s_theta2 = pref * (g_theta2(b.x4, 0.0) - g_theta2(b.x3, 0.0))
    s_r = -pref * (g_r(b.x4, 0.0) - g_r(b.x3, 0.0))
    n = layout.n_elements
    return SumFormulas(
        s_theta2=s_theta2,
        s_theta=0.0,
        s_r=s_r,
        s_r2=n - s_theta2,
        s_thetar=0.0,
        n=n,
    )


def hspw_theta0_sums(k: int, psi0: float) -> SumFormulas:
    """Subarray-centre sums on broadside as functions of the aggregate span.

    psi0 is the full angle subtended at the target by the subarray-centre
    extent (psi0 = 2 arctan(K big_d / (2 r))); valid on (0, pi).  Note s_r
    is strictly negative.
    """
    if not (isinstance(k, int) and k >= 1):
        raise DomainError(f"subarray count must be an integer >= 1, got {k!r}")
    if not 0.0 < psi0 < math.pi:
        raise DomainError(f"aggregate span must lie in (0, pi), got {psi0!r}")
    half = 0.5 * psi0
    t = math.tan(half)
    ratio = psi0 / (2.0 * t)
    sp = math.sin(half)
    big_l = math.log((1.0 + sp) / (1.0 - sp))
    return SumFormulas(
        s_theta2=k * (1.0 - ratio),
        s_theta=0.0,
        s_r=-k * big_l / (2.0 * t),
        s_r2=k * ratio,
        s_thetar=0.0,
        n=k,
    )
