"""Closed-form bound assemblies built on the aperture sum formulas.

The normalized (theta, r) Fisher block for the spherical-wave model is

    q11 = chi_nt (s_theta2/N - (s_theta/N)^2)            + chi_nr phi_theta^2
    q12 = chi_nt/(r cos t) (s_thetar/N - s_theta s_r/N^2) + chi_nr phi_theta phi_r
    q22 = chi_nt/(r^2 cos^2 t) (s_r2/N - (s_r/N)^2)       + chi_nr phi_r^2

with chi_nt = 4 pi^2 r^2 cos^2(theta)/lambda^2 the transmit curvature factor
and chi_nr = pi^2 d_rx^2 (N_r^2 - 1)/(3 lambda^2) the receive aperture
factor (phi_* are the arrival-angle sensitivities).  The hybrid model swaps
in the subarray-centre sums (N -> K) and adds the within-subarray planar
term chi_m cos^2(theta) to q11 only, since a planar subarray carries angle
but no range information.

Feeding the *direct* sums through these assemblies reproduces the
first-principles bundle route exactly (same inner products, rearranged);
feeding the closed-form sums gives the fast approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .array_layouts import ArrayLayout, make_dua, make_ua, make_wsms
from .closed_form import (
    SumFormulas,
    hspw_sums_closed,
    hspw_sums_direct,
    hspw_theta0_sums,
    sw_sums_direct,
    sw_sums_riemann,
    sw_theta0_sums,
)
from .errors import DomainError, InvalidLayout, SingularFisher
from .fisher_core import (
    NOISE_FLOOR_MULT,
    CrbResult,
    NormalizedFisher,
    bundle_crb,
    crb,
    received_gain_sq,
)
from .geometry import SceneGeometry, dsinphi_dr, dsinphi_dtheta


@dataclass(frozen=True)
class ChiFactors:
    """Aperture prefactors of the Fisher assemblies."""

    chi_nt: float  # transmit curvature factor, 4 pi^2 r^2 cos^2(theta) / lambda^2
    chi_nr: float  # receive factor, pi^2 d_rx^2 (N_r^2 - 1) / (3 lambda^2)
    chi_m: float   # within-subarray planar factor, pi^2 d^2 (M^2 - 1) / (3 lambda^2)
    chi_k: float   # subarray-centre curvature factor (same form as chi_nt)


@dataclass(frozen=True)
class Theta0Asymptotes:
    """Broadside hybrid angle-bound limits for extreme aggregate spans."""

    crb_theta_span_pi: float    # aggregate span -> pi (floor: best possible)
    crb_theta_span_zero: float  # aggregate span -> 0 (ceiling for the TX part)


@dataclass(frozen=True)
class RatioCheck:
    """Scaling-law comparison between a layout and its (cK, D/c) rescale."""

    factor: int
    sum_ratios: dict
    crb_theta_ratio: float
    crb_r_ratio: float
    expected: float


@dataclass(frozen=True)
class LayoutComparison:
    """Bounds for a widely spaced layout and its two uniform mirrors."""

    wsms: CrbResult
    ua: CrbResult
    dua: CrbResult


def chi_factors(
    layout: ArrayLayout, geom: SceneGeometry, n_r: int, d_rx: float | None = None
) -> ChiFactors:
    lam = layout.lam
    d_rx_eff = layout.d if d_rx is None else d_rx
    c = math.cos(geom.theta)
    curvature = 4.0 * math.pi ** 2 * geom.r ** 2 * c * c / lam ** 2
    chi_nr = math.pi ** 2 * d_rx_eff ** 2 * (n_r ** 2 - 1) / (3.0 * lam ** 2)
    chi_m = math.pi ** 2 * layout.d ** 2 * (layout.M ** 2 - 1) / (3.0 * lam ** 2)
    return ChiFactors(chi_nt=curvature, chi_nr=chi_nr, chi_m=chi_m, chi_k=curvature)


def _rx_sensitivities(geom: SceneGeometry, chi_nr: float):
    # skip the arrival-angle derivatives entirely when the receive factor is
    # zero (single receive element): they would needlessly constrain big_r
    if chi_nr == 0.0:
        return 0.0, 0.0
    return dsinphi_dtheta(geom), dsinphi_dr(geom)


def _assemble(
    sums: SumFormulas,
    chi_tx: float,
    geom: SceneGeometry,
    chi_nr: float,
    phi_theta: float,
    phi_r: float,
    planar_11: float = 0.0,
) -> NormalizedFisher:
    n = sums.n
    r, c = geom.r, math.cos(geom.theta)
    q11 = chi_tx * (sums.s_theta2 / n - (sums.s_theta / n) ** 2) + planar_11 + chi_nr * phi_theta ** 2
    q12 = (
        chi_tx / (r * c) * (sums.s_thetar / n - sums.s_theta * sums.s_r / n ** 2)
        + chi_nr * phi_theta * phi_r
    )
    q22 = (
        chi_tx / (r * r * c * c) * (sums.s_r2 / n - (sums.s_r / n) ** 2)
        + chi_nr * phi_r ** 2
    )
    # Round-off floors from the pre-cancellation magnitudes: the variance
    # factors subtract same-sign quantities, so anything below these is
    # numerically zero information, not a usable bound.
    floor_mult = NOISE_FLOOR_MULT * float(np.finfo(float).eps)
    q11_floor = floor_mult * (
        chi_tx * (abs(sums.s_theta2) / n + (sums.s_theta / n) ** 2)
        + abs(planar_11)
        + chi_nr * phi_theta ** 2
    )
    q22_floor = floor_mult * (
        chi_tx / (r * r * c * c) * (abs(sums.s_r2) / n + (sums.s_r / n) ** 2)
        + chi_nr * phi_r ** 2
    )
    return NormalizedFisher(
        q11=q11, q12=q12, q22=q22, q11_floor=q11_floor, q22_floor=q22_floor
    )


def sw_fisher_from_sums(
    sums: SumFormulas,
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    d_rx: float | None = None,
) -> NormalizedFisher:
    """Spherical-wave normalized Fisher block from element-level sums."""
    if sums.n != layout.n_elements:
        raise DomainError(
            f"sums cover {sums.n} terms but the layout has {layout.n_elements} elements"
        )
    chi = chi_factors(layout, geom, n_r, d_rx)
    phi_theta, phi_r = _rx_sensitivities(geom, chi.chi_nr)
    return _assemble(sums, chi.chi_nt, geom, chi.chi_nr, phi_theta, phi_r)


def hspw_fisher_from_sums(
    sums: SumFormulas,
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    d_rx: float | None = None,
) -> NormalizedFisher:
    """Hybrid normalized Fisher block from subarray-centre sums."""
    if sums.n != layout.K:
        raise DomainError(
            f"sums cover {sums.n} terms but the layout has {layout.K} subarrays"
        )
    chi = chi_factors(layout, geom, n_r, d_rx)
    phi_theta, phi_r = _rx_sensitivities(geom, chi.chi_nr)
    planar = chi.chi_m * math.cos(geom.theta) ** 2
    return _assemble(sums, chi.chi_k, geom, chi.chi_nr, phi_theta, phi_r, planar_11=planar)


def _finish(
    nf: NormalizedFisher,
    layout: ArrayLayout,
    n_r: int,
    alpha: complex,
    sigma_n_sq: float,
    beta_sq: float | None,
    eps_det: float,
) -> CrbResult:
    if beta_sq is None:
        beta_sq = received_gain_sq(alpha, n_r, layout.n_elements)
    return crb(nf, beta_sq, sigma_n_sq, eps_det=eps_det)


def sw_crb_closed(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    method: str = "riemann",
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    beta_sq: float | None = None,
    d_rx: float | None = None,
    eps_det: float = 1e-18,
) -> CrbResult:
    """Spherical-wave bounds via the sum formulas (exact or closed form)."""
    if method == "riemann":
        sums = sw_sums_riemann(layout, geom)
    elif method == "direct":
        sums = sw_sums_direct(layout, geom)
    else:
        raise DomainError(f"unknown method {method!r} (expected 'riemann' or 'direct')")
    nf = sw_fisher_from_sums(sums, layout, geom, n_r, d_rx)
    return _finish(nf, layout, n_r, alpha, sigma_n_sq, beta_sq, eps_det)


def hspw_crb_closed(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    method: str = "riemann",
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    beta_sq: float | None = None,
    d_rx: float | None = None,
    eps_det: float = 1e-18,
) -> CrbResult:
    """Hybrid-model bounds via the subarray-centre sums."""
    if method == "riemann":
        sums = hspw_sums_closed(layout, geom)
    elif method == "direct":
        sums = hspw_sums_direct(layout, geom)
    else:
        raise DomainError(f"unknown method {method!r} (expected 'riemann' or 'direct')")
    nf = hspw_fisher_from_sums(sums, layout, geom, n_r, d_rx)
    return _finish(nf, layout, n_r, alpha, sigma_n_sq, beta_sq, eps_det)


def sw_crb_theta0(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    beta_sq: float | None = None,
    d_rx: float | None = None,
    eps_det: float = 1e-18,
) -> CrbResult:
    """Broadside spherical-wave bounds from the two-point closed form.

    The cross term vanishes on broadside, so the angle and range bounds
    decouple; the range bound carries no receive-side contribution at all
    (it is independent of the receiver size at fixed gain).
    """
    if geom.theta != 0.0:
        raise DomainError(f"broadside form needs theta = 0, got {geom.theta!r}")
    sums = sw_theta0_sums(layout, geom.r)
    nf = sw_fisher_from_sums(sums, layout, geom, n_r, d_rx)
    return _finish(nf, layout, n_r, alpha, sigma_n_sq, beta_sq, eps_det)


def hspw_crb_theta0(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    psi0: float | None = None,
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    beta_sq: float | None = None,
    d_rx: float | None = None,
    eps_det: float = 1e-18,
) -> CrbResult:
    """Broadside hybrid bounds parameterized by the aggregate span psi0.

    psi0 defaults to the layout's own span 2 arctan(K big_d / (2 r)); passing
    it explicitly supports span-limit studies.
    """
    if geom.theta != 0.0:
        raise DomainError(f"broadside form needs theta = 0, got {geom.theta!r}")
    if psi0 is None:
        psi0 = 2.0 * math.atan(0.5 * layout.K * layout.big_d / geom.r)
    sums = hspw_theta0_sums(layout.K, psi0)
    nf = hspw_fisher_from_sums(sums, layout, geom, n_r, d_rx)
    return _finish(nf, layout, n_r, alpha, sigma_n_sq, beta_sq, eps_det)


def hspw_crb_asymptotes(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    beta_sq: float | None = None,
    d_rx: float | None = None,
) -> Theta0Asymptotes:
    """Limits of the broadside hybrid angle bound for extreme spans.

    As the aggregate span approaches pi the subarray-centre sum saturates
    (s_theta2 -> K) and the angle bound reaches its floor; as the span
    approaches 0 the curvature term drops out entirely and only the
    within-subarray and receive apertures remain.  The range bound diverges
    in both limits, so only the angle values are reported.
    """
    if geom.theta != 0.0:
        raise DomainError(f"broadside form needs theta = 0, got {geom.theta!r}")
    chi = chi_factors(layout, geom, n_r, d_rx)
    phi_theta, _ = _rx_sensitivities(geom, chi.chi_nr)
    rx_term = chi.chi_nr * phi_theta ** 2
    if beta_sq is None:
        beta_sq = received_gain_sq(alpha, n_r, layout.n_elements)
    pref = sigma_n_sq / (2.0 * beta_sq)
    q11_floor = chi.chi_k + chi.chi_m + rx_term   # span -> pi: s_theta2/K -> 1
    q11_ceiling = chi.chi_m + rx_term             # span -> 0: s_theta2/K -> 0
    if q11_ceiling <= 0.0:
        raise SingularFisher(
            "angle information vanishes in the zero-span limit for this setup",
            det=q11_ceiling,
        )
    return Theta0Asymptotes(
        crb_theta_span_pi=pref / q11_floor,
        crb_theta_span_zero=pref / q11_ceiling,
    )


def ratio_check(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    factor: int = 2,
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    d_rx: float | None = None,
) -> RatioCheck:
    """Verify the K*big_d scaling law on the closed-form route.

    Rescaling a layout to (factor*K, big_d/factor) preserves the partition
    edges, so every closed-form sum scales by exactly `factor` and both
    bounds scale by exactly 1/factor (the gain grows with the element
    count).  Returns base/scaled sum ratios and scaled/base bound ratios,
    all of which should equal 1/factor.
    """
    if layout.kind != "wsms":
        raise InvalidLayout("the scaling law applies to widely spaced layouts")
    if not (isinstance(factor, int) and factor >= 2):
        raise DomainError(f"factor must be an integer >= 2, got {factor!r}")
    big_d_scaled = layout.big_d / factor
    d0_scaled = big_d_scaled - (layout.M - 1) * layout.d
    scaled = make_wsms(layout.K * factor, layout.M, layout.d, d0_scaled, layout.lam)

    sums_base = sw_sums_riemann(layout, geom)
    sums_scaled = sw_sums_riemann(scaled, geom)
    names = ("s_theta2", "s_theta", "s_r", "s_r2", "s_thetar")
    sum_ratios = {}
    for name in names:
        a = getattr(sums_base, name)
        b = getattr(sums_scaled, name)
        if a == 0.0 and b == 0.0:
            # odd sums on broadside: identically zero on both sides, the
            # law holds vacuously
            sum_ratios[name] = 1.0 / factor
        else:
            sum_ratios[name] = a / b

    crb_base = sw_crb_closed(
        layout, geom, n_r, method="riemann", alpha=alpha, sigma_n_sq=sigma_n_sq, d_rx=d_rx
    )
    crb_scaled = sw_crb_closed(
        scaled, geom, n_r, method="riemann", alpha=alpha, sigma_n_sq=sigma_n_sq, d_rx=d_rx
    )
    return RatioCheck(
        factor=factor,
        sum_ratios=sum_ratios,
        crb_theta_ratio=crb_scaled.crb_theta / crb_base.crb_theta,
        crb_r_ratio=crb_scaled.crb_r / crb_base.crb_r,
        expected=1.0 / factor,
    )


def compare_wsms_ua(
    layout: ArrayLayout,
    geom: SceneGeometry,
    n_r: int,
    *,
    alpha: complex = 1.0 + 0.0j,
    sigma_n_sq: float = 1.0,
    d_rx: float | None = None,
) -> LayoutComparison:
    """Bounds for a widely spaced layout and its two uniform mirrors.

    Uses the first-principles bundle route.  On broadside the widely spaced
    layout must beat its aperture-matched sparse uniform mirror on the angle
    bound strictly; that ordering is asserted here.
    """
    if layout.kind != "wsms":
        raise InvalidLayout("comparison is defined for a widely spaced base layout")
    ua = make_ua(layout.K, layout.M, layout.d, layout.d0, layout.lam)
    dua = make_dua(layout.K, layout.M, layout.d, layout.lam)
    kw = dict(alpha=alpha, sigma_n_sq=sigma_n_sq, d_rx=d_rx)
    result = LayoutComparison(
        wsms=bundle_crb(layout, geom, n_r, model="sw", **kw),
        ua=bundle_crb(ua, geom, n_r, model="sw", **kw),
        dua=bundle_crb(dua, geom, n_r, model="sw", **kw),
    )
    if geom.theta == 0.0 and not result.wsms.crb_theta < result.ua.crb_theta:
        raise AssertionError(
            "expected the widely spaced layout to beat its sparse uniform mirror "
            f"on broadside: {result.wsms.crb_theta!r} vs {result.ua.crb_theta!r}"
        )
    return result
