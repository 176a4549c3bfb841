"""Series evaluation of the chiral-gap Casimir free energy and pressure.

All internal math lives in two dimensionless variables: the round-trip
half-angle theta and the reduced temperature tau = 2 pi l k_B T / (hbar c).
The Matsubara sum over the log-determinant kernel collapses, after expanding
the logarithm and integrating the transverse momentum, to

    E(theta, tau) = -Sum_{m>=1} cos(2 m theta)/m^3 * [1/2 + w(2 m tau)],
    w(a) = 1/(e^a - 1) + a / (4 sinh^2(a/2)),

where E here is the free energy per unit area scaled by 4 pi beta l^2.  The
half-weights (the n=0 zero mode) are summed in closed form through the s=3
cosine series, leaving a remainder that falls off like 1/m^4 uniformly in tau
and exponentially once 2 m tau > 1.  Differentiating with respect to the
separation at fixed temperature and angle gives the pressure series with
weights 1 + sum_n e^{-2mn tau}(2 + 2a + a^2), again in closed form.

Sign convention: negative free energy / pressure means attraction.

At tau = 0 the sum becomes an integral and both quantities have exact
Bernoulli-polynomial closed forms (reduced_free_energy_T0 and
reduced_pressure_T0, in units of hbar c / l^3 and hbar c / l^4).

Evaluation order is selectable: m_first is the production path described
above; n_first evaluates one Matsubara frequency at a time through the damped
polylogarithms and exists as an independent cross-check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from enum import Enum

from .kernel import MediumKind, log_det_kernel
from .special_functions import ZETA_3, clausen_cos, clausen_sin, re_polylog_damped

__all__ = [
    "HBAR",
    "C_LIGHT",
    "K_BOLTZMANN",
    "ZeroModePolicy",
    "CavityConfig",
    "ReducedPoint",
    "SeriesControl",
    "EvalResult",
    "reduced_free_energy",
    "reduced_free_energy_T0",
    "reduced_pressure",
    "reduced_pressure_T0",
    "classical_limit_reduced",
    "matsubara_term",
    "physical_free_energy",
    "physical_pressure",
    "effective_theta",
    "reduced_temperature",
]

# Defined SI constants (2019 redefinition), to the digits used everywhere here.
HBAR = 1.054571817e-34  # J s
C_LIGHT = 299792458.0  # m / s
K_BOLTZMANN = 1.380649e-23  # J / K

PI_LO = 1.2246467991473532e-16  # float(pi) + PI_LO ~ pi to ~1e-32
EIGHT_PI2 = 8.0 * math.pi**2

# absolute error budget of the closed-form Clausen pieces (contract 1e-12,
# split across the half weight)
_CLAUSEN_ERR = 1e-12


class ZeroModePolicy(Enum):
    """Treatment of the n=0 Matsubara term.

    FULL keeps both polarizations with chiral mixing at every frequency
    (the literal symmetric sum).  TM_ONLY is the experimental variant where
    the static term carries a single unmixed TM mode, replacing the n=0
    reduced term by -zeta(3)/2 independent of angle.
    """

    FULL = "full"
    TM_ONLY = "tm_only"


@dataclass(frozen=True)
class CavityConfig:
    """Physical scenario: plate separation, temperature, and gap medium."""

    separation: float  # meters
    temperature: float  # kelvin
    kind: MediumKind = MediumKind.FIXED_ANGLE
    theta: float = 0.0  # radians, consulted for FIXED_ANGLE / OPTICALLY_ACTIVE
    verdet: float = 0.0  # rad / (T m), consulted for FARADAY
    bfield: float = 0.0  # tesla, consulted for FARADAY
    zero_mode: ZeroModePolicy = ZeroModePolicy.FULL

    def __post_init__(self):
        if not (math.isfinite(self.separation) and self.separation > 0.0):
            raise ValueError(f"separation must be positive, got {self.separation!r}")
        if not (math.isfinite(self.temperature) and self.temperature >= 0.0):
            raise ValueError(f"temperature must be >= 0, got {self.temperature!r}")
        for v in (self.theta, self.verdet, self.bfield):
            if not math.isfinite(v):
                raise ValueError(f"config fields must be finite, got {v!r}")


@dataclass(frozen=True)
class ReducedPoint:
    """Dimensionless evaluation point (theta, tau)."""

    theta: float
    tau: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError(f"theta must be finite, got {self.theta!r}")
        if not (math.isfinite(self.tau) and self.tau >= 0.0):
            raise ValueError(f"tau must be >= 0, got {self.tau!r}")


@dataclass(frozen=True)
class SeriesControl:
    """Convergence policy for the reduced series."""

    rel_tol: float = 1e-10
    max_m: int = 10**6
    order: str = "m_first"  # or "n_first"
    max_n: int = 10**6

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if self.max_m < 1 or self.max_n < 1:
            raise ValueError("max_m and max_n must be >= 1")
        if self.order not in ("m_first", "n_first"):
            raise ValueError(f"order must be 'm_first' or 'n_first', got {self.order!r}")


@dataclass(frozen=True)
class EvalResult:
    """Scalar result with truncation diagnostics.

    terms_used counts series terms in the active summation order (m terms for
    m_first, Matsubara terms including n=0 for n_first, 0 for closed forms).
    When converged is set, error_estimate <= rel_tol * |value|.
    """

    value: float
    error_estimate: float
    terms_used: int
    converged: bool


def _meets(err: float, rel_tol: float, value: float) -> bool:
    if value == 0.0:
        return err <= 1e-300
    return err <= rel_tol * abs(value)


def _canonical_theta(theta: float) -> float:
    """Fold theta into [0, pi/2]; cos(2 m theta) is even and pi-periodic.

    Uses the extended-precision pi tail so that folding is bit-exact under
    theta -> -theta and stays within ~1e-16 of exact under theta -> theta+pi.
    """
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    r = math.remainder(theta, math.pi)
    k = round((theta - r) / math.pi)
    r -= k * PI_LO
    t = abs(r)
    if t > 0.5 * math.pi:
        t = math.pi - t
    return t


def _thermal_weight(a: float) -> float:
    # w(a) = y/(1-y) + a y/(1-y)^2 with y = e^{-a}; 2/a - O(a^3) as a -> 0
    if a > 36.0:
        return math.exp(-a) * (1.0 + a)  # relative error < 5e-15 here
    em = math.expm1(a)
    sh = math.sinh(0.5 * a)
    return 1.0 / em + a / (4.0 * sh * sh)


def _pressure_weight(b: float) -> float:
    # Sum_{n>=1} e^{-nb} (2 + 2nb + (nb)^2) in closed form; 6/b - 1 + O(b) small b
    if b > 36.0:
        return math.exp(-b) * (2.0 + b * (2.0 + b))
    em = math.expm1(b)
    sh = math.sinh(0.5 * b)
    s2 = sh * sh
    return 2.0 / em + 0.5 * b / s2 + 0.25 * b * b * math.cosh(0.5 * b) / (s2 * sh)


def _energy_tail_m(m: int, tau: float) -> float:
    # |sum_{k>m}| <= min over two bounds: w(a) <= 2/a, and w decreasing
    alg = 1.0 / (3.0 * m**3 * tau)
    exp_reg = _thermal_weight(2.0 * (m + 1) * tau) / (2.0 * m * m)
    return min(alg, exp_reg)


def _pressure_tail_m(m: int, tau: float) -> float:
    # weight <= 6/b and decreasing in b
    alg = 1.0 / (tau * m**3)
    exp_reg = _pressure_weight(2.0 * (m + 1) * tau) / (2.0 * m * m)
    return min(alg, exp_reg)


def _sum_m_first(theta: float, tau: float, ctrl: SeriesControl, base: float,
                 base_err: float, weight, tail) -> EvalResult:
    """Shared m-first accumulator: base - sum_m cos(2 m theta) weight(2 m tau)/m^3."""
    phi = 2.0 * theta
    total = base
    comp = 0.0  # Neumaier compensation
    small = 0
    m = 0
    converged = False
    err = math.inf
    while m < ctrl.max_m:
        m += 1
        term = -math.cos(m * phi) * weight(2.0 * m * tau) / (m * m * m)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        scale = abs(total + comp)
        if abs(term) <= ctrl.rel_tol * scale:
            small += 1
            # cosine oscillation makes single small terms unsafe; require a
            # streak and an absolute tail bound before stopping
            if small >= 3:
                err = tail(m, tau) + base_err
                if err <= ctrl.rel_tol * scale:
                    converged = True
                    break
                if base_err > ctrl.rel_tol * scale:
                    # the error floor already exceeds the target, so no
                    # number of extra terms can certify convergence
                    break
        else:
            small = 0
    value = total + comp
    if not converged:
        err = tail(m, tau) + base_err
    return EvalResult(value, err, m, converged and _meets(err, ctrl.rel_tol, value))


def _geometric_tails(y: float, n: int) -> tuple[float, float, float]:
    # exact tails of sum y^k, sum k y^k, sum k^2 y^k over k > n
    om = 1.0 - y
    ynp = y ** (n + 1)
    s0 = ynp / om
    s1 = ynp * ((n + 1) - n * y) / (om * om)
    s2 = ynp * ((n + 1) ** 2 - (2 * n * n + 2 * n - 1) * y + n * n * y * y) / (om**3)
    return s0, s1, s2


def _energy_tail_n(n: int, tau: float) -> float:
    # per-term bound e^{-2 n tau} (1 + 2 n tau) zeta(2), summed exactly
    y = math.exp(-2.0 * tau)
    s0, s1, _ = _geometric_tails(y, n)
    return (math.pi**2 / 6.0) * (s0 + 2.0 * tau * s1)


def _pressure_tail_n(n: int, tau: float) -> float:
    y = math.exp(-2.0 * tau)
    s0, s1, s2 = _geometric_tails(y, n)
    z2 = math.pi**2 / 6.0
    return 2.0 * ZETA_3 * s0 + 4.0 * tau * z2 * s1 + 4.0 * tau * tau * s2 / (1.0 - y)


def _sum_n_first(theta: float, tau: float, ctrl: SeriesControl, base: float,
                 base_err: float, per_n, tail) -> EvalResult:
    total = base
    acc_err = base_err
    small = 0
    n = 0
    converged = False
    err = math.inf
    while n < ctrl.max_n:
        n += 1
        term, term_err = per_n(n)
        total += term
        acc_err += term_err
        if abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= 3:
                err = acc_err + tail(n, tau)
                if err <= ctrl.rel_tol * abs(total):
                    converged = True
                    break
                if acc_err > ctrl.rel_tol * abs(total):
                    # accumulated roundoff alone exceeds the target; later
                    # terms only add to it, so bail out honestly
                    break
        else:
            small = 0
    if not converged:
        err = acc_err + tail(n, tau)
    return EvalResult(total, err, n + 1, converged and _meets(err, ctrl.rel_tol, total))


def _validate_point(p: ReducedPoint) -> None:
    if p.tau <= 0.0:
        raise ValueError(
            "tau must be positive for the thermal series; use the *_T0 "
            "closed forms at zero temperature"
        )
    if p.tau < 1e-6:
        warnings.warn(
            f"tau = {p.tau:g} is deep in the quantum regime; the T=0 closed "
            "form is better conditioned there",
            RuntimeWarning,
            stacklevel=3,
        )


def _zero_mode_base(theta: float, zero_mode: ZeroModePolicy) -> tuple[float, float]:
    """Half-weighted n=0 contribution to the reduced free energy and its error."""
    if zero_mode is ZeroModePolicy.TM_ONLY:
        return -0.25 * ZETA_3, 1e-16
    return -0.5 * clausen_cos(3, 2.0 * theta), 0.5 * _CLAUSEN_ERR


def reduced_free_energy(p: ReducedPoint, ctrl: SeriesControl | None = None,
                        zero_mode: ZeroModePolicy = ZeroModePolicy.FULL) -> EvalResult:
    """Reduced free energy E(theta, tau) = E_c * 4 pi beta l^2 (signed).

    Requires tau > 0; zero temperature is a separate closed form.
    """
    ctrl = ctrl or SeriesControl()
    _validate_point(p)
    theta = _canonical_theta(p.theta)
    return _reduced_free_energy(theta, p.tau, ctrl, zero_mode)


def _reduced_free_energy(theta: float, tau: float, ctrl: SeriesControl,
                         zero_mode: ZeroModePolicy) -> EvalResult:
    base, base_err = _zero_mode_base(theta, zero_mode)
    if ctrl.order == "m_first":
        return _sum_m_first(theta, tau, ctrl, base, base_err, _thermal_weight, _energy_tail_m)

    phi = 2.0 * theta

    def per_n(n: int) -> tuple[float, float]:
        a = 2.0 * n * tau
        if a > 745.0:  # e^{-a} underflows; term is identically zero at double precision
            return 0.0, 0.0
        r = math.exp(-a)
        li3, b3 = re_polylog_damped(3, r, phi, with_bound=True)
        li2, b2 = re_polylog_damped(2, r, phi, with_bound=True)
        term = -(li3 + a * li2)
        return term, b3 + a * b2 + 2e-16 * abs(term)

    return _sum_n_first(theta, tau, ctrl, base, base_err, per_n, _energy_tail_n)


def reduced_free_energy_T0(theta: float) -> float:
    """Zero-temperature reduced free energy E_c l^3 / (hbar c), exact closed form."""
    t = _canonical_theta(theta)
    return -clausen_cos(4, 2.0 * t) / EIGHT_PI2


def reduced_pressure(p: ReducedPoint, ctrl: SeriesControl | None = None,
                     zero_mode: ZeroModePolicy = ZeroModePolicy.FULL) -> EvalResult:
    """Reduced pressure P * 4 pi beta l^3 at fixed temperature and fixed angle.

    Term-wise l-derivative of the free-energy series: P_hat = 2 E_hat -
    tau dE_hat/dtau.  Negative means attraction.
    """
    ctrl = ctrl or SeriesControl()
    _validate_point(p)
    theta = _canonical_theta(p.theta)
    return _reduced_pressure(theta, p.tau, ctrl, zero_mode)


def _reduced_pressure(theta: float, tau: float, ctrl: SeriesControl,
                      zero_mode: ZeroModePolicy) -> EvalResult:
    # the tau-independent n=0 part contributes twice its free-energy value
    base, base_err = _zero_mode_base(theta, zero_mode)
    base, base_err = 2.0 * base, 2.0 * base_err
    if ctrl.order == "m_first":
        return _sum_m_first(theta, tau, ctrl, base, base_err, _pressure_weight, _pressure_tail_m)

    phi = 2.0 * theta

    def per_n(n: int) -> tuple[float, float]:
        a = 2.0 * n * tau
        if a > 745.0:
            return 0.0, 0.0
        r = math.exp(-a)
        li3, b3 = re_polylog_damped(3, r, phi, with_bound=True)
        li2, b2 = re_polylog_damped(2, r, phi, with_bound=True)
        li1 = -0.5 * log_det_kernel(r, theta)  # Re Li_1(r e^{2 i theta}), closed form
        term = -(2.0 * li3 + 2.0 * a * li2 + a * a * li1)
        err = 2.0 * b3 + 2.0 * a * b2 + 4e-16 * a * a * abs(li1) + 2e-16 * abs(term)
        return term, err
    return _sum_n_first(theta, tau, ctrl, base, base_err, per_n, _pressure_tail_n)


def reduced_pressure_T0(theta: float) -> float:
    """Zero-temperature reduced pressure P l^4 / (hbar c) = 3 x the T=0 energy."""
    return 3.0 * reduced_free_energy_T0(theta)


def classical_limit_reduced(theta: float) -> float:
    """tau -> infinity limit of the reduced free energy (full zero-mode policy)."""
    return -0.5 * clausen_cos(3, 2.0 * _canonical_theta(theta))


def matsubara_term(n: int, p: ReducedPoint) -> float:
    """Reduced contribution of Matsubara index n (before the n=0 half weight).

    n = 0 gives -clausen_cos(3, 2 theta) (full policy); n >= 1 needs tau > 0.
    """
    if n < 0:
        raise ValueError(f"Matsubara index must be >= 0, got {n!r}")
    theta = _canonical_theta(p.theta)
    if n == 0:
        return -clausen_cos(3, 2.0 * theta)
    if p.tau <= 0.0:
        raise ValueError("positive tau required for n >= 1 Matsubara terms")
    a = 2.0 * n * p.tau
    if a > 745.0:
        return 0.0
    r = math.exp(-a)
    return -(re_polylog_damped(3, r, 2.0 * theta) + a * re_polylog_damped(2, r, 2.0 * theta))


def effective_theta(cfg: CavityConfig) -> float:
    """Round-trip half-angle actually seen by the series.

    Faraday rotation accumulates over the traversal (V B l); an optically
    active return pass undoes the rotation exactly, so the effective angle
    is identically zero there.
    """
    if cfg.kind is MediumKind.FARADAY:
        return cfg.verdet * cfg.bfield * cfg.separation
    if cfg.kind is MediumKind.OPTICALLY_ACTIVE:
        return 0.0
    return cfg.theta


def reduced_temperature(separation: float, temperature: float) -> float:
    """tau = 2 pi l k_B T / (hbar c)."""
    return 2.0 * math.pi * separation * K_BOLTZMANN * temperature / (HBAR * C_LIGHT)


def physical_free_energy(cfg: CavityConfig, ctrl: SeriesControl | None = None) -> EvalResult:
    """Free energy per unit area in J/m^2 for the given physical scenario."""
    ctrl = ctrl or SeriesControl()
    theta = effective_theta(cfg)
    if cfg.temperature == 0.0:
        scale = HBAR * C_LIGHT / cfg.separation**3
        value = reduced_free_energy_T0(theta)
        err = 1e-15  # polynomial closed form, roundoff level in reduced units
        return EvalResult(value * scale, err * scale, 0, _meets(err, ctrl.rel_tol, value))
    tau = reduced_temperature(cfg.separation, cfg.temperature)
    res = _reduced_free_energy(_canonical_theta(theta), tau, ctrl, cfg.zero_mode)
    scale = K_BOLTZMANN * cfg.temperature / (4.0 * math.pi * cfg.separation**2)
    return EvalResult(res.value * scale, res.error_estimate * scale, res.terms_used, res.converged)


def physical_pressure(cfg: CavityConfig, ctrl: SeriesControl | None = None) -> EvalResult:
    """Pressure in Pa; negative means the plates attract.

    Fixed-angle and optically active media differentiate the series
    analytically.  In a Faraday medium the angle itself scales with the
    separation, so the derivative is taken by Richardson-extrapolated central
    differences of the free energy with step l * 1e-5; its convergence is
    certified against max(rel_tol, 1e-6), the honest noise floor of the
    stencil.
    """
    ctrl = ctrl or SeriesControl()
    if cfg.kind is not MediumKind.FARADAY:
        theta = effective_theta(cfg)
        if cfg.temperature == 0.0:
            scale = HBAR * C_LIGHT / cfg.separation**4
            value = reduced_pressure_T0(theta)
            err = 3e-15
            return EvalResult(value * scale, err * scale, 0, _meets(err, ctrl.rel_tol, value))
        tau = reduced_temperature(cfg.separation, cfg.temperature)
        res = _reduced_pressure(_canonical_theta(theta), tau, ctrl, cfg.zero_mode)
        scale = K_BOLTZMANN * cfg.temperature / (4.0 * math.pi * cfg.separation**3)
        return EvalResult(res.value * scale, res.error_estimate * scale,
                          res.terms_used, res.converged)

    inner = SeriesControl(rel_tol=min(ctrl.rel_tol, 1e-12), max_m=ctrl.max_m,
                          order=ctrl.order, max_n=ctrl.max_n)
    terms = 0

    def energy_at(sep: float) -> float:
        nonlocal terms
        res = physical_free_energy(replace(cfg, separation=sep), inner)
        terms += res.terms_used
        return res.value

    l = cfg.separation
    h = 1e-5 * l
    d_h = -(energy_at(l + h) - energy_at(l - h)) / (2.0 * h)
    d_h2 = -(energy_at(l + 0.5 * h) - energy_at(l - 0.5 * h)) / h
    value = (4.0 * d_h2 - d_h) / 3.0
    if not math.isfinite(value):
        return EvalResult(math.nan, math.inf, terms, False)
    err = abs(value - d_h2)  # Richardson defect dominates the stencil error
    fd_tol = max(ctrl.rel_tol, 1e-6)
    return EvalResult(value, err, terms, _meets(err, fd_tol, value))
