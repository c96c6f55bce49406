"""External positivity: three-valued verdicts with certificates or witnesses.

A proper F(s) = d + F0(s) has impulse response d*delta(t) + f0(t); the system
is externally positive iff d >= 0 and f0(t) >= 0 for all t >= 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ImproperInput, NoWitnessExists
from .posreal import _golden
from .realize import (InputSpec, StateSpace, _kernel_samples,
                      default_step, kernel_at, simulate, slow_time_constant,
                      to_state_space)
from .xfer import TransferFunction, decompose_biproper, relative_degree

EP_TOL = 1e-7
MIN_SAMPLES = 10_000
MAX_SAMPLES = 200_000
MAX_WITNESS_STEPS = 200_000


class Status(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NUMERIC_POSITIVE = "numeric_positive"


class Certificate(str, enum.Enum):
    FIRST_ORDER = "FirstOrderClosedForm"
    SECOND_ORDER = "SecondOrderClosedForm"
    COEFFICIENT_SIGN = "CoefficientSign"
    GAIN_PLUS_TAIL = "GainPlusPositiveTail"


@dataclass(frozen=True)
class Witness:
    """Nonnegative input whose zero-state output goes negative at ``probe``.

    ``impulse_time``/``impulse_value`` locate the negativity of the impulse
    response that motivated the input (``channel`` is "dirac" when it is the
    direct gain d < 0 rather than f0).
    """

    impulse_time: float
    impulse_value: float
    input: InputSpec
    step: float
    probe: float
    output: float
    channel: str = "tail"

    def replay(self, F: TransferFunction) -> float:
        ss = to_state_space(F)
        k = int(round(self.probe / self.step))
        y = simulate(ss, self.input.to_signal(self.step, k + 1))
        return float(y.values[k])


@dataclass(frozen=True)
class PositivityVerdict:
    status: Status
    certificate: Optional[Certificate] = None
    witness: Optional[Witness] = None
    horizon: Optional[float] = None
    d: float = 0.0
    # certified lower bound on inf f0 (exact for the closed forms, sampled otherwise)
    f0_min: Optional[float] = None
    detail: str = ""

    @property
    def is_ep(self) -> bool:
        return self.status is not Status.NEGATIVE


@dataclass(frozen=True)
class ImpulseMin:
    min_value: float
    argmin: float


def coefficient_sign_sufficient(F: TransferFunction) -> bool:
    """Nonnegative numerator (not all zero) over s^n - (nonnegative terms) is EP."""
    num, den = F.num.coeffs, F.den.coeffs
    if F.num.is_zero or np.any(num < 0) or not np.any(num > 0):
        return False
    return bool(np.all(den[1:] <= 0.0))


def impulse_min_on_horizon(F: TransferFunction, T: float, n: int) -> ImpulseMin:
    """Minimum of sampled f0 on [0, T], golden-refined to a bracket of 1e-6*T."""
    ss = to_state_space(F)
    if ss.order == 0:
        return ImpulseMin(0.0, 0.0)
    n = max(int(n), 2)
    h = T / (n - 1)
    vals = _kernel_samples(ss, h, n)
    vals = np.where(np.isnan(vals), np.inf, vals)
    k = int(np.argmin(vals))
    a, b = max((k - 1) * h, 0.0), min((k + 1) * h, T)
    t, v = _golden(lambda t: kernel_at(ss, t), a, b, 1e-6 * T)
    for tk in (a, b, k * h):
        vk = kernel_at(ss, tk)
        if vk < v:
            t, v = tk, vk
    return ImpulseMin(float(v), float(t))


def ep_horizon(ss: StateSpace) -> float:
    return max(50.0 * slow_time_constant(ss), 10.0)


def _n_samples(ss: StateSpace, T: float) -> int:
    lam = ss.eigenvalues()
    fastest = float(np.max(np.abs(lam))) if lam.size else 0.0
    return int(min(max(MIN_SAMPLES, np.ceil(20.0 * T * fastest)), MAX_SAMPLES))


def _tail_bound(ss: StateSpace, T: float) -> Optional[float]:
    """Upper bound on |f0(t)| for t >= T when A is stable and diagonalizable."""
    lam, V = np.linalg.eig(ss.A)
    sigma = -float(np.max(lam.real))
    if sigma <= 0:
        return None
    kappa = float(np.linalg.cond(V))
    if not np.isfinite(kappa):
        return None
    return float(np.linalg.norm(ss.C) * np.linalg.norm(ss.B) * kappa * np.exp(-sigma * T))


def _witness(F: TransferFunction, ss: StateSpace, t_star: float, ep_tol: float) -> Witness:
    """Unit-area pulse laid over the negative lobe of f0 around ``t_star``.

    With u = 1/w on [0, w) and the probe at s + w, where u is already 0,
    y = (1/w) * integral of f0 over [s, s + w], which is negative when the
    window sits inside the lobe.
    """
    T_slow = slow_time_constant(ss)
    h = default_step(ss)
    end = t_star + T_slow
    if end / h > MAX_WITNESS_STEPS:
        h = end / MAX_WITNESS_STEPS
    n = int(np.ceil(end / h)) + 2
    f0 = _kernel_samples(ss, h, n)
    m = int(round(t_star / h))
    if f0[m] >= -ep_tol:
        m = int(np.argmin(f0))
    lo = m
    while lo > 0 and f0[lo - 1] < 0:
        lo -= 1
    hi = m
    while hi < n - 1 and f0[hi + 1] < 0:
        hi += 1
    nw = max(1, min(hi - lo, int(round(T_slow / h))))
    while True:
        start = min(max(m - nw // 2, lo), max(hi - nw, lo))
        width = nw * h
        u = InputSpec("pulse", (0.0, width, 1.0 / width))
        probe = (start + nw) * h
        k = start + nw
        y = simulate(ss, u.to_signal(h, k + 1)).values[k]
        if y < -ep_tol or nw == 1:
            break
        nw = max(1, nw // 2)
    return Witness(float(m * h), float(f0[m]), u, h, float(probe), float(y))


def _dirac_witness(ss: StateSpace, d: float) -> Witness:
    h = default_step(ss)
    u = InputSpec("step")
    y = simulate(ss, u.to_signal(h, 1)).values[0]
    return Witness(0.0, float(d), u, h, 0.0, float(y), channel="dirac")


def check_external_positivity(F: TransferFunction, ep_tol: float = EP_TOL,
                              horizon: Optional[float] = None) -> PositivityVerdict:
    if relative_degree(F) < 0:
        raise ImproperInput("external positivity needs a proper (realizable) transfer function")
    dec = decompose_biproper(F)
    d, f0 = dec.d, dec.f0
    ss = to_state_space(F)

    if d < -ep_tol:
        return PositivityVerdict(Status.NEGATIVE, witness=_dirac_witness(ss, d), d=d,
                                 detail=f"direct gain d = {d:.6g} < 0")

    n = f0.den.degree
    if f0.num.is_zero or n == 0:
        return PositivityVerdict(Status.POSITIVE, Certificate.GAIN_PLUS_TAIL, d=d, f0_min=0.0,
                                 detail=f"pure gain {d:.6g}")

    fss = to_state_space(f0)
    if n == 1:
        K, a = f0.num.coeffs[-1], f0.den.coeffs[1]
        if K >= -ep_tol:
            cert = Certificate.GAIN_PLUS_TAIL if d > ep_tol else Certificate.FIRST_ORDER
            return PositivityVerdict(Status.POSITIVE, cert, d=d, f0_min=min(K, 0.0) if a > 0 else K,
                                     detail=f"f0(t) = {K:.6g} exp({-a:.6g} t)")
        return PositivityVerdict(Status.NEGATIVE, witness=_witness(F, ss, 0.0, ep_tol), d=d,
                                 detail=f"f0(t) = {K:.6g} exp({-a:.6g} t) < 0")

    if n == 2:
        b = np.zeros(2)
        b[2 - f0.num.coeffs.size:] = f0.num.coeffs
        b1, b0 = b
        a1, a0 = f0.den.coeffs[1:]
        disc = a1 * a1 - 4.0 * a0
        if disc < 0:
            # R e^{sigma t} cos(w t - phi): always changes sign; probe mid-lobe
            sigma, w = -a1 / 2.0, np.sqrt(-disc) / 2.0
            c = (b0 + b1 * sigma) / w
            phi = np.arctan2(c, b1)
            t_star = (phi + np.pi) / w
            return PositivityVerdict(Status.NEGATIVE, witness=_witness(F, ss, t_star, ep_tol), d=d,
                                     detail=f"damped oscillation at {w:.6g} rad/s changes sign")
        p1 = (-a1 + np.sqrt(disc)) / 2.0
        p2 = (-a1 - np.sqrt(disc)) / 2.0
        # f0 = e^{p1 t}(alpha + beta e^{(p2-p1) t}) moves monotonically from
        # f0(0) = b1 to the dominant weight, whose sign is that of b1*p1 + b0
        dominant = b1 * p1 + b0
        if b1 >= -ep_tol and dominant >= -ep_tol:
            return PositivityVerdict(Status.POSITIVE, Certificate.SECOND_ORDER, d=d,
                                     f0_min=min(b1, 0.0),
                                     detail=f"real poles {p1:.6g}, {p2:.6g}; f0(0) = {b1:.6g}")
        if b1 < -ep_tol:
            t_star = 0.0
        elif abs(p1 - p2) > 1e-9:
            alpha, beta = dominant / (p1 - p2), (b1 * p2 + b0) / (p2 - p1)
            t_star = np.log(-beta / alpha) / (p1 - p2) + 1.0 / (p1 - p2)
        else:
            t_star = -b1 / dominant + 1.0
        return PositivityVerdict(Status.NEGATIVE, witness=_witness(F, ss, float(t_star), ep_tol), d=d,
                                 detail="second-order real-pole response changes sign")

    if coefficient_sign_sufficient(F):
        return PositivityVerdict(Status.POSITIVE, Certificate.COEFFICIENT_SIGN, d=d, f0_min=0.0,
                                 detail="nonnegative numerator over s^n minus nonnegative terms")

    T = horizon if horizon is not None else ep_horizon(fss)
    im = impulse_min_on_horizon(f0, T, _n_samples(fss, T))
    if im.min_value < -ep_tol:
        return PositivityVerdict(Status.NEGATIVE, witness=_witness(F, ss, im.argmin, ep_tol), d=d,
                                 horizon=T, f0_min=im.min_value,
                                 detail=f"f0({im.argmin:.6g}) = {im.min_value:.6g}")
    detail = f"sampled f0 >= {im.min_value:.3g} on [0, {T:.6g}]"
    bound = _tail_bound(fss, T)
    if bound is not None:
        detail += f"; tail bound {bound:.3g} beyond horizon"
    else:
        detail += "; not asymptotically stable, nonnegativity beyond horizon not established"
    return PositivityVerdict(Status.NUMERIC_POSITIVE, horizon=T, d=d, f0_min=im.min_value,
                             detail=detail)


def construct_negativity_witness(F: TransferFunction, ep_tol: float = EP_TOL) -> Witness:
    verdict = check_external_positivity(F, ep_tol)
    if verdict.status is not Status.NEGATIVE:
        raise NoWitnessExists(f"system is {verdict.status.value}; no negativity witness")
    return verdict.witness
