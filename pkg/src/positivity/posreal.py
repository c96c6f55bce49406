"""Positive realness certificates for continuous- and discrete-time functions.

The continuous test uses the boundary characterization: relative degree in
{-1, 0, 1}, no open right half-plane poles, simple imaginary-axis poles with
real positive residues (including the pole at infinity of an improper F), and
Re F(jw) >= 0, the last decided exactly on the polynomial E(w**2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .poly import POLY_SIGN_TOL, halfline_minimum, poly_eval, poly_roots
from .xfer import (AXIS_TOL, TransferFunction, poles_with_residues,
                   realpart_even_poly, relative_degree)

RESIDUE_IMAG_RTOL = 1e-8
RESIDUE_MIN = 1e-12
DISCRETE_SAMPLES = 10_000


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class PrReport:
    verdict: bool
    strict: bool
    checks: List[Check]
    witness: Optional[complex] = None
    strict_checks: List[Check] = field(default_factory=list)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


def _residue_ok(res: complex) -> bool:
    return abs(res.imag) <= RESIDUE_IMAG_RTOL * abs(res) and res.real > RESIDUE_MIN


def _pr_checks(F: TransferFunction, tol: float):
    r = relative_degree(F)
    checks, witness = [], None

    ok = abs(r) <= 1
    checks.append(Check("relative-degree", ok, f"relative degree {r}"))

    poles = poles_with_residues(F)
    rhp = [p for p in poles if p.axis_class == "RHP"]
    checks.append(Check("pole-location", not rhp,
                        "no open right half-plane poles" if not rhp
                        else f"right half-plane pole at {rhp[0].pole:.6g}"))
    if rhp:
        witness = rhp[0].pole

    axis = [p for p in poles if p.axis_class == "axis"]
    bad = [p for p in axis if p.multiplicity > 1 or not _residue_ok(p.residue)]
    detail = f"{len(axis)} imaginary-axis pole(s)"
    if bad:
        p = bad[0]
        detail = (f"axis pole {p.pole:.6g} has multiplicity {p.multiplicity}" if p.multiplicity > 1
                  else f"axis pole {p.pole:.6g} has residue {p.residue:.6g}, not real positive")
        witness = witness if witness is not None else p.pole
    inf_ok = True
    if r == -1:
        # pole at infinity: F(s)/s -> lead ratio must be positive
        k = F.num.lead / F.den.lead
        inf_ok = k > RESIDUE_MIN
        detail += f"; residue at infinity {k:.6g}"
    checks.append(Check("axis-residues", not bad and inf_ok, detail))

    E = realpart_even_poly(F)
    res = halfline_minimum(E, tol)
    if res.holds:
        detail = "Re F(jw) >= 0 for all w" if not E.is_zero else "Re F(jw) = 0 identically (lossless)"
    else:
        w = float(np.sqrt(res.witness))
        detail = f"Re F(jw) < 0 at w = {w:.6g} (E = {poly_eval(E, res.witness):.6g})"
        witness = witness if witness is not None else complex(0.0, w)
    checks.append(Check("frequency-nonnegativity", res.holds, detail))
    return checks, witness, poles, E, res


def _strict_checks(F, poles, E, res, tol):
    on_axis = [p for p in poles if p.axis_class != "LHP"]
    out = [Check("strict-pole-location", not on_axis,
                 "all poles in the open left half-plane" if not on_axis
                 else f"pole {on_axis[0].pole:.6g} not in the open left half-plane")]
    positive = res.minimum > tol
    detail = f"min over w of E(w^2) = {res.minimum:.6g}"
    if relative_degree(F) > 0:
        detail += "; Re F(jw) -> 0 as w -> inf (not required at finite s)"
    out.append(Check("strict-frequency-positivity", positive, detail))
    return out


def is_positive_real(F: TransferFunction, tol: float = POLY_SIGN_TOL) -> PrReport:
    checks, witness, poles, E, res = _pr_checks(F, tol)
    verdict = all(c.passed for c in checks)
    strict_checks = _strict_checks(F, poles, E, res, tol)
    strict = verdict and all(c.passed for c in strict_checks)
    return PrReport(verdict, strict, checks, witness, strict_checks)


def is_strictly_positive_real(F: TransferFunction, tol: float = POLY_SIGN_TOL) -> PrReport:
    """Same report as :func:`is_positive_real`; ``strict`` carries the answer."""
    return is_positive_real(F, tol)


def _golden(f, a: float, b: float, tol: float):
    g = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def unit_circle_min(G: TransferFunction, n: int = DISCRETE_SAMPLES, exclude=()):
    """Minimum of Re G(e^{j theta}) on [0, pi] by sampling plus golden refinement."""
    theta = np.linspace(0.0, np.pi, n)
    z = np.exp(1j * theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.real(poly_eval(G.num, z) / poly_eval(G.den, z))
    for p in exclude:
        vals[np.abs(z - p) < 1e-6] = np.inf
    vals[~np.isfinite(vals)] = np.inf

    def f(t):
        w = np.exp(1j * t)
        if any(abs(w - p) < 1e-6 for p in exclude):
            return np.inf
        return float(np.real(poly_eval(G.num, w) / poly_eval(G.den, w)))

    best_t, best_v = float(theta[np.argmin(vals)]), float(np.min(vals))
    # refine the few lowest local minima
    interior = np.nonzero((vals[1:-1] <= vals[:-2]) & (vals[1:-1] <= vals[2:]))[0] + 1
    cand = sorted(interior.tolist() + [0, n - 1], key=lambda k: vals[k])[:5]
    step = theta[1] - theta[0]
    for k in cand:
        a, b = max(theta[k] - step, 0.0), min(theta[k] + step, np.pi)
        t, v = _golden(f, a, b, 1e-12)
        if v < best_v:
            best_t, best_v = t, v
    return best_v, best_t


def is_positive_real_discrete(G: TransferFunction, tol: float = POLY_SIGN_TOL,
                              unit_tol: float = AXIS_TOL) -> PrReport:
    checks, witness = [], None
    r = relative_degree(G)
    checks.append(Check("relative-degree", r == 0, f"relative degree {r} (discrete PR needs 0)"))

    poles, unit = [], []
    if G.den.degree >= 1:
        rs = poly_roots(G.den)
        dden = G.den.deriv()
        for p, m in zip(rs.roots, rs.multiplicities):
            poles.append((p, m))
    outside = [p for p, _ in poles if abs(p) > 1.0 + unit_tol]
    checks.append(Check("pole-location", not outside,
                        "no poles outside the closed unit disk" if not outside
                        else f"pole {outside[0]:.6g} outside the unit disk"))
    if outside:
        witness = outside[0]

    bad = []
    for p, m in poles:
        if abs(abs(p) - 1.0) < unit_tol:
            unit.append(p)
            if m > 1:
                bad.append(f"unit-circle pole {p:.6g} has multiplicity {m}")
                continue
            res = complex(poly_eval(G.num, p) / poly_eval(dden, p)) * np.conj(p)
            if not _residue_ok(res):
                bad.append(f"unit-circle pole {p:.6g}: residue*conj(p) = {res:.6g}")
    checks.append(Check("axis-residues", not bad,
                        bad[0] if bad else f"{len(unit)} unit-circle pole(s)"))

    vmin, tmin = unit_circle_min(G, exclude=unit)
    ok = vmin >= -tol
    checks.append(Check("frequency-nonnegativity", ok,
                        f"min Re G(e^(j theta)) = {vmin:.6g} at theta = {tmin:.6g}"))
    if not ok and witness is None:
        witness = complex(np.exp(1j * tmin))
    verdict = all(c.passed for c in checks)
    strict = verdict and not unit and vmin > tol
    return PrReport(verdict, strict, checks, witness)
