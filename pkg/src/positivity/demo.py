"""Mechanical check that positive realness and external positivity are independent.

Every claim is recomputed from scratch; nothing here is seeded or sampled at
random, so two runs give byte-identical JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from . import __version__
from .discretize import check_ep_preservation, check_pr_discretization, markov_parameters, zoh_discretize
from .extpos import EP_TOL, Certificate, Status, check_external_positivity, impulse_min_on_horizon
from .posreal import is_positive_real
from .realize import InputSpec, io_energy, simulate, to_state_space
from .xfer import TransferFunction, decompose_biproper, poles_with_residues, tf_inverse

ENERGY_TOL = 1e-6


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str
    data: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)


@dataclass
class DemoReport:
    claims: List[Claim]
    ep_tol: float

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.claims if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok,
                "claims": [{"name": c.name, "passed": c.passed, "detail": c.detail, "data": c.data}
                           for c in self.claims],
                "meta": {"version": __version__, "tol": self.ep_tol}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=_plain)

    def to_text(self) -> str:
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.claims]
        lines.append("all claims hold" if self.ok else "FAILED: " + ", ".join(self.failed))
        return "\n".join(lines)


def first_order(K: float, a: float) -> TransferFunction:
    return TransferFunction([K], [1.0, a])


def biproper(d: float, b: float, a: float) -> TransferFunction:
    return TransferFunction([d, b], [1.0, a])


def _first_order(ep_tol):
    out = []
    for K, a in ((1.0, 1.0), (1.0, -1.0)):
        F = first_order(K, a)
        pr = is_positive_real(F).verdict
        ep = check_external_positivity(F, ep_tol)
        f1 = impulse_min_on_horizon(F, 1.0, 2).min_value
        expect_pr = a >= 0
        ok = (pr == expect_pr and ep.status is Status.POSITIVE
              and ep.certificate is Certificate.FIRST_ORDER)
        out.append(Claim("first_order_stable" if a > 0 else "first_order_unstable", ok,
                         f"PR={pr} (expected {expect_pr}), EP={ep.status.value} via {ep.certificate and ep.certificate.value}",
                         {"pr": pr, "ep": ep.status.value, "min_f_on_[0,1]": f1}))
    stable, unstable = out
    out.append(Claim("ep_does_not_imply_pr", unstable.passed and not unstable.data["pr"]
                     and unstable.data["ep"] == Status.POSITIVE.value,
                     "1/(s-1) is externally positive but not positive real", {}))
    return out


def _tail_not_pr(ep_tol):
    F = biproper(2.0, 1.0, 1.0)
    dec = decompose_biproper(F)
    rF, r0 = is_positive_real(F), is_positive_real(dec.f0)
    failing = r0.failed
    ok = rF.verdict and not r0.verdict and "frequency-nonnegativity" in failing
    return Claim("pr_with_non_pr_tail", ok,
                 f"F=(2s+1)/(s+1) PR={rF.verdict}; F0={dec.f0.num.coeffs.tolist()}/{dec.f0.den.coeffs.tolist()} "
                 f"PR={r0.verdict}, failing {failing}",
                 {"pr_F": rF.verdict, "pr_F0": r0.verdict, "F0_failing": failing})


def _gain_and_tail(ep_tol):
    rows, ok = [], True
    for name, F in (("F", biproper(2.0, 1.0, 1.0)), ("F_inverse", tf_inverse(biproper(2.0, 1.0, 1.0)))):
        dec = decompose_biproper(F)
        ep = check_external_positivity(F, ep_tol)
        fmin = impulse_min_on_horizon(dec.f0, 20.0, 2001).min_value
        predicted = dec.d >= 0 and fmin >= -ep_tol
        ok &= predicted == (ep.status is Status.POSITIVE)
        rows.append({"system": name, "d": dec.d, "f0_min": fmin, "ep": ep.status.value})
    return Claim("ep_iff_gain_and_tail", ok, "EP holds exactly when d >= 0 and f0 >= 0: "
                 + "; ".join(f"{r['system']}: d={r['d']:g}, min f0={r['f0_min']:.6g}, EP={r['ep']}" for r in rows),
                 {"rows": rows})


def _pr_not_ep(ep_tol):
    F = biproper(2.0, 1.0, 1.0)
    pr = is_positive_real(F)
    ep = check_external_positivity(F, ep_tol)
    w = ep.witness
    expected = -(1.0 - math.exp(-1.0))
    ok = pr.verdict and ep.status is Status.NEGATIVE and w is not None
    data = {"pr": pr.verdict, "ep": ep.status.value}
    if ok:
        replay = w.replay(F)
        data.update(input=w.input.describe(), probe=w.probe, output=w.output, replay=replay)
        ok = replay < -ep_tol and abs(w.probe - 1.0) < 1e-12 and abs(w.output - expected) < 1e-4
    return Claim("pr_does_not_imply_ep", ok,
                 f"(2s+1)/(s+1) PR={pr.verdict}, EP={ep.status.value}"
                 + (f"; u={w.input.describe()}, y({w.probe:g})={w.output:.6f} (closed form {expected:.6f})"
                    if w is not None else ""), data)


def _inverse(ep_tol):
    F = biproper(2.0, 1.0, 1.0)
    G = tf_inverse(F)
    prG = is_positive_real(G).verdict
    epG = check_external_positivity(G, ep_tol)
    decG = decompose_biproper(G)
    poles = poles_with_residues(decG.f0)
    d, b, a = 2.0, 1.0, 1.0
    # (1/d)(1 + (da - b)/(ds + b)): gain 1/d, residue (da - b)/d**2 at -b/d
    want_gain, want_res, want_pole = 1.0 / d, (d * a - b) / d ** 2, -b / d
    structure = (len(poles) == 1 and abs(decG.d - want_gain) < 1e-9
                 and abs(poles[0].residue - want_res) < 1e-9 and abs(poles[0].pole - want_pole) < 1e-9)
    F_ep = check_external_positivity(F, ep_tol).status
    ok = prG and epG.status is Status.POSITIVE and structure and F_ep is Status.NEGATIVE

    trivial = biproper(1.0, 1.0, 1.0)
    Ti = tf_inverse(trivial)
    triv_ok = (trivial.order == 0 and Ti.order == 0
               and check_external_positivity(trivial, ep_tol).status is Status.POSITIVE
               and check_external_positivity(Ti, ep_tol).status is Status.POSITIVE
               and is_positive_real(trivial).verdict and is_positive_real(Ti).verdict)
    return [
        Claim("inverse_pr_and_ep", ok,
              f"F^-1=(s+1)/(2s+1) PR={prG}, EP={epG.status.value}; d={decG.d:g}, "
              f"residue {poles[0].residue.real:g} at {poles[0].pole.real:g}; F itself EP={F_ep.value}",
              {"pr_inverse": prG, "ep_inverse": epG.status.value, "d": decG.d,
               "residue": poles[0].residue.real, "pole": poles[0].pole.real}),
        Claim("inverse_trivial_gain", triv_ok,
              f"d=b=a=1 reduces to gain {trivial.num.lead:g} (cancelled {len(trivial.cancellations)} pole/zero pair); "
              "EP and PR both ways", {"gain": trivial.num.lead}),
    ]


def _discretization(ep_tol):
    h = 0.1
    stable = check_ep_preservation(first_order(1.0, 1.0), h, 200, ep_tol)
    unstable = check_ep_preservation(first_order(1.0, -1.0), h, 50, ep_tol)
    g = markov_parameters(zoh_discretize(to_state_space(first_order(1.0, -1.0)), h), 50)
    g1 = markov_parameters(zoh_discretize(to_state_space(first_order(1.0, 1.0)), h), 1)[1]
    ep_ok = (stable.preserved and unstable.preserved and bool(np.all(g[1:] > 0))
             and abs(g1 - (1.0 - math.exp(-h))) < 1e-9)
    prd = check_pr_discretization(first_order(1.0, 1.0), h)
    pr_ok = prd.continuous_pr and not prd.report.verdict and "relative-degree" in prd.report.failed
    return [
        Claim("zoh_preserves_ep", ep_ok,
              f"ZOH h={h:g}: 1/(s+1) min g_k={stable.min_value:.6g} (k<=200), g_1={g1:.6f}; "
              f"1/(s-1) min g_k={unstable.min_value:.6g} (k<=50)",
              {"g1": g1, "min_stable": stable.min_value, "min_unstable_k_ge_1": float(np.min(g[1:]))}),
        Claim("zoh_loses_pr", pr_ok,
              f"1/(s+1) PR={prd.continuous_pr}; ZOH relative degree {prd.discrete_relative_degree}, "
              f"discrete PR={prd.report.verdict}, failing {prd.report.failed}",
              {"discrete_relative_degree": prd.discrete_relative_degree,
               "failing": prd.report.failed}),
    ]


def _energy(ep_tol):
    F = biproper(2.0, 1.0, 1.0)
    ss = to_state_space(F)
    h = 1e-3
    u = InputSpec("pulse", (0.0, 1.0, 1.0)).to_signal(h, 3001)
    y = simulate(ss, u)
    J = io_energy(u, y, ss.D)
    j1, y1, jmin = J.at(1.0), y.at(1.0), float(np.min(J.values))
    expected = 2.0 - math.exp(-1.0)
    ok = jmin >= -ENERGY_TOL and abs(j1 - expected) < 1e-3 and y1 < -ep_tol
    return Claim("energy_nonnegative", ok,
                 f"(2s+1)/(s+1) under u = 1 on [0, 1): y(1)={y1:.6f} < 0 while J(1)={j1:.6f} (closed form {expected:.6f}), "
                 f"min J={jmin:.3g}",
                 {"y1": y1, "J1": j1, "min_J": jmin})


def run_demo(ep_tol: float = EP_TOL) -> DemoReport:
    claims: List[Claim] = []
    claims += _first_order(ep_tol)
    claims.append(_tail_not_pr(ep_tol))
    claims.append(_gain_and_tail(ep_tol))
    claims.append(_pr_not_ep(ep_tol))
    claims += _inverse(ep_tol)
    claims += _discretization(ep_tol)
    claims.append(_energy(ep_tol))
    return DemoReport(claims, ep_tol)
