"""Aggregate analysis of one transfer function and its JSON report."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from . import __version__
from .errors import PositivityError
from .extpos import EP_TOL, PositivityVerdict, check_external_positivity
from .posreal import is_positive_real
from .realize import InputSpec, default_step, io_energy, simulate, to_state_space
from .xfer import TransferFunction, decompose_biproper, relative_degree, tf_inverse

_NUM_LIST = {"type": "array", "items": {"type": "number"}}
_TF = {"type": "object", "required": ["num", "den"],
       "properties": {"num": _NUM_LIST, "den": _NUM_LIST}}

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["system", "pr", "ep", "decomposition", "inverse", "energy", "meta"],
    "properties": {
        "system": {
            "type": "object",
            "required": ["num", "den", "cancellations"],
            "properties": {
                "num": _NUM_LIST,
                "den": _NUM_LIST,
                "cancellations": {"type": "array", "items": {
                    "type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}},
            },
        },
        "pr": {
            "type": "object",
            "required": ["verdict", "strict", "checks"],
            "properties": {
                "verdict": {"type": "boolean"},
                "strict": {"type": "boolean"},
                "checks": {"type": "array", "items": {
                    "type": "object", "required": ["name", "passed", "detail"],
                    "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"},
                                   "detail": {"type": "string"}}}},
            },
        },
        "ep": {
            "type": ["object", "null"],
            "required": ["status", "certificate", "witness", "horizon"],
            "properties": {
                "status": {"enum": ["positive", "negative", "numeric_positive"]},
                "certificate": {"type": ["string", "null"]},
                "witness": {
                    "type": ["object", "null"],
                    "required": ["time", "value", "input"],
                    "properties": {"time": {"type": "number"}, "value": {"type": "number"},
                                   "input": {"type": "string"}},
                },
                "horizon": {"type": ["number", "null"]},
            },
        },
        "decomposition": {
            "type": ["object", "null"],
            "required": ["d", "f0"],
            "properties": {"d": {"type": "number"}, "f0": _TF},
        },
        "inverse": {
            "type": ["object", "null"],
            "required": ["num", "den", "proper", "pr", "ep"],
            "properties": {
                "num": _NUM_LIST, "den": _NUM_LIST, "proper": {"type": "boolean"},
                "pr": {"type": ["boolean", "null"]},
                "ep": {"type": ["string", "null"]},
            },
        },
        "energy": {
            "type": ["object", "null"],
            "required": ["min_running_integral"],
            "properties": {"min_running_integral": {"type": "number"}},
        },
        "meta": {
            "type": "object",
            "required": ["version", "tol"],
            "properties": {"version": {"type": "string"}, "tol": {"type": "number"}},
        },
    },
}


def ep_projection(v: PositivityVerdict) -> Dict[str, Any]:
    w = None
    if v.witness is not None:
        w = {"time": v.witness.probe, "value": v.witness.output,
             "input": v.witness.input.describe(),
             "impulse_time": v.witness.impulse_time,
             "impulse_value": v.witness.impulse_value}
    return {"status": v.status.value,
            "certificate": v.certificate.value if v.certificate else None,
            "witness": w, "horizon": v.horizon}


def tf_dict(F: TransferFunction) -> Dict[str, list]:
    return {"num": F.num.coeffs.tolist(), "den": F.den.coeffs.tolist()}


@dataclass
class AnalysisReport:
    system: Dict[str, Any]
    pr: Dict[str, Any]
    ep: Optional[Dict[str, Any]]
    decomposition: Optional[Dict[str, Any]]
    inverse: Optional[Dict[str, Any]]
    energy: Optional[Dict[str, Any]]
    meta: Dict[str, Any]
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def spr(self) -> bool:
        return self.pr["strict"]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalysisReport":
        return cls(**{k: data.get(k) for k in
                      ("system", "pr", "ep", "decomposition", "inverse", "energy", "meta")},
                   errors=dict(data.get("errors") or {}))

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def analyze(F: TransferFunction, ep_tol: float = EP_TOL, horizon: Optional[float] = None,
            energy_input: Optional[InputSpec] = None, energy_until: float = 10.0,
            energy_dt: Optional[float] = None) -> AnalysisReport:
    """Run every check on F; component failures land in ``errors``."""
    errors: Dict[str, str] = {}
    system = {"num": F.num.coeffs.tolist(), "den": F.den.coeffs.tolist(),
              "cancellations": [[c.real, c.imag] for c in F.cancellations]}
    prr = is_positive_real(F)
    pr = {"verdict": prr.verdict, "strict": prr.strict,
          "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in prr.checks]}

    ep = None
    try:
        ep = ep_projection(check_external_positivity(F, ep_tol, horizon))
    except PositivityError as exc:
        errors["ep"] = str(exc)

    decomposition = None
    try:
        dec = decompose_biproper(F)
        decomposition = {"d": dec.d, "f0": tf_dict(dec.f0)}
    except PositivityError as exc:
        errors["decomposition"] = str(exc)

    inverse = None
    try:
        G = tf_inverse(F)
        proper = relative_degree(G) >= 0
        inverse = {**tf_dict(G), "proper": proper, "pr": is_positive_real(G).verdict, "ep": None}
        if proper:
            inverse["ep"] = check_external_positivity(G, ep_tol, horizon).status.value
        else:
            errors["inverse.ep"] = "inverse is improper and has no state-space realization"
    except PositivityError as exc:
        errors["inverse"] = str(exc)

    energy = None
    if energy_input is not None:
        try:
            ss = to_state_space(F)
            h = energy_dt or default_step(ss)
            u = energy_input.to_signal(h, int(round(energy_until / h)) + 1)
            J = io_energy(u, simulate(ss, u), ss.D)
            energy = {"min_running_integral": float(np.min(J.values)),
                      "input": energy_input.describe()}
        except PositivityError as exc:
            errors["energy"] = str(exc)

    meta = {"version": __version__, "tol": ep_tol}
    return AnalysisReport(system, pr, ep, decomposition, inverse, energy, meta, errors)
