import json
import math

import jsonschema
import numpy as np
import pytest

from positivity import AnalysisReport, InputSpec, TransferFunction, analyze, parse_tf_text
from positivity.corpus import random_system
from positivity.report import REPORT_SCHEMA


def test_pr_biproper_report():
    rep = analyze(parse_tf_text("(2s+1)/(s+1)"))
    assert rep.pr["verdict"] and rep.spr
    assert rep.ep["status"] == "negative"
    w = rep.ep["witness"]
    assert w["input"] == "pulse:0.0,1.0,1.0" and w["time"] == pytest.approx(1.0)
    assert abs(w["value"] + (1 - math.exp(-1))) < 1e-4
    assert rep.inverse["pr"] is True and rep.inverse["ep"] == "positive"
    assert rep.decomposition == {"d": 2.0, "f0": {"num": [-1.0], "den": [1.0, 1.0]}}


def test_unstable_first_order_report():
    rep = analyze(parse_tf_text("1/(s-1)"))
    assert rep.pr["verdict"] is False and rep.ep["status"] == "positive"
    assert rep.inverse["proper"] is False and rep.inverse["ep"] is None
    assert "inverse.ep" in rep.errors


def test_stable_first_order_report():
    rep = analyze(parse_tf_text("1/(s+1)"))
    assert rep.pr["verdict"] is True and rep.ep["status"] == "positive"
    assert rep.ep["certificate"] == "FirstOrderClosedForm"


def test_improper_system_collects_errors():
    rep = analyze(parse_tf_text("s^2+1"))
    assert rep.ep is None and rep.decomposition is None
    assert set(rep.errors) >= {"ep", "decomposition"}
    jsonschema.validate(rep.to_dict(), REPORT_SCHEMA)


def test_energy_field():
    rep = analyze(parse_tf_text("(2s+1)/(s+1)"), energy_input=InputSpec("pulse", (0.0, 1.0, 1.0)))
    assert rep.energy["min_running_integral"] >= -1e-6
    assert rep.energy["input"] == "pulse:0.0,1.0,1.0"


def test_schema_and_round_trip_over_random_systems():
    rng = np.random.default_rng(0)
    for _ in range(60):
        rep = analyze(random_system(rng), energy_input=InputSpec("step"), energy_until=2.0)
        d = json.loads(rep.to_json())
        jsonschema.validate(d, REPORT_SCHEMA)
        back = AnalysisReport.from_json(rep.to_json())
        assert back == rep
        assert back.to_json() == rep.to_json()


def test_cancellations_serialized():
    rep = analyze(parse_tf_text("(s+1)/(s^2+3s+2)"))
    assert len(rep.system["cancellations"]) == 1
    re, im = rep.system["cancellations"][0]
    assert re == pytest.approx(-1.0) and im == 0.0
    jsonschema.validate(rep.to_dict(), REPORT_SCHEMA)


def test_deterministic():
    F = TransferFunction([1.0, 2.0, 0.5], [1.0, 1.0, 3.0, 0.2])
    assert analyze(F).to_json() == analyze(F).to_json()
