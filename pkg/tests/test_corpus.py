import json
from pathlib import Path

import numpy as np

from positivity.corpus import FAMILIES, classify, quadrant, random_system
from positivity import TransferFunction

FIXTURE = Path(__file__).parent / "fixtures" / "quadrant.json"


def test_fixture_regenerates_exactly():
    stored = json.loads(FIXTURE.read_text())
    fresh = quadrant(stored["count"], stored["seed"])
    assert json.loads(json.dumps(fresh)) == stored


def test_worker_count_does_not_change_output():
    assert quadrant(30, 5, workers=1) == quadrant(30, 5, workers=8)


def test_every_quadrant_is_populated():
    table = json.loads(FIXTURE.read_text())["table"]
    assert table["PR"]["negative"] > 0      # PR but not EP
    assert table["notPR"]["positive"] > 0   # EP but not PR
    assert table["PR"]["positive"] > 0
    assert table["notPR"]["negative"] > 0


def test_families_generate():
    rng = np.random.default_rng(0)
    for fam in FAMILIES:
        F = random_system(rng, fam)
        assert F.den.degree >= 0


def test_classify_record():
    rec = classify(TransferFunction([2.0, 1.0], [1.0, 1.0]))
    assert rec["quadrant"] == "PR/notEP" and rec["d"] == 2.0
