"""Seeded random systems and their PR x EP classification."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Optional

import numpy as np

from .extpos import EP_TOL, Status, check_external_positivity
from .parse import format_tf
from .posreal import is_positive_real
from .xfer import TransferFunction, relative_degree

FAMILIES = ("lead_lag", "first_order", "pr_sum", "second_order", "coefficient_sign", "third_order")


def lead_lag_family(rng: np.random.Generator) -> TransferFunction:
    """(d s + b)/(s + a) with a, b >= 0 and d > 0: always positive real."""
    d, b, a = rng.uniform(0.2, 3.0), rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0)
    return TransferFunction([d, b], [1.0, a])


def pr_atom(rng: np.random.Generator) -> TransferFunction:
    kind = rng.integers(5)
    k = rng.uniform(0.2, 3.0)
    if kind == 0:
        return TransferFunction([k], [1.0])
    if kind == 1:
        return TransferFunction([k], [1.0, 0.0])
    if kind == 2:
        return TransferFunction([k], [1.0, rng.uniform(0.1, 3.0)])
    if kind == 3:
        return TransferFunction([k, 0.0], [1.0, 0.0, rng.uniform(0.2, 4.0) ** 2])
    return lead_lag_family(rng)


def pr_sum(rng: np.random.Generator) -> TransferFunction:
    F = pr_atom(rng)
    for _ in range(int(rng.integers(0, 3))):
        F = F + pr_atom(rng)
    return F


def random_pr_system(rng: np.random.Generator) -> TransferFunction:
    return lead_lag_family(rng) if rng.random() < 0.5 else pr_sum(rng)


def _second_order(rng):
    if rng.random() < 0.5:
        p1, p2 = rng.uniform(-3.0, 1.0, size=2)
        den = [1.0, -(p1 + p2), p1 * p2]
    else:
        sig, w = rng.uniform(-2.0, 0.5), rng.uniform(0.3, 3.0)
        den = [1.0, -2.0 * sig, sig * sig + w * w]
    return TransferFunction(rng.uniform(-1.0, 2.0, size=int(rng.integers(1, 3))), den)


def _coefficient_sign(rng):
    n = int(rng.integers(1, 4))
    den = np.concatenate([[1.0], -rng.uniform(0.0, 2.0, size=n)])
    num = rng.uniform(0.0, 2.0, size=int(rng.integers(1, n + 2)))
    num[0] = max(num[0], 0.1)
    return TransferFunction(num, den)


def _third_order(rng):
    poles = -rng.uniform(0.3, 3.0, size=3)
    return TransferFunction(rng.uniform(-1.0, 2.0, size=int(rng.integers(1, 4))), np.poly(poles))


def random_system(rng: np.random.Generator, family: Optional[str] = None) -> TransferFunction:
    family = family or FAMILIES[int(rng.integers(len(FAMILIES)))]
    if family == "lead_lag":
        return lead_lag_family(rng)
    if family == "first_order":
        return TransferFunction([rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 3.0)],
                                [1.0, rng.uniform(-2.0, 2.0)])
    if family == "pr_sum":
        return pr_sum(rng)
    if family == "second_order":
        return _second_order(rng)
    if family == "coefficient_sign":
        return _coefficient_sign(rng)
    return _third_order(rng)


def classify(F: TransferFunction, ep_tol: float = EP_TOL) -> Dict[str, Any]:
    pr = is_positive_real(F)
    rec: Dict[str, Any] = {"tf": format_tf(F), "num": F.num.coeffs.tolist(),
                           "den": F.den.coeffs.tolist(), "pr": pr.verdict, "spr": pr.strict}
    if relative_degree(F) < 0:
        rec.update(ep=None, certificate=None, d=None, f0_min=None, quadrant=None)
        return rec
    v = check_external_positivity(F, ep_tol)
    rec.update(ep=v.status.value, certificate=v.certificate.value if v.certificate else None,
               d=v.d, f0_min=v.f0_min,
               quadrant=("PR" if pr.verdict else "notPR") + "/" + ("EP" if v.is_ep else "notEP"))
    return rec


def quadrant(count: int, seed: int, workers: int = 4, ep_tol: float = EP_TOL) -> Dict[str, Any]:
    """Classify ``count`` seeded random systems; output order follows the index."""
    rng = np.random.default_rng(seed)
    fams = [FAMILIES[i % len(FAMILIES)] for i in range(count)]
    systems = [random_system(rng, f) for f in fams]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        records = list(pool.map(lambda F: classify(F, ep_tol), systems))
    table: Dict[str, Dict[str, int]] = {}
    for i, (fam, rec) in enumerate(zip(fams, records)):
        rec["index"], rec["family"] = i, fam
        row = table.setdefault("PR" if rec["pr"] else "notPR", {s.value: 0 for s in Status})
        row[rec["ep"]] += 1
    return {"seed": seed, "count": count, "table": table, "systems": records}
