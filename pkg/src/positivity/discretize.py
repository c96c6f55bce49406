"""Zero-order-hold discretization and what it does to EP and PR."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput
from .extpos import EP_TOL, PositivityVerdict, Status, check_external_positivity
from .posreal import PrReport, is_positive_real, is_positive_real_discrete
from .realize import StateSpace, to_state_space, zoh_matrices
from .xfer import TransferFunction, relative_degree


@dataclass(frozen=True, eq=False)
class DiscreteStateSpace:
    Ad: np.ndarray
    Bd: np.ndarray
    Cd: np.ndarray
    Dd: float
    h: float

    @property
    def order(self) -> int:
        return self.Ad.shape[0]


def zoh_discretize(ss: StateSpace, h: float) -> DiscreteStateSpace:
    if not h > 0:
        raise DegenerateInput("sampling period must be positive")
    Ad, Bd = zoh_matrices(ss.A, ss.B, h)
    return DiscreteStateSpace(Ad, Bd, ss.C.copy(), ss.D, float(h))


def markov_parameters(dss: DiscreteStateSpace, n: int) -> np.ndarray:
    """g_0 = Dd, g_k = Cd Ad^(k-1) Bd for k = 1..n."""
    if n < 1:
        raise DegenerateInput("need n >= 1")
    g = np.zeros(n + 1)
    g[0] = dss.Dd
    if dss.order == 0:
        return g
    x = dss.Bd[:, 0].copy()
    c = dss.Cd[0]
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n + 1):
            g[k] = c @ x
            x = dss.Ad @ x
    return g


def leverrier(A: np.ndarray):
    """Characteristic polynomial and adjugate coefficients of (zI - A).

    Returns ``(charpoly, mats)`` with adj(zI - A) = sum_k mats[k] z^(n-1-k).
    """
    n = A.shape[0]
    coeffs = [1.0]
    mats = []
    M = np.zeros_like(A)
    for k in range(1, n + 1):
        M = A @ M + coeffs[-1] * np.eye(n)
        mats.append(M)
        coeffs.append(-np.trace(A @ M) / k)
    return np.array(coeffs), mats


def discrete_tf(dss: DiscreteStateSpace) -> TransferFunction:
    """G(z) = Cd (zI - Ad)^{-1} Bd + Dd as a rational function of z."""
    if dss.order == 0:
        return TransferFunction([dss.Dd], [1.0])
    charpoly, mats = leverrier(dss.Ad)
    num = np.array([(dss.Cd @ M @ dss.Bd).item() for M in mats])
    num = np.concatenate([[0.0], num]) + dss.Dd * charpoly
    return TransferFunction(num, charpoly)


@dataclass(frozen=True)
class EpPreservation:
    h: float
    n: int
    min_value: float
    argmin: int
    preserved: bool
    continuous: PositivityVerdict
    flagged: bool


def check_ep_preservation(F: TransferFunction, h: float, n: int,
                          ep_tol: float = EP_TOL) -> EpPreservation:
    """Min of g_0..g_n after ZOH; ``flagged`` when F itself is not EP."""
    verdict = check_external_positivity(F, ep_tol)
    g = markov_parameters(zoh_discretize(to_state_space(F), h), n)
    k = int(np.argmin(g))
    return EpPreservation(h, n, float(g[k]), k, bool(g[k] >= -ep_tol), verdict,
                          verdict.status is Status.NEGATIVE)


@dataclass(frozen=True)
class PrDiscretization:
    h: float
    continuous_pr: bool
    continuous_relative_degree: int
    discrete: TransferFunction
    discrete_relative_degree: int
    report: PrReport

    @property
    def preserved(self) -> bool:
        return self.continuous_pr and self.report.verdict


def check_pr_discretization(F: TransferFunction, h: float) -> PrDiscretization:
    G = discrete_tf(zoh_discretize(to_state_space(F), h))
    return PrDiscretization(h, is_positive_real(F).verdict, relative_degree(F), G,
                            relative_degree(G), is_positive_real_discrete(G))
