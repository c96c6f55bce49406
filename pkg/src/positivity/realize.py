"""State-space realization, exact piecewise-constant simulation and io energy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateInput, GridMismatch, ImproperInput
from .xfer import TransferFunction, relative_degree

# Higham (2005) Pade coefficients and 1-norm thresholds
_PADE = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
        2162160.0, 110880.0, 3960.0, 90.0, 1.0),
    13: (64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
         1187353796428800.0, 129060195264000.0, 10559470521600.0,
         670442572800.0, 33522128640.0, 1323241920.0, 40840800.0, 960960.0,
         16380.0, 182.0, 1.0),
}
_THETA = {3: 1.495585217958292e-2, 5: 2.539398330063230e-1,
          7: 9.504178996162932e-1, 9: 2.097847961257068, 13: 5.371920351148152}


def _pade_uv(M: np.ndarray, m: int):
    b = _PADE[m]
    n = M.shape[0]
    ident = np.eye(n)
    M2 = M @ M
    if m == 13:
        M4 = M2 @ M2
        M6 = M2 @ M4
        U = M @ (M6 @ (b[13] * M6 + b[11] * M4 + b[9] * M2)
                 + b[7] * M6 + b[5] * M4 + b[3] * M2 + b[1] * ident)
        V = M6 @ (b[12] * M6 + b[10] * M4 + b[8] * M2) + b[6] * M6 + b[4] * M4 + b[2] * M2 + b[0] * ident
        return U, V
    powers = [ident, M2]
    while len(powers) < (m + 1) // 2:
        powers.append(powers[-1] @ M2)
    U = sum(b[2 * k + 1] * powers[k] for k in range(len(powers)))
    V = sum(b[2 * k] * powers[k] for k in range(len(powers)))
    return M @ U, V


def matrix_exponential(A, t: float = 1.0) -> np.ndarray:
    """e^{A t} by scaling and squaring with a diagonal Pade approximant."""
    M = np.asarray(A, dtype=float) * float(t)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DegenerateInput("matrix exponential needs a square matrix")
    if not np.isfinite(t):
        raise DegenerateInput("time must be finite")
    n = M.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    norm = np.max(np.sum(np.abs(M), axis=0))
    squarings = 0
    for m in (3, 5, 7, 9):
        if norm <= _THETA[m]:
            break
    else:
        m = 13
        if norm > _THETA[13]:
            squarings = int(np.ceil(np.log2(norm / _THETA[13])))
            M = M / 2.0 ** squarings
    U, V = _pade_uv(M, m)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(squarings):
        R = R @ R
    return R


@dataclass(frozen=True, eq=False)
class StateSpace:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: float

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        if A.size == 0:
            A = np.zeros((0, 0))
        n = A.shape[0]
        if A.shape != (n, n):
            raise DegenerateInput("A must be square")
        B = np.asarray(self.B, dtype=float).reshape(n, 1)
        C = np.asarray(self.C, dtype=float).reshape(1, n)
        for name, arr in (("A", A), ("B", B), ("C", C)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "D", float(self.D))

    @property
    def order(self) -> int:
        return self.A.shape[0]

    def evaluate(self, s: complex) -> complex:
        """C (sI - A)^{-1} B + D."""
        if self.order == 0:
            return complex(self.D)
        x = np.linalg.solve(s * np.eye(self.order) - self.A, self.B)
        return complex((self.C @ x)[0, 0] + self.D)

    def eigenvalues(self) -> np.ndarray:
        if self.order == 0:
            return np.zeros(0, dtype=complex)
        return np.linalg.eigvals(self.A)


def to_state_space(F: TransferFunction) -> StateSpace:
    """Controllable canonical realization (companion row on top, B = e1)."""
    if relative_degree(F) < 0:
        raise ImproperInput("improper transfer functions have no state-space realization")
    den = F.den.coeffs
    n = den.size - 1
    num = np.zeros(n + 1)
    if not F.num.is_zero:
        num[n + 1 - F.num.coeffs.size:] = F.num.coeffs
    d = num[0]
    if n == 0:
        return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), d)
    A = np.zeros((n, n))
    A[0, :] = -den[1:]
    A[1:, :-1] = np.eye(n - 1)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    C = (num[1:] - d * den[1:]).reshape(1, n)
    return StateSpace(A, B, C, d)


def fast_time_constant(ss: StateSpace) -> float:
    lam = ss.eigenvalues()
    rate = max(np.max(np.abs(lam.real)), 0.1) if lam.size else 0.1
    return 1.0 / rate


def slow_time_constant(ss: StateSpace) -> float:
    lam = ss.eigenvalues()
    rate = max(np.min(np.abs(lam.real)), 0.1) if lam.size else 0.1
    return 1.0 / rate


def default_step(ss: StateSpace) -> float:
    return min(1e-3, fast_time_constant(ss) / 100.0)


@dataclass(frozen=True, eq=False)
class Signal:
    """Samples on the uniform grid 0, h, 2h, ...; value k holds on [kh, (k+1)h)."""

    h: float
    values: np.ndarray

    def __post_init__(self):
        if not (self.h > 0 and np.isfinite(self.h)):
            raise DegenerateInput("grid step must be positive")
        v = np.asarray(self.values, dtype=float).ravel().copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.values.size) * self.h

    def __len__(self):
        return self.values.size

    def at(self, t: float) -> float:
        return float(self.values[int(round(t / self.h))])


@dataclass(frozen=True)
class InputSpec:
    """Nonnegative test input: step, pulse(t0, t1, amp), ramp(slope) or samples."""

    kind: str
    params: Tuple[float, ...] = ()
    samples: Optional[Tuple[float, ...]] = None
    sample_step: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("step", "pulse", "ramp", "samples"):
            raise DegenerateInput(f"unknown input kind {self.kind!r}")
        if self.kind == "pulse":
            t0, t1, amp = self.params
            if amp < 0 or t0 < 0 or t1 < t0:
                raise DegenerateInput("pulse needs 0 <= t0 <= t1 and amp >= 0")
        if self.kind == "ramp" and self.params[0] < 0:
            raise DegenerateInput("ramp slope must be nonnegative")
        if self.kind == "samples" and min(self.samples, default=0.0) < 0:
            raise DegenerateInput("input samples must be nonnegative")

    def to_signal(self, h: float, n: int) -> Signal:
        t = np.arange(n) * h
        if self.kind == "step":
            v = np.ones(n)
        elif self.kind == "pulse":
            t0, t1, amp = self.params
            # pulse edges are snapped to the grid
            k0, k1 = int(round(t0 / h)), int(round(t1 / h))
            v = np.zeros(n)
            v[k0:k1] = amp
        elif self.kind == "ramp":
            v = self.params[0] * t
        else:
            src = np.asarray(self.samples, dtype=float)
            idx = np.minimum((t / self.sample_step + 1e-9).astype(int), src.size - 1)
            v = src[idx]
        return Signal(h, v)

    def describe(self) -> str:
        if self.kind == "step":
            return "step"
        if self.kind == "pulse":
            return "pulse:" + ",".join(repr(float(p)) for p in self.params)
        if self.kind == "ramp":
            return f"ramp:{float(self.params[0])!r}"
        return f"samples[{len(self.samples)}]@{self.sample_step!r}"


@dataclass(frozen=True)
class ImpulseResponse:
    dirac_weight: float
    samples: Signal


def zoh_matrices(A: np.ndarray, B: np.ndarray, h: float):
    """(e^{Ah}, int_0^h e^{At} dt B) from one exponential of the augmented matrix."""
    n = A.shape[0]
    if n == 0:
        return np.zeros((0, 0)), np.zeros((0, 1))
    M = np.zeros((n + 1, n + 1))
    M[:n, :n] = A
    M[:n, n:] = B
    E = matrix_exponential(M, h)
    return E[:n, :n], E[:n, n:]


def impulse_response(F: TransferFunction, horizon: float, n_samples: int) -> ImpulseResponse:
    if horizon <= 0 or n_samples < 2:
        raise DegenerateInput("need horizon > 0 and n_samples >= 2")
    ss = to_state_space(F)
    h = horizon / (n_samples - 1)
    return ImpulseResponse(ss.D, Signal(h, _kernel_samples(ss, h, n_samples)))


_BLOCK = 256


def _output_orbit(c: np.ndarray, phi: np.ndarray, m: int) -> np.ndarray:
    """Rows c, c phi, ..., c phi^(m-1)."""
    O = np.empty((m, c.size))
    row = c.copy()
    for i in range(m):
        O[i] = row
        row = row @ phi
    return O


def _kernel_samples(ss: StateSpace, h: float, n: int) -> np.ndarray:
    """C e^{A k h} B for k = 0..n-1, advanced a block of steps at a time."""
    if ss.order == 0:
        return np.zeros(n)
    phi = matrix_exponential(ss.A, h)
    m = min(n, _BLOCK)
    O = _output_orbit(ss.C[0], phi, m)
    jump = np.linalg.matrix_power(phi, m)
    x = ss.B[:, 0].copy()
    out = np.empty(n)
    with np.errstate(over="ignore", invalid="ignore"):
        for start in range(0, n, m):
            stop = min(start + m, n)
            out[start:stop] = O[: stop - start] @ x
            x = jump @ x
    return out


def kernel_at(ss: StateSpace, t: float) -> float:
    """f0(t) = C e^{At} B."""
    if ss.order == 0:
        return 0.0
    return float(ss.C[0] @ matrix_exponential(ss.A, t) @ ss.B[:, 0])


def simulate_batch(ss: StateSpace, h: float, U: np.ndarray) -> np.ndarray:
    """Responses to the rows of ``U`` (each a piecewise-constant input on step h).

    Blocks of m steps are advanced at once: y = O x0 + T u and
    x0 <- phi^m x0 + R u, with O, T, R built from the ZOH pair (phi, gamma).
    """
    U = np.atleast_2d(np.asarray(U, dtype=float))
    N = U.shape[1]
    if ss.order == 0 or N == 0:
        return ss.D * U
    phi, gamma = zoh_matrices(ss.A, ss.B, h)
    m = min(N, _BLOCK)
    O = _output_orbit(ss.C[0], phi, m)
    g = np.concatenate([[ss.D], O[: m - 1] @ gamma[:, 0]])  # Markov parameters
    idx = np.subtract.outer(np.arange(m), np.arange(m))
    T = np.where(idx >= 0, g[np.clip(idx, 0, m - 1)], 0.0)
    R = np.empty((ss.order, m))
    col = gamma[:, 0].copy()
    for j in range(m - 1, -1, -1):
        R[:, j] = col
        col = phi @ col
    jump = np.linalg.matrix_power(phi, m)
    X = np.zeros((ss.order, U.shape[0]))
    Y = np.empty_like(U)
    with np.errstate(over="ignore", invalid="ignore"):
        for start in range(0, N, m):
            L = min(m, N - start)
            Ub = U[:, start:start + L]
            Y[:, start:start + L] = (O[:L] @ X).T + Ub @ T[:L, :L].T
            if L == m:
                X = jump @ X + R @ Ub.T
    return Y


def simulate(ss: StateSpace, u: Signal) -> Signal:
    """Zero-initial-condition response, exact for piecewise-constant u."""
    return Signal(u.h, simulate_batch(ss, u.h, u.values[None, :])[0])


def io_energy(u: Signal, y: Signal, feedthrough: Optional[float] = None) -> Signal:
    """Running trapezoidal integral J(t) of u*y.

    By default the sampled product is integrated as if it were continuous.
    Passing the system's ``feedthrough`` D reads u as held over each step (the
    way ``simulate`` applies it): step k contributes h*u_k*(y_k + y_{k+1}^-)/2
    with y_{k+1}^- = y_{k+1} - D*(u_{k+1} - u_k) the left limit of y, so input
    jumps are not smeared across the step.
    """
    if len(u) != len(y) or not np.isclose(u.h, y.h, rtol=1e-12, atol=0.0):
        raise GridMismatch("u and y must share a grid")
    uv, yv = u.values, y.values
    J = np.zeros(uv.size)
    if uv.size > 1:
        if feedthrough is None:
            inc = uv[1:] * yv[1:] + uv[:-1] * yv[:-1]
        else:
            inc = uv[:-1] * (yv[:-1] + yv[1:] - feedthrough * (uv[1:] - uv[:-1]))
        J[1:] = np.cumsum(0.5 * u.h * inc)
    return Signal(u.h, J)
