"""Real polynomial arithmetic, root finding and half-line nonnegativity.

Coefficients are stored in descending powers, ``coeffs[0]`` being the
leading coefficient.  The zero polynomial is canonically ``(0.0,)`` and is
given degree -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DegenerateInput

STRIP_RTOL = 1e-12
POLY_SIGN_TOL = 1e-9
CLUSTER_TOL = 1e-7
ROOT_RESIDUAL_TOL = 1e-8
ABERTH_MAXITER = 200
ABERTH_STEP_TOL = 1e-12

# below this, |Im z| of a computed root is treated as roundoff
_REAL_SNAP = 1e-10
_MERGE_RADIUS = 1e-3
_MULT_RTOL = 1e-9


class Polynomial:
    """Immutable real polynomial in descending powers."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Sequence[float], np.ndarray, "Polynomial"]):
        if isinstance(coeffs, Polynomial):
            c = coeffs.coeffs
        else:
            c = np.atleast_1d(np.asarray(coeffs, dtype=float)).ravel()
        if not np.all(np.isfinite(c)):
            raise DegenerateInput("polynomial coefficients must be finite")
        if c.size == 0:
            c = np.zeros(1)
        scale = np.max(np.abs(c))
        if scale == 0.0:
            c = np.zeros(1)
        else:
            keep = np.nonzero(np.abs(c) >= STRIP_RTOL * scale)[0][0]
            c = c[keep:].copy()
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else self._c.size - 1

    @property
    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0.0

    @property
    def lead(self) -> float:
        return float(self._c[0])

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(tuple(self._c.tolist()))

    def __repr__(self):
        return f"Polynomial({self._c.tolist()!r})"

    def __add__(self, other):
        other = as_poly(other)
        n = max(self._c.size, other._c.size)
        a = np.concatenate([np.zeros(n - self._c.size), self._c])
        b = np.concatenate([np.zeros(n - other._c.size), other._c])
        return Polynomial(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._c)

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Polynomial(self._c * float(other))
        return poly_mul(self, as_poly(other))

    __rmul__ = __mul__

    def deriv(self) -> "Polynomial":
        n = self.degree
        if n <= 0:
            return Polynomial([0.0])
        return Polynomial(self._c[:-1] * np.arange(n, 0, -1))

    def scaled_monic(self) -> "Polynomial":
        if self.is_zero:
            raise DegenerateInput("zero polynomial has no leading coefficient")
        return Polynomial(self._c / self._c[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))


def as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial(p)


def poly_eval(p: Polynomial, x):
    """Horner evaluation; works elementwise on arrays and on complex points."""
    c = p.coeffs
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=np.result_type(x.dtype, float)) + c[0]
    for a in c[1:]:
        acc = acc * x + a
    if acc.ndim == 0:
        return acc.item()
    return acc


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero or q.is_zero:
        return Polynomial([0.0])
    return Polynomial(np.convolve(p.coeffs, q.coeffs))


@dataclass(frozen=True)
class RootSet:
    """Distinct roots with multiplicities and the worst residual |p(root)|."""

    roots: tuple
    multiplicities: tuple
    residual: float

    @property
    def all_roots(self) -> np.ndarray:
        """Roots repeated according to multiplicity."""
        return np.repeat(np.asarray(self.roots, dtype=complex), self.multiplicities)

    def __len__(self):
        return len(self.roots)


def cauchy_bound(c: np.ndarray) -> float:
    """Every root of the polynomial with coefficients ``c`` lies in |z| <= bound."""
    c = np.asarray(c)
    if c.size <= 1:
        return 0.0
    return 1.0 + float(np.max(np.abs(c[1:] / c[0])))


def _aberth(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    dc = c[:-1] * np.arange(n, 0, -1)
    radius = cauchy_bound(c)
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    z = radius * np.exp(1j * angles)
    active = np.ones(n, dtype=bool)
    for _ in range(ABERTH_MAXITER):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        repulse = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            step = ratio / (1.0 - ratio * repulse)
        bad = ~np.isfinite(step)
        step[bad] = 0.0
        step[~active] = 0.0
        z = z - step
        done = np.abs(step) < ABERTH_STEP_TOL * (1.0 + np.abs(z))
        active &= ~(done & ~bad)
        if not active.any():
            break
    return z


def _pair_conjugates(z: np.ndarray) -> np.ndarray:
    z = z.astype(complex).copy()
    real = np.abs(z.imag) <= _REAL_SNAP * (1.0 + np.abs(z))
    z[real] = z[real].real
    upper = [i for i in np.nonzero(~real & (z.imag > 0))[0]]
    lower = [i for i in np.nonzero(~real & (z.imag < 0))[0]]
    upper.sort(key=lambda i: (z[i].real, z[i].imag))
    for i in upper:
        if not lower:
            z[i] = z[i].real
            continue
        j = min(lower, key=lambda k: abs(z[k] - np.conj(z[i])))
        lower.remove(j)
        avg = 0.5 * (z[i] + np.conj(z[j]))
        z[i], z[j] = avg, np.conj(avg)
    for j in lower:
        z[j] = z[j].real
    return z


def _cluster(z: np.ndarray, tol: float):
    remaining = sorted(z.tolist(), key=lambda w: (w.real, w.imag))
    groups = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed] + [w for w in remaining if abs(w - seed) < tol]
        remaining = [w for w in remaining if abs(w - seed) >= tol]
        groups.append(members)
    return groups


def _snap(c: complex) -> complex:
    if abs(c.imag) <= _REAL_SNAP * (1.0 + abs(c)):
        return complex(c.real, 0.0)
    return c


def _derivs(c: np.ndarray, m: int):
    out = [c]
    for _ in range(m):
        d = out[-1]
        n = d.size - 1
        out.append(d[:-1] * np.arange(n, 0, -1) if n > 0 else np.zeros(1))
    return out


def _is_multiple(c: np.ndarray, z: complex, m: int) -> bool:
    """p and its first m-1 derivatives all vanish at z relative to their evaluation scale."""
    for d in _derivs(c, m - 1):
        scale = np.polyval(np.abs(d), abs(z)) + 1e-300
        if abs(np.polyval(d, z)) > _MULT_RTOL * scale:
            return False
    return True


def _polish(c: np.ndarray, z: complex, m: int) -> complex:
    # the (m-1)th derivative has a simple root where p has an m-fold one
    ds = _derivs(c, m)
    q, dq = ds[m - 1], ds[m]
    for _ in range(4):
        dqz = np.polyval(dq, z)
        if dqz == 0:
            break
        step = np.polyval(q, z) / dqz
        if not np.isfinite(step) or abs(step) > _MERGE_RADIUS * (1.0 + abs(z)):
            break
        z = z - step
    return complex(z)


def _group_roots(c: np.ndarray, z: np.ndarray):
    groups = _cluster(z, CLUSTER_TOL)
    # numerically multiple roots spread as eps**(1/m); merge wider groups
    # only where the derivative test confirms multiplicity
    merged = True
    while merged and len(groups) > 1:
        merged = False
        cents = [complex(np.mean(g)) for g in groups]
        best = None
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                dist = abs(cents[i] - cents[j])
                if dist < _MERGE_RADIUS * (1.0 + abs(cents[i])) and (best is None or dist < best[0]):
                    best = (dist, i, j)
        if best is not None:
            _, i, j = best
            g = groups[i] + groups[j]
            if _is_multiple(c, _polish(c, complex(np.mean(g)), len(g)), len(g)):
                groups = [h for k, h in enumerate(groups) if k not in (i, j)] + [g]
                merged = True
    roots, mults = [], []
    for g in groups:
        centre = complex(np.mean(g))
        if len(g) > 1:
            centre = _polish(c, centre, len(g))
        roots.append(_snap(centre))
        mults.append(len(g))
    order = sorted(range(len(roots)), key=lambda k: (roots[k].real, roots[k].imag))
    return [roots[k] for k in order], [mults[k] for k in order]


def poly_roots(p: Polynomial) -> RootSet:
    """All complex roots by Aberth-Ehrlich iteration, grouped by multiplicity."""
    p = as_poly(p)
    if p.degree < 1:
        raise DegenerateInput("root finding needs degree >= 1")
    c = p.coeffs / p.lead
    # exact zero roots first: the iteration is poor at the origin
    nz = 0
    while c.size > 1 and c[-1] == 0.0:
        c = c[:-1]
        nz += 1
    found = []
    if c.size == 2:
        found = [complex(-c[1])]
    elif c.size > 2:
        found = _pair_conjugates(_aberth(c.astype(complex))).tolist()
    z = np.array(found + [0j] * nz, dtype=complex)
    roots, mults = _group_roots(p.coeffs / p.lead, z)
    residual = max(abs(poly_eval(p, r)) for r in roots)
    return RootSet(tuple(roots), tuple(mults), float(residual))


def poly_from_roots(roots, lead: float = 1.0) -> Polynomial:
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, [1.0, -r])
    return Polynomial(lead * c.real)


@dataclass(frozen=True)
class HalflineResult:
    holds: bool
    witness: Optional[float] = None
    minimum: float = 0.0
    argmin: float = 0.0


def _real_candidates(p: Polynomial):
    if p.degree < 1:
        return []
    rs = poly_roots(p)
    return [r.real for r in rs.roots if r.real > 0.0 and abs(r.imag) <= 1e-3 * (1.0 + abs(r))]


def halfline_minimum(p: Polynomial, tol: float = POLY_SIGN_TOL) -> HalflineResult:
    """Minimum of p over [0, inf) from its critical points; -inf if p is unbounded below."""
    p = as_poly(p)
    if p.is_zero:
        return HalflineResult(True, None, 0.0, 0.0)
    if p.degree == 0:
        val = p.lead
        return HalflineResult(val >= -tol, None if val >= -tol else 0.0, val, 0.0)
    if p.lead < 0:
        x = max(cauchy_bound(p.coeffs), 1.0)
        for _ in range(200):
            if poly_eval(p, x) < -tol:
                break
            x *= 2.0
        return HalflineResult(False, float(x), -np.inf, np.inf)
    # min over [0, inf) sits at 0 or at a positive critical point
    cands = [0.0] + _real_candidates(p.deriv()) + _real_candidates(p)
    vals = [float(poly_eval(p, x)) for x in cands]
    k = int(np.argmin(vals))
    holds = vals[k] >= -tol
    return HalflineResult(holds, None if holds else float(cands[k]), vals[k], float(cands[k]))


def nonneg_on_halfline(p: Polynomial, tol: float = POLY_SIGN_TOL) -> HalflineResult:
    """Decide p(x) >= -tol for all x >= 0; ``witness`` is a point where it fails."""
    return halfline_minimum(p, tol)
