"""SISO rational transfer functions N(s)/D(s).

Denominators are kept monic and near-common pole/zero pairs are cancelled at
construction; every cancellation is kept in ``cancellations`` so reports can
show what was removed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import DegenerateInput, ImproperInput, PoleOnAxis
from .poly import Polynomial, as_poly, poly_eval, poly_mul, poly_roots

AXIS_TOL = 1e-9
CANCEL_TOL = 1e-9
EVEN_FLUSH_RTOL = 1e-12


def _cancel(num: Polynomial, den: Polynomial):
    if num.degree < 1 or den.degree < 1:
        return num, den, []
    zr, pr = poly_roots(num), poly_roots(den)
    pmult = dict(zip(pr.roots, pr.multiplicities))
    removed = []
    for z, mz in zip(zr.roots, zr.multiplicities):
        if z.imag < 0:
            continue  # handled with its conjugate
        match = min(pmult, key=lambda p: abs(p - z), default=None)
        if match is None or abs(match - z) >= CANCEL_TOL or pmult[match] == 0:
            continue
        k = min(mz, pmult[match])
        pmult[match] -= k
        c = 0.5 * (z + match)
        if z.imag > 0:
            factor = np.array([1.0, -2.0 * c.real, abs(c) ** 2])
            removed += [c, c.conjugate()] * k
        else:
            factor = np.array([1.0, -c.real])
            removed += [complex(c.real, 0.0)] * k
        for _ in range(k):
            num = Polynomial(np.polydiv(num.coeffs, factor)[0])
            den = Polynomial(np.polydiv(den.coeffs, factor)[0])
    return num, den, removed


class TransferFunction:
    """Rational function with monic denominator.

    Parameters
    ----------
    num, den : array_like or Polynomial
        Coefficients in descending powers of s.
    cancel : bool
        Cancel pole/zero pairs closer than ``CANCEL_TOL`` (default True).
    """

    __slots__ = ("num", "den", "cancellations")

    def __init__(self, num, den, cancel: bool = True, _cancelled=()):
        num, den = as_poly(num), as_poly(den)
        if den.is_zero:
            raise DegenerateInput("denominator is identically zero")
        removed = list(_cancelled)
        if num.is_zero:
            den = Polynomial([1.0])
        elif cancel:
            num, den, extra = _cancel(num, den)
            removed += extra
        lead = den.lead
        self.num = Polynomial(num.coeffs / lead)
        self.den = Polynomial(den.coeffs / lead)
        self.cancellations = tuple(removed)

    @classmethod
    def gain(cls, k: float) -> "TransferFunction":
        return cls([float(k)], [1.0])

    def __call__(self, s):
        return poly_eval(self.num, s) / poly_eval(self.den, s)

    def __repr__(self):
        return f"TransferFunction({self.num.coeffs.tolist()}, {self.den.coeffs.tolist()})"

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = TransferFunction.gain(other)
        num = poly_mul(self.num, other.den) + poly_mul(other.num, self.den)
        return TransferFunction(num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return TransferFunction(-self.num, self.den, cancel=False)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = TransferFunction.gain(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return TransferFunction(self.num * float(other), self.den, cancel=False)
        return TransferFunction(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    __rmul__ = __mul__

    @property
    def order(self) -> int:
        return self.den.degree

    @property
    def is_proper(self) -> bool:
        return relative_degree(self) >= 0

    def allclose(self, other: "TransferFunction", tol: float = 1e-9) -> bool:
        a, b = self.num.coeffs, other.num.coeffs
        c, d = self.den.coeffs, other.den.coeffs
        if a.size != b.size or c.size != d.size:
            return False
        return bool(np.allclose(a, b, rtol=tol, atol=tol) and np.allclose(c, d, rtol=tol, atol=tol))


def tf_new(num, den) -> TransferFunction:
    return TransferFunction(num, den)


def relative_degree(F: TransferFunction) -> int:
    """deg(den) - deg(num); the zero function counts as strictly proper (1)."""
    if F.num.is_zero:
        return F.den.degree + 1
    return F.den.degree - F.num.degree


@dataclass(frozen=True)
class BiproperDecomposition:
    d: float
    f0: TransferFunction

    def recombine(self) -> TransferFunction:
        num = self.f0.num + self.f0.den * self.d
        return TransferFunction(num, self.f0.den, cancel=False)


def decompose_biproper(F: TransferFunction) -> BiproperDecomposition:
    """Split a proper F into d + F0 with F0 strictly proper."""
    r = relative_degree(F)
    if r < 0:
        raise ImproperInput(f"relative degree {r} < 0: no direct-gain decomposition")
    if r > 0:
        return BiproperDecomposition(0.0, F)
    d = F.num.lead / F.den.lead
    rest = F.num.coeffs - d * F.den.coeffs
    rest[0] = 0.0
    return BiproperDecomposition(float(d), TransferFunction(rest, F.den))


def tf_inverse(F: TransferFunction) -> TransferFunction:
    if F.num.is_zero:
        raise DegenerateInput("zero function has no inverse")
    return TransferFunction(F.den, F.num, cancel=False)


@dataclass(frozen=True)
class PoleData:
    pole: complex
    multiplicity: int
    residue: Optional[complex]
    axis_class: str  # "LHP" | "axis" | "RHP"


def classify(p: complex, tol: float = AXIS_TOL) -> str:
    if abs(p.real) < tol:
        return "axis"
    return "LHP" if p.real < 0 else "RHP"


def poles_with_residues(F: TransferFunction, axis_tol: float = AXIS_TOL) -> List[PoleData]:
    if F.den.degree < 1:
        return []
    rs = poly_roots(F.den)
    dden = F.den.deriv()
    out = []
    for p, m in zip(rs.roots, rs.multiplicities):
        res = None
        if m == 1:
            res = complex(poly_eval(F.num, p) / poly_eval(dden, p))
        out.append(PoleData(complex(p), int(m), res, classify(p, axis_tol)))
    return out


def freq_response(F: TransferFunction, omega: float, axis_tol: float = AXIS_TOL) -> complex:
    s = 1j * float(omega)
    if F.den.degree >= 1:
        for p in poly_roots(F.den).roots:
            if abs(p - s) < axis_tol:
                raise PoleOnAxis(f"pole {p} at s = {s}")
    return complex(F(s))


def realpart_even_poly(F: TransferFunction) -> Polynomial:
    """E(x) with Re F(jw) = E(w**2) / |D(jw)|**2.

    The even part of N(s) D(-s), read off at s = jw, with coefficients that are
    pure cancellation noise flushed to zero.
    """
    n, d = F.num.coeffs, F.den.coeffs
    dm = d * (-1.0) ** np.arange(d.size - 1, -1, -1)
    prod = np.convolve(n, dm)
    scale = np.convolve(np.abs(n), np.abs(d))
    # ascending powers of s; keep s^0, s^2, ... with sign (-1)^k
    asc, asc_scale = prod[::-1], scale[::-1]
    even = asc[0::2] * (-1.0) ** np.arange(asc[0::2].size)
    even[np.abs(even) <= EVEN_FLUSH_RTOL * np.max(asc_scale)] = 0.0
    return Polynomial(even[::-1])
