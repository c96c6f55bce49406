"""Transfer-function text and input-spec mini-grammars.

Transfer functions::

    expr := side | side "/" side
    side := poly | "(" poly ")"
    poly := ["-"] term (("+" | "-") term)*
    term := coeff? "s" ("^" int)? | coeff

Coefficients are decimal literals (an exponent part is accepted so that
printed coefficients parse back).  Whitespace is ignored.
"""
from __future__ import annotations

import csv
import re
from typing import Dict, List, Tuple

import numpy as np

from .errors import DegenerateInput, ParseError
from .realize import InputSpec
from .xfer import TransferFunction

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self) -> float:
        self.skip()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a number", self.pos)
        self.pos = m.end()
        return float(m.group(0))

    def term(self) -> Tuple[int, float]:
        ch = self.peek()
        coeff = 1.0
        if ch.isdigit() or ch == ".":
            coeff = self.number()
            if self.peek() != "s":
                return 0, coeff
        elif ch != "s":
            found = ch or "end of input"
            raise ParseError(f"expected a term, found {found!r}", self.pos)
        self.pos += 1  # the 's'
        power = 1
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            m = _INT.match(self.text, self.pos)
            if not m:
                raise ParseError("expected an integer exponent", self.pos)
            self.pos = m.end()
            power = int(m.group(0))
        return power, coeff

    def poly(self) -> Dict[int, float]:
        terms: Dict[int, float] = {}
        sign = 1.0
        if self.peek() == "-":
            self.pos += 1
            sign = -1.0
        while True:
            power, c = self.term()
            terms[power] = terms.get(power, 0.0) + sign * c
            ch = self.peek()
            if ch not in ("+", "-"):
                return terms
            sign = 1.0 if ch == "+" else -1.0
            self.pos += 1

    def side(self) -> Dict[int, float]:
        if self.peek() == "(":
            self.pos += 1
            p = self.poly()
            self.expect(")")
            return p
        return self.poly()


def _to_coeffs(terms: Dict[int, float]) -> List[float]:
    top = max(terms)
    return [terms.get(k, 0.0) for k in range(top, -1, -1)]


def parse_poly_text(text: str) -> List[float]:
    p = _Parser(text)
    terms = p.side()
    if p.peek():
        raise ParseError(f"unexpected {p.peek()!r}", p.pos)
    return _to_coeffs(terms)


def parse_tf_text(text: str) -> TransferFunction:
    p = _Parser(text)
    num = p.side()
    den = {0: 1.0}
    if p.peek() == "/":
        p.pos += 1
        den = p.side()
    if p.peek():
        raise ParseError(f"unexpected {p.peek()!r}", p.pos)
    den_c = _to_coeffs(den)
    if not any(den_c):
        raise ParseError("denominator is identically zero")
    return TransferFunction(_to_coeffs(num), den_c)


def parse_coeff_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad coefficient list {text!r}") from exc


def format_poly(coeffs) -> str:
    coeffs = np.asarray(coeffs, dtype=float).tolist()
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        k = n - i
        if c == 0.0 and not (k == 0 and not parts):
            continue
        mag = abs(c)
        if k == 0:
            body = repr(mag)
        else:
            body = ("" if mag == 1.0 else repr(mag)) + "s" + (f"^{k}" if k > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts) or "0.0"


def format_tf(F: TransferFunction) -> str:
    return f"({format_poly(F.num.coeffs)})/({format_poly(F.den.coeffs)})"


def _read_csv_signal(path: str) -> Tuple[Tuple[float, ...], float]:
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not rows or [c.strip() for c in rows[0]] != ["t", "value"]:
        raise ParseError("CSV input needs header 't,value'")
    try:
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
    except ValueError as exc:
        raise ParseError(f"bad CSV row in {path}") from exc
    if data.shape[0] < 2:
        raise ParseError("CSV input needs at least two samples")
    dt = np.diff(data[:, 0])
    if data[0, 0] != 0.0 or dt[0] <= 0 or not np.allclose(dt, dt[0], rtol=1e-9, atol=1e-12):
        raise ParseError("CSV input must be on a uniform grid starting at t = 0")
    return tuple(data[:, 1].tolist()), float(dt[0])


def parse_input_spec(text: str) -> InputSpec:
    """``step``, ``pulse:<t0>,<t1>,<amp>``, ``ramp:<slope>`` or ``file:<path>``."""
    kind, _, arg = text.strip().partition(":")
    try:
        if kind == "step" and not arg:
            return InputSpec("step")
        if kind == "pulse":
            vals = tuple(float(x) for x in arg.split(","))
            if len(vals) != 3:
                raise ParseError("pulse needs t0,t1,amp")
            return InputSpec("pulse", vals)
        if kind == "ramp":
            return InputSpec("ramp", (float(arg),))
        if kind == "file":
            samples, step = _read_csv_signal(arg)
            return InputSpec("samples", samples=samples, sample_step=step)
    except DegenerateInput as exc:
        raise ParseError(str(exc)) from exc
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad input spec {text!r}") from exc
    raise ParseError(f"unknown input spec {text!r}")
