"""Scalar backends: double-precision complex and exact Gaussian rationals.

Every operation in the library is written against plain Python ``complex``
or against :class:`QComplex`, whose real and imaginary parts are
``fractions.Fraction`` values kept in normal form (reduced, positive
denominator), so equality of exact values is structural equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import RangeError

_RAT = r"[+-]?\d+(?:/\d+)?"
_FLT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RAT_COMPLEX = re.compile(rf"^(?P<re>{_RAT})(?:(?P<im>[+-]\d+(?:/\d+)?)i)?$")
_FLT_COMPLEX = re.compile(
    rf"^(?P<re>{_FLT})(?:(?P<im>[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?$"
)


@dataclass(frozen=True)
class QComplex:
    """Gaussian rational a + bi with exact Fraction components."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def _coerce(self, other):
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return QComplex(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QComplex(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return QComplex((self.re * o.re + self.im * o.im) / d,
                        (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __str__(self):
        return format_qcomplex(self)


def conj(x):
    """Complex conjugate for either scalar backend."""
    if isinstance(x, QComplex):
        return x.conjugate()
    return complex(x).conjugate()


def modulus_sq(x):
    """|x|^2; exact Fraction in the rational backend, float otherwise."""
    if isinstance(x, QComplex):
        return x.re * x.re + x.im * x.im
    z = complex(x)
    return z.real * z.real + z.imag * z.imag


def real_part(x):
    if isinstance(x, QComplex):
        return x.re
    return complex(x).real


def imag_part(x):
    if isinstance(x, QComplex):
        return x.im
    return complex(x).imag


def to_float(q):
    """Nearest-double rounding of a QComplex (plain complex passes through)."""
    if not isinstance(q, QComplex):
        return complex(q)
    try:
        return complex(float(q.re), float(q.im))
    except OverflowError as exc:
        raise RangeError(f"rational magnitude exceeds double range: {q}") from exc


def _format_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_qcomplex(q: QComplex) -> str:
    """Text form 're' or 're+imi' / 're-imi' with exact fractions."""
    if q.im == 0:
        return _format_fraction(q.re)
    sign = "+" if q.im > 0 else "-"
    return f"{_format_fraction(q.re)}{sign}{_format_fraction(abs(q.im))}i"


def parse_qcomplex(s: str) -> QComplex:
    """Parse the exact text form; raises ValueError on anything else."""
    m = _RAT_COMPLEX.match(s.strip().replace(" ", ""))
    if m is None:
        raise ValueError(f"not an exact complex literal: {s!r}")
    re_part = Fraction(m.group("re"))
    im_part = Fraction(m.group("im")) if m.group("im") else Fraction(0)
    return QComplex(re_part, im_part)


def parse_complex(s: str) -> complex:
    """Parse the float text form 'a', 'a+bi' or 'a-bi'."""
    m = _FLT_COMPLEX.match(s.strip().replace(" ", ""))
    if m is None:
        raise ValueError(f"not a complex literal: {s!r}")
    im = float(m.group("im")) if m.group("im") else 0.0
    return complex(float(m.group("re")), im)


def format_complex(z: complex) -> str:
    """Float text form with 15 significant digits."""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.15g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.15g}{sign}{abs(z.imag):.15g}i"
