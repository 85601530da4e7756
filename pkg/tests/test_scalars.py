import math
from fractions import Fraction

import numpy as np
import pytest

from bergkrein.errors import RangeError
from bergkrein.scalars import (
    QComplex,
    conj,
    format_qcomplex,
    modulus_sq,
    parse_complex,
    parse_qcomplex,
    to_float,
)


def rand_q(rng):
    return QComplex(Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20))),
                    Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20))))


def test_conj_examples():
    assert conj(complex(1, 2)) == complex(1, -2)
    assert conj(3.0 + 0j) == 3.0
    assert conj(QComplex(1, 2)) == QComplex(1, -2)


def test_conj_involution():
    rng = np.random.default_rng(0)
    for _ in range(200):
        x = complex(rng.normal(), rng.normal())
        assert conj(conj(x)) == x
        q = rand_q(rng)
        assert conj(conj(q)) == q


def test_modulus_sq():
    assert modulus_sq(complex(3, 4)) == 25
    assert modulus_sq(0j) == 0
    assert modulus_sq(QComplex(3, 4)) == Fraction(25)
    rng = np.random.default_rng(1)
    for _ in range(100):
        q = rand_q(rng)
        assert modulus_sq(conj(q)) == modulus_sq(q)


def test_to_float():
    assert to_float(QComplex(Fraction(1, 2), Fraction(1, 4))) == 0.5 + 0.25j
    assert to_float(QComplex(0)) == 0.0
    assert to_float(QComplex(Fraction(8, 5))) == 1.6


def test_to_float_overflow():
    with pytest.raises(RangeError):
        to_float(QComplex(Fraction(10) ** 400))


def test_exact_field_laws():
    rng = np.random.default_rng(2)
    for _ in range(300):
        a, b, c = rand_q(rng), rand_q(rng), rand_q(rng)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if b:
            assert (a / b) * b == a


def test_float_agreement_ulps():
    # exact-then-round vs round-then-op agree to a few ulps of the
    # operand scale (cancellation makes per-component ulps too strict)
    rng = np.random.default_rng(3)
    for _ in range(300):
        a, b = rand_q(rng), rand_q(rng)
        fa, fb = to_float(a), to_float(b)
        for op in (lambda x, y: x + y, lambda x, y: x * y):
            exact = to_float(op(a, b))
            approx = op(fa, fb)
            scale = max(abs(fa), abs(fb), 1.0)
            assert abs(exact - approx) <= 8 * math.ulp(scale * scale)


def test_normal_form():
    q = QComplex(Fraction(2, -4), Fraction(6, 3))
    assert q.re.denominator == 2 and q.re.numerator == -1
    assert q.im == 2
    assert QComplex(Fraction(0, 7)) == QComplex(0)


def test_text_roundtrip():
    rng = np.random.default_rng(4)
    for _ in range(200):
        q = rand_q(rng)
        assert parse_qcomplex(format_qcomplex(q)) == q
    assert format_qcomplex(QComplex(Fraction(1, 2), Fraction(-1, 4))) == "1/2-1/4i"
    assert parse_qcomplex("-11/1260") == QComplex(Fraction(-11, 1260))


def test_parse_complex():
    assert parse_complex("0.5+0.25i") == 0.5 + 0.25j
    assert parse_complex("-1e-3") == -1e-3
    assert parse_complex("2-3i") == 2 - 3j
    with pytest.raises(ValueError):
        parse_complex("nonsense")
    with pytest.raises(ValueError):
        parse_qcomplex("0.5")  # decimals rejected in exact mode
