import math
import random
from decimal import Decimal, getcontext
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from cgexact.exactval import (
    IncompatibleRadicals,
    ONE,
    SqrtRational,
    ZERO,
    add,
    from_signed_ratio,
    mul,
    square_signed,
    to_decimal,
    to_text,
)


def sr(s, p, q):
    return from_signed_ratio(s, p, q)


values = st.builds(
    from_signed_ratio,
    st.sampled_from([-1, 1]),
    st.integers(min_value=0, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
)


def test_from_signed_ratio_golden():
    assert sr(-1, 8, 15) == SqrtRational(-1, 8, 15)
    assert sr(1, 0, 7) == ZERO
    assert sr(1, 4, 6) == SqrtRational(1, 2, 3)
    assert sr(-7, 4, 6) == SqrtRational(-1, 2, 3)  # magnitude of s is ignored


def test_from_signed_ratio_rejects():
    with pytest.raises(ValueError):
        sr(1, 1, 0)
    with pytest.raises(ValueError):
        sr(1, 1, -2)
    with pytest.raises(ValueError):
        sr(1, -1, 2)


def test_canonical_validation():
    with pytest.raises(ValueError):
        SqrtRational(1, 4, 6)  # not reduced
    with pytest.raises(ValueError):
        SqrtRational(0, 1, 1)  # sign/num inconsistency
    with pytest.raises(ValueError):
        SqrtRational(0, 0, 3)  # zero must be (0, 0, 1)
    with pytest.raises(ValueError):
        SqrtRational(2, 1, 1)


def test_mul_golden():
    assert mul(sr(1, 1, 2), sr(1, 1, 2)) == sr(1, 1, 4)
    assert mul(sr(-1, 2, 3), sr(1, 3, 2)) == SqrtRational(-1, 1, 1)
    assert mul(ZERO, sr(1, 5, 7)) == ZERO


def test_add_golden():
    assert add(sr(1, 1, 2), sr(1, 1, 2)) == SqrtRational(1, 2, 1)
    assert add(sr(1, 1, 2), sr(-1, 1, 2)) == ZERO
    assert add(sr(1, 2, 9), sr(1, 8, 9)) == SqrtRational(1, 2, 1)


def test_add_golden_against_decimal_evaluation():
    # Brute-force check of sqrt(2/9) + sqrt(8/9) = sqrt(2) at 200 digits.
    getcontext().prec = 220
    lhs = (Decimal(2) / 9).sqrt() + (Decimal(8) / 9).sqrt()
    rhs = Decimal(2).sqrt()
    assert abs(lhs - rhs) < Decimal(10) ** -190


def test_add_incompatible():
    with pytest.raises(IncompatibleRadicals):
        add(sr(1, 2, 1), sr(1, 3, 1))


def test_square_signed_golden():
    assert square_signed(sr(-1, 8, 15)) == Fraction(-8, 15)
    assert square_signed(sr(1, 1, 4)) == Fraction(1, 4)
    assert square_signed(ZERO) == 0


def test_to_decimal_golden():
    assert to_decimal(sr(-1, 8, 15), 10) == "-0.7302967433"
    assert to_decimal(ONE, 5) == "1.0000"
    assert to_decimal(ZERO, 5) == "0.0000"
    assert to_decimal(sr(1, 1, 4), 3) == "0.500"
    assert to_decimal(sr(1, 200, 1), 4) == "14.14"
    assert to_decimal(sr(1, 2, 1), 1) == "1"
    with pytest.raises(ValueError):
        to_decimal(ONE, 0)


def test_to_text():
    assert to_text(sr(-1, 8, 15)) == "-sqrt(8/15)"
    assert to_text(ONE) == "1"
    assert to_text(-ONE) == "-1"
    assert to_text(ZERO) == "0"
    assert to_text(sr(1, 2, 1)) == "sqrt(2)"
    assert str(sr(1, 1, 2)) == "sqrt(1/2)"


def test_json_roundtrip():
    v = sr(-1, 8, 15)
    assert SqrtRational.from_json_dict(v.to_json_dict()) == v
    assert v.to_json_dict() == {"sign": -1, "num": "8", "den": "15"}


@given(values)
def test_canonicalization_idempotent(v):
    assert from_signed_ratio(v.sign, v.num, v.den) == v
    if not v.is_zero():
        assert math.gcd(v.num, v.den) == 1


@given(values, values)
def test_mul_commutative(a, b):
    assert mul(a, b) == mul(b, a)


@given(values, values, values)
def test_mul_associative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@given(values)
def test_square_signed_properties(v):
    sq = square_signed(v)
    assert (sq > 0) - (sq < 0) == v.sign
    assert abs(sq) == Fraction(v.num, v.den)


@given(
    st.sampled_from([-1, 1]),
    st.sampled_from([-1, 1]),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=1000),
    st.integers(min_value=1, max_value=50),
    st.integers(min_value=1, max_value=50),
)
def test_add_on_commensurable_pairs(sa, sb, pa, pb, root_num, root_den):
    # a = sa * pa * sqrt(r), b = sb * pb * sqrt(r) for a shared radical r.
    a = sr(sa, pa * pa * root_num, root_den)
    b = sr(sb, pb * pb * root_num, root_den)
    total = add(a, b)
    coeff = sa * pa + sb * pb
    assert total == sr(coeff, coeff * coeff * root_num, root_den)
    assert add(a, ZERO) == a
    assert add(b, -b) == ZERO


def _ulp(rendered: str, digits: int) -> Fraction:
    mantissa = rendered.lstrip("-")
    stripped = mantissa.replace(".", "").lstrip("0")
    if "." in mantissa:
        frac_digits = len(mantissa.split(".", 1)[1])
        exponent = len(stripped) - frac_digits - 1
    else:
        exponent = len(stripped) - 1
    return Fraction(10) ** (exponent - digits + 1)


@given(
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=1, max_value=10**9),
    st.integers(min_value=1, max_value=25),
)
def test_to_decimal_correctly_rounded(p, q, digits):
    v = sr(1, p, q)
    rendered = to_decimal(v, digits)
    approx = Fraction(rendered)
    half = _ulp(rendered, digits) / 2
    target = Fraction(v.num, v.den)
    assert (approx - half) ** 2 <= target <= (approx + half) ** 2


def test_equality_matches_numerics_on_random_pairs():
    # Canonical equality must coincide with 60-digit numeric equality.
    rng = random.Random(20250809)
    with mpmath.workdps(60):
        for _ in range(10**4):
            a = sr(rng.choice((-1, 1)), rng.randrange(0, 10**6), rng.randrange(1, 10**6))
            b = sr(rng.choice((-1, 1)), rng.randrange(0, 10**6), rng.randrange(1, 10**6))
            xa = a.sign * mpmath.sqrt(mpmath.mpf(a.num) / a.den)
            xb = b.sign * mpmath.sqrt(mpmath.mpf(b.num) / b.den)
            numeric_equal = abs(xa - xb) < mpmath.mpf(10) ** -50
            assert (a == b) == numeric_equal, (a, b)
