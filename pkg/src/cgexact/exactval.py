"""Exact arithmetic on values of the form sign * sqrt(num/den).

Every coupling coefficient produced by this package is such a value, so a
tiny closed arithmetic (product, commensurable sums, signed square, decimal
rendering) is all that is needed.  Values are kept canonical: the radicand
is in lowest terms, zero is (0, 0, 1), and equality is plain field equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "IncompatibleRadicals",
    "SqrtRational",
    "from_signed_ratio",
    "ZERO",
    "ONE",
]


class IncompatibleRadicals(ValueError):
    """Sum of two radicals that are not rational multiples of a common root."""


@dataclass(frozen=True)
class SqrtRational:
    """The exact value ``sign * sqrt(num / den)``.

    Instances must already be canonical; use :func:`from_signed_ratio` to
    construct from raw integers.
    """

    sign: int
    num: int
    den: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.num < 0 or self.den < 1:
            raise ValueError(f"radicand {self.num}/{self.den} is not canonical")
        if (self.sign == 0) != (self.num == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")
        if self.num == 0 and self.den != 1:
            raise ValueError("zero must be stored as (0, 0, 1)")
        if self.num != 0 and math.gcd(self.num, self.den) != 1:
            raise ValueError(f"radicand {self.num}/{self.den} is not reduced")

    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.sign, self.num, self.den)

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        return mul(self, other)

    def __add__(self, other: "SqrtRational") -> "SqrtRational":
        return add(self, other)

    def __str__(self) -> str:
        return to_text(self)

    def to_json_dict(self) -> dict:
        """Lossless JSON form; num/den as decimal strings so any size survives."""
        return {"sign": self.sign, "num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SqrtRational":
        return cls(int(data["sign"]), int(data["num"]), int(data["den"]))


ZERO = SqrtRational(0, 0, 1)
ONE = SqrtRational(1, 1, 1)


def from_signed_ratio(s: int, p: int, q: int) -> SqrtRational:
    """Canonical value sign(s) * sqrt(p/q); the magnitude of ``s`` is ignored."""
    if q <= 0:
        raise ValueError(f"radicand denominator must be positive, got {q}")
    if p < 0:
        raise ValueError(f"radicand numerator must be non-negative, got {p}")
    if s == 0 or p == 0:
        return ZERO
    g = math.gcd(p, q)
    return SqrtRational(-1 if s < 0 else 1, p // g, q // g)


def mul(a: SqrtRational, b: SqrtRational) -> SqrtRational:
    """Exact product: signs multiply, radicands multiply and reduce."""
    return from_signed_ratio(a.sign * b.sign, a.num * b.num, a.den * b.den)


def add(a: SqrtRational, b: SqrtRational) -> SqrtRational:
    """Exact sum of two values that share a radical up to a rational factor.

    Writing a = (sign_a/den_a) * sqrt(ra) with ra = num_a * den_a (and the
    same for b), the sum stays a single radical exactly when ra*rb is a
    perfect square; otherwise the inputs are incommensurable and the caller
    has made a mistake.
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ra = a.num * a.den
    rb = b.num * b.den
    root = math.isqrt(ra * rb)
    if root * root != ra * rb:
        raise IncompatibleRadicals(
            f"cannot add sqrt({a.num}/{a.den}) and sqrt({b.num}/{b.den}) exactly"
        )
    # b = (sign_b/den_b) * sqrt(rb) and sqrt(rb) = root/ra * sqrt(ra)
    coeff = Fraction(a.sign, a.den) + Fraction(b.sign * root, b.den * ra)
    radicand = coeff * coeff * ra
    return from_signed_ratio(
        -1 if coeff < 0 else (1 if coeff > 0 else 0),
        radicand.numerator,
        radicand.denominator,
    )


def square_signed(a: SqrtRational) -> Fraction:
    """The signed square sign(a) * a**2, exact."""
    return Fraction(a.sign * a.num, a.den)


def to_text(a: SqrtRational) -> str:
    """Compact text: ``-sqrt(8/15)``, ``sqrt(2)``, ``1``, ``0``."""
    if a.sign == 0:
        return "0"
    prefix = "-" if a.sign < 0 else ""
    if a.num == 1 and a.den == 1:
        return prefix + "1"
    if a.den == 1:
        return f"{prefix}sqrt({a.num})"
    return f"{prefix}sqrt({a.num}/{a.den})"


def _floor_sqrt_scaled(num: int, den: int, k: int) -> int:
    """floor(sqrt(num/den) * 10**k) computed exactly."""
    if k >= 0:
        return math.isqrt(num * 10 ** (2 * k) // den)
    return math.isqrt(num // (den * 10 ** (-2 * k)))


def to_decimal(a: SqrtRational, digits: int) -> str:
    """Correctly rounded decimal expansion to ``digits`` significant digits.

    Rounding decisions are made by exact integer comparisons, never by
    rounding a floating-point intermediate.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if a.sign == 0:
        return "0" if digits == 1 else "0." + "0" * (digits - 1)

    num, den = a.num, a.den
    # Decimal exponent e with 10**e <= sqrt(num/den) < 10**(e+1).
    k0 = 0
    while (scaled := _floor_sqrt_scaled(num, den, k0)) == 0:
        k0 += max(1, k0)
    e = len(str(scaled)) - 1 - k0

    k = digits - 1 - e
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        # Rational value rn/rd: ties are possible, round half to even.
        if k >= 0:
            top, bottom = rn * 10**k, rd
        else:
            top, bottom = rn, rd * 10**-k
        q, r = divmod(top, bottom)
        m = q + (1 if (2 * r > bottom or (2 * r == bottom and q % 2 == 1)) else 0)
    else:
        # Irrational: compare 4*num*10**(2k) against den*(2m+1)**2, never a tie.
        m = _floor_sqrt_scaled(num, den, k)
        if k >= 0:
            lhs, rhs = 4 * num * 10 ** (2 * k), den * (2 * m + 1) ** 2
        else:
            lhs, rhs = 4 * num, den * 10 ** (-2 * k) * (2 * m + 1) ** 2
        if lhs > rhs:
            m += 1
    if len(str(m)) > digits:  # rounding crossed a power of ten (999... -> 1000...)
        m //= 10
        e += 1

    s = str(m)
    if e >= digits - 1:
        body = s + "0" * (e - digits + 1)
    elif e >= 0:
        body = s[: e + 1] + "." + s[e + 1 :]
    else:
        body = "0." + "0" * (-e - 1) + s
    return ("-" if a.sign < 0 else "") + body
