"""Half-integer angular momentum bookkeeping on doubled integers.

Every quantum number is stored as twice its value (2J, 2M), so half-integers
stay exact and all index arithmetic is plain integer arithmetic.  The natural
coordinates of a state |J,M> are then

    j = 2J   constituent count,
    u = J+M  up count,
    d = J-M  down count,

all non-negative integers with u + d = j.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "QuantumNumberError",
    "TwoJ",
    "Projection",
    "CouplingSpec",
    "format_twice",
    "parse_half_integer",
    "parse_projection",
    "check_projection",
    "u_of",
    "d_of",
    "allowed_total_j",
    "projections",
]


class QuantumNumberError(ValueError):
    """A value that cannot occur as an angular momentum quantum number."""


def format_twice(twice: int) -> str:
    """Canonical text for a doubled value: ``"k/2"`` when odd, plain integer otherwise."""
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


@dataclass(frozen=True, order=True)
class TwoJ:
    """Angular momentum magnitude J, stored as the non-negative integer 2J."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise QuantumNumberError(f"2J must be an integer, got {self.twice!r}")
        if self.twice < 0:
            raise QuantumNumberError(f"J must be non-negative, got {format_twice(self.twice)}")

    def __str__(self) -> str:
        return format_twice(self.twice)


@dataclass(frozen=True, order=True)
class Projection:
    """z-projection M, stored as the signed integer 2M."""

    twice_m: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice_m, int) or isinstance(self.twice_m, bool):
            raise QuantumNumberError(f"2M must be an integer, got {self.twice_m!r}")

    def __str__(self) -> str:
        return format_twice(self.twice_m)


@dataclass(frozen=True)
class CouplingSpec:
    """A coupling of (J1, J2) to total J = J1 + J2 - n.

    ``n`` counts the opposite-spin constituent pairs removed from the maximum
    coupling; 0 <= n <= min(2J1, 2J2) is exactly the triangle rule
    |J1 - J2| <= J <= J1 + J2.
    """

    j1: TwoJ
    j2: TwoJ
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise QuantumNumberError(f"n must be an integer, got {self.n!r}")
        if not 0 <= self.n <= min(self.j1.twice, self.j2.twice):
            raise QuantumNumberError(
                f"triangle: J must lie between |J1-J2| and J1+J2 "
                f"(J1={self.j1}, J2={self.j2}, n={self.n})"
            )

    @property
    def total(self) -> TwoJ:
        return TwoJ(self.j1.twice + self.j2.twice - 2 * self.n)

    @classmethod
    def from_total(cls, j1: TwoJ, j2: TwoJ, total: TwoJ) -> "CouplingSpec":
        gap = j1.twice + j2.twice - total.twice
        if gap % 2 != 0:
            raise QuantumNumberError(
                f"triangle: J must differ from J1+J2 by an integer "
                f"(J1={j1}, J2={j2}, J={total})"
            )
        if gap < 0 or gap // 2 > min(j1.twice, j2.twice):
            raise QuantumNumberError(
                f"triangle: J must lie between |J1-J2| and J1+J2 "
                f"(J1={j1}, J2={j2}, J={total})"
            )
        return cls(j1, j2, gap // 2)


_PLAIN_RE = re.compile(r"(\d+)\Z")
_HALF_RE = re.compile(r"(\d+)/2\Z")
_DECIMAL_RE = re.compile(r"(\d+)\.([05])\Z")


def _parse_twice(text: str) -> int:
    """Doubled value of a non-negative half-integer literal."""
    if m := _PLAIN_RE.match(text):
        return 2 * int(m.group(1))
    if m := _HALF_RE.match(text):
        return int(m.group(1))
    if m := _DECIMAL_RE.match(text):
        return 2 * int(m.group(1)) + (1 if m.group(2) == "5" else 0)
    raise QuantumNumberError(
        f"cannot parse {text!r} as a half-integer (expected forms: 2, 3/2, 1.5)"
    )


def parse_half_integer(text: str) -> TwoJ:
    """Parse ``"k"``, ``"k/2"`` or ``"k.0"``/``"k.5"`` exactly into a TwoJ.

    Rejects negative values, denominators other than 2 and anything
    non-numeric; no floating point is involved.
    """
    s = text.strip()
    if s.startswith(("-", "+")):
        if s.startswith("-"):
            raise QuantumNumberError(f"J must be non-negative, got {text!r}")
        s = s[1:]
    return TwoJ(_parse_twice(s))


def parse_projection(text: str) -> Projection:
    """Parse a possibly negative half-integer literal into a Projection."""
    s = text.strip()
    sign = 1
    if s.startswith(("-", "+")):
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    return Projection(sign * _parse_twice(s))


def check_projection(j: TwoJ, m: Projection) -> None:
    """Raise unless M is a valid projection of J."""
    if (j.twice - m.twice_m) % 2 != 0:
        raise QuantumNumberError(f"parity: M={m} cannot belong to J={j}")
    if abs(m.twice_m) > j.twice:
        raise QuantumNumberError(f"|M| <= J: M={m} out of range for J={j}")


def u_of(j: TwoJ, m: Projection) -> int:
    """Up count u = J + M of the state |J,M>."""
    check_projection(j, m)
    return (j.twice + m.twice_m) // 2


def d_of(j: TwoJ, m: Projection) -> int:
    """Down count d = J - M of the state |J,M>."""
    check_projection(j, m)
    return (j.twice - m.twice_m) // 2


def allowed_total_j(j1: TwoJ, j2: TwoJ) -> list[TwoJ]:
    """Allowed totals J1+J2, J1+J2-1, ..., |J1-J2|, in decreasing order."""
    top = j1.twice + j2.twice
    bottom = abs(j1.twice - j2.twice)
    return [TwoJ(t) for t in range(top, bottom - 1, -2)]


def projections(j: TwoJ) -> list[Projection]:
    """All projections of J from M=J down to M=-J."""
    return [Projection(t) for t in range(j.twice, -j.twice - 1, -2)]
