"""Binomial state-count matrices and coefficient extraction.

The engine works on (2J1+1) x (2J2+1) integer grids indexed by the up counts
(u1, u2) of the two particles.  The n=0 grid counts the arrangements of the
constituent spin-1/2 units, C(j1,u1)*C(j2,u2); removing n opposite-spin pairs
produces the grid for total J = J1 + J2 - n.  Coefficients are read off a
diagonal u1+u2 = const by dividing each cell by the diagonal's absolute sum
and taking the signed square root.

Three equivalent constructions of the n-pair grid are provided; they differ
only by a positive factor per diagonal, which extraction removes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .exactval import SqrtRational, ZERO, from_signed_ratio
from .halfint import CouplingSpec, Projection, TwoJ, u_of

__all__ = [
    "ROUTES",
    "SignMismatch",
    "Diagonal",
    "OmegaMatrix",
    "omega0",
    "omega0_reciprocal",
    "lambda_and_v",
    "lambda_minus_v_pow",
    "tilde_omega",
    "signed_square",
    "hadamard_signed",
    "omega_n",
    "extract_cg",
    "stretched_cg",
]

ROUTES = ("product", "tilde_squared", "lv_squared")


class SignMismatch(ValueError):
    """Componentwise signed product saw operands of opposite sign."""


@dataclass(frozen=True)
class Diagonal:
    """One diagonal u1 + u2 = u_sum, entries (u1, u2, cell) by increasing u1."""

    u_sum: int
    entries: tuple[tuple[int, int, int], ...]

    @property
    def abs_sum(self) -> int:
        return sum(abs(value) for _, _, value in self.entries)


@dataclass(frozen=True)
class OmegaMatrix:
    """Integer grid over (u1, u2) with its coupling metadata.

    Row u1 = 0 comes first, column u2 = 0 comes first; ``n`` records how many
    opposite-spin pairs the grid accounts for (total J = J1 + J2 - n).
    """

    j1: TwoJ
    j2: TwoJ
    n: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows, cols = self.j1.twice + 1, self.j2.twice + 1
        if len(self.cells) != rows or any(len(row) != cols for row in self.cells):
            raise ValueError(
                f"cell grid must be {rows}x{cols} for J1={self.j1}, J2={self.j2}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.j1.twice + 1, self.j2.twice + 1)

    def cell(self, u1: int, u2: int) -> int:
        rows, cols = self.shape
        if not (0 <= u1 < rows and 0 <= u2 < cols):
            raise IndexError(f"(u1={u1}, u2={u2}) outside {rows}x{cols} grid")
        return self.cells[u1][u2]

    def diagonal(self, u_sum: int) -> Diagonal:
        t1, t2 = self.j1.twice, self.j2.twice
        if not 0 <= u_sum <= t1 + t2:
            raise IndexError(f"diagonal u1+u2={u_sum} outside grid")
        lo, hi = max(0, u_sum - t2), min(t1, u_sum)
        return Diagonal(
            u_sum,
            tuple((u1, u_sum - u1, self.cells[u1][u_sum - u1]) for u1 in range(lo, hi + 1)),
        )

    def diagonal_abs_sum(self, u_sum: int) -> int:
        return self.diagonal(u_sum).abs_sum

    def to_text(self) -> str:
        """Rows top to bottom as u1 = 0..2J1, comma-separated signed integers."""
        return "\n".join(",".join(str(v) for v in row) for row in self.cells)

    def to_json_dict(self) -> dict:
        return {
            "twoJ1": self.j1.twice,
            "twoJ2": self.j2.twice,
            "n": self.n,
            "cells": [list(row) for row in self.cells],
        }


def _build(j1: TwoJ, j2: TwoJ, n: int, fn: Callable[[int, int], int]) -> OmegaMatrix:
    t1, t2 = j1.twice, j2.twice
    cells = tuple(tuple(fn(u1, u2) for u2 in range(t2 + 1)) for u1 in range(t1 + 1))
    return OmegaMatrix(j1, j2, n, cells)


def omega0(j1: TwoJ, j2: TwoJ) -> OmegaMatrix:
    """Arrangement counts C(j1,u1)*C(j2,u2): the outer product of two Pascal rows."""
    t1, t2 = j1.twice, j2.twice
    return _build(j1, j2, 0, lambda u1, u2: math.comb(t1, u1) * math.comb(t2, u2))


def omega0_reciprocal(j1: TwoJ, j2: TwoJ) -> OmegaMatrix:
    """Componentwise reciprocals of :func:`omega0`, cleared to integers.

    Cells of the n=0 grid are strictly positive, so with L the lcm of all of
    them the integer matrix L // cell carries 1/cell up to the common factor
    L, which extraction ignores.
    """
    base = omega0(j1, j2)
    lcm = math.lcm(*(v for row in base.cells for v in row))
    return _build(j1, j2, 0, lambda u1, u2: lcm // base.cells[u1][u2])


def lambda_and_v(j1: TwoJ, j2: TwoJ) -> tuple[OmegaMatrix, OmegaMatrix]:
    """Pairing counts u1*d2 (up-down) and d1*u2 (down-up) per cell."""
    t1, t2 = j1.twice, j2.twice
    lam = _build(j1, j2, 1, lambda u1, u2: u1 * (t2 - u2))
    vee = _build(j1, j2, 1, lambda u1, u2: (t1 - u1) * u2)
    return lam, vee


def _k_range(n: int, u1: int, d1: int, u2: int, d2: int) -> range:
    # Terms vanish as soon as a falling factor or binomial hits zero.
    return range(max(0, n - u1, n - d2), min(n, d1, u2) + 1)


def lambda_minus_v_pow(j1: TwoJ, j2: TwoJ, n: int) -> OmegaMatrix:
    """Falling n-th power of the pairing surplus, with depletion.

    Cell value: sum over k of (-1)^k C(n,k) (u1 d2)^[n-k] (d1 u2)^[k], where
    x^[t] is the falling product x(x-1)...(x-t+1).  Counts the signed ways of
    forming n spin-0 pairs, each pick removing one up and one down.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    t1, t2 = j1.twice, j2.twice

    def cell(u1: int, u2: int) -> int:
        d1, d2 = t1 - u1, t2 - u2
        total = 0
        for k in _k_range(n, u1, d1, u2, d2):
            term = (
                math.comb(n, k)
                * math.perm(u1, n - k)
                * math.perm(d2, n - k)
                * math.perm(d1, k)
                * math.perm(u2, k)
            )
            total += -term if k & 1 else term
        return total

    return _build(j1, j2, n, cell)


def _comb0(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def tilde_omega(j1: TwoJ, j2: TwoJ, n: int) -> OmegaMatrix:
    """Signed arrangement counts of the system left after removing n pairs.

    Cell value: sum over k of (-1)^k C(n,k) C(j1-n, u1-(n-k)) C(j2-n, u2-k);
    binomials with out-of-range lower index are zero.  This is the n=0 grid
    of the reduced system (J1 - n/2, J2 - n/2), stamped at the n+1 shifted
    positions with alternating signs.
    """
    CouplingSpec(j1, j2, n)
    t1, t2 = j1.twice, j2.twice

    def cell(u1: int, u2: int) -> int:
        total = 0
        for k in range(n + 1):
            term = (
                math.comb(n, k)
                * _comb0(t1 - n, u1 - (n - k))
                * _comb0(t2 - n, u2 - k)
            )
            total += -term if k & 1 else term
        return total

    return _build(j1, j2, n, cell)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _signed_square_cell(x: int) -> int:
    """x^|2| = sign(x) * x**2, the sign-preserving square."""
    return x * x if x >= 0 else -(x * x)


def _signed_product_cell(a: int, b: int) -> int:
    """Zero if either factor is zero, else sign(a) * |a| * |b|."""
    if a == 0 or b == 0:
        return 0
    return _sign(a) * abs(a) * abs(b)


def signed_square(m: OmegaMatrix) -> OmegaMatrix:
    """Componentwise sign-preserving square of a matrix."""
    return _build(m.j1, m.j2, m.n, lambda u1, u2: _signed_square_cell(m.cells[u1][u2]))


def hadamard_signed(a: OmegaMatrix, b: OmegaMatrix) -> OmegaMatrix:
    """Componentwise signed product of two same-shape grids.

    Matching nonzero cells must carry the same sign; a mismatch means the
    factors were not built from the same coupling and is reported as
    :class:`SignMismatch`.  The result keeps the metadata of ``a``.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")

    def cell(u1: int, u2: int) -> int:
        x, y = a.cells[u1][u2], b.cells[u1][u2]
        if x != 0 and y != 0 and _sign(x) != _sign(y):
            raise SignMismatch(
                f"opposite signs {x} and {y} at (u1={u1}, u2={u2}) "
                f"for J1={a.j1}, J2={a.j2}, n={a.n}"
            )
        return _signed_product_cell(x, y)

    return _build(a.j1, a.j2, a.n, cell)


def _divided_by_gcd(m: OmegaMatrix) -> OmegaMatrix:
    g = math.gcd(*(v for row in m.cells for v in row))
    if g <= 1:
        return m
    return _build(m.j1, m.j2, m.n, lambda u1, u2: m.cells[u1][u2] // g)


def omega_n(j1: TwoJ, j2: TwoJ, n: int, route: str = "product") -> OmegaMatrix:
    """The signed grid whose diagonals hold the squared coefficients for J = J1+J2-n.

    route="product":        pairing falling power, reduced by its overall gcd,
                            componentwise-multiplied with the reduced-system grid.
    route="tilde_squared":  signed square of the reduced-system grid times the
                            integer reciprocal of the n=0 grid.
    route="lv_squared":     signed square of the pairing falling power times
                            the n=0 grid.

    All three agree up to a positive factor per diagonal, so extraction gives
    identical coefficients.
    """
    CouplingSpec(j1, j2, n)
    if route == "product":
        lv = _divided_by_gcd(lambda_minus_v_pow(j1, j2, n))
        return hadamard_signed(lv, tilde_omega(j1, j2, n))
    if route == "tilde_squared":
        squared = signed_square(tilde_omega(j1, j2, n))
        recip = omega0_reciprocal(j1, j2)
        return _build(
            j1, j2, n, lambda u1, u2: squared.cells[u1][u2] * recip.cells[u1][u2]
        )
    if route == "lv_squared":
        squared = signed_square(lambda_minus_v_pow(j1, j2, n))
        base = omega0(j1, j2)
        return _build(
            j1, j2, n, lambda u1, u2: squared.cells[u1][u2] * base.cells[u1][u2]
        )
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")


def extract_cg(m: OmegaMatrix, u1: int, u2: int) -> SqrtRational:
    """Coefficient at (u1, u2): signed square root of cell over diagonal abs-sum.

    Cells on all-zero diagonals are genuinely forbidden couplings and give 0.
    """
    value = m.cell(u1, u2)
    if value == 0:
        return ZERO
    return from_signed_ratio(value, abs(value), m.diagonal_abs_sum(u1 + u2))


def stretched_cg(j1: TwoJ, m1: Projection, j2: TwoJ, m2: Projection) -> SqrtRational:
    """Closed form for the maximum coupling J = J1+J2, M = M1+M2.

    Equals sqrt( (2J1)!(2J2)!/(2J)! * (J+M)!(J-M)! / ((J1+M1)!(J1-M1)!(J2+M2)!(J2-M2)!) ),
    always non-negative; must agree with extraction from the n=0 grid.
    """
    u1, u2 = u_of(j1, m1), u_of(j2, m2)
    t1, t2 = j1.twice, j2.twice
    u, d = u1 + u2, (t1 - u1) + (t2 - u2)
    num = math.factorial(t1) * math.factorial(t2) * math.factorial(u) * math.factorial(d)
    den = (
        math.factorial(t1 + t2)
        * math.factorial(u1)
        * math.factorial(t1 - u1)
        * math.factorial(u2)
        * math.factorial(t2 - u2)
    )
    return from_signed_ratio(1, num, den)
