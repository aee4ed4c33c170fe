"""Independent oracles for the matrix engine.

Two deliberately separate computations of the same coefficients:

* an exact closed-form factorial sum, evaluated in rational arithmetic and
  returned as a canonical :class:`~cgexact.exactval.SqrtRational`;
* a numerical lowering-operator recursion carried out in software floating
  point with a caller-chosen number of significant digits.

:func:`verify_against_oracles` runs the matrix engine against both, plus the
exactly checkable structural properties (unitarity, orthogonality, reflection
symmetry), and reports every mismatch.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import omega as omega_mod
from . import tables as tables_mod
from .exactval import SqrtRational, ZERO, from_signed_ratio, to_text
from .halfint import CouplingSpec, Projection, TwoJ, allowed_total_j, u_of

__all__ = [
    "PrecisionExhausted",
    "RacahTermSum",
    "racah_term_sum",
    "racah_cg",
    "lowering_recursion_table",
    "VerificationReport",
    "verify_against_oracles",
]


class PrecisionExhausted(RuntimeError):
    """The numerical recursion lost too much precision to be trusted."""


@dataclass(frozen=True)
class RacahTermSum:
    """Exact pieces of the closed form: a positive common radicand and the
    signed rational alternating sum.  The coefficient itself is
    sign(term_sum) * sqrt(term_sum**2 * prefactor)."""

    prefactor: Fraction
    term_sum: Fraction

    def value(self) -> SqrtRational:
        if self.term_sum == 0:
            return ZERO
        radicand = self.term_sum * self.term_sum * self.prefactor
        return from_signed_ratio(
            -1 if self.term_sum < 0 else 1, radicand.numerator, radicand.denominator
        )


def racah_term_sum(
    j1: TwoJ, m1: Projection, j2: TwoJ, m2: Projection, total: TwoJ
) -> RacahTermSum:
    """Exact alternating factorial sum for <(M1,M2)|J, M1+M2>.

    The summation index runs over all k with non-negative factorial
    arguments; an empty range means the coefficient vanishes.
    """
    spec = CouplingSpec.from_total(j1, j2, total)
    n = spec.n
    u1, u2 = u_of(j1, m1), u_of(j2, m2)
    d1, d2 = j1.twice - u1, j2.twice - u2

    k_lo = max(0, n - u1, n - d2)
    k_hi = min(n, d1, u2)
    if k_lo > k_hi:
        return RacahTermSum(Fraction(1), Fraction(0))

    term_sum = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        denom = (
            math.factorial(d1 - k)
            * math.factorial(u1 - n + k)
            * math.factorial(d2 - n + k)
            * math.factorial(u2 - k)
        )
        term_sum += Fraction((-1) ** k * math.comb(n, k), denom)

    u, d = u1 + u2 - n, d1 + d2 - n
    j = j1.twice + j2.twice - 2 * n
    prefactor = Fraction(
        (j + 1)
        * math.factorial(u)
        * math.factorial(d)
        * math.factorial(j1.twice - n)
        * math.factorial(j2.twice - n)
        * math.factorial(u1)
        * math.factorial(d1)
        * math.factorial(u2)
        * math.factorial(d2),
        math.factorial(j + 1 + n) * math.factorial(n),
    )
    return RacahTermSum(prefactor, term_sum)


def racah_cg(
    j1: TwoJ,
    m1: Projection,
    j2: TwoJ,
    m2: Projection,
    total: TwoJ,
    total_m: Projection | None = None,
) -> SqrtRational:
    """Exact coefficient <(M1,M2)|J,M> from the closed-form factorial sum.

    M is implied as M1+M2; passing an explicit ``total_m`` that differs
    returns 0 (selection rule).  Invalid quantum numbers raise.
    """
    if total_m is not None and total_m.twice_m != m1.twice_m + m2.twice_m:
        u_of(j1, m1)
        u_of(j2, m2)
        CouplingSpec.from_total(j1, j2, total)
        return ZERO
    return racah_term_sum(j1, m1, j2, m2, total).value()


def _basis(t1: int, t2: int, two_m: int) -> list[tuple[int, int]]:
    """(2m1, 2m2) pairs with m1+m2 = M, ordered by decreasing m1."""
    hi = min(t1, two_m + t2)
    lo = max(-t1, two_m - t2)
    return [(tm1, two_m - tm1) for tm1 in range(hi, lo - 1, -2)]


def lowering_recursion_table(
    j1: TwoJ, j2: TwoJ, precision_digits: int = 50
) -> dict[tuple[int, int, int, int], mpmath.mpf]:
    """Approximate coefficients by repeated lowering from each top state.

    For each total J in decreasing order the M=J state is seeded as the unit
    vector orthogonal to every previously built state of the same M, with the
    component on the largest-M1 basis state taken positive; lowering then
    fills in all smaller M.  Arithmetic uses ``precision_digits`` significant
    digits (minimum 30); if the seed fails its orthogonality check,
    :class:`PrecisionExhausted` is raised.

    Returns a dense map (2J, 2M, 2M1, 2M2) -> mpf over all allowed states.
    """
    if precision_digits < 30:
        raise ValueError("precision_digits must be >= 30")
    t1, t2 = j1.twice, j2.twice
    residual_tol = mpmath.mpf(10) ** (-precision_digits // 2)
    table: dict[tuple[int, int, int, int], mpmath.mpf] = {}

    with mpmath.workdps(precision_digits + 10):
        for two_j in range(t1 + t2, abs(t1 - t2) - 1, -2):
            top = _basis(t1, t2, two_j)
            previous = [
                [table[(two_jp, two_j, tm1, tm2)] for (tm1, tm2) in top]
                for two_jp in range(t1 + t2, two_j, -2)
            ]

            vec = [mpmath.mpf(1 if i == 0 else 0) for i in range(len(top))]
            for prev in previous:
                dot = mpmath.fsum(p * v for p, v in zip(prev, vec))
                vec = [v - dot * p for v, p in zip(vec, prev)]
            norm = mpmath.sqrt(mpmath.fsum(v * v for v in vec))
            if norm < residual_tol:
                raise PrecisionExhausted(
                    f"seed for J={TwoJ(two_j)} collapsed under orthogonalization"
                )
            vec = [v / norm for v in vec]
            if vec[0] < 0:
                vec = [-v for v in vec]
            for prev in previous:
                if abs(mpmath.fsum(p * v for p, v in zip(prev, vec))) > residual_tol:
                    raise PrecisionExhausted(
                        f"orthogonality residual too large at J={TwoJ(two_j)}"
                    )

            state = dict(zip(top, vec))
            for (tm1, tm2), v in state.items():
                table[(two_j, two_j, tm1, tm2)] = v

            for two_m in range(two_j, -two_j + 1, -2):
                lowered: dict[tuple[int, int], mpmath.mpf] = {}
                for tm1, tm2 in _basis(t1, t2, two_m - 2):
                    acc = mpmath.mpf(0)
                    up = state.get((tm1 + 2, tm2))
                    if up is not None:
                        acc += up * mpmath.sqrt(
                            mpmath.mpf((t1 + tm1 + 2) * (t1 - tm1)) / 4
                        )
                    right = state.get((tm1, tm2 + 2))
                    if right is not None:
                        acc += right * mpmath.sqrt(
                            mpmath.mpf((t2 + tm2 + 2) * (t2 - tm2)) / 4
                        )
                    lowered[(tm1, tm2)] = acc / mpmath.sqrt(
                        mpmath.mpf((two_j + two_m) * (two_j - two_m + 2)) / 4
                    )
                state = lowered
                for (tm1, tm2), v in state.items():
                    table[(two_j, two_m - 2, tm1, tm2)] = v

    return table


@dataclass
class VerificationReport:
    """Outcome of cross-checking one (J1, J2) pair against the oracles."""

    two_j1: int
    two_j2: int
    checks_run: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, passed: bool, **info) -> None:
        self.checks_run += 1
        if not passed:
            self.failures.append(info)

    def to_json_dict(self) -> dict:
        return {
            "pair": [self.two_j1, self.two_j2],
            "checks_run": self.checks_run,
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def verify_against_oracles(
    j1: TwoJ,
    j2: TwoJ,
    precision_digits: int = 50,
    include_recursion: bool = True,
) -> VerificationReport:
    """Cross-check every coefficient of a pair by every available means.

    Exact checks: every construction route equals the closed-form oracle on
    every coefficient; columns over J are unit vectors; rows of equal M are
    orthonormal; grids obey the reflection symmetry with factor (-1)^n.
    Numerical check: the lowering recursion agrees within
    10**(-precision_digits + 10).  Failures become report entries, not
    exceptions.
    """
    report = VerificationReport(j1.twice, j2.twice)
    t1, t2 = j1.twice, j2.twice

    route_tables = {
        route: tables_mod.build_table(j1, j2, route) for route in omega_mod.ROUTES
    }
    reference = route_tables["product"]

    exact: dict[tuple[int, int, int, int], SqrtRational] = {}
    for key in reference.entries:
        two_j, _, tm1, tm2 = key
        exact[key] = racah_cg(j1, Projection(tm1), j2, Projection(tm2), TwoJ(two_j))

    for route, table in route_tables.items():
        for key, value in table.entries.items():
            report.record(
                value == exact[key],
                kind="oracle_equality",
                route=route,
                J=key[0],
                M=key[1],
                M1=key[2],
                M2=key[3],
                engine=to_text(value),
                oracle=to_text(exact[key]),
            )

    # Unit norm of each uncoupled state across all J it can couple to.
    for tm1 in range(-t1, t1 + 1, 2):
        for tm2 in range(-t2, t2 + 1, 2):
            total = Fraction(0)
            for two_j in allowed_total_j(j1, j2):
                value = exact.get((two_j.twice, tm1 + tm2, tm1, tm2))
                if value is not None:
                    total += Fraction(value.num, value.den)
            report.record(
                total == 1,
                kind="unitarity",
                M1=tm1,
                M2=tm2,
                engine=str(total),
                oracle="1",
            )

    # Orthonormality of coupled states sharing M, summed as exact radicals.
    for two_ja in (j.twice for j in allowed_total_j(j1, j2)):
        for two_jb in (j.twice for j in allowed_total_j(j1, j2)):
            if two_jb > two_ja:
                continue
            for two_m in range(-two_jb, two_jb + 1, 2):
                acc = ZERO
                for tm1, tm2 in _basis(t1, t2, two_m):
                    va = exact.get((two_ja, two_m, tm1, tm2), ZERO)
                    vb = exact.get((two_jb, two_m, tm1, tm2), ZERO)
                    acc = acc + va * vb
                expected = "1" if two_ja == two_jb else "0"
                report.record(
                    to_text(acc) == expected,
                    kind="orthonormality",
                    J=two_ja,
                    M=two_m,
                    engine=to_text(acc),
                    oracle=expected,
                )

    # Reflection symmetry of each grid: cell -> (-1)^n mirrored cell.
    for n in range(min(t1, t2) + 1):
        grid = omega_mod.omega_n(j1, j2, n)
        flip = -1 if n % 2 else 1
        for u1 in range(t1 + 1):
            for u2 in range(t2 + 1):
                lhs = omega_mod.extract_cg(grid, u1, u2)
                rhs = omega_mod.extract_cg(grid, t1 - u1, t2 - u2)
                if flip < 0:
                    rhs = -rhs
                report.record(
                    lhs == rhs,
                    kind="reflection",
                    J=t1 + t2 - 2 * n,
                    M=2 * (u1 + u2) - t1 - t2,
                    M1=2 * u1 - t1,
                    M2=2 * u2 - t2,
                    engine=to_text(lhs),
                    oracle=to_text(rhs),
                )

    if include_recursion:
        tol = mpmath.mpf(10) ** (-precision_digits + 10)
        approx = lowering_recursion_table(j1, j2, precision_digits)
        with mpmath.workdps(precision_digits + 10):
            for key, value in exact.items():
                target = value.sign * mpmath.sqrt(
                    mpmath.mpf(value.num) / mpmath.mpf(value.den)
                )
                got = approx[key]
                report.record(
                    abs(got - target) < tol,
                    kind="recursion",
                    J=key[0],
                    M=key[1],
                    M1=key[2],
                    M2=key[3],
                    engine=mpmath.nstr(got, 25),
                    oracle=to_text(value),
                )

    return report
