"""Wall-time and integer-growth comparison of the two computation paths."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import tables as tables_mod
from .exactval import SqrtRational, from_signed_ratio
from .halfint import Projection, TwoJ
from .racah import racah_term_sum

__all__ = ["BenchReport", "run_benchmark"]


@dataclass
class BenchReport:
    two_j1: int
    two_j2: int
    route: str
    entry_count: int
    omega_seconds: float
    omega_max_cell_bits: int
    racah_seconds: float
    racah_max_term_bits: int
    samples: int
    mismatches: list[tuple[int, int, int, int]]

    @property
    def agreed(self) -> bool:
        return not self.mismatches

    def to_text(self) -> str:
        lines = [
            f"pair 2J1={self.two_j1} 2J2={self.two_j2} ({self.entry_count} coefficients)",
            f"matrix route ({self.route}): {self.omega_seconds:.3f}s, "
            f"largest cell {self.omega_max_cell_bits} bits",
            f"closed-form route: {self.racah_seconds:.3f}s, "
            f"largest term {self.racah_max_term_bits} bits",
        ]
        if self.agreed:
            lines.append(f"sampled {self.samples} coefficients: all equal")
        else:
            lines.append(
                f"sampled {self.samples} coefficients: "
                f"{len(self.mismatches)} MISMATCHES at {self.mismatches[:5]}"
            )
        return "\n".join(lines)


def run_benchmark(
    j1: TwoJ,
    j2: TwoJ,
    samples: int = 100,
    seed: int = 7041969,
    route: str = "product",
) -> BenchReport:
    """Build the full table by both paths, timing each and tracking bit growth.

    The matrix path constructs every grid and extracts every coefficient; the
    closed-form path evaluates the exact factorial sum for the same keys.
    ``samples`` randomly chosen coefficients are compared for exact equality.
    """
    t1, t2 = j1.twice, j2.twice

    start = time.perf_counter()
    max_cell_bits = 0
    engine: dict[tuple[int, int, int, int], SqrtRational] = {}
    for grid in tables_mod.iter_omega_matrices(j1, j2, route):
        two_j = t1 + t2 - 2 * grid.n
        for u_sum in range(grid.n, t1 + t2 - grid.n + 1):
            diag = grid.diagonal(u_sum)
            two_m = 2 * u_sum - t1 - t2
            for u1, u2, cell in diag.entries:
                max_cell_bits = max(max_cell_bits, abs(cell).bit_length())
                key = (two_j, two_m, 2 * u1 - t1, 2 * u2 - t2)
                engine[key] = from_signed_ratio(cell, abs(cell), diag.abs_sum)
    omega_seconds = time.perf_counter() - start

    start = time.perf_counter()
    max_term_bits = 0
    oracle: dict[tuple[int, int, int, int], SqrtRational] = {}
    for two_j, _, tm1, tm2 in engine:
        terms = racah_term_sum(j1, Projection(tm1), j2, Projection(tm2), TwoJ(two_j))
        max_term_bits = max(
            max_term_bits,
            terms.term_sum.numerator.bit_length(),
            terms.term_sum.denominator.bit_length(),
            terms.prefactor.numerator.bit_length(),
            terms.prefactor.denominator.bit_length(),
        )
        oracle[(two_j, tm1 + tm2, tm1, tm2)] = terms.value()
    racah_seconds = time.perf_counter() - start

    rng = random.Random(seed)
    picked = rng.sample(sorted(engine), min(samples, len(engine)))
    mismatches = [key for key in picked if engine[key] != oracle[key]]

    return BenchReport(
        two_j1=t1,
        two_j2=t2,
        route=route,
        entry_count=len(engine),
        omega_seconds=omega_seconds,
        omega_max_cell_bits=max_cell_bits,
        racah_seconds=racah_seconds,
        racah_max_term_bits=max_term_bits,
        samples=len(picked),
        mismatches=mismatches,
    )
