"""Complete coupling tables for a (J1, J2) pair and their serializations.

A table maps (2J, 2M, 2M1, 2M2) to the exact coefficient for every state
allowed by the selection rules; keys ruled out by M != M1+M2 or |M| > J are
omitted from storage and read as zero.  The per-(J, M) absolute diagonal sums
are kept alongside so the text rendering can show each coefficient as the
unreduced cell count over the diagonal total.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterator

from . import omega as omega_mod
from .exactval import SqrtRational, ZERO, from_signed_ratio, to_decimal
from .halfint import TwoJ, format_twice

__all__ = ["FORMATS", "CGTable", "build_table", "render", "parse_json"]

FORMATS = ("text", "json", "csv")

CSV_HEADER = ["twoJ", "twoM", "twoM1", "twoM2", "sign", "num", "den"]


@dataclass(frozen=True)
class CGTable:
    """All coefficients of one (J1, J2) coupling, keyed by doubled integers."""

    j1: TwoJ
    j2: TwoJ
    route: str
    entries: dict[tuple[int, int, int, int], SqrtRational] = field(default_factory=dict)
    diagonal_abs_sums: dict[tuple[int, int], int] = field(default_factory=dict)

    def value(self, two_j: int, two_m: int, two_m1: int, two_m2: int) -> SqrtRational:
        """Stored coefficient, or zero for anything outside the selection rules."""
        return self.entries.get((two_j, two_m, two_m1, two_m2), ZERO)

    def sorted_keys(self) -> list[tuple[int, int, int, int]]:
        """Canonical order: J descending, then M descending, then M1 descending."""
        return sorted(self.entries, key=lambda k: (-k[0], -k[1], -k[2]))

    def blocks(self) -> Iterator[tuple[tuple[int, int], list[tuple[int, int, int, int]]]]:
        """Keys grouped per coupled state (J, M), in canonical order."""
        current: tuple[int, int] | None = None
        group: list[tuple[int, int, int, int]] = []
        for key in self.sorted_keys():
            jm = (key[0], key[1])
            if jm != current:
                if current is not None:
                    yield current, group
                current, group = jm, []
            group.append(key)
        if current is not None:
            yield current, group


def iter_omega_matrices(
    j1: TwoJ, j2: TwoJ, route: str = "product"
) -> Iterator[omega_mod.OmegaMatrix]:
    """The grids for n = 0 .. min(2J1, 2J2), largest total J first."""
    for n in range(min(j1.twice, j2.twice) + 1):
        yield omega_mod.omega_n(j1, j2, n, route)


def build_table(j1: TwoJ, j2: TwoJ, route: str = "product") -> CGTable:
    """Extract every coefficient of every allowed total J into one table."""
    t1, t2 = j1.twice, j2.twice
    entries: dict[tuple[int, int, int, int], SqrtRational] = {}
    sums: dict[tuple[int, int], int] = {}
    for grid in iter_omega_matrices(j1, j2, route):
        two_j = t1 + t2 - 2 * grid.n
        for u_sum in range(grid.n, t1 + t2 - grid.n + 1):
            two_m = 2 * u_sum - t1 - t2
            diag = grid.diagonal(u_sum)
            sums[(two_j, two_m)] = diag.abs_sum
            for u1, u2, cell in diag.entries:
                key = (two_j, two_m, 2 * u1 - t1, 2 * u2 - t2)
                entries[key] = from_signed_ratio(cell, abs(cell), diag.abs_sum)
    return CGTable(j1, j2, route, entries, sums)


def _ket(two_m1: int, two_m2: int) -> str:
    return f"|({format_twice(two_m1)},{format_twice(two_m2)})>"


def _render_text(table: CGTable) -> str:
    lines = []
    for (two_j, two_m), keys in table.blocks():
        parts: list[str] = []
        for key in keys:
            value = table.entries[key]
            if value.is_zero():
                continue
            total = table.diagonal_abs_sums[(two_j, two_m)]
            count = value.num * (total // value.den)
            coeff = "" if count == total else f"sqrt({count}/{total})"
            piece = coeff + _ket(key[2], key[3])
            if not parts:
                parts.append(("-" if value.sign < 0 else "") + piece)
            else:
                parts.append(("- " if value.sign < 0 else "+ ") + piece)
        lhs = f"|{format_twice(two_j)},{format_twice(two_m)}>"
        lines.append(f"{lhs} = " + " ".join(parts))
    return "\n".join(lines) + "\n"


def _render_json(table: CGTable, digits: int | None) -> str:
    rows = []
    for key in table.sorted_keys():
        value = table.entries[key]
        row = {
            "twoJ": key[0],
            "twoM": key[1],
            "twoM1": key[2],
            "twoM2": key[3],
            **value.to_json_dict(),
        }
        if digits is not None:
            row["decimal"] = to_decimal(value, digits)
        rows.append(row)
    payload = {
        "twoJ1": table.j1.twice,
        "twoJ2": table.j2.twice,
        "route": table.route,
        "entries": rows,
        "diagonalSums": [
            {"twoJ": two_j, "twoM": two_m, "absSum": str(total)}
            for (two_j, two_m), total in sorted(
                table.diagonal_abs_sums.items(), key=lambda kv: (-kv[0][0], -kv[0][1])
            )
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _render_csv(table: CGTable, digits: int | None) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = CSV_HEADER + (["decimal"] if digits is not None else [])
    writer.writerow(header)
    for key in table.sorted_keys():
        value = table.entries[key]
        row = [*key, value.sign, value.num, value.den]
        if digits is not None:
            row.append(to_decimal(value, digits))
        writer.writerow(row)
    return buffer.getvalue()


def render(table: CGTable, fmt: str = "text", digits: int | None = None) -> str:
    """Serialize a table; ``digits`` adds a decimal column to json/csv."""
    if fmt == "text":
        return _render_text(table)
    if fmt == "json":
        return _render_json(table, digits)
    if fmt == "csv":
        return _render_csv(table, digits)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse_json(text: str) -> CGTable:
    """Inverse of the json rendering; the optional decimal column is ignored."""
    payload = json.loads(text)
    entries = {
        (row["twoJ"], row["twoM"], row["twoM1"], row["twoM2"]): SqrtRational.from_json_dict(row)
        for row in payload["entries"]
    }
    sums = {
        (row["twoJ"], row["twoM"]): int(row["absSum"]) for row in payload["diagonalSums"]
    }
    return CGTable(
        TwoJ(payload["twoJ1"]), TwoJ(payload["twoJ2"]), payload["route"], entries, sums
    )
