import json
from fractions import Fraction

import pytest

from cgexact.exactval import ZERO, add, from_signed_ratio, mul
from cgexact.halfint import TwoJ
from cgexact.omega import ROUTES
from cgexact.tables import CSV_HEADER, build_table, parse_json, render

ONE_ONE = (TwoJ(2), TwoJ(2))
HALF_HALF = (TwoJ(1), TwoJ(1))


def test_one_one_entry_count_and_rows():
    table = build_table(*ONE_ONE)
    assert len(table.entries) == 19

    # All five top rows of the 1 x 1 coupling.
    assert table.value(4, 4, 2, 2) == from_signed_ratio(1, 1, 1)
    assert table.value(4, 2, 2, 0) == from_signed_ratio(1, 2, 4)
    assert table.value(4, 2, 0, 2) == from_signed_ratio(1, 2, 4)
    assert table.value(4, 0, 2, -2) == from_signed_ratio(1, 1, 6)
    assert table.value(4, 0, 0, 0) == from_signed_ratio(1, 4, 6)
    assert table.value(4, 0, -2, 2) == from_signed_ratio(1, 1, 6)
    assert table.value(4, -2, 0, -2) == from_signed_ratio(1, 2, 4)
    assert table.value(4, -2, -2, 0) == from_signed_ratio(1, 2, 4)
    assert table.value(4, -4, -2, -2) == from_signed_ratio(1, 1, 1)


def test_half_half_rows():
    table = build_table(*HALF_HALF)
    assert len(table.entries) == 4 + 2  # triplet (4 states over 3 M) + singlet pair
    assert table.value(2, 0, 1, -1) == from_signed_ratio(1, 1, 2)
    assert table.value(2, 0, -1, 1) == from_signed_ratio(1, 1, 2)
    assert table.value(0, 0, 1, -1) == from_signed_ratio(1, 1, 2)
    assert table.value(0, 0, -1, 1) == from_signed_ratio(-1, 1, 2)


def test_scalar_pair_table():
    table = build_table(TwoJ(0), TwoJ(0))
    assert table.entries == {(0, 0, 0, 0): from_signed_ratio(1, 1, 1)}


def test_three_halves_one_row():
    table = build_table(TwoJ(3), TwoJ(2))
    assert table.value(3, 1, 3, -2) == from_signed_ratio(1, 6, 15)
    assert table.value(3, 1, 1, 0) == from_signed_ratio(1, 1, 15)
    assert table.value(3, 1, -1, 2) == from_signed_ratio(-1, 8, 15)


def test_implied_zeros_on_lookup():
    table = build_table(*ONE_ONE)
    assert table.value(4, 2, 2, 2) == ZERO  # M != M1+M2
    assert table.value(2, 4, 2, 2) == ZERO  # |M| > J
    assert table.value(6, 0, 0, 0) == ZERO  # J out of range


def test_entry_count_formula():
    for t1, t2 in [(0, 0), (1, 1), (2, 2), (3, 2), (4, 5), (6, 3)]:
        table = build_table(TwoJ(t1), TwoJ(t2))
        expected = 0
        for n in range(min(t1, t2) + 1):
            for u_sum in range(n, t1 + t2 - n + 1):
                lo, hi = max(0, u_sum - t2), min(t1, u_sum)
                expected += hi - lo + 1
        assert len(table.entries) == expected


def test_route_independence():
    for t1, t2 in [(1, 1), (2, 2), (3, 2), (4, 4), (5, 3)]:
        tables = [build_table(TwoJ(t1), TwoJ(t2), route) for route in ROUTES]
        assert tables[0].entries == tables[1].entries == tables[2].entries


def test_unitarity_both_directions():
    for t1, t2 in [(2, 2), (3, 2), (4, 3)]:
        table = build_table(TwoJ(t1), TwoJ(t2))
        by_uncoupled: dict[tuple[int, int], Fraction] = {}
        for (two_j, two_m, tm1, tm2), v in table.entries.items():
            by_uncoupled.setdefault((tm1, tm2), Fraction(0))
            by_uncoupled[(tm1, tm2)] += Fraction(v.num, v.den)
        assert all(total == 1 for total in by_uncoupled.values())

        coupled = sorted({(k[0], k[1]) for k in table.entries})
        for two_ja, two_ma in coupled:
            for two_jb, two_mb in coupled:
                if two_ma != two_mb:
                    continue
                acc = ZERO
                for tm1 in range(-t1, t1 + 1, 2):
                    tm2 = two_ma - tm1
                    acc = add(
                        acc,
                        mul(
                            table.value(two_ja, two_ma, tm1, tm2),
                            table.value(two_jb, two_mb, tm1, tm2),
                        ),
                    )
                expected = from_signed_ratio(1, 1, 1) if two_ja == two_jb else ZERO
                assert acc == expected


def test_render_text_golden():
    text = render(build_table(*ONE_ONE), "text")
    lines = text.splitlines()
    assert lines[0] == "|2,2> = |(1,1)>"
    assert lines[1] == "|2,1> = sqrt(2/4)|(1,0)> + sqrt(2/4)|(0,1)>"
    assert lines[2] == "|2,0> = sqrt(1/6)|(1,-1)> + sqrt(4/6)|(0,0)> + sqrt(1/6)|(-1,1)>"


def test_render_text_half_half():
    text = render(build_table(*HALF_HALF), "text")
    assert text.splitlines() == [
        "|1,1> = |(1/2,1/2)>",
        "|1,0> = sqrt(1/2)|(1/2,-1/2)> + sqrt(1/2)|(-1/2,1/2)>",
        "|1,-1> = |(-1/2,-1/2)>",
        "|0,0> = sqrt(1/2)|(1/2,-1/2)> - sqrt(1/2)|(-1/2,1/2)>",
    ]


def test_render_csv_schema():
    table = build_table(*HALF_HALF)
    lines = render(table, "csv").splitlines()
    assert lines[0] == "twoJ,twoM,twoM1,twoM2,sign,num,den"
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + len(table.entries)
    assert lines[1] == "2,2,1,1,1,1,1"

    with_decimal = render(table, "csv", digits=6).splitlines()
    assert with_decimal[0] == "twoJ,twoM,twoM1,twoM2,sign,num,den,decimal"
    assert with_decimal[2].endswith("0.707107")


def test_render_json_roundtrip():
    for t1, t2, route in [(2, 2, "product"), (3, 2, "tilde_squared"), (1, 4, "lv_squared")]:
        table = build_table(TwoJ(t1), TwoJ(t2), route)
        assert parse_json(render(table, "json")) == table
        assert parse_json(render(table, "json", digits=8)) == table


def test_render_json_content():
    payload = json.loads(render(build_table(*HALF_HALF), "json", digits=5))
    assert payload["twoJ1"] == 1 and payload["twoJ2"] == 1
    assert payload["route"] == "product"
    first = payload["entries"][0]
    assert first == {
        "twoJ": 2, "twoM": 2, "twoM1": 1, "twoM2": 1,
        "sign": 1, "num": "1", "den": "1", "decimal": "1.0000",
    }
    assert {"twoJ": 2, "twoM": 2, "absSum": "1"} in payload["diagonalSums"]


def test_render_unknown_format():
    with pytest.raises(ValueError):
        render(build_table(*HALF_HALF), "yaml")
