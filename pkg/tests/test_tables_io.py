"""Table emission: golden fragments, determinism, and reparse round-trips."""

from fractions import Fraction

import pytest

from orbifock.tables import emit_tables, parse_tables, table_actions
from orbifock.toplevel import TopLevelAction, evaluate
from orbifock.zhu import s_pair

F = Fraction


def test_row_counts():
    rows = table_actions(2)
    assert len(rows) == 15 + 15 + 10
    by_table = {}
    for tnum, *_ in rows:
        by_table[tnum] = by_table.get(tnum, 0) + 1
    assert by_table == {1: 15, 2: 15, 3: 10}


def test_csv_fragments_and_determinism():
    text = emit_tables(2, "csv")
    assert emit_tables(2, "csv") == text
    line = next(l for l in text.splitlines() if l.startswith('1,"S(1,1;2,4)",Tminus')
                or ("S(1,1;2,4)" in l and "Tminus" in l))
    assert "-35/32" in line and "-5/32" in line
    assert "315/256" in text and "35/256" in text
    assert "1/16" in text and "3/128" in text


def test_rank_one_matrices_error():
    with pytest.raises(ValueError):
        emit_tables(1, "csv")


def test_csv_round_trip():
    for rank in (2, 3):
        text = emit_tables(rank, "csv")
        rows = parse_tables(text, "csv", rank)
        assert rows == [tuple(r) for r in table_actions(rank)]


def test_json_round_trip():
    text = emit_tables(3, "json")
    rows = parse_tables(text, "json")
    want = table_actions(3)
    assert rows == want
    # Round-tripped actions are usable objects, not strings.
    S14 = next(a for _, label, fam, a in rows
               if label == "S(1,1;2,4)" and fam == "Tminus")
    assert isinstance(S14, TopLevelAction)
    assert S14 == evaluate(s_pair(3, 1, 1, 2, 4), "Tminus")


def test_bad_format_rejected():
    with pytest.raises(ValueError):
        emit_tables(2, "xml")
    with pytest.raises(ValueError):
        parse_tables("x", "xml")
