"""Canonical top-level action tables, their emission and reparsing.

Three tables cover the generator actions on the five module families: the
quadratics h_1(-1)h_2(-m) for m = 1..5, the five matrix-unit/center
combinations, and the singlet generators w_1, J_1.  Emission is
deterministic, so files can serve as golden fixtures.
"""

from __future__ import annotations

import csv
import io
import json

from . import zhu
from .toplevel import FAMILIES, evaluate, parse_action

TABLE1_FAMILIES = ("Hminus", "Mlambda", "Tminus")
TABLE2_FAMILIES = ("Hminus", "Mlambda", "Tminus")
TABLE3_FAMILIES = FAMILIES


def _elements(rank):
    a, b = 1, 2
    t1 = [(f"S({a},1;{b},{m})", zhu.s_pair(rank, a, 1, b, m)) for m in range(1, 6)]
    t2 = [
        (f"Eu({a},{b})", zhu.e_u(rank, a, b)),
        (f"Eubar({b},{a})", zhu.e_u_bar(rank, b, a)),
        (f"Et({a},{b})", zhu.e_t(rank, a, b)),
        (f"Etbar({b},{a})", zhu.e_t_bar(rank, b, a)),
        (f"Lam({a},{b})", zhu.lam(rank, a, b)),
    ]
    t3 = [("w1", zhu.omega(rank, 1)), ("J1", zhu.jgen(rank, 1))]
    return {1: (t1, TABLE1_FAMILIES), 2: (t2, TABLE2_FAMILIES),
            3: (t3, TABLE3_FAMILIES)}


def table_actions(rank):
    """All (table, element, family, action) rows, in canonical order."""
    if rank < 2:
        raise ValueError("tables need rank at least 2")
    rows = []
    for tnum, (elements, families) in sorted(_elements(rank).items()):
        for label, vec in elements:
            for fam in families:
                rows.append((tnum, label, fam, evaluate(vec, fam)))
    return rows


def emit_tables(rank, fmt="csv"):
    """Serialize the tables; identical text across runs."""
    rows = table_actions(rank)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["table", "element", "family", "action"])
        for tnum, label, fam, action in rows:
            writer.writerow([tnum, label, fam, action.to_string()])
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "rank": rank,
            "rows": [{"table": tnum, "element": label, "family": fam,
                      "action": action.to_string()}
                     for tnum, label, fam, action in rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_tables(text, fmt, rank=None):
    """Reparse emitted tables into (table, element, family, action) rows."""
    out = []
    if fmt == "csv":
        if rank is None:
            raise ValueError("csv reparsing needs the rank")
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        if header != ["table", "element", "family", "action"]:
            raise ValueError("unrecognized table header")
        for tnum, label, fam, action in reader:
            out.append((int(tnum), label, fam, parse_action(action, fam, rank)))
        return out
    if fmt == "json":
        payload = json.loads(text)
        rank = payload["rank"] if rank is None else rank
        for row in payload["rows"]:
            out.append((row["table"], row["element"], row["family"],
                        parse_action(row["action"], row["family"], rank)))
        return out
    raise ValueError(f"unknown format {fmt!r}")
