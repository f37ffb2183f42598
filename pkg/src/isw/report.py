"""AnalysisReport: everything the CLI knows how to say about one semigroup.

Each section is a dict with ``"status": "ok"`` plus its values, or
``"status": "skipped"`` plus a ``"reason"`` when a guard or budget stopped it.
"""
from __future__ import annotations

import json
from importlib import resources

from .centrality import center_congruence
from .config import DEFAULT_ENUM_ORDER, DEFAULT_MALCEV_LEVEL, default_budget
from .congruence import enumerate_congruences
from .conjugation import metacenter
from .errors import BudgetExceeded, OrderTooLarge
from .semigroup import (
    InverseSemigroup,
    classical_center,
    green_relations,
    is_clifford,
    is_group,
)
from .series import (
    conjecture_check,
    is_malcev_nilpotent,
    is_nilpotent,
    is_solvable,
    kmm_kernel_series,
    malcev_relation,
    tolerance_violation,
    upper_central_series,
)

SCHEMA_ID = "isw.report/1"
DEFAULT_MAX_N = 3

_SKIPPABLE = (BudgetExceeded, OrderTooLarge)


def _section(fn):
    try:
        return {"status": "ok", **fn()}
    except _SKIPPABLE as e:
        return {"status": "skipped", "reason": f"{type(e).__name__}: {e}"}


def _malcev(S, max_level, budget):
    # walk the levels by hand so a budget stop still reports what was checked
    checked = -1
    for n in range(max_level + 1):
        try:
            ok = is_malcev_nilpotent(S, n, budget)
        except BudgetExceeded as e:
            return {"status": "skipped", "reason": f"BudgetExceeded: {e}", "checked_up_to": checked}
        checked = n
        if ok:
            return {"status": "ok", "class": n, "checked_up_to": n}
    return {"status": "ok", "class": None, "checked_up_to": checked}


def _tolerance_rows(S, max_n, budget):
    rows = []
    for n in range(max_n + 1):
        try:
            v = tolerance_violation(S, malcev_relation(S, n, budget))
        except BudgetExceeded as e:
            rows.append({"n": n, "status": "skipped", "reason": f"BudgetExceeded: {e}"})
            continue
        rows.append({"n": n, "status": "ok", "is_tolerance": v is None, "violation": v})
    return rows


def build_report(S: InverseSemigroup, max_n=DEFAULT_MAX_N, budget=None,
                 max_order=DEFAULT_ENUM_ORDER, malcev_level=DEFAULT_MALCEV_LEVEL) -> dict:
    budget = default_budget() if budget is None else budget
    L, R, H = green_relations(S)
    doc = {
        "schema": SCHEMA_ID,
        "name": S.name,
        "order": S.order,
        "idempotents": len(S.idempotents),
        "green": {"L": L.num_blocks, "R": R.num_blocks, "H": H.num_blocks},
        "metacenter": sorted(metacenter(S)),
        "classical_center": sorted(classical_center(S)),
        "group": is_group(S),
        "clifford": is_clifford(S),
        "budget": budget,
    }
    doc["congruences"] = _section(lambda: {"count": len(enumerate_congruences(S, max_order))})
    doc["center_congruence"] = _section(
        lambda: {"blocks": center_congruence(S, max_order=max_order, budget=budget).to_json()["blocks"]})

    def nil():
        ok, klass = is_nilpotent(S, max_order)
        return {"holds": ok, "class": klass}

    def solv():
        ok, length = is_solvable(S, max_order)
        return {"holds": ok, "length": length}

    doc["nilpotent"] = _section(nil)
    doc["solvable"] = _section(solv)
    doc["kmm"] = _section(lambda: {"class": kmm_kernel_series(S, max_order).klass})
    doc["malcev"] = _malcev(S, malcev_level, budget)
    doc["malcev_tolerance"] = _tolerance_rows(S, max_n, budget)

    rows = []
    try:
        series = upper_central_series(S, max_order)
    except _SKIPPABLE as e:
        series = None
        reason = f"{type(e).__name__}: {e}"
    for n in range(max_n + 1):
        if series is None:
            rows.append({"n": n, "status": "skipped", "reason": reason})
            continue
        try:
            r = conjecture_check(S, n, budget=budget, series=series, max_order=max_order)
        except BudgetExceeded as e:
            rows.append({"n": n, "status": "skipped", "reason": f"BudgetExceeded: {e}"})
            continue
        rows.append({"n": n, "status": "ok", "holds": r.holds, "witness": r.witness})
    doc["conjecture"] = rows
    return doc


def load_schema() -> dict:
    text = resources.files("isw").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def format_text(doc: dict) -> str:
    """Short human-readable rendering of a report."""
    def val(sec, key):
        if sec["status"] != "ok":
            return f"skipped ({sec['reason']})"
        return sec[key]

    lines = [
        f"name: {doc['name']}",
        f"order: {doc['order']}   idempotents: {doc['idempotents']}",
        "green classes: L={L} R={R} H={H}".format(**doc["green"]),
        f"group: {doc['group']}   clifford: {doc['clifford']}",
        f"metacenter Z(S): {doc['metacenter']}",
        f"classical center C(S): {doc['classical_center']}",
        f"congruences: {val(doc['congruences'], 'count')}",
        f"center congruence: {val(doc['center_congruence'], 'blocks')}",
        f"nilpotent: {val(doc['nilpotent'], 'holds')} class {val(doc['nilpotent'], 'class')}",
        f"solvable: {val(doc['solvable'], 'holds')} length {val(doc['solvable'], 'length')}",
        f"KMM class: {val(doc['kmm'], 'class')}",
        f"Mal'cev class: {val(doc['malcev'], 'class')} (checked up to level {doc['malcev']['checked_up_to']})",
    ]
    for row in doc["malcev_tolerance"]:
        if row["status"] == "ok":
            lines.append(f"mu_{row['n']} tolerance: {row['is_tolerance']}")
        else:
            lines.append(f"mu_{row['n']} tolerance: skipped ({row['reason']})")
    for row in doc["conjecture"]:
        if row["status"] == "ok":
            lines.append(f"zeta_{row['n']} = H ∩ mu_{row['n']}: {row['holds']}")
        else:
            lines.append(f"zeta_{row['n']} = H ∩ mu_{row['n']}: skipped ({row['reason']})")
    return "\n".join(lines)
