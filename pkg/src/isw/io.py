"""Reading and writing the JSON file formats.

Semigroups are stored either as a Cayley table::

    {"order": 5, "table": [[...], ...], "name": "B2"}

or as partial-bijection generators, closed inside IS(degree)::

    {"degree": 3, "generators": [[1, 2, null], ...], "name": "..."}

``dumps`` writes sorted keys and one table row per line, so a file
written twice is byte-identical.
"""
from __future__ import annotations

import json
from pathlib import Path

from .constructors import PartialBijection, close_partial_bijections
from .errors import FormatError
from .relations import Partition, Tolerance
from .semigroup import InverseSemigroup
from .terms import Term


def dumps(doc) -> str:
    """Canonical JSON text: sorted keys, two-space indent, short lists kept on one line."""
    def enc(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            if not obj:
                return "{}"
            items = [f'{pad}  {json.dumps(k)}: {enc(obj[k], depth + 1)}' for k in sorted(obj)]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(obj, (list, tuple)):
            if all(not isinstance(v, (dict, list, tuple)) for v in obj):
                return json.dumps(list(obj))
            flat = json.dumps(obj)
            if len(flat) <= 72 and "{" not in flat:
                return flat
            items = [pad + "  " + enc(v, depth + 1) for v in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return json.dumps(obj)
    return enc(doc, 0) + "\n"


def semigroup_to_json(S: InverseSemigroup) -> dict:
    return S.to_json()


def dump_semigroup(S: InverseSemigroup, path) -> None:
    Path(path).write_text(dumps(S.to_json()), encoding="utf-8")


def _int_rows(rows, what):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{what} must be a list of lists")
    for r in rows:
        for v in r:
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise FormatError(f"{what} entries must be integers, got {v!r}")
    return rows


def semigroup_from_json(doc) -> InverseSemigroup:
    """Build (and validate) a semigroup from either documented layout."""
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError("name must be a string")
    if "table" in doc:
        table = _int_rows(doc["table"], "table")
        if "order" in doc and doc["order"] != len(table):
            raise FormatError(f"order {doc['order']} but table has {len(table)} rows")
        return InverseSemigroup.from_cayley_table(table, name=name)
    if "generators" in doc:
        gens = _int_rows(doc["generators"], "generators")
        degree = doc.get("degree")
        if not isinstance(degree, int):
            raise FormatError("generator files need an integer degree")
        try:
            pbs = [PartialBijection(degree, tuple(g)) for g in gens]
        except ValueError as e:
            raise FormatError(str(e)) from e
        S, _ = close_partial_bijections(pbs, name=name)
        return S
    raise FormatError('expected a "table" or "generators" key')


def loads_semigroup(text: str) -> InverseSemigroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e}") from e
    return semigroup_from_json(doc)


def load_semigroup(path) -> InverseSemigroup:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    return loads_semigroup(text)


def congruence_from_json(S: InverseSemigroup, doc) -> Partition:
    return Partition.from_blocks(S.elements, doc["blocks"])


def tolerance_from_json(S: InverseSemigroup, doc) -> Tolerance:
    return Tolerance.from_pairs(S.order, [tuple(p) for p in doc["pairs"]])


def term_from_json(doc) -> Term:
    return Term.from_json(doc)
