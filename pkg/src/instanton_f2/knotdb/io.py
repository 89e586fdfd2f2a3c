"""JSON knot database: parsing, validation and serialization."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from ..errors import KnotDBParseError, KnotDBValidationError
from .families import FAMILIES
from .records import BOOL_FIELDS, INT_FIELDS, KnotRecord, validate
from .table import KnotTable

ENV_VAR = "KNOTDB_PATH"
_KNOWN = {"name", "provenance", "upper_bound_fields", *INT_FIELDS, *BOOL_FIELDS}
_PROVENANCE_KINDS = ("paper-fixture", "derived")


def _line_of(text: str, name: str) -> int | None:
    needle = json.dumps(name)
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _where(text: str, index: int, name: str | None) -> str:
    loc = f"record {index}"
    if name:
        loc += f" ({name!r}"
        line = _line_of(text, name)
        loc += f", line {line})" if line else ")"
    return loc


def _parse_record(obj: dict, index: int, text: str) -> KnotRecord:
    name = obj.get("name")
    where = _where(text, index, name if isinstance(name, str) else None)
    if not isinstance(name, str) or not name:
        raise KnotDBParseError(f"{where}: field 'name' must be a nonempty string")
    unknown = set(obj) - _KNOWN
    if unknown:
        raise KnotDBParseError(f"{where}: unknown field(s) {', '.join(sorted(unknown))}")
    kwargs: dict = {"name": name}
    for f in INT_FIELDS:
        if f in obj and obj[f] is not None:
            v = obj[f]
            if isinstance(v, bool) or not isinstance(v, int):
                raise KnotDBParseError(f"{where}: field {f!r} must be an integer, got {v!r}")
            kwargs[f] = v
    for f in BOOL_FIELDS:
        if f in obj and obj[f] is not None:
            if not isinstance(obj[f], bool):
                raise KnotDBParseError(f"{where}: field {f!r} must be a boolean, got {obj[f]!r}")
            kwargs[f] = obj[f]
    prov = obj.get("provenance", {})
    if not isinstance(prov, dict) or not all(isinstance(v, str) for v in prov.values()):
        raise KnotDBParseError(f"{where}: field 'provenance' must map field names to strings")
    for f in ("r2", "M"):
        if f in kwargs:
            note = prov.get(f, "")
            if not note.startswith(_PROVENANCE_KINDS):
                raise KnotDBParseError(
                    f"{where}: field {f!r} needs a provenance note starting with "
                    "'paper-fixture' or 'derived'"
                )
    ub = obj.get("upper_bound_fields", [])
    if not isinstance(ub, list) or not all(isinstance(x, str) and x in INT_FIELDS for x in ub):
        raise KnotDBParseError(f"{where}: 'upper_bound_fields' must list integer field names")
    return KnotRecord(provenance=dict(prov), upper_bound_fields=frozenset(ub), **kwargs)


def _parse_family(obj: dict, index: int):
    kind = obj.get("family")
    if kind not in FAMILIES:
        raise KnotDBParseError(f"record {index}: unknown family {kind!r}")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise KnotDBParseError(f"record {index}: family params must be an object")
    return FAMILIES[kind](**params)


def loads(source: bytes | str, *, strict: bool = True) -> KnotTable:
    """Parse a database document.

    The document is either a top-level array of record/family objects, or an
    object ``{"knots": [...], "constraints": [...]}``.  With ``strict`` every
    explicit record must pass :func:`validate`.
    """
    text = source.decode("utf-8") if isinstance(source, (bytes, bytearray)) else source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise KnotDBParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    constraints: list = []
    if isinstance(doc, dict):
        items = doc.get("knots", [])
        constraints = doc.get("constraints", [])
        if not isinstance(constraints, list) or not all(isinstance(c, dict) for c in constraints):
            raise KnotDBParseError("'constraints' must be an array of objects")
    else:
        items = doc
    if not isinstance(items, list):
        raise KnotDBParseError("database must be an array of records")
    records, families = [], []
    for i, obj in enumerate(items):
        if not isinstance(obj, dict):
            raise KnotDBParseError(f"record {i}: expected an object")
        if "family" in obj:
            families.append(_parse_family(obj, i))
            continue
        rec = _parse_record(obj, i, text)
        if strict:
            problems = validate(rec)
            if problems:
                raise KnotDBValidationError(rec.name, problems)
        records.append(rec)
    return KnotTable(records, families, constraints)


def load(stream, *, strict: bool = True) -> KnotTable:
    """Load from a binary or text stream (or the raw document itself)."""
    if isinstance(stream, (bytes, bytearray, str)):
        return loads(stream, strict=strict)
    return loads(stream.read(), strict=strict)


def dumps(table: KnotTable) -> str:
    items = [table[name].to_dict() for name in table]
    items.extend(f.to_dict() for f in table.families)
    doc: object = items
    if table.constraints:
        doc = {"knots": items, "constraints": list(table.constraints)}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def default_source() -> bytes:
    return resources.files("instanton_f2").joinpath("data/knots.json").read_bytes()


def default_table() -> KnotTable:
    return loads(default_source())


def open_table(path: str | os.PathLike | None = None, *, strict: bool = True) -> KnotTable:
    """Database from ``path``, else ``$KNOTDB_PATH``, else the bundled default."""
    path = path or os.environ.get(ENV_VAR)
    if path:
        return loads(Path(path).read_bytes(), strict=strict)
    return loads(default_source(), strict=strict)
