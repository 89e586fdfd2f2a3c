from __future__ import annotations

from collections.abc import Iterator, Mapping

from ..errors import KnotDBValidationError
from .families import Family
from .records import KnotRecord, mirror, mirror_name, validate


class KnotTable(Mapping):
    """Named knot records plus parametric families.

    Lookups of family members (``K_5``, ``P(2,-3,3)``, ``T(3,5)``) and of
    mirrors (``m(3_1)``) materialize validated records on first access.
    """

    def __init__(self, records=(), families=(), constraints=()):
        self._records: dict[str, KnotRecord] = {}
        for rec in records:
            if rec.name in self._records:
                raise KnotDBValidationError(rec.name, ["duplicate record name"])
            self._records[rec.name] = rec
        self.families: tuple[Family, ...] = tuple(families)
        self.constraints: tuple[dict, ...] = tuple(constraints)
        self._cache: dict[str, KnotRecord] = {}

    def __getitem__(self, name: str) -> KnotRecord:
        if name in self._records:
            return self._records[name]
        if name in self._cache:
            return self._cache[name]
        rec = self._materialize(name)
        if rec is None:
            raise KeyError(name)
        problems = validate(rec)
        if problems:
            raise KnotDBValidationError(name, problems)
        self._cache[name] = rec
        return rec

    def _materialize(self, name: str) -> KnotRecord | None:
        for fam in self.families:
            params = fam.parse_name(name)
            if params is not None:
                return fam.make(params)
        if name.startswith("m(") and name.endswith(")"):
            inner = mirror_name(name)
            if inner in self:
                return mirror(self[inner])
        return None

    def __contains__(self, name) -> bool:
        if name in self._records:
            return True
        try:
            self[name]
        except KeyError:
            return False
        return True

    def __iter__(self) -> Iterator[str]:
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def family(self, kind: str) -> Family | None:
        for fam in self.families:
            if fam.kind == kind:
                return fam
        return None

    def fixture_knots(self, twist_limit: int = 20, pretzel_limit: int = 5) -> list[KnotRecord]:
        """Explicit records plus a finite slice of every r2/M-carrying family."""
        out = list(self._records.values())
        for fam in self.families:
            if fam.kind == "twist":
                out.extend(self[r.name] for r in fam.instances(twist_limit))
            elif fam.kind == "pretzel":
                out.extend(self[r.name] for r in fam.instances(pretzel_limit))
        return out

    def with_records(self, *records: KnotRecord) -> KnotTable:
        merged = dict(self._records)
        for r in records:
            merged[r.name] = r
        return KnotTable(merged.values(), self.families, self.constraints)

    def with_constraints(self, constraints) -> KnotTable:
        return KnotTable(self._records.values(), self.families, constraints)
