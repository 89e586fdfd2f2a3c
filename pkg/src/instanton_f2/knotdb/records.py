"""Knot invariant ledgers and their algebra under mirroring and connected sum."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from ..errors import IncompleteRecordError

INT_FIELDS = (
    "r2",
    "M",
    "r0",
    "nu_sharp",
    "genus",
    "slice_genus",
    "clasp_plus",
    "clasp_minus",
    "abs_M_lo",
    "abs_M_hi",
    "abs_nu_sharp",
)
NONNEGATIVE_FIELDS = (
    "r2",
    "r0",
    "genus",
    "slice_genus",
    "clasp_plus",
    "clasp_minus",
    "abs_M_lo",
    "abs_M_hi",
    "abs_nu_sharp",
)
BOOL_FIELDS = ("lspace_f2", "torsion_averse")
FIELD_ORDER = ("name",) + INT_FIELDS[:8] + BOOL_FIELDS + INT_FIELDS[8:]


@dataclass(frozen=True)
class KnotRecord:
    """Invariant ledger for one knot.  ``None`` means the value is unknown.

    ``abs_M_lo``/``abs_M_hi`` bound |M| when the sign of M is not known, and
    ``abs_nu_sharp`` stores |nu#| in the same situation.  Fields named in
    ``upper_bound_fields`` hold upper bounds rather than exact values.
    """

    name: str
    r2: int | None = None
    M: int | None = None
    r0: int | None = None
    nu_sharp: int | None = None
    genus: int | None = None
    slice_genus: int | None = None
    clasp_plus: int | None = None
    clasp_minus: int | None = None
    lspace_f2: bool | None = None
    torsion_averse: bool | None = None
    abs_M_lo: int | None = None
    abs_M_hi: int | None = None
    abs_nu_sharp: int | None = None
    provenance: dict[str, str] = field(default_factory=dict, compare=False, hash=False)
    upper_bound_fields: frozenset[str] = frozenset()

    def require(self, *names: str, purpose: str = "") -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise IncompleteRecordError(self.name, missing, purpose)

    def replace(self, **changes) -> KnotRecord:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        out: dict = {"name": self.name}
        for f in FIELD_ORDER[1:]:
            v = getattr(self, f)
            if v is not None:
                out[f] = v
        if self.upper_bound_fields:
            out["upper_bound_fields"] = sorted(self.upper_bound_fields)
        if self.provenance:
            out["provenance"] = dict(sorted(self.provenance.items()))
        return out


def validate(K: KnotRecord) -> list[str]:
    """Violated structural constraints; each applies only when its fields are present."""
    out: list[str] = []
    for f in NONNEGATIVE_FIELDS:
        v = getattr(K, f)
        if v is not None and v < 0:
            out.append(f"{f} must be nonnegative")
    r2, M, r0, nu = K.r2, K.M, K.r0, K.nu_sharp
    if r2 is not None and r2 % 4:
        out.append("r2 not divisible by 4")
    if M is not None and M % 4:
        out.append("M not divisible by 4")
    if r2 is not None and M is not None and r2 < abs(M):
        out.append("r2 < |M|")
    if r2 is not None and r0 is not None:
        if r2 < r0:
            out.append("r2 < r0")
        if M is not None and nu is not None and r2 - r0 < abs(M - nu):
            out.append("r2 - r0 < |M - nu_sharp|")
    if K.lspace_f2:
        if r2 is not None and M is not None and r2 != abs(M):
            out.append("L-space flag requires r2 = |M|")
        if K.torsion_averse is False:
            out.append("L-space flag requires torsion_averse")
        # |nu#| = 2g - 1 holds for nontrivial L-space knots only
        if K.genus is not None and K.genus >= 1 and nu is not None and abs(nu) != 2 * K.genus - 1:
            out.append("L-space flag requires |nu_sharp| = 2*genus - 1")
    if K.torsion_averse and K.lspace_f2 is False:
        out.append("torsion-averse knots are L-space knots over F2")
    if K.torsion_averse and K.lspace_f2 is None and r2 is not None and M is not None and r2 != abs(M):
        out.append("torsion-averse flag requires r2 = |M|")
    lo, hi = K.abs_M_lo, K.abs_M_hi
    if lo is not None and hi is not None:
        if lo > hi or not any(v % 4 == 0 for v in range(lo, hi + 1)):
            out.append("|M| bounds admit no multiple of 4")
    if M is not None:
        if lo is not None and abs(M) < lo:
            out.append("|M| below abs_M_lo")
        if hi is not None and abs(M) > hi:
            out.append("|M| above abs_M_hi")
    if nu is not None and K.abs_nu_sharp is not None and abs(nu) != K.abs_nu_sharp:
        out.append("abs_nu_sharp disagrees with nu_sharp")
    return out


def _neg(v: int | None) -> int | None:
    return None if v is None else -v


def mirror_name(name: str) -> str:
    if name.startswith("m(") and name.endswith(")"):
        return name[2:-1]
    return f"m({name})"


def mirror(K: KnotRecord) -> KnotRecord:
    """Mirror image: M and nu# change sign, the clasp numbers trade places."""
    if K.name == "unknot":
        return K
    prov = {f: f"{note} [mirrored]" for f, note in K.provenance.items()}
    for f in ("M", "nu_sharp"):
        if getattr(K, f) is not None:
            prov[f] = f"derived: sign reversal under mirroring ({K.provenance.get(f, 'input')})"
    swap = {"clasp_plus": "clasp_minus", "clasp_minus": "clasp_plus"}
    for a, b in swap.items():
        if a in K.provenance:
            prov[b] = K.provenance[a] + " [mirrored]"
        else:
            prov.pop(b, None)
    ub = frozenset(swap.get(f, f) for f in K.upper_bound_fields)
    return K.replace(
        name=mirror_name(K.name),
        M=_neg(K.M),
        nu_sharp=_neg(K.nu_sharp),
        clasp_plus=K.clasp_minus,
        clasp_minus=K.clasp_plus,
        provenance=prov,
        upper_bound_fields=ub,
    )


def _add(a: int | None, b: int | None) -> int | None:
    if a is None or b is None:
        return None
    return a + b


def connected_sum(K: KnotRecord, L: KnotRecord) -> KnotRecord:
    """Connected sum.  r2, r0 and nu# are not additive and are left unset."""
    if K.name == "unknot":
        return L
    if L.name == "unknot":
        return K
    prov: dict[str, str] = {}
    ub = set()
    M = _add(K.M, L.M)
    if M is not None:
        prov["M"] = "derived: M is additive under connected sum"
    genus = _add(K.genus, L.genus)
    if genus is not None:
        prov["genus"] = "derived: Seifert genus is additive"
    if genus is not None and ("genus" in K.upper_bound_fields or "genus" in L.upper_bound_fields):
        ub.add("genus")
    bounds = {}
    for f in ("slice_genus", "clasp_plus", "clasp_minus"):
        v = _add(getattr(K, f), getattr(L, f))
        bounds[f] = v
        if v is not None:
            ub.add(f)
            prov[f] = "upper bound: subadditive under connected sum"
    return KnotRecord(
        name=f"{K.name}#{L.name}",
        M=M,
        genus=genus,
        provenance=prov,
        upper_bound_fields=frozenset(ub),
        **bounds,
    )
