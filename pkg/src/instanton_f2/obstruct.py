"""Yes/no consequences of the dimension formulas.

Instanton L-space knots, torsion-freeness of integral instanton homology,
SU(2)-abelian exclusion and the genus identity for torsion-averse knots.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .dims import t2
from .errors import ContradictionError, DomainError
from .froyshov import q3_surgery
from .knotdb.records import KnotRecord
from .slope import BundleClass, Slope, check_bundle, compare_to_integer


def is_lspace_knot_f2(K: KnotRecord) -> bool:
    K.require("r2", "M", purpose="the L-space criterion r2 = |M|")
    return K.r2 == abs(K.M)


@dataclass(frozen=True)
class LSpaceSlopes:
    """Set of (slope, bundle) pairs whose surgery is an instanton L-space over F2.

    ``kind`` is one of ``"empty"``, ``"above"`` ({r > M} plus (M, nontrivial)),
    ``"below"`` ({r < M} plus (M, nontrivial)) or ``"all"`` (every nonzero
    slope plus (0, nontrivial)).  The slope at infinity belongs to every
    nonempty set.
    """

    kind: str
    threshold: int = 0

    def contains(self, s: Slope, w: BundleClass = BundleClass.TRIVIAL) -> bool:
        check_bundle(s, w)
        if self.kind == "empty":
            return False
        if s.is_infinite:
            return True
        c = compare_to_integer(s, self.threshold)
        if c == 0:
            return w is BundleClass.NONTRIVIAL
        if self.kind == "all":
            return True
        return c > 0 if self.kind == "above" else c < 0

    def __bool__(self) -> bool:
        return self.kind != "empty"

    def __str__(self) -> str:
        m = self.threshold
        if self.kind == "empty":
            return "no L-space surgeries"
        if self.kind == "all":
            return "every slope r != 0, plus r = 0 with nontrivial bundle"
        rel = ">" if self.kind == "above" else "<"
        return f"r {rel} {m}, plus r = {m} with nontrivial bundle"


def lspace_slopes(K: KnotRecord) -> LSpaceSlopes:
    if not is_lspace_knot_f2(K):
        return LSpaceSlopes("empty")
    if K.M > 0:
        return LSpaceSlopes("above", K.M)
    if K.M < 0:
        return LSpaceSlopes("below", K.M)
    return LSpaceSlopes("all", 0)


def torsion_free(K: KnotRecord, s: Slope, w: BundleClass = BundleClass.TRIVIAL) -> bool:
    """Whether the integral instanton homology of (S^3_r(K), w) has no 2-torsion.

    A torsion-averse knot is the same thing as an L-space knot over F2, and
    the torsion-free slopes are exactly its L-space slopes.  The slope at
    infinity (S^3) is torsion-free for every knot.
    """
    check_bundle(s, w)
    if s.is_infinite:
        return True
    return lspace_slopes(K).contains(s, w)


class Verdict(enum.Enum):
    OBSTRUCTED = "obstructed"
    UNOBSTRUCTED = "unobstructed"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


GENUS_RULE = "genus bound: |r| <= 4*ceil(g/2) excludes nondegenerate SU(2)-abelian surgeries"
TORSION_RULE = "integral 2-torsion: nondegenerate SU(2)-abelian manifolds have free I#(Y; Z)"
Q3_RULE = "q3 != 0: not F2-homology cobordant to a nondegenerate SU(2)-abelian manifold"
NONDEGENERACY_NOTE = (
    "excludes nondegenerate SU(2)-abelian only; nondegeneracy is automatic when |p| is a prime power"
)


@dataclass
class SU2Report:
    verdict: Verdict
    rules: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    homology_cobordism_obstructed: bool = False

    def to_dict(self) -> dict:
        return {
            "verdict": str(self.verdict),
            "rules": list(self.rules),
            "notes": list(self.notes),
            "homology_cobordism_obstructed": self.homology_cobordism_obstructed,
        }


def genus_bound(g: int) -> int:
    """4*ceil((2g-1)/4): 2g for g even, 2g+2 for g odd."""
    return 4 * (-(-(2 * g - 1) // 4))


def su2_abelian_obstruction(K: KnotRecord, s: Slope) -> SU2Report:
    K.require("genus", purpose="the SU(2)-abelian genus bound")
    if K.genus < 1:
        raise DomainError(f"{K.name}: the SU(2)-abelian obstruction needs a nontrivial knot")
    rep = SU2Report(Verdict.UNKNOWN)
    B = genus_bound(K.genus)
    if s.is_infinite:
        return rep
    if abs(s.p) <= B * s.q:
        rep.rules.append(GENUS_RULE)
    if K.r2 is not None and K.M is not None:
        if not torsion_free(K, s, BundleClass.TRIVIAL):
            rep.rules.append(TORSION_RULE)
        if s.p % 2 and q3_surgery(K, s) != 0:
            rep.rules.append(Q3_RULE)
            rep.homology_cobordism_obstructed = True
    if rep.rules:
        rep.verdict = Verdict.OBSTRUCTED
        rep.notes.append(NONDEGENERACY_NOTE)
    return rep


def genus_identity(K: KnotRecord) -> int | None:
    """Genus forced by |M| = 2g - 1 + t2 for a torsion-averse knot.

    Returns ``None`` when the knot is not torsion-averse or has M = 0 (the
    identity is stated for nontrivial knots only).
    """
    if not is_lspace_knot_f2(K) or K.M == 0:
        return None
    t = t2(K)
    num = abs(K.M) - t + 1
    if num < 0 or num % 2:
        raise ContradictionError(f"{K.name}: |M| - t2 + 1 = {num} is not twice a genus")
    g = num // 2
    if K.genus is not None and "genus" not in K.upper_bound_fields and K.genus != g:
        raise ContradictionError(f"{K.name}: stored genus {K.genus} but |M| = 2g - 1 + t2 gives {g}")
    return g
