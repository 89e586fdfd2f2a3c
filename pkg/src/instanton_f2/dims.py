"""Closed-form dimensions of framed instanton homology of Dehn surgeries.

Over F2 the dimension is ``q*r2 + |p - q*M|`` except at the single slope
p/q = M with trivial bundle, where it is ``r2 + 2``.  Over C it is
``q*r0 + |p - q*nu#|``, except at slope 0 when nu# = 0 where only the pair
{r0, r0 + 2} is known.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import _kernels
from .errors import AmbiguousDimensionError, ContradictionError
from .knotdb.records import KnotRecord
from .slope import (
    INFINITY,
    BundleClass,
    Slope,
    bundle_classes,
    check_bundle,
    farey_triple,
    h1_order,
    normalize,
)

F2 = "F2"
C = "C"


@dataclass(frozen=True)
class DimValue:
    """A dimension, or the ambiguous pair ``{lo, lo + 2}``."""

    lo: int
    hi: int
    field_tag: str
    bundle: BundleClass = BundleClass.TRIVIAL

    @property
    def is_ambiguous(self) -> bool:
        return self.lo != self.hi

    @property
    def value(self) -> int:
        if self.is_ambiguous:
            raise AmbiguousDimensionError(f"dimension is {self.lo} or {self.hi}")
        return self.lo

    def candidates(self) -> tuple[int, ...]:
        return (self.lo,) if self.lo == self.hi else (self.lo, self.hi)

    def __str__(self) -> str:
        return str(self.lo) if self.lo == self.hi else f"{self.lo}|{self.hi}"

    def __eq__(self, other):
        if isinstance(other, int):
            return not self.is_ambiguous and self.lo == other
        if isinstance(other, DimValue):
            return (self.lo, self.hi, self.field_tag, self.bundle) == (
                other.lo,
                other.hi,
                other.field_tag,
                other.bundle,
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.lo, self.hi, self.field_tag, self.bundle))


def dim_f2(K: KnotRecord, s: Slope, w: BundleClass = BundleClass.TRIVIAL) -> DimValue:
    K.require("r2", "M", purpose="the F2 dimension formula")
    check_bundle(s, w)
    p, q = s.p, s.q
    if q == 1 and p == K.M and w is BundleClass.TRIVIAL:
        return DimValue(K.r2 + 2, K.r2 + 2, F2, w)
    d = q * K.r2 + abs(p - q * K.M)
    return DimValue(d, d, F2, w)


def dim_c(K: KnotRecord, s: Slope, w: BundleClass = BundleClass.TRIVIAL) -> DimValue:
    """Complex dimension; ``w`` only labels the result."""
    K.require("r0", "nu_sharp", purpose="the complex dimension formula")
    check_bundle(s, w)
    if s.p == 0 and K.nu_sharp == 0:
        return DimValue(K.r0, K.r0 + 2, C, w)
    d = s.q * K.r0 + abs(s.p - s.q * K.nu_sharp)
    return DimValue(d, d, C, w)


def torsion_summands(K: KnotRecord, s: Slope, w: BundleClass = BundleClass.TRIVIAL) -> int:
    """Number of Z/2^k summands of the integral group, (dim_F2 - dim_C) / 2."""
    diff = dim_f2(K, s, w).value - dim_c(K, s, w).value
    if diff < 0 or diff % 2:
        raise ContradictionError(
            f"{K.name} at {s}: dim_F2 - dim_C = {diff} must be a nonnegative even number"
        )
    return diff // 2


def t2(K: KnotRecord) -> int:
    return torsion_summands(K, Slope(1, 1), BundleClass.TRIVIAL)


# ------------------------------------------------------------------ triangles


@dataclass(frozen=True)
class TriangleCase:
    """One bundle assignment at the corners of an exact triangle."""

    kind: str
    slopes: tuple[Slope, Slope, Slope]
    bundles: tuple
    dims: tuple[int, int, int]

    @property
    def inequality_ok(self) -> bool:
        v1, v2, v3 = self.dims
        return abs(v1 - v3) <= v2 <= v1 + v3

    @property
    def parity_ok(self) -> bool:
        return sum(self.dims) % 2 == 0

    @property
    def ok(self) -> bool:
        return self.inequality_ok and self.parity_ok

    def describe(self) -> str:
        corners = ", ".join(f"{s}[{b}]={d}" for s, b, d in zip(self.slopes, self.bundles, self.dims))
        return f"{self.kind}: {corners}"


@dataclass
class TriangleReport:
    knot: str
    target: Slope
    cases: list[TriangleCase] = field(default_factory=list)

    @property
    def violations(self) -> list[TriangleCase]:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.violations


def _dim_choices(K, s):
    return {w: dim_f2(K, s, w).value for w in bundle_classes(s)}


def _pair_to_slope(pair: tuple[int, int]) -> Slope:
    return normalize(*pair)


def triangle_check(K: KnotRecord, s: Slope) -> TriangleReport:
    """Check the two rational-surgery exact triangles built on the Farey triple of ``s``.

    Floer triangle: c/d -> a/b -> p/q.  Distance-two triangle:
    e/f -> (a/b with both bundles) -> p/q.  The mod-2 class of the dual knot is
    not resolved, so every admissible bundle assignment is checked.
    """
    tri = farey_triple(s)
    ab, cd, ef = (_pair_to_slope(x) for x in (tri.left, tri.right, tri.excess))
    rep = TriangleReport(K.name, s)
    d_cd, d_ab, d_pq, d_ef = (_dim_choices(K, x) for x in (cd, ab, s, ef))
    for (w1, v1), (w2, v2), (w3, v3) in product(d_cd.items(), d_ab.items(), d_pq.items()):
        rep.cases.append(TriangleCase("floer", (cd, ab, s), (w1, w2, w3), (v1, v2, v3)))
    # middle term: direct sum over w0 and w0 + dual knot; these coincide when H1(F2) = 0
    if ab.p % 2:
        middles = [((BundleClass.TRIVIAL, BundleClass.TRIVIAL), 2 * d_ab[BundleClass.TRIVIAL])]
    else:
        middles = [
            ((BundleClass.TRIVIAL, BundleClass.NONTRIVIAL), sum(d_ab.values())),
        ]
    for (w1, v1), (w2, v2), (w3, v3) in product(d_ef.items(), middles, d_pq.items()):
        rep.cases.append(TriangleCase("distance2", (ef, ab, s), (w1, w2, w3), (v1, v2, v3)))
    return rep


def integer_triangle_check(K: KnotRecord, n: int) -> TriangleReport:
    """Floer's triangle S^3 -> S^3_n -> S^3_{n+1} under all bundle assignments."""
    sn, sn1 = Slope(n, 1), Slope(n + 1, 1)
    rep = TriangleReport(K.name, sn)
    for (w2, v2), (w3, v3) in product(_dim_choices(K, sn).items(), _dim_choices(K, sn1).items()):
        rep.cases.append(
            TriangleCase("integer", (INFINITY, sn, sn1), (BundleClass.TRIVIAL, w2, w3), (1, v2, v3))
        )
    return rep


def reduced_slopes(pmax: int, qmin: int, qmax: int):
    """All reduced p/q with qmin <= q <= qmax and |p| <= pmax, ordered by (q, p)."""
    from math import gcd

    for q in range(qmin, qmax + 1):
        for p in range(-pmax, pmax + 1):
            if gcd(p, q) == 1:
                yield Slope(p, q)


@dataclass
class ScanResult:
    knot: str
    checked: int = 0
    violations: list[TriangleCase] = field(default_factory=list)


def triangle_scan(K: KnotRecord, qmax: int, pmax: int) -> ScanResult:
    """Rational triangles for 2 <= q <= qmax, |p| <= pmax and integer ones for |n| <= pmax."""
    res = ScanResult(K.name)
    for s in reduced_slopes(pmax, 2, qmax):
        rep = triangle_check(K, s)
        res.checked += len(rep.cases)
        res.violations.extend(rep.violations)
    for n in range(-pmax, pmax + 1):
        rep = integer_triangle_check(K, n)
        res.checked += len(rep.cases)
        res.violations.extend(rep.violations)
    return res


# ---------------------------------------------------------------------- table


def dim_f2_batch(K: KnotRecord, slopes: list[Slope], bundles: list[BundleClass]) -> np.ndarray:
    """Vectorized ``dim_f2`` over many (slope, bundle) pairs."""
    K.require("r2", "M", purpose="the F2 dimension formula")
    for s, w in zip(slopes, bundles):
        check_bundle(s, w)
    p = np.fromiter((s.p for s in slopes), dtype=np.int64, count=len(slopes))
    q = np.fromiter((s.q for s in slopes), dtype=np.int64, count=len(slopes))
    triv = np.fromiter((w is BundleClass.TRIVIAL for w in bundles), dtype=bool, count=len(slopes))
    return _kernels.dim_f2_grid(p, q, triv, K.r2, K.M)


def table_rows(K: KnotRecord, lo: Fraction, hi: Fraction, denom_max: int) -> list[dict]:
    """Rows for every reduced slope in [lo, hi] with denominator <= denom_max and each bundle."""
    from math import ceil, floor, gcd

    pairs = []
    for q in range(1, denom_max + 1):
        for p in range(ceil(lo * q), floor(hi * q) + 1):
            if gcd(p, q) == 1:
                s = Slope(p, q)
                pairs.extend((s, w) for w in bundle_classes(s))
    pairs.sort(key=lambda sw: (Fraction(sw[0].p, sw[0].q), sw[1] is BundleClass.NONTRIVIAL))
    f2 = dim_f2_batch(K, [s for s, _ in pairs], [w for _, w in pairs]) if pairs else []
    have_c = K.r0 is not None and K.nu_sharp is not None
    rows = []
    for (s, w), d in zip(pairs, f2):
        dc = dim_c(K, s, w) if have_c else None
        tors = ""
        if dc is not None and not dc.is_ambiguous:
            tors = str(torsion_summands(K, s, w))
        rows.append(
            {
                "slope": str(s),
                "bundle": str(w),
                "dim_F2": str(int(d)),
                "dim_C": "" if dc is None else str(dc),
                "torsion_summands": tors,
            }
        )
    return rows


TABLE_COLUMNS = ("slope", "bundle", "dim_F2", "dim_C", "torsion_summands")


def table_csv(K: KnotRecord, lo: Fraction, hi: Fraction, denom_max: int) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(table_rows(K, lo, hi, denom_max))
    return buf.getvalue()


def euler_parity_ok(K: KnotRecord, s: Slope, w: BundleClass) -> bool:
    """dim_F2 is congruent to |H_1| mod 2 (vacuous when H_1 is infinite)."""
    n = h1_order(s)
    return n == 0 or dim_f2(K, s, w).value % 2 == n % 2
