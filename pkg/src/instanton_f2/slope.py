"""Reduced surgery slopes p/q, first homology bookkeeping and Farey triples."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvalidBundleError, InvalidSlopeError


@dataclass(frozen=True, order=False)
class Slope:
    """A surgery coefficient p/q in least terms with q >= 0.

    The slope at infinity (S^3 itself) is stored uniquely as (1, 0).
    Use :func:`normalize` or :meth:`parse` to build one from raw input.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise InvalidSlopeError(f"denominator must be nonnegative, got {self.q}")
        if self.q == 0 and self.p != 1:
            raise InvalidSlopeError("the slope at infinity is represented as (1, 0)")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidSlopeError(f"{self.p}/{self.q} is not in least terms")

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    def value(self) -> Fraction:
        if self.q == 0:
            raise DomainError("the slope at infinity has no rational value")
        return Fraction(self.p, self.q)

    def sign(self) -> int:
        """Sign of p/q; 0 for the zero slope and also 0 for infinity (unsigned)."""
        if self.q == 0:
            return 0
        return (self.p > 0) - (self.p < 0)

    def __neg__(self) -> Slope:
        if self.q == 0:
            return self
        return Slope(-self.p, self.q)

    def __str__(self) -> str:
        if self.q == 0:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"

    @classmethod
    def parse(cls, text: str) -> Slope:
        """Parse ``"p/q"``, ``"n"`` or ``"inf"``."""
        s = text.strip()
        if s.lower() in ("inf", "infinity", "oo", "1/0"):
            return INFINITY
        try:
            if "/" in s:
                num, den = s.split("/", 1)
                return normalize(int(num), int(den))
            return normalize(int(s), 1)
        except ValueError as exc:
            if isinstance(exc, InvalidSlopeError):
                raise
            raise InvalidSlopeError(f"cannot parse slope {text!r}") from None


INFINITY = Slope(1, 0)


def normalize(p: int, q: int) -> Slope:
    if p == 0 and q == 0:
        raise InvalidSlopeError("0/0 is not a slope")
    if q == 0:
        return INFINITY
    if q < 0:
        p, q = -p, -q
    g = math.gcd(p, q)
    return Slope(p // g, q // g)


def slope_lt(s: Slope, t: Slope) -> bool:
    """Strict order on finite slopes."""
    return s.p * t.q < t.p * s.q


def compare_to_integer(s: Slope, n: int) -> int:
    """Sign of p/q - n for a finite slope."""
    d = s.p - n * s.q
    return (d > 0) - (d < 0)


def h1_order(s: Slope) -> int:
    """Order of H_1 of the surgered manifold; 0 stands for infinite (p = 0)."""
    return abs(s.p)


class BundleClass(enum.Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> BundleClass:
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise InvalidBundleError(f"bundle must be 'trivial' or 'nontrivial', got {text!r}") from None


def bundle_classes(s: Slope) -> tuple[BundleClass, ...]:
    """Admissible mod-2 bundle classes; H_1(-; F_2) is nonzero exactly when p is even."""
    if s.p % 2 == 0:
        return (BundleClass.TRIVIAL, BundleClass.NONTRIVIAL)
    return (BundleClass.TRIVIAL,)


def check_bundle(s: Slope, w: BundleClass) -> None:
    if w not in bundle_classes(s):
        raise InvalidBundleError(f"slope {s} has odd numerator; only the trivial bundle exists")


@dataclass(frozen=True)
class SlopeTriple:
    """Farey parents (a,b), (c,d) of p/q together with the excess pair (e,f)."""

    target: Slope
    left: tuple[int, int]
    right: tuple[int, int]
    excess: tuple[int, int]

    def violations(self) -> list[str]:
        """List every defining identity that fails (empty for a valid triple)."""
        p, q = self.target.p, self.target.q
        (a, b), (c, d), (e, f) = self.left, self.right, self.excess
        out = []
        if not (q * c - p * d == b * c - a * d == p * b - q * a == 1):
            out.append("determinant identities qc-pd = bc-ad = pb-qa = 1")
        if not (b > 0 and d > 0):
            out.append("b, d > 0")
        if f < 0 or (f == 0 and e != 1):
            out.append("f >= 0 with f = 0 only for (e, f) = (1, 0)")
        if (a + c, b + d) != (p, q):
            out.append("(p, q) = (a, b) + (c, d)")
        if b == d:
            expected = (1, 0) if b == 1 else None
        elif b < d:
            expected = (c - a, d - b)
        else:
            expected = (a - c, b - d)
        if expected is None or (e, f) != expected:
            out.append("excess rule (b = d, b < d, b > d)")
        for x, y in (self.left, self.right, self.excess):
            if math.gcd(x, y) != 1:
                out.append(f"({x}, {y}) not coprime")
        return out


def farey_triple(s: Slope) -> SlopeTriple:
    """Coprime triple for a non-integral slope.

    (c, d) is the unique solution of qc - pd = 1 with 0 < d < q; the left
    parent is the complement (p - c, q - d).
    """
    p, q = s.p, s.q
    if q < 2:
        raise DomainError(f"slope {s} is integral or infinite; it has no Farey triple")
    # qc - pd = 1  <=>  d = -p^{-1} mod q
    d = (-pow(p, -1, q)) % q
    c = (1 + p * d) // q
    a, b = p - c, q - d
    if b == d:
        excess = (1, 0)
    elif b < d:
        excess = (c - a, d - b)
    else:
        excess = (a - c, b - d)
    return SlopeTriple(s, (a, b), (c, d), excess)
