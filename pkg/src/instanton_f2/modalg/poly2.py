"""Polynomials over F2, stored as int bitmasks (bit i = coefficient of x^i)."""

from __future__ import annotations

import re


class Poly2:
    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("coefficient mask must be nonnegative")
        object.__setattr__(self, "_bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("Poly2 is immutable")

    # ------------------------------------------------------------ construction

    @classmethod
    def from_coeffs(cls, coeffs) -> Poly2:
        """Little-endian coefficients; trailing zeros are dropped."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def monomial(cls, k: int) -> Poly2:
        return cls(1 << k)

    @classmethod
    def parse(cls, text: str) -> Poly2:
        """Parse a sum of monomials such as ``"x^3+x+1"`` (``"0"`` is zero)."""
        t = text.replace(" ", "")
        if t == "0":
            return ZERO
        bits = 0
        for term in t.split("+"):
            m = re.fullmatch(r"1|x(?:\^(\d+))?", term)
            if m is None:
                raise ValueError(f"bad polynomial term {term!r} in {text!r}")
            k = 0 if term == "1" else int(m.group(1) or 1)
            bits ^= 1 << k
        return cls(bits)

    # ------------------------------------------------------------- inspection

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return self._bits.bit_length() - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple((self._bits >> i) & 1 for i in range(self._bits.bit_length()))

    @property
    def constant_term(self) -> int:
        return self._bits & 1

    def is_zero(self) -> bool:
        return self._bits == 0

    def is_one(self) -> bool:
        return self._bits == 1

    def __bool__(self) -> bool:
        return self._bits != 0

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other: Poly2) -> Poly2:
        return Poly2(self._bits ^ other._bits)

    __sub__ = __add__

    def __neg__(self) -> Poly2:
        return self

    def __mul__(self, other: Poly2) -> Poly2:
        a, b, out = self._bits, other._bits, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return Poly2(out)

    def __pow__(self, k: int) -> Poly2:
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: Poly2) -> tuple[Poly2, Poly2]:
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r, q = self._bits, 0
        db = other._bits.bit_length()
        while r.bit_length() >= db:
            shift = r.bit_length() - db
            q |= 1 << shift
            r ^= other._bits << shift
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[1]

    def divides(self, other: Poly2) -> bool:
        if not self:
            return not other
        return not (other % self)

    def split_at_zero(self) -> tuple[int, Poly2]:
        """Write a nonzero f as x^k * g with g(0) = 1; returns (k, g)."""
        if not self:
            raise ValueError("the zero polynomial has no x-adic split")
        b = self._bits
        k = (b & -b).bit_length() - 1
        return k, Poly2(b >> k)

    def __call__(self, x: int) -> int:
        """Evaluate at x in F2."""
        return bin(self._bits).count("1") & 1 if x & 1 else self._bits & 1

    # ----------------------------------------------------------------- dunder

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self._bits == other._bits
        if isinstance(other, int) and other in (0, 1):
            return self._bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly2", self._bits))

    def __lt__(self, other: Poly2) -> bool:
        return self._bits < other._bits

    def __str__(self) -> str:
        if not self._bits:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            if (self._bits >> k) & 1:
                terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"Poly2({str(self)!r})"


ZERO = Poly2(0)
ONE = Poly2(1)
X = Poly2(2)


def gcd(a: Poly2, b: Poly2) -> Poly2:
    while b:
        a, b = b, a % b
    return a


def xgcd(a: Poly2, b: Poly2) -> tuple[Poly2, Poly2, Poly2]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b)."""
    r0, r1, s0, s1, t0, t1 = a, b, ONE, ZERO, ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    return r0, s0, t0
