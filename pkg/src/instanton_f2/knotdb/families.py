"""Parametric knot families, materialized on demand."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .records import KnotRecord

TWIST_SOURCE = "paper-fixture: twist knot family r2(K_{2n-1}) = 8n-4, M = -4; r2(K_{2n}) = 8n, M = 0"
PRETZEL_SOURCE = "paper-fixture: pretzel family P(n,-3,3) has r2 = 16, M = 0 for every n"
REMARK_SOURCE = "derived: r2 = 4 r0 and M = 4 nu# observed for the twist and pretzel families"
TORUS_SOURCE = "paper-fixture: torus knot bounds pq-p-q <= |M| <= pq-2 and |nu#| = pq-p-q"


@dataclass(frozen=True)
class Family:
    kind: str

    def parse_name(self, name: str) -> tuple | None:
        raise NotImplementedError

    def make(self, params: tuple) -> KnotRecord:
        raise NotImplementedError

    def instances(self, limit: int) -> list[KnotRecord]:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.kind, "params": {}}


_TWIST_RE = re.compile(r"^K_\{?(\d+)\}?$")


@dataclass(frozen=True)
class TwistFamily(Family):
    """Twist knots K_n, n >= 1; K_1 is the left-handed trefoil, K_2 the figure eight."""

    kind: str = "twist"

    def parse_name(self, name):
        m = _TWIST_RE.match(name)
        if m and int(m.group(1)) >= 1:
            return (int(m.group(1)),)
        return None

    def make(self, params):
        (n,) = params
        if n < 1:
            raise ValueError("twist knots are indexed by n >= 1")
        if n % 2:
            m = (n + 1) // 2
            r2, M = 8 * m - 4, -4
        else:
            m = n // 2
            r2, M = 8 * m, 0
        lspace = n == 1
        return KnotRecord(
            name=f"K_{n}",
            r2=r2,
            M=M,
            r0=r2 // 4,
            nu_sharp=M // 4,
            genus=1,
            lspace_f2=lspace,
            torsion_averse=lspace,
            provenance={
                "r2": TWIST_SOURCE,
                "M": TWIST_SOURCE,
                "r0": REMARK_SOURCE,
                "nu_sharp": REMARK_SOURCE,
                "genus": "standard: twist knots bound a genus one Seifert surface",
                "lspace_f2": "derived: L-space over F2 iff r2 = |M|",
            },
        )

    def instances(self, limit):
        return [self.make((n,)) for n in range(1, limit + 1)]


_PRETZEL_RE = re.compile(r"^P(?:_\{?(-?\d+)\}?|\((-?\d+),\s*-3,\s*3\))$")


@dataclass(frozen=True)
class PretzelFamily(Family):
    """Pretzel knots P(n, -3, 3), n any integer; all are slice."""

    kind: str = "pretzel"

    def parse_name(self, name):
        m = _PRETZEL_RE.match(name)
        if not m:
            return None
        return (int(m.group(1) if m.group(1) is not None else m.group(2)),)

    def make(self, params):
        (n,) = params
        return KnotRecord(
            name=f"P({n},-3,3)",
            r2=16,
            M=0,
            r0=4,
            nu_sharp=0,
            slice_genus=0,
            lspace_f2=False,
            torsion_averse=False,
            provenance={
                "r2": PRETZEL_SOURCE,
                "M": PRETZEL_SOURCE,
                "r0": REMARK_SOURCE,
                "nu_sharp": REMARK_SOURCE,
                "slice_genus": "standard: P(n,-3,3) is slice",
                "lspace_f2": "derived: L-space over F2 iff r2 = |M|",
            },
        )

    def instances(self, limit):
        return [self.make((n,)) for n in range(-limit, limit + 1)]


_TORUS_RE = re.compile(r"^T(?:_\{(\d+),(\d+)\}|\((\d+),\s*(\d+)\))$")


@dataclass(frozen=True)
class TorusFamily(Family):
    """Torus knots T(p, q), 2 <= p < q coprime.  Only |M| bounds are recorded."""

    kind: str = "torus"

    def parse_name(self, name):
        m = _TORUS_RE.match(name)
        if not m:
            return None
        g = [x for x in m.groups() if x is not None]
        p, q = int(g[0]), int(g[1])
        if 2 <= p < q and math.gcd(p, q) == 1:
            return (p, q)
        return None

    def make(self, params):
        p, q = params
        if not (2 <= p < q and math.gcd(p, q) == 1):
            raise ValueError("torus knots need coprime 2 <= p < q")
        lo = p * q - p - q
        return KnotRecord(
            name=f"T({p},{q})",
            abs_M_lo=lo,
            abs_M_hi=p * q - 2,
            abs_nu_sharp=lo,
            provenance={"abs_M_lo": TORUS_SOURCE, "abs_M_hi": TORUS_SOURCE, "abs_nu_sharp": TORUS_SOURCE},
        )

    def instances(self, limit):
        out = []
        for q in range(3, limit + 1):
            for p in range(2, q):
                if math.gcd(p, q) == 1:
                    out.append(self.make((p, q)))
        return out


FAMILIES = {"twist": TwistFamily, "pretzel": PretzelFamily, "torus": TorusFamily}
