"""Frøyshov's q3 on surgeries with odd numerator (F2-homology spheres)."""

from __future__ import annotations

from .errors import NotF2HomologySphereError
from .knotdb.records import KnotRecord, mirror
from .slope import Slope, compare_to_integer

NEGATIVE_BRANCH = "M<r<0"
POSITIVE_BRANCH = "0<r<M"
OTHERWISE = "otherwise"


def q3_branch(K: KnotRecord, s: Slope) -> tuple[int, str]:
    """``(q3, branch)`` where branch names the interval condition that fired."""
    K.require("M", purpose="q3 of a surgery")
    if s.p % 2 == 0:
        raise NotF2HomologySphereError(
            f"slope {s} has even numerator; S^3_r is not an F2-homology sphere"
        )
    if s.is_infinite:
        return 0, OTHERWISE
    M = K.M
    # odd p cannot equal q*M with M even, so r = M never occurs
    assert compare_to_integer(s, M) != 0
    sign = s.sign()
    if sign < 0 and compare_to_integer(s, M) > 0:
        return 1, NEGATIVE_BRANCH
    if sign > 0 and compare_to_integer(s, M) < 0:
        return -1, POSITIVE_BRANCH
    return 0, OTHERWISE


def q3_surgery(K: KnotRecord, s: Slope) -> int:
    return q3_branch(K, s)[0]


def q3_duality_check(K: KnotRecord, s: Slope) -> bool:
    """q3(S^3_r(K)) = -q3(S^3_{-r}(mirror K)), i.e. q3(-Y) = -q3(Y)."""
    return q3_surgery(K, s) == -q3_surgery(mirror(K), -s)
