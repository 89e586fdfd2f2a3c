import csv
import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from instanton_f2.dims import (
    TABLE_COLUMNS,
    dim_c,
    dim_f2,
    dim_f2_batch,
    euler_parity_ok,
    integer_triangle_check,
    t2,
    table_csv,
    torsion_summands,
    triangle_check,
    triangle_scan,
)
from instanton_f2.errors import (
    AmbiguousDimensionError,
    ContradictionError,
    IncompleteRecordError,
    InvalidBundleError,
)
from instanton_f2.froyshov import q3_surgery
from instanton_f2.knotdb import KnotRecord
from instanton_f2.slope import INFINITY, BundleClass, Slope, bundle_classes

T, N = BundleClass.TRIVIAL, BundleClass.NONTRIVIAL


def S(text):
    return Slope.parse(text)


class TestDimF2:
    @pytest.mark.parametrize(
        "knot, slope, w, expected",
        [
            ("3_1", "-5", T, 5),
            ("3_1", "-1", T, 7),
            ("3_1", "-4", T, 6),
            ("3_1", "-4", N, 4),
            ("unknot", "0", T, 2),
            ("unknot", "0", N, 0),
            ("3_1", "-7/2", T, 9),
            ("3_1", "inf", T, 1),
            ("4_1", "1", T, 9),
        ],
    )
    def test_fixtures(self, table, knot, slope, w, expected):
        assert dim_f2(table[knot], S(slope), w) == expected

    def test_incomplete_record(self):
        with pytest.raises(IncompleteRecordError):
            dim_f2(KnotRecord("K", M=0), S("1"))

    def test_illegal_bundle(self, table):
        with pytest.raises(InvalidBundleError):
            dim_f2(table["3_1"], S("-5"), N)

    def test_euler_parity_on_fixtures(self, fixtures):
        for K in fixtures:
            for p in range(-41, 42):
                for q in range(1, 6):
                    if math.gcd(p, q) == 1 and p:
                        for w in bundle_classes(Slope(p, q)):
                            assert euler_parity_ok(K, Slope(p, q), w)

    def test_zero_surgery_divisible_by_4(self, fixtures):
        for K in fixtures:
            assert dim_f2(K, S("0"), N).value % 4 == 0

    def test_w_shape(self, fixtures):
        for K in fixtures:
            vals = {n: dim_f2(K, Slope(n, 1), N).value for n in range(K.M - 30, K.M + 31) if n % 2 == 0}
            for n, v in vals.items():
                if n + 2 in vals:
                    assert vals[n + 2] - v == (2 if n >= K.M else -2)
            for n in range(K.M - 30, K.M + 31):
                triv = dim_f2(K, Slope(n, 1), T).value
                nt = K.r2 + abs(n - K.M)
                assert triv == nt + (2 if n == K.M else 0)

    def test_batch_matches_scalar(self, table):
        K = table["K_7"]
        slopes = [Slope(p, q) for q in range(1, 6) for p in range(-30, 31) if math.gcd(p, q) == 1]
        ws = [T if s.p % 2 or i % 2 else N for i, s in enumerate(slopes)]
        batch = dim_f2_batch(K, slopes, ws)
        assert list(batch) == [dim_f2(K, s, w).value for s, w in zip(slopes, ws)]


class TestDimC:
    @pytest.mark.parametrize(
        "knot, slope, expected", [("3_1", "-1", 1), ("3_1", "-5", 5), ("3_1", "1", 3), ("unknot", "5", 5)]
    )
    def test_fixtures(self, table, knot, slope, expected):
        assert dim_c(table[knot], S(slope)) == expected

    def test_ambiguous_zero_surgery(self, table):
        d = dim_c(table["unknot"], S("0"))
        assert d.is_ambiguous and d.candidates() == (0, 2) and str(d) == "0|2"
        with pytest.raises(AmbiguousDimensionError):
            d.value

    def test_ambiguity_only_at_zero_with_nu_zero(self, fixtures):
        for K in fixtures:
            for p in range(-9, 10):
                d = dim_c(K, Slope(p, 1))
                assert d.is_ambiguous == (p == 0 and K.nu_sharp == 0)

    def test_field_dominance(self, fixtures):
        for K in fixtures:
            for p in range(-30, 31):
                for q in range(1, 5):
                    if math.gcd(p, q) != 1:
                        continue
                    s = Slope(p, q)
                    for w in bundle_classes(s):
                        c = dim_c(K, s, w)
                        if not c.is_ambiguous:
                            assert dim_f2(K, s, w).value >= c.value


class TestTorsion:
    @pytest.mark.parametrize("knot, slope, expected", [("3_1", "1", 3), ("3_1", "-5", 0), ("unknot", "5", 0)])
    def test_fixtures(self, table, knot, slope, expected):
        assert torsion_summands(table[knot], S(slope)) == expected

    def test_t2(self, table):
        assert t2(table["3_1"]) == 3
        assert t2(table["unknot"]) == 0
        assert t2(table["K_2"]) == (9 - (2 + 1)) // 2

    def test_t2_needs_complex_invariants(self):
        with pytest.raises(IncompleteRecordError):
            t2(KnotRecord("4_1", r2=8, M=0))

    def test_inconsistent_record(self):
        with pytest.raises(ContradictionError):
            torsion_summands(KnotRecord("K", r2=0, M=0, r0=8, nu_sharp=0), S("1"))
        with pytest.raises(ContradictionError):
            torsion_summands(KnotRecord("K", r2=4, M=0, r0=1, nu_sharp=0), S("1"))


class TestQ3StepRelation:
    """dim at -2n-1 is dim at -2n (nontrivial) + 1 if q3 = 0 and - 1 if q3 = 1; mirrored for positive slopes."""

    def test_fixtures(self, fixtures):
        for K in fixtures:
            for n in range(0, 40):
                lo = dim_f2(K, Slope(-2 * n - 1, 1)).value
                base = dim_f2(K, Slope(-2 * n, 1), N).value
                q = q3_surgery(K, Slope(-2 * n - 1, 1))
                assert q in (0, 1) and lo == base + (1 if q == 0 else -1)
                hi = dim_f2(K, Slope(2 * n + 1, 1)).value
                base = dim_f2(K, Slope(2 * n, 1), N).value
                q = q3_surgery(K, Slope(2 * n + 1, 1))
                assert q in (0, -1) and hi == base + (1 if q == 0 else -1)


class TestTriangles:
    def test_trefoil_minus_7_2(self, table):
        rep = triangle_check(table["3_1"], S("-7/2"))
        floer = [c for c in rep.cases if c.kind == "floer"]
        assert {c.dims for c in floer} == {(5, 4, 9), (5, 6, 9)}
        assert rep.ok

    def test_unknot_5_3(self, table):
        rep = triangle_check(table["unknot"], S("5/3"))
        assert {c.dims for c in rep.cases if c.kind == "floer"} == {(2, 3, 5)}
        assert rep.ok

    def test_trefoil_minus_9_2(self, table):
        rep = triangle_check(table["3_1"], S("-9/2"))
        assert [c.slopes for c in rep.cases if c.kind == "floer"][0] == (S("-4"), S("-5"), S("-9/2"))
        assert rep.ok

    @pytest.mark.parametrize(
        "knot, n, dims",
        [("3_1", -5, {(1, 5, 4), (1, 5, 6)}), ("3_1", -4, {(1, 4, 5), (1, 6, 5)}), ("unknot", 0, {(1, 0, 1), (1, 2, 1)})],
    )
    def test_integer(self, table, knot, n, dims):
        rep = integer_triangle_check(table[knot], n)
        assert {c.dims for c in rep.cases} == dims and rep.ok

    def test_detects_a_corrupted_dimension(self, table, monkeypatch):
        import instanton_f2.dims as dims

        real = dims.dim_f2

        def off_by_two(K, s, w=T):
            d = real(K, s, w)
            return dims.DimValue(d.lo + 2, d.hi + 2, d.field_tag, d.bundle) if s == S("-9/2") else d

        monkeypatch.setattr(dims, "dim_f2", off_by_two)
        rep = triangle_check(table["3_1"], S("-9/2"))
        assert rep.violations and all(c.inequality_ok is False for c in rep.violations if c.kind == "floer")
        monkeypatch.setattr(dims, "dim_f2", lambda K, s, w=T: dims.DimValue(1, 1, "F2", w) if s == S("-4") else real(K, s, w))
        assert any(not c.parity_ok for c in integer_triangle_check(table["3_1"], -5).cases)

    def test_scan_on_twist_knot(self, table):
        res = triangle_scan(table["K_9"], 4, 20)
        assert res.checked > 0 and res.violations == []

    @given(st.integers(-10, 10), st.integers(0, 6), st.integers(-80, 80), st.integers(2, 12))
    def test_any_valid_record_passes(self, m, extra, p, q):
        if math.gcd(p, q) != 1:
            return
        K = KnotRecord("K", r2=4 * abs(m) + 4 * extra, M=4 * m)
        assert triangle_check(K, Slope(p, q)).ok
        assert integer_triangle_check(K, p).ok


class TestTable:
    def test_csv(self, table):
        text = table_csv(table["unknot"], Fraction(-1), Fraction(1), 2)
        rows = list(csv.DictReader(io.StringIO(text)))
        assert tuple(rows[0]) == TABLE_COLUMNS
        assert [r["slope"] for r in rows] == ["-1", "-1/2", "0", "0", "1/2", "1"]
        zero = [r for r in rows if r["slope"] == "0"]
        assert [(r["bundle"], r["dim_F2"], r["dim_C"], r["torsion_summands"]) for r in zero] == [
            ("trivial", "2", "0|2", ""),
            ("nontrivial", "0", "0|2", ""),
        ]

    def test_without_complex_invariants(self):
        text = table_csv(KnotRecord("K", r2=8, M=0), Fraction(0), Fraction(1), 1)
        assert text.splitlines()[1:] == ["0,trivial,10,,", "0,nontrivial,8,,", "1,trivial,9,,"]

    def test_deterministic(self, table):
        a = table_csv(table["K_5"], Fraction(-7, 2), Fraction(9, 4), 5)
        assert a == table_csv(table["K_5"], Fraction(-7, 2), Fraction(9, 4), 5)
