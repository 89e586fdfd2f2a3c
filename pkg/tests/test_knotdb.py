import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from instanton_f2.errors import IncompleteRecordError, KnotDBParseError, KnotDBValidationError
from instanton_f2.knotdb import KnotRecord, connected_sum, dumps, load, loads, mirror, open_table, validate
from instanton_f2.knotdb.io import ENV_VAR

FIX = "paper-fixture: test"


def doc(*records, constraints=None):
    d = {"knots": list(records)}
    if constraints is not None:
        d["constraints"] = constraints
    return json.dumps(d, indent=2)


def rec(name="K", **fields):
    prov = {f: FIX for f in ("r2", "M") if f in fields}
    return {"name": name, **fields, "provenance": prov}


class TestBundled:
    def test_contents(self, table):
        for name in ("unknot", "3_1", "m(3_1)", "4_1"):
            assert name in table
        assert {f.kind for f in table.families} == {"twist", "pretzel", "torus"}

    def test_roundtrip(self, table):
        again = loads(dumps(table))
        assert list(again) == list(table)
        assert all(again[n] == table[n] for n in table)

    def test_unknot_record(self, table):
        U = table["unknot"]
        assert (U.r2, U.M, U.r0, U.nu_sharp, U.genus) == (0, 0, 0, 0, 0)

    def test_trefoil_record(self, table):
        K = table["3_1"]
        assert (K.r2, K.M, K.r0, K.nu_sharp, K.genus) == (4, -4, 1, -1, 1)

    @pytest.mark.parametrize("n", range(1, 40))
    def test_twist_family(self, table, n):
        K = table[f"K_{2 * n - 1}"]
        assert (K.r2, K.M) == (8 * n - 4, -4)
        K = table[f"K_{2 * n}"]
        assert (K.r2, K.M) == (8 * n, 0)
        assert K.r0 == K.r2 // 4 and K.nu_sharp == K.M // 4

    def test_twist_low_members_match_explicit_records(self, table):
        for fam, explicit in (("K_1", "3_1"), ("K_2", "4_1")):
            a, b = table[fam], table[explicit]
            assert (a.r2, a.M, a.genus) == (b.r2, b.M, b.genus)

    @pytest.mark.parametrize("name", ["P(1,-3,3)", "P(7,-3,3)", "P_4"])
    def test_pretzel_family(self, table, name):
        K = table[name]
        assert (K.r2, K.M) == (16, 0)

    @pytest.mark.parametrize("p, q", [(2, 3), (3, 5), (2, 7), (4, 9)])
    def test_torus_family(self, table, p, q):
        K = table[f"T({p},{q})"]
        assert K.M is None and K.r2 is None
        assert (K.abs_M_lo, K.abs_M_hi, K.abs_nu_sharp) == (p * q - p - q, p * q - 2, p * q - p - q)

    @pytest.mark.parametrize("bad", ["T(3,6)", "T(1,5)", "K_0", "nope"])
    def test_unknown_names(self, table, bad):
        assert bad not in table
        with pytest.raises(KeyError):
            table[bad]

    def test_every_fixture_validates(self, fixtures):
        assert all(validate(K) == [] for K in fixtures)

    def test_env_var_path(self, tmp_path, monkeypatch):
        p = tmp_path / "db.json"
        p.write_text(doc(rec("Z", r2=8, M=0)))
        monkeypatch.setenv(ENV_VAR, str(p))
        assert list(open_table()) == ["Z"]
        monkeypatch.delenv(ENV_VAR)
        assert "3_1" in open_table()


class TestLoad:
    def test_top_level_array(self):
        T = loads(json.dumps([rec(r2=4, M=-4), {"family": "twist"}]))
        assert T["K"].M == -4 and T["K_3"].r2 == 12

    def test_stream(self):
        T = load(io.BytesIO(doc(rec(r2=4, M=4)).encode()))
        assert T["K"].M == 4

    def test_invalid_json_reports_line(self):
        with pytest.raises(KnotDBParseError, match="line 3"):
            loads('{\n "knots": [\n  {"name": }\n]}')

    def test_r2_not_divisible_by_4(self):
        with pytest.raises(KnotDBValidationError, match="r2 not divisible by 4"):
            loads(doc(rec(r2=6, M=0)))

    def test_r2_below_abs_M(self):
        with pytest.raises(KnotDBValidationError, match=r"r2 < \|M\|"):
            loads(doc(rec(r2=4, M=-8)))

    def test_non_strict_keeps_bad_records(self):
        T = loads(doc(rec(r2=6, M=0)), strict=False)
        assert validate(T["K"]) == ["r2 not divisible by 4"]

    def test_missing_provenance(self):
        with pytest.raises(KnotDBParseError, match="provenance"):
            loads(json.dumps([{"name": "K", "r2": 4, "M": 4}]))

    def test_unknown_field_names_record_and_line(self):
        with pytest.raises(KnotDBParseError, match=r"record 1 \('B', line \d+\).*colour"):
            loads(doc(rec("A"), rec("B", colour=3)))

    def test_wrong_type(self):
        with pytest.raises(KnotDBParseError, match="'genus' must be an integer"):
            loads(doc(rec(genus="one")))
        with pytest.raises(KnotDBParseError, match="boolean"):
            loads(doc(rec(lspace_f2=1)))

    def test_duplicate_names(self):
        with pytest.raises(KnotDBValidationError, match="duplicate"):
            loads(doc(rec("A"), rec("A")))

    def test_unknown_family(self):
        with pytest.raises(KnotDBParseError, match="unknown family"):
            loads(json.dumps([{"family": "hopf"}]))


class TestValidate:
    def test_valid_trefoil(self, table):
        assert validate(table["3_1"]) == []

    def test_r2_below_r0(self):
        assert validate(KnotRecord("K", r2=4, r0=8)) == ["r2 < r0"]

    def test_lspace_flag_needs_r2_equal_abs_M(self):
        K = KnotRecord("K", r2=8, M=-4, lspace_f2=True, torsion_averse=True)
        assert validate(K) == ["L-space flag requires r2 = |M|"]

    def test_lspace_flag_needs_torsion_averse(self):
        assert "L-space flag requires torsion_averse" in validate(
            KnotRecord("K", r2=4, M=4, lspace_f2=True, torsion_averse=False)
        )

    def test_lspace_genus_nu(self):
        K = KnotRecord("K", r2=4, M=4, nu_sharp=3, r0=3, genus=1, lspace_f2=True, torsion_averse=True)
        assert validate(K) == ["L-space flag requires |nu_sharp| = 2*genus - 1"]

    def test_r2_r0_gap(self):
        K = KnotRecord("K", r2=8, M=0, r0=4, nu_sharp=6)
        assert validate(K) == ["r2 - r0 < |M - nu_sharp|"]

    def test_partial_records_are_fine(self):
        assert validate(KnotRecord("K")) == []
        assert validate(KnotRecord("K", M=4)) == []

    def test_abs_bounds(self):
        assert "|M| bounds admit no multiple of 4" in validate(KnotRecord("K", abs_M_lo=5, abs_M_hi=7))
        assert "|M| above abs_M_hi" in validate(KnotRecord("K", M=16, abs_M_lo=7, abs_M_hi=13))

    def test_negative_field(self):
        assert "genus must be nonnegative" in validate(KnotRecord("K", genus=-1))

    def test_require(self):
        with pytest.raises(IncompleteRecordError) as ei:
            KnotRecord("K", M=0).require("r2", "M", purpose="x")
        assert ei.value.fields == ("r2",) and ei.value.exit_code == 2


records = st.builds(
    lambda name, m, extra, g, cp, cm: KnotRecord(
        name, r2=4 * abs(m) + 4 * extra, M=4 * m, genus=g, clasp_plus=cp, clasp_minus=cm
    ),
    st.sampled_from(["A", "B", "C", "m(D)"]),
    st.integers(-6, 6),
    st.integers(0, 4),
    st.integers(0, 5),
    st.integers(0, 3),
    st.integers(0, 3),
)


class TestAlgebra:
    def test_mirror_trefoil(self, table):
        m = mirror(table["3_1"])
        assert (m.name, m.M, m.r2, m.nu_sharp) == ("m(3_1)", 4, 4, 1)
        assert (m.clasp_plus, m.clasp_minus) == (0, 1)
        assert table["m(3_1)"] == m

    def test_mirror_fixed_points(self, table):
        assert mirror(table["unknot"]) == table["unknot"]
        assert mirror(table["4_1"]).M == 0

    @given(records)
    def test_mirror_involution(self, K):
        assert mirror(mirror(K)) == K
        assert mirror(K).M == -K.M and mirror(K).r2 == K.r2

    def test_sum_examples(self, table):
        t, u, m = table["3_1"], table["unknot"], table["m(3_1)"]
        assert connected_sum(t, t).M == -8
        assert connected_sum(t, u) == t
        s = connected_sum(t, m)
        assert s.M == 0 and s.r2 is None and s.r0 is None and s.nu_sharp is None
        assert s.name == "3_1#m(3_1)"

    def test_sum_bounds_are_annotated(self, table):
        s = connected_sum(table["3_1"], table["3_1"])
        assert s.genus == 2 and s.slice_genus == 2 and s.clasp_plus == 2
        assert {"slice_genus", "clasp_plus", "clasp_minus"} <= s.upper_bound_fields
        assert "genus" not in s.upper_bound_fields

    @given(records, records, records)
    def test_sum_M_commutative_associative(self, A, B, C):
        assert connected_sum(A, B).M == connected_sum(B, A).M
        assert connected_sum(connected_sum(A, B), C).M == connected_sum(A, connected_sum(B, C)).M
        assert connected_sum(A, B).genus == A.genus + B.genus
