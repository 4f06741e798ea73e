import pytest

from amplecert.ampleness import sufficient_ample
from amplecert.degrees import (DegreeRecord, Method, coverage_gaps,
                               degrees_half8, degrees_half16, degrees_integer,
                               degrees_trope, method_generators,
                               rational_family_degrees, sporadic_degrees,
                               theorem_main_set)
from amplecert.lattice import KummerClass, default_generators, is_integral, \
    is_primitive, pair
from amplecert.representations import dominant_squares

HALF8_EXPECTED = set((38, 57, 59, 71, 73, 75, 77, 79, 81, 83, 85)) | set(range(95, 160))
TROPE_EXPECTED = set((29, 45, 46, 47, 49, 63, 65, 67, 69, 71, 73)) | set(range(85, 160))
SPORADIC_20 = [14, 26, 28, 29, 34, 38, 40, 42, 44, 45, 46, 47, 48, 49, 53,
               56, 57, 58, 59, 60]


class TestIntegerRoute:
    def test_163(self):
        rec = degrees_integer(163)
        assert rec is not None and rec.primitive
        assert rec.witness.h2 == 20
        assert pair(rec.witness, rec.witness) == 326

    def test_34(self):
        assert degrees_integer(34) is not None

    def test_divisible_witness_withheld(self):
        # the canonical representation of 169 gives a class halving into the
        # all-sixteen pattern, so e = 168 yields no record on this route
        assert dominant_squares(169) is not None
        assert degrees_integer(168) is None

    def test_odd_list(self):
        for e in (53, 79, 97, 161):
            assert degrees_integer(e) is not None

    def test_unreachable(self):
        assert degrees_integer(14) is None


class TestHalf16Route:
    def test_14(self):
        rec = degrees_half16(14)
        assert rec.witness == KummerClass(1, 6, (1,) * 16)
        assert pair(rec.witness, rec.witness) == 28

    def test_even_only(self):
        with pytest.raises(ValueError):
            degrees_half16(15)

    def test_56(self):
        assert degrees_half16(56) is not None

    def test_gaps(self):
        # the two degrees whose representations do not exist
        assert degrees_half16(48) is None
        assert degrees_half16(58) is None

    def test_even_sweep(self):
        missing = [e for e in range(56, 400, 2) if degrees_half16(e) is None]
        assert missing == [58]


class TestHalf8:
    def test_expected_subset(self):
        got = {r.e for r in degrees_half8(160)}
        assert HALF8_EXPECTED <= got
        assert min(got) == 38
        assert 14 not in got
        assert 48 not in got

    def test_other_d_exploration_flag(self):
        # d = 2 is supported for exploration; the dominance cap pushes the
        # smallest reachable degree up to 88
        recs = degrees_half8(120, d=2)
        assert recs and all(r.witness.d == 2 for r in recs)
        assert min(r.e for r in recs) == 88
        for r in recs:
            assert pair(r.witness, r.witness) == 2 * r.e

    def test_witnesses_audit(self):
        for rec in degrees_half8(90):
            w = rec.witness
            assert pair(w, w) == 2 * rec.e
            assert sufficient_ample(w)
            assert is_integral(w, default_generators(1)).member
            assert rec.primitive
            # exactly seven halved coefficients among the first fifteen
            assert sum(1 for x in w.e2[:15] if x % 2) == 7
            assert w.e2[15] == 1 and w.h2 % 2 == 0


class TestTrope:
    def test_expected_subset(self):
        got = {r.e for r in degrees_trope(160)}
        assert TROPE_EXPECTED <= got
        assert 48 not in got

    def test_29_boundary(self):
        rec = next(r for r in degrees_trope(40) if r.e == 29)
        w = rec.witness
        assert w.h2 == 9
        assert sorted(w.e2[:15], reverse=True) == [2] * 10 + [1] * 5
        # dominance is met with equality before the half-shift
        assert w.h2 == sum(sorted(w.e2, reverse=True)[:4]) + 1

    def test_needs_odd_d(self):
        with pytest.raises(ValueError):
            degrees_trope(100, d=2)

    def test_integrality_needs_matching_trope_subset(self):
        rec = next(r for r in degrees_trope(40) if r.e == 29)
        assert is_integral(rec.witness, method_generators(Method.TROPE)).member
        assert not is_integral(rec.witness, default_generators(1)).member


class TestRationalFamily:
    def test_values(self):
        got = {r.e: r for r in rational_family_degrees(61)}
        assert sorted(got) == [14, 28, 34, 46]
        w14 = got[14].witness
        assert w14.h2 == 6 and w14.e2 == (1,) * 16

    def test_exclusions(self):
        # (2, 1) fails a > 2c and (4, 2) fails coprimality
        assert 4 not in {r.e for r in rational_family_degrees(20)}
        assert 16 not in {r.e for r in rational_family_degrees(20)}

    def test_all_primitive(self):
        for rec in rational_family_degrees(200):
            assert rec.primitive
            assert is_primitive(rec.witness, default_generators(1))


class TestMainSet:
    def test_min_max_e(self):
        with pytest.raises(ValueError):
            theorem_main_set(61)

    def test_sporadic_and_coverage(self):
        table = theorem_main_set(165)
        spor = sporadic_degrees(table, include_twisted=False)
        # 48 is claimed in the source lists but unreachable (its route needs
        # a representation of 26 that does not exist); see the reports module
        assert spor == [e for e in SPORADIC_20 if e != 48]
        assert coverage_gaps(table, 62, 165) == []

    def test_twisted_merged(self):
        table = theorem_main_set(165)
        spor = sporadic_degrees(table, include_twisted=True)
        for e in (18, 32, 36, 50, 54):
            assert e in spor
            assert any(r.method is Method.TWISTED_MODULI for r in table[e])

    def test_methods_reported_per_degree(self):
        table = theorem_main_set(165)
        assert {r.method for r in table[14]} >= {Method.HALF16, Method.RATIONAL_FAMILY}
        for recs in table.values():
            for rec in recs:
                if isinstance(rec.witness, KummerClass):
                    assert pair(rec.witness, rec.witness) == 2 * rec.e
                    assert sufficient_ample(rec.witness)

    def test_record_ids(self):
        rec = DegreeRecord(14, Method.HALF16, KummerClass(1, 6, (1,) * 16), True)
        assert rec.witness_id() == "half16:14"
        assert rec.to_json()["witness"]["h2"] == 6
