import json
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gcrbch import bch, bitlin, codes, cover, gf2m
from gcrbch.bch import SyndromePair


def min_cover_oracle(cs, targets):
    m = cs.m
    cols = [c.pack(m) for c in cs.columns]
    packed = [SyndromePair(*t).pack(m) for t in targets]
    for t in range(cs.n + 1):
        for S in combinations(range(cs.n), t):
            span = bitlin.SpanTester(cols[i] for i in S)
            if all(v in span for v in packed):
                return t, S
    return None, ()


@pytest.fixture(scope="module")
def cs8():
    return bch.build_columns(gf2m.make_field(3))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), min_size=1, max_size=3))
def test_min_cover_matches_oracle(targets):
    cs = bch.build_columns(gf2m.make_field(3))
    assert cover.min_cover(cs, targets) == min_cover_oracle(cs, targets)


def test_min_cover_unreachable_at_m2():
    cs = bch.build_columns(gf2m.make_field(2))
    # every column has b = 1, so the span misses any target with b outside {0, 1}
    assert cover.min_cover(cs, [(0, 1)]) == (3, (0, 1, 2)) == min_cover_oracle(cs, [(0, 1)])
    assert cover.min_cover(cs, [(1, 0)]) == min_cover_oracle(cs, [(1, 0)])
    assert cover.min_cover(cs, [(0, 2)]) == (None, ())


def test_gcr_values_m3_agree_with_literal(cs8):
    C = bch.bch_code(cs8.field, 2)
    for r in (1, 2):
        sym = cover.gcr_exact(cs8, r)
        assert sym == cover.gcr_exact(cs8, r, symmetry=False) == cover.gcr_literal(C, r)
    assert [cover.gcr_exact(cs8, r) for r in (1, 2, 3)] == [3, 5, 6]


def test_gcr_m4_r1_literal():
    f = gf2m.make_field(4)
    assert cover.gcr_literal(bch.bch_code(f, 2), 1) == cover.gcr_exact(bch.build_columns(f), 1) == 3


def test_gcr_out_of_range():
    with pytest.raises(ValueError):
        cover.gcr_exact(bch.build_columns(gf2m.make_field(5)), 3)


def test_gcr_jobs_invariant(cs8):
    a = cover.gcr_search(cs8, 2, jobs=1)
    b = cover.gcr_search(cs8, 2, jobs=2)
    assert (a.value, a.worst_targets, a.stats) == (b.value, b.worst_targets, b.stats)


def test_orbit_count_matches_burnside_total(cs8):
    res = cover.gcr_search(cs8, 2)
    assert res.subspaces_enumerated == bitlin.count_subspaces(6, 2)
    assert res.orbits_visited < res.subspaces_enumerated
    assert sum(res.stats["histogram"].values()) == res.orbits_visited


def test_certificate_round_trip_and_tamper(cs8):
    f = cs8.field
    targets = [SyndromePair(0, 1), SyndromePair(0, 2)]
    cert = cover.certify_no_cover(cs8, targets, 3)
    assert cert.verdict == "no-cover-at-t" and cert.subsets_checked == comb(7, 3)
    again = cover.CoverCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert cover.recheck_certificate(again)
    again.subsets_checked -= 1
    assert not cover.recheck_certificate(again)
    covered = cover.certify_no_cover(cs8, targets, 5)
    assert covered.verdict == "covered" and cover.recheck_certificate(covered)
    bogus = cover.CoverCertificate(f, targets, 5, 1, "covered", (0, 1, 2, 3, 3))
    assert not cover.recheck_certificate(bogus)


def test_certify_work_bound():
    cs = bch.build_columns(gf2m.make_field(6))
    with pytest.raises(ValueError):
        cover.certify_no_cover(cs, [SyndromePair(0, 1)], 12)


def test_certificate_matches_min_cover(cs16):
    targets = [SyndromePair(0, 1), SyndromePair(0, 8)]
    t, _ = cover.min_cover(cs16, targets)
    assert cover.certify_no_cover(cs16, targets, t - 1).verdict == "no-cover-at-t"
    assert cover.certify_no_cover(cs16, targets, t).verdict == "covered"


def test_d_cc_agrees_with_generic():
    for m in (3, 4):
        f = gf2m.make_field(m)
        cs = bch.build_columns(f)
        C, Csup = bch.bch_code(f, 2), bch.bch_code(f, 1)
        for r in (1, 2):
            assert cover.d_cc(cs, r) == cover.d_cc_generic(C, Csup, r)
            assert cover.d_cc(cs, r) == cover.d_cc(cs, r, symmetry=False)


def test_supercode_chain_m3(cs8):
    seq = codes.hamming_ghw_sequence(3)
    for r in (1, 2, 3):
        assert cover.gcr_exact(cs8, r) >= cover.d_cc(cs8, r) >= seq[r - 1]


def test_bounds():
    assert cover.counting_bound(2, 4).bound == 4
    assert cover.counting_bound(3, 8).bound is None
    assert cover.counting_bound(1, 1).bound == 2
    assert cover.supercode_bound(2, (7, 11), 5).bound == 5
    assert cover.supercode_bound(5, (7, 11), 8).hypothesis_holds is False
    assert cover.threshold_upper(2) == 7  # (2^3 + 3)^2 = 121 <= 2^7
    assert cover.threshold_upper(3) == 11  # 35^2 = 1225 <= 2^11
    assert cover.threshold_report(3, 10).bound is None
    with pytest.raises(ValueError):
        cover.threshold_upper(1)


@given(st.integers(2, 6), st.integers(1, 40))
def test_threshold_is_least(k, m):
    need = ((k - 1) * (1 << (k + 1)) + 3) ** 2
    assert cover.threshold_report(k, m).hypothesis_holds == ((1 << m) >= need)
