import pytest
from hypothesis import given, settings, strategies as st

from gcrbch import bch, codes, gf2m
from gcrbch.bch import SyndromePair


@pytest.mark.parametrize("m,e,params", [
    (3, 1, (7, 4, 3)), (3, 2, (7, 1, 7)), (4, 1, (15, 11, 3)), (4, 2, (15, 7, 5)), (5, 2, (31, 21, 5)),
])
def test_bch_parameters(m, e, params):
    C = bch.bch_code(gf2m.make_field(m), e)
    assert (C.n, C.k, codes.min_distance(C)) == params


def test_m2_columns():
    cs = bch.build_columns(gf2m.make_field(2))
    assert [tuple(c) for c in cs.columns] == [(1, 1), (2, 1), (3, 1)]


def test_columns_distinct_and_indexed():
    f = gf2m.make_field(5)
    cs = bch.build_columns(f)
    assert len(set(cs.columns)) == cs.n == 31
    for j, c in enumerate(cs.columns):
        assert c.b == gf2m.cube(f, c.a)
        assert cs.index_of(c.a) == j
    with pytest.raises(ValueError):
        cs.index_of(0)


def test_codewords_have_zero_syndrome():
    f = gf2m.make_field(4)
    cs = bch.build_columns(f)
    C2, C1 = bch.bch_code(f, 2), bch.bch_code(f, 1)
    for w in C2.codewords().tolist():
        assert bch.syndrome(cs, w) == (0, 0)
        assert C1.contains(w)
    for w in C1.codewords().tolist():
        assert bch.syndrome(cs, w).a == 0


def test_pack_unpack():
    p = SyndromePair(0x5, 0xC)
    assert SyndromePair.unpack(p.pack(4), 4) == p
    assert p.to_json() == ["0x5", "0xc"]


def test_syndrome_preconditions():
    cs = bch.build_columns(gf2m.make_field(3))
    with pytest.raises(ValueError):
        bch.syndrome(cs, 1 << 7)
    with pytest.raises(ValueError):
        bch.syndrome(cs, 1, n=8)


def test_size_limits():
    with pytest.raises(ValueError):
        bch.bch_code(gf2m.make_field(7), 2)
    with pytest.raises(ValueError):
        bch.binary_parity_check(gf2m.make_field(4), 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, (1 << 15) - 1), st.integers(0, (1 << 15) - 1))
def test_syndrome_is_linear(u, v):
    cs = bch.build_columns(gf2m.make_field(4))
    su, sv, suv = bch.syndrome(cs, u), bch.syndrome(cs, v), bch.syndrome(cs, u ^ v)
    assert suv == (su.a ^ sv.a, su.b ^ sv.b)
