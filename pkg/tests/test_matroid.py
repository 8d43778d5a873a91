import itertools

import pytest
from hypothesis import given, settings, strategies as st

from permuto import matroid as mt
from permuto.errors import (CapExceeded, EmptyFamily, ExchangeFailure,
                            HasLoops, MixedCardinality, ParseError)


def brute_loopless(n, r):
    """Independent oracle: filter every nonempty family of r-subsets."""
    subsets = [mt.mask_of(c) for c in itertools.combinations(range(1, n + 1), r)]
    out = []
    for pick in range(1, 1 << len(subsets)):
        fam = [subsets[i] for i in range(len(subsets)) if pick >> i & 1]
        try:
            m = mt.validate(n, fam)
        except ExchangeFailure:
            continue
        if m.is_loopless:
            out.append(m)
    return out


def test_validate_uniform_and_witnesses():
    m = mt.validate(4, itertools.combinations(range(1, 5), 2))
    assert (m.n, m.r, len(m.bases)) == (4, 2, 6)
    with pytest.raises(ExchangeFailure) as err:
        mt.validate(4, [(1, 2), (3, 4)])
    assert err.value.b1 and err.value.b2 and err.value.i in (1, 2, 3, 4)
    m0 = mt.validate(1, [()])
    assert (m0.n, m0.r, m0.bases) == (1, 0, (0,))
    with pytest.raises(EmptyFamily):
        mt.validate(3, [])
    with pytest.raises(MixedCardinality):
        mt.validate(3, [(1,), (1, 2)])


def test_validate_edge_cross_check():
    mt.validate(4, itertools.combinations(range(1, 5), 2), cross_check_edges=True)
    mt.validate(4, [(1, 3), (1, 4), (2, 3), (2, 4)], cross_check_edges=True)
    mt.validate(3, [(1, 2), (1, 3)], cross_check_edges=True)


def test_rank_closure():
    u23 = mt.uniform(2, 3)
    assert mt.rank_closure(u23, (1, 2)) == (2, 0b111)
    withloops = mt.embed(mt.uniform(1, 2), 4, (1, 3))
    assert mt.rank_closure(withloops, ()) == (0, mt.mask_of((2, 4)))
    fano = mt.fano()
    line = mt.mask_of((1, 2, 3))
    assert mt.rank_closure(fano, line) == (2, line)


def test_proper_flats():
    assert mt.proper_flats(mt.uniform(2, 3)) == [1, 2, 4]
    assert mt.proper_flats(mt.uniform(1, 5)) == []
    flats = mt.proper_flats(mt.fano())
    assert len(flats) == 14
    assert sum(1 for f in flats if f.bit_count() == 1) == 7
    assert sum(1 for f in flats if f.bit_count() == 3) == 7


def test_connected_components():
    assert mt.connected_components(mt.uniform(2, 4)) == (0b1111,)
    ds = mt.catalog("directsum(uniform:1,2,uniform:1,2)")
    assert mt.connected_components(ds) == (0b0011, 0b1100)
    assert mt.connected_components(mt.fano()) == ((1 << 7) - 1,)
    with pytest.raises(HasLoops):
        mt.connected_components(mt.embed(mt.uniform(1, 2), 3, (1, 2)))


def test_restriction_fixtures():
    u23 = mt.uniform(2, 3)
    assert mt.restriction(u23, (1, 2)) == mt.uniform(2, 2)
    line = mt.restriction(mt.fano(), (1, 2, 3))
    assert line == mt.uniform(2, 3)
    assert mt.restriction(u23, (1, 2, 3)) == u23
    with pytest.raises(ParseError):
        mt.restriction(u23, ())


def test_restriction_independence_oracle():
    for m in [mt.uniform(2, 4), mt.fano(), mt.catalog("directsum(uniform:1,2,uniform:2,3)")]:
        for size in range(1, min(m.n, 4) + 1):
            for j in itertools.combinations(range(1, m.n + 1), size):
                jmask = mt.mask_of(j)
                sub = mt.restriction(m, jmask)
                elems = list(j)
                expect = set()
                for s in range(1 << len(elems)):
                    big = mt.mask_of(elems[t] for t in range(len(elems)) if s >> t & 1)
                    if m.rank(big) == big.bit_count():
                        expect.add(s)
                assert sub.independent_sets() == expect


def test_dilworth_fixtures():
    assert mt.dilworth_truncation(mt.uniform(2, 3)) == mt.uniform(1, 3)
    assert mt.dilworth_truncation(mt.uniform(3, 4)) == mt.uniform(2, 6)
    d = mt.dilworth_truncation(mt.uniform(1, 2))
    assert (d.n, d.r, d.bases) == (1, 0, (0,))
    with pytest.raises(HasLoops):
        mt.dilworth_truncation(mt.embed(mt.uniform(1, 1), 2, (1,)))


def test_dilworth_rank_on_connected_corpus():
    for n in range(2, 6):
        for r in range(2, n + 1):
            for m in mt.enumerate_loopless(n, r):
                if mt.connected_components(m) != (m.full_mask,):
                    continue
                d = mt.dilworth_truncation(m)
                assert d.r == m.r - 1
                mt.validate(d.n, d.bases)


def test_dilworth_of_fano():
    d = mt.dilworth_truncation(mt.fano())
    assert (d.n, d.r, len(d.bases)) == (21, 2, 189)


def test_catalog():
    assert len(mt.catalog("uniform:2,4").bases) == 6
    assert len(mt.catalog("fano").bases) == 28
    ds = mt.catalog("directsum(uniform:1,2,uniform:1,2)")
    assert sorted(ds.bases) == [mt.mask_of((i, j)) for j in (3, 4) for i in (1, 2)] != []
    assert ds.bases == (5, 6, 9, 10)
    with pytest.raises(ParseError):
        mt.catalog("grassmannian:2,4")
    with pytest.raises(ParseError):
        mt.catalog("uniform:2")


def test_file_round_trip(tmp_path):
    for m in [mt.uniform(2, 4), mt.fano(), mt.validate(2, [()])]:
        text = mt.dumps(m)
        assert mt.loads(text) == m
        assert mt.dumps(mt.loads(text)) == text
    path = tmp_path / "m.txt"
    path.write_text("# a comment\nmatroid n=3 r=2\n1 2\n1 3  # trailing\n\n2 3\n")
    assert mt.catalog(f"file:{path}") == mt.uniform(2, 3)
    with pytest.raises(ParseError):
        mt.loads("matroid n=3 r=1\n1 2\n")
    with pytest.raises(ParseError):
        mt.loads("bases only\n1 2\n")


@pytest.mark.parametrize("n,r,count", [(2, 1, 1), (3, 2, 4), (4, 2, 14), (5, 2, 51)])
def test_enumerate_counts(n, r, count):
    assert sum(1 for _ in mt.enumerate_loopless(n, r)) == count


def test_enumerate_matches_brute_force():
    for n in range(1, 5):
        for r in range(1, n + 1):
            fast = {m.bases for m in mt.enumerate_loopless(n, r)}
            slow = {m.bases for m in brute_loopless(n, r)}
            assert fast == slow


def test_enumerate_orbit_closure_and_uniqueness():
    for n in range(2, 5):
        for r in range(1, n + 1):
            fams = [m.bases for m in mt.enumerate_loopless(n, r)]
            assert len(fams) == len(set(fams))
            keys = set(fams)
            for bases in fams:
                m = mt.Matroid(n, r, bases)
                for perm in itertools.permutations(range(1, n + 1)):
                    assert mt.relabel(m, perm).bases in keys


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        next(mt.enumerate_loopless(7, 3))


def test_emitted_matroids_pass_exchange():
    for m in mt.enumerate_loopless(4, 3):
        assert mt.validate(m.n, m.bases) == m
        assert m.is_loopless


def test_rank_monotone_and_submodular_exhaustive():
    for m in [mt.uniform(2, 4), mt.fano(), mt.catalog("directsum(uniform:1,2,uniform:2,3)")]:
        n = m.n
        if n > 5:
            continue
        for s in range(1 << n):
            for t in range(1 << n):
                if s & t == s:
                    assert m.rank(s) <= m.rank(t)
                assert m.rank(s) + m.rank(t) >= m.rank(s | t) + m.rank(s & t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 6 - 1), st.integers(0, 2 ** 6 - 1), st.integers(0, 100))
def test_rank_submodular_random_on_six(s, t, pick):
    corpus = list(mt.enumerate_loopless(4, 2))
    m = mt.embed(corpus[pick % len(corpus)], 6, (1, 2, 5, 6))
    assert m.rank(s) + m.rank(t) >= m.rank(s | t) + m.rank(s & t)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 4 - 1), st.integers(0, 30))
def test_closure_idempotent_extensive(s, pick):
    corpus = list(mt.enumerate_loopless(4, 2)) + list(mt.enumerate_loopless(4, 3))
    m = corpus[pick % len(corpus)]
    c = m.closure(s)
    assert c & s == s
    assert m.closure(c) == c
    assert m.rank(c) == m.rank(s)
