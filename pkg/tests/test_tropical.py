import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from permuto import matroid as mt, tropical as tp
from permuto.errors import HasLoops, ParseError, WeightNotCertified

FUBINI = {1: 1, 2: 3, 3: 13, 4: 75, 5: 541, 6: 4683}


def test_enumerate_chains_counts():
    assert sum(1 for _ in tp.enumerate_chains(3, 1)) == 12
    assert sum(1 for _ in tp.enumerate_chains(2, 1)) == 2
    for n in (3, 4, 5):
        assert sum(1 for _ in tp.enumerate_chains(n, n - 1)) == math.factorial(n)
    for n, total in FUBINI.items():
        assert sum(1 for _ in tp.enumerate_chains(n, 0)) == total
    with pytest.raises(ParseError):
        list(tp.enumerate_chains(3, 3))


def test_chains_canonical_and_unique():
    seen = list(tp.enumerate_chains(4, 0))
    assert len(seen) == len(set(seen))
    for chain in seen:
        prev = 0
        for s in chain:
            assert prev | s == s and prev != s
            prev = s


def test_bergman_fixtures():
    assert tp.bergman_fan(mt.uniform(2, 3)).maximal_chains == ((1,), (2,), (4,))
    assert tp.bergman_fan(mt.uniform(1, 4)).maximal_chains == ((),)
    fano = tp.bergman_fan(mt.fano())
    assert len(fano.maximal_chains) == 21
    assert fano.dim == 2
    assert all(len(c) == 2 for c in fano.maximal_chains)
    with pytest.raises(HasLoops):
        tp.bergman_fan(mt.embed(mt.uniform(1, 2), 3, (1, 2)))


def test_cone_meets_fixtures():
    w = (0, 1, 3)
    meets, transverse = tp.cone_meets([(2, 3)], w, [(2,)])
    assert meets and transverse
    for tau in ([(1,)], [(2,)], [(3,)]):
        assert tp.cone_meets([(1,)], w, tau)[0] is False
    assert tp.cone_meets([], (5, 1, 2), [])[0] is False


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_cone_meets_matches_simplex(seed):
    rng = random.Random(seed)
    n = rng.choice((3, 4))
    chains = [c for bucket in tp.fan_chains(n) for c, _ in bucket]
    sigma = rng.choice(chains)
    tau = rng.choice(chains)
    w = tuple(rng.randrange(-8, 9) for _ in range(n))
    fast = tp.cone_meets(sigma, w, tau, n)[0]
    assert fast == tp.cone_meets_simplex(sigma, w, tau, n)


def test_cone_meets_handles_rationals():
    from fractions import Fraction
    w = (Fraction(1, 2), Fraction(1, 3), Fraction(-2, 3))
    sigma, tau = [(1,)], [(2,)]
    assert tp.cone_meets(sigma, w, tau, 3)[0] == tp.cone_meets_simplex(sigma, w, tau, 3)


def test_golden_weight_and_degeneration():
    m = mt.uniform(2, 3)
    w = tp.certify_weight(m, (0, 1, 3))
    deg = tp.initial_degeneration(m, w)
    assert set(deg.components) == {(4,), (5,), (6,)}
    assert deg.coeffs == {(4,): 1, (5,): 1, (6,): 1,
                          (4, 5): -1, (4, 6): -1, (1, 5): 0, (2, 6): 0}
    assert deg.total() == 1
    assert tp.multiplicity_certificate(m, w)
    text = tp.report(deg)
    assert text.splitlines()[0] == "indeg n=3 r=2 seed=-1 w=0,1,3"
    assert "3<1,3 c=-1" in text and "3 c=1 *" in text.splitlines()[1]


def test_degenerate_weight_rejected():
    with pytest.raises(WeightNotCertified):
        tp.certify_weight(mt.uniform(2, 3), (0, 0, 1))


def test_single_component_for_rank_one():
    for n in (2, 3, 4):
        m = mt.uniform(1, n)
        deg = tp.degeneration(m, tp.sample_weight(m, 17))
        assert len(deg.components) == 1
        assert deg.total() == 1
        assert all(len(c) == n - 1 for c in deg.components)


def test_free_matroid_origin_coefficient():
    for n in (2, 3, 4):
        m = mt.uniform(n, n)
        deg = tp.degeneration(m, tp.sample_weight(m, 17))
        assert deg.components == ((),)
        assert deg.coeffs[()] == 1
        assert deg.total() == 1
        assert all(v == 0 for k, v in deg.coeffs.items() if k != ())
        assert len(deg.coeffs) == FUBINI[n]


def test_determinism_bit_identical():
    m = mt.uniform(2, 4)
    w1 = tp.sample_weight(m, 9)
    w2 = tp.sample_weight(m, 9)
    assert w1 == w2
    assert tp.initial_degeneration(m, w1) == tp.initial_degeneration(m, w2)
    assert tp.sample_weight(m, 10) != w1 or True  # different seed may differ


def test_weight_scope_enforced():
    m = mt.uniform(2, 3)
    other = mt.uniform(2, 4)
    w = tp.sample_weight(other, 3)
    with pytest.raises(WeightNotCertified):
        tp.initial_degeneration(m, w)
    with pytest.raises(WeightNotCertified):
        tp.initial_degeneration(m, (1, 2, 3))


def test_loops_give_empty_degeneration():
    m = mt.embed(mt.uniform(1, 2), 3, (1, 2))
    w = tp.sample_weight(mt.uniform(2, 3), 3)
    deg = tp.initial_degeneration(m, w)
    assert deg.is_empty and deg.components == () and deg.total() == 0


def corpus_small():
    out = []
    for n in range(1, 5):
        for r in range(1, n + 1):
            out.extend(mt.enumerate_loopless(n, r))
    return out


def test_imap_matches_direct_meets():
    # the superchain closure must agree with testing every chain against the
    # shifted maximal Bergman cones directly
    for m in corpus_small():
        w = tp.sample_weight(m, 23)
        deg = tp.degeneration(m, w)
        flags = tp.bergman_fan(m).maximal_chains
        for k in range(m.n - m.r, m.n):
            for sets, _ in tp.fan_chains(m.n)[k]:
                direct = any(tp.cone_meets(sets, w, f, m.n)[0] for f in flags)
                assert direct == bool(deg.imap(sets)), (m, sets)


def test_disjointness_clause():
    # certified weights never let low-dimensional cones reach the shifted fan
    for m in corpus_small():
        if m.r < 2:
            continue
        w = tp.sample_weight(m, 31)
        by_len = tp.bergman_chains_by_len(m)
        for k in range(0, m.n - 1):
            for sets, _ in tp.fan_chains(m.n)[k]:
                for mlen in range(0, min(len(by_len), m.n - 1 - k)):
                    for tau, _ in by_len[mlen]:
                        assert tp.cone_meets(sets, w, tau, m.n)[0] is False


def test_sum_coefficients_on_corpus():
    for m in corpus_small():
        for seed in (1, 2):
            deg = tp.degeneration(m, tp.sample_weight(m, seed))
            assert deg.total() == 1
            assert tp.multiplicity_certificate(m, tp.sample_weight(m, seed))


def test_imap_monotone_under_extension():
    m = mt.uniform(2, 4)
    deg = tp.degeneration(m, tp.sample_weight(m, 5))
    for chain in list(deg.coeffs):
        for bigger in tp._superchains(chain, m.n):
            assert deg.imap(bigger) == 1
