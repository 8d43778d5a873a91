import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from permuto import euler as eu, genperm as gp, matroid as mt, tropical as tp
from permuto.errors import (DegreeMismatch, HasLoops, NonUnitCoefficient,
                            NotDownwardClosed, NotPure, WrongArity)

SEED = 101


def hexagon():
    return gp.build_polytope("sum(seg:1,2,seg:1,3,seg:2,3)")


def golden_weight():
    return tp.certify_weight(mt.uniform(2, 3), (0, 1, 3))


def test_chi_golden():
    m = mt.uniform(2, 3)
    w = golden_weight()
    for a in range(5):
        assert eu.chi(m, hexagon(), a, w) == 3 * a + 1
    u13 = mt.uniform(1, 3)
    w13 = tp.sample_weight(u13, SEED)
    assert eu.chi(u13, gp.base_polytope(u13), 5, w13) == 1
    with pytest.raises(HasLoops):
        eu.chi(mt.embed(mt.uniform(1, 2), 3, (1, 2)), hexagon(), 1, w)


def test_numerical_dimension_fixtures():
    u24 = mt.uniform(2, 4)
    assert eu.numerical_dimension(u24, gp.build_polytope("simplex:1,2,3,4")) == 1
    assert eu.numerical_dimension(u24, gp.embed_spec(gp.build_polytope("seg:1,2"), 4)) == 1
    for m in [u24, mt.uniform(3, 4), mt.catalog("directsum(uniform:1,2,uniform:1,2)")]:
        assert eu.numerical_dimension(m, gp.build_polytope(f"point:{','.join('0' * m.n)}")) == 0


def test_snapper_fixtures():
    m = mt.uniform(2, 3)
    poly = eu.snapper_polynomial(m, hexagon(), golden_weight())
    assert (poly.degree, poly.h) == (1, (1, 2))
    assert poly.monomial_str() == "3*a + 1"
    u15 = mt.uniform(1, 5)
    w = tp.sample_weight(u15, SEED)
    p5 = gp.base_polytope(mt.uniform(2, 5))
    poly = eu.snapper_polynomial(u15, p5, w)
    assert poly.degree == 0 and poly.h == (1,)
    u33 = mt.uniform(3, 3)
    poly = eu.snapper_polynomial(u33, gp.build_polytope("simplex:1,2,3"),
                                 tp.sample_weight(u33, SEED))
    assert [poly.evaluate(a) for a in range(5)] == [eu.binom(a + 2, 2) for a in range(5)]


def test_hstar_fixtures():
    assert eu.hstar(mt.uniform(2, 3), hexagon(), golden_weight()) == (1, 2)
    u22 = mt.uniform(2, 2)
    assert eu.hstar(u22, gp.build_polytope("seg:1,2"), tp.sample_weight(u22, SEED)) == (1, 0)
    u12 = mt.uniform(1, 2)
    assert eu.hstar(u12, gp.build_polytope("seg:1,2"), tp.sample_weight(u12, SEED)) == (1,)


@pytest.mark.parametrize("vec,ok,witness", [
    ((1, 4, 21), False, 2),
    ((1, 1, 28), False, 2),
    ((1, 0, 1), False, 2),
    ((1,), True, None),
    ((1, 2), True, None),
    ((1, 3, 6), True, None),
    ((1, 3, 7), False, 2),
    ((2, 1), False, 0),
    ((1, -1, 0), False, 1),
    ((1, 2, 3, 5), False, 3),   # 3^<2> = C(3,2)+C(2,1)... = 3+1 -> raise 4
])
def test_macaulay_check(vec, ok, witness):
    assert eu.macaulay_check(vec) == (ok, witness)


def test_macaulay_rep_and_raise():
    assert eu.macaulay_raise(4, 1) == 10
    assert eu.macaulay_raise(3, 1) == 6
    assert eu.macaulay_raise(0, 2) == 0
    assert eu.macaulay_raise(6, 2) == 10      # 6 = C(4,2)
    assert eu.macaulay_raise(7, 2) == 11      # 7 = C(4,2)+C(1,1)
    # representation reconstructs the number
    for i in (1, 2, 3):
        for x in range(0, 40):
            assert sum(eu.binom(a, t) for a, t in eu._macaulay_rep(x, i)) == x


def test_omega_fixtures():
    for expr, want in [("uniform:1,2", 1), ("uniform:1,1", 1),
                       ("directsum(uniform:1,2,uniform:1,2)", 1)]:
        m = mt.catalog(expr)
        assert eu.omega(m, tp.sample_weight(m, SEED)) == want


def test_pairs_oracle_fixtures():
    u23 = mt.uniform(2, 3)
    assert eu.pairs_snapper_oracle(u23, {(1, 2): 1, (1, 3): 1, (2, 3): 1}) == 4
    a, b, c = 2, 3, 5
    assert eu.pairs_snapper_oracle(u23, {(1, 2): a, (1, 3): b, (2, 3): c}) == 1 + a + b + c
    u34 = mt.uniform(3, 4)
    assert eu.pairs_snapper_oracle(u34, {p: 1 for p in mt.pair_ground(4)}) == 22


def test_dhr_fixtures():
    assert eu.dhr_degree(mt.uniform(3, 3), [(1, 2), (2, 3)]) == 1
    assert eu.dhr_degree(mt.uniform(2, 3), [(1,)]) == 0
    fano = mt.fano()
    assert eu.dhr_degree(fano, [(1, 2, 3), (1, 4, 5)]) == 1
    assert eu.dhr_degree(fano, [(1, 2, 3), (1, 2, 3)]) == 0  # union rank 2 < 3
    with pytest.raises(WrongArity):
        eu.dhr_degree(mt.uniform(3, 3), [(1, 2)])


def test_kindred_fixtures():
    u12 = mt.uniform(1, 2)
    ms = eu.kindred_snapper(u12)
    assert ms.as_dict() == {0: 1, 1: 1, 2: 1}
    u23 = mt.uniform(2, 3)
    ks = eu.kindred_snapper(u23)
    assert ks.evaluate((1, 1, 1)) == 7
    assert ks.evaluate((2, 3, 5)) == 1 + 2 + 3 + 5 + 6 + 10 + 15
    rank0 = mt.validate(2, [()])
    assert eu.kindred_snapper(rank0).as_dict() == {0: 1}


def test_kindred_monomial_count_oracle():
    # evaluation equals the number of exponent vectors with independent support
    corpus = []
    for n in range(1, 5):
        for r in range(1, n + 1):
            corpus.extend(mt.enumerate_loopless(n, r))
    rng = random.Random(7)
    for m in rng.sample(corpus, 12):
        ms = eu.kindred_snapper(m)
        point = tuple(rng.randrange(0, 4) for _ in range(m.n))
        count = 0
        for b in itertools.product(*(range(v + 1) for v in point)):
            supp = mt.mask_of(i + 1 for i, v in enumerate(b) if v > 0)
            if m.rank(supp) == supp.bit_count():
                count += 1
        assert ms.evaluate(point) == count


def test_progenitor_round_trip_and_errors():
    u23 = mt.uniform(2, 3)
    d, top, prog = eu.multidegree_and_progenitor(eu.kindred_snapper(u23))
    assert (d, prog) == (2, u23) and set(top) == {3, 5, 6}
    with pytest.raises(NotPure):
        eu.multidegree_and_progenitor(
            eu.MultiSnapper(3, ((0, 1), (1, 1), (2, 1), (4, 1), (3, 1))))
    with pytest.raises(NonUnitCoefficient):
        eu.multidegree_and_progenitor(eu.MultiSnapper(1, ((0, 1), (1, 2))))
    with pytest.raises(NotDownwardClosed):
        eu.multidegree_and_progenitor(eu.MultiSnapper(2, ((0, 1), (3, 1))))


def test_projection_fixtures():
    ks = eu.kindred_snapper(mt.uniform(2, 3))
    assert eu.project_multisnapper(ks, (1, 2)) == eu.kindred_snapper(mt.uniform(2, 2))
    assert eu.project_multisnapper(ks, (1, 2, 3)) == ks
    rank0 = mt.validate(3, [()])
    assert eu.project_multisnapper(eu.kindred_snapper(rank0), (2,)).as_dict() == {0: 1}


def test_oracle_equivalence_small_sweep():
    rng = random.Random(5)
    for n in (2, 3, 4):
        for r in range(1, n + 1):
            for m in mt.enumerate_loopless(n, r):
                w = tp.sample_weight(m, SEED)
                for _ in range(3):
                    wmap = {p: rng.randrange(0, 3) for p in mt.pair_ground(n)}
                    z = [0] * (1 << n)
                    for t in range(1, 1 << n):
                        z[t] = sum(a for pr, a in wmap.items()
                                   if a and mt.mask_of(pr) & t)
                    p = gp.SubmodularSpec(n, tuple(z))
                    assert eu.chi(m, p, 1, w) == eu.pairs_snapper_oracle(m, wmap)


def test_permutation_equivariance():
    rng = random.Random(3)
    for m in [mt.uniform(2, 4), mt.uniform(3, 4),
              mt.catalog("directsum(uniform:1,2,uniform:2,3)")]:
        p = gp.base_polytope(m)
        w = tp.sample_weight(m, SEED)
        h = eu.hstar(m, p, w)
        om = eu.omega(m, w)
        for _ in range(3):
            perm = list(range(1, m.n + 1))
            rng.shuffle(perm)
            m2 = mt.relabel(m, perm)
            w2 = tp.sample_weight(m2, SEED)
            assert eu.hstar(m2, gp.relabel(p, perm), w2) == h
            assert eu.omega(m2, w2) == om


def test_valuativity_of_snapper_not_hstar():
    all2 = [mt.mask_of(c) for c in itertools.combinations(range(1, 5), 2)]
    m = mt.uniform(2, 4)
    m1 = mt.validate(4, [b for b in all2 if b != mt.mask_of((1, 2))])
    m2 = mt.validate(4, [b for b in all2 if b != mt.mask_of((3, 4))])
    m12 = mt.validate(4, [b for b in all2 if b not in (mt.mask_of((1, 2)), mt.mask_of((3, 4)))])
    p = gp.base_polytope(m12)
    quad = [(m, 1), (m1, -1), (m2, -1), (m12, 1)]
    for a in range(5):
        assert sum(s * eu.chi(mm, p, a, tp.sample_weight(mm, SEED)) for mm, s in quad) == 0
    hs = [eu.hstar(mm, p, tp.sample_weight(mm, SEED)) for mm, _ in quad]
    width = max(len(h) for h in hs)
    padded = [list(h) + [0] * (width - len(h)) for h in hs]
    alt = [padded[0][i] - padded[1][i] - padded[2][i] + padded[3][i] for i in range(width)]
    assert any(alt)


def test_negative_power_sign_law_small():
    for m in [mt.uniform(2, 4), mt.uniform(3, 4)]:
        w = tp.sample_weight(m, SEED)
        for p in [gp.base_polytope(m), gp.neg(gp.base_polytope(m)),
                  gp.build_polytope("simplex:" + ",".join(map(str, range(1, m.n + 1))))]:
            poly = eu.snapper_polynomial(m, p, w)
            d = poly.degree
            for a in range(-d, 0):
                assert (-1) ** d * poly.evaluate(a) >= 0
            assert poly.h[-1] == (-1) ** d * poly.evaluate(-1)


def test_face_convention_is_pinned():
    # flipping min- to max-faces turns chi(M, P) into chi(M, -P); on the
    # simplex class that is observable and must not happen by default
    m = mt.uniform(2, 3)
    w = golden_weight()
    simplex = gp.build_polytope("simplex:1,2,3")
    assert [eu.chi(m, simplex, a, w) for a in range(3)] == [1, 2, 3]
    orig = gp.FACE_CONVENTION
    try:
        gp.FACE_CONVENTION = "max"
        flipped = [eu.chi(m, simplex, a, w) for a in range(3)]
    finally:
        gp.FACE_CONVENTION = orig
    assert flipped == [1, 3, 5]
    assert [eu.chi(m, gp.neg(simplex), a, w) for a in range(3)] == flipped
