"""Euler characteristics of nef classes on matroid degenerations, and the
calculus built on them: Snapper polynomials in the binomial basis, h*-vectors
with Macaulay verdicts, the omega invariant, numerical dimension, dragon
Hall-Rado degrees, and the kindred multigraded Snapper calculus.

chi(M, P, a) is evaluated through the degeneration: the class of the
degeneration expands over toric strata with the inclusion-exclusion
coefficients c_sigma, and a nef class restricted to a stratum counts lattice
points of the dilated chain face, so

    chi(M, P, a) = sum_sigma c_sigma * #(a * face(P, sigma) cap Z^n).

Negative powers are never computed geometrically: they are evaluations of the
verified binomial-basis interpolant (fitted on a = 0..d and checked against
fresh values at d+1 and d+2, which also polices the face convention).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import genperm, matroid as _mt, tropical
from .errors import (DegreeMismatch, HasLoops, NonUnitCoefficient,
                     NotDownwardClosed, NotPure, ParseError, WrongArity)
from .genperm import SubmodularSpec
from .matroid import Matroid
from .tropical import Weight


def binom(x: int, k: int) -> int:
    """C(x, k) for any integer x (negative upper index included), exact."""
    if k < 0:
        return 0
    num = 1
    for t in range(k):
        num *= x - t
    den = 1
    for t in range(2, k + 1):
        den *= t
    return num // den


# -- chi -------------------------------------------------------------------------

_FACE_COUNT_CACHE: dict[tuple, int] = {}


def _face_count(p: SubmodularSpec, chain: tuple[int, ...], a: int) -> int:
    key = (p, chain, a, genperm.FACE_CONVENTION)
    got = _FACE_COUNT_CACHE.get(key)
    if got is None:
        got = genperm.lattice_count(genperm.face(p, chain), a)
        if len(_FACE_COUNT_CACHE) > 200000:
            _FACE_COUNT_CACHE.clear()
        _FACE_COUNT_CACHE[key] = got
    return got


def chi(m: Matroid, p: SubmodularSpec, a: int, w: Weight) -> int:
    """Exact chi(M, L_P^a) for a >= 0 via the degeneration transfer."""
    if not m.is_loopless:
        raise HasLoops("chi needs a loopless matroid")
    if a < 0:
        raise ParseError("chi is geometric only for a >= 0; use the polynomial")
    if p.n != m.n:
        raise ParseError("matroid and polytope ground sets differ")
    deg = tropical.degeneration(m, w)
    total = 0
    for chain, c in deg.coeffs.items():
        if c:
            total += c * _face_count(p, chain, a)
    return total


# -- numerical dimension ------------------------------------------------------------

def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | first] + part[i + 1:]
        yield [first] + part


_COMPONENTS_CACHE: dict[tuple, tuple[int, ...]] = {}


def _components(m: Matroid) -> tuple[int, ...]:
    key = m.key()
    got = _COMPONENTS_CACHE.get(key)
    if got is None:
        got = _mt.connected_components(m)
        _COMPONENTS_CACHE[key] = got
    return got


def numerical_dimension(m: Matroid, p: SubmodularSpec) -> int:
    """Minimum over partitions coarsening the induced partition of P of
    sum(rk(T_i) - 1); when the induced partition coarsens the connected
    components this must agree with r - n + dim P, which is asserted."""
    if not m.is_loopless:
        raise HasLoops("numerical dimension needs a loopless matroid")
    if p.n != m.n:
        raise ParseError("matroid and polytope ground sets differ")
    blocks, dim = genperm.induced_partition(p)
    best = None
    for part in _set_partitions(list(blocks)):
        val = sum(m.rank(t) - 1 for t in part)
        if best is None or val < best:
            best = val
    comps = _components(m)
    if all(_is_union_of(b, comps) for b in blocks):
        assert best == m.r - m.n + dim, "partition minimizer disagrees with shortcut"
    return best


def _is_union_of(block: int, comps) -> bool:
    return all((block & c == c) or (block & c == 0) for c in comps)


# -- Snapper polynomials -----------------------------------------------------------

@dataclass(frozen=True)
class SnapperPoly:
    degree: int
    h: tuple[int, ...]  # binomial-basis coefficients, p(a) = sum h_i C(a+d-i, d)

    def evaluate(self, a: int) -> int:
        d = self.degree
        return sum(self.h[i] * binom(a + d - i, d) for i in range(d + 1))

    def monomial_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of 1, a, a^2, ... as exact fractions."""
        d = self.degree
        fact = 1
        for t in range(2, d + 1):
            fact *= t
        out = [Fraction(0)] * (d + 1)
        for i, hi in enumerate(self.h):
            if not hi:
                continue
            poly = [Fraction(1)]  # expand prod_{t=0}^{d-1} (a + d - i - t)
            for t in range(d):
                c = d - i - t
                shifted = [Fraction(0)] + poly
                scaled = [Fraction(c) * v for v in poly] + [Fraction(0)]
                poly = [x + y for x, y in zip(shifted, scaled)]
            for idx, v in enumerate(poly):
                out[idx] += Fraction(hi) * v / fact
        return tuple(out)

    def binomial_str(self) -> str:
        d = self.degree
        parts = []
        for i, hi in enumerate(self.h):
            parts.append(f"{hi}*C(a+{d - i},{d})" if d - i else f"{hi}*C(a,{d})")
        return " + ".join(parts)

    def monomial_str(self) -> str:
        terms = []
        coeffs = self.monomial_coeffs()
        for idx in range(self.degree, -1, -1):
            c = coeffs[idx]
            if c == 0:
                continue
            if idx == 0:
                terms.append(f"{c}")
            elif idx == 1:
                terms.append(f"{c}*a")
            else:
                terms.append(f"{c}*a^{idx}")
        return " + ".join(terms) if terms else "0"


def snapper_polynomial(m: Matroid, p: SubmodularSpec, w: Weight) -> SnapperPoly:
    """Fit on a = 0..d in the binomial basis, then verify fresh values at
    d+1 and d+2; a mismatch is a hard internal failure."""
    d = numerical_dimension(m, p)
    values = [chi(m, p, a, w) for a in range(d + 1)]
    h = []
    for a in range(d + 1):
        acc = values[a]
        for i in range(a):
            acc -= h[i] * binom(a + d - i, d)
        h.append(acc)
    poly = SnapperPoly(d, tuple(h))
    for extra in (d + 1, d + 2):
        if chi(m, p, extra, w) != poly.evaluate(extra):
            raise DegreeMismatch(
                f"interpolant of degree {d} misses the value at a={extra}")
    return poly


def hstar(m: Matroid, p: SubmodularSpec, w: Weight) -> tuple[int, ...]:
    poly = snapper_polynomial(m, p, w)
    h = poly.h
    assert h[0] == 1, "pipeline h*-vectors start at 1"
    assert h[-1] == (-1) ** poly.degree * poly.evaluate(-1)
    return h


# -- Macaulay verdicts ---------------------------------------------------------------

def _macaulay_rep(x: int, i: int):
    """Greedy binomial representation x = C(a_i,i) + C(a_{i-1},i-1) + ..."""
    rep = []
    rem = x
    t = i
    while rem > 0 and t >= 1:
        a = t
        while binom(a + 1, t) <= rem:
            a += 1
        rep.append((a, t))
        rem -= binom(a, t)
        t -= 1
    return rep


def macaulay_raise(x: int, i: int) -> int:
    """x^<i>: raise every top and bottom of the representation by one."""
    return sum(binom(a + 1, t + 1) for a, t in _macaulay_rep(x, i))


def macaulay_check(h) -> tuple[bool, int | None]:
    """Macaulay growth verdict; witness is the index of the first bad entry
    (0 when h_0 != 1, i for a negative entry, i+1 for a growth violation)."""
    h = tuple(int(v) for v in h)
    if not h or h[0] != 1:
        return False, 0
    for i, v in enumerate(h):
        if v < 0:
            return False, i
    for i in range(1, len(h) - 1):
        if h[i + 1] > macaulay_raise(h[i], i):
            return False, i + 1
    return True, None


# -- omega invariant ------------------------------------------------------------------

def omega(m: Matroid, w: Weight) -> int:
    """(-1)^(r - n + dim P(M)) * chi(M, L_{-P(M)}^{-1}), via the interpolant."""
    if not m.is_loopless:
        raise HasLoops("omega needs a loopless matroid")
    base = genperm.base_polytope(m)
    shortcut = m.r - m.n + genperm.induced_partition(base)[1]
    poly = snapper_polynomial(m, genperm.neg(base), w)
    assert poly.degree == shortcut, "negated base polytope degree shortcut failed"
    return (-1) ** poly.degree * poly.evaluate(-1)


# -- dragon Hall-Rado and the pairs oracle --------------------------------------------

def dhr_degree(m: Matroid, sets) -> int:
    """1 iff the multiset of r-1 subsets satisfies rk(union over I) >= |I|+1
    for every nonempty subfamily I, else 0."""
    masks = [_mt.as_mask(s, m.n) for s in sets]
    if len(masks) != m.r - 1:
        raise WrongArity(f"need exactly r-1 = {m.r - 1} sets, got {len(masks)}")
    if not m.is_loopless:
        raise HasLoops("dragon Hall-Rado degrees need a loopless matroid")
    for size in range(1, len(masks) + 1):
        for combo in itertools.combinations(masks, size):
            union = 0
            for s in combo:
                union |= s
            if m.rank(union) < size + 1:
                return 0
    return 1


def pairs_snapper_oracle(m: Matroid, weights) -> int:
    """sum over dragon Hall-Rado families S of prod of the pair weights;
    the independent route to chi on sums of segments at power 1."""
    if not m.is_loopless:
        raise HasLoops("the pairs oracle needs a loopless matroid")
    pairs = _mt.pair_ground(m.n)
    wvec = [0] * len(pairs)
    norm = {}
    for key, val in dict(weights).items():
        i, j = key
        if i > j:
            i, j = j, i
        norm[(i, j)] = int(val)
    for idx, pr in enumerate(pairs):
        wvec[idx] = norm.get(pr, 0)
    total = 0
    for idx_mask in _mt.dhr_independent_pair_sets(m, [v > 0 for v in wvec]):
        prod = 1
        rest = idx_mask
        while rest:
            low = rest & -rest
            rest -= low
            prod *= wvec[low.bit_length() - 1]
        total += prod
    return total


# -- kindred calculus ------------------------------------------------------------------

@dataclass(frozen=True)
class MultiSnapper:
    nvars: int
    coeffs: tuple  # sorted tuple of (subset mask, coefficient), multilinear

    def coeff(self, subset) -> int:
        s = _mt.as_mask(subset, self.nvars)
        for mask, c in self.coeffs:
            if mask == s:
                return c
        return 0

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def evaluate(self, point) -> int:
        vals = list(point)
        total = 0
        for mask, c in self.coeffs:
            prod = c
            rest = mask
            while rest:
                low = rest & -rest
                rest -= low
                prod *= vals[low.bit_length() - 1]
            total += prod
        return total

    def __str__(self):
        parts = []
        for mask, c in self.coeffs:
            if mask == 0:
                parts.append(str(c))
            else:
                mono = "*".join(f"a{i}" for i in _mt.bits(mask))
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def kindred_snapper(m: Matroid) -> MultiSnapper:
    """Coefficient 1 on exactly the independent sets."""
    coeffs = tuple(sorted((s, 1) for s in m.independent_sets()))
    return MultiSnapper(m.n, coeffs)


def multidegree_and_progenitor(ms: MultiSnapper):
    """(degree, top coefficients, progenitor matroid); total when coefficients
    are 0/1, the support is downward closed, and the maximal sets are pure of
    one size and pass exchange."""
    support = {mask for mask, c in ms.coeffs if c != 0}
    for mask, c in ms.coeffs:
        if c not in (0, 1):
            raise NonUnitCoefficient(f"coefficient {c} at {mask:#x}")
    if not support:
        raise NotPure("zero polynomial has no progenitor")
    for s in support:
        rest = s
        while rest:
            low = rest & -rest
            rest -= low
            if s ^ low not in support:
                raise NotDownwardClosed(f"support misses {s ^ low:#x} below {s:#x}")
    d = max(s.bit_count() for s in support)
    maximal = [s for s in support
               if not any((s | t) in support and (s | t) != s for t in support)]
    if any(s.bit_count() != d for s in maximal):
        raise NotPure("maximal support sets differ in size")
    top = {s: 1 for s in support if s.bit_count() == d}
    progenitor = _mt.validate(ms.nvars, maximal)
    return d, top, progenitor


def project_multisnapper(ms: MultiSnapper, subset) -> MultiSnapper:
    """Set the variables outside J to zero and relabel J to {1..|J|}."""
    j = _mt.as_mask(subset, ms.nvars)
    elems = list(_mt.bits(j))
    pos = {e: t for t, e in enumerate(elems)}
    out = []
    for mask, c in ms.coeffs:
        if mask & ~j:
            continue
        newmask = 0
        for e in _mt.bits(mask):
            newmask |= 1 << pos[e]
        out.append((newmask, c))
    return MultiSnapper(len(elems), tuple(sorted(out)))
