"""Matroids on [n] = {1, ..., n} with bases stored as integer bit-sets
(element i is bit i-1, so subsets compare canonically as integers).

A family of equal-size subsets is accepted as a matroid iff it satisfies the
basis-exchange axiom; the equivalent polytope-edge characterization (every
edge of conv{e_B} is parallel to some e_i - e_j) is available as an optional
cross-check.  Rank-0 matroids (bases = {empty set}) are legal values so that
constructions like the Dilworth truncation stay total.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (CapExceeded, EmptyFamily, ExchangeFailure, HasLoops,
                     MixedCardinality, ParseError)

MAX_GROUND = 24  # pair ground sets reach C(7,2) = 21


def bits(mask: int):
    """1-based elements of a bit-set, ascending."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def as_mask(subset, n: int) -> int:
    """Normalize an int mask or an iterable of 1-based elements; bounds-check."""
    if isinstance(subset, int):
        m = subset
    else:
        m = mask_of(subset)
    if m < 0 or m >= (1 << n):
        raise ParseError(f"subset {m:#x} not within ground set of size {n}")
    return m


def set_str(mask: int) -> str:
    return ",".join(str(i) for i in bits(mask))


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_baseset", frozenset(self.bases))
        object.__setattr__(self, "_rank_cache", {})

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def loops(self) -> int:
        union = 0
        for b in self.bases:
            union |= b
        return self.full_mask & ~union

    @property
    def is_loopless(self) -> bool:
        return self.loops == 0

    def is_basis(self, mask: int) -> bool:
        return mask in self._baseset

    def rank(self, subset) -> int:
        s = as_mask(subset, self.n)
        cache = self._rank_cache
        r = cache.get(s)
        if r is None:
            r = max((s & b).bit_count() for b in self.bases)
            cache[s] = r
        return r

    def is_independent(self, subset) -> bool:
        s = as_mask(subset, self.n)
        return self.rank(s) == s.bit_count()

    def closure(self, subset) -> int:
        s = as_mask(subset, self.n)
        rk = self.rank(s)
        out = s
        for e in range(self.n):
            bit = 1 << e
            if not s & bit and self.rank(s | bit) == rk:
                out |= bit
        return out

    def independent_sets(self):
        """All independent sets, as masks (downward closure of the bases)."""
        seen = set(self.bases)
        frontier = list(self.bases)
        while frontier:
            s = frontier.pop()
            rest = s
            while rest:
                low = rest & -rest
                rest -= low
                sub = s & ~low
                if sub not in seen:
                    seen.add(sub)
                    frontier.append(sub)
        seen.add(0)
        return seen

    def key(self):
        return (self.n, self.bases)

    def __str__(self):
        return f"Matroid(n={self.n}, r={self.r}, {len(self.bases)} bases)"


def validate(n: int, basis_list, cross_check_edges: bool = False) -> Matroid:
    """Accept a basis family iff the exchange axiom holds for every ordered pair.

    ``cross_check_edges=True`` additionally verifies, exactly, that every edge
    of conv{e_B} is parallel to some e_i - e_j (pairs at symmetric difference
    >= 4 must not span edges).
    """
    if n < 1:
        raise ParseError("ground set must be nonempty")
    if n > MAX_GROUND:
        raise CapExceeded(f"ground sets capped at {MAX_GROUND} elements")
    masks = sorted({as_mask(b, n) for b in basis_list})
    if not masks:
        raise EmptyFamily("a matroid needs at least one basis")
    r = masks[0].bit_count()
    for b in masks:
        if b.bit_count() != r:
            raise MixedCardinality(f"bases {masks[0]:#x} and {b:#x} differ in size")
    baseset = frozenset(masks)
    for b1 in masks:
        for b2 in masks:
            if b1 == b2:
                continue
            only1 = b1 & ~b2
            cand = b2 & ~b1
            rem = only1
            while rem:
                ibit = rem & -rem
                rem -= ibit
                stripped = b1 & ~ibit
                jrem = cand
                while jrem:
                    jbit = jrem & -jrem
                    jrem -= jbit
                    if stripped | jbit in baseset:
                        break
                else:
                    raise ExchangeFailure(b1, b2, ibit.bit_length())
    m = Matroid(n, r, tuple(masks))
    if cross_check_edges:
        _cross_check_edges(m)
    return m


def _cross_check_edges(m: Matroid):
    from . import exact
    verts = {b: tuple(1 if b >> i & 1 else 0 for i in range(m.n)) for b in m.bases}
    for b1, b2 in itertools.combinations(m.bases, 2):
        if (b1 ^ b2).bit_count() <= 2:
            continue  # symmetric difference 2 is parallel to some e_i - e_j
        others = [verts[b] for b in m.bases if b not in (b1, b2)]
        if exact.is_polytope_edge(verts[b1], verts[b2], others):
            raise ExchangeFailure(b1, b2, 0)
    return True


def rank_closure(m: Matroid, subset) -> tuple[int, int]:
    s = as_mask(subset, m.n)
    return m.rank(s), m.closure(s)


def proper_flats(m: Matroid) -> list[int]:
    """Nonempty proper subsets that are closed, sorted canonically."""
    out = []
    for s in range(1, m.full_mask):
        if m.closure(s) == s:
            out.append(s)
    return out


def flats_by_rank(m: Matroid) -> dict[int, list[int]]:
    by_rank: dict[int, list[int]] = {}
    for f in proper_flats(m):
        by_rank.setdefault(m.rank(f), []).append(f)
    return by_rank


def connected_components(m: Matroid) -> tuple[int, ...]:
    """Finest partition with rk additive across blocks, as a tuple of masks.

    Computed as the induced partition of the base polytope; a direct
    rank-additivity sweep cross-checks the result.
    """
    if not m.is_loopless:
        raise HasLoops("connected components need a loopless matroid")
    from . import genperm
    blocks, _ = genperm.induced_partition(genperm.base_polytope(m))
    if m.n <= 12:
        for a in range(1 << m.n):
            if m.rank(a) != sum(m.rank(a & t) for t in blocks):
                raise AssertionError("induced partition is not rank-additive")
    return blocks


def restriction(m: Matroid, subset) -> Matroid:
    """Matroid on J relabeled to {1..|J|} (ascending); loops may appear."""
    j = as_mask(subset, m.n)
    if j == 0:
        raise ParseError("restriction to the empty set")
    elems = list(bits(j))
    rj = m.rank(j)
    bases = set()
    if rj == 0:
        bases.add(0)
    else:
        for comb in itertools.combinations(range(len(elems)), rj):
            sub = mask_of(elems[c] for c in comb)
            if m.rank(sub) == rj:
                bases.add(mask_of(c + 1 for c in comb))
    return Matroid(len(elems), rj, tuple(sorted(bases)))


def directsum(m1: Matroid, m2: Matroid) -> Matroid:
    n = m1.n + m2.n
    if n > MAX_GROUND:
        raise CapExceeded(f"ground sets capped at {MAX_GROUND} elements")
    bases = tuple(sorted(b1 | (b2 << m1.n) for b1 in m1.bases for b2 in m2.bases))
    return Matroid(n, m1.r + m2.r, bases)


def relabel(m: Matroid, perm) -> Matroid:
    """Image of the matroid under a permutation of [n] (perm[i-1] = image of i)."""
    perm = list(perm)
    bases = tuple(sorted(mask_of(perm[e - 1] for e in bits(b)) for b in m.bases))
    return Matroid(m.n, m.r, bases)


def embed(m: Matroid, n: int, support) -> Matroid:
    """Place a matroid on the listed support inside [n]; other elements are loops."""
    support = list(support)
    if len(support) != m.n:
        raise ParseError("support size must match the matroid ground set")
    bases = tuple(sorted(mask_of(support[e - 1] for e in bits(b)) for b in m.bases))
    return Matroid(n, m.r, bases)


# -- Dilworth truncation ------------------------------------------------------

def pair_ground(n: int) -> list[tuple[int, int]]:
    """The C(n,2) pairs {i,j}, i<j, in lexicographic order; pair k is element k+1."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _dhr_independent_sets(m: Matroid, pair_masks: list[int], weights=None):
    """DFS over the downward-closed family of pair sets S with
    rk(union of T) >= |T| + 1 for every nonempty T of S.  Only subfamilies
    containing the newly added pair need checking at each step."""
    live = [k for k in range(len(pair_masks)) if weights is None or weights[k]]
    out = [0]

    def extend(idx_mask: int, members: list[int], start: int):
        for pos in range(start, len(live)):
            k = live[pos]
            pm = pair_masks[k]
            ok = True
            for sub_idx in range(1 << len(members)):
                union = pm
                count = 1
                for t, mk in enumerate(members):
                    if sub_idx >> t & 1:
                        union |= pair_masks[mk]
                        count += 1
                if m.rank(union) < count + 1:
                    ok = False
                    break
            if ok:
                out.append(idx_mask | (1 << k))
                extend(idx_mask | (1 << k), members + [k], pos + 1)

    extend(0, [], 0)
    return out


def dhr_independent_pair_sets(m: Matroid, positive_pairs=None) -> list[int]:
    """Index-set masks (over the lexicographic pair order) of all dragon
    Hall-Rado families of pairs; the independent sets of the Dilworth
    truncation."""
    if not m.is_loopless:
        raise HasLoops("Dilworth truncation needs a loopless matroid")
    pairs = pair_ground(m.n)
    pair_masks = [mask_of(p) for p in pairs]
    return _dhr_independent_sets(m, pair_masks, positive_pairs)


def dilworth_truncation(m: Matroid) -> Matroid:
    """Matroid on the C(n,2) pairs whose independent sets are the dragon
    Hall-Rado families; bases are the maximal ones, validated via exchange."""
    if not m.is_loopless:
        raise HasLoops("Dilworth truncation needs a loopless matroid")
    if m.r < 1:
        raise HasLoops("Dilworth truncation needs rank >= 1")
    indep = dhr_independent_pair_sets(m)
    top = max(s.bit_count() for s in indep)
    bases = [s for s in indep if s.bit_count() == top]
    return validate(len(pair_ground(m.n)), bases)


# -- catalog ------------------------------------------------------------------

FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def uniform(r: int, n: int) -> Matroid:
    if not (0 <= r <= n):
        raise ParseError(f"uniform({r},{n}) needs 0 <= r <= n")
    if n > MAX_GROUND:
        raise CapExceeded(f"ground sets capped at {MAX_GROUND} elements")
    bases = tuple(sorted(mask_of(c) for c in itertools.combinations(range(1, n + 1), r)))
    return Matroid(n, r, bases)


@lru_cache(maxsize=None)
def fano() -> Matroid:
    lines = {mask_of(l) for l in FANO_LINES}
    bases = [mask_of(c) for c in itertools.combinations(range(1, 8), 3)
             if mask_of(c) not in lines]
    return validate(7, bases)


def parse_matroid_expr(cur, env=None) -> Matroid:
    """Parse a matroid expression at a cursor: ``uniform:r,n``, ``fano``,
    ``directsum(E1,E2)``, ``file:PATH``, or a name bound in ``env``."""
    from .parsing import Cursor  # noqa: F401  (documents the expected type)
    name = cur.ident()
    if name == "fano":
        return fano()
    if name == "uniform":
        cur.expect(":")
        r = cur.integer()
        cur.expect(",")
        n = cur.integer()
        return uniform(r, n)
    if name == "directsum":
        cur.expect("(")
        m1 = parse_matroid_expr(cur, env)
        cur.expect(",")
        m2 = parse_matroid_expr(cur, env)
        cur.expect(")")
        return directsum(m1, m2)
    if name == "file":
        cur.expect(":")
        path = cur.until(",;)")
        with open(path, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    if env and name in env:
        return env[name]
    raise ParseError(f"unknown matroid expression {name!r}")


def catalog(expr: str, env=None) -> Matroid:
    """Named matroids: ``uniform:r,n``, ``fano``, ``directsum(E1,E2)``,
    ``file:PATH``."""
    from .parsing import Cursor
    cur = Cursor(expr)
    m = parse_matroid_expr(cur, env)
    cur.require_done()
    return m


# -- text format ---------------------------------------------------------------

def dumps(m: Matroid) -> str:
    """Canonical text form; parse(print) round-trips byte-identically."""
    lines = [f"matroid n={m.n} r={m.r}"]
    for b in m.bases:
        if b:
            lines.append(" ".join(str(i) for i in bits(b)))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Matroid:
    lines = [ln for ln in text.splitlines()]
    header = None
    bases = []
    for ln in lines:
        body = ln.split("#", 1)[0].strip()
        if not body:
            continue
        if header is None:
            if not body.startswith("matroid"):
                raise ParseError("matroid file must start with 'matroid n=<int> r=<int>'")
            fields = dict(tok.split("=", 1) for tok in body.split()[1:])
            try:
                header = (int(fields["n"]), int(fields["r"]))
            except (KeyError, ValueError):
                raise ParseError("matroid header needs n=<int> r=<int>") from None
            continue
        try:
            bases.append(mask_of(int(tok) for tok in body.split()))
        except ValueError:
            raise ParseError(f"bad basis line {ln!r}") from None
    if header is None:
        raise ParseError("empty matroid file")
    n, r = header
    if r == 0 and not bases:
        bases = [0]
    m = validate(n, bases)
    if m.r != r:
        raise ParseError(f"header says r={r} but bases have size {m.r}")
    return m


# -- exhaustive enumeration ----------------------------------------------------

ENUM_CAP = 6


def enumerate_loopless(n: int, r: int):
    """Every loopless matroid of rank r on [n], each exactly once.

    Pruned DFS over r-subset families with watched exchange-fix constraints:
    once two chosen bases have every exchange fix excluded the branch dies,
    and a single surviving fix is forced in (unit propagation).
    """
    if not (1 <= r <= n <= ENUM_CAP):
        raise CapExceeded(f"enumerate_loopless needs 1 <= r <= n <= {ENUM_CAP}")
    subsets = [mask_of(c) for c in itertools.combinations(range(1, n + 1), r)]
    subsets.sort()
    nsub = len(subsets)
    index = {s: i for i, s in enumerate(subsets)}
    full = (1 << n) - 1

    # req[a][b]: for each i in A\B, the index-mask of exchange fixes (A-i+j)
    req: list[list[list[int]]] = [[[] for _ in range(nsub)] for _ in range(nsub)]
    watchers: list[list[tuple[int, int, int]]] = [[] for _ in range(nsub)]
    for a, sa in enumerate(subsets):
        for b, sb in enumerate(subsets):
            if a == b:
                continue
            rem = sa & ~sb
            while rem:
                ibit = rem & -rem
                rem -= ibit
                fixmask = 0
                jrem = sb & ~sa
                while jrem:
                    jbit = jrem & -jrem
                    jrem -= jbit
                    fix = (sa & ~ibit) | jbit
                    fixmask |= 1 << index[fix]
                pos = len(req[a][b])
                req[a][b].append(fixmask)
                frem = fixmask
                while frem:
                    fbit = frem & -frem
                    frem -= fbit
                    watchers[fbit.bit_length() - 1].append((a, b, pos))

    UNDEC, IN, OUT = 0, 1, 2
    status = [UNDEC] * nsub
    results = []

    def union_possible(in_mask: int, undecided_union: int) -> bool:
        return (in_mask | undecided_union) == full

    def propagate(decided: list[int], trail: list[int]) -> bool:
        """Apply consequences; record every status change on trail."""
        queue = list(decided)
        while queue:
            s = queue.pop()
            if status[s] == OUT:
                for (a, b, pos) in watchers[s]:
                    if status[a] == IN and status[b] == IN:
                        live = req[a][b][pos]
                        alive = [k for k in _bit_indices(live) if status[k] != OUT]
                        if not alive:
                            return False
                        if not any(status[k] == IN for k in alive) and len(alive) == 1:
                            k = alive[0]
                            status[k] = IN
                            trail.append(k)
                            queue.append(k)
            else:  # IN
                for other in range(nsub):
                    if status[other] != IN or other == s:
                        continue
                    for (a, b) in ((s, other), (other, s)):
                        for fixmask in req[a][b]:
                            alive = [k for k in _bit_indices(fixmask) if status[k] != OUT]
                            if not alive:
                                return False
                            if not any(status[k] == IN for k in alive) and len(alive) == 1:
                                k = alive[0]
                                status[k] = IN
                                trail.append(k)
                                queue.append(k)
        return True

    def dfs(pos: int):
        while pos < nsub and status[pos] != UNDEC:
            pos += 1
        if pos == nsub:
            chosen = [subsets[i] for i in range(nsub) if status[i] == IN]
            if not chosen:
                return
            union = 0
            for c in chosen:
                union |= c
            if union == full:
                results.append(Matroid(n, r, tuple(chosen)))
            return
        for choice in (IN, OUT):
            status[pos] = choice
            trail = [pos]
            ok = propagate([pos], trail)
            if ok:
                in_mask = 0
                undec_union = 0
                for i in range(nsub):
                    if status[i] == IN:
                        in_mask |= subsets[i]
                    elif status[i] == UNDEC:
                        undec_union |= subsets[i]
                if union_possible(in_mask, undec_union):
                    dfs(pos + 1)
            for t in trail:
                status[t] = UNDEC
        return

    dfs(0)
    results.sort(key=lambda m: m.bases)
    yield from results


def _bit_indices(mask: int):
    while mask:
        low = mask & -mask
        mask -= low
        yield low.bit_length() - 1
