"""Permutohedral and Bergman fans, certified generic weights, exact
shifted-cone intersection tests, and tropical initial degenerations.

Cones of the fan on R^n / R*e_[n] are indexed by chains of nonempty proper
subsets S_1 < ... < S_k; the cone is spanned by the e_{S_i}.  A point lies in
the cone iff it is constant on the chain's layers with weakly decreasing
values (outermost layer pinned to 0 before quotienting).  Intersecting a
cone with a shifted cone w + tau therefore reduces to the integer system

    C_a - V_b = w_i   for every element i in sigma-layer a and tau-layer b,
    C_0 >= ... >= C_k   (free additive shift),
    V_0 >= ... >= V_m = 0,

which is solved exactly by potential propagation plus difference-constraint
feasibility over the free components.  No floating point anywhere.

Genericity of a weight w ("every nonempty intersection of a cone with a
shifted cone is transverse, and cones of complementary-deficient dimension
miss each other") is equivalent to: no pair of chains with
dim sigma + dim tau <= n-2 meets w-shifted.  (Any bad pair pares down, by
discarding generators with zero coefficient and applying Caratheodory, to an
independent meeting pair of total dimension <= n-2; conversely such a meet is
itself a violation.)  The battery checks exactly that.  Weights with tied
coordinates always fail (the level-set chain of w meets the origin cone), so
the sampler rejects ties up front.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import exact
from .errors import (CapExceeded, GenericityExhausted, HasLoops, ParseError,
                     WeightNotCertified)
from .genperm import check_chain
from .matroid import Matroid, flats_by_rank

FAN_CAP = 8           # chains of the full fan are materialized up to here
FULL_BATTERY_CAP = 6  # below this, certify against the whole fan and share


# -- chains of the permutohedral fan ------------------------------------------------

def _layers_of(sets: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Layer index per element: 0 on S_1, a on S_{a+1} \\ S_a, k outside S_k."""
    k = len(sets)
    first = [k] * n
    for pos, s in enumerate(sets):
        for e in range(n):
            if s >> e & 1 and first[e] == k:
                first[e] = pos
    return tuple(first)


_FAN_CACHE: dict[int, list[list]] = {}


def fan_chains(n: int) -> list[list]:
    """All chains grouped by length; entry = (sets, layers).  Cached per n."""
    if n > FAN_CAP:
        raise CapExceeded(f"permutohedral fan chains capped at n <= {FAN_CAP}")
    got = _FAN_CACHE.get(n)
    if got is not None:
        return got
    full = (1 << n) - 1
    by_len: list[list] = [[] for _ in range(n)]
    by_len[0].append(((), tuple(0 for _ in range(n))))

    supersets = [[] for _ in range(full + 1)]
    for s in range(1, full):
        for t in range(s + 1, full):
            if s & t == s:
                supersets[s].append(t)

    def grow(sets: tuple[int, ...]):
        last = sets[-1]
        for t in supersets[last]:
            ext = sets + (t,)
            by_len[len(ext)].append((ext, _layers_of(ext, n)))
            grow(ext)

    for s in range(1, full):
        chain = (s,)
        by_len[1].append((chain, _layers_of(chain, n)))
        grow(chain)
    for bucket in by_len:
        bucket.sort(key=lambda c: c[0])
    _FAN_CACHE[n] = by_len
    return by_len


def enumerate_chains(n: int, min_dim: int):
    """Every chain of dimension >= min_dim exactly once, canonical order."""
    if not (0 <= min_dim <= n - 1):
        raise ParseError("need 0 <= min_dim <= n-1")
    for k in range(min_dim, n):
        for sets, _ in fan_chains(n)[k]:
            yield sets


# -- Bergman fan ---------------------------------------------------------------------

@dataclass(frozen=True)
class BergmanFan:
    matroid: Matroid
    maximal_chains: tuple[tuple[int, ...], ...]  # complete flags of proper flats

    @property
    def dim(self) -> int:
        return self.matroid.r - 1


def bergman_fan(m: Matroid) -> BergmanFan:
    if not m.is_loopless:
        raise HasLoops("Bergman fans need a loopless matroid")
    if m.r == 1:
        return BergmanFan(m, ((),))
    by_rank = flats_by_rank(m)
    flags: list[tuple[int, ...]] = []

    def grow(chain: tuple[int, ...], rank: int):
        if rank == m.r:
            flags.append(chain)
            return
        prev = chain[-1] if chain else 0
        for f in by_rank.get(rank, ()):
            if prev & f == prev and prev != f:
                grow(chain + (f,), rank + 1)

    grow((), 1)
    flags.sort()
    return BergmanFan(m, tuple(flags))


def bergman_chains_by_len(m: Matroid) -> list[list]:
    """All chains of proper flats, grouped by length, with layer tuples."""
    if not m.is_loopless:
        raise HasLoops("Bergman fans need a loopless matroid")
    flats = sorted(f for fs in flats_by_rank(m).values() for f in fs)
    by_len: list[list] = [[] for _ in range(max(m.r, 1))]
    by_len[0].append(((), tuple(0 for _ in range(m.n))))

    sups = {f: [g for g in flats if g != f and g & f == f] for f in flats}

    def grow(chain: tuple[int, ...]):
        for g in sups[chain[-1]]:
            ext = chain + (g,)
            if len(ext) < len(by_len):
                by_len[len(ext)].append((ext, _layers_of(ext, m.n)))
                grow(ext)

    if m.r >= 2:
        for f in flats:
            by_len[1].append(((f,), _layers_of((f,), m.n)))
            grow((f,))
    for bucket in by_len:
        bucket.sort(key=lambda c: c[0])
    return by_len


# -- exact shifted-cone intersection --------------------------------------------------

def _solve_cells(lsig, ltau, k: int, m: int, w) -> bool:
    """Feasibility of C_{lsig(i)} - V_{ltau(i)} = w_i with chain orderings."""
    nc = k + 1
    nv = m + 1
    total = nc + nv
    p = [None] * total
    p[nc + m] = 0
    n = len(w)
    # potential propagation until stable; conflicts are infeasible
    for _ in range(total + 1):
        changed = False
        for i in range(n):
            a = lsig[i]
            b = nc + ltau[i]
            wi = w[i]
            pa = p[a]
            pb = p[b]
            if pa is None:
                if pb is not None:
                    p[a] = pb + wi
                    changed = True
            elif pb is None:
                p[b] = pa - wi
                changed = True
            elif pa - pb != wi:
                return False
        if not changed:
            break
    # union components for the free-shift bookkeeping
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        ra, rb = find(lsig[i]), find(nc + ltau[i])
        if ra != rb:
            parent[ra] = rb
    # seed unassigned components and re-propagate
    while any(v is None for v in p):
        seed = next(i for i, v in enumerate(p) if v is None)
        p[seed] = 0
        for _ in range(total + 1):
            changed = False
            for i in range(n):
                a = lsig[i]
                b = nc + ltau[i]
                wi = w[i]
                pa, pb = p[a], p[b]
                if pa is None:
                    if pb is not None:
                        p[a] = pb + wi
                        changed = True
                elif pb is None:
                    p[b] = pa - wi
                    changed = True
                elif pa - pb != wi:
                    return False
            if not changed:
                break
    # ordering constraints; cross-component ones become difference constraints
    diff = []
    for u, v in itertools.chain(((a, a + 1) for a in range(nc - 1)),
                                ((nc + b, nc + b + 1) for b in range(nv - 1))):
        cu, cv = find(u), find(v)
        if cu == cv:
            if p[u] < p[v]:
                return False
        else:
            diff.append((cu, cv, p[u] - p[v]))  # s_cv - s_cu <= p[u] - p[v]
    if not diff:
        return True
    dist = {find(x): 0 for x in range(total)}
    nodes = len(dist)
    for rounds in range(nodes + 1):
        changed = False
        for cu, cv, slack in diff:
            if dist[cu] + slack < dist[cv]:
                dist[cv] = dist[cu] + slack
                changed = True
        if not changed:
            return True
    return False  # negative cycle: contradictory orderings


def cone_meets(sigma, w, tau, n: int | None = None):
    """(meets, transverse) for cone(sigma) against w + cone(tau), exactly.

    ``w`` may be a Weight or a coordinate sequence; chains are set sequences.
    ``transverse`` is the rank condition (generators of both chains together
    with e_[n] span everything) and is only meaningful when ``meets`` holds.
    """
    coords = w.coords if isinstance(w, Weight) else tuple(w)
    if n is None:
        n = len(coords)
    sig = check_chain(n, sigma)
    ta = check_chain(n, tau)
    ls = _layers_of(sig, n)
    lt = _layers_of(ta, n)
    meets = _solve_cells(ls, lt, len(sig), len(ta), coords)
    rows = [tuple(1 if s >> e & 1 else 0 for e in range(n)) for s in sig + ta]
    rows.append(tuple(1 for _ in range(n)))
    transverse = exact.int_rank(rows) == n
    return meets, transverse


def cone_meets_simplex(sigma, w, tau, n: int | None = None) -> bool:
    """Reference implementation of the meet test via exact phase-one simplex:
    w = sum lam_i e_{S_i} - sum mu_j e_{F_j} - t e_[n],  lam, mu >= 0."""
    coords = w.coords if isinstance(w, Weight) else tuple(w)
    if n is None:
        n = len(coords)
    sig = check_chain(n, sigma)
    ta = check_chain(n, tau)
    cols = []
    for s in sig:
        cols.append(tuple(1 if s >> e & 1 else 0 for e in range(n)))
    for f in ta:
        cols.append(tuple(-1 if f >> e & 1 else 0 for e in range(n)))
    cols.append(tuple(1 for _ in range(n)))
    cols.append(tuple(-1 for _ in range(n)))
    return exact.feasible_eq(cols, coords)


# -- weights and the genericity battery -----------------------------------------------

@dataclass(frozen=True)
class Weight:
    coords: tuple[int, ...]
    seed: int
    retries: int
    scope: tuple  # ("fan", n) or ("matroid", n, key)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def certified(self) -> bool:
        return True

    def covers(self, m: Matroid) -> bool:
        if self.scope[0] == "fan":
            return self.scope[1] == m.n
        return self.scope == ("matroid", m.n, m.key())

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


def _battery_ok(n: int, coords, target_by_len) -> bool:
    """No pair (sigma in the fan, tau in the target) of total dim <= n-2 meets."""
    if len(set(coords)) < n:
        return False
    fan = fan_chains(n)
    max_m = min(len(target_by_len) - 1, n - 2)
    for m_len in range(1, max_m + 1):
        taus = target_by_len[m_len]
        if not taus:
            continue
        for k_len in range(1, n - 1 - m_len):
            if (k_len + 1) * (m_len + 1) < n:
                continue
            sigmas = fan[k_len]
            mm = m_len + 1
            for _, lt in taus:
                for _, ls in sigmas:
                    seen = 0
                    ok = True
                    for i in range(n):
                        bit = 1 << (ls[i] * mm + lt[i])
                        if seen & bit:
                            ok = False
                            break
                        seen |= bit
                    if ok and _solve_cells(ls, lt, k_len, m_len, coords):
                        return False
    return True


_FULL_CERT_CACHE: dict[tuple[int, int], Weight] = {}
_MATROID_CERT_CACHE: dict[tuple, Weight] = {}

WEIGHT_BITS = 20
MAX_RESAMPLES = 64


def _draw(n: int, seed: int, attempt: int) -> tuple[int, ...]:
    rng = random.Random(f"permuto:{n}:{seed}:{attempt}")
    return tuple(rng.getrandbits(WEIGHT_BITS) for _ in range(n))


def sample_weight(m: Matroid, seed: int) -> Weight:
    """Deterministic certified-generic weight for the given matroid.

    For n <= 6 the battery runs against every chain of the full fan (cached
    per (n, seed)), so one certificate covers every matroid on [n]; larger
    ground sets use the Bergman-restricted battery per matroid.
    """
    if not m.is_loopless:
        raise HasLoops("weights are sampled for loopless matroids")
    n = m.n
    if n <= FULL_BATTERY_CAP:
        key = (n, seed)
        got = _FULL_CERT_CACHE.get(key)
        if got is None:
            for attempt in range(MAX_RESAMPLES):
                coords = _draw(n, seed, attempt)
                if _battery_ok(n, coords, fan_chains(n)):
                    got = Weight(coords, seed, attempt, ("fan", n))
                    break
            else:
                raise GenericityExhausted(f"no generic weight after {MAX_RESAMPLES} draws")
            _FULL_CERT_CACHE[key] = got
        return got
    key = (n, seed, m.key())
    got = _MATROID_CERT_CACHE.get(key)
    if got is None:
        target = bergman_chains_by_len(m)
        for attempt in range(MAX_RESAMPLES):
            coords = _draw(n, seed, attempt)
            if _battery_ok(n, coords, target):
                got = Weight(coords, seed, attempt, ("matroid", n, m.key()))
                break
        else:
            raise GenericityExhausted(f"no generic weight after {MAX_RESAMPLES} draws")
        _MATROID_CERT_CACHE[key] = got
    return got


def certify_weight(m: Matroid, coords, seed: int = -1) -> Weight:
    """Run the Bergman-restricted battery on explicit coordinates."""
    if not m.is_loopless:
        raise HasLoops("weights are certified for loopless matroids")
    coords = tuple(coords)
    if len(coords) != m.n:
        raise ParseError(f"weight needs {m.n} coordinates")
    if not _battery_ok(m.n, coords, bergman_chains_by_len(m)):
        raise WeightNotCertified(f"weight {coords} fails the genericity battery")
    return Weight(coords, seed, 0, ("matroid", m.n, m.key()))


# -- initial degeneration ---------------------------------------------------------------

@dataclass(frozen=True)
class InitialDegeneration:
    matroid: Matroid
    weight: Weight
    components: tuple[tuple[int, ...], ...]
    coeffs: dict          # chain -> c (only chains with i = 1 are stored)
    hit_counts: dict      # dim-(n-r) chain -> number of shifted maximal cones met

    def imap(self, chain) -> int:
        return 1 if tuple(chain) in self.coeffs else 0

    def coeff(self, chain) -> int:
        return self.coeffs.get(tuple(chain), 0)

    def total(self) -> int:
        return sum(self.coeffs.values())

    @property
    def is_empty(self) -> bool:
        return not self.coeffs

    def multiplicity_violations(self):
        return tuple((chain, c) for chain, c in sorted(self.hit_counts.items()) if c > 1)


def _ordered_partitions(elems: list[int]):
    """All ordered set partitions of a list of bit positions, as mask tuples.
    The leading block ranges over every nonempty subset."""
    if not elems:
        yield ()
        return
    k = len(elems)
    for pick in range(1, 1 << k):
        block = 0
        remaining = []
        for t, e in enumerate(elems):
            if pick >> t & 1:
                block |= 1 << e
            else:
                remaining.append(e)
        for tail in _ordered_partitions(remaining):
            yield (block,) + tail


def _superchains(sets: tuple[int, ...], n: int):
    """Every fan chain containing the given chain (refine each layer into an
    ordered partition and take running unions)."""
    full = (1 << n) - 1
    layers = []
    prev = 0
    for s in sets + (full,):
        layers.append([e for e in range(n) if (s & ~prev) >> e & 1])
        prev = s
    per_layer = [list(_ordered_partitions(l)) for l in layers]
    for combo in itertools.product(*per_layer):
        out = []
        running = 0
        for osp in combo:
            for block in osp:
                running |= block
                out.append(running)
        yield tuple(out[:-1])  # drop the full set


def initial_degeneration(m: Matroid, w: Weight) -> InitialDegeneration:
    """Components, the indicator map, and the inclusion-exclusion coefficients.

    Components are the chains of dimension n-r whose cones meet some shifted
    maximal Bergman cone.  Higher-dimensional members of the indicator map
    are the superchains of components (a stratum lies in the degeneration iff
    its cone contains a component cone), and the coefficients follow the
    recursion c_sigma = i_sigma - sum over proper subchains.
    """
    if not m.is_loopless:
        return InitialDegeneration(m, w, (), {}, {})
    if not isinstance(w, Weight) or not w.covers(m):
        raise WeightNotCertified("weight was not certified for this matroid")
    n, r = m.n, m.r
    kdim = n - r
    fan = fan_chains(n)
    bf = bergman_fan(m)
    flag_layers = [(_layers_of(f, n), len(f)) for f in bf.maximal_chains]
    coords = w.coords
    hit_counts: dict[tuple[int, ...], int] = {}
    components = []
    for sets, ls in fan[kdim]:
        hits = 0
        for lt, mlen in flag_layers:
            mm = mlen + 1
            seen = 0
            ok = True
            for i in range(n):
                bit = 1 << (ls[i] * mm + lt[i])
                if seen & bit:
                    ok = False
                    break
                seen |= bit
            if ok and _solve_cells(ls, lt, kdim, mlen, coords):
                hits += 1
        if hits:
            hit_counts[sets] = hits
            components.append(sets)
    components.sort()
    i_one: set[tuple[int, ...]] = set()
    for comp in components:
        i_one.update(_superchains(comp, n))
    coeffs: dict[tuple[int, ...], int] = {}
    for chain in sorted(i_one, key=lambda c: (len(c), c)):
        acc = 1
        k = len(chain)
        for size in range(kdim, k):
            for subset in itertools.combinations(chain, size):
                c = coeffs.get(subset)
                if c:
                    acc -= c
        coeffs[chain] = acc
    return InitialDegeneration(m, w, tuple(components), coeffs, hit_counts)


def multiplicity_certificate(m: Matroid, w: Weight) -> bool:
    """True iff every dim-(n-r) cone meets at most one shifted maximal cone."""
    deg = degeneration(m, w)
    return not deg.multiplicity_violations()


_DEGEN_CACHE: dict[tuple, InitialDegeneration] = {}


def degeneration(m: Matroid, w: Weight) -> InitialDegeneration:
    """Cached initial_degeneration; identical (matroid, weight) reuse the result."""
    key = (m.key(), w.coords, w.scope)
    got = _DEGEN_CACHE.get(key)
    if got is None:
        got = initial_degeneration(m, w)
        if len(_DEGEN_CACHE) > 4096:
            _DEGEN_CACHE.clear()
        _DEGEN_CACHE[key] = got
    return got


# -- report format -------------------------------------------------------------------

def report(deg: InitialDegeneration) -> str:
    from .matroid import set_str
    m, w = deg.matroid, deg.weight
    lines = [f"indeg n={m.n} r={m.r} seed={w.seed} w={w}"]
    comp = set(deg.components)
    for chain in sorted(deg.coeffs, key=lambda c: (len(c), c)):
        c = deg.coeffs[chain]
        if c == 0:
            continue
        body = "<".join(set_str(s) for s in chain) or "-"
        star = " *" if chain in comp else ""
        lines.append(f"{body} c={c}{star}")
    return "\n".join(lines) + "\n"
