"""The acceptance suite: every criterion as a callable returning a verdict.

Each criterion function takes (seed, scope) with scope "fast" (fixtures and
invariants at n <= 4) or "full" (the complete sweeps, including the n <= 6
omega sweep and the Fano cases) and returns (ok, detail).  The CLI selftest
command and tests/test_acceptance.py both drive these.

Heavy sweeps are shared through module-level caches keyed by (seed, cap), so
criteria 3, 6, 8, 9 and 11 reuse one h*-sweep instead of recomputing it.
"""

from __future__ import annotations

import itertools
import random
import time

from . import euler, genperm, matroid, tropical

FULL_N = 5        # dual-route / Macaulay sweeps run over all loopless matroids here
OMEGA_N = 6       # the omega sweep cap
FAST_N = 4


def _loopless_corpus(max_n):
    out = []
    for n in range(1, max_n + 1):
        for r in range(1, n + 1):
            out.extend(matroid.enumerate_loopless(n, r))
    return out


_CORPUS_CACHE: dict[int, list] = {}


def corpus(max_n):
    got = _CORPUS_CACHE.get(max_n)
    if got is None:
        got = _loopless_corpus(max_n)
        _CORPUS_CACHE[max_n] = got
    return got


def _rand_submodular(n: int, rng: random.Random) -> genperm.SubmodularSpec:
    """Random Minkowski sum of dilated simplices plus an integer translation."""
    parts = []
    for _ in range(rng.randrange(2, 6)):
        members = [e for e in range(1, n + 1) if rng.random() < 0.6]
        if not members:
            members = [rng.randrange(1, n + 1)]
        parts.append(genperm.dilate(rng.randrange(1, 4), genperm.simplex_spec(n, members)))
    parts.append(genperm.point_spec([rng.randrange(-2, 3) for _ in range(n)]))
    return genperm.minkowski_sum(parts)


def _criterion_polytopes(m: matroid.Matroid, seed: int):
    """The per-matroid polytope battery: simplex, P(U(2,n)), P(M), -P(M),
    the sum of all segments, and two seeded random submodular specs."""
    n = m.n
    base = genperm.base_polytope(m)
    out = [("simplex", genperm.simplex_spec(n, range(1, n + 1))),
           ("base", base),
           ("negbase", genperm.neg(base))]
    if n >= 2:
        out.append(("u2base", genperm.base_polytope(matroid.uniform(2, n))))
        out.append(("segsum", genperm.minkowski_sum(
            [genperm.simplex_spec(n, (i, j))
             for i in range(1, n + 1) for j in range(i + 1, n + 1)])))
    for t in (0, 1):
        rng = random.Random(f"permuto:selftest:rand:{seed}:{t}:{m.key()}")
        out.append((f"rand{t}", _rand_submodular(n, rng)))
    return out


def _pairs_polytope(n: int, wmap) -> genperm.SubmodularSpec:
    z = [0] * (1 << n)
    items = [(matroid.mask_of(p), a) for p, a in wmap.items() if a]
    for t in range(1, 1 << n):
        z[t] = sum(a for pm, a in items if pm & t)
    return genperm.SubmodularSpec(n, tuple(z))


# -- shared h*-sweep -----------------------------------------------------------------

_SWEEP_CACHE: dict = {}


def hstar_sweep(seed: int, max_n: int, wseed: int | None = None):
    """Per (matroid, polytope): the Snapper polynomial and chi values 0..d+2.

    The polytope corpus is drawn from ``seed`` alone; ``wseed`` (default
    ``seed``) only steers the certified weight, so seed-independence checks
    vary the weight while holding the corpus fixed.  Cached.
    """
    if wseed is None:
        wseed = seed
    key = (seed, wseed, max_n)
    got = _SWEEP_CACHE.get(key)
    if got is not None:
        return got
    records = []
    for m in corpus(max_n):
        w = tropical.sample_weight(m, wseed)
        for pname, p in _criterion_polytopes(m, seed):
            poly = euler.snapper_polynomial(m, p, w)
            values = [euler.chi(m, p, a, w) for a in range(poly.degree + 3)]
            records.append((m, pname, p, poly, values))
    _SWEEP_CACHE[key] = records
    return records


# -- criteria --------------------------------------------------------------------------

def c01_golden_fixture(seed: int, scope: str):
    m = matroid.uniform(2, 3)
    w = tropical.certify_weight(m, (0, 1, 3), seed=-1)
    deg = tropical.initial_degeneration(m, w)
    want_components = {(4,), (5,), (6,)}
    want_coeffs = {(4,): 1, (5,): 1, (6,): 1, (4, 5): -1, (4, 6): -1,
                   (1, 5): 0, (2, 6): 0}
    if set(deg.components) != want_components:
        return False, f"components {deg.components}"
    if deg.coeffs != want_coeffs:
        return False, f"coefficients {deg.coeffs}"
    if deg.total() != 1:
        return False, f"coefficient total {deg.total()}"
    p = _pairs_polytope(3, {(1, 2): 1, (1, 3): 1, (2, 3): 1})
    for a in range(5):
        got = euler.chi(m, p, a, w)
        if got != 3 * a + 1:
            return False, f"chi({a}) = {got} != {3 * a + 1}"
    return True, "components, coefficients and chi(a) = 3a+1 for a = 0..4"


def c02_dual_route(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    maps_per_matroid = 25 if scope == "full" else 6
    checked = 0
    for m in corpus(cap):
        w = tropical.sample_weight(m, seed)
        pairs = matroid.pair_ground(m.n)
        rng = random.Random(f"permuto:selftest:c2:{seed}:{m.key()}")
        for t in range(maps_per_matroid):
            wmap = {p: rng.randrange(0, 4) for p in pairs}
            lhs = euler.chi(m, _pairs_polytope(m.n, wmap), 1, w)
            rhs = euler.pairs_snapper_oracle(m, wmap)
            if lhs != rhs:
                return False, f"{m} map {wmap}: chi={lhs} oracle={rhs}"
            checked += 1
    if scope == "full":
        f = matroid.fano()
        w = tropical.sample_weight(f, seed)
        pairs = matroid.pair_ground(7)
        rng = random.Random(f"permuto:selftest:c2:{seed}:fano")
        for t in range(5):
            wmap = {p: rng.randrange(0, 4) for p in pairs}
            lhs = euler.chi(f, _pairs_polytope(7, wmap), 1, w)
            rhs = euler.pairs_snapper_oracle(f, wmap)
            if lhs != rhs:
                return False, f"fano map {t}: chi={lhs} oracle={rhs}"
            checked += 1
    return True, f"{checked} weight maps agree with the pairs oracle exactly"


def c03_macaulay_sweep(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    bad = []
    for m, pname, p, poly, values in hstar_sweep(seed, cap):
        ok, witness = euler.macaulay_check(poly.h)
        if not ok:
            bad.append((m, pname, poly.h, witness))
    if bad:
        return False, f"{len(bad)} failures, first: {bad[0]}"
    total = len(hstar_sweep(seed, cap))
    return True, f"{total} h*-vectors all pass the Macaulay growth test"


def c04_omega_nonnegative(seed: int, scope: str):
    cap = OMEGA_N if scope == "full" else FAST_N
    count = 0
    minima = None
    for m in corpus(cap):
        w = tropical.sample_weight(m, seed)
        val = euler.omega(m, w)
        if val < 0:
            return False, f"omega({m}) = {val}"
        deg = tropical.degeneration(m, w)
        if deg.total() != 1:
            return False, f"coefficient total {deg.total()} for {m}"
        minima = val if minima is None else min(minima, val)
        count += 1
    if scope == "full":
        f = matroid.fano()
        w = tropical.sample_weight(f, seed)
        val = euler.omega(f, w)
        if val < 0:
            return False, f"omega(fano) = {val}"
        count += 1
    return True, f"omega >= 0 on {count} matroids (min {minima})"


def c05_macaulay_fixtures(seed: int, scope: str):
    rejected = [(1, 4, 21), (1, 1, 28), (1, 0, 1)]
    accepted = [(1,), (1, 2), (1, 3, 6)]
    for vec in rejected:
        ok, witness = euler.macaulay_check(vec)
        if ok:
            return False, f"{vec} wrongly accepted"
    for vec in accepted:
        ok, witness = euler.macaulay_check(vec)
        if not ok:
            return False, f"{vec} wrongly rejected (witness {witness})"
    return True, "three rejections and three acceptances, as fixed"


def c06_degree_law(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    for m, pname, p, poly, values in hstar_sweep(seed, cap):
        d = poly.degree
        if d != euler.numerical_dimension(m, p):
            return False, f"{m} {pname}: degree {d} != numerical dimension"
        diffs = list(values)
        for _ in range(d):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if any(x != diffs[0] for x in diffs):
            return False, f"{m} {pname}: chi values not degree-{d} polynomial"
        if diffs[0] == 0 and d > 0:
            return False, f"{m} {pname}: leading difference vanishes"
        for extra in (d + 1, d + 2):
            if poly.evaluate(extra) != values[extra]:
                return False, f"{m} {pname}: interpolant misses a = {extra}"
    return True, "interpolated degree = partition minimum; a = d+1, d+2 on curve"


def c07_structural_invariants(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    mats = list(corpus(cap))
    if scope == "full":
        mats.append(matroid.fano())
        mats.extend(corpus(OMEGA_N))
    seen = set()
    count = 0
    for m in mats:
        if m.key() in seen:
            continue
        seen.add(m.key())
        w = tropical.sample_weight(m, seed)
        deg = tropical.degeneration(m, w)
        if deg.total() != 1:
            return False, f"{m}: coefficient total {deg.total()}"
        if not all(deg.imap(c) in (0, 1) for c in deg.coeffs):
            return False, f"{m}: indicator out of range"
        for chain in deg.coeffs:
            if deg.imap(chain) == 0 and deg.coeff(chain) != 0:
                return False, f"{m}: c != 0 on an i = 0 chain"
        if not tropical.multiplicity_certificate(m, w):
            return False, f"{m}: multiplicity violation {deg.multiplicity_violations()}"
        count += 1
    return True, f"sum c = 1, i in {{0,1}}, c|i=0 = 0, multiplicity 1 on {count} matroids"


def c08_seed_independence(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    seeds = [seed, seed + 1, seed + 2]
    base = {(m.key(), pname): poly.h
            for m, pname, p, poly, values in hstar_sweep(seed, cap)}
    for s in seeds[1:]:
        other = {(m.key(), pname): poly.h
                 for m, pname, p, poly, values in hstar_sweep(seed, cap, wseed=s)}
        if other != base:
            diff = next(k for k in base if base[k] != other.get(k))
            return False, f"h* differs across seeds at {diff}"
    for m in corpus(min(cap, FULL_N)):
        vals = {euler.omega(m, tropical.sample_weight(m, s)) for s in seeds}
        if len(vals) != 1:
            return False, f"omega({m}) varies across seeds: {vals}"
    return True, f"chi, h*, omega identical across seeds {seeds}"


def c09_negative_power_laws(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    for m, pname, p, poly, values in hstar_sweep(seed, cap):
        d = poly.degree
        for a in range(-d, 0):
            if (-1) ** d * poly.evaluate(a) < 0:
                return False, f"{m} {pname}: sign law fails at a = {a}"
        if poly.h[-1] != (-1) ** d * poly.evaluate(-1):
            return False, f"{m} {pname}: endpoint identity fails"
    return True, "(-1)^d p(a) >= 0 on -d..-1 and h_d = (-1)^d p(-1) throughout"


def _unique_nonbasis_matroid(n: int, nonbases) -> matroid.Matroid:
    all2 = [matroid.mask_of(c) for c in itertools.combinations(range(1, n + 1), 2)]
    banned = {matroid.mask_of(b) for b in nonbases}
    return matroid.validate(n, [b for b in all2 if b not in banned])


def c10_hstar_not_valuative(seed: int, scope: str):
    m = matroid.uniform(2, 4)
    m1 = _unique_nonbasis_matroid(4, [(1, 2)])
    m2 = _unique_nonbasis_matroid(4, [(3, 4)])
    m12 = _unique_nonbasis_matroid(4, [(1, 2), (3, 4)])
    p = genperm.base_polytope(m12)
    quad = [(m, 1), (m1, -1), (m2, -1), (m12, 1)]
    for a in range(5):
        total = sum(sign * euler.chi(mm, p, a, tropical.sample_weight(mm, seed))
                    for mm, sign in quad)
        if total != 0:
            return False, f"Snapper alternating sum is {total} at a = {a}"
    hs = [euler.hstar(mm, p, tropical.sample_weight(mm, seed)) for mm, _ in quad]
    width = max(len(h) for h in hs)
    padded = [list(h) + [0] * (width - len(h)) for h in hs]
    alt = [padded[0][i] - padded[1][i] - padded[2][i] + padded[3][i] for i in range(width)]
    if not any(alt):
        return False, "h* alternating sum vanished"
    return True, f"chi sums to zero at a = 0..4 while the h* relation gives {alt}"


def c11_free_matroid_ehrhart(seed: int, scope: str):
    cap = FULL_N if scope == "full" else FAST_N
    checked = 0
    for n in range(1, cap + 1):
        m = matroid.uniform(n, n)
        w = tropical.sample_weight(m, seed)
        for pname, p in _criterion_polytopes(m, seed):
            for a in range(4):
                box = len(genperm.lattice_points_box(p, a))
                val = euler.chi(m, p, a, w)
                if val != box:
                    return False, f"U({n},{n}) {pname} a={a}: chi={val} box={box}"
                checked += 1
    return True, f"{checked} Ehrhart values match the bounding-box enumeration"


def _all_matroids(n: int):
    out = [matroid.Matroid(n, 0, (0,))]
    for size in range(1, n + 1):
        for support in itertools.combinations(range(1, n + 1), size):
            for r in range(1, size + 1):
                for m in matroid.enumerate_loopless(size, r):
                    out.append(matroid.embed(m, n, support))
    return out


def c12_kindred_round_trips(seed: int, scope: str):
    count = 0
    for n in range(1, 5):
        for m in _all_matroids(n):
            ms = euler.kindred_snapper(m)
            d, top, prog = euler.multidegree_and_progenitor(ms)
            if prog != m:
                return False, f"round trip failed for {m}"
            if d != m.r or set(top) != set(m.bases):
                return False, f"degree/top mismatch for {m}"
            for size in range(1, n + 1):
                for j in itertools.combinations(range(1, n + 1), size):
                    lhs = euler.project_multisnapper(ms, j)
                    rhs = euler.kindred_snapper(matroid.restriction(m, j))
                    if lhs != rhs:
                        return False, f"projection mismatch for {m}, J = {j}"
            count += 1
    return True, f"{count} matroids round-trip; projection commutes with restriction"


CRITERIA = [
    ("1 golden fixture", c01_golden_fixture),
    ("2 dual-route chi vs pairs oracle", c02_dual_route),
    ("3 Macaulay h* sweep", c03_macaulay_sweep),
    ("4 omega nonnegative sweep", c04_omega_nonnegative),
    ("5 Macaulay fixtures", c05_macaulay_fixtures),
    ("6 degree law", c06_degree_law),
    ("7 structural invariants", c07_structural_invariants),
    ("8 seed independence", c08_seed_independence),
    ("9 negative-power laws", c09_negative_power_laws),
    ("10 h* not valuative", c10_hstar_not_valuative),
    ("11 free-matroid Ehrhart", c11_free_matroid_ehrhart),
    ("12 kindred round trips", c12_kindred_round_trips),
]


def run(level: str, seed: int):
    """Run the suite; returns (report lines, all passed)."""
    scope = "full" if level == "full" else "fast"
    lines = []
    all_ok = True
    for name, fn in CRITERIA:
        t0 = time.time()
        ok, detail = fn(seed, scope)
        secs = time.time() - t0
        all_ok = all_ok and ok
        lines.append(f"criterion {name}: {'pass' if ok else 'FAIL'} "
                     f"({secs:.2f}s) {detail}")
    return lines, all_ok
