"""Generalized permutohedra presented by integer submodular functions.

A spec (n, z) with z submodular and z(empty) = 0 presents the lattice
polytope

    P(z) = { x in R^n : x(S) <= z(S) for all S,  x([n]) = z([n]) },

i.e. the base polytope of z.  The table stores all 2^n - 1 values (index =
bit-set), which makes Minkowski sum pointwise addition and keeps every
operation exact.

Conventions fixed here and relied on downstream:

* a chain S_1 < ... < S_k of nonempty proper subsets selects the face of
  P(z) on which every x(S_i) attains its **minimum** over P(z) (inner-normal
  convention); by submodular duality that minimum is z([n]) - z([n]\\S_i);
* such a face splits as a product of base polytopes, one per chain layer
  (restriction/contraction of z), which is what the lattice-point counter
  exploits;
* lattice counting is by recursive coordinate slicing with exact greedy
  bounds; the slice function min(f(S), f(S + e) - v) is again submodular.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapExceeded, NotSubmodular, ParseError
from .parsing import Cursor
from . import matroid as _matroid

MAX_N = 16

# face-selection convention: "min" (inner normal) is the library convention;
# the flip exists only for the documented sensitivity experiment.
FACE_CONVENTION = "min"


@dataclass(frozen=True)
class SubmodularSpec:
    n: int
    z: tuple[int, ...]  # length 2**n, z[0] == 0

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.n, self.z)))

    def __hash__(self):
        return self._hash

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def value(self, subset) -> int:
        return self.z[_matroid.as_mask(subset, self.n)]

    def min_value(self, subset) -> int:
        """Exact minimum of x(S) over P(z): z([n]) - z([n] \\ S)."""
        s = _matroid.as_mask(subset, self.n)
        return self.z[self.full] - self.z[self.full ^ s]


def _check_local_submodular(n: int, z: list[int]):
    """z(S+i) + z(S+j) >= z(S+ij) + z(S) for all S and i < j outside S.

    Equivalent to the all-pairs inequality; the local witness pair
    (S+i, S+j) also violates the global form, so it is reported as such.
    """
    for s in range(1 << n):
        rest = ((1 << n) - 1) & ~s
        ei = rest
        while ei:
            ibit = ei & -ei
            ei -= ibit
            ej = ei
            while ej:
                jbit = ej & -ej
                ej -= jbit
                if z[s | ibit] + z[s | jbit] < z[s | ibit | jbit] + z[s]:
                    raise NotSubmodular(s | ibit, s | jbit)


def validate_submodular(n: int, zmap) -> SubmodularSpec:
    """Accept a total integer map on nonempty subsets iff it is submodular."""
    if not (1 <= n <= MAX_N):
        raise CapExceeded(f"submodular specs capped at n <= {MAX_N}")
    z = [0] * (1 << n)
    if isinstance(zmap, dict):
        items = {_matroid.as_mask(k, n): int(v) for k, v in zmap.items()}
        missing = [s for s in range(1, 1 << n) if s not in items]
        if missing:
            raise ParseError(f"z is not total: missing subset {missing[0]:#x}")
        for s, v in items.items():
            if s:
                z[s] = v
    else:
        vals = list(zmap)
        if len(vals) != (1 << n):
            raise ParseError("z table must have 2^n entries (index = bit-set)")
        z = [int(v) for v in vals]
        if z[0] != 0:
            raise ParseError("z(empty) must be 0")
    _check_local_submodular(n, z)
    return SubmodularSpec(n, tuple(z))


# -- constructors ---------------------------------------------------------------

def base_polytope(m) -> SubmodularSpec:
    """P(M): z = rank function of the matroid."""
    if m.n > MAX_N:
        raise CapExceeded(f"submodular specs capped at n <= {MAX_N}")
    z = tuple(m.rank(s) for s in range(1 << m.n))
    return SubmodularSpec(m.n, z)


def simplex_spec(n: int, members) -> SubmodularSpec:
    s = _matroid.as_mask(members, n)
    if s == 0:
        raise ParseError("simplex needs a nonempty vertex set")
    z = tuple(1 if t & s else 0 for t in range(1 << n))
    return SubmodularSpec(n, z)


def point_spec(vector) -> SubmodularSpec:
    v = list(vector)
    n = len(v)
    if not (1 <= n <= MAX_N):
        raise CapExceeded(f"submodular specs capped at n <= {MAX_N}")
    z = [0] * (1 << n)
    for t in range(1, 1 << n):
        z[t] = sum(v[i] for i in range(n) if t >> i & 1)
    return SubmodularSpec(n, tuple(z))


def zero_spec(n: int) -> SubmodularSpec:
    return SubmodularSpec(n, tuple(0 for _ in range(1 << n)))


def minkowski_sum(specs) -> SubmodularSpec:
    specs = list(specs)
    if not specs:
        raise ParseError("sum() of no polytopes")
    n = specs[0].n
    if any(p.n != n for p in specs):
        raise ParseError("sum() mixes ground-set sizes")
    z = tuple(sum(p.z[t] for p in specs) for t in range(1 << n))
    return SubmodularSpec(n, z)


def dilate(c: int, p: SubmodularSpec) -> SubmodularSpec:
    if c < 0:
        raise ParseError("dilation factor must be a nonnegative integer")
    return SubmodularSpec(p.n, tuple(c * v for v in p.z))


def neg(p: SubmodularSpec) -> SubmodularSpec:
    """Support function of -P: z'(S) = z([n]\\S) - z([n]), z'([n]) = -z([n])."""
    full = p.full
    top = p.z[full]
    z = tuple(p.z[full ^ s] - top for s in range(1 << p.n))
    return SubmodularSpec(p.n, z)


def translate(p: SubmodularSpec, vector) -> SubmodularSpec:
    return minkowski_sum([p, point_spec(vector)])


def building_set_polytope(m, flats) -> SubmodularSpec:
    """Sum of Delta_S over subsets S whose closure lies in the given flat list.

    The list is *not* checked for the building-set axioms; the Minkowski sum
    is formed regardless.
    """
    wanted = {_matroid.as_mask(f, m.n) for f in flats}
    parts = []
    for s in range(1, 1 << m.n):
        if m.closure(s) in wanted:
            parts.append(simplex_spec(m.n, s))
    if not parts:
        return zero_spec(m.n)
    return minkowski_sum(parts)


def relabel(p: SubmodularSpec, perm) -> SubmodularSpec:
    """Image under a permutation of [n]: z'(image of S) = z(S)."""
    perm = list(perm)
    z = [0] * (1 << p.n)
    for t in range(1 << p.n):
        img = 0
        for e in range(p.n):
            if t >> e & 1:
                img |= 1 << (perm[e] - 1)
        z[img] = p.z[t]
    return SubmodularSpec(p.n, tuple(z))


# -- expression grammar ----------------------------------------------------------

def build_polytope(expr: str, env=None) -> SubmodularSpec:
    """Grammar: ``matroid:NAME | simplex:i,j,... | seg:i,j | sum(E1,...,Ek) |
    dilate:c*E | neg(E) | point:v1,...,vn | buildingset(NAME; F1;F2;...)``.

    ``env`` maps names to matroids; ``matroid:`` leaves also accept catalog
    expressions directly.  The ground-set size is inferred from the leaves
    and must agree across a sum.
    """
    cur = Cursor(expr)
    p = _parse_poly(cur, env)
    cur.require_done()
    return p


def _parse_poly(cur: Cursor, env) -> SubmodularSpec:
    name = cur.ident()
    if name == "matroid":
        cur.expect(":")
        m = _matroid.parse_matroid_expr(cur, env)
        return base_polytope(m)
    if name == "simplex":
        cur.expect(":")
        members = cur.int_list()
        n = max(members)
        return simplex_spec(n, members)
    if name == "seg":
        cur.expect(":")
        i = cur.integer()
        cur.expect(",")
        j = cur.integer()
        if i == j:
            raise ParseError("seg needs two distinct elements")
        return simplex_spec(max(i, j), (i, j))
    if name == "point":
        cur.expect(":")
        return point_spec(cur.int_list(signed=True))
    if name == "dilate":
        cur.expect(":")
        c = cur.integer()
        cur.expect("*")
        return dilate(c, _parse_poly(cur, env))
    if name == "neg":
        cur.expect("(")
        p = _parse_poly(cur, env)
        cur.expect(")")
        return neg(p)
    if name == "sum":
        cur.expect("(")
        parts = [_parse_poly(cur, env)]
        while cur.eat(","):
            parts.append(_parse_poly(cur, env))
        cur.expect(")")
        n = max(p.n for p in parts)
        parts = [embed_spec(p, n) for p in parts]
        return minkowski_sum(parts)
    if name == "buildingset":
        cur.expect("(")
        m = _matroid.parse_matroid_expr(cur, env)
        flats = []
        while cur.eat(";"):
            flats.append(cur.int_list())
        cur.expect(")")
        return building_set_polytope(m, flats)
    raise ParseError(f"unknown polytope expression {name!r}")


def embed_spec(p: SubmodularSpec, n: int) -> SubmodularSpec:
    """Reinterpret a spec on [m] as one on [n] >= m (extra coordinates 0).

    Simplex leaves only know the largest element they mention, so sums embed
    every summand into the largest ground set seen.
    """
    if p.n == n:
        return p
    mask = p.full
    z = tuple(p.z[s & mask] for s in range(1 << n))
    return SubmodularSpec(n, z)


# -- induced partition ------------------------------------------------------------

def induced_partition(p: SubmodularSpec):
    """(blocks, dim): blocks of the finest product decomposition, via edges.

    i ~ j iff some codimension-1 chain face is a segment in direction
    e_i - e_j; scanning those chains reduces to: exists T avoiding {i, j}
    with z(T+i) + z(T+j) > z(T+ij) + z(T) (strict submodularity defect).
    """
    n = p.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    z = p.z
    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            ibit, jbit = 1 << i, 1 << j
            rest_mask = p.full & ~(ibit | jbit)
            t = rest_mask
            related = False
            while True:
                if z[t | ibit] + z[t | jbit] > z[t | ibit | jbit] + z[t]:
                    related = True
                    break
                if t == 0:
                    break
                t = (t - 1) & rest_mask
            if related:
                parent[find(i)] = find(j)
    blocks: dict[int, int] = {}
    for i in range(n):
        blocks.setdefault(find(i), 0)
        blocks[find(i)] |= 1 << i
    out = tuple(sorted(blocks.values()))
    return out, n - len(out)


def dimension(p: SubmodularSpec) -> int:
    return induced_partition(p)[1]


# -- faces -------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceSpec:
    base: SubmodularSpec
    tight: tuple[int, ...]  # chain of subset masks, strictly nested

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.base, self.tight)))

    def __hash__(self):
        return self._hash


def check_chain(n: int, chain) -> tuple[int, ...]:
    masks = tuple(_matroid.as_mask(s, n) for s in chain)
    full = (1 << n) - 1
    prev = 0
    for s in masks:
        if s == 0 or s == full:
            raise ParseError("chain members must be nonempty proper subsets")
        if (prev | s) != s or prev == s:
            raise ParseError("chain must be strictly nested")
        prev = s
    return masks


def face(p: SubmodularSpec, chain) -> FaceSpec:
    """Face of P(z) where every x(S_i) attains its minimum (the convention
    policed by the degeneration pipeline's oracle tests)."""
    tight = check_chain(p.n, chain)
    if FACE_CONVENTION == "max":
        # experiment hook: tighten at maxima instead (breaks the pipeline
        # oracles; see scripts/convention_experiment.py)
        comp = tuple((p.full ^ s) for s in reversed(tight))
        tight = comp
    return FaceSpec(p, tight)


def face_factors(f: FaceSpec):
    """Product decomposition over chain layers.

    Layer A_a = S_a \\ S_{a-1} carries the base polytope of
    g_a(U) = z(([n] \\ S_a) | U) - z([n] \\ S_a); the outermost layer is the
    plain restriction.  Returns [(layer_mask, local_table)] with local tables
    reindexed to bits 0..|A|-1 ascending by element.
    """
    p, chain = f.base, f.tight
    full = p.full
    factors = []
    prev = 0
    for a, s in enumerate(chain + (full,)):
        layer = s & ~prev
        rest = full ^ s
        elems = [e for e in range(p.n) if layer >> e & 1]
        table = []
        for u in range(1 << len(elems)):
            um = 0
            for t in range(len(elems)):
                if u >> t & 1:
                    um |= 1 << elems[t]
            table.append(p.z[rest | um] - p.z[rest])
        factors.append((layer, tuple(table)))
        prev = s
    return factors


def face_dim(f: FaceSpec) -> int:
    d = 0
    for layer, table in face_factors(f):
        m = layer.bit_count()
        if m > 1:
            sub = SubmodularSpec(m, table)
            d += induced_partition(sub)[1]
    return d


# -- exact lattice-point counting ---------------------------------------------------

_COUNT_MEMO: dict[tuple[int, ...], int] = {}


def _count_base(table: tuple[int, ...]) -> int:
    """Lattice points of the base polytope {x(S) <= f(S), x(full) = f(full)}.

    Slices on the top coordinate; the exact per-coordinate range is
    [f(full) - f(full - e), f(e)] (greedy minimum and maximum), and a slice
    min(f(S), f(S + e) - v) is submodular again, so the recursion is total.
    """
    m = len(table).bit_length() - 1
    if m <= 1:
        return 1
    memo = _COUNT_MEMO.get(table)
    if memo is not None:
        return memo
    full = (1 << m) - 1
    top = 1 << (m - 1)
    lo = table[full] - table[full ^ top]
    hi = table[top]
    total = 0
    half = 1 << (m - 1)
    for v in range(lo, hi + 1):
        sliced = tuple(min(table[s], table[s | top] - v) for s in range(half))
        total += _count_base(sliced)
    if len(_COUNT_MEMO) > 500000:
        _COUNT_MEMO.clear()
    _COUNT_MEMO[table] = total
    return total


def lattice_count(f: FaceSpec, a: int) -> int:
    """Integer points of the a-dilated face; a = 0 yields 1."""
    if a < 0:
        raise ParseError("lattice_count needs a >= 0")
    if a == 0:
        return 1
    total = 1
    for layer, table in face_factors(f):
        if layer.bit_count() >= 2:
            total *= _count_base(tuple(a * v for v in table))
    return total


def whole(p: SubmodularSpec) -> FaceSpec:
    return FaceSpec(p, ())


def lattice_points_box(p: SubmodularSpec, a: int):
    """Independent brute-force enumeration of a*P by bounding box + filters.

    Deliberately ignorant of the product/greedy structure: per-coordinate
    box bounds, then every constraint checked on every candidate (with a
    partial-sum cutoff so desk-scale cases stay finite-time).
    """
    n = p.n
    full = p.full
    z = [a * v for v in p.z]
    los = [z[full] - z[full ^ (1 << i)] for i in range(n)]
    his = [z[1 << i] for i in range(n)]
    points = []

    def rec(i, prefix, total):
        if i == n:
            if total != z[full]:
                return
            for s in range(1, full):
                xs = sum(prefix[t] for t in range(n) if s >> t & 1)
                if xs > z[s]:
                    return
            points.append(tuple(prefix))
            return
        remaining_min = sum(los[j] for j in range(i + 1, n))
        remaining_max = sum(his[j] for j in range(i + 1, n))
        for v in range(los[i], his[i] + 1):
            t = total + v
            if t + remaining_min > z[full] or t + remaining_max < z[full]:
                continue
            rec(i + 1, prefix + [v], t)

    rec(0, [], 0)
    return points


def lattice_points_face(f: FaceSpec, a: int):
    """All integer points of the a-dilated face (test-scale helper)."""
    p = f.base
    n = p.n
    if a == 0:
        return [tuple(0 for _ in range(n))]
    pts_per_layer = []
    for layer, table in face_factors(f):
        elems = [e for e in range(n) if layer >> e & 1]
        sub = SubmodularSpec(len(elems), tuple(a * v for v in table))
        local = lattice_points_box(sub, 1)
        pts_per_layer.append((elems, local))
    points = []
    for combo in itertools.product(*(loc for _, loc in pts_per_layer)):
        x = [0] * n
        for (elems, _), vec in zip(pts_per_layer, combo):
            for e, v in zip(elems, vec):
                x[e] = v
        points.append(tuple(x))
    return points


# -- greedy vertices -----------------------------------------------------------------

def greedy_vertex(p: SubmodularSpec, order) -> tuple[int, ...]:
    """v[pi(k)] = z(pi(1..k)) - z(pi(1..k-1)); always a lattice point of P."""
    x = [0] * p.n
    seen = 0
    for e in order:
        bit = 1 << (e - 1)
        x[e - 1] = p.z[seen | bit] - p.z[seen]
        seen |= bit
    return tuple(x)


def greedy_vertices(p: SubmodularSpec) -> set[tuple[int, ...]]:
    return {greedy_vertex(p, perm) for perm in itertools.permutations(range(1, p.n + 1))}


# -- raw file format -------------------------------------------------------------------

def dumps(p: SubmodularSpec) -> str:
    lines = [f"genperm n={p.n}"]
    for s in range(1, 1 << p.n):
        lines.append(f"{_matroid.set_str(s)}:{p.z[s]}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> SubmodularSpec:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("genperm"):
        raise ParseError("genperm file must start with 'genperm n=<int>'")
    fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        n = int(fields["n"])
    except (KeyError, ValueError):
        raise ParseError("genperm header needs n=<int>") from None
    zmap = {}
    for ln in lines[1:]:
        try:
            left, right = ln.rsplit(":", 1)
            members = [int(tok) for tok in left.split(",")]
            zmap[_matroid.mask_of(members)] = int(right)
        except ValueError:
            raise ParseError(f"bad genperm line {ln!r}") from None
    return validate_submodular(n, zmap)
