"""Finite posets: strict-order tables, canonical forms, enumeration, grafting.

Elements are 0-based internally; the JSON/text interfaces use 1-based labels.
A poset on n elements is stored as a tuple ``down`` of n bitmasks, where bit j
of ``down[i]`` is set iff j < i in the strict order (transitively closed).
"""

import os
from itertools import combinations

from .errors import CycleDetected, NotAForest, SizeExceeded

HARD_MAX_N = 9


def max_n() -> int:
    """Size cap; POSETHOPF_MAX_N may lower it but never exceeds the hard cap."""
    try:
        cap = int(os.environ.get("POSETHOPF_MAX_N", HARD_MAX_N))
    except ValueError:
        cap = HARD_MAX_N
    return max(1, min(cap, HARD_MAX_N))


def _check_size(n):
    if n > max_n():
        raise SizeExceeded(f"poset size {n} exceeds cap {max_n()}")


def _popcount(x):
    return bin(x).count("1")


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class LabelledPoset:
    """A labelled poset on elements 0..n-1 with a transitively closed strict order."""

    __slots__ = ("n", "down")

    def __init__(self, n, down):
        self.n = n
        self.down = tuple(down)

    def __eq__(self, other):
        return isinstance(other, LabelledPoset) and self.down == other.down and self.n == other.n

    def __hash__(self):
        return hash((self.n, self.down))

    def __repr__(self):
        return f"LabelledPoset(n={self.n}, covers={self.cover_pairs()})"

    def less(self, i, j):
        """True iff i < j in the strict order."""
        return bool(self.down[j] >> i & 1)

    def up_mask(self, i):
        """Bitmask of elements strictly above i."""
        m = 0
        for j in range(self.n):
            if self.down[j] >> i & 1:
                m |= 1 << j
        return m

    def is_natural(self):
        """True iff i < j (as integers) whenever i precedes j."""
        return all(self.down[i] & ~((1 << i) - 1) == 0 for i in range(self.n))

    def cover_pairs(self):
        """List of (i, j) with j covering i."""
        out = []
        for j in range(self.n):
            dj = self.down[j]
            for i in _bits(dj):
                # i is covered by j iff no k with i < k < j
                if not any(dj >> k & 1 and self.down[k] >> i & 1 for k in _bits(dj)):
                    out.append((i, j))
        return out

    def covers_below(self, j):
        """Elements covered by j."""
        dj = self.down[j]
        return [i for i in _bits(dj)
                if not any(dj >> k & 1 and self.down[k] >> i & 1 for k in _bits(dj))]

    def relation_count(self):
        return sum(_popcount(d) for d in self.down)

    def link_count(self):
        return len(self.cover_pairs())

    def down_set_masks(self):
        """All downward-closed subsets, as bitmasks (includes 0 and the full set)."""
        n = self.n
        out = []
        for mask in range(1 << n):
            ok = True
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                if self.down[i] & ~mask:
                    ok = False
                    break
                m &= m - 1
            if ok:
                out.append(mask)
        return out

    def up_set_masks(self):
        full = (1 << self.n) - 1
        return [full ^ m for m in self.down_set_masks()]

    def maximal_mask(self, mask=None):
        """Maximal elements of the induced subposet on ``mask`` (default: all)."""
        if mask is None:
            mask = (1 << self.n) - 1
        out = 0
        for i in _bits(mask):
            if not (self.up_mask(i) & mask):
                out |= 1 << i
        return out

    def subposet(self, mask):
        """Induced subposet on the elements of ``mask``, relabelled in increasing order."""
        elems = list(_bits(mask))
        index = {e: i for i, e in enumerate(elems)}
        down = []
        for e in elems:
            m = 0
            for p in _bits(self.down[e] & mask):
                m |= 1 << index[p]
            down.append(m)
        return LabelledPoset(len(elems), down)

    def generated_down_set(self, s_mask):
        """D(S): union of S with everything below it."""
        d = s_mask
        for i in _bits(s_mask):
            d |= self.down[i]
        return d

    def add_above(self, d_mask):
        """New labelled poset with element n above exactly the down-set ``d_mask``."""
        return LabelledPoset(self.n + 1, self.down + (d_mask,))

    def component_masks(self):
        """Connected components of the comparability graph, as bitmasks."""
        n = self.n
        adj = [self.down[i] | self.up_mask(i) for i in range(n)]
        seen = 0
        comps = []
        for i in range(n):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = 1 << i
            while frontier:
                j = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                new = adj[j] & ~comp
                comp |= new
                frontier |= new
            seen |= comp
            comps.append(comp)
        return comps


def transitive_closure(raw) -> LabelledPoset:
    """Close a raw strict relation. ``raw`` is an n x n boolean table or an
    iterable of 0-based (i, j) pairs meaning i < j, plus element count.

    Raises CycleDetected if the relation, viewed as a digraph, has a cycle.
    """
    if isinstance(raw, tuple) and len(raw) == 2 and isinstance(raw[0], int):
        n, pairs = raw
        succ = [0] * n
        for i, j in pairs:
            succ[i] |= 1 << j
    else:
        n = len(raw)
        succ = [0] * n
        for i in range(n):
            for j in range(n):
                if raw[i][j]:
                    succ[i] |= 1 << j
    _check_size(n)
    # Kahn topological sort for cycle detection
    indeg = [0] * n
    for i in range(n):
        for j in _bits(succ[i]):
            if i == j:
                raise CycleDetected("element related to itself")
            indeg[j] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    order = []
    while queue:
        i = queue.pop()
        order.append(i)
        for j in _bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(order) != n:
        raise CycleDetected("relation contains a directed cycle")
    down = [0] * n
    for i in order:
        for j in _bits(succ[i]):
            down[j] |= down[i] | (1 << i)
    return LabelledPoset(n, down)


def labelled_from_pairs(n, pairs_1based):
    """Labelled poset from 1-based relation pairs."""
    return transitive_closure((n, [(i - 1, j - 1) for i, j in pairs_1based]))


# ---------------------------------------------------------------------------
# canonical form

_canon_cache = {}
_intern = {}


class Poset:
    """An unlabelled poset: a canonical naturally-labelled representative.

    Instances are interned by canonical code; equality and hashing are O(1).
    """

    __slots__ = ("n", "down", "code")

    def __init__(self, n, down, code):
        self.n = n
        self.down = down
        self.code = code

    def __eq__(self, other):
        return self is other or (isinstance(other, Poset) and self.code == other.code)

    def __hash__(self):
        return hash(self.code)

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        return f"Poset({to_text(self)!r})"

    @property
    def rep(self):
        """The canonical labelled representative."""
        return LabelledPoset(self.n, self.down)

    def relation_count(self):
        return self.rep.relation_count()

    def link_count(self):
        return self.rep.link_count()

    def is_forest(self):
        """Forest with roots as minimal elements: every element covers at most one."""
        rep = self.rep
        return all(len(rep.covers_below(j)) <= 1 for j in range(self.n))

    def is_connected(self):
        return self.n > 0 and len(self.rep.component_masks()) == 1


def _make_poset(n, down):
    code = bytes([n]) + b"".join(m.to_bytes(2, "big") for m in down)
    p = _intern.get(code)
    if p is None:
        p = Poset(n, tuple(down), code)
        _intern[code] = p
    return p


EMPTY = _make_poset(0, ())
POINT = _make_poset(1, (0,))


def canonicalize(lp: LabelledPoset):
    """Canonical form of a labelled poset.

    Returns (Poset, perm) where perm[i] is the canonical position of input
    element i. The canonical representative is the naturally labelled
    representative whose tuple of predecessor bitmasks is lexicographically
    minimal; canonicalizing a canonical representative yields the identity
    permutation.
    """
    _check_size(lp.n)
    key = (lp.n, lp.down)
    hit = _canon_cache.get(key)
    if hit is not None:
        return hit
    n, down = lp.n, lp.down
    if n == 0:
        result = (EMPTY, ())
        _canon_cache[key] = result
        return result
    # Frontier search over natural labellings, keeping only those achieving
    # the minimal mask at each position. States with the same view of the
    # unplaced elements are merged (keep the lexicographically least witness).
    states = {((), tuple((u, 0) for u in range(n))): ()}
    prefix = []
    for pos in range(n):
        best = None
        candidates = []
        for (_, unplaced_sig), placed in states.items():
            placed_mask = 0
            for e in placed:
                placed_mask |= 1 << e
            for e in range(n):
                if placed_mask >> e & 1:
                    continue
                if down[e] & ~placed_mask:
                    continue  # not all predecessors placed yet
                m = 0
                for idx, pe in enumerate(placed):
                    if down[e] >> pe & 1:
                        m |= 1 << idx
                if best is None or m < best:
                    best = m
                    candidates = [(placed, e)]
                elif m == best:
                    candidates.append((placed, e))
        prefix.append(best)
        new_states = {}
        for placed, e in candidates:
            new_placed = placed + (e,)
            placed_mask = 0
            for x in new_placed:
                placed_mask |= 1 << x
            sig = []
            for u in range(n):
                if placed_mask >> u & 1:
                    continue
                m = 0
                for idx, pe in enumerate(new_placed):
                    if down[u] >> pe & 1:
                        m |= 1 << idx
                sig.append((u, m))
            skey = (tuple(prefix), tuple(sig))
            old = new_states.get(skey)
            if old is None or new_placed < old:
                new_states[skey] = new_placed
        states = new_states
    witness = min(states.values())
    perm = [0] * n
    for posn, e in enumerate(witness):
        perm[e] = posn
    result = (_make_poset(n, tuple(prefix)), tuple(perm))
    _canon_cache[key] = result
    return result


def canon(lp: LabelledPoset) -> Poset:
    return canonicalize(lp)[0]


# ---------------------------------------------------------------------------
# constructions

def chain(n):
    return canon(LabelledPoset(n, tuple((1 << i) - 1 for i in range(n))))


def antichain(n):
    return canon(LabelledPoset(n, (0,) * n))


def corolla(n):
    """One minimal element with n-1 elements directly above it."""
    if n < 1:
        raise ValueError("corolla needs n >= 1")
    return canon(LabelledPoset(n, (0,) + (1,) * (n - 1)))


def anti_corolla(n):
    """One maximal element with n-1 elements directly below it."""
    if n < 1:
        raise ValueError("anti-corolla needs n >= 1")
    return canon(LabelledPoset(n, (0,) * (n - 1) + ((1 << (n - 1)) - 1,)))


def diamond(n):
    """Corolla of size n-1 with an added unique maximal element."""
    return b_s(corolla(n - 1), frozenset(range(n - 1)))


def v_poset():
    """One minimal element below two incomparable elements."""
    return corolla(3)


def lambda_poset():
    """Two incomparable minimal elements below one maximal element."""
    return anti_corolla(3)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    _check_size(p.n + q.n)
    down = list(p.down) + [m << p.n for m in q.down]
    return canon(LabelledPoset(p.n + q.n, down))


def components(p: Poset):
    """Multiset of connected components as a tuple of (Poset, multiplicity),
    sorted by (size, canonical code)."""
    rep = p.rep
    counts = {}
    for mask in rep.component_masks():
        c = canon(rep.subposet(mask))
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items(), key=lambda kv: (kv[0].n, kv[0].code)))


def down_sets(p):
    """Iterate the down-sets of a poset as frozensets of 0-based elements."""
    rep = p.rep if isinstance(p, Poset) else p
    for mask in rep.down_set_masks():
        yield frozenset(_bits(mask))


def up_sets(p):
    rep = p.rep if isinstance(p, Poset) else p
    for mask in rep.up_set_masks():
        yield frozenset(_bits(mask))


def b_s(p, s):
    """Graft one new element above the down-set generated by S.

    For a Poset the result is canonicalized; for a LabelledPoset the new
    element gets the next label.
    """
    if isinstance(p, Poset):
        rep = p.rep
        mask = 0
        for i in s:
            mask |= 1 << i
        return canon(rep.add_above(rep.generated_down_set(mask)))
    mask = 0
    for i in s:
        mask |= 1 << i
    return p.add_above(p.generated_down_set(mask))


# ---------------------------------------------------------------------------
# enumeration

_enum_cache = {}


def enumerate_posets(n, connected_only=False):
    """All unlabelled posets on n elements, one per isomorphism class,
    sorted by canonical code. 1 <= n <= 8."""
    if n < 1 or n > 8:
        raise SizeExceeded(f"enumeration supported for 1 <= n <= 8, got {n}")
    _check_size(n)
    key = n
    if key not in _enum_cache:
        if n == 1:
            _enum_cache[key] = [POINT]
        else:
            out = {}
            for parent in enumerate_posets(n - 1):
                rep = parent.rep
                for d in rep.down_set_masks():
                    child = canon(rep.add_above(d))
                    out[child.code] = child
            _enum_cache[key] = sorted(out.values(), key=lambda p: p.code)
    posets = _enum_cache[key]
    if connected_only:
        return [p for p in posets if p.is_connected()]
    return list(posets)


# ---------------------------------------------------------------------------
# I/O

def to_json(p: Poset):
    covers = sorted((i + 1, j + 1) for i, j in p.rep.cover_pairs())
    return {"n": p.n, "covers": [list(c) for c in covers]}


def from_json(obj) -> Poset:
    n = int(obj["n"])
    pairs = [(int(i), int(j)) for i, j in obj["covers"]]
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ValueError(f"bad cover pair ({i},{j}) for n={n}")
    lp = labelled_from_pairs(n, pairs)
    declared = sorted((i - 1, j - 1) for i, j in pairs)
    if sorted(lp.cover_pairs()) != declared:
        raise ValueError("covers list is not a valid cover set (implied relations present)")
    return canon(lp)


def to_text(p: Poset) -> str:
    covers = sorted((i + 1, j + 1) for i, j in p.rep.cover_pairs())
    return f"{p.n}:" + ",".join(f"{i}<{j}" for i, j in covers)


def from_text(s: str) -> Poset:
    head, _, rest = s.partition(":")
    n = int(head)
    pairs = []
    if rest:
        for item in rest.split(","):
            a, _, b = item.partition("<")
            pairs.append((int(a), int(b)))
    obj = {"n": n, "covers": [list(p) for p in pairs]}
    return from_json(obj)
