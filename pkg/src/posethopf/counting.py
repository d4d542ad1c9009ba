"""Combinatorial counting: linear extensions, natural labellings, shuffles,
Gaussian binomials, forest partitions and grading series."""

from fractions import Fraction
from math import comb, factorial

from .algebra import Scalar, ONE, ZERO
from .errors import DomainError, NotAForest
from .posets import LabelledPoset, Poset, canon, components


def linear_extensions(p):
    """All linear extensions of a poset, as tuples of 0-based elements in order."""
    rep = p.rep if isinstance(p, Poset) else p
    n = rep.n
    out = []

    def rec(placed_mask, order):
        if len(order) == n:
            out.append(tuple(order))
            return
        for e in range(n):
            if placed_mask >> e & 1:
                continue
            if rep.down[e] & ~placed_mask:
                continue
            order.append(e)
            rec(placed_mask | (1 << e), order)
            order.pop()

    rec(0, [])
    return out


def num_linear_extensions(p):
    """e(P), by dynamic programming over down-sets."""
    rep = p.rep if isinstance(p, Poset) else p
    counts = {0: 1}
    for mask in sorted(rep.down_set_masks(), key=lambda m: bin(m).count("1")):
        if mask == 0:
            continue
        total = 0
        for i in range(rep.n):
            if mask >> i & 1 and not (rep.up_mask(i) & mask):
                total += counts[mask ^ (1 << i)]
        counts[mask] = total
    return counts[(1 << rep.n) - 1]


def templates(p):
    """The naturally labelled representatives of a poset.

    Each linear extension induces a natural relabelling; distinct relabellings
    are the templates."""
    rep = p.rep if isinstance(p, Poset) else p
    n = rep.n
    seen = {}
    for ext in linear_extensions(rep):
        pos = [0] * n
        for idx, e in enumerate(ext):
            pos[e] = idx
        down = [0] * n
        for e in range(n):
            for pred in range(n):
                if rep.down[e] >> pred & 1:
                    down[pos[e]] |= 1 << pos[pred]
        key = tuple(down)
        if key not in seen:
            seen[key] = LabelledPoset(n, down)
    return list(seen.values())


def psi(p) -> int:
    """Number of templates (natural labellings) of a poset."""
    return len(templates(p))


def num_extensions(child: Poset, parent: Poset) -> int:
    """Number of ways of extending a fixed natural labelling of ``parent`` to
    one of ``child`` by adding a new greatest-labelled element."""
    if child.n != parent.n + 1:
        raise DomainError("child must have exactly one more element than parent")
    rep = parent.rep
    return sum(1 for d in rep.down_set_masks() if canon(rep.add_above(d)) is child)


# ---------------------------------------------------------------------------
# shuffles

def shuffles(kvec, l):
    """Shuffles of d words of lengths kvec with one word of length l.

    Yields, for each shuffle, the matrix v where v[i][x] (x 0-based) is the
    number of letters of the length-l word occurring before the (x+1)-th
    letter of word i.
    """
    d = len(kvec)
    counts = list(kvec) + [l]
    seq = []
    out = []

    def rec():
        if all(c == 0 for c in counts):
            v = [[0] * kvec[i] for i in range(d)]
            seen_l = 0
            pos = [0] * d
            for letter in seq:
                if letter == d:
                    seen_l += 1
                else:
                    v[letter][pos[letter]] = seen_l
                    pos[letter] += 1
            out.append(v)
            return
        for letter in range(d + 1):
            if counts[letter]:
                counts[letter] -= 1
                seq.append(letter)
                rec()
                seq.pop()
                counts[letter] += 1

    rec()
    return out


def num_shuffles(kvec, l):
    total = sum(kvec) + l
    r = 1
    rem = total
    for c in list(kvec) + [l]:
        r *= comb(rem, c)
        rem -= c
    return r


# ---------------------------------------------------------------------------
# Gaussian binomials

def qbinom(n, k):
    """The Gaussian binomial coefficient as a polynomial Scalar in q."""
    if k < 0 or k > n:
        return ZERO
    q = Scalar.var("q")
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _q_int(n - k + i, q)
        den = den * _q_int(i, q)
    return num.exact_div(den)


def _q_int(m, q):
    # 1 + q + ... + q^{m-1}
    s = ZERO
    for i in range(m):
        s = s + q ** i
    return s


# ---------------------------------------------------------------------------
# component multisets and forest partitions

def multiplicity(p: Poset):
    """mu^P: multiset of connected components, as a dict Poset -> count."""
    return dict(components(p))


def size_multiplicities(p: Poset):
    """mu^P(gamma): counts of component sizes, as a dict size -> count."""
    out = {}
    for c, mult in components(p):
        out[c.n] = out.get(c.n, 0) + mult
    return out


def forest_partitions(f: Poset):
    """Partitions of a forest into sub-forests: all ways of grouping its
    component trees, as multisets of forests.

    Returns a list of dicts mapping forest Poset -> multiplicity, deduped.
    """
    if not f.is_forest():
        raise NotAForest(f"not a forest: {f!r}")
    trees = []
    for c, mult in components(f):
        trees.extend([c] * mult)
    n = len(trees)
    seen = {}

    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in set_partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    from .posets import EMPTY, disjoint_union

    for part in set_partitions(trees):
        mult = {}
        for block in part:
            g = EMPTY
            for t in block:
                g = disjoint_union(g, t)
            mult[g] = mult.get(g, 0) + 1
        key = tuple(sorted((g.code, c) for g, c in mult.items()))
        if key not in seen:
            seen[key] = mult
    return list(seen.values())


def partition_size_multiplicities(pi):
    """mu^pi(gamma) for a partition given as dict forest -> count: counts of
    block sizes."""
    out = {}
    for g, mult in pi.items():
        out[g.n] = out.get(g.n, 0) + mult
    return out


def g_pi(pi):
    """G_pi = prod_gamma mu^pi(gamma)! / prod_F mu^pi(F)! for a partition."""
    num = 1
    for _, cnt in partition_size_multiplicities(pi).items():
        num *= factorial(cnt)
    den = 1
    for _, cnt in pi.items():
        den *= factorial(cnt)
    return Fraction(num, den)


def f_coefficient(f: Poset, nvec):
    """f_n(F): number of partitions of the forest F with block size profile
    ``nvec`` (a sorted tuple of block sizes), each counted with weight
    1 / prod_P mu^pi(P)! times prod_P mu^F(P)! / prod over blocks.

    Concretely: sum over partitions pi with size profile nvec of
    prod_gamma mu^pi(gamma)! / prod_F mu^pi(F)! evaluated combinatorially.
    """
    nvec = tuple(sorted(nvec, reverse=True))
    total = Fraction(0)
    for pi in forest_partitions(f):
        sizes = []
        for g, cnt in pi.items():
            sizes.extend([g.n] * cnt)
        if tuple(sorted(sizes, reverse=True)) != nvec:
            continue
        total += g_pi(pi)
    return total


# ---------------------------------------------------------------------------
# integer partitions and grading series

def partitions_of(k, max_part=None):
    """Integer partitions of k as descending tuples."""
    if max_part is None:
        max_part = k
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            out.append((first,) + rest)
    return out


def series_coefficients(alpha, beta, nmax):
    """Coefficients c_0..c_nmax of the power series with c_0 = 1 and
    c_n = alpha^n * prod_{j=0}^{n-1}(1 + j*beta) / n!.

    alpha and beta may be Scalars or rationals; the result is exact.
    """
    alpha = Scalar.coerce(alpha)
    beta = Scalar.coerce(beta)
    out = [ONE]
    prod = ONE
    apow = ONE
    for n in range(1, nmax + 1):
        apow = apow * alpha
        if n >= 2:
            prod = prod * (ONE + (n - 1) * beta)
        out.append(apow * prod / factorial(n))
    return out
