"""The Hopf algebra of finite posets.

Vectors are finite Q-linear (or polynomial-coefficient) combinations of
unlabelled posets. The product is disjoint union; the coproduct splits a
poset over its up-set/down-set cuts, with the up-set on the left tensor leg.
"""

from .algebra import Scalar, ONE
from .errors import SizeExceeded
from .posets import EMPTY, Poset, canon, disjoint_union, max_n


class PosetVector:
    """A linear combination of unlabelled posets with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for p, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    self.terms[p] = c

    @staticmethod
    def basis(p: Poset, coeff=1):
        return PosetVector({p: coeff})

    @staticmethod
    def unit():
        return PosetVector({EMPTY: ONE})

    def __eq__(self, other):
        return isinstance(other, PosetVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            nc = out.get(p, Scalar()) + c
            if nc:
                out[p] = nc
            else:
                out.pop(p, None)
        v = PosetVector()
        v.terms = out
        return v

    def __neg__(self):
        v = PosetVector()
        v.terms = {p: -c for p, c in self.terms.items()}
        return v

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = Scalar.coerce(s)
        v = PosetVector()
        if s:
            v.terms = {p: c * s for p, c in self.terms.items()}
        return v

    def __mul__(self, other):
        """Bilinear extension of disjoint union."""
        out = PosetVector()
        acc = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                r = disjoint_union(p, q)
                nc = acc.get(r, Scalar()) + cp * cq
                if nc:
                    acc[r] = nc
                else:
                    acc.pop(r, None)
        out.terms = acc
        return out

    def coeff(self, p: Poset) -> Scalar:
        return self.terms.get(p, Scalar())

    def support(self):
        return sorted(self.terms, key=lambda p: (p.n, p.code))

    def map_coeffs(self, fn):
        v = PosetVector()
        for p, c in self.terms.items():
            nc = Scalar.coerce(fn(c))
            if nc:
                v.terms[p] = nc
        return v

    def __str__(self):
        from .posets import to_text
        if not self.terms:
            return "0"
        parts = [f"({c})*[{to_text(p)}]" for p, c in sorted(
            self.terms.items(), key=lambda kv: (kv[0].n, kv[0].code))]
        return " + ".join(parts)

    __repr__ = __str__


class TensorVector:
    """A linear combination of pairs of posets (two tensor legs)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    self.terms[k] = c

    def __eq__(self, other):
        return isinstance(other, TensorVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, Scalar()) + c
            if nc:
                out[k] = nc
            else:
                out.pop(k, None)
        v = TensorVector()
        v.terms = out
        return v

    def __sub__(self, other):
        v = TensorVector()
        v.terms = {k: -c for k, c in other.terms.items()}
        return self + v

    def coeff(self, left: Poset, right: Poset) -> Scalar:
        return self.terms.get((left, right), Scalar())

    def support(self):
        return sorted(self.terms, key=lambda k: (k[0].n, k[0].code, k[1].n, k[1].code))

    def __str__(self):
        from .posets import to_text
        if not self.terms:
            return "0"
        parts = [f"({c})*[{to_text(a)}]x[{to_text(b)}]" for (a, b), c in sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0].n, kv[0][0].code, kv[0][1].n, kv[0][1].code))]
        return " + ".join(parts)

    __repr__ = __str__


def tensor(v: PosetVector, w: PosetVector) -> TensorVector:
    out = TensorVector()
    for p, cp in v.terms.items():
        for q, cq in w.terms.items():
            out.terms[(p, q)] = out.terms.get((p, q), Scalar()) + cp * cq
    out.terms = {k: c for k, c in out.terms.items() if c}
    return out


def coproduct(p: Poset) -> TensorVector:
    """Delta(P) = sum over up-sets U of P of [U] tensor [P \\ U]."""
    rep = p.rep
    full = (1 << p.n) - 1
    acc = {}
    for d in rep.down_set_masks():
        u = full ^ d
        left = canon(rep.subposet(u))
        right = canon(rep.subposet(d))
        key = (left, right)
        acc[key] = acc.get(key, Scalar()) + ONE
    return TensorVector(acc)


def coproduct_vector(v: PosetVector) -> TensorVector:
    out = TensorVector()
    for p, c in v.terms.items():
        d = coproduct(p)
        for k, cc in d.terms.items():
            nc = out.terms.get(k, Scalar()) + c * cc
            if nc:
                out.terms[k] = nc
            else:
                out.terms.pop(k, None)
    return out


def reduced_coproduct(v) -> TensorVector:
    """Coproduct with the two trivial cuts of each basis poset removed."""
    if isinstance(v, Poset):
        v = PosetVector.basis(v)
    full = coproduct_vector(v)
    out = TensorVector()
    for (a, b), c in full.terms.items():
        if a is EMPTY or b is EMPTY:
            continue
        out.terms[(a, b)] = c
    return out


def counit(v: PosetVector) -> Scalar:
    return v.coeff(EMPTY)


_antipode_cache = {}

ANTIPODE_MAX_N = 6


def antipode(p: Poset) -> PosetVector:
    """S(P), by the graded recursion S(P) = -P - sum S(P') * P'' over the
    reduced coproduct. Capped at posets of size 6."""
    if p.n > ANTIPODE_MAX_N:
        raise SizeExceeded(f"antipode capped at n <= {ANTIPODE_MAX_N}")
    if p is EMPTY:
        return PosetVector.unit()
    hit = _antipode_cache.get(p)
    if hit is not None:
        return hit
    acc = PosetVector.basis(p, -1)
    for (a, b), c in reduced_coproduct(p).terms.items():
        acc = acc + (antipode(a) * PosetVector.basis(b)).scale(-c)
    _antipode_cache[p] = acc
    return acc


def antipode_vector(v: PosetVector) -> PosetVector:
    out = PosetVector()
    for p, c in v.terms.items():
        out = out + antipode(p).scale(c)
    return out


# ---------------------------------------------------------------------------
# axiom checks (used by the self-test command and the test suite)

def check_coassociativity(p: Poset) -> bool:
    """(Delta x id)Delta = (id x Delta)Delta on a basis poset, computed as
    coefficients of triples."""
    left = {}
    for (a, b), c in coproduct(p).terms.items():
        for (a1, a2), c2 in coproduct(a).terms.items():
            k = (a1, a2, b)
            left[k] = left.get(k, Scalar()) + c * c2
    right = {}
    for (a, b), c in coproduct(p).terms.items():
        for (b1, b2), c2 in coproduct(b).terms.items():
            k = (a, b1, b2)
            right[k] = right.get(k, Scalar()) + c * c2
    left = {k: c for k, c in left.items() if c}
    right = {k: c for k, c in right.items() if c}
    return left == right


def check_counit(p: Poset) -> bool:
    """(eps x id)Delta(P) = P = (id x eps)Delta(P)."""
    lhs = PosetVector()
    rhs = PosetVector()
    for (a, b), c in coproduct(p).terms.items():
        if a is EMPTY:
            lhs = lhs + PosetVector.basis(b, c)
        if b is EMPTY:
            rhs = rhs + PosetVector.basis(a, c)
    target = PosetVector.basis(p)
    return lhs == target and rhs == target


def check_multiplicativity(p: Poset, q: Poset) -> bool:
    """Delta(PQ) = Delta(P)Delta(Q) (componentwise product of tensor legs)."""
    if p.n + q.n > max_n():
        raise SizeExceeded("product too large for coproduct check")
    lhs = coproduct(disjoint_union(p, q))
    rhs = TensorVector()
    dp = coproduct(p)
    dq = coproduct(q)
    for (a1, b1), c1 in dp.terms.items():
        for (a2, b2), c2 in dq.terms.items():
            k = (disjoint_union(a1, a2), disjoint_union(b1, b2))
            nc = rhs.terms.get(k, Scalar()) + c1 * c2
            if nc:
                rhs.terms[k] = nc
            else:
                rhs.terms.pop(k, None)
    return lhs == rhs


def check_antipode(p: Poset) -> bool:
    """m(S x id)Delta(P) = eps(P) 1 = m(id x S)Delta(P)."""
    lhs = PosetVector()
    rhs = PosetVector()
    for (a, b), c in coproduct(p).terms.items():
        lhs = lhs + (antipode(a) * PosetVector.basis(b)).scale(c)
        rhs = rhs + (PosetVector.basis(a) * antipode(b)).scale(c)
    target = PosetVector.unit() if p is EMPTY else PosetVector()
    return lhs == target and rhs == target
