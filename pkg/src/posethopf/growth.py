"""Growth models on posets: sequential-growth transition weights, the growth
operator M, distributions over grown posets, grading series and their
recursive solution, and closed-form distributions for the standard models."""

from fractions import Fraction
from math import comb, factorial

from .algebra import ONE, ZERO, Scalar
from .counting import psi, series_coefficients
from .errors import DomainError, NonzeroConstantTerm, ZeroModel
from .hopf import PosetVector
from .posets import POINT, Poset, canon, components

_MAX_INDEX = 16  # couplings are only ever indexed by subset sizes <= max poset size


class Couplings:
    """Sequence couplings t_0, t_1, ... and s_0, s_1, ... for growth models.

    Finite prefixes are given explicitly; ``t_tail``/``s_tail`` give the
    common value of all later entries (0 by default, 1 for an all-ones tail).

    ``mode`` is "weight" (un-normalised) or "probability" (each growth step is
    divided by the total outgoing weight). ``tp_q`` selects the
    transitive-percolation parametrisation where each transition carries
    p^m q^(n - relations) with p = 1 - q, polynomial in q.
    """

    __slots__ = ("t", "t_tail", "s", "s_tail", "mode", "tp_q")

    def __init__(self, t=(), t_tail=0, s=(), s_tail=1, mode="weight", tp_q=False):
        self.t = tuple(Scalar.coerce(x) for x in t)
        self.t_tail = Scalar.coerce(t_tail)
        self.s = tuple(Scalar.coerce(x) for x in s)
        self.s_tail = Scalar.coerce(s_tail)
        if mode not in ("weight", "probability"):
            raise DomainError(f"unknown mode {mode!r}")
        self.mode = mode
        self.tp_q = tp_q

    def t_at(self, k) -> Scalar:
        if k < 0:
            raise DomainError("negative coupling index")
        return self.t[k] if k < len(self.t) else self.t_tail

    def s_at(self, k) -> Scalar:
        if k < 0:
            raise DomainError("negative coupling index")
        return self.s[k] if k < len(self.s) else self.s_tail

    def is_rational(self):
        return all(self.t_at(k).is_constant() and self.s_at(k).is_constant()
                   for k in range(_MAX_INDEX))

    def lam(self, k, p) -> Scalar:
        """lambda(k, p) = sum_{i=0}^{k-p} C(k-p, i) t_{p+i}: total weight of
        proto-pasts whose generated down-set has p maximal elements inside a
        k-element past pool."""
        if p < 0 or p > k:
            raise DomainError(f"need 0 <= p <= k, got ({k}, {p})")
        acc = ZERO
        for i in range(k - p + 1):
            acc = acc + comb(k - p, i) * self.t_at(p + i)
        return acc

    def lam_v(self, v, varpi, m) -> Scalar:
        """lambda^(v)(varpi, m): proto-past weight when v extra spectator
        elements may also join. varpi counts all elements below the new one,
        m the covered ones."""
        if not 0 <= m <= varpi:
            raise DomainError(f"need 0 <= m <= varpi, got ({varpi}, {m})")
        acc = ZERO
        for r in range(v + 1):
            for s in range(varpi - m + 1):
                acc = acc + comb(v, r) * comb(varpi - m, s) * self.t_at(r + s + m)
        return acc

    def min_t_index(self):
        for k in range(_MAX_INDEX):
            if self.t_at(k):
                return k
        raise ZeroModel("all t couplings vanish")

    def min_s_index(self):
        for k in range(_MAX_INDEX):
            if self.s_at(k):
                return k
        raise ZeroModel("all s couplings vanish")


# --- presets ----------------------------------------------------------------

def csg_couplings(t, mode="weight"):
    """Classical sequential growth: s identically 1, given t couplings."""
    return Couplings(t=t, s=(), s_tail=1, mode=mode)


def tp_couplings(t=None, mode="probability", n_cap=_MAX_INDEX):
    """Transitive percolation. With a rational parameter ``t``, couplings are
    t_k = t^k; with t=None, the symbolic q-parametrisation is used."""
    if t is None:
        return Couplings(mode="probability", tp_q=True)
    t = Fraction(t)
    return csg_couplings(tuple(Scalar.const(t ** k) for k in range(n_cap)), mode=mode)


def forest_couplings(t0="t0", t1="t1", mode="weight"):
    t0 = Scalar.var(t0) if isinstance(t0, str) else Scalar.coerce(t0)
    t1 = Scalar.var(t1) if isinstance(t1, str) else Scalar.coerce(t1)
    return csg_couplings((t0, t1), mode=mode)


def tree_couplings(mode="probability"):
    return csg_couplings((0, 1), mode=mode)


def dust_couplings(mode="probability"):
    return csg_couplings((1,), mode=mode)


# --- transitions and distributions ------------------------------------------

def transitions(p: Poset, coup: Couplings):
    """All growth transitions out of a poset: list of (child, weight) with
    children aggregated. The weight of a single down-set D with |D| = varpi
    and m maximal elements is lam(n, ...) summed over proto-pasts S with
    D(S) = D, which equals lam(varpi, m) shifted: sum_j C(varpi-m, j)
    t_{m+j}."""
    rep = p.rep
    n = p.n
    acc = {}
    for d in rep.down_set_masks():
        varpi = bin(d).count("1")
        m = bin(rep.maximal_mask(d)).count("1")
        if coup.tp_q:
            q = Scalar.var("q")
            w = (ONE - q) ** m * q ** (n - varpi)
        else:
            # sum over proto-pasts generating this down-set
            w = ZERO
            for j in range(varpi - m + 1):
                w = w + comb(varpi - m, j) * coup.t_at(m + j)
        if not w:
            continue
        child = canon(rep.add_above(d))
        acc[child] = acc.get(child, ZERO) + w
    return sorted(acc.items(), key=lambda kv: kv[0].code)


def total_outgoing(n, coup: Couplings) -> Scalar:
    """Total transition weight out of any n-element poset: lambda(n, 0),
    or 1 in the q-parametrisation."""
    if coup.tp_q:
        return ONE
    return coup.lam(n, 0)


def grow_distribution(n, coup: Couplings) -> PosetVector:
    """Distribution over unlabelled posets after growing to n elements,
    starting from the single element. In probability mode each step is
    normalised by the total outgoing weight; in weight mode it is not."""
    if n < 1:
        raise DomainError("need n >= 1")
    dist = PosetVector.basis(POINT)
    for cur in range(1, n):
        norm = None
        if coup.mode == "probability" and not coup.tp_q:
            norm = total_outgoing(cur, coup)
            if not norm:
                raise ZeroModel(f"total outgoing weight vanishes at size {cur}")
            if norm.is_constant():
                norm = norm.constant_value()
        nxt = PosetVector()
        for p, c in dist.terms.items():
            for child, w in transitions(p, coup):
                cw = c * w
                if norm is not None:
                    cw = cw / norm if not isinstance(norm, Scalar) else cw.exact_div(norm)
                nxt.terms[child] = nxt.terms.get(child, ZERO) + cw
        nxt.terms = {p: c for p, c in nxt.terms.items() if c}
        dist = nxt
    return dist


# --- closed-form distributions ----------------------------------------------

def tree_probability(p: Poset) -> Scalar:
    """Stationary tree-model probability: Psi(P)/(n-1)! for trees (connected
    forests), 0 otherwise."""
    if not (p.is_forest() and p.is_connected()):
        return ZERO
    return Scalar.const(Fraction(psi(p), factorial(p.n - 1)))


def forest_probability(p: Poset, t0="t0", t1="t1"):
    """Forest-model probability of an n-element poset, as a ratio
    (numerator Scalar, denominator Scalar) in the couplings."""
    t0 = Scalar.var(t0) if isinstance(t0, str) else Scalar.coerce(t0)
    t1 = Scalar.var(t1) if isinstance(t1, str) else Scalar.coerce(t1)
    n = p.n
    den = ONE
    for x in range(1, n):
        den = den * (t0 + x * t1)
    if not p.is_forest():
        return ZERO, den
    tau = sum(mult for _, mult in components(p))
    num = psi(p) * t0 ** (tau - 1) * t1 ** (n - tau)
    return num, den


def tp_probability(p: Poset) -> Scalar:
    """Transitive-percolation probability as a polynomial in q (p = 1 - q):
    Psi(P) p^L q^(C(n,2) - R), with L links and R relations."""
    q = Scalar.var("q")
    n, links, rels = p.n, p.link_count(), p.relation_count()
    return psi(p) * (ONE - q) ** links * q ** (comb(n, 2) - rels)


# --- the growth operator and grading series ----------------------------------

def m_operator(v: PosetVector, coup: Couplings) -> PosetVector:
    """M(P) = sum over subsets S of P of t_|S| s_(|P|-|S|) B_S(P), extended
    linearly. Subsets are aggregated by the down-set they generate."""
    out = {}
    for p, c in v.terms.items():
        rep = p.rep
        n = p.n
        for d in rep.down_set_masks():
            varpi = bin(d).count("1")
            m = bin(rep.maximal_mask(d)).count("1")
            w = ZERO
            for j in range(varpi - m + 1):
                w = w + comb(varpi - m, j) * coup.t_at(m + j) * coup.s_at(n - m - j)
            if not w:
                continue
            child = canon(rep.add_above(d))
            out[child] = out.get(child, ZERO) + c * w
    res = PosetVector()
    res.terms = {p: c for p, c in out.items() if c}
    return res


class GrowthModel:
    """A recursive grading series A(x) = b(x) + x M(f(A(x))).

    ``f_coeffs`` are the coefficients of f (f_coeffs[0] must be 1);
    ``b`` is a list of PosetVectors, b[k] the coefficient of x^k (b[0] empty),
    whose degree must equal min{k: t_k != 0} + min{k: s_k != 0}.
    """

    def __init__(self, coup: Couplings, f_coeffs=(1, 1), b=None):
        self.coup = coup
        self.f = [Scalar.coerce(c) for c in f_coeffs]
        if not self.f or self.f[0] != ONE:
            raise NonzeroConstantTerm("f must have constant term 1")
        self.b = [PosetVector()] + [x for x in (b or [])]
        if self.b[0].terms:
            raise DomainError("b(0) must vanish")
        for k, bk in enumerate(self.b):
            if any(p.n != k for p in bk.terms):
                raise DomainError(f"coefficient of x^{k} in b must be homogeneous of degree {k}")
        d = coup.min_t_index() + coup.min_s_index()
        deg_b = max((k for k, bk in enumerate(self.b) if bk.terms), default=0)
        if deg_b != d:
            raise DomainError(f"deg b = {deg_b} but min t-index + min s-index = {d}")
        self.d = d

    def f_of(self, u):
        """f evaluated on a Scalar argument (used for scalar checks only)."""
        acc = Scalar()
        for c in reversed(self.f):
            acc = acc * u + c
        return acc

    def solve(self, nmax):
        """Coefficients a_1..a_nmax of the unique solution, as PosetVectors."""
        out = []
        for n in range(1, nmax + 1):
            if n <= self.d:
                an = self.b[n] if n < len(self.b) else PosetVector()
            else:
                fa = self._f_of_a_coeff(out, n - 1)
                an = m_operator(fa, self.coup)
                if n < len(self.b) and self.b[n].terms:
                    an = an + self.b[n]
            out.append(an)
        return out

    def _f_of_a_coeff(self, a_list, m):
        """Coefficient of x^m in f(A(x)) given a_list = [a_1, ..., a_k], k >= m."""
        if m == 0:
            return PosetVector.unit().scale(self.f[0])
        acc = PosetVector()
        # A^j coefficients for degrees <= m; A has no constant term so j <= m
        power = {0: PosetVector.unit()}
        for j in range(1, m + 1):
            nxt = {}
            for deg, vec in power.items():
                for i in range(1, m - deg + 1):
                    if i > len(a_list) or not a_list[i - 1].terms:
                        continue
                    prod = vec * a_list[i - 1]
                    nd = deg + i
                    if nd in nxt:
                        nxt[nd] = nxt[nd] + prod
                    else:
                        nxt[nd] = prod
            power = nxt
            if j < len(self.f) and self.f[j] and m in power:
                acc = acc + power[m].scale(self.f[j])
            if not power:
                break
        return acc


# --- model presets for the CLI and tests -------------------------------------

def cm_model(mode="weight"):
    """Connes-Moscovici natural growth: t = (0, 1), s identically 1,
    f(u) = 1 + u, b(x) = x * point."""
    coup = Couplings(t=(0, 1), s=(), s_tail=1, mode=mode)
    b = [PosetVector.basis(POINT)]
    return GrowthModel(coup, f_coeffs=(1, 1), b=b)


def dse_model(f_coeffs):
    """Dyson-Schwinger tree classes: s = (1,), t identically 1, b = 0."""
    coup = Couplings(t=(), t_tail=1, s=(1,), s_tail=0, mode="weight")
    return GrowthModel(coup, f_coeffs=f_coeffs, b=None)


def foissy_dse_model(alpha, beta, nmax):
    return dse_model(series_coefficients(alpha, beta, nmax))


def csg_model(coup: Couplings, b=None):
    """CSG as a grading series: f(u) = 1 + u, s identically 1.

    With t_0 != 0 the base case b = 0 works; when the first nonzero coupling
    is t_1 (an originary model) the canonical base case b = x * point is
    supplied. Deeper zero prefixes need an explicit b.
    """
    wcoup = Couplings(t=coup.t, t_tail=coup.t_tail, s=(), s_tail=1, mode="weight")
    if b is None and wcoup.min_t_index() == 1:
        b = [PosetVector.basis(POINT)]
    return GrowthModel(wcoup, f_coeffs=(1, 1), b=b)
