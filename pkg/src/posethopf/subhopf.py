"""SubHopf closure certification for growth-model generators.

Given homogeneous generators a_1, ..., a_N (each a PosetVector of degree n),
the span K[a_1, a_2, ...] is closed under the coproduct iff for every n and
every split k + l = n there are coefficients beta_{kvec,l} with

    Delta(a_n) = sum over l, partitions kvec of n - l of
                 beta_{kvec,l} * a_{k_1} ... a_{k_d} (x) a_l.

This module sets these up as exact linear systems and solves them, and also
implements the closed-form and recursive coefficient formulas for the
standard model families.
"""

from fractions import Fraction
from math import comb, factorial

from .algebra import ONE, ZERO, Scalar, solve_linear_exact
from .counting import (forest_partitions, partition_size_multiplicities,
                       partitions_of, psi, shuffles, templates)
from .errors import DomainError, InexactDivision, NonHomogeneous, NotAForest
from .growth import Couplings, grow_distribution
from .hopf import PosetVector, coproduct_vector
from .posets import EMPTY, Poset, components, corolla, disjoint_union


class ClosureReport:
    """status is "closed", "not_closed" or "undetermined".

    For "closed", ``betas`` maps (kvec, l) to the coefficient (a Scalar, or a
    (numerator, denominator) Scalar pair when the coefficient is a genuine
    ratio). For "not_closed", ``witness`` is a tensor coordinate
    (left poset, right poset) whose coefficient cannot be matched, and
    ``witness_n`` the grading where it occurs.
    """

    def __init__(self, status, checked_n, betas=None, witness=None, witness_n=None,
                 orientation="monomial_left"):
        self.status = status
        self.checked_n = checked_n
        self.betas = betas or {}
        self.witness = witness
        self.witness_n = witness_n
        # "monomial_left": Delta(a_n) = sum beta * (product of a_k) (x) a_l;
        # "monomial_right": the mirrored expansion a_l (x) (product of a_k)
        self.orientation = orientation

    def beta(self, kvec, l):
        return self.betas.get((tuple(sorted(kvec, reverse=True)), l))

    def to_json(self):
        from .posets import to_json as poset_json
        out = {"status": self.status, "checked_n": self.checked_n,
               "orientation": self.orientation}
        if self.status == "closed":
            blist = []
            for (kvec, l), c in sorted(self.betas.items(),
                                       key=lambda kv: (sum(kv[0][0]) + kv[0][1], kv[0][1], kv[0][0])):
                coeff = str(c) if isinstance(c, Scalar) else f"({c[0]})/({c[1]})"
                blist.append({"k": list(kvec), "l": l, "coeff": coeff})
            out["betas"] = blist
        if self.witness is not None:
            out["witness"] = {"n": self.witness_n,
                              "left": poset_json(self.witness[0]),
                              "right": poset_json(self.witness[1])}
        return out


def _monomial(a_list, kvec):
    """Product a_{k_1} ... a_{k_d} as a PosetVector, or None if some factor
    vanishes."""
    acc = PosetVector.unit()
    for k in kvec:
        factor = a_list[k - 1]
        if not factor.terms:
            return None
        acc = acc * factor
    return acc


def _check_orientation(a_list, n_max, monomial_left):
    """One closure pass. With monomial_left the candidate expansion is
    sum beta_{kvec,l} (a_{k_1}...a_{k_d}) (x) a_l; otherwise the tensor legs
    are mirrored. Returns a ClosureReport without the orientation field set
    to its final value."""
    betas = {}
    undetermined = False
    for n in range(2, n_max + 1):
        delta = coproduct_vector(a_list[n - 1])
        for l in range(0, n):
            k = n - l
            a_l = PosetVector.unit() if l == 0 else a_list[l - 1]
            kvecs = []
            monos = []
            for kvec in partitions_of(k):
                mono = _monomial(a_list, kvec)
                if mono is not None:
                    kvecs.append(kvec)
                    monos.append(mono)
            # row index: all tensor coordinates touched by either side
            pairs = set()
            for mono in monos:
                for ck in mono.terms:
                    for cl in a_l.terms:
                        pairs.add((ck, cl) if monomial_left else (cl, ck))
            for (left, right) in delta.terms:
                if monomial_left and left.n == k and right.n == l:
                    pairs.add((left, right))
                elif not monomial_left and left.n == l and right.n == k:
                    pairs.add((left, right))
            pairs = sorted(pairs, key=lambda pr: (pr[0].code, pr[1].code))
            if not pairs:
                continue
            if not kvecs:
                # nothing to expand in; any coproduct mass here is fatal
                for pr in pairs:
                    if delta.coeff(*pr):
                        return ClosureReport("not_closed", n_max,
                                             witness=pr, witness_n=n)
                continue
            rows = []
            rhs = []
            for pr in pairs:
                ck, cl = pr if monomial_left else (pr[1], pr[0])
                rows.append([mono.coeff(ck) * a_l.coeff(cl) for mono in monos])
                rhs.append(delta.coeff(*pr))
            sol = solve_linear_exact(rows, rhs)
            if sol.status == "inconsistent":
                return ClosureReport("not_closed", n_max,
                                     witness=pairs[sol.row_index], witness_n=n)
            if sol.status == "underdetermined":
                undetermined = True
                continue
            for kvec, (num, den) in zip(kvecs, sol.values):
                try:
                    coeff = num.exact_div(den)
                except InexactDivision:
                    coeff = (num, den)
                betas[(kvec, l)] = coeff
    if undetermined:
        return ClosureReport("undetermined", n_max)
    return ClosureReport("closed", n_max, betas=betas)


def check_closure(a_list, n_max=None):
    """Certify or refute coproduct closure of the span of the generators.

    ``a_list`` holds a_1, ..., a_N as PosetVectors, a_n homogeneous of degree
    n. Checks every grading 2..n_max (default N). Zero generators are allowed;
    partitions using them are dropped from the candidate basis.

    Two sufficient certificate shapes are tried: the primary expansion with
    products of generators on the left tensor leg and a single generator on
    the right, and its mirror image (which is the natural shape for models
    grown by adding maximal elements above everything, where the connected
    "root" part of each cut is the up-set). The report records which
    orientation certified closure.
    """
    n_max = len(a_list) if n_max is None else n_max
    if n_max > len(a_list):
        raise DomainError("n_max exceeds the number of generators supplied")
    for n, an in enumerate(a_list, 1):
        if any(p.n != n for p in an.terms):
            raise NonHomogeneous(f"a_{n} is not homogeneous of degree {n}")
    report = _check_orientation(a_list, n_max, monomial_left=True)
    if report.status != "not_closed":
        return report
    mirrored = _check_orientation(a_list, n_max, monomial_left=False)
    if mirrored.status != "not_closed":
        mirrored.orientation = "monomial_right"
        return mirrored
    return report


def csg_generators(coup: Couplings, n_max):
    """Generators a_n = sum of n-element posets weighted by the model."""
    return [grow_distribution(n, coup) for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# the Gamma coefficient by direct extraction and by the shuffle formula

def gamma_direct(ck: Poset, cl: Poset, coup: Couplings) -> Scalar:
    """Coefficient of ck (x) cl in Delta(a_{k+l}), from the grown
    distribution."""
    n = ck.n + cl.n
    delta = coproduct_vector(grow_distribution(n, coup))
    return delta.coeff(ck, cl)


def gamma_formula(ck: Poset, cl: Poset, coup: Couplings) -> Scalar:
    """Gamma(ck, cl) via the shuffle/template sum:

    pref * sum over shuffles of the component words of ck with a word of
    length l, of prod over components i of
    sum over templates T of the component of
    prod over x in T of lambda^(v^i_x)(varpi_x, m_x),

    where varpi_x counts all elements below x in T, m_x those covered by x,
    and v^i_x the number of l-letters before the x-th letter of word i. The
    prefactor is w(cl)/prod mu(P)! in weight mode, and additionally divided
    by prod_{i=l}^{k+l-1} lambda(i, 0) (with P(cl) in place of w(cl)) in
    probability mode.
    """
    l = cl.n
    if l < 1:
        raise DomainError("the shuffle formula needs a nonempty right leg")
    comps = []
    mu_fact = 1
    for c, mult in components(ck):
        comps.extend([c] * mult)
        mu_fact *= factorial(mult)
    kvec = [c.n for c in comps]
    k = sum(kvec)
    # per-component template stage data: list of (varpi_x, m_x) per template
    comp_stages = []
    for c in comps:
        stages = []
        for t in templates(c):
            stages.append([(bin(t.down[x]).count("1"), len(t.covers_below(x)))
                           for x in range(t.n)])
        comp_stages.append(stages)
    total = ZERO
    for v in shuffles(kvec, l):
        prod = ONE
        for i in range(len(comps)):
            comp_sum = ZERO
            for stages in comp_stages[i]:
                term = ONE
                for x, (varpi, m) in enumerate(stages):
                    term = term * coup.lam_v(v[i][x], varpi, m)
                comp_sum = comp_sum + term
            prod = prod * comp_sum
        total = total + prod
    wcoup = Couplings(t=coup.t, t_tail=coup.t_tail, s=(), s_tail=1, mode="weight")
    w_l = grow_distribution(l, wcoup).coeff(cl)
    result = (w_l * total) / Fraction(mu_fact)
    if coup.mode == "probability":
        norm = ONE
        for i in range(l, k + l):
            norm = norm * coup.lam(i, 0)
        result = result.exact_div(norm) if not norm.is_constant() \
            else result / norm.constant_value()
        # w -> P conversion for the right leg
        lnorm = ONE
        for i in range(1, l):
            lnorm = lnorm * coup.lam(i, 0)
        result = result.exact_div(lnorm) if not lnorm.is_constant() \
            else result / lnorm.constant_value()
    return result


# ---------------------------------------------------------------------------
# forest and tree coefficient formulas

def _shuffle_first_letter_sum(kvec, l, t0, t1):
    """sum over Sh(kvec, l) of prod_i (t0 + v^i_1 t1)."""
    acc = ZERO
    for v in shuffles(kvec, l):
        prod = ONE
        for i in range(len(kvec)):
            prod = prod * (t0 + v[i][0] * t1)
        acc = acc + prod
    return acc


def _size_mult_factorial(kvec):
    mult = {}
    for kk in kvec:
        mult[kk] = mult.get(kk, 0) + 1
    out = 1
    for c in mult.values():
        out *= factorial(c)
    return out


def _f_nvec(witness: Poset, nvec):
    """f_nvec(F) = sum over forest partitions pi of F with size profile nvec
    of (1/prod mu^pi(P)!) prod_P mu^F(P)!/prod_{F' in pi} mu^{F'}(P)!."""
    nvec = tuple(sorted(nvec, reverse=True))
    mu_f = dict(components(witness))
    total = Fraction(0)
    for pi in forest_partitions(witness):
        sizes = []
        for g, cnt in pi.items():
            sizes.extend([g.n] * cnt)
        if tuple(sorted(sizes, reverse=True)) != nvec:
            continue
        term = Fraction(1)
        for _, cnt in pi.items():
            term /= factorial(cnt)
        for p, cnt in mu_f.items():
            sub = 1
            for g, gcnt in pi.items():
                sub *= factorial(dict(components(g)).get(p, 0)) ** gcnt
            term *= Fraction(factorial(cnt), sub)
        total += term
    return total


def _coarsenings(kvec):
    """Partitions obtainable by merging parts of kvec, other than kvec
    itself, as sorted tuples."""
    kvec = tuple(kvec)
    d = len(kvec)
    out = set()

    def set_partitions(idx):
        if not idx:
            yield []
            return
        first, rest = idx[0], idx[1:]
        for part in set_partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    for part in set_partitions(list(range(d))):
        nvec = tuple(sorted((sum(kvec[i] for i in block) for block in part), reverse=True))
        out.add(nvec)
    out.discard(tuple(sorted(kvec, reverse=True)))
    return sorted(out)


def default_witness(kvec) -> Poset:
    """Disjoint union of corollas with the given component sizes."""
    f = EMPTY
    for kk in kvec:
        f = disjoint_union(f, corolla(kk))
    return f


_beta_cache = {}


def beta_forest(kvec, l, variant="unnormalised", t=None, witness=None):
    """Coproduct coefficient beta_{kvec,l} for the forest and tree families.

    variant: "unnormalised" (symbolic in t0, t1), "tree" (symbolic in t1),
    "cm", or "normalised" (requires a rational ratio ``t`` = t1/t0).

    ``witness``: a forest with component sizes kvec used to evaluate the
    partition counts in the recursion; the result is independent of the
    choice. Defaults to a union of corollas.
    """
    kvec = tuple(sorted(kvec, reverse=True))
    if variant in ("tree", "cm"):
        t1 = ONE if variant == "cm" else Scalar.var("t1")
        acc = ZERO
        for v in shuffles(kvec, l):
            prod = ONE
            for i in range(len(kvec)):
                prod = prod * (v[i][0] * t1)
            acc = acc + prod
        return acc / Fraction(_size_mult_factorial(kvec))
    if variant == "normalised":
        if t is None:
            raise DomainError("the normalised variant needs a rational t = t1/t0")
        t = Fraction(t)
    elif variant != "unnormalised":
        raise DomainError(f"unknown variant {variant!r}")
    if witness is None:
        witness = default_witness(kvec)
    else:
        sizes = tuple(sorted((c.n for c, m in components(witness) for _ in range(m)),
                             reverse=True))
        if sizes != kvec:
            raise DomainError("witness component sizes do not match kvec")
        if not witness.is_forest():
            raise NotAForest("witness must be a forest")
    cache_key = (kvec, l, variant, t)
    hit = _beta_cache.get(cache_key)
    if hit is not None:
        return hit
    d = len(kvec)
    k = sum(kvec)
    kfact = 1
    for kk in kvec:
        kfact *= factorial(kk)
    mu_fact = Fraction(_size_mult_factorial(kvec))
    if variant == "unnormalised":
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        sh = _shuffle_first_letter_sum(kvec, l, t0, t1)
        b_term = ZERO
        for nvec in _coarsenings(kvec):
            fn = _f_nvec(witness, nvec)
            if not fn:
                continue
            b_n = beta_forest(nvec, l, variant="unnormalised")
            nfact = 1
            for ni in nvec:
                nfact *= factorial(ni)
            coeff = Fraction(nfact * _size_mult_factorial(nvec), kfact) * fn
            b_term = b_term + b_n * (t0 ** (d - len(nvec))) * coeff
        result = (sh - b_term) / mu_fact
    else:
        one = ONE
        ts = Scalar.const(t)
        sh = _shuffle_first_letter_sum(kvec, l, one, ts)
        num_prefix = ONE
        for ki in kvec:
            for x in range(1, ki):
                num_prefix = num_prefix * (1 + x * t)
        den = Fraction(1)
        for x in range(l, k + l):
            den *= 1 + x * t
        b_term = ZERO
        for nvec in _coarsenings(kvec):
            fn = _f_nvec(witness, nvec)
            if not fn:
                continue
            b_n = beta_forest(nvec, l, variant="normalised", t=t)
            nfact = 1
            nden = Fraction(1)
            for ni in nvec:
                nfact *= factorial(ni)
                for x in range(ni):
                    nden *= 1 + x * t
            coeff = Fraction(nfact * _size_mult_factorial(nvec)) / nden * fn / kfact
            b_term = b_term + b_n * coeff
        result = num_prefix * (sh / den - b_term) / mu_fact
    _beta_cache[cache_key] = result
    return result


def beta_first_order(k, l, variant="unnormalised", t=None):
    """Closed forms for beta_{k,l} when the left side is a single generator."""
    s = sum(comb(l + k - i, l + 1 - i) * (i - 1) for i in range(1, l + 2))
    if variant == "cm":
        return Scalar.const(s)
    if variant == "tree":
        return s * Scalar.var("t1")
    if variant == "normalised_tree":
        return Scalar.const(Fraction(factorial(k - 1) * factorial(l - 1),
                                     factorial(k + l - 1)) * s)
    if variant == "unnormalised":
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        acc = ZERO
        for i in range(1, l + 2):
            acc = acc + comb(l + k - i, l + 1 - i) * (t0 + (i - 1) * t1)
        return acc
    if variant == "normalised":
        if t is None:
            raise DomainError("the normalised variant needs a rational t = t1/t0")
        t = Fraction(t)
        num = Fraction(1)
        for x in range(1, k):
            num *= 1 + x * t
        den = Fraction(1)
        for x in range(l, l + k):
            den *= 1 + x * t
        acc = Fraction(0)
        for i in range(1, l + 2):
            acc += comb(l + k - i, l + 1 - i) * (1 + (i - 1) * t)
        return Scalar.const(num / den * acc)
    raise DomainError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# the three ratio diagnostics for general CSG couplings (t0 = 1, t1 = t)

def ratio_chain(t, t2, t3) -> Fraction:
    """Gamma(chain_3, a_1) / P(chain_3), scaled by the common normalisation."""
    t, t2, t3 = Fraction(t), Fraction(t2), Fraction(t3)
    lam30 = 1 + 3 * t + 3 * t2 + t3
    return (4 + 3 * (t2 + t3) / (t + t2)
            + 2 * t2 * (t + 2 * t2 + t3) / (t * (t + t2))
            + t + 2 * t2 + t3) / lam30


def ratio_corolla(t, t2, t3) -> Fraction:
    """Gamma(corolla_3, a_1) / P(corolla_3)."""
    t, t2, t3 = Fraction(t), Fraction(t2), Fraction(t3)
    lam30 = 1 + 3 * t + 3 * t2 + t3
    return (4 + t + 5 * t2 / t + 2 * t2 + 2 * t2 ** 2 / t ** 2 + t2 ** 2 / t) / lam30


def ratio_anticorolla(t, t2, t3) -> Fraction:
    """Gamma(anticorolla_3, a_1) / P(anticorolla_3)."""
    t, t2, t3 = Fraction(t), Fraction(t2), Fraction(t3)
    lam30 = 1 + 3 * t + 3 * t2 + t3
    return (4 + 3 * (t + t3 / t2) + t ** 2 + 3 * t3 * t / t2 + t3 * t ** 2 / t2) / lam30
