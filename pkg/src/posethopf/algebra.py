"""Exact multivariate polynomial arithmetic and exact linear solving.

Scalars are sparse polynomials over Q: a dict mapping monomials to Fraction
coefficients, where a monomial is a sorted tuple of (variable, exponent)
pairs. No floating point anywhere.
"""

from fractions import Fraction

from .errors import InexactDivision

# Display/ordering rank of variable names. Coupling variables first, then the
# deformation and model parameters; anything unknown sorts after these.
_VAR_RANK = {}
for _i in range(32):
    _VAR_RANK[f"t{_i}"] = (0, _i)
    _VAR_RANK[f"s{_i}"] = (1, _i)
_VAR_RANK["q"] = (2, 0)
_VAR_RANK["t"] = (3, 0)
_VAR_RANK["alpha"] = (4, 0)
_VAR_RANK["beta"] = (4, 1)


def _var_key(name):
    return _VAR_RANK.get(name, (9, name))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda ve: _var_key(ve[0])))


def _mono_key(m):
    # graded, then lex on ranked variables with higher early exponents first
    return (-sum(e for _, e in m), tuple((_var_key(v), -e) for v, e in m))


class Scalar:
    """An exact polynomial with rational coefficients.

    Immutable in practice; supports +, -, *, scalar division by integers or
    Fractions, exact polynomial division, substitution and evaluation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def const(c):
        c = Fraction(c)
        return Scalar({(): c}) if c else Scalar()

    @staticmethod
    def var(name, exp=1):
        if exp == 0:
            return Scalar.const(1)
        return Scalar({((name, exp),): Fraction(1)})

    @staticmethod
    def coerce(x):
        if isinstance(x, Scalar):
            return x
        return Scalar.const(x)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m == () for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), Fraction(0))

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = Scalar.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, Fraction(0)) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return Scalar(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if not self.terms or not other.terms:
            return Scalar()
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                nc = out.get(m, Fraction(0)) + c1 * c2
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return Scalar(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = Scalar.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __truediv__(self, other):
        """Division by a nonzero rational constant."""
        if isinstance(other, Scalar):
            if other.is_constant():
                other = other.constant_value()
            else:
                return self.exact_div(other)
        c = Fraction(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return Scalar({m: cc / c for m, cc in self.terms.items()})

    def leading(self):
        m = min(self.terms, key=_mono_key)
        return m, self.terms[m]

    def exact_div(self, other):
        """Exact polynomial division; raises InexactDivision on a remainder."""
        other = Scalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self / other.constant_value()
        rem = Scalar(self.terms)
        quo = {}
        lm, lc = other.leading()
        lvars = dict(lm)
        while rem.terms:
            rm, rc = rem.leading()
            # divide monomials
            d = dict(rm)
            ok = True
            for v, e in lvars.items():
                if d.get(v, 0) < e:
                    ok = False
                    break
                d[v] -= e
                if not d[v]:
                    del d[v]
            if not ok:
                raise InexactDivision(f"({self}) is not divisible by ({other})")
            qm = tuple(sorted(d.items(), key=lambda ve: _var_key(ve[0])))
            qc = rc / lc
            quo[qm] = quo.get(qm, Fraction(0)) + qc
            rem = rem - Scalar({qm: qc}) * other
        return Scalar(quo)

    def subs(self, assignment):
        """Substitute Scalars or rationals for variables."""
        out = Scalar()
        for m, c in self.terms.items():
            term = Scalar.const(c)
            for v, e in m:
                if v in assignment:
                    term = term * (Scalar.coerce(assignment[v]) ** e)
                else:
                    term = term * Scalar.var(v, e)
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key):
            c = self.terms[m]
            factors = []
            for v, e in sorted(m, key=lambda ve: _var_key(ve[0])):
                factors.append(v if e == 1 else f"{v}^{e}")
            body = "*".join(factors)
            if not body:
                piece = str(c)
            elif c == 1:
                piece = body
            elif c == -1:
                piece = "-" + body
            else:
                piece = f"{c}*{body}"
            parts.append(piece)
        s = parts[0]
        for piece in parts[1:]:
            if piece.startswith("-"):
                s += " - " + piece[1:]
            else:
                s += " + " + piece
        return s

    __repr__ = __str__


ZERO = Scalar()
ONE = Scalar.const(1)


# ---------------------------------------------------------------------------
# exact linear algebra

class Solution:
    def __init__(self, values):
        self.status = "unique"
        self.values = values  # list of (num, den) Scalar pairs


class Inconsistent:
    def __init__(self, row_index):
        self.status = "inconsistent"
        self.row_index = row_index


class Underdetermined:
    def __init__(self, rank, free_columns):
        self.status = "underdetermined"
        self.rank = rank
        self.free_columns = free_columns


def _det(matrix):
    """Determinant of a square matrix of Scalars by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return ONE
    rows = [list(r) for r in matrix]
    prev = ONE
    sign = 1
    for col in range(n - 1):
        piv = None
        for i in range(col, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pr = rows[col]
        for i in range(col + 1, n):
            ri = rows[i]
            for j in range(col + 1, n):
                ri[j] = (pr[col] * ri[j] - ri[col] * pr[j]).exact_div(prev)
            ri[col] = ZERO
        prev = pr[col]
    d = rows[n - 1][n - 1]
    return d if sign == 1 else -d


def solve_linear_exact(a, b):
    """Solve A x = b exactly over polynomial scalars.

    ``a`` is a list of rows of Scalars (or ints), ``b`` a list of Scalars.
    Returns Solution (values as (numerator, denominator) Scalar pairs, with
    every input row verified exactly), Inconsistent (with the index of an
    original row that cannot be satisfied), or Underdetermined.
    """
    m = len(a)
    ncols = len(a[0]) if m else 0
    A = [[Scalar.coerce(x) for x in row] for row in a]
    bb = [Scalar.coerce(x) for x in b]
    if any(len(row) != ncols for row in A) or len(bb) != m:
        raise ValueError("ragged system")
    if ncols == 0:
        for i, bi in enumerate(bb):
            if bi:
                return Inconsistent(i)
        return Solution([])
    rows = [[A[i][j] for j in range(ncols)] + [bb[i]] for i in range(m)]
    tags = list(range(m))
    pivots, bad = _bareiss_tagged(rows, tags, ncols + 1)
    if bad is not None:
        return Inconsistent(bad)
    rank = len(pivots)
    if rank < ncols:
        free = [j for j in range(ncols) if j not in set(pivots)]
        return Underdetermined(rank, free)
    # Unique solution by Cramer on the pivot rows of the original system.
    pivot_rows = _independent_rows(A, bb, ncols)
    base = [[A[i][j] for j in range(ncols)] for i in pivot_rows]
    den = _det(base)
    values = []
    for j in range(ncols):
        mat = [[(bb[i] if jj == j else A[i][jj]) for jj in range(ncols)] for i in pivot_rows]
        values.append((_det(mat), den))
    # verify every original equation: sum_j A[i][j]*num_j == b_i * den
    for i in range(m):
        lhs = ZERO
        for j in range(ncols):
            if A[i][j]:
                lhs = lhs + A[i][j] * values[j][0]
        if lhs != bb[i] * den:
            return Inconsistent(i)
    return Solution(values)


def _bareiss_tagged(rows, tags, ncols):
    m = len(rows)
    pivots = []
    prev = ONE
    r = 0
    for col in range(ncols - 1):
        piv = None
        for i in range(r, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        tags[r], tags[piv] = tags[piv], tags[r]
        pr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            for j in range(col + 1, ncols):
                ri[j] = (pr[col] * ri[j] - ri[col] * pr[j]).exact_div(prev)
            ri[col] = ZERO
        pivots.append(col)
        prev = pr[col]
        r += 1
        if r == m:
            break
    for i in range(m):
        row = rows[i]
        if all(not row[j] for j in range(ncols - 1)) and row[ncols - 1]:
            return pivots, tags[i]
    return pivots, None


def _independent_rows(A, b, ncols):
    """Indices of a maximal set of linearly independent rows (by re-running
    the elimination and tracking which original rows supplied pivots)."""
    m = len(A)
    rows = [[A[i][j] for j in range(ncols)] for i in range(m)]
    tags = list(range(m))
    prev = ONE
    r = 0
    chosen = []
    for col in range(ncols):
        piv = None
        for i in range(r, m):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        tags[r], tags[piv] = tags[piv], tags[r]
        chosen.append(tags[r])
        pr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            for j in range(col + 1, ncols):
                ri[j] = (pr[col] * ri[j] - ri[col] * pr[j]).exact_div(prev)
            ri[col] = ZERO
        prev = pr[col]
        r += 1
        if r == m:
            break
    return chosen
