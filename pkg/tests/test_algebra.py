import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from posethopf.algebra import (Scalar, ONE, ZERO, solve_linear_exact)
from posethopf.errors import InexactDivision

VARS = ["t0", "t1", "q"]


def rand_scalar(rng, nterms=3):
    acc = Scalar()
    for _ in range(rng.randint(0, nterms)):
        term = Scalar.const(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for v in VARS:
            term = term * Scalar.var(v, rng.randint(0, 2))
        acc = acc + term
    return acc


class TestScalarRing:
    def test_ring_axioms_random(self):
        rng = random.Random(3)
        for _ in range(100):
            a, b, c = (rand_scalar(rng) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a + ZERO == a
            assert a * ONE == a
            assert a - a == ZERO

    def test_pow(self):
        t = Scalar.var("t0")
        assert (1 + t) ** 3 == 1 + 3 * t + 3 * t * t + t * t * t
        assert t ** 0 == ONE

    def test_exact_div_round_trip(self):
        rng = random.Random(5)
        hits = 0
        for _ in range(200):
            a, b = rand_scalar(rng), rand_scalar(rng)
            if not b:
                continue
            assert (a * b).exact_div(b) == a
            hits += 1
        assert hits > 100

    def test_inexact_division_raises(self):
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        with pytest.raises(InexactDivision):
            (t0 * t0 + t1).exact_div(t0 + t1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE.exact_div(ZERO)
        with pytest.raises(ZeroDivisionError):
            ONE / 0

    def test_constant_helpers(self):
        c = Scalar.const(Fraction(3, 2))
        assert c.is_constant() and c.constant_value() == Fraction(3, 2)
        assert not Scalar.var("q").is_constant()
        assert ZERO.degree() == -1 and ONE.degree() == 0
        assert (Scalar.var("t0") * Scalar.var("t1")).degree() == 2

    def test_subs_and_eval(self):
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        p = 2 * t0 * t0 + t1 - 1
        assert p.subs({"t0": Fraction(1, 2), "t1": 3}) == Scalar.const(Fraction(5, 2))
        assert p.subs({"t0": t1}) == 2 * t1 * t1 + t1 - 1

    def test_printing_canonical(self):
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        assert str(3 * t0 * t0 + t0 * t1) == "3*t0^2 + t0*t1"
        assert str(t1 - t0) == "-t0 + t1"
        assert str(ZERO) == "0"
        assert str(Scalar.const(Fraction(-1, 2))) == "-1/2"


def gaussian_oracle(A, b):
    """Plain Fraction Gaussian elimination; returns 'unique' solution list,
    'inconsistent', or 'underdetermined'."""
    m, n = len(A), len(A[0]) if A else 0
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    r = 0
    piv = []
    for c in range(n):
        pr = next((i for i in range(r, m) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    for i in range(r, m):
        if M[i][n]:
            return "inconsistent", None
    if r < n:
        return "underdetermined", None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = M[i][n]
    return "unique", x


class TestLinearSolver:
    def test_against_gaussian_oracle(self):
        rng = random.Random(11)
        uniques = inconsistents = unders = 0
        for _ in range(300):
            m, n = rng.randint(1, 5), rng.randint(1, 4)
            A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
            b = [rng.randint(-4, 4) for _ in range(m)]
            status, x = gaussian_oracle(A, b)
            sol = solve_linear_exact(A, b)
            assert sol.status == status
            if status == "unique":
                uniques += 1
                for j in range(n):
                    num, den = sol.values[j]
                    assert num == Scalar.const(x[j]) * den
            elif status == "inconsistent":
                inconsistents += 1
                # the reported row really cannot hold given the unique LHS span
                assert 0 <= sol.row_index < m
            else:
                unders += 1
        assert uniques > 20 and inconsistents > 20 and unders > 5

    def test_symbolic_unique(self):
        t0, t1 = Scalar.var("t0"), Scalar.var("t1")
        sol = solve_linear_exact([[t0, t1], [t1, t0]], [ONE, ZERO])
        assert sol.status == "unique"
        num0, den0 = sol.values[0]
        assert num0 == t0 and den0 == t0 * t0 - t1 * t1

    def test_symbolic_inconsistent(self):
        t0 = Scalar.var("t0")
        sol = solve_linear_exact([[t0], [t0]], [ONE, ZERO])
        assert sol.status == "inconsistent"

    def test_underdetermined_reports_rank(self):
        sol = solve_linear_exact([[1, 1]], [2])
        assert sol.status == "underdetermined"
        assert sol.rank == 1 and sol.free_columns == [1]

    def test_every_row_verified(self):
        # system whose pivot rows are satisfiable but a later row is not
        sol = solve_linear_exact([[1, 0], [0, 1], [1, 1]], [1, 1, 3])
        assert sol.status == "inconsistent"
        assert sol.row_index == 2


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_solver_reconstructs_planted_solution(flat, x):
    A = [flat[:2], flat[2:]]
    b = [A[i][0] * x[0] + A[i][1] * x[1] for i in range(2)]
    sol = solve_linear_exact(A, b)
    if sol.status == "unique":
        for j in range(2):
            num, den = sol.values[j]
            assert num == Scalar.const(x[j]) * den
