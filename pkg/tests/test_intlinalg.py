"""Exact linear algebra: Smith normal form, lattices, feasibility."""

import itertools
import random
from math import gcd

import pytest

from preordgrp.intlinalg import (
    NonnegSolver,
    identity_matrix,
    invariant_factors_of_diagonal,
    kernel_basis,
    lattice_basis,
    lattice_intersection,
    lattice_member,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve,
)


def check_snf(M):
    s = smith_normal_form(M)
    m, n = len(M), len(M[0]) if M else 0
    assert mat_mul(mat_mul(s.U, M), s.V) == s.D
    assert mat_mul(s.U, s.U_inv) == identity_matrix(m)
    assert mat_mul(s.U_inv, s.U) == identity_matrix(m)
    assert mat_mul(s.V, s.V_inv) == identity_matrix(n)
    nz = [d for d in s.diagonal if d]
    assert all(d > 0 for d in nz)
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    # zeros come last
    tail = s.diagonal[len(nz):]
    assert all(d == 0 for d in tail)
    return s


def test_snf_identity():
    s = check_snf([[1]])
    assert s.D == [[1]]


def test_snf_zero_matrix():
    s = check_snf([[0, 0, 0], [0, 0, 0]])
    assert s.D == [[0, 0, 0], [0, 0, 0]]


def test_snf_2x2_example():
    # first invariant factor is the gcd of the entries, the product of the
    # first two is the gcd of the 2x2 minors: gcd=2, |det|=8, so diag(2, 4)
    M = [[2, 4], [6, 8]]
    entry_gcd = gcd(gcd(2, 4), gcd(6, 8))
    minor = abs(2 * 8 - 4 * 6)
    assert (entry_gcd, minor // entry_gcd) == (2, 4)
    s = check_snf(M)
    assert s.diagonal == [2, 4]


def test_snf_random_exhaustive_properties():
    rng = random.Random(20210)
    for _ in range(200):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        check_snf(M)


def test_snf_determinism():
    M = [[3, 1, -2], [0, 4, 5]]
    s1 = smith_normal_form(M)
    s2 = smith_normal_form(M)
    assert s1.U == s2.U and s1.V == s2.V and s1.D == s2.D


def test_invariant_factor_normalization():
    # Z/4 + Z/2 has exponent lcm(4,2) = 4 and order 8, so factors (2, 4)
    assert invariant_factors_of_diagonal([4, 2]) == [2, 4]
    assert invariant_factors_of_diagonal([2, 3]) == [6]
    assert invariant_factors_of_diagonal([1, 1]) == []
    assert invariant_factors_of_diagonal([0, 2]) == [2, 0]


def test_solve():
    assert solve([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert solve([[2]], [3]) is None
    x = solve([[2, 4], [6, 8]], [6, 14])
    assert mat_vec([[2, 4], [6, 8]], x) == [6, 14]
    assert solve([[0, 1]], [5]) is not None


def test_kernel_basis():
    kb = kernel_basis([[0, 1]])
    assert len(kb) == 1
    assert kb[0][1] == 0 and abs(kb[0][0]) == 1
    assert kernel_basis([[1, 0], [0, 1]]) == []
    kb2 = kernel_basis([[2, -1]])
    assert len(kb2) == 1
    a, b = kb2[0]
    assert 2 * a - b == 0 and (a, b) != (0, 0)


def test_lattice_operations():
    # lattice spanned by (2,0) and (0,3) in Z^2
    gens = [[2, 0], [0, 3]]
    assert lattice_member(gens, [4, 3], 2) is not None
    assert lattice_member(gens, [1, 0], 2) is None
    basis = lattice_basis(gens, 2)
    assert len(basis) == 2
    meet = lattice_intersection([[2, 0]], [[3, 0]], 2)
    assert lattice_member(meet, [6, 0], 2) is not None
    assert lattice_member(meet, [2, 0], 2) is None


@pytest.mark.parametrize("target,expected", [
    ([5], True), ([0], True), ([-1], False),
])
def test_nonneg_natural_numbers(target, expected):
    solver = NonnegSolver([[1]], [[]])
    assert (solver.solve(target) is not None) == expected


def test_nonneg_witness_is_solution():
    A = [[2, -1, 0], [0, 0, 1]]
    solver = NonnegSolver(A, [[], []])
    w = solver.solve([1, 0])
    assert w is not None and all(x >= 0 for x in w)
    assert [2 * w[0] - w[1], w[2]] == [1, 0]
    assert solver.solve([0, -1]) is None


def test_nonneg_with_torsion_slack():
    # generator 2 in Z/4: reaches 0 and 2, misses odds
    solver = NonnegSolver([[2]], [[4]])
    assert solver.solve([2]) is not None
    assert solver.solve([0]) is not None
    assert solver.solve([1]) is None
    assert solver.solve([3]) is None


def test_nonneg_parity_obstruction():
    solver = NonnegSolver([[1, -1], [1, 1]], [[0], [2]])
    assert solver.solve([5, 0]) is None
    assert solver.solve([5, 1]) is not None


def test_nonneg_brute_force_agreement():
    # against brute force on a small cone with mixed signs
    A = [[1, 1, -1], [0, 2, -1]]
    solver = NonnegSolver(A, [[], []])
    reachable = set()
    for a in range(7):
        for b in range(7):
            for c in range(7):
                reachable.add((a + b - c, 2 * b - c))
    for x in range(-4, 5):
        for y in range(-4, 5):
            w = solver.solve([x, y])
            if (x, y) in reachable:
                assert w is not None, (x, y)
            if w is not None:
                assert [w[0] + w[1] - w[2], 2 * w[1] - w[2]] == [x, y]


def test_nonneg_randomized_cross_validation():
    """Randomized agreement with brute force, congruence slots included.

    Brute force only certifies feasibility (its box is truncated), so the
    checks are: brute-feasible implies solver-feasible, and every solver
    witness actually solves the system.
    """
    from preordgrp.intlinalg import solve as zsolve
    rng = random.Random(977)
    for trial in range(60):
        m = rng.randint(1, 3)
        t = rng.randint(1, 2)
        u = rng.randint(0, 1)
        A = [[rng.randint(-3, 3) for _ in range(t)] for _ in range(m)]
        B = [[rng.choice([0, 2, 3, 4]) for _ in range(u)] for _ in range(m)]
        solver = NonnegSolver(A, B)

        def feasible_residual(resid):
            if u:
                return zsolve(B, resid) is not None
            return all(r == 0 for r in resid)

        for _ in range(3):
            c = [rng.randint(-5, 5) for _ in range(m)]
            w = solver.solve(c)
            if w is not None:
                assert all(x >= 0 for x in w)
                resid = [c[i] - sum(A[i][j] * w[j] for j in range(t))
                         for i in range(m)]
                assert feasible_residual(resid)
            else:
                for n in itertools.product(range(6), repeat=t):
                    resid = [c[i] - sum(A[i][j] * n[j] for j in range(t))
                             for i in range(m)]
                    assert not feasible_residual(resid), (A, B, c, n)
