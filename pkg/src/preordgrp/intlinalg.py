"""Exact integer linear algebra.

Everything here works over arbitrary-precision Python integers: Smith normal
form with tracked unimodular transforms, linear system solving over Z,
column-lattice arithmetic, and a complete decision procedure for
non-negative integer feasibility (used for cone membership).

Matrices are lists of rows; column vectors are plain lists.  An m x 0 or
0 x n matrix is represented by the obvious degenerate list shape and every
routine tolerates it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _floor_div(a, b):
    return a // b


def _ceil_div(a, b):
    return -((-a) // b)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m, n):
    return [[0] * n for _ in range(m)]


def mat_copy(M):
    return [list(row) for row in M]


def mat_shape(M):
    return len(M), len(M[0]) if M else 0


def mat_mul(A, B):
    m, k = mat_shape(A)
    k2, n = mat_shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch {m}x{k} * {k2}x{n}")
    out = zero_matrix(m, n)
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    Oi[j] += a * Bt[j]
    return out


def mat_vec(A, x):
    m, n = mat_shape(A)
    if n != len(x):
        raise ValueError("shape mismatch in mat_vec")
    return [sum(A[i][j] * x[j] for j in range(n)) for i in range(m)]


def transpose(M):
    m, n = mat_shape(M)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def columns(M):
    m, n = mat_shape(M)
    return [[M[i][j] for i in range(m)] for j in range(n)]


def from_columns(cols, nrows=None):
    if not cols:
        if nrows is None:
            raise ValueError("need nrows for an empty column list")
        return [[] for _ in range(nrows)]
    m = len(cols[0])
    return [[c[i] for c in cols] for i in range(m)]


@dataclass(frozen=True)
class SNF:
    """Decomposition U*M*V = D with U, V unimodular and D diagonal.

    The diagonal of D is non-negative and satisfies d1 | d2 | ... with zero
    entries last.  U_inv and V_inv are exact inverses, maintained during the
    reduction so no separate inversion step is needed.
    """

    U: list
    D: list
    V: list
    U_inv: list
    V_inv: list

    @property
    def diagonal(self):
        m, n = mat_shape(self.D)
        return [self.D[i][i] for i in range(min(m, n))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def _pivot(A, t, m, n):
    """Smallest-absolute-value nonzero entry of A[t:,t:].

    Rows are scanned before columns; ties break toward the lowest index.
    """
    best = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            v = Ai[j]
            if v != 0 and (best is None or abs(v) < abs(best[0])):
                best = (v, i, j)
                if abs(v) == 1:
                    return best
    return best


def smith_normal_form(M):
    """Smith normal form of an integer matrix, with transforms.

    >>> s = smith_normal_form([[2, 4], [6, 8]])
    >>> s.diagonal
    [2, 4]
    """
    m, n = mat_shape(M)
    A = mat_copy(M)
    U, Ui = identity_matrix(m), identity_matrix(m)
    V, Vi = identity_matrix(n), identity_matrix(n)

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for r in Ui:
            r[a], r[b] = r[b], r[a]

    def col_swap(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def row_add(dst, src, q):
        # row[dst] += q * row[src]
        if q == 0:
            return
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        # inverse op on Ui acts on columns: col[src] -= q * col[dst]
        for r in Ui:
            r[src] -= q * r[dst]

    def col_add(dst, src, q):
        if q == 0:
            return
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def row_negate(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    for t in range(min(m, n)):
        while True:
            p = _pivot(A, t, m, n)
            if p is None:
                break
            _, pi, pj = p
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            piv = A[t][t]
            # clear column t below/above the pivot
            dirty = False
            for r in range(m):
                if r != t and A[r][t] != 0:
                    q = A[r][t] // piv
                    row_add(r, t, -q)
                    if A[r][t] != 0:
                        dirty = True
            if dirty:
                continue
            for c in range(n):
                if c != t and A[t][c] != 0:
                    q = A[t][c] // piv
                    col_add(c, t, -q)
                    if A[t][c] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot cleared; enforce divisibility over the rest
            offender = None
            for r in range(t + 1, m):
                for c in range(t + 1, n):
                    if A[r][c] % piv != 0:
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if t < min(m, n) and A[t][t] < 0:
            row_negate(t)
    return SNF(U=U, D=A, V=V, U_inv=Ui, V_inv=Vi)


def invariant_factors_of_diagonal(entries):
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups.

    Zero means an infinite cyclic summand; units are dropped.

    >>> invariant_factors_of_diagonal([4, 2])
    [2, 4]
    >>> invariant_factors_of_diagonal([2, 3])
    [6]
    """
    k = len(entries)
    diag = [[entries[i] if i == j else 0 for j in range(k)] for i in range(k)]
    d = smith_normal_form(diag).diagonal if k else []
    return [x for x in d if x != 1]


def solve(M, b):
    """One integer solution x of M x = b, or None.

    >>> solve([[2, 0], [0, 3]], [4, 9])
    [2, 3]
    >>> solve([[2]], [3]) is None
    True
    """
    s = smith_normal_form(M)
    m, n = mat_shape(M)
    ub = mat_vec(s.U, b)
    y = [0] * n
    for i in range(m):
        d = s.D[i][i] if i < min(m, n) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    return mat_vec(s.V, y)


def kernel_basis(M):
    """Basis (list of columns) of the integer kernel lattice of M."""
    s = smith_normal_form(M)
    m, n = mat_shape(M)
    cols = columns(s.V)
    out = []
    for j in range(n):
        d = s.D[j][j] if j < min(m, n) else 0
        if j >= min(m, n) or d == 0:
            out.append(cols[j])
    return out


def lattice_basis(gens, dim):
    """Basis of the column lattice spanned by ``gens`` (columns in Z^dim)."""
    if not gens:
        return []
    M = from_columns(gens, nrows=dim)
    s = smith_normal_form(M)
    mv = mat_mul(M, s.V)  # equals U_inv * D, so its leading columns are a basis
    cols = columns(mv)
    return [cols[i] for i, d in enumerate(s.diagonal) if d != 0]


def lattice_member(gens, x, dim):
    """Coefficients expressing x in the lattice spanned by gens, or None."""
    if all(v == 0 for v in x):
        return [0] * len(gens)
    if not gens:
        return None
    return solve(from_columns(gens, nrows=dim), x)


def lattice_intersection(gens_a, gens_b, dim):
    """Generators of the intersection of two column lattices in Z^dim."""
    if not gens_a or not gens_b:
        return []
    M = from_columns([list(c) for c in gens_a] + [[-v for v in c] for c in gens_b],
                     nrows=dim)
    out = []
    A = from_columns(gens_a, nrows=dim)
    for k in kernel_basis(M):
        w = k[: len(gens_a)]
        out.append(mat_vec(A, w))
    return [c for c in out if any(c)]


def lattice_preimage(hom_matrix, gens, dom_dim, cod_dim):
    """Generators of { x in Z^dom : hom_matrix*x in lattice(gens) }."""
    cols = columns(hom_matrix) if dom_dim else []
    M = from_columns(cols + [list(g) for g in gens], nrows=cod_dim)
    out = []
    for k in kernel_basis(M):
        out.append(k[:dom_dim])
    return [c for c in out if any(c)]


def lattices_equal(gens_a, gens_b, dim):
    return (all(lattice_member(gens_b, g, dim) is not None for g in gens_a)
            and all(lattice_member(gens_a, g, dim) is not None for g in gens_b))


# ---------------------------------------------------------------------------
# non-negative integer feasibility
# ---------------------------------------------------------------------------

def _feasibility_bound(A, B, c):
    """A-priori bound on some solution of A n + B v = c, n >= 0.

    Splitting each free variable v = v+ - v- yields a purely non-negative
    system; if that system is solvable it has a solution with every entry at
    most nvars * (m * a)^(2m+1) where a bounds the absolute values involved.
    """
    m = len(c)
    nvars = (len(A[0]) if A and A[0] else 0) + 2 * (len(B[0]) if B and B[0] else 0)
    if nvars == 0 or m == 0:
        return 1
    a = 1
    for M in (A, B):
        for row in M:
            for v in row:
                a = max(a, abs(v))
    for v in c:
        a = max(a, abs(v))
    return nvars * (m * a) ** (2 * m + 1)


class NonnegSolver:
    """Decides A n + B v = c with n >= 0 and v free, exactly.

    The free block is eliminated once via Smith normal form (its rows turn
    into congruences); repeated queries against the same (A, B) pair reuse
    the transform.  The search is a depth-first branch and bound over n with
    interval, gcd and congruence pruning; completeness comes from the
    a-priori solution-size bound, which the search never actually approaches
    on sane inputs.
    """

    def __init__(self, A, B):
        # A: m x t (nonneg vars), B: m x u (free vars); both may have 0 cols
        self.m = len(A)
        self.t = len(A[0]) if A and A[0] else 0
        self.u = len(B[0]) if B and B[0] else 0
        self.A = A
        self.B = B
        if self.u:
            self.snfB = smith_normal_form(B)
            self.UA = mat_mul(self.snfB.U, A) if self.t else [[] for _ in range(self.m)]
        else:
            self.snfB = None
            self.UA = A

    def _rows(self, c):
        """Equality and congruence rows for a given right-hand side."""
        if self.u:
            uc = mat_vec(self.snfB.U, c)
            diag = self.snfB.diagonal + [0] * (self.m - len(self.snfB.diagonal))
        else:
            uc = list(c)
            diag = [0] * self.m
        eqs, congs = [], []
        for i in range(self.m):
            coeffs = self.UA[i] if self.t else []
            d = diag[i]
            if d == 0:
                eqs.append((coeffs, uc[i]))
            elif d != 1:
                congs.append((coeffs, uc[i] % d, d))
        return eqs, congs

    def solve(self, c):
        """A witness n >= 0, or None; None certifies infeasibility."""
        eqs, congs = self._rows(c)
        t = self.t
        if t == 0:
            for coeffs, rhs in eqs:
                if rhs != 0:
                    return None
            for coeffs, r, d in congs:
                if r % d != 0:
                    return None
            return []
        # no integer solution at all (nonnegativity ignored) kills the
        # search immediately; this catches parity-style obstructions that
        # the per-row gcd tests miss
        joint = [list(self.A[i]) + (list(self.B[i]) if self.u else [])
                 for i in range(self.m)]
        if solve(joint, list(c)) is None:
            return None
        bound = _feasibility_bound(self.A, self.B, c)
        ub = [bound] * t
        # cheap bound tightening from sign-definite equality rows
        for _ in range(2):
            for coeffs, rhs in eqs:
                if all(a >= 0 for a in coeffs):
                    if rhs < 0:
                        return None
                    for j, a in enumerate(coeffs):
                        if a > 0:
                            ub[j] = min(ub[j], rhs // a)
                elif all(a <= 0 for a in coeffs):
                    if rhs > 0:
                        return None
                    for j, a in enumerate(coeffs):
                        if a < 0:
                            ub[j] = min(ub[j], rhs // a)
        if any(b < 0 for b in ub):
            return None
        # a variable touching no equality row only matters modulo the
        # congruence moduli it appears in, so its search window is periodic
        period_cap = [None] * t
        for j in range(t):
            if any(coeffs[j] for coeffs, _ in eqs):
                continue
            cap = 1
            for coeffs, _, d in congs:
                if coeffs[j]:
                    cap = cap * d // gcd(cap, d)
            period_cap[j] = cap - 1
        n = [0] * t
        assigned = [False] * t

        def residual_range(coeffs, skip=None):
            lo = hi = 0
            for j in range(t):
                if assigned[j] or j == skip:
                    continue
                a = coeffs[j]
                if a > 0:
                    hi += a * ub[j]
                elif a < 0:
                    lo += a * ub[j]
            return lo, hi

        def acc_of(coeffs):
            return sum(coeffs[j] * n[j] for j in range(t) if assigned[j])

        def prune():
            for coeffs, rhs in eqs:
                need = rhs - acc_of(coeffs)
                lo, hi = residual_range(coeffs)
                if not (lo <= need <= hi):
                    return True
                g = 0
                for j in range(t):
                    if not assigned[j]:
                        g = gcd(g, coeffs[j])
                if g == 0:
                    if need != 0:
                        return True
                elif need % g != 0:
                    return True
            for coeffs, r, d in congs:
                acc = acc_of(coeffs)
                lo, hi = residual_range(coeffs)
                # smallest value >= lo congruent to (r - acc) mod d
                first = lo + ((r - acc - lo) % d)
                if first > hi:
                    return True
            return False

        def window_for(j):
            vlo, vhi = 0, ub[j]
            if period_cap[j] is not None:
                vhi = min(vhi, period_cap[j])
            for coeffs, rhs in eqs:
                a = coeffs[j]
                if a == 0:
                    continue
                lo_r, hi_r = residual_range(coeffs, skip=j)
                need = rhs - acc_of(coeffs)
                lo_av, hi_av = need - hi_r, need - lo_r
                if a > 0:
                    vlo = max(vlo, _ceil_div(lo_av, a))
                    vhi = min(vhi, _floor_div(hi_av, a))
                else:
                    vlo = max(vlo, _ceil_div(hi_av, a))
                    vhi = min(vhi, _floor_div(lo_av, a))
            return vlo, vhi

        def z_prune():
            """No integer solution of the remaining subsystem at all.

            Row combinations can be obstructed even when every row passes
            its own interval and gcd tests (an equality can force a fixed
            residue into a congruence), and only a joint integer solve
            sees that; without it a forced-variable loop may crawl over an
            astronomic window.
            """
            cols = [[self.A[i][j] for i in range(self.m)]
                    for j in range(t) if not assigned[j]]
            if self.u:
                cols += [[self.B[i][j] for i in range(self.m)]
                         for j in range(self.u)]
            rhs = [c[i] - sum(self.A[i][j] * n[j]
                              for j in range(t) if assigned[j])
                   for i in range(self.m)]
            if not cols:
                return any(rhs)
            return solve(from_columns(cols, nrows=self.m), rhs) is None

        def dfs(remaining):
            if prune():
                return False
            if 0 < remaining < t and z_prune():
                return False
            if remaining == 0:
                return True
            best = None
            for j in range(t):
                if assigned[j]:
                    continue
                vlo, vhi = window_for(j)
                if vhi < vlo:
                    return False
                width = vhi - vlo
                if best is None or width < best[0]:
                    best = (width, j, vlo, vhi)
                    if width == 0:
                        break
            _, j, vlo, vhi = best
            assigned[j] = True
            for val in range(vlo, vhi + 1):
                n[j] = val
                if dfs(remaining - 1):
                    return True
            n[j] = 0
            assigned[j] = False
            return False

        if dfs(t):
            return list(n)
        return None

    def bound_for(self, c):
        return _feasibility_bound(self.A, self.B, c)


def solve_nonneg(A, B, c):
    """One-shot wrapper around :class:`NonnegSolver`."""
    return NonnegSolver(A, B).solve(c)
