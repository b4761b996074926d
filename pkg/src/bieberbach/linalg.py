"""Exact integer and rational matrix algebra.

Everything here works over arbitrary-precision integers and
``fractions.Fraction``; no floating point is used anywhere in the package.
Matrices are immutable tuples of row tuples, vectors are plain tuples.

The integer-lattice routines (Hermite/Smith normal form, Diophantine
solving, saturation, basis completion) all return the unimodular transforms
that witness their results, so callers can verify every factorization
independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]
IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]


def freeze(rows: Sequence[Sequence]) -> tuple:
    return tuple(tuple(row) for row in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def nrows(M) -> int:
    return len(M)


def ncols(M) -> int:
    return len(M[0]) if M else 0


def mat_mul(A, B):
    """Matrix product; entries may be int or Fraction."""
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in mat_mul")
    k = len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(ncols(B)))
        for i in range(len(A))
    )


def mat_vec(A, v):
    if A and len(A[0]) != len(v):
        raise ValueError("dimension mismatch in mat_vec")
    return tuple(sum(A[i][t] * v[t] for t in range(len(v))) for i in range(len(A)))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A):
    return tuple(tuple(-a for a in row) for row in A)


def transpose(M):
    return tuple(zip(*M)) if M else ()


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(u):
    return tuple(-a for a in u)


def is_integral_matrix(M) -> bool:
    return all(Fraction(e).denominator == 1 for row in M for e in row)


def is_integral_vector(v) -> bool:
    return all(Fraction(e).denominator == 1 for e in v)


def to_int_matrix(M) -> IntMatrix:
    return tuple(tuple(int(e) for e in row) for row in M)


def to_frac_matrix(M) -> RatMatrix:
    return tuple(tuple(Fraction(e) for e in row) for row in M)


def det(M) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in M):
        raise ValueError("det requires a square matrix")
    a = [[Fraction(e) for e in row] for row in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return d


def inverse(M) -> RatMatrix:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    n = len(M)
    a = [[Fraction(e) for e in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c]
        a[c] = [e / inv for e in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * p for e, p in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def inverse_unimodular(U: IntMatrix) -> IntMatrix:
    """Inverse of an integer matrix with determinant +-1, returned integral."""
    inv = inverse(U)
    if not is_integral_matrix(inv):
        raise ValueError("matrix is not unimodular")
    return to_int_matrix(inv)


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U*M = H, H in row-echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    m = len(M)
    if m == 0:
        raise ValueError("hnf requires a nonempty matrix")
    n = ncols(M)
    H = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if H[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            g, s, t = _exgcd(H[r][c], H[i][c])
            u_, v_ = H[r][c] // g, H[i][c] // g
            H[r], H[i] = (
                [s * a + t * b for a, b in zip(H[r], H[i])],
                [-v_ * a + u_ * b for a, b in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [s * a + t * b for a, b in zip(U[r], U[i])],
                [-v_ * a + u_ * b for a, b in zip(U[r], U[i])],
            )
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q != 0:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
        if r == m:
            break
    return freeze(H), freeze(U)


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns (D, U, V) with U, V unimodular and U*M*V = D diagonal with
    nonnegative entries d1 | d2 | ... .
    """
    m = len(M)
    if m == 0:
        raise ValueError("snf requires a nonempty matrix")
    n = ncols(M)
    D = [list(row) for row in M]
    U = [list(row) for row in identity(m)]
    V = [list(row) for row in identity(n)]

    def row_op(i, j, g, s, t, u_, v_):
        D[i], D[j] = (
            [s * a + t * b for a, b in zip(D[i], D[j])],
            [-v_ * a + u_ * b for a, b in zip(D[i], D[j])],
        )
        U[i], U[j] = (
            [s * a + t * b for a, b in zip(U[i], U[j])],
            [-v_ * a + u_ * b for a, b in zip(U[i], U[j])],
        )

    def col_op(i, j, g, s, t, u_, v_):
        for row in D:
            row[i], row[j] = s * row[i] + t * row[j], -v_ * row[i] + u_ * row[j]
        for row in V:
            row[i], row[j] = s * row[i] + t * row[j], -v_ * row[i] + u_ * row[j]

    t_idx = 0
    while t_idx < min(m, n):
        # find a nonzero pivot in the remaining block
        piv = next(
            ((i, j) for i in range(t_idx, m) for j in range(t_idx, n) if D[i][j] != 0),
            None,
        )
        if piv is None:
            break
        pi, pj = piv
        if pi != t_idx:
            D[t_idx], D[pi] = D[pi], D[t_idx]
            U[t_idx], U[pi] = U[pi], U[t_idx]
        if pj != t_idx:
            for row in D:
                row[t_idx], row[pj] = row[pj], row[t_idx]
            for row in V:
                row[t_idx], row[pj] = row[pj], row[t_idx]
        while True:
            # clear column t_idx; plain quotient elimination when the pivot
            # already divides (an exgcd transform would re-dirty the row)
            for i in range(t_idx + 1, m):
                if D[i][t_idx] != 0:
                    if D[i][t_idx] % D[t_idx][t_idx] == 0:
                        q = D[i][t_idx] // D[t_idx][t_idx]
                        D[i] = [a - q * b for a, b in zip(D[i], D[t_idx])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[t_idx])]
                    else:
                        g, s, t = _exgcd(D[t_idx][t_idx], D[i][t_idx])
                        row_op(t_idx, i, g, s, t,
                               D[t_idx][t_idx] // g, D[i][t_idx] // g)
            # clear row t_idx
            for j in range(t_idx + 1, n):
                if D[t_idx][j] != 0:
                    if D[t_idx][j] % D[t_idx][t_idx] == 0:
                        q = D[t_idx][j] // D[t_idx][t_idx]
                        for row in D:
                            row[j] -= q * row[t_idx]
                        for row in V:
                            row[j] -= q * row[t_idx]
                    else:
                        g, s, t = _exgcd(D[t_idx][t_idx], D[t_idx][j])
                        col_op(t_idx, j, g, s, t,
                               D[t_idx][t_idx] // g, D[t_idx][j] // g)
            if all(D[i][t_idx] == 0 for i in range(t_idx + 1, m)) and all(
                    D[t_idx][j] == 0 for j in range(t_idx + 1, n)):
                break
        # enforce divisibility d_t | D[i][j] for the rest of the block
        offender = next(
            ((i, j) for i in range(t_idx + 1, m) for j in range(t_idx + 1, n)
             if D[i][j] % D[t_idx][t_idx] != 0),
            None,
        )
        if offender is not None:
            i, j = offender
            # add column j to column t_idx and restart the pivot step
            for row in D:
                row[t_idx] += row[j]
            for row in V:
                row[t_idx] += row[j]
            continue
        if D[t_idx][t_idx] < 0:
            D[t_idx] = [-a for a in D[t_idx]]
            U[t_idx] = [-a for a in U[t_idx]]
        t_idx += 1
    return freeze(D), freeze(U), freeze(V)


@dataclass(frozen=True)
class DioSolution:
    """All integer solutions of M*x = c: particular + integer span of basis."""

    particular: IntVector
    homogeneous_basis: tuple[IntVector, ...]


@dataclass(frozen=True)
class Infeasible:
    """Certificate that M*x = c has no integer solution.

    ``coefficients`` is an integer row-operation combination of the original
    equations (a row of U*M), ``constant`` the matching combination of the
    right-hand side, and ``divisor`` the invariant factor that fails to divide
    it (0 for a rank obstruction x* 0 = nonzero).
    """

    coefficients: IntVector
    constant: Fraction
    divisor: int
    message: str = field(compare=False, default="")

    def __str__(self) -> str:
        return self.message or "infeasible integer system"


def _witness_message(coeffs: IntVector, constant: Fraction, divisor: int) -> str:
    terms = [f"{c}*x{j}" for j, c in enumerate(coeffs) if c != 0]
    lhs = " + ".join(terms) if terms else "0"
    if divisor == 0:
        return f"equation {lhs} = {constant} is a rank obstruction (0 = {constant})"
    if constant.denominator != 1:
        return f"equation {lhs} = {constant} has non-integral right-hand side"
    return (
        f"equation {lhs} = {constant} has no integer solution "
        f"({constant} is not divisible by {divisor})"
    )


def solve_diophantine(
    M: IntMatrix, c: Sequence[Union[int, Fraction]]
) -> Union[DioSolution, Infeasible]:
    """Integer solutions of M*x = c, or an infeasibility certificate.

    The right-hand side may be rational; a non-clearable non-integral entry
    yields Infeasible. Goes through the Smith normal form of M so the
    certificate names the failing invariant factor.
    """
    m, n = len(M), ncols(M)
    if len(c) != m:
        raise ValueError("right-hand side length does not match row count")
    cf = tuple(Fraction(e) for e in c)
    if m == 0 or n == 0:
        # no unknowns and/or no equations
        if any(e != 0 for e in cf):
            i = next(i for i, e in enumerate(cf) if e != 0)
            return Infeasible((0,) * n, cf[i], 0,
                              _witness_message((0,) * n, cf[i], 0))
        return DioSolution((0,) * n, ())
    D, U, V = snf(M)
    rhs = mat_vec(U, cf)
    r = sum(1 for i in range(min(m, n)) if D[i][i] != 0)
    y = [0] * n
    UM = mat_mul(U, M)
    for i in range(m):
        d = D[i][i] if i < min(m, n) else 0
        if d == 0:
            if rhs[i] != 0:
                return Infeasible(UM[i], rhs[i], 0,
                                  _witness_message(UM[i], rhs[i], 0))
            continue
        q = rhs[i] / d
        if q.denominator != 1:
            return Infeasible(UM[i], rhs[i], d,
                              _witness_message(UM[i], rhs[i], d))
        y[i] = int(q)
    particular = mat_vec(V, tuple(y))
    basis = tuple(tuple(V[i][j] for i in range(n)) for j in range(r, n))
    return DioSolution(particular, basis)


def rational_kernel(M) -> tuple[RatVector, ...]:
    """Basis of the right kernel {v : M*v = 0} over the rationals."""
    m, n = len(M), ncols(M)
    if m == 0 or n == 0:
        return tuple(tuple(Fraction(1 if i == j else 0) for i in range(n))
                     for j in range(n))
    a = [[Fraction(e) for e in row] for row in M]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [e / inv for e in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * p for e, p in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(tuple(v))
    return tuple(basis)


def rational_rank(M) -> int:
    m, n = len(M), ncols(M)
    if m == 0 or n == 0:
        return 0
    return n - len(rational_kernel(M))


def saturate(vectors: Sequence[Sequence[int]], ambient_dim: int) -> IntMatrix:
    """Basis of the smallest pure sublattice of Z^n containing the span.

    Returns an ambient_dim x r matrix whose columns form the basis; r is the
    rational rank of the input. Dividing out the Smith invariant factors is
    exactly what makes the result pure.
    """
    vecs = [tuple(v) for v in vectors if any(e != 0 for e in v)]
    if not vecs:
        return tuple(() for _ in range(ambient_dim))
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError("vector does not lie in the ambient lattice")
    M = tuple(tuple(v[i] for v in vecs) for i in range(ambient_dim))
    D, U, V = snf(M)
    r = sum(1 for i in range(min(len(vecs), ambient_dim)) if D[i][i] != 0)
    Uinv = inverse_unimodular(U)
    return tuple(tuple(Uinv[i][j] for j in range(r)) for i in range(ambient_dim))


def complete_basis(pure_basis: IntMatrix) -> IntMatrix:
    """Extend a basis of a pure sublattice to a unimodular matrix.

    Input: n x r matrix whose columns are a basis of a pure rank-r sublattice
    of Z^n. Output: n x n unimodular Q whose first r columns span exactly that
    sublattice.
    """
    n = len(pure_basis)
    r = ncols(pure_basis)
    if r == 0:
        return identity(n)
    D, U, V = snf(pure_basis)
    rank = sum(1 for i in range(min(n, r)) if D[i][i] != 0)
    if rank != r:
        raise ValueError("columns are not linearly independent")
    if any(D[i][i] != 1 for i in range(r)):
        raise ValueError("sublattice is not pure (nontrivial invariant factor)")
    return inverse_unimodular(U)
