"""
Exact Linear Algebra - integer and rational matrices without floating point

Implements:
- Smith normal form with unimodular transforms (U·M·V = D), via sympy
- Exact determinant and rational linear solve
- Signature of symmetric matrices by congruence diagonalization

Matrices are numpy object arrays of Python ints (arbitrary precision) or
Fractions. Nothing here ever converts to float.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.matrices.normalforms import smith_normal_decomp

from .errors import DimensionMismatch, NotSymmetric

Rational = Fraction

IntRows = Tuple[Tuple[int, ...], ...]


class SNFResult(BaseModel):
    """U·M·V = D with U, V unimodular and D diagonal, d1 | d2 | ..., d_k >= 0."""

    model_config = ConfigDict(frozen=True)

    U: IntRows
    V: IntRows
    D: IntRows

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[k][k] for k in range(min(len(self.D), len(self.V))))


def as_int_array(M: Sequence[Sequence[int]]) -> np.ndarray:
    """Copy a nested sequence into an exact (object dtype) 2-D array."""
    rows = [[int(x) for x in row] for row in M]
    if not rows:
        return np.zeros((0, 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("ragged matrix rows")
    arr = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            arr[i, j] = x
    return arr


def to_rows(arr: np.ndarray) -> IntRows:
    return tuple(tuple(int(x) for x in row) for row in arr)


def _identity(n: int) -> IntRows:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    A = as_int_array(M)
    m, n = A.shape
    if not (m and n):
        return SNFResult(U=_identity(m), V=_identity(n), D=to_rows(A))
    D, U, V = smith_normal_decomp(Matrix(A.tolist()), domain=ZZ)
    D = as_int_array(D.tolist())
    U = as_int_array(U.tolist())
    # sympy leaves unit signs on the diagonal; move them into U
    for k in range(min(m, n)):
        if D[k, k] < 0:
            D[k] = -D[k]
            U[k] = -U[k]
    return SNFResult(U=to_rows(U), V=to_rows(as_int_array(V.tolist())), D=to_rows(D))


def invariant_factors(M: Sequence[Sequence[int]]) -> List[int]:
    """Nontrivial invariant factors of coker(M): drops 1s, a 0 per free summand."""
    A = as_int_array(M)
    m, n = A.shape
    diag = [abs(int(d)) for d in _invariant_factors(Matrix(A.tolist()), domain=ZZ)] if m and n else []
    # rows beyond the rank of a wide/tall block are free generators
    diag += [0] * (m - len(diag))
    return [d for d in diag if d != 1]


def determinant(M: Sequence[Sequence[int]]) -> int:
    A = as_int_array(M)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"determinant of a {A.shape[0]}x{A.shape[1]} matrix")
    if A.shape[0] == 0:
        return 1
    return int(Matrix(A.tolist()).det(method="bareiss"))


def solve_rational(M: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
    """Unique rational solution of M·x = b, or None when M is singular."""
    A = as_int_array(M)
    n = A.shape[0]
    if A.shape[1] != n:
        raise DimensionMismatch(f"solve needs a square matrix, got {A.shape[0]}x{A.shape[1]}")
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {n}")
    if n == 0:
        return ()
    if determinant(A) == 0:
        return None
    x = Matrix(A.tolist()).LUsolve(Matrix([int(v) for v in b]))
    return tuple(Fraction(int(v.p), int(v.q)) for v in x)


def _is_symmetric(A: np.ndarray) -> bool:
    return A.shape[0] == A.shape[1] and (A == A.T).all()


def congruence_diagonal(M: Sequence[Sequence[int]]) -> List[Fraction]:
    """Diagonal of P^T·M·P for a rational P, by symmetric pivoting.

    Pivot: nonzero diagonal entry of minimal absolute value (lowest index on
    ties). With a zero diagonal, row/column i absorbs row/column j for the
    first nonzero off-diagonal entry (i, j), which puts 2·M[i][j] on the
    diagonal. Null directions are reported as trailing zeros.
    """
    A0 = as_int_array(M)
    if not _is_symmetric(A0):
        raise NotSymmetric("congruence diagonalization needs a symmetric matrix")
    n = A0.shape[0]
    A = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            A[i, j] = Fraction(A0[i, j])

    pivots: List[Fraction] = []
    active = list(range(n))
    while active:
        diag = [(abs(A[k, k]), idx, k) for idx, k in enumerate(active) if A[k, k] != 0]
        if not diag:
            off = next(((i, j) for a, i in enumerate(active) for j in active[a + 1:] if A[i, j] != 0), None)
            if off is None:
                break
            i, j = off
            A[i, :] = A[i, :] + A[j, :]
            A[:, i] = A[:, i] + A[:, j]
            continue
        _, _, k = min(diag)
        p = A[k, k]
        for j in active:
            if j == k or A[j, k] == 0:
                continue
            f = A[j, k] / p
            A[j, :] = A[j, :] - f * A[k, :]
            A[:, j] = A[:, j] - f * A[:, k]
        pivots.append(p)
        active.remove(k)
    return pivots + [Fraction(0)] * (n - len(pivots))


def signature_symmetric(M: Sequence[Sequence[int]]) -> int:
    diag = congruence_diagonal(M)
    return sum(1 for d in diag if d > 0) - sum(1 for d in diag if d < 0)


def mat_vec(M: Sequence[Sequence[int]], v: Sequence) -> List:
    return [sum((row[j] * v[j] for j in range(len(v))), 0) for row in M]
