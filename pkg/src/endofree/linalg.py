"""Exact square-matrix arithmetic over a ``Ring`` (rows as tuples)."""
from __future__ import annotations

from fractions import Fraction

from .rings import Ring, RingError


def identity_matrix(R: Ring, n: int):
    return tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n))


def mat_mul(R: Ring, A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = R.zero
            for k in range(m):
                acc = R.add(acc, R.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def determinant(R: Ring, A):
    n = len(A)
    if R.kind in ("Z", "Q"):
        # Bareiss fraction-free elimination; exact divisions
        M = [list(map(Fraction, row)) for row in A]
        sign, prev = 1, Fraction(1)
        for k in range(n - 1):
            if M[k][k] == 0:
                for r in range(k + 1, n):
                    if M[r][k] != 0:
                        M[k], M[r] = M[r], M[k]
                        sign = -sign
                        break
                else:
                    return R.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
            prev = M[k][k]
        return R.coerce(sign * M[n - 1][n - 1])
    M = [list(row) for row in A]
    det = R.one
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k] != R.zero), None)
        if piv is None:
            return R.zero
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = R.neg(det)
        det = R.mul(det, M[k][k])
        inv = R.inv(M[k][k])
        for r in range(k + 1, n):
            f = R.mul(M[r][k], inv)
            if f != R.zero:
                M[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[r], M[k])]
    return det


def inverse_matrix(R: Ring, A):
    """Exact inverse; raises RingError when A is not invertible over R."""
    n = len(A)
    if not R.is_unit(determinant(R, A)):
        raise RingError("matrix is not invertible over " + R.name)
    work = Ring.rationals() if R.kind == "Z" else R
    M = [[work.coerce(x) for x in row] + [work.one if i == j else work.zero for j in range(n)]
         for i, row in enumerate(A)]
    for k in range(n):
        piv = next(r for r in range(k, n) if M[r][k] != work.zero)
        M[k], M[piv] = M[piv], M[k]
        inv = work.inv(M[k][k])
        M[k] = [work.mul(inv, x) for x in M[k]]
        for r in range(n):
            if r != k and M[r][k] != work.zero:
                f = M[r][k]
                M[r] = [work.sub(x, work.mul(f, y)) for x, y in zip(M[r], M[k])]
    return tuple(tuple(R.coerce(x) for x in row[n:]) for row in M)
