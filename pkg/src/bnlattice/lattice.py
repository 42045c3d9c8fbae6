"""Integer lattice helpers: Smith normal form, coset invariants, box enumeration."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Sequence

import numpy as np


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Return ``(diag, U, V)`` with ``U @ A @ V`` diagonal.

    ``U`` and ``V`` are unimodular integer matrices (lists of lists) and
    ``diag`` holds the invariant factors, each dividing the next, followed by
    zeros for the rank deficiency.
    """
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    diag = [A[i][i] if i < n else 0 for i in range(m)]
    return diag, U, V


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    M = [list(map(int, row)) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


class CosetIndex:
    """Coset labels of ``Z^n / L`` for a full-rank sublattice ``L`` of ``A_{n-1}``.

    Two integer vectors of equal degree lie in the same coset iff their
    codes agree.  Codes are integers in ``range(self.order)``.
    """

    def __init__(self, generators: Sequence[Sequence[int]]):
        gens = [list(map(int, g)) for g in generators]
        self.n = len(gens[0])
        # columns of A generate L
        A = [[gens[j][i] for j in range(len(gens))] for i in range(self.n)]
        diag, U, _ = smith_normal_form(A)
        rank = sum(1 for d in diag if d)
        if rank != self.n - 1:
            raise ValueError("generators do not span a full-rank sublattice of A_{n-1}")
        free = U[rank]
        if abs(sum(free)) != self.n or any(abs(c) != 1 for c in free) or len(set(free)) != 1:
            raise ValueError("lattice is not contained in the degree-zero hyperplane")
        rows, moduli = [], []
        for i, d in enumerate(diag[:rank]):
            if d > 1:
                rows.append([c % d for c in U[i]])
                moduli.append(d)
        self.invariant_factors = tuple(diag[:rank])
        self.order = int(np.prod(moduli, dtype=object)) if moduli else 1
        self._rows = np.array(rows, dtype=np.int64).reshape(len(rows), self.n)
        self._moduli = np.array(moduli, dtype=np.int64)
        radix = [1]
        for d in moduli[:-1]:
            radix.append(radix[-1] * d)
        self._radix = np.array(radix[: len(moduli)], dtype=np.int64)

    def codes(self, points) -> np.ndarray:
        X = np.asarray(points, dtype=np.int64)
        if X.ndim == 1:
            X = X[None, :]
        if not len(self._moduli):
            return np.zeros(len(X), dtype=np.int64)
        res = np.mod(X @ self._rows.T, self._moduli)
        return res @ self._radix

    def code(self, point) -> int:
        return int(self.codes(point)[0])


def box_points(lo: Sequence[int], hi: Sequence[int], total: int) -> np.ndarray:
    """All integer vectors ``z`` with ``lo <= z <= hi`` and ``sum(z) == total``."""
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    n = len(lo)
    empty = np.zeros((0, n), dtype=np.int64)
    if np.any(lo > hi) or not lo.sum() <= total <= hi.sum():
        return empty
    suf_lo = np.concatenate([np.cumsum(lo[::-1])[::-1][1:], [0]])
    suf_hi = np.concatenate([np.cumsum(hi[::-1])[::-1][1:], [0]])
    pts = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for i in range(n - 1):
        blocks, block_sums = [], []
        for v in range(int(lo[i]), int(hi[i]) + 1):
            s = sums + v
            rest = total - s
            ok = (rest >= suf_lo[i]) & (rest <= suf_hi[i])
            if ok.any():
                sel = pts[ok]
                blocks.append(np.column_stack([sel, np.full(len(sel), v, dtype=np.int64)]))
                block_sums.append(s[ok])
        if not blocks:
            return empty
        pts = np.concatenate(blocks)
        sums = np.concatenate(block_sums)
    last = total - sums
    ok = (last >= lo[-1]) & (last <= hi[-1])
    return np.column_stack([pts[ok], last[ok]])


def common_denominator(values) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den


def scaled_integers(values, den: int) -> np.ndarray:
    """``den * values`` as an int64 array; ``den`` must clear every denominator."""
    out = []
    for v in values:
        f = Fraction(v) * den
        if f.denominator != 1:
            raise ValueError("denominator does not clear value")
        out.append(f.numerator)
    return np.array(out, dtype=np.int64)


@lru_cache(maxsize=64)
def _compositions(total: int, n: int) -> np.ndarray:
    pts = box_points([0] * n, [total] * n, total)
    pts.setflags(write=False)
    return pts


def compositions(total: int, n: int) -> np.ndarray:
    """All non-negative integer vectors of length ``n`` summing to ``total`` (cached, read-only)."""
    if total < 0:
        return np.zeros((0, n), dtype=np.int64)
    if comb(total + n - 1, n - 1) > 20_000_000:
        raise MemoryError(f"{comb(total + n - 1, n - 1)} compositions of {total} into {n} parts")
    return _compositions(int(total), int(n))
