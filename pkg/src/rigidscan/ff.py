"""Exact linear algebra over the prime field GF(P).

Matrices are dense lists of rows holding integers in ``[0, P)``. Everything
here is pure: inputs are never mutated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

# smallest prime above 2**61; keeps Schwartz-Zippel failure per test < 2**-40
P = 2305843009213693967


def inv(a: int) -> int:
    a %= P
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod P")
    return pow(a, P - 2, P)


def random_scalar(rng: random.Random) -> int:
    """Uniform nonzero field element."""
    return rng.randrange(1, P)


@dataclass
class FFMatrix:
    rows: int
    cols: int
    data: list[list[int]]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("entries do not match declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "FFMatrix":
        data = [[x % P for x in r] for r in rows]
        if cols is None:
            if not data:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "FFMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "FFMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    def transpose(self) -> "FFMatrix":
        return FFMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                        [[] for _ in range(self.cols)])

    def apply(self, v: Sequence[int]) -> list[int]:
        """M @ v."""
        return [sum(a * b for a, b in zip(row, v)) % P for row in self.data]

    def apply_left(self, w: Sequence[int]) -> list[int]:
        """w^T @ M."""
        out = [0] * self.cols
        for coef, row in zip(w, self.data):
            if coef:
                out = [(o + coef * x) % P for o, x in zip(out, row)]
        return out


def _eliminate(data: list[list[int]], ncols: int, reduced: bool) -> list[int]:
    """In-place Gaussian elimination; returns pivot columns.

    Pivot is the first nonzero entry in the column. With ``reduced`` the
    result is in reduced row echelon form, otherwise plain echelon form.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(data)
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if data[i][c]:
                break
        else:
            continue
        if i != r:
            data[r], data[i] = data[i], data[r]
        prow = data[r]
        f = pow(prow[c], P - 2, P)
        if f != 1:
            prow = data[r] = prow[:c] + [x * f % P for x in prow[c:]]
        # entries left of c in the pivot row are zero; only the tail changes
        tail = prow[c:]
        targets = range(nrows) if reduced else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            row = data[i]
            g = row[c]
            if g:
                data[i] = row[:c] + [(x - g * y) % P for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return pivots


def rank(M: FFMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    data = [list(r) for r in M.data]
    return len(_eliminate(data, M.cols, reduced=False))


def rref(M: FFMatrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    data = [list(r) for r in M.data]
    pivots = _eliminate(data, M.cols, reduced=True)
    return data[: len(pivots)], pivots


def kernel_from_rref(rows: list[list[int]], pivots: list[int], ncols: int) -> list[list[int]]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(rows, pivots):
            if row[f]:
                v[pc] = (-row[f]) % P
        basis.append(v)
    return basis


def right_kernel_basis(M: FFMatrix) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per non-pivot column."""
    rows, pivots = rref(M)
    return kernel_from_rref(rows, pivots, M.cols)


def left_kernel_basis(M: FFMatrix) -> list[list[int]]:
    return right_kernel_basis(M.transpose())


def random_combination(basis: Sequence[Sequence[int]], rng: random.Random) -> list[int]:
    out = [0] * len(basis[0])
    for vec in basis:
        c = random_scalar(rng)
        out = [(o + c * x) % P for o, x in zip(out, vec)]
    return out


def random_left_kernel_vector(M: FFMatrix, seed) -> Optional[list[int]]:
    """Random w with w^T M = 0, or None when the left kernel is trivial."""
    basis = left_kernel_basis(M)
    if not basis:
        return None
    return random_combination(basis, random.Random(seed))
