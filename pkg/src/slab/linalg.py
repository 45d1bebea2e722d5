"""Exact rational matrices with fraction-free elimination."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .words import FiniteWord

__all__ = ["RationalMatrix", "KernelBasis", "echelon", "rank", "kernel_basis", "solve"]


def _label(x) -> str:
    # rows and columns are usually words (or split vertices); anything else prints as itself
    return x.label() if hasattr(x, "label") else str(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of Fractions with word labels on rows and columns."""

    entries: tuple[tuple[Fraction, ...], ...]
    row_index: tuple[FiniteWord, ...] = ()
    col_index: tuple[FiniteWord, ...] = ()
    caveat: str | None = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if self.row_index and len(self.row_index) != len(rows):
            raise ValueError("row index does not match the number of rows")
        if self.col_index and rows and len(self.col_index) != len(rows[0]):
            raise ValueError("column index does not match the number of columns")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        if self.entries:
            return len(self.entries[0])
        return len(self.col_index)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RationalMatrix(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.row_index, self.col_index, self.caveat or other.caveat)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)) if self.entries else (),
                              self.col_index, self.row_index, self.caveat)

    def matvec(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("invalid arguments: vector length does not match the columns")
        return [sum((a * x for a, x in zip(r, v) if a), 0) for r in self.entries]

    def column_sums(self) -> list[Fraction]:
        return [sum(col, Fraction(0)) for col in zip(*self.entries)]

    def to_int_rows(self) -> list[list[int]]:
        out = []
        for r in self.entries:
            if any(x.denominator != 1 for x in r):
                raise ValueError("matrix has non-integer entries")
            out.append([int(x) for x in r])
        return out

    def to_csv(self) -> str:
        """Integer CSV with the column words as header and the row word leading each line."""
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow([""] + [_label(c) for c in self.col_index])
        for word, row in zip(self.row_index, self.to_int_rows()):
            wr.writerow([_label(word)] + row)
        return buf.getvalue()

    def __str__(self):
        return "\n".join(" ".join(f"{str(x):>3}" for x in r) for r in self.entries)


def _integer_rows(entries) -> list[list[int]]:
    # clear denominators row by row; scaling a row does not change kernel or rank
    out = []
    for r in entries:
        den = math.lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * den) for x in r])
    return out


def echelon(entries) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form; returns rows and pivot columns."""
    a = _integer_rows(entries)
    m = len(a)
    n = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: RationalMatrix | Sequence[Sequence]) -> int:
    entries = m.entries if isinstance(m, RationalMatrix) else m
    return len(echelon(entries)[1])


@dataclass(frozen=True)
class KernelBasis:
    dimension: int
    basis: tuple[tuple[Fraction, ...], ...]
    index: tuple[FiniteWord, ...]
    rank: int

    def to_json(self) -> dict:
        def s(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "dimension": self.dimension,
            "rank": self.rank,
            "index": [_label(u) for u in self.index],
            "basis": [[s(x) for x in v] for v in self.basis],
        }


def _back_substitute(rows: list[list[int]], pivots: list[int], n: int) -> list[tuple[Fraction, ...]]:
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i in reversed(range(len(pivots))):
            c = pivots[i]
            s = sum((rows[i][j] * v[j] for j in range(c + 1, n) if rows[i][j]), Fraction(0))
            v[c] = -s / rows[i][c]
        basis.append(tuple(v))
    return basis


def kernel_basis(m: RationalMatrix, side: str = "right") -> KernelBasis:
    """Exact basis of ``{v : M v = 0}`` (right) or ``{x : M^T x = 0}`` (left)."""
    if side not in ("right", "left"):
        raise ValueError("invalid arguments: side must be 'right' or 'left'")
    mat = m if side == "right" else m.transpose()
    rows, pivots = echelon(mat.entries)
    basis = _back_substitute(rows, pivots, mat.cols)
    return KernelBasis(len(basis), tuple(basis), mat.col_index, len(pivots))


def solve(a: Sequence[Sequence], b: Sequence):
    """Unique solution of ``a x = b`` over any exact field (Fractions or quadratic numbers).

    Raises ``ValueError`` if the system is inconsistent or underdetermined.
    """
    m = [list(r) + [rhs] for r, rhs in zip(a, b)]
    n = len(a[0])
    row = 0
    piv = []
    for c in range(n):
        p = next((i for i in range(row, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        inv = Fraction(1) / m[row][c]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        piv.append(c)
        row += 1
    if len(piv) < n:
        raise ValueError("system is underdetermined")
    if any(r[-1] != 0 for r in m[row:]):
        raise ValueError("system is inconsistent")
    x = [None] * n
    for i, c in enumerate(piv):
        x[c] = m[i][-1]
    return x
