"""Sparse integer matrices with exact arithmetic."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class IntegerMatrix:
    """A ``rows x cols`` integer matrix stored as a list of sparse row dicts.

    Entries are Python ints, so nothing overflows and nothing is rounded.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Iterable[tuple[int, int, int]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self._data: list[dict[int, int]] = [{} for _ in range(rows)]
        for i, j, v in data:
            self.add(i, j, v)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        m = cls(len(rows), cols)
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
            for j, v in enumerate(row):
                if v:
                    m._data[i][j] = int(v)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        self._check(i, j)
        return self._data[i].get(j, 0)

    def __setitem__(self, ij: tuple[int, int], v: int) -> None:
        i, j = ij
        self._check(i, j)
        if v:
            self._data[i][j] = int(v)
        else:
            self._data[i].pop(j, None)

    def add(self, i: int, j: int, v: int) -> None:
        self._check(i, j)
        row = self._data[i]
        s = row.get(j, 0) + v
        if s:
            row[j] = s
        else:
            row.pop(j, None)

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i}, {j}) out of range for {self.rows}x{self.cols}")

    def row(self, i: int) -> dict[int, int]:
        return self._data[i]

    def items(self) -> Iterator[tuple[int, int, int]]:
        for i, row in enumerate(self._data):
            for j, v in row.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def is_zero(self) -> bool:
        return all(not r for r in self._data)

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.items():
            out[i][j] = v
        return out

    def copy(self) -> IntegerMatrix:
        m = IntegerMatrix(self.rows, self.cols)
        m._data = [dict(r) for r in self._data]
        return m

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(self.cols, self.rows, ((j, i, v) for i, j, v in self.items()))

    def __neg__(self) -> IntegerMatrix:
        return IntegerMatrix(self.rows, self.cols, ((i, j, -v) for i, j, v in self.items()))

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        m = self.copy()
        for i, j, v in other.items():
            m.add(i, j, v)
        return m

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        return self + (-other)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = IntegerMatrix(self.rows, other.cols)
        for i, row in enumerate(self._data):
            acc: dict[int, int] = {}
            for k, a in row.items():
                for j, b in other._data[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out._data[i] = {j: v for j, v in acc.items() if v}
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.items())))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntegerMatrix({self.to_rows()})"
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def block(self, row_offset: int, col_offset: int, sub: IntegerMatrix) -> None:
        """Add ``sub`` into this matrix with its corner at the given offsets."""
        for i, j, v in sub.items():
            self.add(row_offset + i, col_offset + j, v)


def parse_matrix(text: str) -> IntegerMatrix:
    """Read ``rows cols`` followed by row-major entries."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'rows cols'")
    rows, cols = int(tokens[0]), int(tokens[1])
    vals = [int(t) for t in tokens[2:]]
    if len(vals) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(vals)}")
    return IntegerMatrix.from_rows([vals[i * cols:(i + 1) * cols] for i in range(rows)], cols)


def format_matrix(m: IntegerMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines += [" ".join(str(v) for v in row) for row in m.to_rows()]
    return "\n".join(lines) + "\n"


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_rows()
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1
