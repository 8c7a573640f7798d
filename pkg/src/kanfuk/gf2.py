"""Exact linear algebra over F2 with vectors stored as Python int bitmasks.

Bit ``i`` of a vector is its coefficient on basis element ``i``.  A linear map
is given by the list of images of the domain basis vectors ("columns").
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bit_indices(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(x: int, y: int) -> int:
    return parity(x & y)


def apply(columns: Sequence[int], x: int) -> int:
    out = 0
    for i in bit_indices(x):
        out ^= columns[i]
    return out


class Echelon:
    """Incrementally built echelon basis; every stored row remembers which
    input combination produced it."""

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (vector, combo)

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residual, combo)`` with ``v = residual + span-element(combo)``.

        The residual has no pivot bits set, so it is canonical mod the span.
        """
        combo = 0
        for pivot in sorted(self._rows, reverse=True):
            if (v >> pivot) & 1:
                vec, c = self._rows[pivot]
                v ^= vec
                combo ^= c
        return v, combo

    def add(self, v: int, combo: int) -> bool:
        """Insert ``v`` (tagged with ``combo``); returns False if dependent."""
        while v:
            top = v.bit_length() - 1
            row = self._rows.get(top)
            if row is None:
                self._rows[top] = (v, combo)
                return True
            v ^= row[0]
            combo ^= row[1]
        return False

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(vectors: Iterable[int]) -> int:
    e = Echelon()
    return sum(1 for v in vectors if e.add(v, 0))


def span_basis(vectors: Iterable[int]) -> list[int]:
    """A basis of the span, taken from the input vectors themselves."""
    e = Echelon()
    return [v for v in vectors if e.add(v, 0)]


def in_span(vectors: Iterable[int], v: int) -> bool:
    e = Echelon()
    for w in vectors:
        e.add(w, 0)
    return e.contains(v)


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of the kernel of the map with the given column images."""
    e = Echelon()
    basis = []
    for j, col in enumerate(columns):
        if not e.add(col, 1 << j):
            residual, combo = e.reduce(col)
            basis.append(combo ^ (1 << j))
    return basis


def solve(columns: Sequence[int], target: int) -> int | None:
    """Some ``x`` with ``apply(columns, x) == target``, or None."""
    e = Echelon()
    for j, col in enumerate(columns):
        e.add(col, 1 << j)
    residual, combo = e.reduce(target)
    if residual:
        return None
    return combo


@dataclass(frozen=True)
class Coset:
    """The affine subspace ``particular + span(basis)``."""

    particular: int
    basis: tuple[int, ...]

    def __len__(self) -> int:
        return 1 << len(self.basis)

    def __iter__(self) -> Iterator[int]:
        for mask in range(1 << len(self.basis)):
            v = self.particular
            for i in bit_indices(mask):
                v ^= self.basis[i]
            yield v

    def __contains__(self, v: int) -> bool:
        return in_span(self.basis, v ^ self.particular)


def solve_affine(columns: Sequence[int], target: int) -> Coset | None:
    """Full solution set of ``apply(columns, x) == target``."""
    x = solve(columns, target)
    if x is None:
        return None
    return Coset(x, tuple(kernel(columns)))


def random_invertible(n: int, rng) -> list[int]:
    """Columns of a uniformly random invertible n x n matrix."""
    while True:
        cols = [int(rng.integers(0, 1 << n)) if n else 0 for _ in range(n)]
        if rank(cols) == n:
            return cols


def inverse(columns: Sequence[int]) -> list[int]:
    n = len(columns)
    out = []
    for i in range(n):
        x = solve(columns, 1 << i)
        if x is None:
            raise ValueError("matrix is singular over F2")
        out.append(x)
    return out
