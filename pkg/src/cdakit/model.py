"""Arrays, consecutive interactions and row sets.

Everything user-facing is 1-based (rows, columns, interaction start
columns); the underlying numpy cells are indexed 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from .errors import InvalidArray, InvalidInteraction, InvalidStrength, InvalidWindow

RowSet = frozenset  # frozenset[int] of 1-based row indices


@dataclass(frozen=True, eq=False)
class Array:
    """An N x k array over the symbols 0..v-1.

    ``t``, ``lam`` and ``family`` are declared metadata; they are carried
    along for reporting and serialization and are never trusted by the
    verifiers.
    """

    cells: np.ndarray
    v: int
    t: int | None = None
    lam: int | None = None
    family: str | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int64, copy=True)
        if cells.ndim != 2:
            raise InvalidArray(f"cells must be two-dimensional, got shape {cells.shape}")
        n, k = cells.shape
        if n < 1 or k < 1:
            raise InvalidArray(f"array must have N >= 1 and k >= 1, got {n}x{k}")
        if self.v < 2:
            raise InvalidArray(f"alphabet size must be at least 2, got v={self.v}")
        if cells.min() < 0 or cells.max() >= self.v:
            bad = np.argwhere((cells < 0) | (cells >= self.v))[0]
            raise InvalidArray(
                f"cell ({bad[0] + 1},{bad[1] + 1}) = {cells[tuple(bad)]} outside 0..{self.v - 1}"
            )
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], v: int | None = None, **meta) -> "Array":
        cells = np.array([list(r) for r in rows], dtype=np.int64)
        if v is None:
            v = max(int(cells.max()) + 1, 2)
        return cls(cells, v, **meta)

    @classmethod
    def from_symbols(cls, rows: Iterable[Sequence[Hashable]], alphabet: Sequence[Hashable] | None = None, **meta):
        """Canonicalize an array over an arbitrary alphabet to 0..v-1.

        Without an explicit ``alphabet`` the symbols are ordered by
        ``sorted``; the mapping is stored in ``provenance['alphabet']``.
        """
        rows = [list(r) for r in rows]
        if alphabet is None:
            alphabet = sorted({s for r in rows for s in r})
        index = {s: i for i, s in enumerate(alphabet)}
        try:
            cells = [[index[s] for s in r] for r in rows]
        except KeyError as exc:
            raise InvalidArray(f"symbol {exc.args[0]!r} not in alphabet") from None
        provenance = dict(meta.pop("provenance", {}))
        provenance["alphabet"] = [repr(s) for s in alphabet]
        return cls(np.array(cells), max(len(alphabet), 2), provenance=provenance, **meta)

    @property
    def N(self) -> int:
        return self.cells.shape[0]

    @property
    def k(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self.cells]

    def column(self, j: int) -> np.ndarray:
        """1-based column access."""
        if not 1 <= j <= self.k:
            raise InvalidWindow(f"column {j} outside 1..{self.k}")
        return self.cells[:, j - 1]

    def with_meta(self, **meta) -> "Array":
        current = dict(t=self.t, lam=self.lam, family=self.family, provenance=self.provenance)
        current.update(meta)
        return Array(self.cells, self.v, **current)

    def same_rows(self, other: "Array") -> bool:
        """Content equality up to row order."""
        return (
            self.shape == other.shape
            and self.v == other.v
            and sorted(self.rows()) == sorted(other.rows())
        )

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Array):
            return NotImplemented
        return self.v == other.v and self.shape == other.shape and bool(np.array_equal(self.cells, other.cells))

    def __repr__(self) -> str:
        tag = f", family={self.family!r}" if self.family else ""
        return f"Array(N={self.N}, k={self.k}, v={self.v}{tag})"


@dataclass(frozen=True, order=True)
class ConsecutiveInteraction:
    """Symbol values for columns start_col .. start_col+t-1 (1-based)."""

    start_col: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(x) for x in self.values))
        if not self.values:
            raise InvalidInteraction("an interaction needs at least one value")

    @property
    def t(self) -> int:
        return len(self.values)

    @property
    def columns(self) -> range:
        return range(self.start_col, self.start_col + self.t)

    def check(self, array: Array) -> None:
        if not 1 <= self.start_col <= array.k - self.t + 1:
            raise InvalidInteraction(
                f"start column {self.start_col} invalid for t={self.t}, k={array.k}"
            )
        for x in self.values:
            if not 0 <= x < array.v:
                raise InvalidInteraction(f"symbol {x} outside 0..{array.v - 1}")

    def to_dict(self) -> dict:
        return {"start_col": self.start_col, "values": list(self.values)}

    @classmethod
    def parse(cls, text: str) -> "ConsecutiveInteraction":
        """Parse ``"2:1,1"`` as start column 2 with values (1, 1)."""
        try:
            start, values = text.split(":")
            return cls(int(start), tuple(int(x) for x in values.split(",")))
        except ValueError:
            raise InvalidInteraction(f"cannot parse interaction {text!r}; expected START:V1,V2,...") from None

    def __str__(self) -> str:
        return f"{self.start_col}:{','.join(map(str, self.values))}"


@dataclass(frozen=True, eq=False)
class RowDivisibleArray:
    """An array whose rows are split into contiguous parts.

    ``parts`` holds 1-based inclusive (first, last) row ranges, in order,
    covering every row exactly once.
    """

    array: Array
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        parts = tuple((int(a), int(b)) for a, b in self.parts)
        if not parts:
            raise InvalidArray("a row-divisible array needs at least one part")
        expected = 1
        for a, b in parts:
            if a != expected or b < a:
                raise InvalidArray(f"parts {parts} do not partition rows 1..{self.array.N}")
            expected = b + 1
        if expected != self.array.N + 1:
            raise InvalidArray(f"parts {parts} do not partition rows 1..{self.array.N}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_sizes(cls, array: Array, sizes: Sequence[int]) -> "RowDivisibleArray":
        bounds = list(itertools.accumulate(sizes))
        starts = [1] + [b + 1 for b in bounds[:-1]]
        return cls(array, tuple(zip(starts, bounds)))

    @classmethod
    def single(cls, array: Array) -> "RowDivisibleArray":
        return cls(array, ((1, array.N),))

    @property
    def mu(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> list[int]:
        return [b - a + 1 for a, b in self.parts]

    def part(self, i: int) -> Array:
        """The i-th part (0-based) as a stand-alone array."""
        a, b = self.parts[i]
        return Array(self.array.cells[a - 1 : b], self.array.v, t=self.array.t)

    def part_arrays(self) -> list[Array]:
        return [self.part(i) for i in range(self.mu)]

    @property
    def part_lambdas(self) -> list[int | None]:
        """Index of each part when its size is a multiple of v^t, else None."""
        t = self.array.t
        if t is None:
            return [None] * self.mu
        block = self.array.v**t
        return [n // block if n % block == 0 else None for n in self.sizes]

    def __repr__(self) -> str:
        return f"RowDivisibleArray({self.array!r}, parts={self.parts})"


def _check_strength(array: Array, t: int) -> None:
    if not 1 <= t <= array.k:
        raise InvalidStrength(f"strength t={t} invalid for k={array.k}")


def rho(array: Array, interaction: ConsecutiveInteraction) -> RowSet:
    """1-based indices of the rows covering ``interaction``."""
    interaction.check(array)
    i = interaction.start_col - 1
    block = array.cells[:, i : i + interaction.t]
    hits = np.flatnonzero(np.all(block == np.asarray(interaction.values), axis=1))
    return frozenset(int(r) + 1 for r in hits)


def rho_union(array: Array, interactions: Iterable[ConsecutiveInteraction]) -> RowSet:
    rows: set[int] = set()
    for interaction in interactions:
        rows |= rho(array, interaction)
    return frozenset(rows)


def enumerate_consecutive_interactions(array: Array, t: int) -> list[ConsecutiveInteraction]:
    """All (k-t+1)*v^t consecutive t-way interactions, by start column then values."""
    if t > array.k or t < 1:
        raise InvalidStrength(f"strength t={t} invalid for k={array.k}")
    tuples = list(itertools.product(range(array.v), repeat=t))
    return [
        ConsecutiveInteraction(start, values)
        for start in range(1, array.k - t + 2)
        for values in tuples
    ]


def window(array: Array, start_col: int, width: int) -> Array:
    if start_col < 1 or width < 1 or start_col + width - 1 > array.k:
        raise InvalidWindow(f"window start={start_col} width={width} exceeds k={array.k}")
    return Array(array.cells[:, start_col - 1 : start_col - 1 + width], array.v)


def select_columns(array: Array, columns: Sequence[int]) -> Array:
    """Array whose j-th column is column ``columns[j]`` (1-based) of ``array``."""
    for c in columns:
        if not 1 <= c <= array.k:
            raise InvalidWindow(f"column {c} outside 1..{array.k}")
    if not columns:
        raise InvalidWindow("empty column selection")
    return Array(array.cells[:, [c - 1 for c in columns]], array.v)


def stack(arrays: Sequence[Array]) -> Array:
    """Vertical concatenation; all inputs must share k and v."""
    if not arrays:
        raise InvalidArray("nothing to stack")
    k, v = arrays[0].k, arrays[0].v
    for a in arrays:
        if a.k != k or a.v != v:
            raise InvalidArray(f"cannot stack {a!r} onto arrays with k={k}, v={v}")
    return Array(np.vstack([a.cells for a in arrays]), v)


class InteractionIndex:
    """Bitset view of rho over all consecutive t-way interactions.

    Row r (1-based) is bit r-1 of a Python int.  Used by the detecting
    checks and the fault locator, where subset tests dominate.
    """

    def __init__(self, array: Array, t: int):
        _check_strength(array, t)
        self.array = array
        self.t = t
        masks = [
            [_bits(np.flatnonzero(array.cells[:, j] == s)) for s in range(array.v)]
            for j in range(array.k)
        ]
        self.interactions = enumerate_consecutive_interactions(array, t)
        self.masks: list[int] = []
        for inter in self.interactions:
            m = (1 << array.N) - 1
            for offset, s in enumerate(inter.values):
                m &= masks[inter.start_col - 1 + offset][s]
            self.masks.append(m)
        self._position = {inter: n for n, inter in enumerate(self.interactions)}

    def __len__(self) -> int:
        return len(self.interactions)

    def mask(self, interaction: ConsecutiveInteraction) -> int:
        try:
            return self.masks[self._position[interaction]]
        except KeyError:
            interaction.check(self.array)
            raise InvalidInteraction(f"interaction {interaction} has t != {self.t}") from None

    def rows(self, interaction: ConsecutiveInteraction) -> RowSet:
        return bits_to_rows(self.mask(interaction))


def _bits(indices: Iterable[int]) -> int:
    m = 0
    for r in indices:
        m |= 1 << int(r)
    return m


def rows_to_bits(rows: Iterable[int]) -> int:
    """1-based rows to a bitmask."""
    return _bits(r - 1 for r in rows)


def bits_to_rows(mask: int) -> RowSet:
    out = []
    r = 1
    while mask:
        if mask & 1:
            out.append(r)
        mask >>= 1
        r += 1
    return frozenset(out)
