"""Affine geometry over GF(2): points, flats, affine maps, and grid coordinates.

Points of Z_2^n are n-bit vectors stored as machine integers with the first
coordinate in the most significant bit, so the string "110010" reads
left-to-right as the coordinate vector (1,1,0,0,1,0).  Everything here is
immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_DIM = 16


class DimensionMismatchError(ValueError):
    """Two points (or a map and a point) live in different ambient spaces."""


@dataclass(frozen=True, order=True)
class Point:
    """An element of Z_2^n.

    Attributes:
        bits: the n-bit pattern, MSB = first coordinate.
        n: ambient dimension, 1 <= n <= MAX_DIM.
    """

    bits: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DIM:
            raise ValueError(f"ambient dimension must be in 1..{MAX_DIM}, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits} out of range for n={self.n}")

    def __xor__(self, other: "Point") -> "Point":
        if self.n != other.n:
            raise DimensionMismatchError(f"n={self.n} vs n={other.n}")
        return Point(self.bits ^ other.bits, self.n)

    def coords(self) -> tuple[int, ...]:
        """Coordinates as a tuple, first coordinate first."""
        return tuple((self.bits >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def to_binary(self) -> str:
        return format(self.bits, f"0{self.n}b")

    def __str__(self) -> str:
        return self.to_binary()

    @classmethod
    def parse(cls, text: str | int, n: int | None = None) -> "Point":
        """Parse a point from a fixed-width binary string or a decimal integer.

        A string of only 0s and 1s of length >= 2 is treated as binary and
        fixes n to its length (which must match `n` when given).  Anything
        else is read as a decimal integer and requires `n`.
        """
        if isinstance(text, int):
            if n is None:
                raise ValueError("decimal point input requires an ambient dimension")
            return cls(text, n)
        s = text.strip()
        if len(s) >= 2 and set(s) <= {"0", "1"}:
            if n is not None and n != len(s):
                raise DimensionMismatchError(f"binary literal has width {len(s)}, expected {n}")
            return cls(int(s, 2), len(s))
        if n is None:
            raise ValueError("decimal point input requires an ambient dimension")
        return cls(int(s, 10), n)


def zero(n: int) -> Point:
    return Point(0, n)


def add(p: Point, q: Point) -> Point:
    """Sum in Z_2^n (coordinatewise XOR)."""
    return p ^ q


def _require_distinct(points: tuple[Point, ...]) -> None:
    if len({(p.bits, p.n) for p in points}) != len(points):
        raise ValueError("points must be distinct")
    ns = {p.n for p in points}
    if len(ns) > 1:
        raise DimensionMismatchError(f"mixed ambient dimensions {sorted(ns)}")


def is_quad(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Whether four distinct points sum to zero (i.e. form a 2-flat)."""
    _require_distinct((a, b, c, d))
    return a.bits ^ b.bits ^ c.bits ^ d.bits == 0


def exclude_of_triple(a: Point, b: Point, c: Point) -> Point:
    """The unique fourth point completing a quad with three distinct points."""
    _require_distinct((a, b, c))
    return Point(a.bits ^ b.bits ^ c.bits, a.n)


# ---------------------------------------------------------------------------
# GF(2) linear algebra on integer bit-vectors


def rank_gf2(vectors: Iterable[int]) -> int:
    """Rank of a set of bit-vector integers over GF(2)."""
    pivots: dict[int, int] = {}  # leading-bit position -> reduced vector
    rank = 0
    for v in vectors:
        v = _reduce_gf2(v, pivots)
        if v:
            pivots[v.bit_length() - 1] = v
            rank += 1
    return rank


def _reduce_gf2(v: int, pivots: dict[int, int]) -> int:
    while v:
        b = v.bit_length() - 1
        if b not in pivots:
            return v
        v ^= pivots[b]
    return 0


def in_span_gf2(v: int, vectors: Iterable[int]) -> bool:
    pivots: dict[int, int] = {}
    for w in vectors:
        w = _reduce_gf2(w, pivots)
        if w:
            pivots[w.bit_length() - 1] = w
    return _reduce_gf2(v, pivots) == 0


def independent_subset_gf2(vectors: Iterable[int]) -> list[int]:
    """A maximal linearly independent subset, in input order."""
    pivots: dict[int, int] = {}
    chosen = []
    for v in vectors:
        w = _reduce_gf2(v, pivots)
        if w:
            pivots[w.bit_length() - 1] = w
            chosen.append(v)
    return chosen


# ---------------------------------------------------------------------------
# Flats


@dataclass(frozen=True)
class Flat:
    """An r-flat stored as a base point plus r independent directions.

    Point enumeration is an iterator; the 2^r point set is only materialized
    on demand.
    """

    base: Point
    basis: tuple[Point, ...]

    def __post_init__(self):
        n = self.base.n
        for b in self.basis:
            if b.n != n:
                raise DimensionMismatchError("basis vector in wrong ambient space")
            if b.bits == 0:
                raise ValueError("basis vectors must be nonzero")
        if rank_gf2(b.bits for b in self.basis) != len(self.basis):
            raise ValueError("basis vectors must be linearly independent")

    @property
    def r(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.base.n

    def points(self) -> Iterator[Point]:
        """All 2^r points: the base XOR every subset of the basis."""
        dirs = [b.bits for b in self.basis]
        for mask in range(1 << len(dirs)):
            x = self.base.bits
            m = mask
            i = 0
            while m:
                if m & 1:
                    x ^= dirs[i]
                m >>= 1
                i += 1
            yield Point(x, self.base.n)

    def point_set(self) -> frozenset[Point]:
        return frozenset(self.points())

    def __contains__(self, p: Point) -> bool:
        if p.n != self.base.n:
            return False
        pivots: dict[int, int] = {}
        for b in self.basis:
            w = _reduce_gf2(b.bits, pivots)
            if w:
                pivots[w.bit_length() - 1] = w
        return _reduce_gf2(p.bits ^ self.base.bits, pivots) == 0


def affine_span(points: Iterable[Point]) -> Flat:
    """The affine span of a nonempty point set, as a Flat.

    The flat's points are exactly the XORs of odd-size subsets of the input.
    """
    pts = list(points)
    if not pts:
        raise ValueError("affine span of an empty set is undefined")
    _require_distinct(tuple(pts))
    base = pts[0]
    dirs = independent_subset_gf2(p.bits ^ base.bits for p in pts[1:] if p.bits != base.bits)
    return Flat(base, tuple(Point(d, base.n) for d in dirs))


def dimension(points: Iterable[Point]) -> int:
    """Dimension of the affine span (GF(2) rank of the difference vectors)."""
    pts = list(points)
    if not pts:
        raise ValueError("dimension of an empty set is undefined")
    base = pts[0]
    return rank_gf2(p.bits ^ base.bits for p in pts[1:])


def is_affinely_independent(points: Iterable[Point]) -> bool:
    pts = list(points)
    if not pts:
        raise ValueError("empty set")
    return dimension(pts) == len(pts) - 1


def partition_into_flats(ambient_n: int, r: int, anchor: Flat) -> list[Flat]:
    """Partition Z_2^n into 2^(n-r) disjoint r-flats, the anchor among them.

    The pieces are the cosets of the anchor's direction subspace; the anchor
    itself comes first.
    """
    if anchor.n != ambient_n:
        raise DimensionMismatchError("anchor lives in a different ambient space")
    if anchor.r != r:
        raise ValueError(f"anchor has dimension {anchor.r}, expected {r}")
    # Extend the direction basis to all of Z_2^n with unit vectors; the
    # added vectors index the cosets.
    pivots: dict[int, int] = {}
    for b in anchor.basis:
        w = _reduce_gf2(b.bits, pivots)
        if w:
            pivots[w.bit_length() - 1] = w
    complement: list[int] = []
    for i in range(ambient_n):
        e = 1 << i
        w = _reduce_gf2(e, pivots)
        if w:
            pivots[w.bit_length() - 1] = w
            complement.append(e)
    assert len(complement) == ambient_n - r
    flats = []
    for mask in range(1 << len(complement)):
        rep = anchor.base.bits
        for i, e in enumerate(complement):
            if (mask >> i) & 1:
                rep ^= e
        flats.append(Flat(Point(rep, ambient_n), anchor.basis))
    return flats


# ---------------------------------------------------------------------------
# Recursive grid coordinates
#
# The 2x2 labeling scheme is 00 top-left, 01 top-right, 10 bottom-left,
# 11 bottom-right, applied recursively to nested super-squares.  For even n
# this sends the odd-position coordinates to the row index and the
# even-position coordinates to the column index.  For odd n the grid is a
# half-square (2^((n-1)/2) rows by 2^((n+1)/2) columns): the first n-1
# coordinates address a square cell pair and the final unpaired coordinate
# selects its left/right half.


def grid_shape(n: int) -> tuple[int, int]:
    """(rows, cols) of the planar grid for Z_2^n."""
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"n must be in 1..{MAX_DIM}")
    return 1 << (n // 2), 1 << ((n + 1) // 2)


def point_to_grid(p: Point) -> tuple[int, int]:
    coords = p.coords()
    if p.n % 2 == 0:
        pairs = coords
        tail = None
    else:
        pairs = coords[:-1]
        tail = coords[-1]
    row = col = 0
    for i in range(0, len(pairs), 2):
        row = (row << 1) | pairs[i]
        col = (col << 1) | pairs[i + 1]
    if tail is not None:
        col = (col << 1) | tail
    return row, col


def grid_to_point(row: int, col: int, n: int) -> Point:
    rows, cols = grid_shape(n)
    if not (0 <= row < rows and 0 <= col < cols):
        raise ValueError(f"cell ({row},{col}) out of range for n={n}")
    if n % 2 == 0:
        half = n // 2
        tail = None
    else:
        half = (n - 1) // 2
        tail = col & 1
        col >>= 1
    bits = 0
    for i in range(half):
        r = (row >> (half - 1 - i)) & 1
        c = (col >> (half - 1 - i)) & 1
        bits = (bits << 2) | (r << 1) | c
    if tail is not None:
        bits = (bits << 1) | tail
    return Point(bits, n)


# ---------------------------------------------------------------------------
# Affine transformations


@dataclass(frozen=True)
class AffineMap:
    """An invertible affine transformation x -> M(x) + v of Z_2^n.

    `matrix` holds the rows of M as bit-vector integers (row i produces
    output coordinate i, MSB-first like Point).
    """

    matrix: tuple[int, ...]
    translation: Point

    def __post_init__(self):
        n = self.translation.n
        if len(self.matrix) != n:
            raise ValueError("matrix must be square of size n")
        for row in self.matrix:
            if not 0 <= row < (1 << n):
                raise ValueError("matrix row out of range")
        if rank_gf2(self.matrix) != n:
            raise ValueError("matrix is singular over GF(2)")

    @property
    def n(self) -> int:
        return self.translation.n

    def apply(self, p: Point) -> Point:
        if p.n != self.n:
            raise DimensionMismatchError(f"n={p.n} vs map n={self.n}")
        n = self.n
        out = 0
        for i, row in enumerate(self.matrix):
            parity = (row & p.bits).bit_count() & 1
            out |= parity << (n - 1 - i)
        return Point(out ^ self.translation.bits, n)

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def apply_all(self, points: Iterable[Point]) -> list[Point]:
        return [self.apply(p) for p in points]

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(tuple(1 << (n - 1 - i) for i in range(n)), zero(n))


def random_invertible_map(n: int, seed: int) -> AffineMap:
    """A uniformly random invertible affine map, deterministic per seed.

    Uses rejection sampling on the matrix; the acceptance probability is
    prod(1 - 2^-i) > 0.288, so this terminates quickly.
    """
    rng = random.Random(seed)
    while True:
        rows = tuple(rng.randrange(1 << n) for _ in range(n))
        if rank_gf2(rows) == n:
            break
    return AffineMap(rows, Point(rng.randrange(1 << n), n))


def apply(map_: AffineMap, p: Point) -> Point:
    return map_.apply(p)
