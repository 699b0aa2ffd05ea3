"""Caps, exclude sets with multiplicities, quad closure, and structure checks.

A cap is a point set containing no quad.  Equivalently (and this is how
`is_cap` decides it) no two disjoint pairs share a sum, which makes caps the
Sidon sets of (Z_2^n, xor).  Exclude maps remember the witness triples behind
each multiplicity, not just the counts; the interactive surface and the
disjoint-triples checks both need them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .gf2geom import (
    DimensionMismatchError,
    Flat,
    Point,
    affine_span,
    dimension,
    is_affinely_independent,
    partition_into_flats,
)

Triple = tuple[Point, Point, Point]


class NotACapError(ValueError):
    """The given points contain a quad."""


def _bits_of(points: Iterable[Point]) -> list[int]:
    return [p.bits for p in points]


def is_cap(points: Iterable[Point]) -> bool:
    """Whether a point set contains no quad.

    Uses the pairwise-sum collision test: a quad {a,b,c,d} exists iff
    a+b = c+d for disjoint pairs, so it suffices to tally the C(k,2) pair
    sums and look for a repeat among disjoint pairs.  O(k^2) instead of the
    O(k^4) quadruple scan.
    """
    pts = list(points)
    ns = {p.n for p in pts}
    if len(ns) > 1:
        raise DimensionMismatchError(f"mixed ambient dimensions {sorted(ns)}")
    bits = _bits_of(pts)
    if len(set(bits)) != len(bits):
        raise ValueError("points must be distinct")
    seen: dict[int, tuple[int, int]] = {}
    for i, j in combinations(range(len(bits)), 2):
        s = bits[i] ^ bits[j]
        if s in seen:
            # Disjointness is automatic: a shared endpoint with equal sums
            # would force the other two endpoints equal.
            return False
        seen[s] = (i, j)
    return True


@dataclass(frozen=True)
class Cap:
    """A validated cap: strictly increasing distinct points plus ambient n."""

    points: tuple[Point, ...]
    n: int

    def __post_init__(self):
        if len(self.points) == 0:
            return
        for p in self.points:
            if p.n != self.n:
                raise DimensionMismatchError(f"point in Z_2^{p.n}, cap in Z_2^{self.n}")
        for a, b in zip(self.points, self.points[1:]):
            if not a.bits < b.bits:
                raise ValueError("cap points must be strictly increasing")
        if not is_cap(self.points):
            raise NotACapError("point set contains a quad")

    @classmethod
    def from_points(cls, points: Iterable[Point], n: int | None = None) -> "Cap":
        pts = sorted(set(points), key=lambda p: p.bits)
        if n is None:
            if not pts:
                raise ValueError("empty cap needs an explicit ambient dimension")
            n = pts[0].n
        return cls(tuple(pts), n)

    @classmethod
    def from_bits(cls, n: int, bits: Iterable[int]) -> "Cap":
        return cls.from_points((Point(b, n) for b in bits), n)

    @property
    def k(self) -> int:
        return len(self.points)

    def bits(self) -> list[int]:
        return _bits_of(self.points)

    def dimension(self) -> int:
        """Dimension of the affine span.  Undefined (an error) on empty caps."""
        if not self.points:
            raise ValueError("dimension of the empty cap is undefined")
        return dimension(self.points)

    def affine_span(self) -> Flat:
        if not self.points:
            raise ValueError("affine span of the empty cap is undefined")
        return affine_span(self.points)

    def is_affinely_independent(self) -> bool:
        return is_affinely_independent(self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self.points

    # -- file format: {"n": 4, "points": ["0000", ...]} -------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "points": [p.to_binary() for p in self.points]})

    @classmethod
    def from_json(cls, text: str) -> "Cap":
        doc = json.loads(text)
        n = int(doc["n"])
        return cls.from_points([Point.parse(s, n) for s in doc["points"]], n)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path) -> "Cap":
        with open(path) as fh:
            return cls.from_json(fh.read())


@dataclass(frozen=True)
class ExcludeMap:
    """Point -> (multiplicity, witness triples) for a cap's exclude set.

    Invariants (checked in tests, guaranteed by construction from a cap):
    multiplicities sum to C(k,3); the witness triples of an m-point with
    m >= 2 are pairwise disjoint; max multiplicity <= floor(k/3).
    """

    entries: dict[Point, tuple[Triple, ...]] = field(default_factory=dict)

    def multiplicity(self, p: Point) -> int:
        return len(self.entries.get(p, ()))

    def triples(self, p: Point) -> tuple[Triple, ...]:
        return self.entries.get(p, ())

    def max_multiplicity(self) -> int:
        return max((len(t) for t in self.entries.values()), default=0)

    def total_multiplicity(self) -> int:
        return sum(len(t) for t in self.entries.values())

    def points(self) -> frozenset[Point]:
        return frozenset(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, p: Point) -> bool:
        return p in self.entries


def exclude_map(cap: Cap) -> ExcludeMap:
    """Tally every triple sum of the cap with its witness triples."""
    pts = cap.points
    entries: dict[Point, list[Triple]] = {}
    for a, b, c in combinations(pts, 3):
        p = Point(a.bits ^ b.bits ^ c.bits, cap.n)
        entries.setdefault(p, []).append((a, b, c))
    for p in entries:
        if p in pts:  # pragma: no cover - Cap construction forbids this
            raise NotACapError("exclude point inside the cap")
    return ExcludeMap({p: tuple(ts) for p, ts in entries.items()})


def quad_closure(points: Iterable[Point]) -> frozenset[Point]:
    """S union exc(S).  Always a subset of the affine span of S."""
    pts = list(points)
    bits = _bits_of(pts)
    if len(set(bits)) != len(bits):
        raise ValueError("points must be distinct")
    if not pts:
        return frozenset()
    n = pts[0].n
    out = set(bits)
    for a, b, c in combinations(bits, 3):
        out.add(a ^ b ^ c)
    return frozenset(Point(b, n) for b in out)


def is_complete_in_ambient(cap: Cap) -> bool:
    """No point of Z_2^n can be added: the quad closure is the whole space."""
    return len(quad_closure(cap.points)) == (1 << cap.n)


def completes_span(cap: Cap) -> bool:
    """Whether the quad closure covers every point of the affine span."""
    qc = quad_closure(cap.points)
    return all(p in qc for p in cap.affine_span().points())


# ---------------------------------------------------------------------------
# Structure report


@dataclass(frozen=True)
class Clause:
    name: str
    ok: bool
    detail: str
    witnesses: tuple[tuple[Point, ...], ...] = ()


@dataclass(frozen=True)
class StructureReport:
    cap: Cap
    clauses: tuple[Clause, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def violated(self) -> list[Clause]:
        return [c for c in self.clauses if not c.ok]

    def to_doc(self) -> dict:
        return {
            "n": self.cap.n,
            "points": [p.to_binary() for p in self.cap.points],
            "ok": self.ok,
            "clauses": {
                c.name: {
                    "ok": c.ok,
                    "detail": c.detail,
                    "witnesses": [[p.to_binary() for p in w] for w in c.witnesses],
                }
                for c in self.clauses
            },
        }


def check_structure(cap: Cap) -> StructureReport:
    """Verify the structural facts every valid cap must satisfy.

    (a) every affine dependence among cap points involves at least 6 points;
    (b) an exclude of multiplicity >= 2 exists iff some 6 cap points lie in
        a common 4-flat;
    (c) when 6 cap points span a 4-flat, every other flat in the coset
        partition holds at most one cap point.

    Violations indicate implementation bugs, not interesting caps.
    """
    pts = cap.points
    clauses = []

    # (a) minimal dependences: no 4-subset sums to zero (that is the cap
    # property itself), so any dependence has even size >= 6.
    bad_quads = [
        q for q in combinations(pts, 4)
        if q[0].bits ^ q[1].bits ^ q[2].bits ^ q[3].bits == 0
    ]
    clauses.append(
        Clause(
            "min_dependence_six",
            not bad_quads,
            "no affine dependence among cap points uses fewer than 6 points",
            tuple(bad_quads),
        )
    )

    # (b) multiplicity >= 2 iff six points share a 4-flat.
    emap = exclude_map(cap)
    heavy = [p for p in emap.points() if emap.multiplicity(p) >= 2]
    six_in_4flat = None
    for six in combinations(pts, 6):
        if dimension(six) <= 4:
            six_in_4flat = six
            break
    agree = bool(heavy) == (six_in_4flat is not None)
    witnesses: list[tuple[Point, ...]] = []
    if heavy:
        witnesses.append(tuple(heavy))
    if six_in_4flat:
        witnesses.append(six_in_4flat)
    clauses.append(
        Clause(
            "mult2_iff_six_in_4flat",
            agree,
            f"max multiplicity {emap.max_multiplicity()}; "
            f"six points in a 4-flat: {six_in_4flat is not None}",
            tuple(witnesses),
        )
    )

    # (c) coset discipline around a spanned 4-flat.
    ok_c = True
    c_witness: list[tuple[Point, ...]] = []
    if six_in_4flat is not None and dimension(six_in_4flat) == 4:
        anchor = affine_span(six_in_4flat)
        for flat in partition_into_flats(cap.n, 4, anchor)[1:]:
            inside = [p for p in pts if p in flat]
            if len(inside) > 1:
                ok_c = False
                c_witness.append(tuple(inside))
    clauses.append(
        Clause(
            "one_per_other_4flat",
            ok_c,
            "each non-anchor 4-flat of the partition holds at most one cap point",
            tuple(c_witness),
        )
    )

    return StructureReport(cap, tuple(clauses))


def max_multiplicity_bound(cap: Cap) -> int:
    """floor(k/3): the largest multiplicity a k-cap can exhibit."""
    return cap.k // 3


def expected_total_multiplicity(cap: Cap) -> int:
    return comb(cap.k, 3)
