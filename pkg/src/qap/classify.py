"""Affine-equivalence classification of k-caps for k <= 9.

For k <= 9 the pair (dimension, max exclude multiplicity) is a complete
affine invariant, so classification is structural and O(k^3); no group
search happens here.  The odd-sum view (the dependent point of a
dimension-(k-2) cap is the sum of exactly 2m+1 independent points) is
exposed as a secondary accessor.  For k >= 10 there is no known complete
invariant and equivalence falls back to an explicit basis-matching search
with a three-valued result.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .capcore import Cap, exclude_map
from .gf2geom import Point, is_affinely_independent, rank_gf2

# Smallest dimension of a flat containing some k-cap, k = 1..10.
R_K = {1: 0, 2: 1, 3: 2, 4: 3, 5: 4, 6: 4, 7: 5, 8: 6, 9: 6, 10: 7}

# Size of a maximal cap in dimension r, r = 1..6.
M_R = {1: 2, 2: 3, 3: 4, 4: 6, 5: 7, 6: 9}


class Tag(Enum):
    INDEPENDENT = "IND"
    ODD_SUM = "ODD"
    MULT1 = "MULT1"
    MULT2 = "MULT2"
    DIM6_NINE = "9DIM6"


class UnclassifiableError(ValueError):
    """k >= 10, or a (k, dim) combination no valid cap can have."""


@dataclass(frozen=True)
class CapClass:
    k: int
    dim: int
    tag: Tag
    m: int | None = None  # odd-sum parameter where defined (dependent point = sum of 2m+1)

    @property
    def label(self) -> str:
        if self.tag is Tag.ODD_SUM:
            return f"ODD{2 * self.m + 1}"
        return self.tag.value

    def __str__(self) -> str:
        return f"{self.label}(k={self.k},dim={self.dim})"


def classify(cap: Cap) -> CapClass:
    """The affine-equivalence class of a cap with 1 <= k <= 9."""
    k = cap.k
    if k < 1:
        raise UnclassifiableError("empty cap has no class")
    if k > 9:
        raise UnclassifiableError(f"no classification available for k={k} >= 10")
    dim = cap.dimension()
    if dim < R_K[k]:
        raise UnclassifiableError(f"impossible cap: k={k} in dimension {dim} < r_k={R_K[k]}")
    if dim == k - 1:
        return CapClass(k, dim, Tag.INDEPENDENT)
    if k in (6, 7) and dim == k - 2:
        return CapClass(k, dim, Tag.ODD_SUM, m=2)
    if (k, dim) in ((8, 6), (9, 7)):
        mult = exclude_map(cap).max_multiplicity()
        if mult == 1:
            return CapClass(k, dim, Tag.MULT1, m=3)
        if mult == 2:
            return CapClass(k, dim, Tag.MULT2, m=2)
        raise UnclassifiableError(f"k={k} dim={dim} with max multiplicity {mult}")
    if (k, dim) == (9, 6):
        return CapClass(k, dim, Tag.DIM6_NINE)
    raise UnclassifiableError(f"impossible (k, dim) = ({k}, {dim})")


def odd_sum_signature(cap: Cap) -> int:
    """The unique m with the dependent point a sum of 2m+1 independent points.

    Defined for caps of dimension k-2 (k >= 6).  The result does not depend
    on which affinely independent (k-1)-subset is chosen.
    """
    k = cap.k
    if k < 6 or cap.dimension() != k - 2:
        raise ValueError("odd-sum signature is defined only for caps of dimension k-2")
    pts = cap.points
    for drop in range(k):
        rest = pts[:drop] + pts[drop + 1:]
        if is_affinely_independent(rest):
            extra = pts[drop]
            break
    else:  # pragma: no cover - dimension k-2 guarantees such a subset
        raise AssertionError("no affinely independent (k-1)-subset found")
    # The dependent point is the XOR of a unique odd-size subset of `rest`.
    for size in range(5, k, 2):
        for sub in combinations(rest, size):
            acc = 0
            for p in sub:
                acc ^= p.bits
            if acc == extra.bits:
                return (size - 1) // 2
    raise AssertionError("no odd-subset expression found; cap invariant broken")


def are_equivalent(c: Cap, d: Cap, budget: int = 2_000_000) -> bool | None:
    """Whether two caps are affinely equivalent.

    For k <= 9 this compares the complete structural invariant.  For
    k >= 10 it runs the explicit search (see `are_equivalent_by_search`)
    and may return None when the search exceeds `budget` candidate maps.
    Size mismatch is an inequivalence, not an error.
    """
    if c.k != d.k:
        return False
    if c.k <= 9:
        return classify(c) == classify(d)
    return are_equivalent_by_search(c, d, budget=budget)


def are_equivalent_by_search(c: Cap, d: Cap, budget: int = 5_000_000) -> bool | None:
    """Decide equivalence by matching affine bases, independent of classify.

    Picks an affine basis inside `c` (an affinely independent subset spanning
    aff(c)), expresses every point of `c` as an odd-size XOR over it, and
    backtracks over ordered affinely independent tuples of `d` as its image.
    Any affine map agreeing on the basis sends c onto the candidate image
    set, so checking image membership decides equivalence without ever
    constructing a full-space matrix.  Returns None when more than `budget`
    partial assignments were explored without a decision.
    """
    if c.n != d.n or c.k != d.k:
        return False
    if c.k == 0:
        return True
    if c.dimension() != d.dimension():
        return False
    basis_idx = _affine_basis_indices(c)
    basis = [c.points[i] for i in basis_idx]
    coords = [_affine_coords(p, basis) for p in c.points]
    size = len(basis)
    # coord subsets become checkable once their last basis slot is assigned
    schedule: list[list[tuple[int, ...]]] = [[] for _ in range(size)]
    for coord in coords:
        if len(coord) > 1:
            schedule[max(coord)].append(coord)
    d_bits = d.bits()
    d_set = set(d_bits)

    image = [0] * size
    used = [False] * len(d_bits)
    nodes = 0

    def backtrack(slot: int) -> bool | None:
        nonlocal nodes
        if slot == size:
            return True
        for idx, bits in enumerate(d_bits):
            if used[idx]:
                continue
            nodes += 1
            if nodes > budget:
                return None
            image[slot] = bits
            # affine independence of the partial image
            if slot >= 1 and rank_gf2(image[i] ^ image[0] for i in range(1, slot + 1)) != slot:
                continue
            ok = True
            for coord in schedule[slot]:
                acc = 0
                for i in coord:
                    acc ^= image[i]
                if acc not in d_set:
                    ok = False
                    break
            if not ok:
                continue
            used[idx] = True
            result = backtrack(slot + 1)
            used[idx] = False
            if result is not False:
                return result
        return False

    return backtrack(0)


def _affine_basis_indices(cap: Cap) -> list[int]:
    """Indices of an affinely independent subset spanning the cap's span."""
    basis = [cap.points[0]]
    indices = [0]
    for i, p in enumerate(cap.points[1:], start=1):
        if not is_affinely_independent(basis + [p]):
            continue
        basis.append(p)
        indices.append(i)
    return indices


def _affine_coords(p: Point, basis: list[Point]) -> tuple[int, ...]:
    """Indices of the unique odd-size subset of `basis` XOR-ing to p."""
    for size in range(1, len(basis) + 1, 2):
        for sub in combinations(range(len(basis)), size):
            acc = 0
            for i in sub:
                acc ^= basis[i].bits
            if acc == p.bits:
                return sub
    raise ValueError("point outside the affine span of the basis")
