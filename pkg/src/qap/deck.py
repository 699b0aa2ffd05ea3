"""EvenQuads card semantics: attribute encodings and card/point conversion.

Each card has three attributes (number, color, shape) with four states each;
every attribute maps to a bit pair, so the 64-card deck is a model of Z_2^6.
The pair assignments are fixed -- alternative assignments are just affine
re-coordinatizations and deliberately not configurable, so the worked
examples stay reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .gf2geom import Flat, Point

NUMBERS = (1, 2, 3, 4)
COLORS = ("Green", "Red", "Blue", "Yellow")
SHAPES = ("Heart", "Square", "Triangle", "Circle")


@dataclass(frozen=True, order=True)
class Card:
    number: int
    color: str
    shape: str

    def __post_init__(self):
        if self.number not in NUMBERS:
            raise ValueError(f"number must be 1..4, got {self.number}")
        if self.color not in COLORS:
            raise ValueError(f"unknown color {self.color!r}")
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")

    def name(self) -> str:
        return f"{self.number}-{self.color}-{self.shape}"

    def __str__(self) -> str:
        return self.name()

    @classmethod
    def parse(cls, text: str) -> "Card":
        parts = text.strip().split("-")
        if len(parts) != 3:
            raise ValueError(f"expected 'number-Color-Shape', got {text!r}")
        num, color, shape = parts
        return cls(int(num), color.capitalize(), shape.capitalize())


def card_to_point(card: Card) -> Point:
    """Number -> first bit pair, color -> second, shape -> third.

    Four green triangles is (11,00,10) = 0b110010.
    """
    bits = (
        (NUMBERS.index(card.number) << 4)
        | (COLORS.index(card.color) << 2)
        | SHAPES.index(card.shape)
    )
    return Point(bits, 6)


def point_to_card(p: Point) -> Card:
    if p.n != 6:
        raise ValueError("cards live in Z_2^6")
    return Card(
        NUMBERS[(p.bits >> 4) & 3],
        COLORS[(p.bits >> 2) & 3],
        SHAPES[p.bits & 3],
    )


def full_deck() -> list[Card]:
    """All 64 cards, in point order."""
    return [point_to_card(Point(b, 6)) for b in range(64)]


def _attribute_ok(states: tuple) -> bool:
    # all equal, all distinct, or two states each appearing twice
    a, b, c, d = sorted(states)
    if a == d:
        return True
    if a != b and b != c and c != d:
        return True
    return a == b and c == d


def quad_by_attributes(c1: Card, c2: Card, c3: Card, c4: Card) -> bool:
    """The game-rule test, attribute by attribute (no coordinates involved)."""
    cards = (c1, c2, c3, c4)
    if len(set(cards)) != 4:
        raise ValueError("cards must be distinct")
    return (
        _attribute_ok(tuple(c.number for c in cards))
        and _attribute_ok(tuple(c.color for c in cards))
        and _attribute_ok(tuple(c.shape for c in cards))
    )


def complete_quad(c1: Card, c2: Card, c3: Card) -> Card:
    """The unique card completing a quad with three distinct cards."""
    if len({c1, c2, c3}) != 3:
        raise ValueError("cards must be distinct")
    bits = card_to_point(c1).bits ^ card_to_point(c2).bits ^ card_to_point(c3).bits
    return point_to_card(Point(bits, 6))


def find_all_quads(layout: Sequence[Card]) -> list[tuple[Card, Card, Card, Card]]:
    """All quads in a layout, each as a 4-tuple in lexicographic card order.

    Scans triples and hash-checks the completion, O(L^3).
    """
    cards = list(layout)
    if len(set(cards)) != len(cards):
        raise ValueError("layout cards must be distinct")
    index = {c: i for i, c in enumerate(cards)}
    quads = set()
    for a, b, c in combinations(cards, 3):
        d = complete_quad(a, b, c)
        i = index.get(d)
        if i is not None and d not in (a, b, c):
            quads.add(tuple(sorted((a, b, c, d))))
    return sorted(quads)


def deal(seed: int, k: int, deck: Sequence[Card] | None = None) -> list[Card]:
    """Uniform k-card layout without replacement, deterministic per seed."""
    cards = list(deck) if deck is not None else full_deck()
    if k > len(cards):
        raise ValueError(f"cannot deal {k} cards from a {len(cards)}-card deck")
    return random.Random(seed).sample(cards, k)


def sub_deck(mask: Flat) -> list[Card]:
    """The cards of a flat of Z_2^6: a quad-closed sub-deck.

    Closure under completing quads holds for every flat (a triple sum is an
    affine combination); asserted here as a sanity check.
    """
    if mask.n != 6:
        raise ValueError("sub-decks are cut from the 64-card deck (Z_2^6)")
    points = sorted(mask.points(), key=lambda p: p.bits)
    cards = [point_to_card(p) for p in points]
    present = set(cards)
    for a, b, c in combinations(cards, 3):
        assert complete_quad(a, b, c) in present, "flat not quad-closed (bug)"
    return cards


def parse_layout(text: str) -> list[Card]:
    """Line-delimited card names or point literals, auto-detected."""
    cards = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "-" in line:
            cards.append(Card.parse(line))
        else:
            cards.append(point_to_card(Point.parse(line, 6)))
    return cards


def layout_to_text(cards: Iterable[Card]) -> str:
    return "\n".join(c.name() for c in cards) + "\n"
