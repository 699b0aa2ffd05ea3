from itertools import combinations

import pytest

from qap.deck import (
    COLORS,
    NUMBERS,
    SHAPES,
    Card,
    card_to_point,
    complete_quad,
    deal,
    find_all_quads,
    full_deck,
    layout_to_text,
    parse_layout,
    point_to_card,
    quad_by_attributes,
    sub_deck,
)
from qap.gf2geom import Point, affine_span, is_quad


class TestCard:
    def test_name_round_trip(self):
        c = Card(3, "Blue", "Circle")
        assert c.name() == "3-Blue-Circle"
        assert Card.parse("3-Blue-Circle") == c
        assert Card.parse("3-blue-circle") == c

    def test_validation(self):
        with pytest.raises(ValueError):
            Card(5, "Blue", "Circle")
        with pytest.raises(ValueError):
            Card(1, "Purple", "Circle")
        with pytest.raises(ValueError):
            Card(1, "Blue", "Star")
        with pytest.raises(ValueError):
            Card.parse("Blue-Circle")


class TestEncoding:
    def test_four_green_triangles(self):
        assert card_to_point(Card(4, "Green", "Triangle")) == Point(0b110010, 6)

    def test_one_green_heart_is_origin(self):
        assert card_to_point(Card(1, "Green", "Heart")) == Point(0, 6)

    def test_bijection(self):
        deck = full_deck()
        assert len(deck) == 64
        assert len(set(deck)) == 64
        for card in deck:
            assert point_to_card(card_to_point(card)) == card

    def test_point_dimension_guard(self):
        with pytest.raises(ValueError):
            point_to_card(Point(3, 4))


class TestQuadRule:
    def test_attribute_rule_matches_xor_exhaustively(self):
        # all C(64,4) = 635376 quadruples: game rule == coordinate rule
        deck = full_deck()
        pts = {c: card_to_point(c) for c in deck}
        matches = 0
        for quad in combinations(deck, 4):
            by_rule = quad_by_attributes(*quad)
            by_xor = is_quad(*(pts[c] for c in quad))
            assert by_rule == by_xor, quad
            matches += by_rule
        # 2-flat count of Z_2^6: 64*63*62/24
        assert matches == 10416

    def test_completion(self):
        a = Card(1, "Green", "Heart")
        b = Card(2, "Red", "Square")
        c = Card(3, "Blue", "Triangle")
        d = complete_quad(a, b, c)
        assert d == Card(4, "Yellow", "Circle")
        assert quad_by_attributes(a, b, c, d)

    def test_completion_distinctness_guard(self):
        a = Card(1, "Green", "Heart")
        with pytest.raises(ValueError):
            complete_quad(a, a, Card(2, "Red", "Square"))

    def test_all_same_attribute_ok(self):
        quad = (
            Card(1, "Green", "Heart"),
            Card(1, "Green", "Square"),
            Card(1, "Green", "Triangle"),
            Card(1, "Green", "Circle"),
        )
        assert quad_by_attributes(*quad)

    def test_two_two_split_ok(self):
        quad = (
            Card(1, "Green", "Heart"),
            Card(1, "Green", "Square"),
            Card(2, "Red", "Heart"),
            Card(2, "Red", "Square"),
        )
        assert quad_by_attributes(*quad)

    def test_three_one_split_fails(self):
        quad = (
            Card(1, "Green", "Heart"),
            Card(1, "Green", "Square"),
            Card(1, "Green", "Triangle"),
            Card(2, "Green", "Circle"),
        )
        assert not quad_by_attributes(*quad)


class TestLayouts:
    def test_find_all_quads_cap_has_none(self):
        layout = [point_to_card(Point(b, 6)) for b in (0, 1, 2, 4, 8, 16, 32)]
        assert find_all_quads(layout) == []

    def test_find_all_quads_counts(self):
        # a full 3-flat contains 8*7*6/24 = 14 quads
        flat_cards = [point_to_card(Point(b, 6)) for b in range(8)]
        quads = find_all_quads(flat_cards)
        assert len(quads) == 14
        for quad in quads:
            assert quad_by_attributes(*quad)
            assert quad == tuple(sorted(quad))

    def test_find_all_quads_rejects_duplicates(self):
        c = Card(1, "Green", "Heart")
        with pytest.raises(ValueError):
            find_all_quads([c, c])

    def test_deal_deterministic(self):
        assert deal(7, 12) == deal(7, 12)
        assert len(set(deal(7, 12))) == 12

    def test_deal_overdraw(self):
        with pytest.raises(ValueError):
            deal(0, 65)

    def test_sub_deck(self):
        flat = affine_span([Point(b, 6) for b in (0, 1, 2, 4)])
        cards = sub_deck(flat)
        assert len(cards) == 8
        assert find_all_quads(cards) != []

    def test_parse_layout_mixed(self):
        text = "# layout\n3-Blue-Circle\n000000\n\n110010\n"
        cards = parse_layout(text)
        assert cards == [
            Card(3, "Blue", "Circle"),
            Card(1, "Green", "Heart"),
            Card(4, "Green", "Triangle"),
        ]

    def test_layout_text_round_trip(self):
        cards = deal(3, 9)
        assert parse_layout(layout_to_text(cards)) == cards


class TestConstants:
    def test_attribute_orders(self):
        assert NUMBERS == (1, 2, 3, 4)
        assert COLORS == ("Green", "Red", "Blue", "Yellow")
        assert SHAPES == ("Heart", "Square", "Triangle", "Circle")
