import pytest

from qap.capcore import Cap
from qap.classify import (
    M_R,
    R_K,
    CapClass,
    Tag,
    UnclassifiableError,
    are_equivalent,
    are_equivalent_by_search,
    classify,
    odd_sum_signature,
)
from qap.gf2geom import random_invertible_map

from conftest import all_representatives, random_cap, representative


def mapped(c, seed):
    m = random_invertible_map(c.n, seed)
    return Cap.from_points(m.apply_all(c.points), c.n)


class TestTables:
    def test_minimal_dimension_per_size(self):
        assert [R_K[k] for k in range(1, 11)] == [0, 1, 2, 3, 4, 4, 5, 6, 6, 7]

    def test_maximal_cap_per_dimension(self):
        assert [M_R[r] for r in range(1, 7)] == [2, 3, 4, 6, 7, 9]


class TestClassify:
    @pytest.mark.parametrize("key", sorted(all_representatives()))
    def test_representatives(self, key):
        label, k, dim = key
        cls = classify(representative(*key))
        assert cls.label == label
        assert cls.k == k
        assert cls.dim == dim

    def test_labels(self):
        assert classify(representative("IND", 5, 4)).label == "IND"
        assert str(classify(representative("ODD5", 6, 4))) == "ODD5(k=6,dim=4)"
        assert classify(representative("MULT2", 9, 7)).tag is Tag.MULT2

    def test_odd_sum_parameter(self):
        assert classify(representative("ODD5", 6, 4)).m == 2
        assert classify(representative("ODD5", 7, 5)).m == 2
        assert classify(representative("MULT1", 8, 6)).m == 3
        assert classify(representative("MULT2", 8, 6)).m == 2
        assert classify(representative("IND", 4, 3)).m is None

    def test_k_bounds(self):
        with pytest.raises(UnclassifiableError):
            classify(Cap.from_bits(4, []))
        ten = Cap.from_bits(7, [0, 1, 2, 4, 8, 15, 16, 32, 51, 64])
        with pytest.raises(UnclassifiableError):
            classify(ten)

    def test_affine_invariance(self, rng):
        # the class label must be constant on affine orbits
        for key in sorted(all_representatives()):
            c = representative(*key)
            base = classify(c)
            for seed in range(25):
                assert classify(mapped(c, seed)) == base

    def test_random_caps_classifiable(self, rng):
        for _ in range(300):
            n = rng.choice((4, 5, 6, 7))
            c = random_cap(n, rng, k_target=rng.randint(1, 9))
            cls = classify(c)
            assert 1 <= cls.k <= 9
            assert R_K[cls.k] <= cls.dim <= cls.k - 1


class TestOddSum:
    def test_signature_matches_class(self):
        assert odd_sum_signature(representative("ODD5", 6, 4)) == 2
        assert odd_sum_signature(representative("ODD5", 7, 5)) == 2
        assert odd_sum_signature(representative("MULT1", 8, 6)) == 3
        assert odd_sum_signature(representative("MULT2", 8, 6)) == 2
        assert odd_sum_signature(representative("MULT1", 9, 7)) == 3
        assert odd_sum_signature(representative("MULT2", 9, 7)) == 2

    def test_undefined_for_independent(self):
        with pytest.raises(ValueError):
            odd_sum_signature(representative("IND", 6, 5))

    def test_invariant_under_maps(self):
        c = representative("MULT2", 8, 6)
        for seed in range(20):
            assert odd_sum_signature(mapped(c, seed)) == 2


class TestEquivalence:
    def test_same_class_is_equivalent(self):
        for key in sorted(all_representatives()):
            c = representative(*key)
            assert are_equivalent(c, mapped(c, 3)) is True

    def test_different_sizes(self):
        assert (
            are_equivalent(
                Cap.from_bits(4, [0, 1, 2]), Cap.from_bits(4, [0, 1, 2, 4])
            )
            is False
        )

    def test_cross_class_negatives(self):
        pairs = [
            (("IND", 6, 5), ("ODD5", 6, 4)),
            (("IND", 7, 6), ("ODD5", 7, 5)),
            (("MULT1", 8, 6), ("MULT2", 8, 6)),
            (("MULT1", 9, 7), ("MULT2", 9, 7)),
            (("MULT2", 9, 7), ("9DIM6", 9, 6)),
        ]
        for a, b in pairs:
            ca, cb = representative(*a), representative(*b)
            if ca.n != cb.n:
                continue
            assert are_equivalent(ca, cb) is False


class TestSearch:
    def test_agrees_with_classify_positive(self):
        for key in [("ODD5", 6, 4), ("MULT2", 8, 6), ("IND", 5, 4)]:
            c = representative(*key)
            d = mapped(c, 11)
            assert are_equivalent_by_search(c, d) is True

    def test_agrees_with_classify_negative(self):
        a = representative("MULT1", 8, 6)
        b = representative("MULT2", 8, 6)
        assert are_equivalent_by_search(a, b) is False

    def test_dimension_shortcut(self):
        a = representative("IND", 6, 5)
        b = representative("ODD5", 6, 4)
        assert are_equivalent_by_search(a, b) is False

    def test_budget_exhaustion_returns_none(self):
        c = representative("MULT1", 9, 7)
        d = mapped(c, 5)
        assert are_equivalent_by_search(c, d, budget=10) is None

    def test_random_orbit_pairs(self, rng):
        # search and structural invariant must agree on random instances
        for _ in range(25):
            n = rng.choice((4, 5))
            c = random_cap(n, rng, k_target=rng.randint(2, 6))
            d = mapped(c, rng.randrange(1 << 20))
            assert are_equivalent_by_search(c, d) is True
            assert are_equivalent(c, d) is True

    def test_random_non_orbit_pairs(self, rng):
        for _ in range(25):
            n = rng.choice((4, 5))
            c = random_cap(n, rng, k_target=6)
            d = random_cap(n, rng, k_target=6)
            expected = classify(c) == classify(d)
            got = are_equivalent_by_search(c, d)
            assert got is expected
