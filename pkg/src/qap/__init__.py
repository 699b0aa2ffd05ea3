"""Caps, quads, and exact layout probabilities in AG(n,2)."""

from .gf2geom import (
    AffineMap,
    DimensionMismatchError,
    Flat,
    Point,
    add,
    affine_span,
    dimension,
    exclude_of_triple,
    grid_to_point,
    is_affinely_independent,
    is_quad,
    partition_into_flats,
    point_to_grid,
    random_invertible_map,
)
from .capcore import (
    Cap,
    ExcludeMap,
    NotACapError,
    check_structure,
    completes_span,
    exclude_map,
    is_cap,
    is_complete_in_ambient,
    quad_closure,
)
from .classify import CapClass, Tag, are_equivalent, classify, odd_sum_signature
from .census import (
    count_caps,
    count_dim_k_minus_2,
    count_independent,
    count_9caps_dim6,
    census_row,
    census_table,
    enumerate_census,
    extremal_tables,
    monte_carlo_quad_probability,
    probability_table,
)
from .deck import (
    Card,
    card_to_point,
    complete_quad,
    deal,
    find_all_quads,
    full_deck,
    point_to_card,
    quad_by_attributes,
    sub_deck,
)

__version__ = "0.1.0"
