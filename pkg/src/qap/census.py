"""Closed-form cap counts, exact layout probabilities, and cross-checks.

All counts are exact big integers and all probabilities exact rationals;
decimal strings are a rendering concern (round-half-even at 10 significant
digits) so the published tables are reproducible bit-for-bit.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np

from .classify import M_R, R_K
from .enumeration import Tally, default_thread_budget, enumerate_caps

__all__ = [
    "CensusRow",
    "ProbabilityRow",
    "MonteCarloEstimate",
    "count_independent",
    "count_dim_k_minus_2",
    "count_9caps_dim6",
    "count_caps",
    "census_row",
    "census_table",
    "enumerate_census",
    "probability_table",
    "format_probability",
    "extremal_tables",
    "monte_carlo_quad_probability",
]


def count_independent(k: int, n: int) -> int:
    """Number of affinely independent k-caps in Z_2^n: (2^n/k!)*prod(2^n-2^i).

    Returns 0 when k-1 > n (some factor vanishes or goes negative).
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    N = 1 << n
    if k == 1:
        return N
    if k - 1 > n:
        return 0
    num = N
    for i in range(k - 1):
        num *= N - (1 << i)
    q, r = divmod(num, factorial(k))
    assert r == 0, "independent-cap product must be divisible by k!"
    return q


def count_dim_k_minus_2(k: int, n: int) -> int:
    """Number of k-caps of dimension k-2 (k >= 6).

    Q_{k-2}(k,n) = Q_{k-2}(k-1,n) * sum_{m=2}^{h} C(k-1, 2m+1)/(2m+2),
    h = floor((k-2)/2); Q_{k-2}(k-1,n) is the affinely independent
    (k-1)-cap count.  Evaluated in exact rationals and asserted integral.
    """
    if k < 6:
        raise ValueError("dimension k-2 caps exist only for k >= 6")
    h = (k - 2) // 2
    weight = sum(Fraction(comb(k - 1, 2 * m + 1), 2 * m + 2) for m in range(2, h + 1))
    total = count_independent(k - 1, n) * weight
    if total.denominator != 1:
        raise ArithmeticError(f"Q_{k-2}({k},{n}) is not integral: {total}")
    return int(total)


def count_9caps_dim6(n: int) -> int:
    """Number of 9-caps of dimension 6: (35/9) * (independent 7-cap count)."""
    if n < 6:
        return 0
    total = Fraction(35, 9) * count_independent(7, n)
    if total.denominator != 1:
        raise ArithmeticError(f"Q_6(9,{n}) is not integral: {total}")
    return int(total)


@dataclass(frozen=True)
class CensusRow:
    k: int
    n: int
    by_dimension: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.by_dimension.values())


def census_row(k: int, n: int) -> CensusRow:
    """Exact per-dimension counts Q_r(k,n) for r_k <= r <= k-1, closed form."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 10:
        if n > 6:
            raise ValueError("no closed-form count for 10-caps with n >= 7")
        return CensusRow(k, n, {7: 0})
    if k > 10:
        raise ValueError(f"no closed-form count for k={k}")
    by_dim: dict[int, int] = {k - 1: count_independent(k, n)} if k >= 2 else {0: count_independent(1, n)}
    if 6 <= k <= 9:
        by_dim[k - 2] = count_dim_k_minus_2(k, n) if n >= k - 2 else 0
    if k == 9:
        by_dim[6] = count_9caps_dim6(n) if n >= 6 else 0
    return CensusRow(k, n, by_dim)


def count_caps(k: int, n: int) -> int:
    """Q(k,n): the total number of k-caps, from the closed forms."""
    return census_row(k, n).total


def census_table(n: int, k_max: int = 10) -> list[CensusRow]:
    return [census_row(k, n) for k in range(1, k_max + 1)]


def enumerate_census(
    n: int,
    k_max: int,
    thread_budget: int | None = None,
    engine: str = "fast",
) -> list[Tally]:
    """The brute-force oracle: full DFS enumeration, per-dimension tallies.

    Independent of the closed forms above; see `qap.enumeration` for the
    search itself.  Deterministic for any thread budget.
    """
    return enumerate_caps(n, k_max, thread_budget=thread_budget, engine=engine)


# ---------------------------------------------------------------------------
# Probabilities


@dataclass(frozen=True)
class ProbabilityRow:
    k: int
    p_no_quad: Fraction
    p_quad: Fraction

    @property
    def no_quad_str(self) -> str:
        return format_probability(self.p_no_quad)

    @property
    def quad_str(self) -> str:
        return format_probability(self.p_quad)


def format_probability(value: Fraction, digits: int = 10) -> str:
    """Render an exact rational, round-half-even at `digits` significant digits."""
    if value == 0:
        return "0"
    if value == 1:
        return "1"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = decimal.ROUND_HALF_EVEN
        d = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
    return format(d, "f")


def probability_table(n: int = 6, k_max: int | None = None) -> list[ProbabilityRow]:
    """Exact quad-layout probabilities: p_no_quad(k) = Q(k,n)/C(2^n, k)."""
    if k_max is None:
        k_max = M_R[min(n, 6)] + 1 if n <= 6 else 10
    rows = []
    for k in range(1, k_max + 1):
        p = Fraction(count_caps(k, n), comb(1 << n, k))
        rows.append(ProbabilityRow(k, p, 1 - p))
    return rows


# ---------------------------------------------------------------------------
# Extremal tables


def extremal_tables(n: int = 6) -> tuple[dict[int, int], dict[int, int]]:
    """(r_k for k=1..10, M(r) for r=1..min(n,6)) from the closed theory."""
    return dict(R_K), {r: M_R[r] for r in range(1, min(n, 6) + 1)}


# ---------------------------------------------------------------------------
# Monte Carlo cross-check


@dataclass(frozen=True)
class MonteCarloEstimate:
    k: int
    n: int
    trials: int
    hits: int  # layouts containing at least one quad

    @property
    def p_quad(self) -> float:
        return self.hits / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_quad
        return sqrt(p * (1 - p) / self.trials)


def monte_carlo_quad_probability(
    k: int, n: int, trials: int, seed: int, batch: int = 50_000
) -> MonteCarloEstimate:
    """Sample k-subsets of Z_2^n uniformly and test for a quad.

    Deterministic per seed.  A layout contains a quad iff some pairwise XOR
    repeats (the Sidon test), which vectorizes cleanly.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    size = 1 << n
    pairs = np.array([(i, j) for i in range(k) for j in range(i + 1, k)], dtype=np.int64)
    hits = 0
    done = 0
    while done < trials:
        m = min(batch, trials - done)
        # uniform k-subsets: k smallest of a random permutation key per row
        keys = rng.random((m, size))
        cards = np.argpartition(keys, k, axis=1)[:, :k].astype(np.int64)
        if k >= 4:
            sums = cards[:, pairs[:, 0]] ^ cards[:, pairs[:, 1]]
            sums.sort(axis=1)
            collision = (np.diff(sums, axis=1) == 0).any(axis=1)
            hits += int(collision.sum())
        done += m
    return MonteCarloEstimate(k, n, trials, hits)


def oracle_matches_formulas(
    n: int,
    k_max: int,
    thread_budget: int | None = None,
    engine: str = "fast",
) -> tuple[bool, list[dict]]:
    """Run the enumerator and compare against the closed forms, row by row.

    Returns (all_match, rows); each row reports k, the enumerated and
    predicted totals and per-dimension splits, and a match flag.
    """
    tallies = enumerate_census(n, k_max, thread_budget=thread_budget, engine=engine)
    rows = []
    ok = True
    for tally in tallies:
        expected = census_row(tally.k, n)
        exp_dims = {d: c for d, c in expected.by_dimension.items() if c}
        got_dims = {d: c for d, c in tally.by_dimension.items() if c}
        match = got_dims == exp_dims
        ok = ok and match
        rows.append(
            {
                "k": tally.k,
                "enumerated": tally.total,
                "formula": expected.total,
                "enumerated_by_dim": got_dims,
                "formula_by_dim": exp_dims,
                "match": match,
            }
        )
    return ok, rows
