"""Importance and interaction indices for multilevel games.

The closed-form index of a coalition T weights each profile of the
remaining attributes by an exact rational coefficient that depends only
on the profile's support size s (components > 0) and kernel size kap
(components at the top level k):

    (n - s - t)! * kap! / (n - s + kap - t + 1)!        with t = |T|

and multiplies it by the alternating sum of v over the corners where T
sits at level 0 or k.  For t = 1 this reduces to the importance index of
a single attribute (top-minus-bottom differences).

To keep results reproducible and well conditioned, value terms are
grouped by (s, kap) class and summed exactly per class (math.fsum /
bincount in canonical enumeration order); the rational coefficient is
converted to a double only when a whole class total is multiplied in.

Two independently computable forms are provided as cross-checks: a sum
of discrete derivatives over all unit cells, and an expansion through
reduced games where a coalition moves as a single macro attribute.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .game import (
    Coalition,
    MultichoiceGame,
    SizeLimitError,
    members_tuple,
    reduce_group,
    support,
)

Rational = Fraction

#: Default cap on table lookups per index query: profiles * corners <= 2**bits.
DEFAULT_QUERY_BITS = 26

METHODS = ("closed_form", "derivative_sum", "recursive", "cellsum")


def shapley_coefficient(n: int, t: int, s: int, kap: int) -> Fraction:
    """Exact class coefficient (n-s-t)! kap! / (n-s+kap-t+1)!.

    Valid for 0 <= kap <= s <= n - t and t >= 1; anything else would hit
    a negative factorial.
    """
    if t < 1 or kap < 0 or kap > s or s > n - t:
        raise ValueError(f"invalid coefficient arguments n={n}, t={t}, s={s}, kap={kap}")
    return Fraction(
        math.factorial(n - s - t) * math.factorial(kap),
        math.factorial(n - s + kap - t + 1),
    )


def _check_query_size(count: int, limit_bits: int | None) -> None:
    bits = limit_bits if limit_bits is not None else DEFAULT_QUERY_BITS
    if count > 2**bits:
        raise SizeLimitError(
            f"query needs {count} table lookups, beyond the {bits}-bit limit; "
            "raise the limit explicitly if intended"
        )


def _profile_levels(m: int, k: int) -> np.ndarray:
    """All (k+1)**m level rows over m slots, first slot varying fastest."""
    count = (k + 1) ** m
    levels = np.empty((count, m), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    for j in range(m):
        levels[:, j] = (idx // (k + 1) ** j) % (k + 1)
    return levels


def _combine_classes(
    n: int, t: int, s_arr: np.ndarray, kap_arr: np.ndarray, terms: np.ndarray
) -> float:
    """Per-(s, kap)-class totals, each scaled by its exact coefficient."""
    cid = s_arr * (n + 1) + kap_arr
    sums = np.bincount(cid, weights=terms, minlength=(n + 1) ** 2)
    return math.fsum(
        float(shapley_coefficient(n, t, int(c) // (n + 1), int(c) % (n + 1))) * sums[c]
        for c in np.nonzero(sums)[0]
    )


def _closed_form(v: MultichoiceGame, members: Coalition, limit_bits: int | None) -> float:
    n, k = v.n, v.k
    t = len(members)
    comp = [i - 1 for i in range(1, n + 1) if i not in set(members)]
    _check_query_size((k + 1) ** len(comp) * 2**t, limit_bits)
    levels = _profile_levels(len(comp), k)
    strides = np.array([(k + 1) ** p for p in comp], dtype=np.int64)
    base = levels @ strides if comp else np.zeros(1, dtype=np.int64)
    member_strides = [(k + 1) ** (i - 1) for i in members]
    terms = np.zeros(len(base))
    for bits in range(2**t):
        sign = (-1.0) ** (t - bits.bit_count())
        off = sum(k * member_strides[j] for j in range(t) if bits >> j & 1)
        terms += sign * v.values[base + off]
    s_arr = np.count_nonzero(levels > 0, axis=1)
    kap_arr = np.count_nonzero(levels == k, axis=1)
    return _combine_classes(n, t, s_arr, kap_arr, terms)


def importance(v: MultichoiceGame, i: int, limit_bits: int | None = None) -> float:
    """Importance index of attribute i.

    Weighted total, over all profiles of the other attributes, of the
    value swing of i from level 0 to level k; the weight is the exact
    (s, kap)-class coefficient with t = 1.
    """
    (i,) = members_tuple((i,), v.n)
    return _closed_form(v, (i,), limit_bits)


def interaction(v: MultichoiceGame, T: Iterable[int], limit_bits: int | None = None) -> float:
    """Interaction index of coalition T, closed form.

    Positive values flag conjunctive (min-like) behaviour of T, negative
    values disjunctive (max-like) behaviour.  For |T| = 1 this is exactly
    :func:`importance`.
    """
    members = members_tuple(T, v.n)
    if not members:
        raise ValueError("T must be nonempty")
    return _closed_form(v, members, limit_bits)


def interaction_via_derivatives(
    v: MultichoiceGame, T: Iterable[int], limit_bits: int | None = None
) -> float:
    """Interaction of T as a coefficient-weighted sum of cell derivatives.

    Sums the discrete derivative of v over every unit cell whose base has
    all T-components below the top level; agrees with :func:`interaction`
    up to rounding and serves as an independent oracle for it.
    """
    members = members_tuple(T, v.n)
    if not members:
        raise ValueError("T must be nonempty")
    n, k = v.n, v.k
    t = len(members)
    comp = [i - 1 for i in range(1, n + 1) if i not in set(members)]
    _check_query_size((k + 1) ** len(comp) * k**t * 2**t, limit_bits)

    levels = _profile_levels(len(comp), k)
    strides = np.array([(k + 1) ** p for p in comp], dtype=np.int64)
    base = levels @ strides if comp else np.zeros(1, dtype=np.int64)

    # bases of the k**t cell corners inside the T-block
    member_strides = [(k + 1) ** (i - 1) for i in members]
    cells = np.zeros(k**t, dtype=np.int64)
    idx = np.arange(k**t, dtype=np.int64)
    for j in range(t):
        cells += ((idx // k**j) % k) * member_strides[j]

    deltas = np.zeros((len(base), len(cells)))
    grid = base[:, None] + cells[None, :]
    for bits in range(2**t):
        sign = (-1.0) ** (t - bits.bit_count())
        off = sum(member_strides[j] for j in range(t) if bits >> j & 1)
        deltas += sign * v.values[grid + off]
    terms = deltas.sum(axis=1)
    s_arr = np.count_nonzero(levels > 0, axis=1)
    kap_arr = np.count_nonzero(levels == k, axis=1)
    return _combine_classes(n, t, s_arr, kap_arr, terms)


def interaction_recursive(v: MultichoiceGame, T: Iterable[int]) -> float:
    """Interaction of T via macro-attribute reductions.

    Expands I(T) as the signed sum, over nonempty A within T, of the
    importance of the macro attribute in the game where A moves in
    lockstep and T without A is frozen at level 0.  Singleton base case
    is the importance index itself.
    """
    members = members_tuple(T, v.n)
    if not members:
        raise ValueError("T must be nonempty")
    t = len(members)
    if t == 1:
        return importance(v, members[0])
    terms = []
    for a in range(1, t + 1):
        for A in combinations(members, a):
            reduced = reduce_group(v, members, A)
            terms.append((-1.0) ** (t - a) * importance(reduced, reduced.n))
    return math.fsum(terms)


def classical_shapley(v: MultichoiceGame, i: int) -> float:
    """Shapley value of attribute i in a two-level (k = 1) game."""
    if v.k != 1:
        raise ValueError(f"defined for k = 1 games only, got k = {v.k}")
    (i,) = members_tuple((i,), v.n)
    n = v.n
    others = [p for p in range(n) if p != i - 1]
    bit = 1 << (i - 1)
    terms = []
    for s in range(n):
        coeff = float(Fraction(math.factorial(n - s - 1) * math.factorial(s), math.factorial(n)))
        for S in combinations(others, s):
            mask = sum(1 << p for p in S)
            terms.append(coeff * (v.values[mask | bit] - v.values[mask]))
    return math.fsum(terms)


def classical_interaction(v: MultichoiceGame, S: Iterable[int]) -> float:
    """Interaction index of coalition S in a two-level (k = 1) game."""
    if v.k != 1:
        raise ValueError(f"defined for k = 1 games only, got k = {v.k}")
    members = members_tuple(S, v.n)
    if not members:
        raise ValueError("S must be nonempty")
    n, s = v.n, len(members)
    others = [p for p in range(n) if p + 1 not in set(members)]
    inner_masks = [
        ((-1.0) ** (s - a), sum(1 << (i - 1) for i in K))
        for a in range(s + 1)
        for K in combinations(members, a)
    ]
    terms = []
    for t in range(len(others) + 1):
        coeff = float(
            Fraction(
                math.factorial(n - t - s) * math.factorial(t),
                math.factorial(n - s + 1),
            )
        )
        for Tset in combinations(others, t):
            tmask = sum(1 << p for p in Tset)
            inner = math.fsum(sign * v.values[tmask | kmask] for sign, kmask in inner_masks)
            terms.append(coeff * inner)
    return math.fsum(terms)


def lattice_point_interaction(v: MultichoiceGame, x: Sequence[int]) -> float:
    """Pointwise interaction at a lattice profile x.

    With J the support of x, averages the discrete derivative of v over
    the cells based one step below x on J, while the attributes outside J
    sweep the extreme levels {0, k}; the weight depends on how many of
    them sit at the top.  At k = 1 and x the indicator of a coalition S
    this is the classical interaction index of S.
    """
    if len(x) != v.n:
        raise ValueError(f"profile has {len(x)} components, expected {v.n}")
    J = support(x)
    if not J:
        raise ValueError("x must have nonempty support")
    n, k = v.n, v.k
    j = len(J)
    outside = [i for i in range(1, n + 1) if i not in set(J)]
    base = sum((x[i - 1] - 1) * (k + 1) ** (i - 1) for i in J)
    member_strides = [(k + 1) ** (i - 1) for i in J]
    corner = [
        ((-1.0) ** (j - bits.bit_count()), sum(member_strides[p] for p in range(j) if bits >> p & 1))
        for bits in range(2**j)
    ]
    by_top_count: dict[int, list[float]] = {}
    for bits in range(2 ** len(outside)):
        h = bits.bit_count()
        off = base + sum(k * (k + 1) ** (outside[p] - 1) for p in range(len(outside)) if bits >> p & 1)
        delta = math.fsum(sign * v.values[off + c] for sign, c in corner)
        by_top_count.setdefault(h, []).append(delta)
    return math.fsum(
        float(Fraction(math.factorial(n - j - h) * math.factorial(h), math.factorial(n - j + 1)))
        * math.fsum(deltas)
        for h, deltas in sorted(by_top_count.items())
    )


@dataclass
class IndexReport:
    """Importance vector and interaction map for one game."""

    target: str
    importance: dict[int, float]
    interactions: dict[Coalition, float]
    method: str
    max_order: int
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "target": self.target,
            "method": self.method,
            "max_order": self.max_order,
            "importance": [self.importance[i] for i in sorted(self.importance)],
            "interactions": {
                "+".join(map(str, T)): val for T, val in self.interactions.items()
            },
            "elapsed": self.elapsed,
        }


def interaction_all_upto(
    v: MultichoiceGame,
    m: int,
    method: str = "closed_form",
    limit_bits: int | None = None,
) -> IndexReport:
    """All interactions of order 1..m under one method.

    Singleton rows double as the importance vector.  ``method`` is one of
    closed_form, derivative_sum, recursive, cellsum.
    """
    if not 1 <= m <= v.n:
        raise ValueError(f"max order {m} outside 1..{v.n}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if method == "cellsum":
        from .choquet import interaction_cellsum

        compute = lambda T: interaction_cellsum(v, T, limit_bits)
    elif method == "derivative_sum":
        compute = lambda T: interaction_via_derivatives(v, T, limit_bits)
    elif method == "recursive":
        compute = lambda T: interaction_recursive(v, T)
    else:
        compute = lambda T: interaction(v, T, limit_bits)

    start = time.perf_counter()
    interactions: dict[Coalition, float] = {}
    for size in range(1, m + 1):
        for T in combinations(range(1, v.n + 1), size):
            interactions[T] = compute(T)
    imp = {T[0]: val for T, val in interactions.items() if len(T) == 1}
    target = v.meta.get("name") or f"game(n={v.n},k={v.k})"
    return IndexReport(
        target=target,
        importance=imp,
        interactions=interactions,
        method=method,
        max_order=m,
        elapsed=time.perf_counter() - start,
    )
