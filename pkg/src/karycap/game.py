"""Multilevel cooperative games on the grid {0,...,k}^N.

A game assigns a real value to every profile of attribute levels and maps
the all-zeros profile to 0.  Attributes are numbered 1..n.  Value tables
are stored densely in little-endian mixed-radix order: attribute 1 is the
least significant digit, so profile x has flat index sum(x[i] * (k+1)**i).

Games are immutable once built; every operation here is a pure function,
so games can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

LatticePoint = tuple[int, ...]
Coalition = tuple[int, ...]

#: Default cap on table size: (k+1)**n must fit in this many bits.
DEFAULT_TABLE_BITS = 28

GAME_KINDS = ("general", "monotone", "additive")


class SizeLimitError(ValueError):
    """Requested object would exceed the configured exponential-size guard."""


def check_table_size(n: int, k: int, limit_bits: int | None = None) -> None:
    """Fail fast if a dense (k+1)**n table would blow the size budget."""
    bits = limit_bits if limit_bits is not None else DEFAULT_TABLE_BITS
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if n * math.log2(k + 1) > bits:
        raise SizeLimitError(
            f"table over {{0..{k}}}^{n} has (k+1)^n = {(k + 1) ** n} entries, "
            f"beyond the {bits}-bit limit; raise the limit explicitly if intended"
        )


def encode_index(x: Sequence[int], n: int, k: int) -> int:
    """Flat table index of profile x: little-endian base (k+1) digits."""
    if len(x) != n:
        raise ValueError(f"profile has {len(x)} components, expected {n}")
    idx = 0
    for i in range(n - 1, -1, -1):
        xi = x[i]
        if not 0 <= xi <= k:
            raise ValueError(f"component {i + 1} is {xi}, outside [0, {k}]")
        idx = idx * (k + 1) + xi
    return idx


def decode_index(idx: int, n: int, k: int) -> LatticePoint:
    """Inverse of :func:`encode_index`."""
    if not 0 <= idx < (k + 1) ** n:
        raise ValueError(f"index {idx} out of range for n={n}, k={k}")
    out = []
    for _ in range(n):
        out.append(idx % (k + 1))
        idx //= k + 1
    return tuple(out)


def support(x: Sequence[int]) -> Coalition:
    """Attributes sitting strictly above level 0, as 1-based indices."""
    return tuple(i + 1 for i, xi in enumerate(x) if xi > 0)


def kernel(x: Sequence[int], k: int) -> Coalition:
    """Attributes sitting at the top level k, as 1-based indices."""
    return tuple(i + 1 for i, xi in enumerate(x) if xi == k)


def members_tuple(T: Iterable[int], n: int) -> Coalition:
    """Validate a coalition: distinct 1-based attribute indices, sorted."""
    members = tuple(sorted(int(i) for i in T))
    if any(i < 1 or i > n for i in members):
        raise ValueError(f"coalition {members} has indices outside 1..{n}")
    if len(set(members)) != len(members):
        raise ValueError(f"coalition {members} has duplicate members")
    return members


@dataclass(frozen=True, eq=False)
class MultichoiceGame:
    """Dense game table over {0..k}^n with v(0,...,0) = 0.

    ``values`` is a read-only float64 array of length (k+1)**n in canonical
    little-endian order.  ``meta`` carries provenance such as the original
    per-attribute level counts of a clamp-extended game or the member list
    behind a macro attribute; it never affects equality of the table.
    """

    n: int
    k: int
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise ValueError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        vals = np.array(self.values, dtype=np.float64)  # private copy, then frozen
        if vals.shape != ((self.k + 1) ** self.n,):
            raise ValueError(
                f"table length {vals.size} does not match (k+1)^n = "
                f"{(self.k + 1) ** self.n}"
            )
        if vals[0] != 0.0:
            raise ValueError(f"value at the zero profile must be 0, got {vals[0]!r}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(
        cls, n: int, k: int, values: Sequence[float], meta: dict | None = None
    ) -> "MultichoiceGame":
        return cls(n, k, np.asarray(values, dtype=np.float64), meta or {})

    @classmethod
    def from_function(
        cls, n: int, k: int, fn: Callable[[LatticePoint], float]
    ) -> "MultichoiceGame":
        """Tabulate fn over the whole grid; fn must vanish at the zero profile."""
        check_table_size(n, k)
        vals = np.array(
            [fn(decode_index(i, n, k)) for i in range((k + 1) ** n)], dtype=np.float64
        )
        return cls(n, k, vals)

    def value(self, x: Sequence[int]) -> float:
        """Game value at profile x."""
        return float(self.values[encode_index(x, self.n, self.k)])

    def points(self) -> Iterable[LatticePoint]:
        """All lattice profiles in canonical table order."""
        for i in range((self.k + 1) ** self.n):
            yield decode_index(i, self.n, self.k)

    def grid(self) -> np.ndarray:
        """Table reshaped so that axis (n-1-i) indexes the level of attribute i+1."""
        return self.values.reshape((self.k + 1,) * self.n)

    def _axis(self, i: int) -> int:
        # grid() axis that carries 1-based attribute i
        return self.n - i


def min_game(n: int, k: int) -> MultichoiceGame:
    """v(x) = min_i x_i; the standard fully conjunctive example."""
    return MultichoiceGame.from_function(n, k, lambda x: float(min(x)))


def discrete_derivative(v: MultichoiceGame, T: Iterable[int], x: Sequence[int]) -> float:
    """Alternating corner sum of v over the unit cell [x, x + 1_T].

    Requires x_i < k for every i in T; equals the iterated one-step
    difference along the attributes of T.
    """
    members = members_tuple(T, v.n)
    if not members:
        raise ValueError("T must be nonempty")
    if len(x) != v.n:
        raise ValueError(f"profile has {len(x)} components, expected {v.n}")
    for i in members:
        if x[i - 1] >= v.k:
            raise ValueError(f"attribute {i} already at top level in {tuple(x)}")
    base = encode_index(x, v.n, v.k)
    t = len(members)
    strides = [(v.k + 1) ** (i - 1) for i in members]
    terms = []
    for bits in range(2**t):
        a = bits.bit_count()
        off = sum(strides[j] for j in range(t) if bits >> j & 1)
        terms.append((-1.0) ** (t - a) * float(v.values[base + off]))
    return math.fsum(terms)


def extend_heterogeneous(
    raw_values: Sequence[float],
    k_list: Sequence[int],
    k: int | None = None,
    limit_bits: int | None = None,
) -> MultichoiceGame:
    """Unify a game with per-attribute level counts to a common k.

    ``raw_values`` covers the product of {0..k_i} in little-endian
    mixed-radix order.  Levels above k_i are clamped to k_i, i.e. the top
    level of a short attribute is duplicated upward.  ``k`` defaults to
    max(k_list) and may be set higher.
    """
    k_list = [int(ki) for ki in k_list]
    n = len(k_list)
    if n < 1 or any(ki < 1 for ki in k_list):
        raise ValueError(f"per-attribute level counts must be >= 1, got {k_list}")
    kmax = max(k_list)
    if k is None:
        k = kmax
    elif k < kmax:
        raise ValueError(f"target k={k} below max(k_list)={kmax}")
    check_table_size(n, k, limit_bits)
    expected = math.prod(ki + 1 for ki in k_list)
    raw = np.asarray(raw_values, dtype=np.float64)
    if raw.shape != (expected,):
        raise ValueError(f"raw table length {raw.size}, expected {expected}")
    if raw[0] != 0.0:
        raise ValueError(f"raw value at the zero profile must be 0, got {raw[0]!r}")

    size = (k + 1) ** n
    src = np.zeros(size, dtype=np.int64)
    stride_raw = 1
    for i, ki in enumerate(k_list):
        level = (np.arange(size, dtype=np.int64) // (k + 1) ** i) % (k + 1)
        src += np.minimum(level, ki) * stride_raw
        stride_raw *= ki + 1
    meta = {"k_list": tuple(k_list)} if (k_list != [k] * n) else {}
    return MultichoiceGame(n, k, raw[src], meta)


def is_kary_capacity(v: MultichoiceGame, tol: float = 1e-9) -> bool:
    """True iff v is nondecreasing along every +1 step (within tol) and v(top) = 1."""
    grid = v.grid()
    for ax in range(v.n):
        steps = np.diff(grid, axis=ax)
        if steps.size and steps.min() < -tol:
            return False
    return bool(abs(v.values[-1] - 1.0) <= tol)


def restrict_absent(v: MultichoiceGame, S: Iterable[int]) -> MultichoiceGame:
    """Sub-game on N without S, with every attribute of S frozen at level 0."""
    members = members_tuple(S, v.n)
    if len(members) == v.n:
        raise ValueError("cannot freeze every attribute; S must be a proper subset")
    if not members:
        return MultichoiceGame(v.n, v.k, v.values)
    absent = set(members)
    index = tuple(0 if (v.n - ax) in absent else slice(None) for ax in range(v.n))
    vals = np.ascontiguousarray(v.grid()[index]).ravel()
    return MultichoiceGame(v.n - len(members), v.k, vals)


def restrict_present_top(v: MultichoiceGame, i: int) -> MultichoiceGame:
    """Sub-game on N without i, with i pinned at its top level.

    Values are shifted so the zero profile of the restriction maps to 0.
    """
    if v.n < 2:
        raise ValueError("need at least two attributes to restrict one away")
    (i,) = members_tuple((i,), v.n)
    sliced = np.ascontiguousarray(np.take(v.grid(), v.k, axis=v._axis(i))).ravel()
    return MultichoiceGame(v.n - 1, v.k, sliced - sliced[0])


def reduce_group(
    v: MultichoiceGame, T: Iterable[int], A: Iterable[int]
) -> MultichoiceGame:
    """Collapse A into one macro attribute, freezing T without A at level 0.

    The result lives on the attributes outside T (keeping their relative
    order) plus the macro attribute appended last; the macro level moves
    every member of A in lockstep.  The original members of A are recorded
    in ``meta['macro_members']``.
    """
    t_members = members_tuple(T, v.n)
    a_members = members_tuple(A, v.n)
    if not a_members:
        raise ValueError("A must be nonempty")
    if not set(a_members) <= set(t_members):
        raise ValueError(f"A={a_members} is not contained in T={t_members}")
    kept = [i for i in range(1, v.n + 1) if i not in set(t_members)]
    grid = v.grid()
    zero_set = set(t_members) - set(a_members)
    a_set = set(a_members)
    slices = []
    for level in range(v.k + 1):
        index = []
        for ax in range(v.n):
            attr = v.n - ax
            if attr in a_set:
                index.append(level)
            elif attr in zero_set:
                index.append(0)
            else:
                index.append(slice(None))
        slices.append(np.ascontiguousarray(grid[tuple(index)]).ravel())
    vals = np.concatenate(slices)
    meta = {"macro_members": a_members, "kept": tuple(kept)}
    return MultichoiceGame(len(kept) + 1, v.k, vals, meta)


def permute_attributes(v: MultichoiceGame, sigma: Sequence[int]) -> MultichoiceGame:
    """Relabelled game w with w(sigma(x)) = v(x).

    ``sigma[i-1]`` is the new 1-based index of attribute i, so the level
    that v reads at attribute i is read by w at attribute sigma(i).
    """
    if sorted(sigma) != list(range(1, v.n + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{v.n}")
    axes = [0] * v.n
    for p in range(v.n):  # 0-based old attribute p lands at sigma[p]-1
        axes[v.n - 1 - (sigma[p] - 1)] = v.n - 1 - p
    vals = np.ascontiguousarray(v.grid().transpose(axes)).ravel()
    return MultichoiceGame(v.n, v.k, vals)


def add_games(v: MultichoiceGame, w: MultichoiceGame, alpha: float = 1.0) -> MultichoiceGame:
    """Pointwise combination v + alpha * w on a common grid."""
    if (v.n, v.k) != (w.n, w.k):
        raise ValueError("games live on different grids")
    return MultichoiceGame(v.n, v.k, v.values + alpha * w.values)


def random_game(
    seed: int,
    n: int,
    k: int,
    kind: str = "general",
    limit_bits: int | None = None,
) -> MultichoiceGame:
    """Seeded random game; identical seeds give identical tables.

    ``general`` draws i.i.d. uniform values on [-1, 1).  ``monotone``
    accumulates nonnegative increments over the grid and rescales to a
    top value of exactly 1, so the result is always a k-ary capacity.
    ``additive`` draws per-attribute weights w_i on [0, 1) and sets
    v(x) = sum_i w_i * x_i.
    """
    if kind not in GAME_KINDS:
        raise ValueError(f"kind must be one of {GAME_KINDS}, got {kind!r}")
    check_table_size(n, k, limit_bits)
    rng = np.random.default_rng(seed)
    size = (k + 1) ** n
    if kind == "general":
        vals = rng.uniform(-1.0, 1.0, size)
        vals[0] = 0.0
    elif kind == "monotone":
        inc = rng.uniform(0.0, 1.0, size)
        inc[0] = 0.0
        grid = inc.reshape((k + 1,) * n)
        for ax in range(n):
            grid = np.cumsum(grid, axis=ax)
        vals = grid.ravel()
        vals = vals / vals[-1]
    else:  # additive
        weights = rng.uniform(0.0, 1.0, n)
        vals = np.zeros(size)
        for i in range(n):
            level = (np.arange(size) // (k + 1) ** i) % (k + 1)
            vals += weights[i] * level
    return MultichoiceGame(n, k, vals, {"seed": int(seed), "kind": kind})
