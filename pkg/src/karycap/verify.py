"""Executable axiom suite and combinatorial identity checks.

Each axiom of the interaction index (linearity, null attribute,
increment invariance, symmetry, efficiency, recursion) is turned into a
seeded randomized check: draw games, build the transformed partner the
axiom talks about, and compare both sides of its equation numerically.
Reports collect every violation above tolerance, so a passing report
means the whole trial batch stayed within bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .game import (
    MultichoiceGame,
    add_games,
    check_table_size,
    members_tuple,
    permute_attributes,
    random_game,
    restrict_absent,
    restrict_present_top,
)
from .indices import importance, interaction

AXIOMS = ("L", "N", "I", "S", "E", "R")

#: Largest coalition size exercised per trial.
MAX_ORDER = 3


@dataclass
class Failure:
    seed: int
    subject: tuple
    lhs: float
    rhs: float
    gap: float


@dataclass
class VerificationReport:
    axiom: str
    trials: int
    failures: list[Failure] = field(default_factory=list)
    max_gap: float = 0.0
    passed: bool = True
    note: str = ""

    def record(self, tol: float, seed: int, subject: tuple, lhs: float, rhs: float) -> None:
        gap = abs(lhs - rhs)
        self.max_gap = max(self.max_gap, gap)
        if gap > tol:
            self.failures.append(Failure(seed, subject, lhs, rhs, gap))
            self.passed = False

    def as_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "trials": self.trials,
            "max_gap": self.max_gap,
            "passed": self.passed,
            "note": self.note,
            "failures": [
                {
                    "seed": f.seed,
                    "subject": list(f.subject),
                    "lhs": f.lhs,
                    "rhs": f.rhs,
                    "gap": f.gap,
                }
                for f in self.failures
            ],
        }


def make_null_extension(
    v: MultichoiceGame, position: int, limit_bits: int | None = None
) -> MultichoiceGame:
    """Insert an attribute at ``position`` (1-based) that never matters.

    The new game ignores the inserted attribute's level entirely, so its
    importance and every interaction involving it must vanish.
    """
    if not 1 <= position <= v.n + 1:
        raise ValueError(f"position {position} outside 1..{v.n + 1}")
    check_table_size(v.n + 1, v.k, limit_bits)
    axis = v.n + 1 - position  # axis of the new attribute in the extended grid
    expanded = np.expand_dims(v.grid(), axis=axis)
    shape = list(expanded.shape)
    shape[axis] = v.k + 1
    vals = np.ascontiguousarray(np.broadcast_to(expanded, shape)).ravel()
    return MultichoiceGame(v.n + 1, v.k, vals)


def make_invariance_partner(v: MultichoiceGame, i: int) -> MultichoiceGame:
    """Game w whose increments along attribute i are those of v shifted one level up.

    Along i: w at level 0 is 0, w at level l (1 <= l <= k-1) is
    v(l+1) - v(1), and w at level k is v(k) - v(0), all at fixed levels of
    the other attributes.  By construction the importance of i and every
    interaction of a coalition containing i agree between v and w.
    """
    if v.k < 2:
        raise ValueError("the increment-shift relations degenerate for k < 2")
    (i,) = members_tuple((i,), v.n)
    grid = v.grid()
    ax = v._axis(i)
    layers = [np.zeros_like(np.take(grid, 0, axis=ax))]
    v1 = np.take(grid, 1, axis=ax)
    for level in range(1, v.k):
        layers.append(np.take(grid, level + 1, axis=ax) - v1)
    layers.append(np.take(grid, v.k, axis=ax) - np.take(grid, 0, axis=ax))
    vals = np.ascontiguousarray(np.stack(layers, axis=ax)).ravel()
    return MultichoiceGame(v.n, v.k, vals)


def efficiency_rhs(v: MultichoiceGame) -> float:
    """Total diagonal increment: sum over x < top of v(x + 1_N) - v(x)."""
    grid = v.grid()
    lo = grid[(slice(0, v.k),) * v.n]
    hi = grid[(slice(1, v.k + 1),) * v.n]
    return math.fsum((hi - lo).ravel().tolist())


def _coalitions_upto(n: int, max_order: int, containing: int | None = None):
    for size in range(1, min(n, max_order) + 1):
        for T in combinations(range(1, n + 1), size):
            if containing is None or containing in T:
                yield T


def _drop_and_renumber(T: tuple[int, ...], i: int) -> tuple[int, ...]:
    # coalition T without i, renumbered for the game with attribute i removed
    return tuple(j - 1 if j > i else j for j in T if j != i)


def verify_axiom(
    axiom: str,
    trials: int,
    seed: int,
    n: int,
    k: int,
    tol: float = 1e-9,
    game: MultichoiceGame | None = None,
) -> VerificationReport:
    """Randomized check of one interaction-index axiom.

    Draws fresh games per trial (or reuses ``game`` as the base subject
    while still drawing random partners, permutations and positions) and
    records every equation violation above ``tol``.  Deterministic for a
    given (axiom, trials, seed, n, k, game).
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}, expected one of {AXIOMS}")
    if trials < 1:
        raise ValueError("need at least one trial")
    if game is not None:
        n, k = game.n, game.k
    if axiom == "I" and k < 2:
        raise ValueError("axiom I needs k >= 2; its relations degenerate otherwise")
    if axiom == "R" and n < 2:
        raise ValueError("axiom R needs at least two attributes")
    report = VerificationReport(axiom=axiom, trials=trials)
    if axiom == "I":
        report.note = "constructive one-attribute partner; valid under either quantifier reading"
    trial_seeds = np.random.default_rng(seed).integers(0, 2**63 - 1, size=trials)
    checker = _CHECKERS[axiom]
    for ts in trial_seeds:
        ts = int(ts)
        rng = np.random.default_rng(ts)
        v = game if game is not None else random_game(
            int(rng.integers(0, 2**31)), n, k, "general"
        )
        checker(report, rng, ts, v, tol)
    return report


def _check_linearity(report, rng, ts, v, tol):
    w = random_game(int(rng.integers(0, 2**31)), v.n, v.k, "general")
    alpha = float(rng.uniform(-2.0, 2.0))
    combo = add_games(v, w, alpha)
    for T in _coalitions_upto(v.n, MAX_ORDER):
        lhs = interaction(combo, T)
        rhs = interaction(v, T) + alpha * interaction(w, T)
        report.record(tol, ts, T, lhs, rhs)


def _check_null(report, rng, ts, v, tol):
    position = int(rng.integers(1, v.n + 2))
    ext = make_null_extension(v, position)
    for T in _coalitions_upto(ext.n, MAX_ORDER, containing=position):
        report.record(tol, ts, T, interaction(ext, T), 0.0)


def _check_invariance(report, rng, ts, v, tol):
    i = int(rng.integers(1, v.n + 1))
    w = make_invariance_partner(v, i)
    for T in _coalitions_upto(v.n, MAX_ORDER, containing=i):
        report.record(tol, ts, T, interaction(v, T), interaction(w, T))


def _check_symmetry(report, rng, ts, v, tol):
    sigma = tuple(int(s) + 1 for s in rng.permutation(v.n))
    relabeled = permute_attributes(v, sigma)
    for T in _coalitions_upto(v.n, MAX_ORDER):
        sigma_T = members_tuple((sigma[i - 1] for i in T), v.n)
        report.record(tol, ts, T, interaction(relabeled, sigma_T), interaction(v, T))


def _check_efficiency(report, rng, ts, v, tol):
    lhs = math.fsum(importance(v, i) for i in range(1, v.n + 1))
    report.record(tol, ts, ("total",), lhs, efficiency_rhs(v))


def _check_recursion(report, rng, ts, v, tol):
    for T in _coalitions_upto(v.n, MAX_ORDER):
        if len(T) < 2:
            continue
        lhs = interaction(v, T)
        for i in T:
            rest = _drop_and_renumber(T, i)
            rhs = interaction(restrict_present_top(v, i), rest) - interaction(
                restrict_absent(v, (i,)), rest
            )
            report.record(tol, ts, T + ("drop", i), lhs, rhs)


_CHECKERS = {
    "L": _check_linearity,
    "N": _check_null,
    "I": _check_invariance,
    "S": _check_symmetry,
    "E": _check_efficiency,
    "R": _check_recursion,
}


def check_lemma4(n: int) -> VerificationReport:
    """Exact identity behind the class coefficients.

    For all 0 <= a <= b < n the sum of (n-s-1)! s! / n! over s in [a, b],
    counted with binomial multiplicity choose(b-a, s-a), must equal
    (n-b-1)! a! / (n-b+a)! as an exact rational.  The b = n edge case is
    excluded: its right-hand side has no meaning (negative factorial).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    report = VerificationReport(axiom="lemma4", trials=0, note=f"n={n}, all 0<=a<=b<n")
    for b in range(n):
        for a in range(b + 1):
            lhs = sum(
                math.comb(b - a, s - a)
                * Fraction(math.factorial(n - s - 1) * math.factorial(s), math.factorial(n))
                for s in range(a, b + 1)
            )
            rhs = Fraction(
                math.factorial(n - b - 1) * math.factorial(a), math.factorial(n - b + a)
            )
            report.trials += 1
            if lhs != rhs:
                gap = abs(float(lhs - rhs))
                report.failures.append(Failure(0, (a, b), float(lhs), float(rhs), gap))
                report.max_gap = max(report.max_gap, gap)
                report.passed = False
    return report
