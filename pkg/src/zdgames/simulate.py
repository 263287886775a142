"""Seeded Monte Carlo play between two memory-one strategies.

Serves as the empirical oracle for the linear-algebra results: long runs of
actual play must reproduce stationary scores and enforced score relations.
Runs are deterministic given the configuration; the generator is numpy's
PCG64 seeded once per run, consumed as one uniform pair per round (alpha's
draw first), after a single draw for a random initial state if requested.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, replace

import numpy as np

from .chain import expected_scores, stationary, transition_matrix
from .errors import DegenerateRatio
from .model import StateIndex, _readonly, flatten_payoffs

RATIO_TOL = 1e-9


@dataclass(frozen=True)
class SimulationConfig:
    """Length, seed, starting state and burn-in of one run.

    ``initial_state`` is a :class:`StateIndex` or the string
    "uniform-random".  ``burn_in`` rounds are discarded from the front;
    None selects the default 1% of rounds, at least 100, capped at
    rounds - 1 so at least one round is always counted.
    """

    rounds: int
    seed: int = 42
    initial_state: object = "uniform-random"
    burn_in: int | None = None

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError(f"rounds must be at least 1, got {self.rounds}")
        if self.burn_in is not None and not 0 <= self.burn_in < self.rounds:
            raise ValueError(
                f"burn_in must lie in [0, rounds), got {self.burn_in} "
                f"with rounds={self.rounds}"
            )

    @property
    def resolved_burn_in(self):
        if self.burn_in is not None:
            return self.burn_in
        return min(max(100, self.rounds // 100), self.rounds - 1)


@dataclass(frozen=True, eq=False)
class SimulationReport:
    """Post-burn-in outcome frequencies and the scores they imply.

    The empirical scores are exactly ``state_frequencies @ payoffs``, so
    the frequency vector is the complete sufficient summary of a run.
    """

    empirical_pi_alpha: float
    empirical_pi_beta: float
    state_frequencies: np.ndarray
    rounds_counted: int


@dataclass(frozen=True)
class ComparisonReport:
    max_score_gap: float
    tv_distance: float


@dataclass(frozen=True)
class ExtortionEstimate:
    """Per-opponent empirical extortion ratio."""

    opponent: int
    seed: int
    lambda_hat: float
    empirical_pi_alpha: float
    empirical_pi_beta: float
    configured_lam: float | None


def _initial_flat(config, n, m, rng):
    start = config.initial_state
    if isinstance(start, str):
        if start != "uniform-random":
            raise ValueError(f"unknown initial state {start!r}")
        return int(rng.integers(n * m))
    if isinstance(start, StateIndex):
        if not (1 <= start.i <= n and 1 <= start.j <= m):
            raise ValueError(f"initial state {start} outside the {n}x{m} game")
        return start.flat
    raise ValueError("initial_state must be a StateIndex or 'uniform-random'")


def play(game, p, q, config):
    """Simulate ``config.rounds`` rounds of play and tally joint outcomes.

    Round 1 is the initial state; every later round samples alpha's move
    from p's row and beta's move from q's row at the current state.  Rounds
    numbered at most ``burn_in`` are discarded.
    """
    if (game.n, game.m) != (p.n, p.m) or (p.n, p.m) != (q.n, q.m):
        raise ValueError("game and strategy dimensions disagree")
    n, m = game.n, game.m
    burn_in = config.resolved_burn_in

    rng = np.random.default_rng(config.seed)
    state = _initial_flat(config, n, m, rng)

    # cumulative rows as plain lists: bisect beats vectorized sampling for
    # a chain that must be stepped sequentially anyway
    cum_p = [row.cumsum().tolist() for row in p.rows]
    cum_q = [row.cumsum().tolist() for row in q.rows]
    draws = rng.random((config.rounds - 1, 2))

    counts = [0] * (n * m)
    if burn_in == 0:
        counts[state] += 1
    for t in range(config.rounds - 1):
        u_alpha, u_beta = draws[t]
        move_a = min(bisect_right(cum_p[state], u_alpha), n - 1)
        move_b = min(bisect_right(cum_q[state], u_beta), m - 1)
        state = move_a * m + move_b
        if t + 2 > burn_in:
            counts[state] += 1

    counted = config.rounds - burn_in
    freq = np.asarray(counts, dtype=float) / counted
    wa = flatten_payoffs(game, "alpha").entries
    wb = flatten_payoffs(game, "beta").entries
    return SimulationReport(
        float(freq @ wa), float(freq @ wb), _readonly(freq), counted
    )


def compare_to_stationary(game, p, q, config):
    """Gap between one simulated run and the exact stationary quantities."""
    report = play(game, p, q, config)
    exact = expected_scores(game, p, q)
    v = stationary(transition_matrix(p, q)).v
    gap = max(
        abs(report.empirical_pi_alpha - exact.pi_alpha),
        abs(report.empirical_pi_beta - exact.pi_beta),
    )
    tv = 0.5 * float(np.abs(report.state_frequencies - v).sum())
    return ComparisonReport(gap, tv)


def verify_extortion_empirically(game, p_extort, opponents, config, lam=None, delta=0.0):
    """Empirical extortion ratios of one strategy against many opponents.

    Opponent k runs with seed ``config.seed + k`` (recorded in the
    estimate) so runs are independent yet reproducible.  The ratio is
    (empirical_pi_alpha - delta) / (empirical_pi_beta - delta).

    Raises
    ------
    DegenerateRatio
        When an empirical denominator is within 1e-9 of zero.
    """
    estimates = []
    for k, q in enumerate(opponents):
        seed = config.seed + k
        report = play(game, p_extort, q, replace(config, seed=seed))
        denominator = report.empirical_pi_beta - delta
        if abs(denominator) < RATIO_TOL:
            raise DegenerateRatio(
                f"opponent {k}: empirical pi_beta - delta = {denominator!r}"
            )
        estimates.append(
            ExtortionEstimate(
                opponent=k,
                seed=seed,
                lambda_hat=(report.empirical_pi_alpha - delta) / denominator,
                empirical_pi_alpha=report.empirical_pi_alpha,
                empirical_pi_beta=report.empirical_pi_beta,
                configured_lam=lam,
            )
        )
    return estimates
