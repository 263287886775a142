"""Extortion in symmetric games with any number of strategies.

With the offset fixed at the mutual-full-noncooperation payoff a_nn, an
extortionate player demands

    pi_alpha - a_nn = lam * (pi_beta - a_nn),    lam >= 1.

Whether a factor lam is admissible reduces to sign conditions on the
brackets E_ij = (a_ij - a_nn) - lam * (a_ji - a_nn): the first-row family
needs E_1j <= 0 (those brackets sit on top of probability 1 and must not
push entries above 1), while rows i >= 2 need E_ij >= 0 (they are bare
probabilities).  Each bracket is affine in lam, so the admissible set is an
interval, and for a fixed admissible lam every strategy entry is affine in
the scale theta, giving a closed-form largest feasible theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .zd import _synthesis_result

CONDITION_TOL = 1e-12

FIRST_ROW = "first-row"
INTERIOR = "interior"
LAST_ROW = "last-row"


@dataclass(frozen=True)
class ExtortionParams:
    """Extortion factor ``lam`` >= 1, scale ``theta`` > 0, optional offset.

    ``delta`` defaults to None, meaning the game's a_nn; anything else is
    rejected by :func:`extortion_strategy` (use the coefficient route in
    :mod:`zdgames.zd` for arbitrary offsets).
    """

    lam: float
    theta: float
    delta: float | None = None

    def __post_init__(self):
        if self.lam < 1.0:
            raise ValueError(f"extortion factor must be at least 1, got {self.lam}")
        if self.theta <= 0.0:
            raise ValueError(f"scale theta must be positive, got {self.theta}")


@dataclass(frozen=True)
class FactorBounds:
    """Admissible extortion factors as the interval [lambda_min, lambda_max].

    ``lambda_min`` is at least 1; ``lambda_max`` may be ``math.inf``.
    ``feasible`` is False when the interval is empty or some condition fails
    for every lam.
    """

    lambda_min: float
    lambda_max: float
    feasible: bool


@dataclass(frozen=True)
class ConditionReport:
    """Admissibility verdict with the violated condition ids.

    Ids are (family, i, j) triples naming the bracket E_ij that failed;
    family is "first-row" (E_1j <= 0), "interior" (rows 2..n-1, E_ij >= 0)
    or "last-row" (E_nj >= 0, j < n).  An "interior" violation at i == j
    means the diagonal payoff a_ii exceeds a_nn, which rules out every
    lam > 1 on its own.
    """

    ok: bool
    violated: tuple


def _require_symmetric(game):
    if not game.is_symmetric:
        raise ValueError("extortion analysis requires a symmetric game")
    return game.A


def _require_normalized(A):
    # the condition derivation assumes a_11 >= a_nn
    if A[0, 0] < A[-1, -1]:
        raise ValueError(
            f"expected a_11 >= a_nn, got a_11={A[0, 0]} < a_nn={A[-1, -1]}; "
            "relabel the strategies first"
        )


def _conditions(A, lam):
    """Yield (condition id, bracket value, required sign) for all families."""
    n = A.shape[0]
    nn = A[-1, -1]

    def bracket(i, j):
        return (A[i - 1, j - 1] - nn) - lam * (A[j - 1, i - 1] - nn)

    for j in range(2, n + 1):
        yield (FIRST_ROW, 1, j), bracket(1, j), -1
    for i in range(2, n):
        for j in range(1, n + 1):
            yield (INTERIOR, i, j), bracket(i, j), +1
    for j in range(1, n):
        yield (LAST_ROW, n, j), bracket(n, j), +1


def check_extortion_factor(game, lam):
    """Evaluate all admissibility conditions for the factor ``lam``."""
    A = _require_symmetric(game)
    _require_normalized(A)
    violated = []
    for cond_id, value, sign in _conditions(A, lam):
        if sign < 0:
            if value > CONDITION_TOL:
                violated.append(cond_id)
        elif value < -CONDITION_TOL:
            violated.append(cond_id)
    return ConditionReport(not violated, tuple(violated))


def extortion_factor_bounds(game):
    """Intersect the affine-in-lam conditions with [1, inf).

    Each bracket u - lam*w (u = a_ij - a_nn, w = a_ji - a_nn) contributes a
    half-line of admissible lam; a zero w with the wrong-signed u rules out
    every factor.
    """
    A = _require_symmetric(game)
    _require_normalized(A)
    lo = 1.0
    hi = math.inf
    dead = False
    for (_, i, j), _, sign in _conditions(A, 0.0):
        u = A[i - 1, j - 1] - A[-1, -1]
        w = A[j - 1, i - 1] - A[-1, -1]
        if sign < 0:
            # u - lam*w <= 0
            if w > 0.0:
                lo = max(lo, u / w)
            elif w < 0.0:
                hi = min(hi, u / w)
            elif u > CONDITION_TOL:
                dead = True
        else:
            # u - lam*w >= 0
            if w > 0.0:
                hi = min(hi, u / w)
            elif w < 0.0:
                lo = max(lo, u / w)
            elif u < -CONDITION_TOL:
                dead = True
    feasible = not dead and lo <= hi + CONDITION_TOL
    return FactorBounds(float(lo), float(hi), bool(feasible))


def extortion_strategy(game, params):
    """First components of the extortionate strategy, entry by entry.

    Built directly from the bracket formulas (p1[s(1,1)] = 1 - theta*(lam-1)
    *(a_11 - a_nn), first-row entries 1 + theta*E_1j, remaining entries
    theta*E_ij, and p1[s(n,n)] = 0) rather than through the coefficient
    route, so the two constructions can be checked against each other.
    """
    A = _require_symmetric(game)
    n = game.n
    nn = A[-1, -1]
    if params.delta is not None and params.delta != nn:
        raise ValueError(
            f"offset is fixed to a_nn={nn} here; synthesize via extortion_coefficients "
            f"for delta={params.delta}"
        )
    lam, theta = params.lam, params.theta
    p1 = np.empty(n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            bracket = (A[i - 1, j - 1] - nn) - lam * (A[j - 1, i - 1] - nn)
            s = (i - 1) * n + (j - 1)
            if i == 1 and j == 1:
                p1[s] = 1.0 - theta * (lam - 1.0) * (A[0, 0] - nn)
            elif i == 1:
                p1[s] = 1.0 + theta * bracket
            elif i == n and j == n:
                p1[s] = 0.0
            else:
                p1[s] = theta * bracket
    return _synthesis_result("alpha", n, n, p1)


def theta_max(game, lam):
    """Largest scale theta keeping every strategy entry inside [0, 1].

    Each entry is affine in theta, so the bound is the minimum over binding
    constraints: the (1,1) entry binds at 1/((lam-1)*(a_11 - a_nn)), a
    negative first-row bracket E at 1/(-E), and a positive bracket in rows
    i >= 2 at 1/E.  Returns ``math.inf`` when nothing binds.

    Raises
    ------
    ValueError
        If ``lam`` is not admissible for the game.
    """
    report = check_extortion_factor(game, lam)
    if not report.ok:
        raise ValueError(
            f"factor {lam} is not admissible ({len(report.violated)} conditions fail)"
        )
    A = game.A
    nn = A[-1, -1]
    bounds = []
    g11 = (lam - 1.0) * (A[0, 0] - nn)
    if g11 < -CONDITION_TOL:
        return 0.0
    if g11 > CONDITION_TOL:
        bounds.append(1.0 / g11)
    for (family, _, _), value, _ in _conditions(A, lam):
        if family == FIRST_ROW:
            if value < -CONDITION_TOL:
                bounds.append(1.0 / -value)
        elif value > CONDITION_TOL:
            bounds.append(1.0 / value)
    return float(min(bounds, default=math.inf))


def chicken_extortion(r, lam, theta):
    """Closed-form extortion strategy for the chicken family.

    Returns the four first components (against states (1,1), (1,2), (2,1),
    (2,2)) of the factor-``lam`` extortioner in ``chicken_family(r)``:

        (1 - theta*(lam - 1),
         1 - theta*((lam + 1)*r + lam - 1),
         theta*(1 + r - lam*(1 - r)),
         0)
    """
    if r <= 0:
        raise ValueError(f"profit and loss ratio must be positive, got {r}")
    if theta <= 0.0:
        raise ValueError(f"scale theta must be positive, got {theta}")
    if lam < 1.0:
        raise ValueError(f"extortion factor must be at least 1, got {lam}")
    if r < 1.0 and lam > (1.0 + r) / (1.0 - r) + CONDITION_TOL:
        raise ValueError(
            f"factor {lam} exceeds the admissible maximum {(1.0 + r) / (1.0 - r)} "
            f"at r={r}"
        )
    return np.array(
        [
            1.0 - theta * (lam - 1.0),
            1.0 - theta * ((lam + 1.0) * r + lam - 1.0),
            theta * (1.0 + r - lam * (1.0 - r)),
            0.0,
        ]
    )


def n2_conditions(game, lam):
    """Standalone two-strategy admissibility test.

    True iff a_12 - a_22 - lam*(a_21 - a_22) <= 0 and
    a_21 - a_22 - lam*(a_12 - a_22) >= 0 (tolerance 1e-12); agrees with
    :func:`check_extortion_factor` on every symmetric 2x2 game.
    """
    A = _require_symmetric(game)
    if game.n != 2:
        raise ValueError(f"two-strategy test on an {game.n}x{game.n} game")
    nn = A[1, 1]
    first = (A[0, 1] - nn) - lam * (A[1, 0] - nn)
    last = (A[1, 0] - nn) - lam * (A[0, 1] - nn)
    return bool(first <= CONDITION_TOL and last >= -CONDITION_TOL)
