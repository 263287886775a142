"""Zero-determinant strategy machinery.

A memory-one player can force a linear relation

    a * pi_alpha + b * pi_beta + c = 0

between the two long-run scores by choosing first-component probabilities
whose unilateral column equals a*omega_alpha + b*omega_beta + c*1.  The key
object is the Press-Dyson style determinant D(p, q, f): column operations
turn P - I into a matrix whose column at state (alpha_1, beta_2) is alpha's
unilateral column and whose column at (alpha_1, beta_1) is beta's; replacing
the final column by an arbitrary vector f then gives

    D(p, q, f) / D(p, q, 1) = (v . f) / (v . 1)

whenever the denominator is nonzero, because the column operations leave the
cofactors of the final column (a scaled copy of the stationary vector v)
untouched.  Setting the unilateral column equal to f collapses two columns
of the determinant and forces v . f = 0, which is the score relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import expected_scores, transition_matrix
from .errors import DegenerateDenominator, NoFeasiblePin
from .model import (
    StateIndex,
    _readonly,
    complete_from_first_component,
    flatten_payoffs,
    own_move_one_indicator,
)

FEASIBILITY_TOL = 1e-12
DENOMINATOR_RTOL = 1e-12

# |coefficient scale| grid for pin searches: 2^4 down to 2^-20
_PIN_GRID = tuple(2.0 ** k for k in range(4, -21, -1))


@dataclass(frozen=True)
class ZDCoefficients:
    """Coefficients (a, b, c) of the target relation a*pi_alpha + b*pi_beta + c = 0."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a == 0.0 and self.b == 0.0 and self.c == 0.0:
            raise ValueError("coefficients must not all vanish")

    def combine(self, wa, wb):
        """The target vector a*omega_alpha + b*omega_beta + c."""
        return self.a * wa + self.b * wb + self.c


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    """Candidate first components for one player, with feasibility report.

    ``p1`` holds the synthesizing player's first-component probabilities in
    alpha-major state order (also for beta).  When every entry lies in
    [0, 1] up to 1e-12 the result is feasible, boundary values are clamped,
    and ``violations`` is empty; otherwise ``violations`` lists the
    offending (state, value) pairs and ``p1`` is left unclamped.
    """

    player: str
    n: int
    m: int
    p1: np.ndarray
    feasible: bool
    violations: tuple

    def complete(self, fill_rule="uniform"):
        """Extend to a full strategy; rejects infeasible results."""
        if not self.feasible:
            raise ValueError(
                f"cannot complete an infeasible synthesis ({len(self.violations)} "
                f"entries outside [0, 1])"
            )
        return complete_from_first_component(
            self.player, self.p1, self.n, self.m, fill_rule
        )


def _synthesis_result(player, n, m, raw):
    violations = tuple(
        (StateIndex.from_flat(s, n, m), float(raw[s]))
        for s in range(n * m)
        if raw[s] < -FEASIBILITY_TOL or raw[s] > 1.0 + FEASIBILITY_TOL
    )
    feasible = not violations
    p1 = np.clip(raw, 0.0, 1.0) if feasible else raw
    return SynthesisResult(player, n, m, _readonly(p1), feasible, violations)


def _zd_matrix(p, q, f=None):
    """P - I after the two unilateral column operations.

    Adds every column whose next alpha-move is alpha_1 into the column of
    state (alpha_1, beta_2), and every column whose next beta-move is beta_1
    into the column of (alpha_1, beta_1); both operations read the original
    columns, which is exactly the sequential elementary-operation result.
    When ``f`` is given it replaces the final column.
    """
    n, m = p.n, p.m
    if n < 2 or m < 2:
        raise ValueError("determinant construction needs at least 2 moves per player")
    P = transition_matrix(p, q).entries
    M = P - np.eye(n * m)
    out = M.copy()
    out[:, 1] = M[:, 0:m].sum(axis=1)
    out[:, 0] = M[:, 0::m].sum(axis=1)
    if f is not None:
        out[:, -1] = f
    return out


def press_dyson_determinant(p, q, f):
    """Evaluate D(p, q, f).

    Only ratios of two D values are meaningful; the sign convention is fixed
    by the column placement described in :func:`_zd_matrix`.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (p.n * p.m,):
        raise ValueError(f"f must have length {p.n * p.m}, got shape {f.shape}")
    if not np.isfinite(f).all():
        raise ValueError("f must be finite")
    return float(np.linalg.det(_zd_matrix(p, q, f)))


def score_combination(game, p, q, coeffs):
    """a*pi_alpha + b*pi_beta + c evaluated as a determinant ratio.

    Independent of the stationary solve: useful as a cross-check and for
    chains where D(p, q, 1) is available but an explicit v is not wanted.

    Raises
    ------
    DegenerateDenominator
        When |D(p, q, 1)| falls below 1e-12 times a Hadamard bound of the
        constructed matrix, i.e. the chain's fixed space is degenerate.
    """
    ones = np.ones(game.n * game.m)
    base = _zd_matrix(p, q, ones)
    d_one = float(np.linalg.det(base))
    scale = max(1.0, float(np.prod(np.linalg.norm(base, axis=0))))
    if abs(d_one) < DENOMINATOR_RTOL * scale:
        raise DegenerateDenominator(
            f"D(p, q, 1) = {d_one!r} is negligible against scale {scale!r}"
        )
    wa = flatten_payoffs(game, "alpha").entries
    wb = flatten_payoffs(game, "beta").entries
    d_f = press_dyson_determinant(p, q, coeffs.combine(wa, wb))
    return d_f / d_one


def _synthesize(game, coeffs, player):
    wa = flatten_payoffs(game, "alpha").entries
    wb = flatten_payoffs(game, "beta").entries
    delta = own_move_one_indicator(player, game.n, game.m)
    return _synthesis_result(player, game.n, game.m, delta + coeffs.combine(wa, wb))


def synthesize_zd_alpha(game, coeffs):
    """First components with which alpha enforces the coefficient relation.

    ``p1[s(i,j)] = delta_{i,1} + a*a_ij + b*b_ji + c``.  Infeasibility is
    reported in the result, never raised.
    """
    return _synthesize(game, coeffs, "alpha")


def synthesize_zd_beta(game, coeffs):
    """Beta's counterpart: ``q1[s(i,j)] = delta_{j,1} + a*a_ij + b*b_ji + c``."""
    return _synthesize(game, coeffs, "beta")


def pin_opponent_score(game, pinner, target, scale_grid=None):
    """Find coefficients with which ``pinner`` fixes the opponent's score.

    Scans coefficient magnitudes over a geometric grid (default 2^4 down to
    2^-20, positive sign first) for the single free coefficient: alpha pins
    beta with (0, b, -b*target), beta pins alpha with (a, 0, -a*target).
    Returns the first feasible synthesis together with its coefficients.

    Raises
    ------
    NoFeasiblePin
        When no grid point is feasible, which signals a target outside the
        pinnable range of the game.
    """
    if not math.isfinite(target):
        raise ValueError("target score must be finite")
    if scale_grid is None:
        scale_grid = _PIN_GRID
    synthesize = synthesize_zd_alpha if pinner == "alpha" else synthesize_zd_beta
    for magnitude in scale_grid:
        for sign in (1.0, -1.0):
            weight = sign * magnitude
            if pinner == "alpha":
                coeffs = ZDCoefficients(0.0, weight, -weight * target)
            elif pinner == "beta":
                coeffs = ZDCoefficients(weight, 0.0, -weight * target)
            else:
                raise ValueError(f"pinner must be 'alpha' or 'beta', got {pinner!r}")
            result = synthesize(game, coeffs)
            if result.feasible:
                return result, coeffs
    raise NoFeasiblePin(
        f"no feasible pin of the opponent's score at {target} "
        f"(scanned {len(scale_grid)} magnitudes, both signs)"
    )


def extortion_coefficients(lam, delta, theta):
    """Coefficients enforcing pi_alpha - delta = lam * (pi_beta - delta).

    Returns (theta, -theta*lam, -(a + b)*delta); the identity c = -(a+b)*delta
    holds exactly by construction.
    """
    if lam < 1.0:
        raise ValueError(f"extortion factor must be at least 1, got {lam}")
    if theta <= 0.0:
        raise ValueError(f"scale theta must be positive, got {theta}")
    a = theta
    b = -theta * lam
    return ZDCoefficients(a, b, -(a + b) * delta)


@dataclass(frozen=True)
class RelationCheck:
    residual: float
    holds: bool


def verify_linear_relation(game, p, q, coeffs, tol=1e-9):
    """|a*pi_alpha + b*pi_beta + c| via the stationary solve.

    Deliberately avoids the determinant path so the two computations stay
    independent cross-checks of each other.
    """
    scores = expected_scores(game, p, q)
    residual = abs(coeffs.a * scores.pi_alpha + coeffs.b * scores.pi_beta + coeffs.c)
    return RelationCheck(residual, residual < tol)
