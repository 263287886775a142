"""Command-line front end.

Subcommands::

    analyze   chain diagnostics for a game and a strategy pair
    zd        synthesize a zero-determinant strategy from coefficients
    extort    admissible factors, theta bounds and strategies (symmetric games)
    pin       fix the opponent's long-run score
    simulate  seeded Monte Carlo play
    scan      feasibility and residual grid over (lambda, theta)

Exit codes are a stable contract: 0 success, 1 infeasible or no solution,
2 degenerate input (non-unique stationary distribution, degenerate ratio),
3 I/O, schema or usage errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .chain import (
    expected_scores,
    stationary,
    transition_matrix,
    zd_feasibility_condition,
)
from .documents import load_game, load_strategy, save_strategy
from .errors import (
    DegenerateDenominator,
    DegenerateRatio,
    NoFeasiblePin,
    NonUniqueStationary,
    SchemaError,
)
from .extortion import (
    ExtortionParams,
    check_extortion_factor,
    extortion_factor_bounds,
    extortion_strategy,
    theta_max,
)
from .model import FILL_RULES, flatten_payoffs, make_strategy
from .simulate import SimulationConfig, play
from .zd import (
    ZDCoefficients,
    extortion_coefficients,
    pin_opponent_score,
    press_dyson_determinant,
    synthesize_zd_alpha,
    synthesize_zd_beta,
    verify_linear_relation,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_DEGENERATE = 2
EXIT_SCHEMA = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2, so remap."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SCHEMA, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive count, got {value}")
    return value


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative count, got {value}")
    return value


def _float_list(text):
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}")
    if not values:
        raise argparse.ArgumentTypeError("grid must contain at least one value")
    return values


def _fmt_vec(v):
    return "[" + " ".join(format(float(x), ".12g") for x in v) + "]"


def _load_expected(path, expected_player, game):
    strategy = load_strategy(path)
    if strategy.player != expected_player:
        raise SchemaError(
            f"{path}: strategy is for player {strategy.player!r}, "
            f"expected {expected_player!r}"
        )
    if (strategy.n, strategy.m) != (game.n, game.m):
        raise SchemaError(
            f"{path}: strategy is for a {strategy.n}x{strategy.m} game, "
            f"not {game.n}x{game.m}"
        )
    return strategy


def _random_opponents(player, n, m, count, seed):
    rng = np.random.default_rng(seed)
    k = n if player == "alpha" else m
    return [
        make_strategy(player, rng.dirichlet(np.ones(k), size=n * m), order="alpha-major")
        for _ in range(count)
    ]


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _print_violations(result):
    for state, value in result.violations:
        print(f"  state ({state.i},{state.j}): {value!r} outside [0, 1]")


def cmd_analyze(args):
    game = load_game(args.game)
    p = _load_expected(args.p, "alpha", game)
    q = _load_expected(args.q, "beta", game)
    nm = game.n * game.m

    P = transition_matrix(p, q)
    dist = stationary(P)
    wa = flatten_payoffs(game, "alpha").entries
    wb = flatten_payoffs(game, "beta").entries
    pi_alpha = float(dist.v @ wa)
    pi_beta = float(dist.v @ wb)
    feas = zd_feasibility_condition(P)
    d_one = press_dyson_determinant(p, q, np.ones(nm))

    kind = "symmetric" if game.is_symmetric else "asymmetric"
    print(f"game: {game.n}x{game.m} ({kind})")
    print(f"transition matrix: {nm}x{nm}")
    if nm <= 12:
        for row in P.entries:
            print("  " + _fmt_vec(row))
    print(f"stationary distribution: {_fmt_vec(dist.v)}")
    print(f"pi_alpha = {pi_alpha!r}")
    print(f"pi_beta  = {pi_beta!r}")
    verdict = "holds" if feas.holds else "fails"
    print(f"zd feasibility: {verdict} (cofactor sum {float(feas.cofactors.c.sum())!r})")
    print(f"D(p, q, 1) = {d_one!r}")

    if args.csv:
        header = ["n", "m", "pi_alpha", "pi_beta", "det_one", "zd_feasible"]
        header += [f"v{s}" for s in range(nm)]
        row = [game.n, game.m, pi_alpha, pi_beta, d_one, feas.holds]
        row += [float(x) for x in dist.v]
        _write_csv(args.csv, header, [row])
        print(f"wrote {args.csv}")
    return EXIT_OK


def cmd_zd(args):
    game = load_game(args.game)
    coeffs = ZDCoefficients(args.a, args.b, args.c)
    synthesize = synthesize_zd_alpha if args.player == "alpha" else synthesize_zd_beta
    result = synthesize(game, coeffs)

    print(f"coefficients: a={coeffs.a!r} b={coeffs.b!r} c={coeffs.c!r}")
    print(f"player: {args.player}")
    print(f"first components: {_fmt_vec(result.p1)}")
    if not result.feasible:
        print(f"infeasible: {len(result.violations)} entries outside [0, 1]")
        _print_violations(result)
        return EXIT_INFEASIBLE
    print("feasible")
    strategy = result.complete(args.fill)
    if args.out:
        save_strategy(strategy, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_extort(args):
    game = load_game(args.game)

    if args.bounds:
        bounds = extortion_factor_bounds(game)
        top = "inf" if math.isinf(bounds.lambda_max) else repr(bounds.lambda_max)
        close = ")" if math.isinf(bounds.lambda_max) else "]"
        print(f"admissible factors: [{bounds.lambda_min!r}, {top}{close}")
        print(f"feasible: {bounds.feasible}")
        return EXIT_OK

    if args.lam is None:
        raise _UsageError("--lambda is required unless --bounds is given")
    report = check_extortion_factor(game, args.lam)
    if not report.ok:
        print(f"factor {args.lam} is not admissible; violated conditions:")
        for family, i, j in report.violated:
            print(f"  {family} ({i},{j})")
        return EXIT_INFEASIBLE

    limit = theta_max(game, args.lam)
    if args.theta_max:
        print(f"theta_max = {limit!r}")
        return EXIT_OK

    if args.theta is None:
        raise _UsageError("--theta is required (or use --bounds / --theta-max)")
    result = extortion_strategy(game, ExtortionParams(args.lam, args.theta))
    if not result.feasible:
        print(f"infeasible: theta {args.theta} exceeds theta_max {limit!r}")
        _print_violations(result)
        return EXIT_INFEASIBLE

    nn = float(game.A[-1, -1])
    print(f"first components: {_fmt_vec(result.p1)}")
    print(f"enforces: pi_alpha - {nn!r} = {args.lam!r} * (pi_beta - {nn!r})")
    print(f"theta_max at this factor: {limit!r}")
    strategy = result.complete(args.fill)
    if args.out:
        save_strategy(strategy, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_pin(args):
    game = load_game(args.game)
    result, coeffs = pin_opponent_score(game, args.player, args.target)
    strategy = result.complete("uniform")

    opponent_player = "beta" if args.player == "alpha" else "alpha"
    opponents = _random_opponents(
        opponent_player, game.n, game.m, args.opponents, args.seed
    )
    pinned = []
    rows = []
    for idx, opponent in enumerate(opponents):
        if args.player == "alpha":
            scores = expected_scores(game, strategy, opponent)
            value = scores.pi_beta
        else:
            scores = expected_scores(game, opponent, strategy)
            value = scores.pi_alpha
        pinned.append(value)
        rows.append([idx, scores.pi_alpha, scores.pi_beta, abs(value - args.target)])

    deviations = [abs(x - args.target) for x in pinned]
    print(f"pinner: {args.player}, target: {args.target!r}")
    print(f"coefficients: a={coeffs.a!r} b={coeffs.b!r} c={coeffs.c!r}")
    print(f"first components: {_fmt_vec(result.p1)}")
    print(f"opponents: {args.opponents} (seed {args.seed})")
    print(f"max deviation: {max(deviations)!r}")
    print(f"score variance: {float(np.var(pinned))!r}")
    if args.report:
        _write_csv(
            args.report,
            ["opponent", "pi_alpha", "pi_beta", "deviation"],
            rows,
        )
        print(f"wrote {args.report}")
    if args.out:
        save_strategy(strategy, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_simulate(args):
    game = load_game(args.game)
    p = _load_expected(args.p, "alpha", game)
    q = _load_expected(args.q, "beta", game)
    config = SimulationConfig(rounds=args.rounds, seed=args.seed, burn_in=args.burn_in)
    report = play(game, p, q, config)

    print(f"rounds: {args.rounds} (counted {report.rounds_counted}), seed {args.seed}")
    print(f"empirical pi_alpha = {report.empirical_pi_alpha!r}")
    print(f"empirical pi_beta  = {report.empirical_pi_beta!r}")
    print(f"state frequencies: {_fmt_vec(report.state_frequencies)}")

    tv = None
    try:
        v = stationary(transition_matrix(p, q)).v
        tv = 0.5 * float(np.abs(report.state_frequencies - v).sum())
        print(f"tv distance to exact stationary: {tv!r}")
    except NonUniqueStationary:
        print("exact stationary unavailable (non-unique); skipping comparison")

    lambda_hat = None
    if args.lam is not None:
        denominator = report.empirical_pi_beta - args.delta
        if abs(denominator) < 1e-9:
            raise DegenerateRatio(
                f"empirical pi_beta - delta = {denominator!r}; ratio undefined"
            )
        lambda_hat = (report.empirical_pi_alpha - args.delta) / denominator
        print(f"lambda_hat = {lambda_hat!r} (configured lambda {args.lam!r})")

    if args.csv:
        header = [
            "seed",
            "rounds",
            "rounds_counted",
            "empirical_pi_alpha",
            "empirical_pi_beta",
            "tv_distance",
            "lambda_hat",
        ]
        row = [
            args.seed,
            args.rounds,
            report.rounds_counted,
            report.empirical_pi_alpha,
            report.empirical_pi_beta,
            "" if tv is None else tv,
            "" if lambda_hat is None else lambda_hat,
        ]
        _write_csv(args.csv, header, [row])
        print(f"wrote {args.csv}")
    return EXIT_OK


def cmd_scan(args):
    game = load_game(args.game)
    if any(lam < 1.0 for lam in args.lambda_grid):
        raise _UsageError("lambda grid values must be at least 1")
    if args.theta_grid is not None and any(t <= 0.0 for t in args.theta_grid):
        raise _UsageError("theta grid values must be positive")

    opponents = _random_opponents("beta", game.n, game.m, args.opponents, args.seed)
    nn = float(game.A[-1, -1])

    rows = []
    for lam in args.lambda_grid:
        report = check_extortion_factor(game, lam)
        limit = theta_max(game, lam) if report.ok else None
        limit_text = "" if limit is None else limit
        if args.theta_grid is None:
            rows.append([lam, "", report.ok, limit_text, report.ok, ""])
            continue
        for theta in args.theta_grid:
            feasible = False
            residual = ""
            if report.ok:
                result = extortion_strategy(game, ExtortionParams(lam, theta))
                feasible = result.feasible
                if feasible:
                    strategy = result.complete("uniform")
                    coeffs = extortion_coefficients(lam, nn, theta)
                    residual = max(
                        verify_linear_relation(game, strategy, opp, coeffs).residual
                        for opp in opponents
                    )
            rows.append([lam, theta, report.ok, limit_text, feasible, residual])

    _write_csv(
        args.out,
        ["lambda", "theta", "lambda_ok", "theta_max", "feasible", "max_residual"],
        rows,
    )
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def _build_parser():
    parser = _Parser(prog="zdgames", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="chain diagnostics for a strategy pair")
    analyze.add_argument("game")
    analyze.add_argument("p", help="alpha strategy file")
    analyze.add_argument("q", help="beta strategy file")
    analyze.add_argument("--csv", help="write scalar results to this CSV file")
    analyze.set_defaults(run=cmd_analyze)

    zd = commands.add_parser("zd", help="synthesize a ZD strategy from (a, b, c)")
    zd.add_argument("game")
    zd.add_argument("a", type=float)
    zd.add_argument("b", type=float)
    zd.add_argument("c", type=float)
    zd.add_argument("--player", choices=["alpha", "beta"], default="alpha")
    zd.add_argument("--fill", choices=list(FILL_RULES), default="uniform")
    zd.add_argument("--out", help="write the strategy document here")
    zd.set_defaults(run=cmd_zd)

    extort = commands.add_parser("extort", help="extortion tools for symmetric games")
    extort.add_argument("game")
    extort.add_argument("--lambda", dest="lam", type=float, default=None)
    extort.add_argument("--theta", type=float, default=None)
    extort.add_argument("--theta-max", action="store_true", dest="theta_max")
    extort.add_argument("--bounds", action="store_true")
    extort.add_argument("--fill", choices=list(FILL_RULES), default="uniform")
    extort.add_argument("--out", help="write the strategy document here")
    extort.set_defaults(run=cmd_extort)

    pin = commands.add_parser("pin", help="pin the opponent's long-run score")
    pin.add_argument("game")
    pin.add_argument("--target", type=float, required=True)
    pin.add_argument("--player", choices=["alpha", "beta"], default="alpha")
    pin.add_argument("--opponents", type=_positive_int, default=100)
    pin.add_argument("--seed", type=int, default=42)
    pin.add_argument("--out", help="write the strategy document here")
    pin.add_argument("--report", help="write per-opponent verification rows here")
    pin.set_defaults(run=cmd_pin)

    simulate = commands.add_parser("simulate", help="seeded Monte Carlo play")
    simulate.add_argument("game")
    simulate.add_argument("p", help="alpha strategy file")
    simulate.add_argument("q", help="beta strategy file")
    simulate.add_argument("--rounds", type=_positive_int, required=True)
    simulate.add_argument("--seed", type=int, default=42)
    simulate.add_argument("--burn-in", dest="burn_in", type=_nonnegative_int, default=None)
    simulate.add_argument("--lambda", dest="lam", type=float, default=None)
    simulate.add_argument("--delta", type=float, default=0.0)
    simulate.add_argument("--csv", help="write the report row to this CSV file")
    simulate.set_defaults(run=cmd_simulate)

    scan = commands.add_parser("scan", help="grid scan of extortion feasibility")
    scan.add_argument("game")
    scan.add_argument("--lambda-grid", dest="lambda_grid", type=_float_list, required=True)
    scan.add_argument("--theta-grid", dest="theta_grid", type=_float_list, default=None)
    scan.add_argument("--out", required=True)
    scan.add_argument("--seed", type=int, default=42)
    scan.add_argument("--opponents", type=_positive_int, default=20)
    scan.set_defaults(run=cmd_scan)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (NonUniqueStationary, DegenerateDenominator, DegenerateRatio) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NoFeasiblePin as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
