"""Command-line interface: ``pcng <subcommand> ...``.

Weights are read as exact rationals ("0.1" and "1/10" are the same number) and
every number is printed both as an exact fraction and as a decimal.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .closed_form import Kind, TopologySpec, Verdict, ne_predicate, social_optimum
from .core import INF, GameParams, ProfileError, StrategyProfile, build_network, player_cost, social_cost
from .dynamics import Schedule, run
from .equilibrium import BEST_RESPONSE_CAP, ResourceLimitError, enumerate_nash, enumeration_cap, is_nash
from .sweep import SWEEP_CAP, sweep_grid

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_UNKNOWN = 4


def exact(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def window(text: str) -> tuple[Fraction, Fraction]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected <lo>:<hi>, got {text!r}")
    lo, hi = exact(lo), exact(hi)
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def fmt(x) -> str:
    """Dual rendering ``p/q (decimal)``; infinities print as ``inf``."""
    if x is None:
        return "undefined"
    if x == INF:
        return "inf"
    x = Fraction(x)
    return f"{x} ({float(x):.10g})"


def _load_profile(arg: str, n: int | None) -> StrategyProfile:
    name = arg.split(":", 1)[0].lower()
    if name in {k.value for k in Kind}:
        return TopologySpec.parse(arg).profile(n)
    return StrategyProfile.from_text(Path(arg).read_text(encoding="utf-8"))


def cmd_cost(args) -> int:
    profile = StrategyProfile.from_text(Path(args.profile).read_text(encoding="utf-8"))
    params = GameParams(profile.n, args.b, args.c)
    net = build_network(profile)
    print("player\tlinks\tbetweenness\tcloseness\ttotal")
    for u in range(profile.n):
        cb = player_cost(profile, u, params, net)
        print(f"{u}\t{cb.link_cost}\t{fmt(cb.betweenness_term)}\t{fmt(cb.closeness_term)}\t{fmt(cb.total)}")
    print(f"social cost\t{fmt(social_cost(profile, params))}")
    return EXIT_OK


def cmd_optimum(args) -> int:
    report = social_optimum(GameParams(args.n, args.b, args.c))
    print("optimum\t" + ",".join(k.value for k in report.optimal_kinds))
    print(f"cost\t{fmt(report.optimal_cost)}")
    if report.boundary_flags:
        print("boundary\t" + "; ".join(report.boundary_flags))
    return EXIT_OK


def cmd_check(args) -> int:
    topology = None
    if args.file:
        profile = StrategyProfile.from_text(Path(args.file).read_text(encoding="utf-8"))
        n = profile.n
    else:
        topology = TopologySpec.parse(args.topology)
        profile = topology.profile(args.n)
        n = profile.n
    params = GameParams(n, args.b, args.c)
    status = EXIT_OK
    if args.mode in ("analytic", "both"):
        if topology is None:
            print("analytic\tunknown\tcustom profiles have no analytic result")
            verdict = Verdict.UNKNOWN
        else:
            result = ne_predicate(topology, params)
            verdict = result.verdict
            print(f"analytic\t{verdict.value}\t{result.note}")
            for h in result.binding_inequalities:
                print(f"  {h.format()}")
        if verdict is Verdict.UNKNOWN and args.mode == "analytic":
            status = EXIT_UNKNOWN
    if args.mode in ("brute", "both"):
        result = is_nash(profile, params, cap=args.max_n or BEST_RESPONSE_CAP)
        print(f"brute\t{'yes' if result.is_nash else 'no'}")
        if result.witness is not None:
            w = result.witness
            print(f"  witness: player {w.player} {sorted(w.old)} -> {sorted(w.new)} "
                  f"delta {fmt(w.delta)}")
    return status


def cmd_enumerate(args) -> int:
    params = GameParams(args.n, args.b, args.c)
    report = enumerate_nash(params, dedup_isomorphic=args.dedup,
                            cap=args.max_n or enumeration_cap(), threads=args.threads)
    text = json.dumps(report.to_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return EXIT_OK


def cmd_poa(args) -> int:
    params = GameParams(args.n, args.b, args.c)
    report = enumerate_nash(params, cap=args.max_n or enumeration_cap(), threads=args.threads)
    print(f"equilibria\t{len(report.nash_profiles)}")
    print(f"optimum\t{fmt(report.optimum_cost)}")
    print(f"poa\t{fmt(report.poa)}")
    print(f"pos\t{fmt(report.pos)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    topology = TopologySpec.parse(args.topology)
    pmap = sweep_grid(topology, args.n, args.b_range, args.c_range, args.resolution,
                      cap=args.max_n or SWEEP_CAP)
    sys.stdout.write(pmap.region_text())
    if args.out:
        csv_path, region_path = pmap.write(args.out)
        print(f"# wrote {csv_path} and {region_path}")
    stable = sum(map(sum, pmap.grid))
    print(f"# stable cells {stable}/{args.resolution ** 2}")
    return EXIT_OK


def cmd_dynamics(args) -> int:
    profile = _load_profile(args.initial, args.n)
    params = GameParams(profile.n, args.b, args.c)
    traj = run(profile, params, Schedule(args.schedule), args.max_iters, args.seed,
               cap=args.max_n or BEST_RESPONSE_CAP)
    text = traj.log()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcng", description="Payment network creation game toolkit")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    parser.add_argument("--max-n", type=int, default=None,
                        help="override the player cap (enumeration cap also via PCNG_MAX_N)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def weights(p, n=True):
        if n:
            p.add_argument("--n", type=int, required=True, help="number of players")
        p.add_argument("--b", type=exact, required=True, help="betweenness weight")
        p.add_argument("--c", type=exact, required=True, help="closeness weight")

    p = sub.add_parser("cost", help="per-player cost table of a profile file")
    p.add_argument("profile")
    weights(p, n=False)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("optimum", help="closed-form social optimum")
    weights(p)
    p.set_defaults(func=cmd_optimum)

    p = sub.add_parser("check", help="is a topology or profile a Nash equilibrium")
    p.add_argument("topology", nargs="?", help="complete|star|path|circle|biclique:r:s|custom:<file>")
    p.add_argument("--file", help="profile file (instead of a topology)")
    p.add_argument("--n", type=int)
    p.add_argument("--b", type=exact, required=True)
    p.add_argument("--c", type=exact, required=True)
    p.add_argument("--mode", choices=["analytic", "brute", "both"], default="both")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="all Nash equilibria for small n (JSON)")
    weights(p)
    p.add_argument("--dedup", action="store_true", help="one profile per isomorphism class")
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("poa", help="price of anarchy and stability by enumeration")
    weights(p)
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("sweep", help="exact stable region plus a CSV grid")
    p.add_argument("topology")
    p.add_argument("--n", type=int)
    p.add_argument("--b-range", type=window, default=(Fraction(0), Fraction(3, 2)))
    p.add_argument("--c-range", type=window, default=(Fraction(0), Fraction(3, 2)))
    p.add_argument("--resolution", type=int, default=100)
    p.add_argument("--out", help="output prefix; writes <prefix>.csv and <prefix>.region")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dynamics", help="best-response dynamics from an initial profile")
    p.add_argument("initial", help="profile file or topology name")
    p.add_argument("--n", type=int)
    p.add_argument("--b", type=exact, required=True)
    p.add_argument("--c", type=exact, required=True)
    p.add_argument("--schedule", choices=[s.value for s in Schedule], default="round-robin")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dynamics)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "check" and not (args.topology or args.file):
        parser.error("check needs a topology or --file")
    try:
        return args.func(args)
    except ProfileError as exc:
        print(f"pcng: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"pcng: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"pcng: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
