"""Named topologies and the analytical results about them.

Each named topology has one canonical ownership orientation, because whether a
graph is stable depends on who pays for which link:

* complete: the lower id opens the channel to the higher id;
* star: the center (player 0) opens every channel;
* path: every channel is opened by the endpoint nearer the middle, so the two
  ends own nothing (for even n the middle channel belongs to the lower id);
* circle: player i opens the channel to i+1 (mod n);
* biclique K_{r,s}: players 0..r-1 form the smaller side and open all channels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import GameParams, StrategyProfile, as_fraction
from .halfplanes import HalfPlane


class Kind(enum.Enum):
    COMPLETE = "complete"
    STAR = "star"
    PATH = "path"
    CIRCLE = "circle"
    BICLIQUE = "biclique"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TopologySpec:
    kind: Kind
    r: int = 0
    s: int = 0
    custom: StrategyProfile | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind is Kind.BICLIQUE and not 3 <= self.r <= self.s:
            raise ValueError(f"biclique needs 3 <= r <= s, got r={self.r}, s={self.s}")
        if self.kind is Kind.CUSTOM and self.custom is None:
            raise ValueError("custom topology needs a profile")

    @classmethod
    def parse(cls, text: str) -> "TopologySpec":
        """Parse ``complete``, ``star``, ``path``, ``circle``, ``biclique:<r>:<s>``
        or ``custom:<file>``."""
        name, _, rest = text.strip().partition(":")
        name = name.lower()
        if name == "biclique":
            try:
                r, s = (int(x) for x in rest.split(":"))
            except ValueError:
                raise ValueError(f"expected biclique:<r>:<s>, got {text!r}") from None
            return cls(Kind.BICLIQUE, r, s)
        if name == "custom":
            profile = StrategyProfile.from_text(Path(rest).read_text(encoding="utf-8"))
            return cls(Kind.CUSTOM, custom=profile)
        try:
            kind = Kind(name)
        except ValueError:
            raise ValueError(f"unknown topology {text!r}") from None
        if kind in (Kind.BICLIQUE, Kind.CUSTOM):
            raise ValueError(f"topology {name} needs arguments")
        return cls(kind)

    def __str__(self) -> str:
        if self.kind is Kind.BICLIQUE:
            return f"biclique:{self.r}:{self.s}"
        return self.kind.value

    def default_n(self) -> int | None:
        if self.kind is Kind.BICLIQUE:
            return self.r + self.s
        if self.kind is Kind.CUSTOM:
            return self.custom.n
        return None

    def profile(self, n: int | None = None) -> StrategyProfile:
        """The canonical strategy profile of this topology on ``n`` players."""
        fixed = self.default_n()
        if n is None:
            if fixed is None:
                raise ValueError(f"{self} needs a player count")
            n = fixed
        if fixed is not None and n != fixed:
            raise ValueError(f"{self} has {fixed} players, not {n}")
        if self.kind is Kind.CUSTOM:
            return self.custom
        if self.kind is Kind.COMPLETE:
            return complete_profile(n)
        if self.kind is Kind.STAR:
            return star_profile(n)
        if self.kind is Kind.PATH:
            return path_profile(n)
        if self.kind is Kind.CIRCLE:
            return circle_profile(n)
        return biclique_profile(self.r, self.s)

    def orbit_representatives(self, n: int) -> list[int] | None:
        """One player per symmetry class of the canonical profile, or None.

        Star: leaves are interchangeable under relabeling and all own nothing.
        Circle: rotation maps every player onto every other with ownership.
        Biclique: within a side every player has the same links and ownership.
        """
        if self.kind is Kind.STAR:
            return [0, 1]
        if self.kind is Kind.CIRCLE and n >= 3:
            return [0]
        if self.kind is Kind.BICLIQUE:
            return [0, self.r]
        return None


def complete_profile(n: int) -> StrategyProfile:
    return StrategyProfile([range(u + 1, n) for u in range(n)])


def star_profile(n: int) -> StrategyProfile:
    return StrategyProfile([range(1, n)] + [()] * (n - 1))


def path_profile(n: int) -> StrategyProfile:
    links = []
    for u in range(n - 1):
        v = u + 1
        # distance of each endpoint from the middle, in doubled units
        du, dv = abs(2 * u - (n - 1)), abs(2 * v - (n - 1))
        links.append((u, v) if du <= dv else (v, u))
    return StrategyProfile.from_links(n, links)


def circle_profile(n: int) -> StrategyProfile:
    if n < 3:
        raise ValueError("a circle needs at least 3 players")
    return StrategyProfile.from_links(n, [(u, (u + 1) % n) for u in range(n)])


def biclique_profile(r: int, s: int) -> StrategyProfile:
    return StrategyProfile([range(r, r + s)] * r + [()] * s)


# -- social optimum ------------------------------------------------------------

class OptimumKind(enum.Enum):
    COMPLETE = "complete"
    STAR = "star"
    PATH = "path"


def complete_social_cost(n: int, b, c) -> Fraction:
    return (Fraction(1, 2) + (n - 2) * as_fraction(b)) * n * (n - 1)


def star_social_cost(n: int, b, c) -> Fraction:
    b, c = as_fraction(b), as_fraction(c)
    return (1 + (c + b * (n - 1)) * (n - 2)) * (n - 1)


def path_social_cost(n: int, b, c) -> Fraction:
    b, c = as_fraction(b), as_fraction(c)
    return (1 + (Fraction(2, 3) * b + Fraction(1, 3) * c) * n * (n - 2)) * (n - 1)


CLOSED_FORM_COST = {
    OptimumKind.COMPLETE: complete_social_cost,
    OptimumKind.STAR: star_social_cost,
    OptimumKind.PATH: path_social_cost,
}


@dataclass(frozen=True)
class OptimumReport:
    optimal_kinds: tuple[OptimumKind, ...]
    optimal_cost: Fraction
    boundary_flags: tuple[str, ...]

    @property
    def optimal_kind(self) -> OptimumKind:
        return self.optimal_kinds[0]


def social_optimum(params: GameParams) -> OptimumReport:
    """Classify the socially optimal topology from the weights alone.

    complete for c > 1/2 + b, star for b <= c <= 1/2 + b, path for c < b.  On
    the lines c = b and c = 1/2 + b every tied class is reported.
    """
    n, b, c = params.n, params.b, params.c
    upper = Fraction(1, 2) + b
    kinds = []
    flags = []
    if c >= upper:
        kinds.append(OptimumKind.COMPLETE)
    if b <= c <= upper:
        kinds.append(OptimumKind.STAR)
    if c <= b:
        kinds.append(OptimumKind.PATH)
    if c == upper:
        flags.append("c = 1/2 + b")
    if c == b:
        flags.append("c = b")
    # for n <= 3 several classes coincide; keep the cheapest closed form anyway
    costs = {k: CLOSED_FORM_COST[k](n, b, c) for k in kinds}
    best = min(costs.values())
    kinds = [k for k in kinds if costs[k] == best]
    return OptimumReport(tuple(kinds), best, tuple(flags))


# -- Nash predicates -------------------------------------------------------------

class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NEVerdict:
    verdict: Verdict
    binding_inequalities: tuple[HalfPlane, ...] = ()
    note: str = ""


def biclique_alpha(r: int, s: int) -> Fraction:
    return Fraction(s * (s - 1), r * (s - 2))


def biclique_beta(r: int, s: int) -> Fraction:
    return Fraction(1, s - r + 1) * (Fraction(s * (s - 1), r) - Fraction((r - 2) * (r - 1), s + 1))


def biclique_corner(r: int, s: int) -> tuple[Fraction, Fraction]:
    """Intersection of 1 = (s/r) b + ((s+r-3)/(s-1)) c and 1 = min(alpha, beta) b + c."""
    a11, a12 = Fraction(s, r), Fraction(s + r - 3, s - 1)
    a21, a22 = min(biclique_alpha(r, s), biclique_beta(r, s)), Fraction(1)
    det = a11 * a22 - a12 * a21
    return (a22 - a12) / det, (a11 - a21) / det


def predicate_halfplanes(topology: TopologySpec, n: int) -> tuple[list[HalfPlane], str] | None:
    """The analytic stability region as half-planes, or None if no result covers it.

    An empty-region result is returned as the single infeasible half-plane -1 >= 0.
    """
    kind = topology.kind
    if kind is Kind.CIRCLE and n == 3:
        kind = Kind.COMPLETE
    if kind is Kind.COMPLETE:
        return [HalfPlane(-1, 0, 1, "complete graph: c >= 1")], "complete graph theorems"
    if kind is Kind.PATH:
        if n == 2:
            return [], "single channel, every weight"
        if n == 3:
            return [HalfPlane(1, 0, -1, "path n=3: c <= 1")], "path n=3: only non-complete connected graph"
        # the binding move is an endpoint opening a chord, with cost change
        # 1 - b - 2c (n=4) or 1 - 2b - 4c (n=5); stability needs it >= 0
        if n == 4:
            return ([HalfPlane(1, -1, -2, "path n=4: b + 2c <= 1")],
                    "path n=4: endpoint chord to the far end")
        if n == 5:
            return ([HalfPlane(1, -2, -4, "path n=5: 2b + 4c <= 1")],
                    "path n=5: endpoint chord to the far end")
        return [HalfPlane(-1, 0, 0, "path n>=6: never stable")], "path n>=6: a rewiring always helps"
    if kind is Kind.CIRCLE:
        if n == 4:
            return [HalfPlane(1, 0, -1, "circle n=4: c <= 1"),
                    HalfPlane(-1, 1, 2, "circle n=4: 1 <= b + 2c")], "circle n=4"
        if n == 5:
            return [HalfPlane(1, -1, -1, "circle n=5: b + c <= 1"),
                    HalfPlane(-1, 2, 4, "circle n=5: 1 <= 2b + 4c")], "circle n=5"
        return ([HalfPlane(-1, 0, 0, "circle n>=6: never stable")],
                "simulation-backed, N=6: analytically only some finite N is known")
    if kind is Kind.STAR:
        if n < 4:
            return None
        return ([HalfPlane(1, -Fraction(n - 3, 2), -1, f"star n={n}: 0 <= 1 - (n-3)/2 b - c")],
                "star theorem")
    if kind is Kind.BICLIQUE:
        r, s = topology.r, topology.s
        m = min(biclique_alpha(r, s), biclique_beta(r, s))
        return ([HalfPlane(1, -Fraction(s - 2, r + 1), -1, "(s-2)/(r+1) b + c <= 1"),
                 HalfPlane(-1, Fraction(s, r), Fraction(s + r - 3, s - 1),
                           "1 <= (s/r) b + ((s+r-3)/(s-1)) c"),
                 HalfPlane(-1, m, 1, "1 <= min(alpha, beta) b + c")],
                "biclique theorem")
    return None


def ne_predicate(topology: TopologySpec, params: GameParams) -> NEVerdict:
    """Evaluate the analytic stability condition for a named topology.

    Conditions are weak inequalities: a tie never makes a player move.
    """
    n = params.n
    fixed = topology.default_n()
    if fixed is not None and fixed != n:
        raise ValueError(f"{topology} has {fixed} players, params say {n}")
    found = predicate_halfplanes(topology, n)
    if found is None:
        return NEVerdict(Verdict.UNKNOWN, note=f"no analytic result for {topology} at n={n}")
    halfplanes, note = found
    if topology.kind is Kind.COMPLETE and params.c == 1:
        note += "; at c = 1 the complete graph is stable but not necessarily the only equilibrium"
    ok = all(h.contains(params.b, params.c) for h in halfplanes)
    return NEVerdict(Verdict.YES if ok else Verdict.NO, tuple(halfplanes), note)


def entringer_bounds(n: int) -> tuple[int, Fraction]:
    """Bounds on d(G) + |E| over connected graphs on n vertices.

    The upper bound is attained by the path: (n^3 + 5n - 6) / 6.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return n * (n - 1), Fraction(n ** 3 + 5 * n - 6, 6)
