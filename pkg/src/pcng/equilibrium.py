"""Exhaustive best responses, Nash checks and equilibrium enumeration.

Computing a best response is NP-hard in general, so every search here is
exhaustive over the 2^(n-1) possible target sets and guarded by a player cap.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .closed_form import social_optimum
from .core import (
    INF, GameParams, StrategyProfile, edges_to_mask, mask_to_edges, pair_index,
    pair_list, player_cost, profile_mask, star_mask, vertex_terms,
)
from .graphs import canonical_mask, connected_graphs

log = logging.getLogger(__name__)

BEST_RESPONSE_CAP = 16
ENUMERATION_CAP = 6


class ResourceLimitError(RuntimeError):
    """The requested computation exceeds the configured player cap."""


def enumeration_cap() -> int:
    value = os.environ.get("PCNG_MAX_N")
    return int(value) if value else ENUMERATION_CAP


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ResourceLimitError(f"{what} is exhaustive; n={n} exceeds the cap of {cap}")


@dataclass(frozen=True)
class DeviationWitness:
    player: int
    old: frozenset[int]
    new: frozenset[int]
    delta: Fraction | float

    def describe(self) -> str:
        return (f"player {self.player}: {sorted(self.old)} -> {sorted(self.new)}, "
                f"delta {self.delta}")


@dataclass(frozen=True)
class NashResult:
    is_nash: bool
    witness: DeviationWitness | None = None

    def __bool__(self) -> bool:
        return self.is_nash


def _subsets(items: list[int]) -> Iterator[frozenset[int]]:
    for bits in range(1 << len(items)):
        yield frozenset(v for k, v in enumerate(items) if bits >> k & 1)


def _rest_mask(profile: StrategyProfile, u: int) -> int:
    """Edges of G[s] that survive when u withdraws all of her own links."""
    n = profile.n
    return edges_to_mask(n, ((w, v) for w, v in profile.links() if w != u))


def _cost(n: int, mask: int, u: int, links: int, params: GameParams):
    betw, close = vertex_terms(n, mask)[u]
    if close == INF:
        return INF
    return links + params.b * betw + params.c * close


def deviation_costs(profile: StrategyProfile, u: int,
                    params: GameParams) -> Iterator[tuple[frozenset[int], Fraction | float]]:
    """Every strategy available to u, paired with u's cost after switching to it."""
    n = profile.n
    rest = _rest_mask(profile, u)
    others = [v for v in range(n) if v != u]
    for strategy in _subsets(others):
        mask = rest | star_mask(n, u, strategy)
        yield strategy, _cost(n, mask, u, len(strategy), params)


def best_response(profile: StrategyProfile, u: int, params: GameParams,
                  cap: int = BEST_RESPONSE_CAP) -> set[frozenset[int]]:
    """All cost-minimizing strategies of ``u`` against the others' fixed strategies."""
    _check_cap(profile.n, cap, "best response")
    best = INF
    found: set[frozenset[int]] = set()
    for strategy, cost in deviation_costs(profile, u, params):
        if cost < best:
            best, found = cost, {strategy}
        elif cost == best:
            found.add(strategy)
    return found


def is_nash(profile: StrategyProfile, params: GameParams, cap: int = BEST_RESPONSE_CAP,
            witness: str = "steepest") -> NashResult:
    """Check that no player gains by any unilateral rewiring.

    Equal-cost deviations do not break stability.  When the profile is not
    stable the witness is chosen by ``witness``: ``"steepest"`` picks the most
    negative delta, ``"minimal"`` the deviation that changes the fewest links
    (then the most negative delta).  Remaining ties go to the lowest player id
    and the lexicographically smallest target set.
    """
    if witness not in ("steepest", "minimal"):
        raise ValueError(f"unknown witness policy {witness!r}")
    _check_cap(profile.n, cap, "Nash check")
    if profile.n != params.n:
        raise ValueError(f"profile has {profile.n} players, params say {params.n}")
    mask = profile_mask(profile)
    chosen = None
    chosen_key = None
    for u in range(profile.n):
        current = _cost(profile.n, mask, u, len(profile[u]), params)
        for strategy, cost in deviation_costs(profile, u, params):
            if not cost < current:
                continue
            delta = cost - current
            order = (u, sorted(strategy))
            if witness == "steepest":
                key = (delta, order)
            else:
                key = (len(strategy ^ profile[u]), delta, order)
            if chosen_key is None or key < chosen_key:
                chosen_key = key
                chosen = DeviationWitness(u, profile[u], strategy, delta)
    return NashResult(chosen is None, chosen)


def replay_delta(profile: StrategyProfile, w: DeviationWitness, params: GameParams):
    """Recompute a witness's cost change through :func:`player_cost`."""
    before = player_cost(profile, w.player, params).total
    after = player_cost(profile.replace(w.player, w.new), w.player, params).total
    if before == INF and after == INF:
        return Fraction(0)
    return after - before


# -- enumeration ---------------------------------------------------------------

def graph_social_cost(n: int, mask: int, params: GameParams):
    """Social cost of any profile on this graph with every edge paid once."""
    total = Fraction(bin(mask).count("1"))
    for betw, close in vertex_terms(n, mask):
        if close == INF:
            return INF
        total += params.b * betw + params.c * close
    return total


@dataclass
class EquilibriumReport:
    params: GameParams
    nash_profiles: list[StrategyProfile]
    nash_costs: list[Fraction]
    optimum_cost: Fraction
    closed_form_optimum: Fraction
    isomorphism_classes: int | None = None
    worst_cost: Fraction | None = field(init=False)
    best_cost: Fraction | None = field(init=False)

    def __post_init__(self):
        self.worst_cost = max(self.nash_costs) if self.nash_costs else None
        self.best_cost = min(self.nash_costs) if self.nash_costs else None

    @property
    def poa(self) -> Fraction | None:
        return None if self.worst_cost is None else self.worst_cost / self.optimum_cost

    @property
    def pos(self) -> Fraction | None:
        return None if self.best_cost is None else self.best_cost / self.optimum_cost

    def to_dict(self) -> dict:
        def ratio(x):
            return None if x is None else {"fraction": str(x), "decimal": float(x)}

        return {
            "params": {"n": self.params.n, "b": str(self.params.b), "c": str(self.params.c)},
            "nash": [{"profile": p.to_text(), "social_cost": str(cost)}
                     for p, cost in zip(self.nash_profiles, self.nash_costs)],
            "nash_count": len(self.nash_profiles),
            "isomorphism_classes": self.isomorphism_classes,
            "worst_cost": None if self.worst_cost is None else str(self.worst_cost),
            "best_cost": None if self.best_cost is None else str(self.best_cost),
            "optimum_cost": str(self.optimum_cost),
            "closed_form_optimum_cost": str(self.closed_form_optimum),
            "optimum_matches_closed_form": self.optimum_cost == self.closed_form_optimum,
            "poa": ratio(self.poa),
            "pos": ratio(self.pos),
        }


class _MinDeviation:
    """Memoized cheapest cost player u can reach from a given rest-graph."""

    def __init__(self, params: GameParams):
        self.params = params
        self.n = params.n
        self.cache: dict[tuple[int, int], Fraction | float] = {}

    def __call__(self, u: int, rest: int):
        key = (u, rest)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        others = [v for v in range(n) if v != u]
        index = pair_index(n)[u]
        # linking to someone who already links to u is never cheaper
        free = [v for v in others if not rest >> index[v] & 1]
        best = INF
        for strategy in _subsets(free):
            cost = _cost(n, rest | star_mask(n, u, strategy), u, len(strategy), self.params)
            if cost < best:
                best = cost
        self.cache[key] = best
        return best


def _stable_orientations(mask: int, params: GameParams, min_dev: _MinDeviation) -> list[tuple[int, ...]]:
    """Ownership assignments of graph ``mask`` that are Nash equilibria.

    Each assignment is a tuple over the graph's edges (in pair order) holding
    the owner of each edge.  Players are fixed one at a time; a player's
    stability is checked as soon as all of her edges have an owner.
    """
    n = params.n
    edges = mask_to_edges(n, mask)
    index = pair_index(n)
    position = {e: k for k, e in enumerate(edges)}
    forward = [[position[(u, v)] for v in range(u + 1, n) if (u, v) in position] for u in range(n)]
    backward = [[position[(v, u)] for v in range(u) if (v, u) in position] for u in range(n)]
    terms = vertex_terms(n, mask)
    owner = [-1] * len(edges)
    found: list[tuple[int, ...]] = []

    def stable(u: int) -> bool:
        own = [k for k in forward[u] + backward[u] if owner[k] == u]
        current = _cost_from_terms(terms[u], len(own), params)
        rest = mask
        for k in own:
            a, b_ = edges[k]
            rest &= ~(1 << index[a][b_])
        return current <= min_dev(u, rest)

    def assign(u: int) -> None:
        if u == n:
            found.append(tuple(owner))
            return
        slots = forward[u]
        for bits in range(1 << len(slots)):
            for j, k in enumerate(slots):
                owner[k] = u if bits >> j & 1 == 0 else edges[k][1]
            if stable(u):
                assign(u + 1)
        for k in slots:
            owner[k] = -1

    assign(0)
    return found


def _cost_from_terms(term, links: int, params: GameParams):
    betw, close = term
    if close == INF:
        return INF
    return links + params.b * betw + params.c * close


def _enumerate_chunk(args) -> list[tuple[int, tuple[int, ...]]]:
    params, masks = args
    min_dev = _MinDeviation(params)
    out = []
    for mask in masks:
        for owners in _stable_orientations(mask, params, min_dev):
            out.append((mask, owners))
    return out


def _profile_from(n: int, mask: int, owners: tuple[int, ...]) -> StrategyProfile:
    links = []
    for (u, v), o in zip(mask_to_edges(n, mask), owners):
        links.append((u, v) if o == u else (v, u))
    return StrategyProfile.from_links(n, links)


def enumerate_nash(params: GameParams, dedup_isomorphic: bool = False,
                   cap: int | None = None, threads: int = 1) -> EquilibriumReport:
    """All pure Nash equilibria on ``params.n`` players.

    Walks every connected labeled graph (by edge count, then edge mask) and
    every single-owner orientation of its edges (lexicographic, lower endpoint
    first).  Doubly-paid links are skipped: dropping the duplicate always saves
    one unit, so they never appear in an equilibrium.
    """
    n = params.n
    cap = enumeration_cap() if cap is None else cap
    _check_cap(n, cap, "equilibrium enumeration")
    if n > ENUMERATION_CAP:
        log.warning("enumerating equilibria for n=%d; this grows like 3^(n(n-1)/2)", n)

    masks = connected_graphs(n)
    if threads > 1:
        chunks = [masks[i::threads * 4] for i in range(threads * 4)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(_enumerate_chunk, [(params, list(c)) for c in chunks])
            found = [item for part in parts for item in part]
    else:
        found = _enumerate_chunk((params, masks))
    order = {m: k for k, m in enumerate(masks)}
    found.sort(key=lambda item: (order[item[0]], [o != e[0] for o, e in
                                                  zip(item[1], mask_to_edges(n, item[0]))]))

    profiles, costs = [], []
    classes = None
    if dedup_isomorphic:
        seen: set[int] = set()
        kept = []
        for mask, owners in found:
            key = canonical_mask(n, mask)
            if key not in seen:
                seen.add(key)
                kept.append((mask, owners))
        found = kept
        classes = len(seen)
    for mask, owners in found:
        profiles.append(_profile_from(n, mask, owners))
        costs.append(graph_social_cost(n, mask, params))

    optimum = brute_force_optimum(params)[0]
    return EquilibriumReport(params, profiles, costs, optimum,
                             social_optimum(params).optimal_cost, classes)


@lru_cache(maxsize=64)
def brute_force_optimum(params: GameParams) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum social cost over all connected graphs, and every graph attaining it."""
    n = params.n
    best = INF
    argmin: list[int] = []
    for mask in connected_graphs(n):
        cost = graph_social_cost(n, mask, params)
        if cost < best:
            best, argmin = cost, [mask]
        elif cost == best:
            argmin.append(mask)
    return best, tuple(argmin)


def price_of_anarchy(params: GameParams, **kwargs) -> Fraction | None:
    """Worst equilibrium cost over optimum cost; None when there is no equilibrium."""
    return enumerate_nash(params, **kwargs).poa


def price_of_stability(params: GameParams, **kwargs) -> Fraction | None:
    """Best equilibrium cost over optimum cost; None when there is no equilibrium."""
    return enumerate_nash(params, **kwargs).pos


__all__ = [
    "BEST_RESPONSE_CAP", "ENUMERATION_CAP", "DeviationWitness", "EquilibriumReport",
    "NashResult", "ResourceLimitError", "best_response", "brute_force_optimum",
    "deviation_costs", "enumerate_nash", "graph_social_cost", "is_nash",
    "price_of_anarchy", "price_of_stability", "replay_delta",
]
