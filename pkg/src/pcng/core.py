"""Strategy profiles, the payment network they induce, and exact player costs.

All centrality fractions are :class:`fractions.Fraction` values.  A value that
can be unbounded (closeness, total cost) is either a ``Fraction``/``int`` or
``math.inf``; ``inf`` compares strictly greater than every finite value, which
is exactly the ordering the game needs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

INF = math.inf

Number = Fraction | int | float


class ProfileError(ValueError):
    """Raised for malformed strategy profiles or profile files."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def as_fraction(value: Number | str) -> Fraction:
    """Exact conversion; floats go through their decimal repr so 0.1 -> 1/10."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite weight {value!r}")
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class GameParams:
    n: int
    b: Fraction
    c: Fraction

    def __init__(self, n: int, b: Number | str, c: Number | str):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "b", as_fraction(b))
        object.__setattr__(self, "c", as_fraction(c))
        if self.n < 2:
            raise ValueError(f"need at least 2 players, got n={self.n}")
        if self.b < 0:
            raise ValueError(f"betweenness weight must be >= 0, got {self.b}")
        if self.c <= 0:
            raise ValueError(f"closeness weight must be > 0, got {self.c}")


@dataclass(frozen=True)
class StrategyProfile:
    """Per-player sets of initiated channels.

    ``strategies[u]`` is the set of players ``u`` opens a channel to.
    """

    strategies: tuple[frozenset[int], ...]

    def __init__(self, strategies: Iterable[Iterable[int]]):
        strategies = tuple(frozenset(int(v) for v in s) for s in strategies)
        n = len(strategies)
        if n < 2:
            raise ProfileError(f"need at least 2 players, got {n}")
        for u, s_u in enumerate(strategies):
            if u in s_u:
                raise ProfileError(f"player {u} links to itself")
            for v in s_u:
                if not 0 <= v < n:
                    raise ProfileError(f"player {u} links to {v}, outside [0, {n})")
        object.__setattr__(self, "strategies", strategies)

    @property
    def n(self) -> int:
        return len(self.strategies)

    def __getitem__(self, u: int) -> frozenset[int]:
        return self.strategies[u]

    @classmethod
    def empty(cls, n: int) -> "StrategyProfile":
        return cls([()] * n)

    @classmethod
    def from_links(cls, n: int, links: Iterable[tuple[int, int]]) -> "StrategyProfile":
        """Build from ``(owner, target)`` pairs."""
        strategies: list[set[int]] = [set() for _ in range(n)]
        for u, v in links:
            if not 0 <= u < n:
                raise ProfileError(f"owner {u} outside [0, {n})")
            strategies[u].add(v)
        return cls(strategies)

    def links(self) -> list[tuple[int, int]]:
        return [(u, v) for u, s_u in enumerate(self.strategies) for v in sorted(s_u)]

    def edges(self) -> frozenset[tuple[int, int]]:
        """Undirected edge set of G[s], each edge as ``(min, max)``."""
        return frozenset((min(u, v), max(u, v)) for u, v in self.links())

    def replace(self, u: int, strategy: Iterable[int]) -> "StrategyProfile":
        strategies = list(self.strategies)
        strategies[u] = frozenset(strategy)
        return StrategyProfile(strategies)

    def doubly_initiated(self) -> list[tuple[int, int]]:
        """Edges initiated by both endpoints (never present in an equilibrium)."""
        return [(u, v) for u, v in self.links() if u < v and u in self.strategies[v]]

    def is_normal_form(self) -> bool:
        return not self.doubly_initiated()

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines += [f"{u} -> {v}" for u, v in self.links()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "StrategyProfile":
        n = None
        links = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                key, sep, value = line.partition("=")
                if key.strip() != "n" or not sep:
                    raise ProfileError(f"expected header 'n=<int>', got {raw!r}", lineno)
                try:
                    n = int(value)
                except ValueError:
                    raise ProfileError(f"bad player count {value.strip()!r}", lineno) from None
                if n < 2:
                    raise ProfileError(f"need at least 2 players, got {n}", lineno)
                continue
            left, sep, right = line.partition("->")
            try:
                if not sep:
                    raise ValueError
                u, v = int(left), int(right)
            except ValueError:
                raise ProfileError(f"expected 'u -> v', got {raw!r}", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ProfileError(f"link {u} -> {v} outside [0, {n})", lineno)
            if u == v:
                raise ProfileError(f"self-link on player {u}", lineno)
            links.append((u, v))
        if n is None:
            raise ProfileError("missing header 'n=<int>'", 1)
        return cls.from_links(n, links)


def _bfs(adjacency: Sequence[frozenset[int]], source: int) -> tuple[list, list[int]]:
    n = len(adjacency)
    dist: list = [INF] * n
    sigma = [0] * n
    dist[source] = 0
    sigma[source] = 1
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if dist[w] == INF:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
    return dist, sigma


@dataclass(frozen=True)
class PaymentNetwork:
    """The undirected graph G[s] with all-pairs distance and path-count caches."""

    n: int
    adjacency: tuple[frozenset[int], ...]
    distances: tuple[tuple, ...] = field(repr=False, compare=False)
    path_counts: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "PaymentNetwork":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(frozenset(s) for s in nbrs)
        dist, sigma = [], []
        for s in range(n):
            d, m = _bfs(adjacency, s)
            dist.append(tuple(d))
            sigma.append(tuple(m))
        return cls(n, adjacency, tuple(dist), tuple(sigma))

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def is_connected(self) -> bool:
        return all(d != INF for d in self.distances[0])

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])


def build_network(profile: StrategyProfile) -> PaymentNetwork:
    return PaymentNetwork.from_edges(profile.n, profile.edges())


def freeman_betweenness(net: PaymentNetwork, u: int) -> Fraction:
    """Sum over ordered pairs (s, r), both distinct from u, of m_u(s,r)/m(s,r).

    Ordered pairs, so a star center on n vertices scores (n-1)(n-2).
    """
    dist, sigma = net.distances, net.path_counts
    du, su = dist[u], sigma[u]
    total = Fraction(0)
    for s in range(net.n):
        if s == u or du[s] == INF:
            continue
        ds, ss = dist[s], sigma[s]
        for r in range(net.n):
            if r == u or r == s or ds[r] == INF:
                continue
            if du[s] + du[r] == ds[r]:
                total += Fraction(su[s] * su[r], ss[r])
    return total


def max_betweenness(n: int) -> int:
    return (n - 1) * (n - 2)


def betweenness_cost(net: PaymentNetwork, u: int) -> Fraction:
    return max_betweenness(net.n) - freeman_betweenness(net, u)


def closeness_cost(net: PaymentNetwork, u: int) -> int | float:
    """Sum of (distance - 1) to every other player; inf if someone is unreachable."""
    total = 0
    for r, d in enumerate(net.distances[u]):
        if r == u:
            continue
        if d == INF:
            return INF
        total += d - 1
    return total


@dataclass(frozen=True)
class CostBreakdown:
    link_cost: int
    betweenness_term: Fraction
    closeness_term: int | float
    total: Fraction | float


def weighted_cost(links: int, betweenness: Fraction, closeness, params: GameParams):
    if closeness == INF:
        return INF
    return links + params.b * betweenness + params.c * closeness


def player_cost(profile: StrategyProfile, u: int, params: GameParams,
                net: PaymentNetwork | None = None) -> CostBreakdown:
    if profile.n != params.n:
        raise ValueError(f"profile has {profile.n} players, params say {params.n}")
    net = net or build_network(profile)
    links = len(profile[u])
    betw = betweenness_cost(net, u)
    close = closeness_cost(net, u)
    return CostBreakdown(links, betw, close, weighted_cost(links, betw, close, params))


def social_cost(profile: StrategyProfile, params: GameParams) -> Fraction | float:
    net = build_network(profile)
    total = Fraction(0)
    for u in range(profile.n):
        cost = player_cost(profile, u, params, net).total
        if cost == INF:
            return INF
        total += cost
    return total


@dataclass(frozen=True)
class GraphStatistics:
    edge_count: int
    vertex_distances: tuple
    distance: Fraction | float
    average_distance: Fraction | float
    average_betweenness: Fraction | float


def graph_statistics(net: PaymentNetwork) -> GraphStatistics:
    n = net.n
    per_vertex = []
    for v in range(n):
        row = net.distances[v]
        per_vertex.append(INF if any(d == INF for d in row) else sum(row))
    if any(d == INF for d in per_vertex):
        return GraphStatistics(net.edge_count, tuple(per_vertex), INF, INF, INF)
    distance = Fraction(sum(per_vertex), 2)
    pairs = n * (n - 1) // 2
    average_distance = distance / pairs
    average_betweenness = sum((freeman_betweenness(net, v) for v in range(n)), Fraction(0)) / n
    return GraphStatistics(net.edge_count, tuple(per_vertex), distance,
                           average_distance, average_betweenness)


def social_cost_identity(net: PaymentNetwork, params: GameParams) -> Fraction | float:
    """|E| + b n(n-1)(n-2) + (c-b) * (sum of closeness) for a normal-form profile."""
    n = net.n
    closeness = [closeness_cost(net, u) for u in range(n)]
    if INF in closeness:
        return INF
    return net.edge_count + params.b * n * (n - 1) * (n - 2) + (params.c - params.b) * sum(closeness)


# -- bitmask fast path -------------------------------------------------------
#
# The enumerators in the equilibrium and sweep modules evaluate the same
# undirected graphs over and over.  Graphs are keyed by an edge bitmask where
# bit ``pair_index(n)[u][v]`` marks edge {u, v}; centrality terms are cached.

@lru_cache(maxsize=None)
def pair_index(n: int) -> tuple[tuple[int, ...], ...]:
    index = [[-1] * n for _ in range(n)]
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            index[u][v] = index[v][u] = k
            k += 1
    return tuple(tuple(row) for row in index)


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


def edges_to_mask(n: int, edges: Iterable[tuple[int, int]]) -> int:
    index = pair_index(n)
    mask = 0
    for u, v in edges:
        mask |= 1 << index[u][v]
    return mask


def mask_to_edges(n: int, mask: int) -> list[tuple[int, int]]:
    return [e for k, e in enumerate(pair_list(n)) if mask >> k & 1]


def star_mask(n: int, u: int, targets: Iterable[int]) -> int:
    """Bitmask of the edges joining ``u`` to each of ``targets``."""
    index = pair_index(n)[u]
    mask = 0
    for v in targets:
        mask |= 1 << index[v]
    return mask


@lru_cache(maxsize=1 << 18)
def vertex_terms(n: int, mask: int) -> tuple[tuple[Fraction, int | float], ...]:
    """Per-vertex ``(betweenness_cost, closeness_cost)`` of the graph ``mask``.

    Same values as :func:`betweenness_cost` / :func:`closeness_cost`, summed
    over a common denominator to stay fast inside enumeration loops.
    """
    net = PaymentNetwork.from_edges(n, mask_to_edges(n, mask))
    dist, sigma = net.distances, net.path_counts
    denom = 1
    for s in range(n):
        for r in range(s + 1, n):
            m = sigma[s][r]
            if m > 1:
                denom = denom * m // math.gcd(denom, m)
    top = max_betweenness(n)
    out = []
    for u in range(n):
        du, su = dist[u], sigma[u]
        acc = 0
        for s in range(n):
            if s == u or du[s] == INF:
                continue
            ds, ss = dist[s], sigma[s]
            for r in range(s + 1, n):
                if r != u and du[r] != INF and du[s] + du[r] == ds[r]:
                    acc += su[s] * su[r] * (denom // ss[r])
        # unordered loop above; ordered pairs count each twice
        betw = top - Fraction(2 * acc, denom)
        close = INF if INF in du else sum(du) - (n - 1)
        out.append((betw, close))
    return tuple(out)


def profile_mask(profile: StrategyProfile) -> int:
    return edges_to_mask(profile.n, profile.edges())
