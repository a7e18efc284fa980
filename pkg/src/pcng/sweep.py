"""Exact (b, c) stability regions for fixed topologies, and grids over them.

For a fixed graph and a fixed rewiring, a player's cost change is affine in
the weights: delta = links + b * betweenness + c * closeness.  The set of
weights where a topology is stable is therefore the intersection of one
half-plane per possible deviation.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .closed_form import TopologySpec
from .core import INF, GameParams, StrategyProfile, profile_mask, star_mask, vertex_terms
from .equilibrium import ResourceLimitError, _rest_mask, _subsets, is_nash
from .halfplanes import HalfPlane, Point, is_empty, polygon, prune

SWEEP_CAP = 10
DEFAULT_WINDOW = (Fraction(0), Fraction(3, 2))


@dataclass(frozen=True)
class DeviationCoefficients:
    d_links: int
    d_betweenness: Fraction
    d_closeness: Fraction | float

    def delta(self, b, c):
        if self.d_closeness == INF:
            return INF
        return self.d_links + b * self.d_betweenness + c * self.d_closeness

    def halfplane(self, provenance: str = "") -> HalfPlane | None:
        """``delta >= 0`` as a half-plane; None when the deviation disconnects."""
        if self.d_closeness == INF:
            return None
        return HalfPlane(self.d_links, self.d_betweenness, self.d_closeness, provenance)


def deviation_coefficients(profile: StrategyProfile, u: int,
                           new_strategy) -> DeviationCoefficients:
    """Affine cost change of player ``u`` switching to ``new_strategy``."""
    n = profile.n
    new_strategy = frozenset(new_strategy)
    if u in new_strategy or any(not 0 <= v < n for v in new_strategy):
        raise ValueError(f"invalid strategy {sorted(new_strategy)} for player {u}")
    before = vertex_terms(n, profile_mask(profile))[u]
    if before[1] == INF:
        raise ValueError(f"player {u} is already disconnected")
    after = vertex_terms(n, _rest_mask(profile, u) | star_mask(n, u, new_strategy))[u]
    d_links = len(new_strategy) - len(profile[u])
    d_close = INF if after[1] == INF else after[1] - before[1]
    return DeviationCoefficients(d_links, after[0] - before[0], d_close)


@dataclass
class ParameterMap:
    topology: TopologySpec
    n: int
    halfplanes: list[HalfPlane]
    b_range: tuple[Fraction, Fraction] = DEFAULT_WINDOW
    c_range: tuple[Fraction, Fraction] = DEFAULT_WINDOW
    resolution: int = 0
    grid: list[list[bool]] = field(default_factory=list)
    boundary: list[list[bool]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return is_empty(self.halfplanes)

    def contains(self, b, c) -> bool:
        return all(h.contains(b, c) for h in self.halfplanes)

    @property
    def region_vertices(self) -> list[Point]:
        """Corners of the stable region inside the window, counter-clockwise."""
        if self.empty:
            return []
        return polygon(self.halfplanes, (*self.b_range, *self.c_range))

    def cell_center(self, i: int, j: int) -> tuple[Fraction, Fraction]:
        (b0, b1), (c0, c1) = self.b_range, self.c_range
        res = self.resolution
        return (b0 + (2 * i + 1) * (b1 - b0) / (2 * res),
                c0 + (2 * j + 1) * (c1 - c0) / (2 * res))

    def spot_check(self, cells: int = 10, seed: int = 0) -> list[tuple[Fraction, Fraction]]:
        """Re-verify random grid cells by brute force; returns the disagreeing centers."""
        rng = random.Random(seed)
        profile = self.topology.profile(self.n)
        bad = []
        for _ in range(cells):
            i, j = rng.randrange(self.resolution), rng.randrange(self.resolution)
            b, c = self.cell_center(i, j)
            if c <= 0:
                continue
            if is_nash(profile, GameParams(self.n, b, c)).is_nash != self.grid[i][j]:
                bad.append((b, c))
        return bad

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["b", "c", "is_ne"])
        for i in range(self.resolution):
            for j in range(self.resolution):
                b, c = self.cell_center(i, j)
                writer.writerow([b, c, int(self.grid[i][j])])
        return out.getvalue()

    def region_text(self) -> str:
        lines = [f"# stable region of {self.topology} on n={self.n}"]
        if self.empty:
            lines.append("# empty: no weights with c > 0 make this profile stable")
        lines += [h.format() for h in self.halfplanes]
        for b, c in self.region_vertices:
            lines.append(f"vertex ({b}, {c})")
        return "\n".join(lines) + "\n"

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        prefix = Path(prefix)
        csv_path = prefix.with_name(prefix.name + ".csv")
        region_path = prefix.with_name(prefix.name + ".region")
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        region_path.write_text(self.region_text(), encoding="utf-8")
        return csv_path, region_path


def read_region(text: str) -> tuple[list[HalfPlane], list[Point]]:
    halfplanes, vertices = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertex"):
            b, c = line[len("vertex"):].strip().strip("()").split(",")
            vertices.append((Fraction(b.strip()), Fraction(c.strip())))
        else:
            halfplanes.append(HalfPlane.parse(line))
    return halfplanes, vertices


def deviation_halfplanes(profile: StrategyProfile, players=None) -> list[HalfPlane]:
    """One half-plane per (player, alternative strategy) that keeps her connected."""
    n = profile.n
    players = range(n) if players is None else players
    out = []
    for u in players:
        others = [v for v in range(n) if v != u]
        for strategy in _subsets(others):
            if strategy == profile[u]:
                continue
            coeffs = deviation_coefficients(profile, u, strategy)
            h = coeffs.halfplane(f"player {u}: {sorted(profile[u])} -> {sorted(strategy)}")
            if h is not None:
                out.append(h)
    return out


def ne_region(topology: TopologySpec, n: int | None = None, reduced: bool = True,
              cap: int = SWEEP_CAP) -> ParameterMap:
    """Exact half-plane description of where the canonical profile is stable.

    With ``reduced`` only one player per symmetry class is examined (see
    :meth:`TopologySpec.orbit_representatives`); ``reduced=False`` checks
    every player and is kept for validation.
    """
    profile = topology.profile(n)
    n = profile.n
    if n > cap:
        raise ResourceLimitError(f"region search is exhaustive; n={n} exceeds the cap of {cap}")
    players = topology.orbit_representatives(n) if reduced else None
    return ParameterMap(topology, n, prune(deviation_halfplanes(profile, players)))


def sweep_grid(topology: TopologySpec, n: int | None = None,
               b_range=DEFAULT_WINDOW, c_range=DEFAULT_WINDOW,
               resolution: int = 100, cap: int = SWEEP_CAP) -> ParameterMap:
    """Evaluate the exact region on a ``resolution`` x ``resolution`` grid of cell centers.

    A cell is flagged as boundary when its four corners do not all agree.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    pmap = ne_region(topology, n, cap=cap)
    pmap.b_range = tuple(Fraction(x) for x in b_range)
    pmap.c_range = tuple(Fraction(x) for x in c_range)
    pmap.resolution = resolution
    (b0, b1), (c0, c1) = pmap.b_range, pmap.c_range
    bs = [b0 + k * (b1 - b0) / resolution for k in range(resolution + 1)]
    cs = [c0 + k * (c1 - c0) / resolution for k in range(resolution + 1)]
    corner = [[pmap.contains(b, c) for c in cs] for b in bs]
    pmap.grid = [[pmap.contains(*pmap.cell_center(i, j)) for j in range(resolution)]
                 for i in range(resolution)]
    pmap.boundary = [[len({corner[i][j], corner[i + 1][j], corner[i][j + 1],
                           corner[i + 1][j + 1]}) > 1 for j in range(resolution)]
                     for i in range(resolution)]
    return pmap
