from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcng.closed_form import Kind, TopologySpec, circle_profile, ne_predicate, star_profile, Verdict
from pcng.core import INF, GameParams, StrategyProfile, player_cost
from pcng.equilibrium import ResourceLimitError, is_nash
from pcng.halfplanes import HalfPlane, implies, same_region
from pcng.sweep import (
    DeviationCoefficients, deviation_coefficients, deviation_halfplanes, ne_region,
    read_region, sweep_grid,
)

import oracles

STAR = TopologySpec(Kind.STAR)
PATH = TopologySpec(Kind.PATH)
CIRCLE = TopologySpec(Kind.CIRCLE)
COMPLETE = TopologySpec(Kind.COMPLETE)


# -- deviation coefficients ----------------------------------------------------------

def test_star_leaf_adds_three_links():
    assert deviation_coefficients(star_profile(5), 1, {2, 3, 4}) == DeviationCoefficients(3, -3, -3)


def test_circle_four_drop_owned_link():
    assert deviation_coefficients(circle_profile(4), 0, set()) == DeviationCoefficients(-1, 1, 2)


def test_circle_five_remove_two_add_one():
    # player 0 owns both of its circle links here
    profile = StrategyProfile.from_links(5, [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)])
    assert deviation_coefficients(profile, 0, {2}) == DeviationCoefficients(-1, 2, 2)


def test_disconnecting_deviation_has_infinite_closeness():
    coeffs = deviation_coefficients(star_profile(4), 0, {1})
    assert coeffs.d_closeness == INF
    assert coeffs.halfplane() is None
    assert coeffs.delta(1, 1) == INF


def test_invalid_strategy():
    with pytest.raises(ValueError):
        deviation_coefficients(star_profile(4), 0, {0})
    with pytest.raises(ValueError):
        deviation_coefficients(star_profile(4), 0, {7})


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 6), st.randoms(use_true_random=False))
def test_affine_exactness(n, rng):
    edges = oracles.random_connected_edges(rng, n, rng.random())
    profile = StrategyProfile.from_links(n, oracles.random_orientation(rng, edges))
    u = rng.randrange(n)
    strategy = {v for v in range(n) if v != u and rng.random() < 0.5}
    coeffs = deviation_coefficients(profile, u, strategy)
    for _ in range(3):
        b = F(rng.randint(0, 40), rng.randint(1, 13))
        c = F(rng.randint(1, 40), rng.randint(1, 13))
        params = GameParams(n, b, c)
        before = player_cost(profile, u, params).total
        after = player_cost(profile.replace(u, strategy), u, params).total
        if after == INF:
            assert coeffs.delta(b, c) == INF
        else:
            assert coeffs.delta(b, c) == after - before


# -- exact regions ------------------------------------------------------------------------

def test_star_six_region():
    region = ne_region(STAR, 6)
    assert same_region(region.halfplanes, [HalfPlane(1, F(-3, 2), -1)])


def test_path_four_region_is_below_the_line():
    region = ne_region(PATH, 4)
    assert same_region(region.halfplanes, [HalfPlane(1, -1, -2)])
    # the opposite side, as sometimes written, includes c > 1 where only K_n is stable
    assert not implies(region.halfplanes, HalfPlane(-1, 1, 2))


def test_path_five_region():
    assert same_region(ne_region(PATH, 5).halfplanes, [HalfPlane(1, -2, -4)])


@pytest.mark.parametrize("n", [6, 7, 8])
def test_circle_empty_from_six(n):
    assert ne_region(CIRCLE, n).empty


def test_circle_four_and_five():
    assert same_region(ne_region(CIRCLE, 4).halfplanes, [HalfPlane(1, 0, -1), HalfPlane(-1, 1, 2)])
    assert same_region(ne_region(CIRCLE, 5).halfplanes, [HalfPlane(1, -1, -1), HalfPlane(-1, 2, 4)])


def test_complete_region():
    assert same_region(ne_region(COMPLETE, 5).halfplanes, [HalfPlane(-1, 0, 1)])


def test_star_regions_shrink_with_n():
    regions = [ne_region(STAR, n).halfplanes for n in range(4, 9)]
    for small, big in zip(regions[1:], regions):
        for h in big:
            assert implies(small, h)
    for n, region in zip(range(4, 9), regions):
        assert same_region(region, [HalfPlane(1, -F(n - 3, 2), -1)])


@pytest.mark.parametrize("topology,n", [(STAR, 5), (CIRCLE, 5), (PATH, 5),
                                        (TopologySpec(Kind.BICLIQUE, 3, 3), 6)])
def test_reduced_matches_full(topology, n):
    assert same_region(ne_region(topology, n).halfplanes,
                       ne_region(topology, n, reduced=False).halfplanes)


@pytest.mark.parametrize("r,s", [(3, 3), (3, 4), (4, 4)])
def test_biclique_region_matches_predicate(r, s):
    from pcng.closed_form import predicate_halfplanes
    topology = TopologySpec(Kind.BICLIQUE, r, s)
    assert same_region(ne_region(topology).halfplanes, predicate_halfplanes(topology, r + s)[0])


def test_region_cap():
    with pytest.raises(ResourceLimitError):
        ne_region(STAR, 11)
    with pytest.raises(ResourceLimitError):
        ne_region(STAR, 5, cap=4)


# -- grids --------------------------------------------------------------------------------

def test_star_four_grid_boundary_line():
    pmap = sweep_grid(STAR, 4, resolution=100)
    for i in range(100):
        for j in range(100):
            b, c = pmap.cell_center(i, j)
            assert pmap.grid[i][j] == (c <= 1 - b / 2)
            if pmap.boundary[i][j]:
                lo_b, hi_b = b - F(3, 400), b + F(3, 400)
                assert min(1 - lo_b / 2, 1 - hi_b / 2) - F(3, 400) <= c <= 1 - lo_b / 2 + F(3, 400)


def test_complete_eight_grid_is_band():
    pmap = sweep_grid(COMPLETE, 8, resolution=30)
    for i in range(30):
        for j in range(30):
            assert pmap.grid[i][j] == (pmap.cell_center(i, j)[1] >= 1)
    assert all(row == pmap.grid[0] for row in pmap.grid)


def test_biclique_k34_corner_in_region_file():
    from pcng.closed_form import biclique_corner
    pmap = sweep_grid(TopologySpec(Kind.BICLIQUE, 3, 4), resolution=10)
    g, d = biclique_corner(3, 4)
    assert (g, d) in pmap.region_vertices
    assert f"vertex ({g}, {d})" in pmap.region_text()


@pytest.mark.parametrize("topology,n", [(STAR, 4), (STAR, 5), (PATH, 4), (PATH, 5),
                                        (CIRCLE, 4), (CIRCLE, 5), (COMPLETE, 5)])
def test_grid_matches_brute_force(topology, n):
    pmap = sweep_grid(topology, n, resolution=12)
    profile = topology.profile(n)
    for i in range(12):
        for j in range(12):
            b, c = pmap.cell_center(i, j)
            assert pmap.grid[i][j] == is_nash(profile, GameParams(n, b, c)).is_nash


def test_spot_check_clean():
    for topology, n in [(STAR, 6), (CIRCLE, 5), (TopologySpec(Kind.BICLIQUE, 3, 3), None)]:
        assert sweep_grid(topology, n, resolution=40).spot_check(10, seed=3) == []


def test_resolution_must_be_two():
    with pytest.raises(ValueError):
        sweep_grid(STAR, 4, resolution=1)


def test_csv_and_region_files(tmp_path):
    pmap = sweep_grid(STAR, 5, resolution=4)
    csv_path, region_path = pmap.write(tmp_path / "star5")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "b,c,is_ne"
    assert len(lines) == 17
    b, c, flag = lines[1].split(",")
    assert (F(b), F(c), flag) == (F(3, 16), F(3, 16), "1")
    halfplanes, vertices = read_region(region_path.read_text())
    assert same_region(halfplanes, pmap.halfplanes)
    assert vertices == pmap.region_vertices
    for line in region_path.read_text().splitlines():
        assert line.startswith(("#", "vertex")) or " >= 0 # " in line


def test_empty_region_file_notes_emptiness():
    text = ne_region(CIRCLE, 6).region_text()
    assert "# empty" in text
    assert "vertex" not in text


def test_grid_agrees_with_predicate_on_boundary_points():
    # points exactly on c = 1 - b/2 are stable under the weak-inequality convention
    pmap = ne_region(STAR, 4)
    for k in range(1, 10):
        b = F(k, 5)
        c = 1 - b / 2
        assert pmap.contains(b, c)
        assert ne_predicate(STAR, GameParams(4, b, c)).verdict is Verdict.YES
        assert is_nash(star_profile(4), GameParams(4, b, c)).is_nash


def test_deviation_halfplanes_skip_current_strategy():
    hs = deviation_halfplanes(star_profile(4), [1])
    assert len(hs) == 7
    assert all(h.provenance.startswith("player 1: [] -> ") for h in hs)
