import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcng.closed_form import (
    OptimumKind, complete_profile, path_profile, social_optimum, star_profile,
)
from pcng.core import GameParams, StrategyProfile, build_network, player_cost
from pcng.equilibrium import (
    ResourceLimitError, best_response, enumerate_nash, is_nash, price_of_anarchy,
    price_of_stability, replay_delta,
)

import oracles


# -- best response --------------------------------------------------------------

def test_star_center_keeps_all_links():
    assert best_response(star_profile(5), 0, GameParams(5, "0.1", "0.2")) == {frozenset({1, 2, 3, 4})}


def test_complete_rest_connects_to_all():
    params = GameParams(5, 0, "1.5")
    # players 1..4 form a complete graph among themselves, player 0 owns nothing
    links = [(u, v) for u, v in itertools.combinations(range(1, 5), 2)]
    profile = StrategyProfile.from_links(5, links)
    assert best_response(profile, 0, params) == {frozenset({1, 2, 3, 4})}


def rest_graph_profile(n, edges):
    """Player 0 owns nothing and nobody links to it; ``edges`` live on 1..n-1."""
    return StrategyProfile.from_links(n, [(u + 1, v + 1) for u, v in edges])


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_best_response_is_minimum_dominating_set(m):
    """Zero betweenness weight: the best reply dominates the rest of the graph."""
    n = m + 1
    params = GameParams(n, 0, F(7, 10))
    pairs = list(itertools.combinations(range(m), 2))
    for bits in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if bits >> k & 1]
        expected = {frozenset(v + 1 for v in s) for s in oracles.min_dominating_sets(m, edges)}
        assert best_response(rest_graph_profile(n, edges), 0, params) == expected, edges


def test_best_response_cap():
    with pytest.raises(ResourceLimitError):
        best_response(star_profile(5), 0, GameParams(5, 1, 1), cap=4)


# -- is_nash ----------------------------------------------------------------------

def test_complete_stable_above_one():
    assert is_nash(complete_profile(4), GameParams(4, 0, "1.5")).is_nash


def test_complete_minimal_witness_drops_one_link():
    params = GameParams(4, 0, "0.9")
    result = is_nash(complete_profile(4), params, witness="minimal")
    assert not result.is_nash
    w = result.witness
    assert len(w.old ^ w.new) == 1 and w.new < w.old
    assert w.delta == F(-1, 10)
    # the steepest witness drops every owned link it can
    steep = is_nash(complete_profile(4), params).witness
    assert steep.delta < w.delta


def test_path_six_witness_and_redirect():
    params = GameParams(6, "0.2", "0.2")
    profile = path_profile(6)
    result = is_nash(profile, params)
    assert not result.is_nash
    assert replay_delta(profile, result.witness, params) == result.witness.delta < 0
    # the redirect used in the impossibility argument: 2 drops 3 and links 4 instead
    assert profile[2] == {1, 3}
    before = player_cost(profile, 2, params).total
    after = player_cost(profile.replace(2, {1, 4}), 2, params).total
    assert after - before == -params.c


def test_unknown_witness_policy():
    with pytest.raises(ValueError):
        is_nash(star_profile(4), GameParams(4, 1, 1), witness="random")


def test_player_count_mismatch():
    with pytest.raises(ValueError):
        is_nash(star_profile(4), GameParams(5, 1, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.randoms(use_true_random=False),
       st.fractions(0, 2, max_denominator=10), st.fractions(F(1, 10), 2, max_denominator=10),
       st.sampled_from(["steepest", "minimal"]))
def test_witness_replays_exactly(n, rng, b, c, policy):
    edges = oracles.random_connected_edges(rng, n, rng.random())
    profile = StrategyProfile.from_links(n, oracles.random_orientation(rng, edges))
    params = GameParams(n, b, c)
    result = is_nash(profile, params, witness=policy)
    if not result.is_nash:
        w = result.witness
        assert w.delta < 0
        assert replay_delta(profile, w, params) == w.delta


# -- enumeration --------------------------------------------------------------------

def test_three_players_high_c_only_complete():
    report = enumerate_nash(GameParams(3, "0.1", "1.5"))
    assert len(report.nash_profiles) == 8
    assert all(build_network(p).edge_count == 3 for p in report.nash_profiles)


def test_three_players_path_below_one():
    report = enumerate_nash(GameParams(3, "0.1", "0.8"))
    assert any(build_network(p).edge_count == 2 for p in report.nash_profiles)


def test_four_players_star_center_owned():
    report = enumerate_nash(GameParams(4, "0.3", "0.6"))
    for center in range(4):
        owned = StrategyProfile([set(range(4)) - {center} if u == center else set()
                                 for u in range(4)])
        assert owned in report.nash_profiles


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("c", ["1.1", "1.5"])
def test_complete_is_the_only_equilibrium_above_one(n, c):
    report = enumerate_nash(GameParams(n, "0.3", c))
    assert len(report.nash_profiles) == 2 ** (n * (n - 1) // 2)
    assert all(build_network(p).edge_count == n * (n - 1) // 2 for p in report.nash_profiles)
    assert report.poa == 1


@pytest.mark.parametrize("n,b,c", [(4, "0.3", "0.6"), (4, "0.05", "0.2"), (5, "0.1", "0.3"),
                                   (5, "0.5", "0.2"), (5, "0.2", "0.9")])
def test_enumerated_equilibria_invariants(n, b, c):
    params = GameParams(n, b, c)
    report = enumerate_nash(params)
    assert report.optimum_cost == report.closed_form_optimum
    for profile in report.nash_profiles:
        assert build_network(profile).is_connected
        assert profile.is_normal_form()
    if report.nash_profiles:
        assert report.best_cost <= report.worst_cost
        assert 1 <= report.pos <= report.poa


def test_enumeration_matches_is_nash_on_all_profiles_n4():
    """Independent check: every single-owner profile on 4 players."""
    params = GameParams(4, F(1, 5), F(2, 5))
    report = enumerate_nash(params)
    found = set(report.nash_profiles)
    pairs = list(itertools.combinations(range(4), 2))
    expected = set()
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        links = []
        for (u, v), o in zip(pairs, choice):
            if o == 1:
                links.append((u, v))
            elif o == 2:
                links.append((v, u))
        profile = StrategyProfile.from_links(4, links)
        if is_nash(profile, params):
            expected.add(profile)
    assert found == expected


def test_dedup_counts_isomorphism_classes():
    params = GameParams(4, "0.3", "0.6")
    full = enumerate_nash(params)
    dedup = enumerate_nash(params, dedup_isomorphic=True)
    assert dedup.isomorphism_classes == len(dedup.nash_profiles) <= len(full.nash_profiles)
    assert set(dedup.nash_costs) == set(full.nash_costs)


def test_enumeration_is_deterministic_across_threads():
    params = GameParams(4, "0.2", "0.5")
    one = enumerate_nash(params)
    two = enumerate_nash(params, threads=2)
    assert one.nash_profiles == two.nash_profiles


def test_enumeration_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        enumerate_nash(GameParams(7, 1, 1))
    with pytest.raises(ResourceLimitError):
        enumerate_nash(GameParams(5, 1, 1), cap=4)
    monkeypatch.setenv("PCNG_MAX_N", "3")
    with pytest.raises(ResourceLimitError):
        enumerate_nash(GameParams(4, 1, 1))


def test_report_json():
    report = enumerate_nash(GameParams(3, "0.1", "1.5"))
    doc = json.loads(json.dumps(report.to_dict()))
    assert doc["nash_count"] == 8
    assert doc["poa"] == {"fraction": "1", "decimal": 1.0}
    assert doc["nash"][0]["profile"].startswith("n=3\n")
    assert doc["optimum_matches_closed_form"]


# -- PoA / PoS ---------------------------------------------------------------------------

def test_poa_one_above_both_thresholds():
    for n in (3, 4, 5):
        assert price_of_anarchy(GameParams(n, "0.5", "1.5")) == 1


def test_poa_complete_over_star():
    assert price_of_anarchy(GameParams(5, "1.0", "1.2")) == F(175, 166)


@pytest.mark.parametrize("n", [4, 5])
def test_pos_one_when_star_optimal_and_stable(n):
    params = GameParams(n, F(1, 2 * n), F(1, n))
    assert social_optimum(params).optimal_kinds == (OptimumKind.STAR,)
    assert price_of_stability(params) == 1


def test_undefined_when_no_equilibrium():
    report = enumerate_nash(GameParams(3, "0.1", "1.5"))
    assert report.poa is not None
    from pcng.equilibrium import EquilibriumReport
    empty = EquilibriumReport(report.params, [], [], report.optimum_cost, report.closed_form_optimum)
    assert empty.poa is None and empty.pos is None
    assert empty.to_dict()["poa"] is None
