import pytest
from hypothesis import assume, given

from dirzeroext import errors
from dirzeroext.fixtures import FIXTURES, get
from dirzeroext.graph import (build_underlying_graph, check_shortest_correspondence,
                              directed_orbits, find_orbit_varying_modular_cycle, four_cycles,
                              from_edges, gate, graph_distance, is_convex,
                              is_directed_orbit_invariant, is_modular_graph, is_orientable,
                              orbit_count_on_path, orbit_of, orientation, simple_paths)
from dirzeroext.metric import is_modular
from strategies import grid_metrics, modular_metrics


def edge_set(G):
    return {frozenset(e) for e in G.edges}


def test_underlying_graph_examples():
    assert edge_set(build_underlying_graph(get("M_CUT"))) == {frozenset("st")}
    G = build_underlying_graph(get("M_STAR3B"))
    assert edge_set(G) == {frozenset(("r", x)) for x in "abc"}
    G = build_underlying_graph(get("M_OV4"))
    assert edge_set(G) == {frozenset(e) for e in ("pq", "qr", "rs", "sp")}


def test_disconnected_graph_rejected():
    with pytest.raises(errors.DisconnectedUnderlyingGraph):
        from_edges(["a", "b", "c"], [("a", "b")])


def test_distances():
    G = build_underlying_graph(get("M_C4"))
    assert graph_distance(G, "p", "r") == 2
    assert graph_distance(G, "p", "p") == 0
    assert build_underlying_graph(get("M_STAR3B")).d("a", "b") == 2


def test_modular_graph_examples():
    assert is_modular_graph(build_underlying_graph(get("M_C4")))[0]
    ok, w = is_modular_graph(from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")]))
    assert not ok and w[0] == "not_bipartite"
    hexagon = from_edges(range(6), [(i, (i + 1) % 6) for i in range(6)])
    ok, w = is_modular_graph(hexagon)
    assert not ok and w[0] == "quadrangle"


def test_orbit_examples():
    # the single 4-cycle (p,q,r,s) pairs (p,q) with (s,r), (q,r) with (p,s), and so on
    orbs = directed_orbits(build_underlying_graph(get("M_C4")))
    assert sorted(len(o.members) for o in orbs) == [2, 2, 2, 2]
    G = build_underlying_graph(get("M_C4"))
    assert orbit_of(G, ("p", "q")) == orbit_of(G, ("s", "r"))
    assert orbit_of(G, ("p", "q")) != orbit_of(G, ("q", "p"))
    assert len(directed_orbits(build_underlying_graph(get("M_CUT")))) == 2
    orbs = directed_orbits(build_underlying_graph(get("M_STAR3B")))
    assert len(orbs) == 6 and all(len(o.members) == 1 for o in orbs)


def test_orientability():
    assert is_orientable(build_underlying_graph(get("M_C4")))[0]
    assert is_orientable(build_underlying_graph(get("M_STAR3B")))[0]
    ok, e = is_orientable(build_underlying_graph(get("M_K33")))
    assert not ok
    G = build_underlying_graph(get("M_K33"))
    assert orbit_of(G, e) == orbit_of(G, e[::-1])
    G = build_underlying_graph(get("M_CUBE3"))
    ori = orientation(G)
    assert len(ori) == len(G.edges)
    assert all((v, u) not in ori for u, v in ori)


def test_orbit_invariance_and_varying_cycles():
    ok, w = is_directed_orbit_invariant(get("M_OV4"), build_underlying_graph(get("M_OV4")))
    assert not ok and w == (("p", "q"), ("s", "r"))
    mu = get("M_OV4")
    assert mu(*w[0]) == 2 and mu(*w[1]) == 1
    for name in ("M_STAR3B", "M_C4"):
        m = get(name)
        assert is_directed_orbit_invariant(m, build_underlying_graph(m))[0]
    c = find_orbit_varying_modular_cycle(mu, build_underlying_graph(mu))
    assert c.cycle == ("p", "q", "r", "s") and c.k == 1
    for name in ("M_C4", "M_STAR3B"):
        m = get(name)
        assert find_orbit_varying_modular_cycle(m, build_underlying_graph(m)) is None


def test_gate_and_convexity():
    G = build_underlying_graph(get("M_C4"))
    assert gate(G, ["q", "r"], "s") == "r"
    assert gate(G, ["q", "s"], "p") is None
    assert gate(G, ["q", "s"], "q") == "q"
    with pytest.raises(errors.EmptySet):
        gate(G, [], "p")
    assert is_convex(G, ["q", "r"]) and not is_convex(G, ["q", "s"])


def test_correspondence_examples():
    mu = get("M_OV4")
    rep = check_shortest_correspondence(mu, build_underlying_graph(mu), bound=3,
                                        direction="forward")
    assert rep.ok
    mu = get("M_STAR3U")
    assert check_shortest_correspondence(mu, build_underlying_graph(mu), bound=3).ok
    mu = get("M_K3")
    with pytest.raises(errors.HypothesesNotMet):
        check_shortest_correspondence(mu, build_underlying_graph(mu), direction="forward")


def test_orbit_count_examples():
    G = build_underlying_graph(get("M_C4"))
    o = directed_orbits(G)[orbit_of(G, ("p", "q"))]
    assert orbit_count_on_path(G, o, ("p", "q")) == 1
    assert orbit_count_on_path(G, o, ("p", "s", "r", "q")) == 1  # (s, r) is opposite (p, q)
    assert orbit_count_on_path(G, o, ("q", "p")) == 0
    assert orbit_count_on_path(G, o, ()) == 0
    with pytest.raises(errors.NotAPath):
        orbit_count_on_path(G, o, ("p", "r"))


def test_four_cycles_lexicographic():
    cyc = four_cycles(build_underlying_graph(get("M_C4")))
    assert cyc == sorted(cyc) and len(cyc) == 8


@given(grid_metrics())
def test_orbits_partition_oriented_edges(mu):
    G = build_underlying_graph(mu)
    members = [e for o in directed_orbits(G) for e in o.members]
    assert sorted(members) == sorted(G.oriented_edges)
    assert len(members) == len(set(members))


def orbit_minimal(G):
    for x in G.vertices:
        for y in G.vertices:
            if x == y:
                continue
            paths = simple_paths(G, x, y)
            short = [p for p in paths if len(p) - 1 == G.d(x, y)]
            for o in directed_orbits(G):
                best = min(orbit_count_on_path(G, o, p) for p in paths)
                if any(orbit_count_on_path(G, o, p) > best for p in short):
                    return False
    return True


@given(grid_metrics())
def test_shortest_paths_minimise_orbit_counts(mu):
    G = build_underlying_graph(mu)
    assume(is_modular_graph(G)[0] and len(G.vertices) <= 8)
    assert orbit_minimal(G)


@given(grid_metrics())
def test_no_varying_cycle_means_orbit_invariant(mu):
    assume(is_modular(mu)[0])
    G = build_underlying_graph(mu)
    if find_orbit_varying_modular_cycle(mu, G) is None:
        assert is_directed_orbit_invariant(mu, G)[0]


@given(grid_metrics())
def test_modular_metric_has_modular_graph(mu):
    assume(is_modular(mu)[0])
    assert is_modular_graph(build_underlying_graph(mu))[0]


@given(modular_metrics())
def test_shortest_correspondence_on_modular(mu):
    G = build_underlying_graph(mu)
    assert check_shortest_correspondence(mu, G, bound=3, direction="auto").ok


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_structure_properties_on_fixtures(name):
    mu = get(name)
    G = build_underlying_graph(mu)
    if is_modular(mu)[0]:
        if find_orbit_varying_modular_cycle(mu, G) is None:
            assert is_directed_orbit_invariant(mu, G)[0]
        assert is_modular_graph(G)[0]
