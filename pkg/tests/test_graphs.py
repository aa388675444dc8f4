import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from kromsym.graphs import (
    Graph,
    WeightedGraph,
    all_graphs,
    canonical_form,
    clan_graph,
    cover_partition,
    delcon_children,
    is_claw_free,
    is_isomorphic,
    named_graph,
    parse_graph,
    random_graph,
    stable_set_covers,
    stable_sets,
    total_stability,
    trees_up_to,
)


def brute_stable_sets(g: Graph):
    out = []
    for k in range(1, g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            if not any(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)):
                out.append(frozenset(s))
    return out


def brute_covers(g: Graph):
    sets = brute_stable_sets(g)
    full = frozenset(range(g.n))
    return [
        c for k in range(1, len(sets) + 1) for c in itertools.combinations(sets, k)
        if frozenset().union(*c) == full
    ]


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
    assert Graph(3, [(1, 0), (0, 1)]).edges == {(0, 1)}
    with pytest.raises(ValueError):
        WeightedGraph(Graph(2), (1, 0))


def test_stable_set_examples():
    assert stable_sets(named_graph("complete:3")) == [frozenset({i}) for i in range(3)]
    p3 = named_graph("table1:1")
    assert set(stable_sets(p3)) == {frozenset({0}), frozenset({1}), frozenset({2}), frozenset({1, 2})}
    assert len(stable_sets(named_graph("claw"))) == 8
    assert stable_sets(Graph(0)) == []


def test_cover_examples():
    assert stable_set_covers(named_graph("complete:3")) == [(frozenset({0}), frozenset({1}), frozenset({2}))]
    p3 = named_graph("table1:1")
    parts = sorted(cover_partition(p3, c) for c in stable_set_covers(p3))
    assert parts == [(1, 1, 1), (2, 1), (2, 1, 1), (2, 1, 1), (2, 1, 1, 1)]
    assert len(stable_set_covers(named_graph("claw"))) == 109


def test_covers_match_brute_force_on_small_graphs():
    for n in range(1, 5):
        for g in all_graphs(n):
            got = {frozenset(c) for c in stable_set_covers(g)}
            assert len(got) == len(stable_set_covers(g))
            assert got == {frozenset(c) for c in brute_covers(g)}


def test_total_stability():
    assert total_stability(named_graph("complete:4")) == 0
    assert total_stability(named_graph("table1:1")) == 1
    assert total_stability(named_graph("claw")) == 4
    for g in all_graphs(4):
        assert (total_stability(g) == 0) == g.is_complete()


def test_delcon_children_of_path():
    p3 = named_graph("table1:1")
    ch = delcon_children(p3, 1, 2)
    assert ch.added.graph.is_complete() and ch.added.weights == (1, 1, 1)
    assert ch.contracted.n == 2 and ch.contracted.graph.is_complete() and ch.contracted.weights == (1, 2)
    assert ch.contraction_map == (0, 1, 1)
    assert ch.first.graph.is_complete() and ch.first.weights == (1, 2, 1)
    assert ch.second.weights == (1, 1, 2)
    assert ch.star.n == 4 and ch.star.graph.is_complete() and ch.star.weights == (1, 1, 1, 2)
    assert all(total_stability(c) < 1 for c in ch.as_tuple())


def test_delcon_rejects_edges():
    p3 = named_graph("table1:1")
    with pytest.raises(ValueError):
        delcon_children(p3, 0, 1)
    with pytest.raises(ValueError):
        delcon_children(p3, 1, 1)


def test_delcon_children_decrease_total_stability_on_random_graphs():
    rng = random.Random(7)
    seen = 0
    while seen < 200:
        g = random_graph(rng, rng.randint(2, 6), rng.random(), max_weight=3)
        if not g.graph.nonedges():
            continue
        v, w = rng.choice(g.graph.nonedges())
        ts = total_stability(g)
        ch = delcon_children(g, v, w)
        assert all(total_stability(c) < ts for c in ch.as_tuple())
        merged = g.weights[v] + g.weights[w]
        assert ch.contracted.weights[-1] == merged
        assert ch.first.weights[v] == merged and ch.second.weights[w] == merged
        assert ch.star.weights[-1] == merged
        assert ch.star.graph.neighbors(g.n) == g.graph.neighbors(v) | g.graph.neighbors(w) | {v, w}
        seen += 1


def test_clan_graph():
    p3 = named_graph("table1:1").graph
    assert is_isomorphic(clan_graph(p3, (1, 1, 1)), p3)
    assert clan_graph(Graph(1), (3,)).is_complete()
    blown = clan_graph(p3, (2, 1, 1))
    assert blown.n == 4 and len(blown.edges) == 5
    with pytest.raises(ValueError):
        clan_graph(p3, (1, 0, 1))


def test_claw_freeness():
    assert not is_claw_free(named_graph("claw"))
    for n in range(1, 9):
        assert is_claw_free(named_graph(f"path:{n}"))
    # the pendant of the drawn graph hangs on a degree-2 vertex of K4 - e
    assert is_claw_free(named_graph("ex1H"))
    assert not is_claw_free(Graph(5, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (0, 4)]))


def test_named_graphs():
    assert named_graph("complete:3").graph.is_complete()
    p3 = named_graph("table1:1")
    assert p3.graph.degree_sequence() == (2, 1, 1)
    g = named_graph("ex1G")
    assert g.n == 5 and len(g.graph.edges) == 6 and g.graph.degree_sequence() == (4, 2, 2, 2, 2)
    assert named_graph("cycle:4").graph.degree_sequence() == (2, 2, 2, 2)
    assert [named_graph(f"ex{i}{s}").n for i in (1, 2, 3) for s in "GH"] == [5, 5, 6, 6, 8, 8]
    for bad in ("nonsense", "table1:9", "cycle:2", "path:x"):
        with pytest.raises(ValueError):
            named_graph(bad)


def test_parse_graph(tmp_path):
    g = parse_graph('{"n": 3, "edges": [[0, 1]], "weights": [1, 2, 1]}')
    assert g.weights == (1, 2, 1) and g.graph.edges == {(0, 1)}
    path = tmp_path / "g.json"
    path.write_text('{"n": 2, "edges": [[0, 1]]}')
    assert parse_graph(f"@{path}").graph.is_complete()
    assert parse_graph("name:claw").n == 4


def test_tree_counts():
    assert [len(trees_up_to(n, n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    assert len(trees_up_to(4)) == 5
    assert all(len(t.edges) == t.n - 1 for t in trees_up_to(7))
    with pytest.raises(ValueError):
        trees_up_to(11)


def test_isomorphism():
    assert not is_isomorphic(named_graph("path:4"), named_graph("star:4"))
    assert [len(all_graphs(n)) for n in range(1, 6)] == [1, 2, 4, 11, 34]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False), st.floats(0, 1))
def test_canonical_form_is_relabeling_invariant(n, rng, p):
    g = random_graph(rng, n, p, max_weight=2)
    perm = list(range(n))
    rng.shuffle(perm)
    h = Graph(n, [(perm[a], perm[b]) for a, b in g.graph.edges]).weighted(
        [g.weights[perm.index(i)] for i in range(n)]
    )
    assert canonical_form(g) == canonical_form(h)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False), st.floats(0, 1))
def test_covers_are_stable_and_exhaustive(n, rng, p):
    g = random_graph(rng, n, p).graph
    for cover in stable_set_covers(g):
        assert frozenset().union(*cover) == frozenset(range(g.n))
        assert len(set(cover)) == len(cover)
        for s in cover:
            assert not any(g.has_edge(a, b) for a, b in itertools.combinations(s, 2))
