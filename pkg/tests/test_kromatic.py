import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kromsym.graphs import Graph, all_graphs, delcon_children, named_graph, random_graph, stable_set_covers
from kromsym.kbases import groth_s
from kromsym.kromatic import (
    chromatic_sym,
    cover_profile,
    groth_coefficient,
    kromatic,
    kromatic_covers,
    kromatic_delcon,
    kromatic_direct,
    max_min_part,
    realize,
)
from kromsym.symcore import convert_classical, expand_filtered, generator, partitions

import oracles


def small_graphs():
    return [g for n in range(1, 5) for g in all_graphs(n)]


def random_weighted(seed, count=50):
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(1, 4), rng.random(), max_weight=2) for _ in range(count)]


def test_single_vertex():
    f = kromatic(Graph(1), 4)
    assert dict(f.terms) == {(1,) * k: 1 for k in range(1, 5)}
    assert kromatic_covers(Graph(1)) == {(1,): 1}


def test_path_expansion():
    p3 = named_graph("table1:1")
    assert kromatic_covers(p3) == {(2, 1): 1, (1, 1, 1): 1, (2, 1, 1): 2, (2, 1, 1, 1): 1}
    f = kromatic(p3, 4)
    assert f[(2, 2)] == 0
    assert f[(2, 1)] == 1 and f[(1, 1, 1)] == 6


@pytest.mark.parametrize("g", small_graphs(), ids=lambda g: str(sorted(g.edges)))
def test_engines_match_set_coloring_oracle(g):
    cap = g.n + 2
    want = {k: Fraction(v) for k, v in oracles.set_colorings(g.n, g.edges, [1] * g.n, cap).items()}
    for engine in ("direct", "covers", "delcon"):
        assert dict(kromatic(g, cap, engine).terms) == want


def test_engines_agree_on_random_weighted_graphs():
    checked = 0
    for wg in random_weighted(11):
        cap = wg.total_weight + 2
        got = [kromatic(wg, cap, engine) for engine in ("direct", "covers", "delcon")]
        assert got[0] == got[1] == got[2]
        # the brute-force oracle is only affordable for small caps
        if cap <= 7:
            want = oracles.set_colorings(wg.n, wg.graph.edges, list(wg.weights), cap)
            assert dict(got[0].terms) == {k: Fraction(v) for k, v in want.items()}
            checked += 1
    assert checked >= 20


def test_chromatic_matches_proper_colorings():
    for g in small_graphs():
        want = {k: Fraction(v) for k, v in oracles.proper_colorings(g.n, g.edges, [1] * g.n).items()}
        assert dict(chromatic_sym(g).terms) == want
    for wg in random_weighted(5, 20):
        want = {k: Fraction(v) for k, v in oracles.proper_colorings(wg.n, wg.graph.edges, list(wg.weights)).items()}
        assert dict(chromatic_sym(wg).terms) == want


def test_lowest_layer_is_chromatic():
    for wg in random_weighted(3, 30):
        f = kromatic(wg, wg.total_weight + 1)
        assert f.min_degree() == wg.total_weight
        assert f.homogeneous(wg.total_weight).same_terms(chromatic_sym(wg), cap=wg.total_weight)


def test_cover_methods_agree_and_count_covers():
    for g in small_graphs():
        assert kromatic_covers(g, "count") == kromatic_covers(g, "enumerate")
        assert cover_profile(g).total() == len(stable_set_covers(g))
    with pytest.raises(ValueError):
        kromatic_covers(Graph(2), "guess")


def test_profile_equality_means_equal_expansions():
    for a in all_graphs(4):
        for b in all_graphs(4):
            assert (cover_profile(a) == cover_profile(b)) == (kromatic_covers(a) == kromatic_covers(b))


def test_five_term_identity_exhaustive():
    for n in range(2, 6):
        for g in all_graphs(n):
            cap = n + 2
            lhs = kromatic(g, cap, "direct")
            for v, w in g.nonedges():
                ch = delcon_children(g.weighted([1] * n), v, w)
                rhs = sum((kromatic(c, cap, "direct") for c in ch.as_tuple()[1:]), kromatic(ch.as_tuple()[0], cap, "direct"))
                assert lhs.same_terms(rhs, cap=cap)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 4), st.randoms(use_true_random=False), st.floats(0, 1))
def test_delcon_is_independent_of_nonedge_choice(n, rng, p):
    g = random_graph(rng, n, p, max_weight=2)
    pick = random.Random(rng.random())
    assert kromatic_delcon(g, chooser=lambda h: pick.choice(h.graph.nonedges())) == kromatic_covers(g)


def test_omega_power_sum_signs():
    # a claim about unweighted graphs: a single weight-2 vertex already starts with +p_2
    graphs = small_graphs() + [wg.graph for wg in random_weighted(11)]
    for g in graphs:
        n = g.n
        f = kromatic(g, n + 2)
        for lam, c in convert_classical(f, "p").items():
            assert (-1) ** (lam.size() - lam.length()) * c >= 0


def test_groth_coefficient_examples():
    k1 = kromatic(Graph(1), 3)
    assert groth_coefficient(k1, (1,)) == 1
    assert groth_coefficient(k1, (1, 1)) == 2
    p3 = kromatic(named_graph("table1:1"), 5)
    assert groth_coefficient(p3, (2, 1)) == 1
    assert groth_coefficient(p3, (1, 1, 1)) == 4
    assert groth_coefficient(p3, (3,)) == 0
    with pytest.raises(ValueError):
        groth_coefficient(kromatic(Graph(1), 2), (1, 1, 1))


def test_groth_coefficient_matches_filtered_expansion():
    f = kromatic(named_graph("claw"), 6)
    layered = expand_filtered(f, groth_s)
    for d in range(1, 7):
        for lam in partitions(d):
            assert groth_coefficient(f, lam) == layered.get(lam, 0)


def test_realize_truncates():
    exp = kromatic_covers(named_graph("claw"))
    f = realize(exp, 4)
    assert f.cap == 4 and not f.exact
    assert f.same_terms(kromatic(named_graph("claw"), 4, "direct"))


def test_kromatic_direct_below_total_weight_is_empty():
    assert not kromatic_direct(named_graph("complete:3"), 2).terms


def test_max_min_part():
    assert max_min_part(named_graph("complete:3")) == 1
    assert max_min_part(Graph(3)) == 3
    p3 = named_graph("table1:1")
    assert max_min_part(p3) == 1
    assert all(min(lam) <= max_min_part(p3) for lam in kromatic_covers(p3))


def test_unknown_engine():
    with pytest.raises(ValueError):
        kromatic(Graph(1), 2, "magic")
