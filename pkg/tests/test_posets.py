import itertools

import pytest

from kromsym.graphs import Graph, is_claw_free, is_isomorphic
from kromsym.posets import (
    InvalidPosetError,
    all_posets,
    antichain,
    chain,
    from_relations,
    incomparability_graph,
    is_31_free,
    parse_poset,
    poset_sum,
)


def test_from_relations_closes_and_rejects_cycles():
    p = from_relations(3, [(0, 1), (1, 2)])
    assert p.lt(0, 2) and p == chain(3)
    with pytest.raises(InvalidPosetError):
        from_relations(2, [(0, 1), (1, 0)])
    with pytest.raises(InvalidPosetError):
        from_relations(3, [(0, 1), (1, 2), (2, 0)])
    assert from_relations(3, [(0, 1)]) == poset_sum(chain(2), chain(1))


def test_incomparability_graphs():
    assert not incomparability_graph(chain(3)).edges
    assert incomparability_graph(antichain(3)).is_complete()
    g = incomparability_graph(poset_sum(chain(2), chain(1)))
    assert g.edges == {(0, 2), (1, 2)}


def test_31_freeness():
    assert is_31_free(chain(4))
    assert not is_31_free(poset_sum(chain(3), chain(1)))
    assert poset_sum(chain(1), chain(1)) == antichain(2)


def test_poset_counts():
    assert [len(all_posets(n)) for n in range(6)] == [1, 1, 2, 5, 16, 63]


def test_31_free_iff_claw_free_exhaustive():
    for n in range(6):
        for p in all_posets(n):
            assert is_31_free(p) == is_claw_free(incomparability_graph(p))


def test_sum_gives_join_of_incomparability_graphs():
    for a in range(0, 4):
        for p in all_posets(a):
            for q in all_posets(4 - a):
                g = incomparability_graph(poset_sum(p, q))
                gp, gq = incomparability_graph(p), incomparability_graph(q)
                want = set(gp.edges) | {(u + p.n, v + p.n) for u, v in gq.edges}
                want |= {(u, v + p.n) for u in range(p.n) for v in range(q.n)}
                assert g.edges == want


def test_parse_poset():
    assert parse_poset("chain:3") == chain(3)
    assert parse_poset("chains:2,1") == poset_sum(chain(2), chain(1))
    assert parse_poset('{"n": 3, "less": [[0, 1], [1, 2]]}') == chain(3)
    with pytest.raises(ValueError):
        parse_poset("lattice:3")
