"""Graphs that share a chromatic symmetric function but not a Kromatic one.

Run with ``python3 demos/distinguishing_pairs.py``.
"""

from kromsym import chromatic_sym, cover_profile, named_graph
from kromsym.kromatic import max_min_part

for i in (1, 2, 3):
    g, h = named_graph(f"ex{i}G"), named_graph(f"ex{i}H")
    same_x = chromatic_sym(g).same_terms(chromatic_sym(h))
    pg, ph = cover_profile(g), cover_profile(h)
    print(f"pair {i}: n={g.n}, chromatic equal: {same_x}, Kromatic equal: {pg == ph}")

    # the graph whose covers can have larger smallest parts carries a term the other lacks
    a, b = max_min_part(g), max_min_part(h)
    k = max(a, b)
    lam = (k,) * 3
    print(f"  largest smallest part: G={a} H={b}; coefficient of {lam}: G={pg.coefficient(lam)} H={ph.coefficient(lam)}")
