"""Command-line interface: ``kromsym <verb> ...``.

Every verb prints JSON (or a table with ``--pretty``) and exits with 0 on
success, 1 when a verification fails, and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from typing import Dict, List, Mapping, Optional, Sequence

from . import gasharov
from .graphs import WeightedGraph, parse_graph, trees_up_to
from .kbases import BASIS_IDS, family
from .kromatic import (
    chromatic_sym,
    cover_profile,
    expansion_to_json,
    groth_expansion,
    kromatic,
    kromatic_covers,
    kromatic_delcon,
    max_min_part,
    realize,
)
from .posets import parse_poset
from .symcore import (
    NonTriangularError,
    Partition,
    TruncatedSeries,
    canonical_key,
    convert_classical,
    expand_filtered,
    format_coeff,
    parse_coeff,
)

CLASSICAL = ("maug", "e", "h", "p", "s")
MAX_TREE_N = 9


class UsageError(Exception):
    pass


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KROMATIC_THREADS", "1")))
    except ValueError:
        return 1


def _parse_shape(text: str) -> Partition:
    text = text.strip()
    if text.startswith("["):
        parts = json.loads(text)
    else:
        parts = [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
    return Partition.from_parts(parts)


def _graph(text: str) -> WeightedGraph:
    try:
        return parse_graph(text)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        raise UsageError(f"bad graph spec {text!r}: {exc}") from None


def _cap(args, g: WeightedGraph) -> int:
    return args.degree if args.degree is not None else g.total_weight + 3




def _km(g: WeightedGraph, engine: str) -> Dict[Partition, int]:
    if engine in ("covers", "auto"):
        return kromatic_covers(g)
    if engine == "delcon":
        return kromatic_delcon(g)
    raise UsageError(f"engine {engine!r} does not produce an exact km expansion")


def _series(g: WeightedGraph, cap: int, engine: str) -> TruncatedSeries:
    return kromatic(g, cap, "covers" if engine == "auto" else engine)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_expand(args) -> dict:
    g = _graph(args.graph)
    cap = _cap(args, g)
    basis = args.basis
    if basis not in BASIS_IDS:
        raise UsageError(f"unknown basis {basis!r}; choose from {', '.join(BASIS_IDS)}")
    out = {"graph": g.to_json(), "degreeCap": cap}
    if basis == "km" and args.engine != "direct":
        engine = "covers" if args.engine == "auto" else args.engine
        out.update(expansion_to_json(_km(g, engine), "km", engine))
        out["exact"] = True
        return out
    engine = "covers" if args.engine == "auto" else args.engine
    f = _series(g, cap, engine)
    if basis == "m":
        coeffs = dict(f.terms)
    elif basis in CLASSICAL:
        coeffs = convert_classical(f, basis)
    elif basis == "gs":
        coeffs = groth_expansion(f)
    else:
        try:
            coeffs = expand_filtered(f, family(basis))
        except NonTriangularError as exc:
            raise UsageError(f"basis {basis!r} cannot be used for a layered expansion: {exc}") from None
    out.update(expansion_to_json(coeffs, basis, engine))
    out["exact"] = False
    return out


def _load_golden(path: Optional[str]) -> dict:
    if path:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("kromsym").joinpath("data/table1.json").read_text())


def _diff(expected: Mapping, actual: Mapping) -> List[dict]:
    keys = sorted(set(expected) | set(actual), key=canonical_key)
    return [
        {"partition": list(k), "expected": format_coeff(expected.get(k, 0)), "actual": format_coeff(actual.get(k, 0))}
        for k in keys
        if Fraction(expected.get(k, 0)) != Fraction(actual.get(k, 0))
    ]


def cmd_table1(args) -> dict:
    golden = _load_golden(args.golden)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ("covers", "delcon"):
            raise UsageError(f"table1 engines must be covers or delcon, got {e!r}")
    rows = []
    ok = True
    for row in golden["rows"]:
        g = _graph(row["graph"])
        n = g.n
        km_gold = {Partition.from_parts(t["partition"]): parse_coeff(t["coeff"]) for t in row["km"]}
        p_gold = {Partition.from_parts(t["partition"]): parse_coeff(t["coeff"]) for t in row["p"]}
        through = n + 1 if args.p_through is None else args.p_through
        report = {"row": row["row"], "graph": row["graph"], "km": {}, "p": {}}
        for e in engines:
            km = _km(g, e)
            d = _diff(km_gold, km)
            report["km"][e] = {"pass": not d, "diff": d}
            ok &= not d
            p = {k: v for k, v in convert_classical(realize(km, through), "p").items() if k.size() <= through}
            gold = {k: v for k, v in p_gold.items() if k.size() <= through}
            d = _diff(gold, p)
            report["p"][e] = {"pass": not d, "throughDegree": through, "diff": d}
            ok &= not d
        rows.append(report)
    return {"pass": ok, "rows": rows}


def _first_difference(f: TruncatedSeries, g: TruncatedSeries) -> Optional[dict]:
    for lam in sorted(set(f.terms) | set(g.terms), key=canonical_key):
        if f[lam] != g[lam]:
            return {"partition": list(lam), "left": format_coeff(f[lam]), "right": format_coeff(g[lam])}
    return None


def _support_witness(g1: WeightedGraph, g2: WeightedGraph, limit: int) -> Optional[dict]:
    """A km-support feature separating the graphs, in the spirit of a smallest-part argument.

    The graph with the larger ``max_min_part`` k has covers whose parts are
    all at least k; the smallest such partition is reported with both
    coefficients.
    """
    a, b = max_min_part(g1), max_min_part(g2)
    if a == b:
        return None
    big, k = (g1, a) if a > b else (g2, b)
    terms = cover_profile(big).terms(max_size=limit)
    for lam in sorted(terms, key=canonical_key):
        if min(lam) >= k:
            c1 = cover_profile(g1).coefficient(lam)
            c2 = cover_profile(g2).coefficient(lam)
            return {"partition": list(lam), "left": c1, "right": c2, "allPartsAtLeast": k}
    return None


def cmd_compare(args) -> dict:
    g1, g2 = _graph(args.graph1), _graph(args.graph2)
    cap = args.degree if args.degree is not None else max(g1.total_weight, g2.total_weight) + 3
    chrom = chromatic_sym(g1).same_terms(chromatic_sym(g2))
    f1, f2 = kromatic(g1, cap), kromatic(g2, cap)
    equal_d = f1.same_terms(f2)
    equal = cover_profile(g1) == cover_profile(g2)
    witness = {
        "maxMinPart": [max_min_part(g1), max_min_part(g2)],
        "firstDifference": _first_difference(f1, f2),
        "support": _support_witness(g1, g2, limit=max(g1.n, g2.n) * 3),
    }
    return {
        "degreeCap": cap,
        "chromaticEqual": chrom,
        "kromaticEqualUpToD": equal_d,
        "kromaticEqual": equal,
        "witness": witness,
    }


def _tree_record(edges: Sequence[Sequence[int]], n: int, cap: int):
    from .graphs import Graph

    g = Graph(n, [tuple(e) for e in edges]).weighted()
    prof = cover_profile(g)
    trunc = realize(prof.terms(max_size=cap), cap)
    return prof._normal(), tuple(sorted(trunc.terms.items()))


def cmd_trees(args) -> dict:
    if args.max_n > MAX_TREE_N or args.max_n < 1:
        raise UsageError(f"trees needs 1 <= max-n <= {MAX_TREE_N}")
    cap = args.degree if args.degree is not None else args.max_n + 3
    trees = trees_up_to(args.max_n)
    jobs = [([list(e) for e in t.sorted_edges()], t.n, cap) for t in trees]
    workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_tree_record, *zip(*jobs)))
    else:
        records = [_tree_record(*j) for j in jobs]
    exact: Dict = {}
    trunc: Dict = {}
    collisions, near = [], []
    for t, (prof, tr) in zip(trees, records):
        key = (t.n, frozenset(prof.items()))
        if key in exact:
            collisions.append([exact[key].to_json(), t.to_json()])
        else:
            exact[key] = t
        tkey = (t.n, tr)
        if tkey in trunc:
            near.append([trunc[tkey].to_json(), t.to_json()])
        else:
            trunc[tkey] = t
    counts: Dict[int, int] = {}
    for t in trees:
        counts[t.n] = counts.get(t.n, 0) + 1
    return {
        "maxN": args.max_n,
        "degreeCap": cap,
        "treeCounts": {str(k): v for k, v in sorted(counts.items())},
        "collisions": collisions,
        "collisionsUpToD": near,
    }


def cmd_positivity(args) -> dict:
    g = _graph(args.graph)
    cap = _cap(args, g)
    if args.family not in BASIS_IDS or args.family == "km":
        raise UsageError(f"unsupported family {args.family!r}")
    f = kromatic(g, cap)
    try:
        coeffs = expand_filtered(f, family(args.family))
    except NonTriangularError as exc:
        raise UsageError(f"family {args.family!r} is not degree-triangular: {exc}") from None
    worst = min(coeffs.items(), key=lambda kv: (kv[1], canonical_key(kv[0])), default=None)
    layers: Dict[str, list] = {}
    for lam, c in coeffs.items():
        layers.setdefault(str(lam.size()), []).append({"partition": list(lam), "coeff": format_coeff(c)})
    most_negative = None
    if worst is not None and worst[1] < 0:
        most_negative = {"partition": list(worst[0]), "coeff": format_coeff(worst[1])}
    return {
        "graph": g.to_json(),
        "family": args.family,
        "degreeCap": cap,
        "positive": most_negative is None,
        "mostNegative": most_negative,
        "layers": layers,
    }


def cmd_tableaux(args) -> dict:
    poset = parse_poset(args.poset)
    shape = _parse_shape(args.shape)
    tabs = gasharov.enumerate_p_tableaux(poset, shape)
    return {
        "poset": poset.to_json(),
        "shape": list(shape),
        "count": len(tabs),
        "tableaux": [t.to_json() for t in tabs],
    }


def cmd_involution(args) -> dict:
    poset = parse_poset(args.poset)
    shape = _parse_shape(args.shape)
    report = gasharov.verify_theorem(poset, shape)
    arrays = gasharov.enumerate_p_arrays(poset, shape)
    valid = set(arrays)
    flawed = bad = 0
    for a in arrays:
        flaw = gasharov.find_flaw(poset, a)
        if flaw is None:
            continue
        flawed += 1
        b = gasharov.psi(poset, a)
        if not (b in valid and gasharov.psi(poset, b) == a and b.sign() == -a.sign()
                and gasharov.find_flaw(poset, b) == flaw):
            bad += 1
    out = report.to_json()
    out["involution"] = {"flawedArrays": flawed, "failures": bad}
    out["pass"] = bad == 0 and (report.all_equal or not report.is_31_free)
    return out


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"partition", "coeff"}:
            return f"{pad}{Partition(obj['partition'])!r:<20} {obj['coeff']}"
        lines = []
        for k, v in obj.items():
            if isinstance(v, list) and v and not isinstance(v[0], dict):
                lines.append(f"{pad}{k}: {json.dumps(v)}")
            elif isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_pretty(x, indent) if isinstance(x, (dict, list)) else f"{pad}- {json.dumps(x)}" for x in obj)
    return f"{pad}{json.dumps(obj)}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kromsym", description="Kromatic symmetric functions of graphs.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, degree=True):
        p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
        if degree:
            p.add_argument("-D", "--degree", type=int, default=None, help="degree cap (default: total weight + 3)")

    p = sub.add_parser("expand", help="expand the Kromatic function of a graph in a basis")
    p.add_argument("graph")
    p.add_argument("--basis", default="km")
    p.add_argument("--engine", default="auto", choices=["auto", "direct", "covers", "delcon"])
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("table1", help="recompute the small-graph table and diff against golden values")
    p.add_argument("--golden", default=None, help="golden JSON file (default: bundled)")
    p.add_argument("--engines", default="covers,delcon")
    p.add_argument("--p-through", type=int, default=None, help="check p-coefficients through this degree (default |V|+1)")
    common(p, degree=False)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("compare", help="compare two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("trees", help="search for trees with equal expansions")
    p.add_argument("--max-n", type=int, default=7)
    common(p)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("positivity", help="layered expansion in a filtered family")
    p.add_argument("graph")
    p.add_argument("--family", default="gs")
    common(p)
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("tableaux", help="list Grothendieck P-tableaux")
    p.add_argument("poset")
    p.add_argument("shape")
    common(p, degree=False)
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("involution", help="check the P-array involution and the tableau count")
    p.add_argument("poset")
    p.add_argument("shape")
    common(p, degree=False)
    p.set_defaults(func=cmd_involution)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        result = args.func(args)
    except (UsageError, gasharov.GuardrailError, ValueError) as exc:
        print(f"kromsym: error: {exc}", file=sys.stderr)
        return 2
    print(_pretty(result) if args.pretty else json.dumps(result, sort_keys=False))
    if args.verb == "table1" and not result["pass"]:
        return 1
    if args.verb == "trees" and result["collisions"]:
        return 1
    if args.verb == "involution" and not result["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
