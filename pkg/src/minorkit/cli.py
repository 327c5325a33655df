"""Command-line front end.

Four subcommands: ``compute`` prints one JSON object per input graph,
``certify`` validates a certificate file against a graph, ``survey`` prints
a CSV of seeded random-graph statistics, and ``construct`` runs the witness
search and blow-up emission.  All exact rationals are serialized as "p/q"
strings; keys ending in ``_display`` carry float renderings and exist only
for human convenience.

Exit status: 0 on success (including per-graph capacity errors, which become
error objects in the output), 1 on invalid input or an invalid certificate,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import bound_report
from .brambles import bramble_number, hitting_number, validate_bramble, BrambleFamily
from .errors import CapacityError, CertificateError, Graph6Error
from .fractional import (
    WeightedBramble,
    fractional_hadwiger,
    r_integral_hadwiger_via_ilp,
    validate_weighted_bramble,
)
from .graphs import (
    Graph,
    as_probability,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph6_decode,
    graph6_encode,
    grid_graph,
    parse_edge_list,
    path_graph,
    random_gnp,
)
from .minors import MinorModel, hadwiger_number, verify_minor_model
from .serialize import format_certificate, parse_certificate
from .construct import WitnessSpec, emit_construction, search_witness
from .width import (
    Separation,
    TreeDecomposition,
    max_grid_minor,
    separation_number,
    treewidth,
    verify_separation,
    verify_tree_decomposition,
)

WORKERS_ENV = "MINORKIT_WORKERS"


class _UsageError(Exception):
    """Bad flags or parameter spellings: exit status 2."""

_GENERATORS = {
    "complete": (complete_graph, 1),
    "empty": (empty_graph, 1),
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "grid": (grid_graph, 1),
    "bipartite": (complete_bipartite_graph, 2),
}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _gen_graph(spec: str) -> Graph:
    name, _, rest = spec.partition(":")
    args = rest.split(",") if rest else []
    if name == "gnp":
        if len(args) != 3:
            raise _UsageError(f"gnp takes n,p,seed, got {spec!r}")
        return random_gnp(int(args[0]), as_probability(args[1]), int(args[2]))
    entry = _GENERATORS.get(name)
    if entry is None:
        raise _UsageError(f"unknown generator {name!r}")
    fn, arity = entry
    if len(args) != arity:
        raise _UsageError(f"generator {name} takes {arity} argument(s), got {spec!r}")
    return fn(*(int(a) for a in args))


def _collect_graphs(args: argparse.Namespace) -> List[Graph]:
    graphs: List[Graph] = []
    for s in args.g6 or []:
        graphs.append(graph6_decode(s))
    for path in args.g6_file or []:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    graphs.append(graph6_decode(line))
    for path in args.edges or []:
        with open(path) as fh:
            graphs.append(parse_edge_list(fh.read()))
    for spec in args.gen or []:
        graphs.append(_gen_graph(spec))
    return graphs


def _parse_params(text: str) -> List[Tuple[str, Optional[int]]]:
    out: List[Tuple[str, Optional[int]]] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, _, arg = item.partition(":")
        if name in ("h", "hf", "hfs", "tw", "bn", "sep", "grid", "bounds"):
            if arg:
                raise _UsageError(f"parameter {name} takes no argument")
            out.append((name, None))
        elif name == "hr":
            if not arg.isdigit() or int(arg) < 1:
                raise _UsageError(f"hr needs a positive denominator, got {item!r}")
            out.append((name, int(arg)))
        else:
            raise _UsageError(f"unknown parameter {item!r}")
    if not out:
        raise _UsageError("no parameters requested")
    return out


def compute_record(
    G: Graph,
    params: Sequence[Tuple[str, Optional[int]]],
    *,
    max_candidates: Optional[int] = None,
    max_visits: Optional[int] = None,
) -> Dict:
    """The compute subcommand's JSON object for one graph, as a dict."""
    caps = {}
    if max_candidates is not None:
        caps["max_candidates"] = max_candidates
    if max_visits is not None:
        caps["max_visits"] = max_visits
    rec: Dict = {"graph": graph6_encode(G), "n": G.n, "m": G.m}
    for name, arg in params:
        if name == "h":
            h, model = hadwiger_number(G)
            rec["h"] = h
            rec["h_certificate"] = format_certificate(model)
        elif name in ("hf", "hfs"):
            kind = "weak" if name == "hf" else "strong"
            val = fractional_hadwiger(G, kind, **caps)
            rec[name] = _frac(val.value)
            rec[name + "_display"] = float(val.value)
            rec[name + "_status"] = val.status
            rec[name + "_upper"] = _frac(val.upper_bound)
            if val.certificate is not None:
                rec[name + "_certificate"] = format_certificate(val.certificate)
        elif name == "hr":
            val, cert = r_integral_hadwiger_via_ilp(G, arg, "weak", **caps)
            key = f"hr{arg}"
            rec[key] = _frac(val)
            rec[key + "_display"] = float(val)
            if cert is not None:
                rec[key + "_certificate"] = format_certificate(cert)
        elif name == "tw":
            w, td = treewidth(G)
            rec["tw"] = w
            rec["tw_certificate"] = format_certificate(td)
        elif name == "bn":
            order, fam, hit = bramble_number(G, **caps)
            rec["bn"] = order
            rec["bn_certificate"] = format_certificate(fam)
            rec["bn_hitting_set"] = " ".join(str(v) for v in hit.members)
        elif name == "sep":
            s, wit = separation_number(G)
            rec["sep"] = s
            rec["sep_certificate"] = format_certificate(wit)
        elif name == "grid":
            k, model = max_grid_minor(G)
            rec["grid"] = k
            rec["grid_certificate"] = format_certificate(model)
        elif name == "bounds":
            report = bound_report(G, graph_id=rec["graph"])
            rec["bounds"] = [
                {
                    "name": e.name,
                    "lhs": _frac(e.lhs),
                    "rhs": _frac(e.rhs),
                    "holds": e.holds,
                    "exact": e.exact,
                }
                for e in report.entries
            ]
            rec["bounds_all_hold"] = report.all_hold
    return rec


def _compute_row(work: Tuple[str, Tuple, Optional[int], Optional[int]]) -> str:
    g6, params, max_candidates, max_visits = work
    G = graph6_decode(g6)
    try:
        rec = compute_record(
            G, params, max_candidates=max_candidates, max_visits=max_visits
        )
    except CapacityError as exc:
        rec = {"graph": g6, "n": G.n, "m": G.m, "error": str(exc)}
    return json.dumps(rec)


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _cmd_compute(args: argparse.Namespace) -> int:
    params = _parse_params(args.params)
    graphs = _collect_graphs(args)
    if not graphs:
        raise ValueError("no input graphs given")
    work = [
        (graph6_encode(G), tuple(params), args.max_candidates, args.max_visits)
        for G in graphs
    ]
    workers = _worker_count()
    if workers > 1 and len(work) > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            for line in pool.imap(_compute_row, work):
                print(line)
    else:
        for item in work:
            print(_compute_row(item))
    return 0


def _certify_value(G: Graph, cert) -> Dict:
    if isinstance(cert, MinorModel):
        verify_minor_model(G, cert)
        return {"type": "minor-model", "order": cert.order, "breadth": cert.breadth}
    if isinstance(cert, WeightedBramble):
        validate_weighted_bramble(G, cert)
        return {
            "type": "weighted-bramble",
            "kind": cert.kind,
            "value": _frac(cert.value),
            "value_display": float(cert.value),
        }
    if isinstance(cert, BrambleFamily):
        validate_bramble(G, cert)
        return {"type": "bramble", "kind": cert.kind, "order": hitting_number(G, cert)}
    if isinstance(cert, TreeDecomposition):
        verify_tree_decomposition(G, cert)
        return {"type": "tree-decomposition", "width": cert.width}
    if isinstance(cert, Separation):
        verify_separation(G, cert)
        return {
            "type": "separation",
            "subgraph_order": len(cert.subgraph),
            "separator_size": len(cert.separator),
        }
    raise TypeError(f"unsupported certificate {type(cert).__name__}")


def _cmd_certify(args: argparse.Namespace) -> int:
    graphs = _collect_graphs(args)
    if len(graphs) != 1:
        raise _UsageError(f"certify needs exactly one graph, got {len(graphs)}")
    G = graphs[0]
    with open(args.certificate) as fh:
        text = fh.read()
    try:
        cert = parse_certificate(text)
        result = _certify_value(G, cert)
    except (ValueError, CertificateError) as exc:
        print(json.dumps({"valid": False, "reason": str(exc)}))
        return 1
    print(json.dumps({"valid": True, **result}))
    return 0


@dataclass(frozen=True)
class SurveyRow:
    n: int
    p: Fraction
    seed: int
    hadwiger: int
    fractional: Fraction
    status: str


def survey_rows(
    n: int,
    p,
    samples: int,
    seed: int,
    *,
    max_candidates: Optional[int] = None,
    max_visits: Optional[int] = None,
) -> List[SurveyRow]:
    """One row per sample of G(n, p); row i uses seed ``seed + i``."""
    prob = as_probability(p)
    caps = {}
    if max_candidates is not None:
        caps["max_candidates"] = max_candidates
    if max_visits is not None:
        caps["max_visits"] = max_visits
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    rows = []
    for i in range(samples):
        s = seed + i
        G = random_gnp(n, prob, s)
        h, _ = hadwiger_number(G)
        hf = fractional_hadwiger(G, "weak", **caps)
        rows.append(SurveyRow(n, prob, s, h, hf.value, hf.status))
    return rows


def _survey_ratio(row: SurveyRow) -> str:
    """Display-only growth ratio: hf * sqrt(log_b n) / n with b = 1/(1-p).

    Blank when p is 0 or 1 (the base degenerates)."""
    if row.p == 0 or row.p == 1:
        return ""
    b = 1.0 / (1.0 - float(row.p))
    val = float(row.fractional) * math.sqrt(math.log(row.n) / math.log(b)) / row.n
    return f"{val:.6f}"


def _cmd_survey(args: argparse.Namespace) -> int:
    rows = survey_rows(
        args.n,
        args.p,
        args.samples,
        args.seed,
        max_candidates=args.max_candidates,
        max_visits=args.max_visits,
    )
    print("n,p,seed,h,hf,hf_status,ratio")
    for row in rows:
        print(
            f"{row.n},{_frac(row.p)},{row.seed},{row.hadwiger},"
            f"{_frac(row.fractional)},{row.status},{_survey_ratio(row)}"
        )
    k = len(rows)
    mean_h = Fraction(sum(r.hadwiger for r in rows), k)
    mean_hf = sum((r.fractional for r in rows), Fraction(0)) / k
    eq = Fraction(sum(1 for r in rows if r.fractional == r.hadwiger), k)
    print(
        f"# samples={k} mean_h={_frac(mean_h)} mean_hf={_frac(mean_hf)}"
        f" frac_h_eq_hf={_frac(eq)}"
    )
    return 0


def _cmd_construct(args: argparse.Namespace) -> int:
    search = "exhaustive" if args.exhaustive or args.samples is None else "sampled"
    spec = WitnessSpec(
        n0=args.n0,
        mode=args.mode,
        density=as_probability(args.p) if args.p is not None else None,
        forbidden_order=args.forbidden_order,
        breadth=args.breadth,
        search=search,
        samples=args.samples or 0,
        seed=args.seed,
    )
    witness = search_witness(spec)
    rec: Dict = {
        "witness": graph6_encode(witness.graph),
        "n0": witness.graph.n,
        "mode": spec.mode,
        "breadth": witness.breadth,
        "bounded_order": witness.bounded_order,
        "bound": _frac(witness.bound),
        "bound_display": float(witness.bound),
        "epsilon": _frac(witness.epsilon),
        "epsilon_display": float(witness.epsilon),
        "classes_examined": witness.classes_examined,
    }
    if witness.complement_bound is not None:
        rec["complement_bounded_order"] = witness.complement_bounded_order
        rec["complement_bound"] = _frac(witness.complement_bound)
    if args.emit is not None:
        handle = emit_construction(witness, args.emit)
        rec["emit"] = {
            "t": handle.t,
            "order": handle.order,
            "bound": _frac(handle.bound),
            "bound_display": float(handle.bound),
            "epsilon": _frac(handle.epsilon),
        }
        if args.query is not None:
            u, v = args.query
            rec["query"] = {"u": u, "v": v, "adjacent": handle.adjacent(u, v)}
    print(json.dumps(rec))
    if args.emit is not None and args.stream_edges:
        for u, v in emit_construction(witness, args.emit).edges():
            print(f"{u} {v}")
    return 0


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--g6", action="append", metavar="STRING", help="graph6 string")
    p.add_argument(
        "--g6-file", action="append", metavar="PATH", help="file of graph6 lines"
    )
    p.add_argument(
        "--edges", action="append", metavar="PATH", help="edge-list file ('n m' header)"
    )
    p.add_argument(
        "--gen",
        action="append",
        metavar="SPEC",
        help="generator, e.g. grid:3, complete:5, bipartite:2,3, gnp:10,1/2,7",
    )


def _add_cap_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-candidates", type=int, help="candidate-set cap")
    p.add_argument("--max-visits", type=int, help="search-node cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minorkit", description="exact clique-minor and width computations"
    )
    parser.add_argument("--config", metavar="PATH", help="JSON file of default options")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="parameters and certificates as JSON lines")
    _add_graph_args(p_compute)
    _add_cap_args(p_compute)
    p_compute.add_argument(
        "--params",
        required=False,
        help="comma list of h, hf, hfs, hr:<r>, tw, bn, sep, grid, bounds",
    )
    p_compute.set_defaults(fn=_cmd_compute)

    p_certify = sub.add_parser("certify", help="validate a certificate against a graph")
    _add_graph_args(p_certify)
    p_certify.add_argument("--certificate", required=True, metavar="PATH")
    p_certify.set_defaults(fn=_cmd_certify)

    p_survey = sub.add_parser("survey", help="seeded random-graph statistics as CSV")
    p_survey.add_argument("--n", type=int, required=True)
    p_survey.add_argument("--p", required=True, help="edge probability, e.g. 1/2")
    p_survey.add_argument("--samples", type=int, required=True)
    p_survey.add_argument("--seed", type=int, default=0)
    _add_cap_args(p_survey)
    p_survey.set_defaults(fn=_cmd_survey)

    p_construct = sub.add_parser("construct", help="witness search and blow-up emission")
    p_construct.add_argument("--n0", type=int, required=True)
    p_construct.add_argument("--mode", choices=["mader", "thomason"], required=True)
    p_construct.add_argument("--p", help="density threshold for mader mode")
    p_construct.add_argument("--forbidden-order", type=int)
    p_construct.add_argument("--breadth", type=int)
    p_construct.add_argument("--exhaustive", action="store_const", const=True)
    p_construct.add_argument("--samples", type=int)
    p_construct.add_argument("--seed", type=int, default=0)
    p_construct.add_argument("--emit", type=int, metavar="T")
    p_construct.add_argument("--query", type=int, nargs=2, metavar=("U", "V"))
    p_construct.add_argument("--stream-edges", action="store_const", const=True)
    p_construct.set_defaults(fn=_cmd_construct)
    return parser


def _apply_config(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if not args.config:
        return
    with open(args.config) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    for key, value in data.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ValueError(f"config key {key!r} matches no option")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(parser, args)
        if args.command == "compute" and not args.params:
            raise _UsageError("compute needs --params")
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, CertificateError, Graph6Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
