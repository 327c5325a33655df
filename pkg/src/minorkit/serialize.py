"""Plain-text certificate formats, one per certificate type, all line
oriented and exactly round-tripping.

Every format starts with a header line whose first token names the type, so
a file can be parsed without knowing what it holds.  Vertices are written in
ascending order and weights as explicit p/q fractions.  Writing is
canonical: parse(format(x)) == x for every certificate object, and
format(parse(t)) == t whenever t was produced by format.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple, Union

from .brambles import BrambleFamily
from .fractional import WeightedBramble
from .graphs import Graph, VertexSet, graph6_decode, graph6_encode
from .minors import CliqueOrder, MinorModel, PatternGraph
from .width import Separation, TreeDecomposition

Certificate = Union[MinorModel, BrambleFamily, WeightedBramble, TreeDecomposition, Separation]


def _vertex_line(s: VertexSet) -> str:
    return " ".join(str(v) for v in s.members)


def _parse_vertices(parts: List[str], host_n: int, lineno: int) -> VertexSet:
    out = []
    for p in parts:
        try:
            v = int(p)
        except ValueError:
            raise ValueError(f"line {lineno}: {p!r} is not a vertex") from None
        out.append(v)
    if sorted(out) != out or len(set(out)) != len(out):
        raise ValueError(f"line {lineno}: vertices must be strictly increasing")
    try:
        return VertexSet(host_n, out)
    except ValueError as exc:
        raise ValueError(f"line {lineno}: {exc}") from None


def _first_line(text: str) -> str:
    lines = text.splitlines()
    if not lines:
        raise ValueError("line 1: empty document")
    return lines[0]


def _header_fields(line: str, tag: str, keys: Tuple[str, ...]) -> List[str]:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise ValueError(f"line 1: expected a {tag!r} header")
    if len(parts) != 1 + len(keys):
        raise ValueError(f"line 1: {tag} header needs fields {', '.join(keys)}")
    vals = []
    for part, key in zip(parts[1:], keys):
        prefix = key + "="
        if not part.startswith(prefix):
            raise ValueError(f"line 1: expected {key}=..., got {part!r}")
        vals.append(part[len(prefix) :])
    return vals


def _parse_int(text: str, what: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"line {lineno}: {what} {text!r} is not an integer") from None


def _body_lines(text: str) -> List[Tuple[int, str]]:
    lines = text.splitlines()
    if not lines:
        raise ValueError("line 1: empty document")
    return [(i + 2, ln) for i, ln in enumerate(lines[1:]) if ln.strip()]


# ---------------------------------------------------------------------------
# minor models


def format_minor_model(model: MinorModel) -> str:
    if isinstance(model.pattern, CliqueOrder):
        pat = f"clique:{model.pattern.order}"
    else:
        pat = f"graph:{graph6_encode(model.pattern.graph)}"
    lines = [f"minor-model host={model.host_n} pattern={pat}"]
    lines.extend(_vertex_line(b) for b in model.branch_sets)
    return "\n".join(lines) + "\n"


def parse_minor_model(text: str) -> MinorModel:
    host_s, pat_s = _header_fields(_first_line(text), "minor-model", ("host", "pattern"))
    host_n = _parse_int(host_s, "host order", 1)
    kind, _, rest = pat_s.partition(":")
    if kind == "clique":
        pattern: Union[CliqueOrder, PatternGraph] = CliqueOrder(_parse_int(rest, "clique order", 1))
    elif kind == "graph":
        pattern = PatternGraph(graph6_decode(rest))
    else:
        raise ValueError(f"line 1: unknown pattern kind {kind!r}")
    sets = tuple(
        _parse_vertices(ln.split(), host_n, no) for no, ln in _body_lines(text)
    )
    return MinorModel(host_n, sets, pattern)


# ---------------------------------------------------------------------------
# brambles, weighted and not


def format_bramble(family: BrambleFamily) -> str:
    lines = [f"bramble host={family.host_n} kind={family.kind}"]
    lines.extend(_vertex_line(s) for s in family.members)
    return "\n".join(lines) + "\n"


def parse_bramble(text: str) -> BrambleFamily:
    host_s, kind = _header_fields(_first_line(text), "bramble", ("host", "kind"))
    host_n = _parse_int(host_s, "host order", 1)
    if kind not in ("weak", "strong"):
        raise ValueError(f"line 1: unknown kind {kind!r}")
    members = tuple(
        _parse_vertices(ln.split(), host_n, no) for no, ln in _body_lines(text)
    )
    return BrambleFamily(host_n, members, kind)


def format_weighted_bramble(wb: WeightedBramble) -> str:
    lines = [f"weighted-bramble host={wb.host_n} kind={wb.kind}"]
    for s, w in zip(wb.members, wb.weights):
        lines.append(f"{w.numerator}/{w.denominator} {_vertex_line(s)}")
    return "\n".join(lines) + "\n"


def _parse_weight(text: str, lineno: int) -> Fraction:
    num, slash, den = text.partition("/")
    if not slash:
        raise ValueError(f"line {lineno}: weight {text!r} is not of the form p/q")
    p = _parse_int(num, "weight numerator", lineno)
    q = _parse_int(den, "weight denominator", lineno)
    if q < 1:
        raise ValueError(f"line {lineno}: weight denominator must be positive")
    return Fraction(p, q)


def parse_weighted_bramble(text: str) -> WeightedBramble:
    host_s, kind = _header_fields(
        _first_line(text), "weighted-bramble", ("host", "kind")
    )
    host_n = _parse_int(host_s, "host order", 1)
    if kind not in ("weak", "strong"):
        raise ValueError(f"line 1: unknown kind {kind!r}")
    members = []
    weights = []
    for no, ln in _body_lines(text):
        parts = ln.split()
        weights.append(_parse_weight(parts[0], no))
        members.append(_parse_vertices(parts[1:], host_n, no))
    return WeightedBramble(host_n, tuple(members), tuple(weights), kind)


# ---------------------------------------------------------------------------
# tree decompositions


def format_tree_decomposition(td: TreeDecomposition) -> str:
    lines = [f"tree-decomposition host={td.host_n}"]
    for i, bag in enumerate(td.bags):
        lines.append(f"bag {i}: {_vertex_line(bag)}".rstrip())
    for a, b in td.edges:
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str) -> TreeDecomposition:
    (host_s,) = _header_fields(_first_line(text), "tree-decomposition", ("host",))
    host_n = _parse_int(host_s, "host order", 1)
    bags: List[VertexSet] = []
    edges: List[Tuple[int, int]] = []
    for no, ln in _body_lines(text):
        parts = ln.split()
        if parts[0] == "bag":
            if edges:
                raise ValueError(f"line {no}: bags must precede edges")
            if len(parts) < 2 or not parts[1].endswith(":"):
                raise ValueError(f"line {no}: expected 'bag <index>:'")
            idx = _parse_int(parts[1][:-1], "bag index", no)
            if idx != len(bags):
                raise ValueError(f"line {no}: bag index {idx}, expected {len(bags)}")
            bags.append(_parse_vertices(parts[2:], host_n, no))
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise ValueError(f"line {no}: expected 'edge <a> <b>'")
            edges.append(
                (_parse_int(parts[1], "bag index", no), _parse_int(parts[2], "bag index", no))
            )
        else:
            raise ValueError(f"line {no}: expected a bag or edge line")
    return TreeDecomposition(host_n, tuple(bags), tuple(edges))


# ---------------------------------------------------------------------------
# separations


def format_separation(sep: Separation) -> str:
    lines = [f"separation host={sep.host_n}"]
    lines.append(f"subgraph {_vertex_line(sep.subgraph)}".rstrip())
    lines.append(f"separator {_vertex_line(sep.separator)}".rstrip())
    lines.append(f"side1 {_vertex_line(sep.side1)}".rstrip())
    lines.append(f"side2 {_vertex_line(sep.side2)}".rstrip())
    return "\n".join(lines) + "\n"


def parse_separation(text: str) -> Separation:
    (host_s,) = _header_fields(_first_line(text), "separation", ("host",))
    host_n = _parse_int(host_s, "host order", 1)
    fields = {}
    for no, ln in _body_lines(text):
        parts = ln.split()
        tag = parts[0]
        if tag not in ("subgraph", "separator", "side1", "side2"):
            raise ValueError(f"line {no}: unknown field {tag!r}")
        if tag in fields:
            raise ValueError(f"line {no}: duplicate field {tag!r}")
        fields[tag] = _parse_vertices(parts[1:], host_n, no)
    missing = [t for t in ("subgraph", "separator", "side1", "side2") if t not in fields]
    if missing:
        raise ValueError(f"missing fields: {', '.join(missing)}")
    return Separation(
        host_n, fields["subgraph"], fields["separator"], fields["side1"], fields["side2"]
    )


# ---------------------------------------------------------------------------
# dispatch


_FORMATTERS = {
    MinorModel: format_minor_model,
    BrambleFamily: format_bramble,
    WeightedBramble: format_weighted_bramble,
    TreeDecomposition: format_tree_decomposition,
    Separation: format_separation,
}

_PARSERS = {
    "minor-model": parse_minor_model,
    "bramble": parse_bramble,
    "weighted-bramble": parse_weighted_bramble,
    "tree-decomposition": parse_tree_decomposition,
    "separation": parse_separation,
}


def format_certificate(cert: Certificate) -> str:
    fn = _FORMATTERS.get(type(cert))
    if fn is None:
        raise TypeError(f"cannot serialize {type(cert).__name__}")
    return fn(cert)


def parse_certificate(text: str) -> Certificate:
    first = text.split(None, 1)
    if not first:
        raise ValueError("line 1: empty document")
    fn = _PARSERS.get(first[0])
    if fn is None:
        raise ValueError(f"line 1: unknown certificate type {first[0]!r}")
    return fn(text)
