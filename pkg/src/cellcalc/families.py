"""Builtin algebra families and the registry the CLI resolves identifiers with."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Iterable, Sequence

import networkx as nx

from cellcalc.algebra import (
    DEFAULT_LENGTH_BOUND,
    Algebra,
    Quiver,
    Relation,
    build_path_algebra,
)
from cellcalc.errors import InputError


def zigzag_presentation(
    vertices: Sequence, edges: Iterable[tuple]
) -> tuple[Quiver, list[Relation]]:
    """Double quiver of a graph with the zigzag relations.

    Arrow ``x_u_v`` goes from ``u`` to ``v``.  Killed: every path u->v->w with
    u != w.  Identified: all 2-cycles at a vertex.  Also killed: the paths
    u->v->u->v, which only matters when both ends of an edge have degree one.
    """
    vertices = [str(v) for v in vertices]
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from((str(u), str(v)) for u, v in edges)
    if len(vertices) < 2 or g.number_of_edges() == 0:
        raise InputError("zigzag needs a graph with at least two vertices and one edge")
    if not nx.is_connected(g):
        raise InputError("zigzag needs a connected graph")
    if any(u == v for u, v in g.edges):
        raise InputError("zigzag needs a simple graph (no loops)")

    def arrow(u, v):
        return f"x_{u}_{v}"

    arrows = []
    for u in vertices:
        for v in vertices:
            if g.has_edge(u, v):
                arrows.append((arrow(u, v), u, v))
    rels: list[Relation] = []
    for v in vertices:
        nbrs = [u for u in vertices if g.has_edge(u, v)]
        for u in nbrs:
            for w in nbrs:
                if u != w:
                    rels.append(Relation.monomial(arrow(u, v), arrow(v, w)))
        cycles = [(arrow(v, u), arrow(u, v)) for u in nbrs]
        for c in cycles[1:]:
            rels.append(Relation.difference(cycles[0], c))
    for u, v in sorted((u, v) for u in vertices for v in vertices if g.has_edge(u, v)):
        rels.append(Relation.monomial(arrow(u, v), arrow(v, u), arrow(u, v)))
    return Quiver(tuple(vertices), tuple(arrows)), rels


def zigzag(vertices: Sequence, edges: Iterable[tuple], length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    q, rels = zigzag_presentation(vertices, edges)
    return build_path_algebra(q, rels, length_bound)


def star_presentation(k: int) -> tuple[Quiver, list[Relation]]:
    """Star graph S_k: hub 0 joined to leaves 1..k.

    Arrows follow the usual naming: a_i : 0 -> i and b_i : i -> 0.  For k = 2
    the relations are a2b1, a1b2 and b2a2 - b1a1 (product notation).
    """
    if k < 1:
        raise InputError("star graph needs k >= 1")
    vertices = [str(i) for i in range(k + 1)]
    arrows = []
    for i in range(1, k + 1):
        arrows.append((f"a{i}", "0", str(i)))
        arrows.append((f"b{i}", str(i), "0"))
    rels = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                rels.append(Relation.monomial(f"b{i}", f"a{j}"))  # i -> 0 -> j
    for i in range(2, k + 1):
        rels.append(Relation.difference(("a1", "b1"), (f"a{i}", f"b{i}")))
    # i -> 0 -> i -> 0; a consequence of the above unless k = 1
    for i in range(1, k + 1):
        rels.append(Relation.monomial(f"b{i}", f"a{i}", f"b{i}"))
    if k == 1:
        rels.append(Relation.monomial("a1", "b1", "a1"))
    return Quiver(tuple(vertices), tuple(arrows)), rels


def star(k: int, length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    q, rels = star_presentation(k)
    return build_path_algebra(q, rels, length_bound)


def an_linear(n: int, length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    """Hereditary A_n, uniformly oriented 1 -> 2 -> ... -> n."""
    if n < 1:
        raise InputError("A_n needs n >= 1")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple((f"t{i}", str(i), str(i + 1)) for i in range(1, n))
    return build_path_algebra(Quiver(vertices, arrows), [], length_bound)


def two_vertex_ab(length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    """kQ/<alpha beta> on 1 <-> 2, alpha: 1 -> 2, beta: 2 -> 1.

    The killed product alpha*beta is "beta, then alpha" (the cycle at 2), so
    e2 A e2 is the ground field while the cycle at 1 survives.
    """
    q = Quiver(("1", "2"), (("alpha", "1", "2"), ("beta", "2", "1")))
    return build_path_algebra(q, [Relation.monomial("beta", "alpha")], length_bound)


def read_graph(path: str | Path) -> tuple[list[str], list[tuple[str, str]]]:
    """Graph file: {"vertices": [...], "edges": [[u, v], ...]}."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        vertices = [str(v) for v in data["vertices"]]
        edges = [(str(u), str(v)) for u, v in data["edges"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read graph file {path}: {exc}") from exc
    return vertices, edges


def _int_arg(arg: str, family: str) -> int:
    try:
        return int(arg)
    except ValueError:
        raise InputError(f"{family} expects an integer parameter, got {arg!r}") from None


# name -> builder(argument string or None, length bound)
BUILTINS: dict[str, Callable[[str | None, int], Algebra]] = {
    "zigzag-star": lambda arg, lb: star(_int_arg(arg, "zigzag-star"), lb),
    "zigzag": lambda arg, lb: zigzag(*read_graph(arg), length_bound=lb),
    "an": lambda arg, lb: an_linear(_int_arg(arg, "an"), lb),
    "two-vertex-ab": lambda arg, lb: two_vertex_ab(lb),
}


def builtin(spec: str, length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    """Resolve identifiers such as ``zigzag-star:2``, ``an:3``, ``two-vertex-ab``."""
    name, _, arg = spec.partition(":")
    if name not in BUILTINS:
        raise InputError(f"unknown builtin {name!r}; known: {', '.join(sorted(BUILTINS))}")
    if name != "two-vertex-ab" and not arg:
        raise InputError(f"builtin {name!r} needs a parameter, e.g. {name}:2")
    return BUILTINS[name](arg or None, length_bound)
