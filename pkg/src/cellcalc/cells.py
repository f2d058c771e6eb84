"""Left, right and two-sided cells of a combinatorial subcategory.

The preorders are reachability in "is a summand of a composite" digraphs;
cells are their strongly connected components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import networkx as nx
import numpy as np

from cellcalc.algebra import Algebra
from cellcalc.bimodcat import MorLabel, Subcat, classify, mu, product_subcat
from cellcalc.errors import NoGreatestElement, NotSubdiagonal, NotSuperdiagonal

Cell = frozenset  # of MorLabel


@dataclass(frozen=True)
class Preorders:
    """``left[f]`` is the set of g with g >=_L f (reflexive, transitive)."""

    elements: tuple[MorLabel, ...]
    left: Mapping[MorLabel, frozenset[MorLabel]]
    right: Mapping[MorLabel, frozenset[MorLabel]]
    two_sided: Mapping[MorLabel, frozenset[MorLabel]]

    def geq(self, side: str, g: MorLabel, f: MorLabel) -> bool:
        return g in getattr(self, side)[f]


def _closure(elements, edges) -> dict[MorLabel, frozenset[MorLabel]]:
    g = nx.DiGraph()
    g.add_nodes_from(elements)
    g.add_edges_from(edges)
    return {x: frozenset(nx.descendants(g, x)) | {x} for x in elements}


def preorders(a: Algebra, s: Subcat) -> Preorders:
    """Single-generator steps; biadditivity makes these enough."""
    elems = tuple(s.morphisms())
    left_edges, right_edges, j_edges = [], [], []
    for f in elems:
        for h in elems:
            left_edges += [(f, g) for g in mu(a, h, f) if not g.is_zero]
            right_edges += [(f, g) for g in mu(a, f, h) if not g.is_zero]
            for h2 in elems:
                for w in mu(a, f, h2):
                    if not w.is_zero:
                        j_edges += [(f, g) for g in mu(a, h, w) if not g.is_zero]
    return Preorders(
        elems,
        _closure(elems, left_edges),
        _closure(elems, right_edges),
        _closure(elems, j_edges),
    )


def _classes(elems, geq) -> list[Cell]:
    seen, out = set(), []
    for x in elems:
        if x in seen:
            continue
        c = frozenset(y for y in elems if y in geq[x] and x in geq[y])
        seen |= c
        out.append(c)
    return out


def _cell_key(c: Cell):
    return min(x.sort_key() for x in c)


@dataclass(frozen=True)
class Eggbox:
    rows: tuple[Cell, ...]  # right cells
    cols: tuple[Cell, ...]  # left cells
    grid: tuple[tuple[Cell, ...], ...]  # grid[r][c] = rows[r] & cols[c]


@dataclass(frozen=True)
class CellDecomposition:
    subcat: Subcat
    orders: Preorders
    left_cells: tuple[Cell, ...]
    right_cells: tuple[Cell, ...]
    jcells: tuple[Cell, ...]  # decreasing J-order (topological, ties by label)
    jorder: tuple[tuple[int, int], ...]  # Hasse edges (greater, smaller) into jcells
    eggboxes: tuple[Eggbox, ...]  # aligned with jcells

    def jcell_of(self, x: MorLabel) -> Cell:
        return next(c for c in self.jcells if x in c)

    def j_geq(self, c1: Cell, c2: Cell) -> bool:
        return self.orders.geq("two_sided", next(iter(c1)), next(iter(c2)))

    def is_maximal(self, c: Cell) -> bool:
        return not any(d != c and self.j_geq(d, c) for d in self.jcells)


def cell_decomposition(a: Algebra, s: Subcat) -> CellDecomposition:
    po = preorders(a, s)
    elems = po.elements
    left = sorted(_classes(elems, po.left), key=_cell_key)
    right = sorted(_classes(elems, po.right), key=_cell_key)
    jc = _classes(elems, po.two_sided)

    cond = nx.DiGraph()  # edge c -> d when d >_J c
    cond.add_nodes_from(range(len(jc)))
    for x, y in itertools.permutations(range(len(jc)), 2):
        if next(iter(jc[y])) in po.two_sided[next(iter(jc[x]))]:
            cond.add_edge(x, y)
    # greatest first; ties broken by smallest label
    order = list(
        nx.lexicographical_topological_sort(cond.reverse(copy=True), key=lambda k: _cell_key(jc[k]))
    )
    jcells = tuple(jc[k] for k in order)
    pos = {k: n for n, k in enumerate(order)}
    hasse = nx.transitive_reduction(cond)
    jorder = tuple(sorted((pos[y], pos[x]) for x, y in hasse.edges))

    boxes = []
    for c in jcells:
        rows = tuple(r for r in right if r <= c)
        cols = tuple(l for l in left if l <= c)
        boxes.append(Eggbox(rows, cols, tuple(tuple(r & l for l in cols) for r in rows)))
    return CellDecomposition(s, po, tuple(left), tuple(right), jcells, jorder, tuple(boxes))


def is_idempotent(a: Algebra, cell: Cell) -> bool:
    return any(
        h in cell for f, g in itertools.product(cell, repeat=2) for h in mu(a, g, f)
    )


def idempotent_jcells(a: Algebra, cd: CellDecomposition) -> list[Cell]:
    return [c for c in cd.jcells if is_idempotent(a, c)]


def vacuous_cells(a: Algebra, cd: CellDecomposition) -> list[Cell]:
    """J-maximal, non-idempotent J-cells."""
    return [c for c in cd.jcells if cd.is_maximal(c) and not is_idempotent(a, c)]


def vacuous_columns(a: Algebra, s: Subcat) -> list[int]:
    """Columns j of a U-superdiagonal s with e_j A e_h = 0 for all h in U."""
    shape = classify(a, s)
    u = shape.n_left
    return sorted(j for j in shape.n_right if all(a.dims[j][h] == 0 for h in u))


def is_strongly_regular(cd: CellDecomposition, jcell: Cell) -> bool:
    box = cd.eggboxes[cd.jcells.index(jcell)]
    po = cd.orders
    for side, cells in (("left", box.cols), ("right", box.rows)):
        for c1, c2 in itertools.permutations(cells, 2):
            if po.geq(side, next(iter(c1)), next(iter(c2))):
                return False
    return all(len(x) == 1 for row in box.grid for x in row)


@dataclass(frozen=True)
class ApexReport:
    cell: Cell
    idempotent: bool


def apex(a: Algebra, cd: CellDecomposition, matrices: Mapping[MorLabel, np.ndarray]) -> ApexReport:
    """The J-greatest cell among those with a label acting nonzero."""
    alive = [c for c in cd.jcells if any(np.any(matrices[x]) for x in c)]
    top = [c for c in alive if all(cd.j_geq(c, d) for d in alive)]
    if len(top) != 1:
        raise NoGreatestElement(
            f"{len(alive)} non-annihilated J-cells without a greatest element"
        )
    return ApexReport(top[0], is_idempotent(a, top[0]))


def check_sided_preservation(a: Algebra, s: Subcat, side: str = "left") -> bool:
    """Whether the left (right) preorder of s is the restriction of that of C_A.

    The left version needs s superdiagonal; the right one, subdiagonal.
    """
    shape = classify(a, s)
    if side == "left" and not shape.is_superdiagonal:
        raise NotSuperdiagonal("left preorder comparison needs a superdiagonal subcategory")
    if side == "right" and not shape.is_subdiagonal:
        raise NotSubdiagonal("right preorder comparison needs a subdiagonal subcategory")
    full = preorders(a, product_subcat(range(a.m), range(a.m)))
    inner = preorders(a, s)
    rel = getattr(inner, side)
    full_rel = getattr(full, side)
    return all(rel[f] == full_rel[f] & frozenset(inner.elements) for f in inner.elements)


# -- rendering ---------------------------------------------------------------


def eggbox_json(a: Algebra, cd: CellDecomposition, vacuous_semantics: str | None = None) -> dict:
    vac = set(vacuous_cells(a, cd))
    jcells = []
    for c, box in zip(cd.jcells, cd.eggboxes):
        rows = [
            [",".join(x.show(a) for x in sorted(cell, key=MorLabel.sort_key)) or None for cell in row]
            for row in box.grid
        ]
        jcells.append({"rows": rows, "idempotent": is_idempotent(a, c), "vacuous": c in vac})
    out = {"jcells": jcells, "jorder": [list(e) for e in cd.jorder]}
    if vacuous_semantics:
        out["vacuous_semantics"] = vacuous_semantics
    return out


def render_eggbox(a: Algebra, cd: CellDecomposition) -> str:
    """ASCII eggboxes, greatest J-cell first; rows are right cells."""
    data = eggbox_json(a, cd)
    blocks = []
    for n, jc in enumerate(data["jcells"]):
        cells = [[x if x is not None else "·" for x in row] for row in jc["rows"]]
        width = max(len(x) for row in cells for x in row)
        ncols = len(cells[0])
        rule = "+" + "+".join("-" * (width + 2) for _ in range(ncols)) + "+"
        tags = [t for t in ("idempotent", "vacuous") if jc[t]]
        lines = [f"#{n}" + (f" [{', '.join(tags)}]" if tags else ""), rule]
        for row in cells:
            lines.append("|" + "|".join(f" {x:<{width}} " for x in row) + "|")
            lines.append(rule)
        blocks.append("\n".join(lines))
    order = ", ".join(f"#{x} > #{y}" for x, y in data["jorder"]) or "(none)"
    return "\n\n".join(blocks) + f"\n\nJ-order (Hasse): {order}\n"
