"""Decategorified 2-representations: action matrices and the checks built on them.

Matrix convention: ``matrix(F)[t][s]`` is the multiplicity of object ``t`` in
``F`` applied to object ``s`` (columns are sources), so composition is the
ordinary product ``matrix(x o y) = matrix(x) @ matrix(y)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from cellcalc.algebra import Algebra, corner_algebra, is_core
from cellcalc.bimodcat import ID, F, MorLabel, Subcat, classify, compose, product_subcat
from cellcalc.cells import (
    apex,
    cell_decomposition,
    idempotent_jcells,
    is_strongly_regular,
    vacuous_cells,
    vacuous_columns,
)
from cellcalc.errors import (
    ColumnNotPresent,
    InputError,
    NotACore,
    NotConformant,
    NotSuperdiagonal,
    SizeMismatch,
)

MAX_SEARCH = 10  # objects; cap for exhaustive ordering searches


@dataclass(frozen=True, eq=False)
class DecatRep:
    objects: tuple
    matrices: Mapping[MorLabel, np.ndarray]

    @property
    def rank(self) -> int:
        return len(self.objects)

    def __getitem__(self, x: MorLabel) -> np.ndarray:
        return self.matrices[x]

    def labels(self) -> list[MorLabel]:
        return sorted(self.matrices, key=MorLabel.sort_key)

    def scaled(self, factor: int) -> "DecatRep":
        """Every non-identity matrix multiplied by ``factor``."""
        return DecatRep(
            self.objects,
            {x: (m if x.is_id else factor * m) for x, m in self.matrices.items()},
        )

    def to_json(self, a: Algebra | None = None) -> dict:
        objs = [a.label(o) if a is not None and isinstance(o, int) else o for o in self.objects]
        return {
            "objects": objs,
            "matrices": {x.show(a): self.matrices[x].tolist() for x in self.labels()},
        }


_LABEL = re.compile(r"^\s*F\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*$")


def parse_label(a: Algebra, text: str) -> MorLabel:
    if text.strip() == "Id":
        return ID
    m = _LABEL.match(text)
    if not m:
        raise InputError(f"cannot parse 1-morphism label {text!r}")
    return F(a.index(m.group(1)), a.index(m.group(2)))


def rep_from_json(a: Algebra, data: Mapping) -> DecatRep:
    try:
        objects = tuple(data["objects"])
        # objects named by vertex labels come back as vertex indices
        if all(isinstance(o, str) and o in a.vertices for o in objects):
            objects = tuple(a.index(o) for o in objects)
        n = len(objects)
        matrices = {}
        for key, rows in data["matrices"].items():
            mat = np.array(rows, dtype=np.int64).reshape(n, n)
            if (mat < 0).any():
                raise InputError(f"negative entry in matrix of {key}")
            matrices[parse_label(a, key)] = mat
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed representation JSON: {exc}") from exc
    matrices.setdefault(ID, np.eye(n, dtype=np.int64))
    if not np.array_equal(matrices[ID], np.eye(n, dtype=np.int64)):
        raise InputError("Id must act by the identity matrix")
    return DecatRep(objects, matrices)


def direct_sum(reps: Sequence[DecatRep]) -> DecatRep:
    labels = set.intersection(*(set(r.matrices) for r in reps))
    objects = tuple((k, o) for k, r in enumerate(reps) for o in r.objects)
    n = len(objects)
    mats = {}
    for x in labels:
        m = np.zeros((n, n), dtype=np.int64)
        off = 0
        for r in reps:
            m[off:off + r.rank, off:off + r.rank] = r.matrices[x]
            off += r.rank
        mats[x] = m
    return DecatRep(objects, mats)


def permuted(rep: DecatRep, order: Sequence[int]) -> DecatRep:
    """Relabel objects so that new object k is old object ``order[k]``."""
    idx = np.array(order)
    return DecatRep(
        tuple(rep.objects[k] for k in order),
        {x: m[np.ix_(idx, idx)] for x, m in rep.matrices.items()},
    )


def _superdiagonal_core(a: Algebra, s: Subcat) -> frozenset[int]:
    shape = classify(a, s)
    if not shape.is_superdiagonal:
        raise NotSuperdiagonal("cell representations are built for U-superdiagonal subcategories")
    return shape.n_left


def cell_rep(a: Algebra, s: Subcat, j0: int | MorLabel | None) -> DecatRep:
    """Action matrices of the cell 2-representation for the left cell U x {j0}.

    ``j0 = None`` (or ``ID``) is the trivial cell {Id}.  Objects are the
    vertices of U; ``F(i, j)`` sends object k to object i with multiplicity
    dim e_j A e_k.  The matrices do not depend on which column j0 is used.
    """
    u = _superdiagonal_core(a, s)
    if j0 is None or j0 == ID:
        one = np.ones((1, 1), dtype=np.int64)
        mats = {x: (one if x.is_id else np.zeros((1, 1), dtype=np.int64)) for x in s.morphisms()}
        return DecatRep(("Id",), mats)
    if j0 not in classify(a, s).n_right:
        raise ColumnNotPresent(f"column {j0} is not in N_R of the subcategory")
    objs = sorted(u)
    pos = {v: k for k, v in enumerate(objs)}
    n = len(objs)
    mats = {ID: np.eye(n, dtype=np.int64)}
    for i, j in s:
        m = np.zeros((n, n), dtype=np.int64)
        for k in objs:
            m[pos[i], pos[k]] = a.dims[j][k]
        mats[F(i, j)] = m
    return DecatRep(tuple(objs), mats)


@dataclass(frozen=True)
class FunctorialityResult:
    ok: bool
    counterexample: tuple | None = None  # (x, y, product, expected)

    def __bool__(self) -> bool:
        return self.ok


def check_functoriality(a: Algebra, s: Subcat, rep: DecatRep) -> FunctorialityResult:
    """matrix(x) @ matrix(y) == sum over compose(x, y) for all label pairs."""
    labels = s.morphisms()
    n = rep.rank
    for x, y in itertools.product(labels, repeat=2):
        lhs = rep[x] @ rep[y]
        rhs = np.zeros((n, n), dtype=np.int64)
        for z, mult in compose(a, x, y).items():
            rhs += mult * rep[z]
        if not np.array_equal(lhs, rhs):
            return FunctorialityResult(False, (x, y, lhs, rhs))
    return FunctorialityResult(True)


@dataclass(frozen=True, eq=False)
class CandidateRep:
    rep: DecatRep
    cartan: np.ndarray


def _orderings(n: int, compatible) -> "itertools.Iterator[tuple[int, ...]]":
    """Backtracking over bijections a -> p[a]; ``compatible(prefix)`` prunes."""

    def extend(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for o in range(n):
            if o not in prefix:
                prefix.append(o)
                if compatible(prefix):
                    yield from extend(prefix)
                prefix.pop()

    yield from extend([])


def std_arg_check(
    c: CandidateRep,
    cell_cartan,
    l: int,
    cell: Sequence[int] | None = None,
) -> bool:
    """Matrix-level shadow of the standard recognition argument for cell reps.

    Looks for an ordering of the candidate's objects under which (1) its
    Cartan matrix equals ``cell_cartan`` and (2) for every k, the k-th label
    F_k = F(cell[k], cell[l]) of the left cell acts like ``Q f_k (x) f_l Q``:
    its only nonzero row is row k, and that row equals row l of the Cartan
    matrix.  ``cell`` lists the vertices indexing the left cell (defaults to
    the candidate's objects).
    """
    target = np.asarray(cell_cartan, dtype=np.int64)
    cartan = np.asarray(c.cartan, dtype=np.int64)
    n = target.shape[0]
    if target.shape != (n, n) or cartan.shape != (n, n) or c.rep.rank != n:
        raise SizeMismatch(
            f"candidate of rank {c.rep.rank} with Cartan {cartan.shape} vs cell Cartan {target.shape}"
        )
    if n > MAX_SEARCH:
        raise ValueError(f"ordering search is capped at {MAX_SEARCH} objects")
    if not 0 <= l < n:
        raise SizeMismatch(f"index l={l} outside 0..{n - 1}")
    cell = list(c.rep.objects if cell is None else cell)
    try:
        acts = [c.rep[F(cell[k], cell[l])] for k in range(n)]
    except KeyError as exc:
        raise SizeMismatch(f"candidate has no matrix for {exc.args[0]}") from None

    def compatible(p):
        k = len(p) - 1
        if any(cartan[p[a], p[k]] != target[a, k] or cartan[p[k], p[a]] != target[k, a] for a in range(k + 1)):
            return False
        return True

    for p in _orderings(n, compatible):
        ok = True
        for k in range(n):
            m = acts[k]
            rows = [r for r in range(n) if m[r].any()]
            if rows != [p[k]] or any(m[p[k], p[b]] != target[l, b] for b in range(n)):
                ok = False
                break
        if ok:
            return True
    return False


@dataclass(frozen=True)
class BlockReport:
    blocks: int  # number of diagonal blocks equal to the cell-rep block
    ordering: tuple[int, ...]  # new position k holds old object ordering[k]
    zero_size: int  # size of the trailing zero block


def u_diagonal_sum(rep: DecatRep, u: Sequence[int]) -> np.ndarray:
    return sum(rep[F(i, j)] for i in u for j in u)


def block_structure(a: Algebra, u: Sequence[int], rep: DecatRep) -> BlockReport:
    """Find an object ordering putting sum_{U x U} [F(i,j)] into block form.

    Shape sought: diagonal blocks equal to the J_1 cell-rep block B, zeros
    between them, arbitrary entries from those rows into the remaining
    objects, whose rows must vanish entirely.
    """
    u = sorted(u)
    if not u:
        raise NotACore("U must be non-empty")
    try:
        mat = u_diagonal_sum(rep, u)
    except KeyError as exc:
        raise InputError(f"representation lacks a matrix for {exc.args[0]}") from None
    n = rep.rank
    if n > MAX_SEARCH:
        raise ValueError(f"ordering search is capped at {MAX_SEARCH} objects")
    du = product_subcat(u, u)
    block = u_diagonal_sum(cell_rep(a, du, u[0]), u)
    r = len(u)
    zero = [k for k in range(n) if not mat[k].any()]
    live = [k for k in range(n) if mat[k].any()]
    if len(live) % r:
        raise NotConformant(f"{len(live)} non-zero rows cannot split into blocks of size {r}")

    def search(remaining: list[int], chosen: list[tuple[int, ...]]):
        if not remaining:
            return chosen
        first = remaining[0]
        rest = remaining[1:]
        for others in itertools.permutations(rest, r - 1):
            for pos in range(r):
                t = others[:pos] + (first,) + others[pos:]
                if not np.array_equal(mat[np.ix_(t, t)], block):
                    continue
                if any(mat[np.ix_(t, c)].any() or mat[np.ix_(c, t)].any() for c in chosen):
                    continue
                found = search([k for k in rest if k not in t], chosen + [t])
                if found is not None:
                    return found
        return None

    found = search(live, [])
    if found is None:
        raise NotConformant("no ordering exhibits the block form")
    ordering = tuple(k for t in found for k in t) + tuple(zero)
    return BlockReport(len(found), ordering, len(zero))


# -- consequence suite -------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    details: str = ""


@dataclass
class SuiteReport:
    u: tuple[int, ...]
    v: tuple[int, ...]
    checks: list[Check] = field(default_factory=list)
    conclusion: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, details: str = "") -> None:
        self.checks.append(Check(name, bool(passed), details))

    def to_json(self, a: Algebra | None = None) -> dict:
        lab = (lambda i: a.label(i)) if a is not None else (lambda i: i)
        return {
            "u": [lab(i) for i in self.u],
            "v": [lab(i) for i in self.v],
            "level": "decategorified check",
            "checks": [{"name": c.name, "pass": c.passed, "details": c.details} for c in self.checks],
            "conclusion": self.conclusion,
            "pass": self.passed,
        }


def _names(a: Algebra, cell) -> str:
    return "{" + ", ".join(x.show(a) for x in sorted(cell, key=MorLabel.sort_key)) + "}"


def theorem_consequence_suite(a: Algebra, u, v) -> SuiteReport:
    """Matrix-level consequences of the classification for D_{U x V}.

    Raises NotACore / NotSuperdiagonal when the setting does not apply.
    """
    u, v = frozenset(u), frozenset(v)
    if not u or not u <= v:
        raise NotSuperdiagonal("need non-empty U contained in V")
    if not is_core(a, u):
        raise NotACore(f"{sorted(a.label(i) for i in u)} is not a self-injective core")
    report = SuiteReport(tuple(sorted(u)), tuple(sorted(v)))
    report.add("self-injective core", True, f"U = {sorted(a.label(i) for i in u)}")

    s = product_subcat(u, v)
    du = product_subcat(u, u)
    cd = cell_decomposition(a, s)
    idem = idempotent_jcells(a, cd)
    report.add(
        "exactly two idempotent J-cells",
        len(idem) == 2 and any(c == frozenset({ID}) for c in idem),
        "; ".join(_names(a, c) for c in idem),
    )
    j1 = next((c for c in idem if ID not in c), frozenset())
    vac = vacuous_cells(a, cd)
    vac_cols = vacuous_columns(a, s)
    expected = {frozenset(F(i, j) for i in u) for j in vac_cols}
    report.add(
        "vacuous cells are the columns j with e_j A e_U = 0",
        set(vac) == expected,
        f"vacuous columns {[a.label(j) for j in vac_cols]}",
    )
    report.add(
        "J-cells strongly regular",
        all(is_strongly_regular(cd, c) for c in cd.jcells),
    )

    j1_cols = sorted(j for j in v if F(min(u), j) in j1)
    reps = {j: cell_rep(a, s, j) for j in sorted(v)}
    trivial = cell_rep(a, s, None)

    first = reps[min(v)]
    same = all(
        np.array_equal(reps[j][x], first[x]) for j in reps for x in du.morphisms()
    )
    report.add(
        "cell reps agree on D_{UxU} across columns",
        same,
        f"columns {[a.label(j) for j in sorted(v)]}",
    )

    rows_ok = all(u_diagonal_sum(reps[j], sorted(u)).any(axis=1).all() for j in j1_cols)
    report.add("restriction to D_{UxU} is transitive (all rows nonzero)", rows_ok)

    corner = corner_algebra(a, u)
    cc = np.array(corner.dims, dtype=np.int64)
    objs = sorted(u)
    pos = {x: k for k, x in enumerate(objs)}
    bad = [
        (i, j, l)
        for jj in j1_cols
        for i in objs
        for j in objs
        for l in objs
        if reps[jj][F(i, j)][pos[i], pos[l]] != cc[pos[j], pos[l]]
    ]
    report.add(
        "Cartan identity [F(i,j)]_(i,l) = C^{eAe}_(j,l), multiplicity 1",
        not bad,
        f"{len(bad)} mismatches" if bad else f"corner Cartan {cc.tolist()}",
    )

    std_ok = all(
        std_arg_check(CandidateRep(reps[jj], cc), cc, pos[l], objs)
        for jj in j1_cols
        for l in objs
    )
    report.add("standard recognition check on J_1 cell reps", std_ok)

    funct = [check_functoriality(a, s, r) for r in list(reps.values()) + [trivial]]
    report.add("functoriality of all cell reps", all(funct))

    apexes = []
    for jj in j1_cols:
        rep_apex = apex(a, cd, reps[jj].matrices)
        apexes.append(rep_apex.cell == j1 and rep_apex.idempotent)
    triv_apex = apex(a, cd, trivial.matrices)
    report.add(
        "apex of J_1 cell reps is J_1, of the trivial rep is {Id}",
        all(apexes) and triv_apex.cell == frozenset({ID}),
    )

    blocks = [block_structure(a, objs, reps[jj]).blocks for jj in j1_cols]
    report.add("J_1 cell reps form a single diagonal block", all(b == 1 for b in blocks))

    classes = {frozenset({ID})} | ({j1} if j1_cols else set())
    conclusion_ok = report.passed and len(classes) == 2
    report.conclusion = (
        f"{len(classes)} equivalence classes of simple transitive 2-representations "
        f"(apex {{Id}} and apex J_1)"
    )
    report.add("conclusion", conclusion_ok, report.conclusion)
    return report
