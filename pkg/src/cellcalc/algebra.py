"""Basic finite-dimensional algebras given by quivers with relations.

Conventions
-----------
Paths are stored in *traversal order* (first arrow first).  The algebra
product ``x * y`` means "first ``y``, then ``x``", so a path from ``s`` to
``t`` satisfies ``e_t * p * e_s = p`` and is graded ``(t, s)``.  With this
convention ``dims[i][j] = dim e_i A e_j`` counts paths from ``j`` to ``i``,
which is the dimension of ``Hom(A e_i, A e_j)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from cellcalc.errors import InvalidRelation, NotFiniteDimensional, SubsetOutOfRange
from cellcalc.linalg import RowSpace, nullspace, rref

DEFAULT_LENGTH_BOUND = 64
DEFAULT_CORE_BOUND = 16


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...] = ()  # (name, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self, "arrows", tuple((str(n), str(s), str(t)) for n, s, t in self.arrows)
        )
        if not self.vertices:
            raise InvalidRelation("quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidRelation(f"duplicate vertex labels in {self.vertices}")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidRelation(f"duplicate arrow names in {names}")
        for name, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise InvalidRelation(f"arrow {name!r} uses an undeclared vertex")

    def index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise SubsetOutOfRange(f"unknown vertex {label!r}") from None

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise InvalidRelation(f"unknown arrow {name!r}")


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each given in traversal order."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "terms",
            tuple((Fraction(c), tuple(str(a) for a in p)) for c, p in self.terms),
        )

    @classmethod
    def monomial(cls, *path: str) -> "Relation":
        return cls(((Fraction(1), tuple(path)),))

    @classmethod
    def difference(cls, p: Sequence[str], q: Sequence[str]) -> "Relation":
        return cls(((Fraction(1), tuple(p)), (Fraction(-1), tuple(q))))

    def endpoints(self, q: Quiver) -> tuple[str, str]:
        """Validate against ``q`` and return the common (source, target)."""
        if not self.terms:
            raise InvalidRelation("empty relation")
        ends = set()
        for _, path in self.terms:
            if len(path) < 2:
                raise InvalidRelation(f"relation path {path} has length < 2")
            arrows = [q.arrow(a) for a in path]
            for (n1, _, t1), (n2, s2, _) in zip(arrows, arrows[1:]):
                if t1 != s2:
                    raise InvalidRelation(f"path {path} is not composable at {n1}->{n2}")
            ends.add((arrows[0][1], arrows[-1][2]))
        if len(ends) != 1:
            raise InvalidRelation(f"relation terms are not parallel: {sorted(ends)}")
        return ends.pop()


@dataclass(frozen=True)
class BasisElement:
    index: int
    source: int
    target: int
    name: str
    length: int = 0

    @property
    def grading(self) -> tuple[int, int]:
        """(i, j) with e_i * b * e_j = b."""
        return (self.target, self.source)


@dataclass(frozen=True, eq=False)
class Algebra:
    """Structure-constant presentation of a basic algebra.

    ``table[(x, y)]`` is the sparse product ``b_x * b_y`` as ``{z: coef}``;
    missing keys mean zero.  ``idempotents[v]`` is the basis index of ``e_v``.
    """

    vertices: tuple[str, ...]
    basis: tuple[BasisElement, ...]
    table: Mapping[tuple[int, int], Mapping[int, Fraction]]
    idempotents: tuple[int, ...]
    radical: tuple[int, ...]
    presentation: tuple[Quiver, tuple[Relation, ...]] | None = None
    dims: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        m = len(self.vertices)
        d = [[0] * m for _ in range(m)]
        for b in self.basis:
            i, j = b.grading
            d[i][j] += 1
        object.__setattr__(self, "dims", tuple(tuple(r) for r in d))

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise SubsetOutOfRange(f"unknown vertex {label!r}") from None

    def indices(self, labels: Iterable) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def label(self, i: int) -> str:
        return self.vertices[i]

    def mul_basis(self, x: int, y: int) -> Mapping[int, Fraction]:
        return self.table.get((x, y), {})

    def mul(self, u: Sequence, v: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for x, cx in enumerate(u):
            if cx == 0:
                continue
            for y, cy in enumerate(v):
                if cy == 0:
                    continue
                for z, c in self.mul_basis(x, y).items():
                    out[z] += cx * cy * c
        return out

    def unit(self, x: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[x] = Fraction(1)
        return v

    def one(self) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        for e in self.idempotents:
            v[e] += 1
        return v

    def graded(self, i: int | None = None, j: int | None = None) -> list[int]:
        """Basis indices spanning e_i A e_j (either side may be left free)."""
        return [
            b.index
            for b in self.basis
            if (i is None or b.grading[0] == i) and (j is None or b.grading[1] == j)
        ]

    def validate(self) -> None:
        """Check the structural invariants; raises ValueError on failure."""
        n, m = self.dim, self.m
        if sorted(self.idempotents) != sorted(set(self.idempotents)) or len(self.idempotents) != m:
            raise ValueError("need one distinct idempotent basis element per vertex")
        for i, e in enumerate(self.idempotents):
            for k, f in enumerate(self.idempotents):
                prod = self.mul(self.unit(e), self.unit(f))
                if prod != (self.unit(e) if i == k else [0] * n):
                    raise ValueError(f"e_{i}, e_{k} are not orthogonal idempotents")
        one = self.one()
        for x in range(n):
            if self.mul(one, self.unit(x)) != self.unit(x) or self.mul(self.unit(x), one) != self.unit(x):
                raise ValueError("idempotents do not sum to the identity")
        for b in self.basis:
            i, j = b.grading
            e_i, e_j = self.unit(self.idempotents[i]), self.unit(self.idempotents[j])
            if self.mul(self.mul(e_i, self.unit(b.index)), e_j) != self.unit(b.index):
                raise ValueError(f"basis element {b.name} is not graded {b.grading}")
        for x, y, z in itertools.product(range(n), repeat=3):
            lhs = self.mul(self.mul(self.unit(x), self.unit(y)), self.unit(z))
            rhs = self.mul(self.unit(x), self.mul(self.unit(y), self.unit(z)))
            if lhs != rhs:
                raise ValueError(f"product not associative on ({x},{y},{z})")
        rad = set(self.radical)
        if len(rad) != n - m:
            raise ValueError("quotient by the radical must have dimension m (basic algebra)")
        for x in rad:
            for y in range(n):
                for prod in (self.mul_basis(x, y), self.mul_basis(y, x)):
                    if any(c != 0 and z not in rad for z, c in prod.items()):
                        raise ValueError("radical basis is not a two-sided ideal")
        # nilpotency: rad^k = 0 for some k <= dim + 1
        power = rref([self.unit(x) for x in rad], n)[0] if rad else []
        for _ in range(n + 1):
            if not power:
                break
            power = rref([self.mul(p, self.unit(r)) for p in power for r in rad], n)[0]
        if power:
            raise ValueError("radical basis is not nilpotent")


def from_structure_constants(
    vertices: Sequence[str],
    basis: Sequence[BasisElement],
    table: Mapping[tuple[int, int], Mapping[int, Fraction]],
    idempotents: Sequence[int],
    radical: Sequence[int],
) -> Algebra:
    """Raw structure-constant input; requires (and verifies) a radical basis."""
    a = Algebra(
        tuple(str(v) for v in vertices),
        tuple(basis),
        {k: dict(v) for k, v in table.items()},
        tuple(idempotents),
        tuple(radical),
    )
    a.validate()
    return a


# -- path algebras ---------------------------------------------------------


def _paths_by_length(q: Quiver, arrows_from: dict[int, list[int]], upto: int):
    """paths[n] = list of arrow-index tuples of length n (n >= 1)."""
    paths = {1: [(k,) for k in range(len(q.arrows))]}
    for n in range(2, upto + 1):
        ext = []
        for p in paths[n - 1]:
            for k in arrows_from[_target(q, p[-1])]:
                ext.append(p + (k,))
        paths[n] = ext
    return paths


def _source(q: Quiver, k: int) -> int:
    return q.vertices.index(q.arrows[k][1])


def _target(q: Quiver, k: int) -> int:
    return q.vertices.index(q.arrows[k][2])


def build_path_algebra(
    q: Quiver,
    rels: Sequence[Relation] = (),
    length_bound: int = DEFAULT_LENGTH_BOUND,
) -> Algebra:
    """Quotient ``kQ / <rels>`` with a normal-form basis of paths.

    Works modulo paths of length > L for L = 1, 2, ...; stops at the first L
    where every length-L path lies in the ideal.  Exact for homogeneous
    (more generally admissible) relations.
    """
    if length_bound < 1:
        raise ValueError("length_bound must be positive")
    m = len(q.vertices)
    arrows_from: dict[int, list[int]] = {v: [] for v in range(m)}
    for k in range(len(q.arrows)):
        arrows_from[_source(q, k)].append(k)
    name_to_arrow = {a[0]: k for k, a in enumerate(q.arrows)}
    rel_data = []
    for r in rels:
        s, t = r.endpoints(q)
        terms = [(c, tuple(name_to_arrow[a] for a in p)) for c, p in r.terms if c != 0]
        if not terms:
            raise InvalidRelation("relation with all coefficients zero")
        rel_data.append((q.index(s), q.index(t), terms))

    for L in range(1, length_bound + 1):
        paths = _paths_by_length(q, arrows_from, L)
        # column order: longest paths first so they become pivots (leading terms)
        cols: list[tuple] = []
        for n in range(L, 0, -1):
            cols.extend(sorted(paths[n], key=lambda p: [q.arrows[k][0] for k in p]))
        cols.extend(("e", v) for v in range(m))
        col_of = {p: c for c, p in enumerate(cols)}
        space = RowSpace(len(cols))

        def ending_at(v):
            yield ()
            for n in range(1, L + 1):
                for p in paths[n]:
                    if _target(q, p[-1]) == v:
                        yield p

        def starting_at(v):
            yield ()
            for n in range(1, L + 1):
                for p in paths[n]:
                    if _source(q, p[0]) == v:
                        yield p

        for s, t, terms in rel_data:
            shortest = min(len(p) for _, p in terms)
            for before in ending_at(s):
                if len(before) + shortest > L:
                    continue
                for after in starting_at(t):
                    if len(before) + shortest + len(after) > L:
                        continue
                    vec = [Fraction(0)] * len(cols)
                    for c, p in terms:
                        full = before + p + after
                        if len(full) <= L:
                            vec[col_of[full]] += c
                    if any(vec):
                        space.add(vec)

        top = paths[L]
        if all(space.contains(_unit_vec(len(cols), col_of[p])) for p in top):
            return _assemble(q, tuple(rels), cols, col_of, space, L)
    raise NotFiniteDimensional(
        f"no path length <= {length_bound} at which every path lies in the ideal"
    )


def _unit_vec(n: int, k: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[k] = Fraction(1)
    return v


def _assemble(q, rels, cols, col_of, space: RowSpace, L: int) -> Algebra:
    pivots = set(space.pivots)
    survivors = [c for c in range(len(cols)) if c not in pivots]
    # basis order: idempotents first (vertex order), then by length and name
    def key(c):
        p = cols[c]
        if p[0] == "e":
            return (0, p[1], ())
        return (len(p), 0, [q.arrows[k][0] for k in p])

    survivors.sort(key=key)
    basis = []
    idempotents = [0] * len(q.vertices)
    path_of_basis = []
    for idx, c in enumerate(survivors):
        p = cols[c]
        if p[0] == "e":
            v = p[1]
            basis.append(BasisElement(idx, v, v, f"e{q.vertices[v]}", 0))
            idempotents[v] = idx
            path_of_basis.append(("e", v))
        else:
            s, t = _source(q, p[0]), _target(q, p[-1])
            # product notation: last traversed arrow written first
            name = "*".join(q.arrows[k][0] for k in reversed(p))
            basis.append(BasisElement(idx, s, t, name, len(p)))
            path_of_basis.append(p)
    basis_of_col = {c: idx for idx, c in enumerate(survivors)}

    def normal_form(path) -> dict[int, Fraction]:
        if path[0] != "e" and len(path) >= L:
            return {}
        vec = space.reduce(_unit_vec(len(cols), col_of[path]))
        return {basis_of_col[c]: x for c, x in enumerate(vec) if x != 0}

    table = {}
    for x, px in enumerate(path_of_basis):
        for y, py in enumerate(path_of_basis):
            # x * y: traverse py, then px
            src_x = px[1] if px[0] == "e" else _source(q, px[0])
            tgt_y = py[1] if py[0] == "e" else _target(q, py[-1])
            if src_x != tgt_y:
                continue
            if px[0] == "e":
                prod = py
            elif py[0] == "e":
                prod = px
            else:
                prod = py + px
            nf = normal_form(prod)
            if nf:
                table[(x, y)] = nf
    radical = tuple(b.index for b in basis if b.length > 0)
    return Algebra(
        tuple(q.vertices), tuple(basis), table, tuple(idempotents), radical, (q, rels)
    )


# -- module theory ---------------------------------------------------------


def _check_vertex(a: Algebra, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < a.m:
            raise SubsetOutOfRange(f"vertex index {v} outside 0..{a.m - 1}")


def socle_dimvec(a: Algebra, j: int) -> tuple[int, ...]:
    """Dimension vector of soc(A e_j) = {x in A e_j : rad(A) * x = 0}.

    The annihilator conditions split along the left grading, so each
    component e_i soc(A e_j) is an independent nullspace.
    """
    _check_vertex(a, j)
    out = []
    for i in range(a.m):
        block = a.graded(i, j)
        rows = []
        for r in a.radical:
            if a.basis[r].grading[1] != i:
                continue
            for z in range(a.dim):
                row = [a.mul_basis(r, x).get(z, Fraction(0)) for x in block]
                if any(row):
                    rows.append(row)
        out.append(len(nullspace(rows, len(block))) if block else 0)
    return tuple(out)


def proj_inj_match(a: Algebra, i: int, j: int) -> bool:
    """Whether A e_j is isomorphic to the injective (e_i A)^*.

    A e_j must have simple socle S_i (so it embeds in the injective envelope
    (e_i A)^*) and the same dimension; then the embedding is onto.
    """
    _check_vertex(a, i, j)
    soc = socle_dimvec(a, j)
    if soc != tuple(int(k == i) for k in range(a.m)):
        return False
    return sum(a.dims[l][j] for l in range(a.m)) == sum(a.dims[i][l] for l in range(a.m))


@dataclass(frozen=True)
class NakayamaPartial:
    """Partial map j -> i with A e_j isomorphic to (e_i A)^*."""

    m: int
    pairs: Mapping[int, int]

    @property
    def is_self_injective(self) -> bool:
        return len(self.pairs) == self.m

    @property
    def is_weakly_symmetric(self) -> bool:
        return self.is_self_injective and all(i == j for j, i in self.pairs.items())

    def injective_partner(self, i: int) -> int | None:
        """The j with (e_i A)^* isomorphic to A e_j, if any."""
        for j, k in self.pairs.items():
            if k == i:
                return j
        return None


def nakayama_partial(a: Algebra) -> NakayamaPartial:
    pairs = {}
    for j in range(a.m):
        for i in range(a.m):
            if proj_inj_match(a, i, j):
                pairs[j] = i
                break
    return NakayamaPartial(a.m, pairs)


def is_self_injective(a: Algebra) -> bool:
    return nakayama_partial(a).is_self_injective


def is_weakly_symmetric(a: Algebra) -> bool:
    return nakayama_partial(a).is_weakly_symmetric


def _as_subset(a: Algebra, u: Iterable[int]) -> frozenset[int]:
    u = frozenset(u)
    if not u:
        raise SubsetOutOfRange("idempotent subset must be non-empty")
    _check_vertex(a, *u)
    return u


def core_witness(a: Algebra, u: Iterable[int], nak: NakayamaPartial | None = None) -> int | None:
    """First i in U whose injective (e_i A)^* is not some A e_j with j in U."""
    u = _as_subset(a, u)
    nak = nak or nakayama_partial(a)
    for i in sorted(u):
        j = nak.injective_partner(i)
        if j is None or j not in u:
            return i
    return None


def is_core(a: Algebra, u: Iterable[int], nak: NakayamaPartial | None = None) -> bool:
    return core_witness(a, u, nak) is None


def enumerate_cores(a: Algebra, bound: int = DEFAULT_CORE_BOUND) -> list[frozenset[int]]:
    """All self-injective cores, smallest first."""
    if a.m > bound:
        raise ValueError(f"{a.m} vertices exceeds the enumeration bound {bound}")
    nak = nakayama_partial(a)
    cores = []
    for size in range(1, a.m + 1):
        for u in itertools.combinations(range(a.m), size):
            if is_core(a, u, nak):
                cores.append(frozenset(u))
    return cores


def corner_algebra(a: Algebra, u: Iterable[int]) -> Algebra:
    """The centralizer subalgebra e_U A e_U, with vertices restricted to U."""
    u = _as_subset(a, u)
    keep = sorted(u)
    new_vertex = {v: k for k, v in enumerate(keep)}
    old = [b.index for b in a.basis if b.grading[0] in u and b.grading[1] in u]
    new_index = {x: k for k, x in enumerate(old)}
    basis = tuple(
        BasisElement(new_index[x], new_vertex[a.basis[x].source], new_vertex[a.basis[x].target],
                     a.basis[x].name, a.basis[x].length)
        for x in old
    )
    table = {}
    for x in old:
        for y in old:
            prod = a.mul_basis(x, y)
            if prod:
                table[(new_index[x], new_index[y])] = {new_index[z]: c for z, c in prod.items()}
    idempotents = tuple(new_index[a.idempotents[v]] for v in keep)
    radical = tuple(new_index[x] for x in a.radical if x in new_index)
    return Algebra(tuple(a.vertices[v] for v in keep), basis, table, idempotents, radical)


def radical_layers(a: Algebra) -> list[int]:
    """dim rad^k A / rad^(k+1) A for k = 0, 1, ... until the power vanishes."""
    layers = []
    prev = a.dim
    power = rref([a.unit(x) for x in a.radical], a.dim)[0] if a.radical else []
    while True:
        layers.append(prev - len(power))
        if not power:
            return layers
        prev = len(power)
        power = rref([a.mul(p, a.unit(r)) for p in power for r in a.radical], a.dim)[0]
