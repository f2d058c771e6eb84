"""The multisemigroup of projective bimodules and its combinatorial subcategories.

Indecomposable 1-morphisms are ``Id`` and ``F(i, j)`` (the bimodule
``A e_i (x) e_j A``), composed by

    F(i, j) o F(k, l) = F(i, l) ^ (dim e_j A e_k).

A combinatorial 2-subcategory is recorded by its set of ``(i, j)`` pairs,
which must be closed under this multiplication; ``Id`` is always present.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from cellcalc.algebra import Algebra, NakayamaPartial, nakayama_partial
from cellcalc.errors import SubsetOutOfRange


@dataclass(frozen=True)
class MorLabel:
    kind: str  # "Id", "F" or "0"
    i: int = -1
    j: int = -1

    @property
    def is_id(self) -> bool:
        return self.kind == "Id"

    @property
    def is_zero(self) -> bool:
        return self.kind == "0"

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def sort_key(self):
        return ({"Id": 0, "F": 1, "0": 2}[self.kind], self.i, self.j)

    def __str__(self) -> str:
        return f"F({self.i},{self.j})" if self.kind == "F" else self.kind

    def show(self, a: Algebra | None = None) -> str:
        """Render with the algebra's vertex labels."""
        if self.kind != "F" or a is None:
            return str(self)
        return f"F({a.label(self.i)},{a.label(self.j)})"


ID = MorLabel("Id")
ZERO = MorLabel("0")


def F(i: int, j: int) -> MorLabel:
    return MorLabel("F", i, j)


SumMor = Counter  # MorLabel -> positive multiplicity; empty Counter is the zero 1-morphism
Mor = Union[MorLabel, Mapping[MorLabel, int]]


def mu(a: Algebra, x: MorLabel, y: MorLabel) -> frozenset[MorLabel]:
    if x.is_zero or y.is_zero:
        return frozenset({ZERO})
    if x.is_id:
        return frozenset({y})
    if y.is_id:
        return frozenset({x})
    if a.dims[x.j][y.i] != 0:
        return frozenset({F(x.i, y.j)})
    return frozenset({ZERO})


def _as_sum(x: Mor) -> Counter:
    if isinstance(x, MorLabel):
        return Counter() if x.is_zero else Counter({x: 1})
    return Counter({k: v for k, v in x.items() if v and not k.is_zero})


def compose(a: Algebra, x: Mor, y: Mor) -> Counter:
    """``x o y`` as a multiset of indecomposables (first y, then x)."""
    out: Counter = Counter()
    for gx, mx in _as_sum(x).items():
        for gy, my in _as_sum(y).items():
            if gx.is_id:
                out[gy] += mx * my
            elif gy.is_id:
                out[gx] += mx * my
            else:
                d = a.dims[gx.j][gy.i]
                if d:
                    out[F(gx.i, gy.j)] += mx * my * d
    return out


@dataclass(frozen=True)
class Subcat:
    """Label set of a combinatorial 2-subcategory (``Id`` implicit)."""

    labels: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset((int(i), int(j)) for i, j in self.labels))

    def __iter__(self):
        return iter(sorted(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, item) -> bool:
        if isinstance(item, MorLabel):
            return item.is_id or (item.kind == "F" and item.pair in self.labels)
        return tuple(item) in self.labels

    def morphisms(self) -> list[MorLabel]:
        """``Id`` followed by the F-labels in (i, j) order."""
        return [ID] + [F(i, j) for i, j in sorted(self.labels)]

    def to_json(self, a: Algebra | None = None) -> dict:
        if a is None:
            return {"labels": [[i, j] for i, j in sorted(self.labels)]}
        return {"labels": [[a.label(i), a.label(j)] for i, j in sorted(self.labels)]}


def _check_pairs(a: Algebra, pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    pairs = frozenset((int(i), int(j)) for i, j in pairs)
    for i, j in pairs:
        if not (0 <= i < a.m and 0 <= j < a.m):
            raise SubsetOutOfRange(f"label ({i},{j}) outside the vertex range")
    return pairs


def is_closed(a: Algebra, s: Subcat | Iterable[tuple[int, int]]) -> bool:
    labels = s.labels if isinstance(s, Subcat) else frozenset(s)
    return all(
        (i, l) in labels
        for (i, j), (k, l) in itertools.product(labels, repeat=2)
        if a.dims[j][k]
    )


def closure(a: Algebra, gens: Iterable[tuple[int, int]]) -> Subcat:
    """Least μ-closed label set containing ``gens``."""
    labels = set(_check_pairs(a, gens))
    frontier = set(labels)
    while frontier:
        new = set()
        for (i, j), (k, l) in itertools.chain(
            itertools.product(frontier, labels), itertools.product(labels, frontier)
        ):
            if a.dims[j][k] and (i, l) not in labels:
                new.add((i, l))
        labels |= new
        frontier = new
    return Subcat(frozenset(labels))


def product_subcat(u: Iterable[int], v: Iterable[int]) -> Subcat:
    u, v = frozenset(u), frozenset(v)
    if not u or not v:
        raise SubsetOutOfRange("product subcategory needs non-empty U and V")
    return Subcat(frozenset(itertools.product(u, v)))


@dataclass(frozen=True)
class Shape:
    n_left: frozenset[int]
    n_right: frozenset[int]
    is_product: bool
    is_superdiagonal: bool
    is_subdiagonal: bool

    @property
    def is_diagonal(self) -> bool:
        return self.is_superdiagonal and self.is_subdiagonal

    @property
    def core_candidate(self) -> frozenset[int]:
        """The U of a U-super/subdiagonal shape: N_L resp. N_R."""
        return self.n_left if self.is_superdiagonal else self.n_right


def classify(a: Algebra, s: Subcat) -> Shape:
    n_left = frozenset(i for i, _ in s.labels)
    n_right = frozenset(j for _, j in s.labels)
    is_product = bool(s.labels) and s.labels == frozenset(itertools.product(n_left, n_right))
    return Shape(
        n_left,
        n_right,
        is_product,
        is_product and n_left <= n_right,
        is_product and n_right <= n_left,
    )


def enumerate_subcats(a: Algebra, max_m: int = 3) -> list[Subcat]:
    """Every μ-closed label set, by brute force over all subsets (small m only)."""
    if a.m > max_m:
        raise ValueError(f"subcategory enumeration is limited to m <= {max_m}")
    pairs = sorted(itertools.product(range(a.m), repeat=2))
    found = []
    for mask in range(1 << len(pairs)):
        labels = frozenset(p for b, p in enumerate(pairs) if mask >> b & 1)
        if is_closed(a, labels):
            found.append(Subcat(labels))
    return found


# -- adjoints --------------------------------------------------------------


@dataclass(frozen=True)
class Absent:
    """No adjoint label; ``reason`` is "no-partner" or "outside-subcategory"."""

    reason: str
    candidate: MorLabel | None = None


def right_adjoint(
    a: Algebra, s: Subcat, x: MorLabel, nak: NakayamaPartial | None = None
) -> MorLabel | Absent:
    """F(i, j) has right adjoint F(k, i) where A e_k is isomorphic to (e_j A)^*."""
    if x.is_id:
        return ID
    nak = nak or nakayama_partial(a)
    k = nak.injective_partner(x.j)
    if k is None:
        return Absent("no-partner")
    adj = F(k, x.i)
    return adj if adj in s else Absent("outside-subcategory", adj)


def left_adjoint(
    a: Algebra, s: Subcat, x: MorLabel, nak: NakayamaPartial | None = None
) -> MorLabel | Absent:
    """F(i, j) has left adjoint F(j, l) where A e_i is isomorphic to (e_l A)^*."""
    if x.is_id:
        return ID
    nak = nak or nakayama_partial(a)
    l = nak.pairs.get(x.i)
    if l is None:
        return Absent("no-partner")
    adj = F(x.j, l)
    return adj if adj in s else Absent("outside-subcategory", adj)


@dataclass(frozen=True)
class FiatReport:
    weakly_fiat: bool
    star: Mapping[MorLabel, MorLabel] | None  # right adjoints, when weakly fiat
    failures: tuple[tuple[MorLabel, str, Absent], ...] = ()


def is_weakly_fiat(a: Algebra, s: Subcat) -> FiatReport:
    nak = nakayama_partial(a)
    star: dict[MorLabel, MorLabel] = {}
    failures = []
    for x in s.morphisms():
        r = right_adjoint(a, s, x, nak)
        l = left_adjoint(a, s, x, nak)
        if isinstance(r, Absent):
            failures.append((x, "right", r))
        else:
            star[x] = r
        if isinstance(l, Absent):
            failures.append((x, "left", l))
    if failures:
        return FiatReport(False, None, tuple(failures))
    return FiatReport(True, star)
