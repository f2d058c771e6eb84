"""JSON forms of algebras and subcategories."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from cellcalc.algebra import DEFAULT_LENGTH_BOUND, Algebra, Quiver, Relation, build_path_algebra
from cellcalc.bimodcat import Subcat
from cellcalc.errors import CellcalcError, InputError


def _fraction(text: Any, where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: coefficient {text!r} is not a rational 'n/d'") from None


def presentation_from_json(data: Mapping) -> tuple[Quiver, list[Relation]]:
    if not isinstance(data, Mapping):
        raise InputError("algebra JSON must be an object")
    try:
        vertices = [str(v) for v in data["vertices"]]
    except (KeyError, TypeError):
        raise InputError("algebra JSON: missing 'vertices' list") from None
    arrows = []
    for n, arr in enumerate(data.get("arrows", [])):
        try:
            arrows.append((str(arr["name"]), str(arr["from"]), str(arr["to"])))
        except (KeyError, TypeError):
            raise InputError(f"arrows[{n}]: need fields 'name', 'from', 'to'") from None
    rels = []
    for n, rel in enumerate(data.get("relations", [])):
        terms = []
        for t, term in enumerate(rel):
            where = f"relations[{n}][{t}]"
            try:
                path = tuple(str(x) for x in term["path"])
            except (KeyError, TypeError):
                raise InputError(f"{where}: need fields 'coef' and 'path'") from None
            terms.append((_fraction(term.get("coef", "1"), where), path))
        rels.append(Relation(tuple(terms)))
    try:
        return Quiver(tuple(vertices), tuple(arrows)), rels
    except CellcalcError as exc:
        raise InputError(f"algebra JSON: {exc}") from exc


def algebra_from_json(data: Mapping, length_bound: int = DEFAULT_LENGTH_BOUND) -> Algebra:
    q, rels = presentation_from_json(data)
    return build_path_algebra(q, rels, length_bound)


def _coef(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def presentation_to_json(q: Quiver, rels) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"name": n, "from": s, "to": t} for n, s, t in q.arrows],
        "relations": [
            [{"coef": _coef(c), "path": list(p)} for c, p in r.terms] for r in rels
        ],
    }


def algebra_to_json(a: Algebra) -> dict | None:
    if a.presentation is None:
        return None
    return presentation_to_json(*a.presentation)


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def subcat_from_json(a: Algebra, data: Mapping) -> Subcat:
    """Canonical form {"labels": [[i, j], ...]} in vertex labels."""
    try:
        return Subcat(frozenset((a.index(i), a.index(j)) for i, j in data["labels"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed subcategory JSON: {exc}") from exc
