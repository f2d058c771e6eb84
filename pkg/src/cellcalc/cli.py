"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 a mathematical
precondition failed (e.g. U is not a self-injective core), 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from cellcalc import cells as cellmod
from cellcalc.algebra import (
    DEFAULT_LENGTH_BOUND,
    Algebra,
    core_witness,
    enumerate_cores,
    nakayama_partial,
    radical_layers,
)
from cellcalc.bimodcat import (
    Absent,
    MorLabel,
    Subcat,
    classify,
    closure,
    is_closed,
    is_weakly_fiat,
    left_adjoint,
    product_subcat,
    right_adjoint,
)
from cellcalc.errors import CellcalcError, InputError, NotFiniteDimensional, PreconditionError
from cellcalc.families import builtin
from cellcalc.formats import algebra_from_json, algebra_to_json, read_json, subcat_from_json
from cellcalc.tworep import (
    block_structure,
    cell_rep,
    check_functoriality,
    rep_from_json,
    theorem_consequence_suite,
)

EXIT_OK, EXIT_CHECK, EXIT_PRECONDITION, EXIT_INPUT = 0, 1, 2, 3
EXTENDED = "extended semantics: J-maximal non-idempotent cells of a non-superdiagonal subcategory"


@dataclass
class RunConfig:
    source: str  # "builtin:<spec>" or "file:<path>"
    fmt: str = "ascii"
    length_bound: int = DEFAULT_LENGTH_BOUND


def default_length_bound() -> int:
    raw = os.environ.get("CELLCALC_LENGTH_BOUND")
    if not raw:
        return DEFAULT_LENGTH_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"CELLCALC_LENGTH_BOUND={raw!r} is not an integer") from None
    if value < 1:
        raise InputError("CELLCALC_LENGTH_BOUND must be positive")
    return value


def load_algebra(cfg: RunConfig) -> Algebra:
    kind, _, arg = cfg.source.partition(":")
    if kind == "builtin":
        return builtin(arg, cfg.length_bound)
    return algebra_from_json(read_json(arg), cfg.length_bound)


def parse_vertex_list(a: Algebra, text: str) -> list[int]:
    """'1,0,2' or a range '0..3' of integer labels, in vertex labels."""
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        labels = [str(k) for k in range(lo, hi + 1)]
    else:
        labels = [x.strip() for x in text.split(",") if x.strip()]
    if not labels:
        raise InputError(f"empty vertex list {text!r}")
    return [a.index(x) for x in labels]


def parse_gens(a: Algebra, text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        m = re.fullmatch(r"\(?\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)?", chunk)
        if not m:
            raise InputError(f"cannot parse generator {chunk!r}; expected (i,j)")
        pairs.append((a.index(m.group(1)), a.index(m.group(2))))
    return pairs


def _labels(a: Algebra, idx) -> list[str]:
    return [a.label(i) for i in sorted(idx)]


def _matrix_lines(mat) -> list[str]:
    width = max((len(str(x)) for row in mat for x in row), default=1)
    return ["  [" + " ".join(f"{x:>{width}}" for x in row) + "]" for row in mat]


def _echo(a: Algebra, cfg: RunConfig) -> dict:
    return {"source": cfg.source, "vertex_order": list(a.vertices), "algebra": algebra_to_json(a)}


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands --------------------------------------------------------------


def cmd_info(cfg: RunConfig, args) -> int:
    a = load_algebra(cfg)
    nak = nakayama_partial(a)
    layers = radical_layers(a)
    pairs = {a.label(j): a.label(i) for j, i in sorted(nak.pairs.items())}
    payload = {
        **_echo(a, cfg),
        "dimension": a.dim,
        "cartan": [list(r) for r in a.dims],
        "radical_layers": layers,
        "nakayama_partial": pairs,
        "self_injective": nak.is_self_injective,
        "weakly_symmetric": nak.is_weakly_symmetric,
    }
    lines = [
        f"vertex order: {', '.join(a.vertices)}",
        f"dimension: {a.dim}",
        "Cartan matrix (dim e_i A e_j):",
        *_matrix_lines(a.dims),
        f"radical layers: {layers}",
        "Nakayama partial map (A e_j = (e_i A)^*, j -> i): "
        + ("{" + ", ".join(f"{j}->{i}" for j, i in pairs.items()) + "}"),
        f"self-injective: {str(nak.is_self_injective).lower()}",
        f"weakly symmetric: {str(nak.is_weakly_symmetric).lower()}",
    ]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cores(cfg: RunConfig, args) -> int:
    a = load_algebra(cfg)
    if args.check:
        u = parse_vertex_list(a, args.check)
        witness = core_witness(a, u)
        payload = {
            **_echo(a, cfg),
            "subset": _labels(a, u),
            "is_core": witness is None,
            "witness": None if witness is None else a.label(witness),
        }
        text = "yes" if witness is None else (
            f"no: (e_{a.label(witness)} A)^* is not isomorphic to any A e_j with j in U "
            f"(witness i = {a.label(witness)})"
        )
        _emit(cfg, payload, f"U = {{{', '.join(_labels(a, u))}}}: {text}")
        return EXIT_OK
    cores = enumerate_cores(a)
    payload = {**_echo(a, cfg), "count": len(cores), "cores": [_labels(a, c) for c in cores]}
    lines = [f"{len(cores)} self-injective core(s)"]
    lines += ["  {" + ", ".join(_labels(a, c)) + "}" for c in cores]
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def _resolve_subcat(a: Algebra, args) -> tuple[Subcat, str]:
    given = [x for x in (args.u or args.v, args.gens, args.subcat) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --u/--v, --gens, --subcat")
    if args.u or args.v:
        if not (args.u and args.v):
            raise InputError("--u and --v go together")
        return product_subcat(parse_vertex_list(a, args.u), parse_vertex_list(a, args.v)), "product"
    if args.gens:
        return closure(a, parse_gens(a, args.gens)), "closure of generators"
    s = subcat_from_json(a, read_json(args.subcat))
    if not is_closed(a, s):
        return closure(a, s.labels), "closure of file labels"
    return s, "file"


def _show_cell(a: Algebra, c) -> str:
    return "{" + ", ".join(x.show(a) for x in sorted(c, key=MorLabel.sort_key)) + "}"


def _adjoint_text(a: Algebra, r) -> str:
    if isinstance(r, Absent):
        extra = f" ({r.candidate.show(a)})" if r.candidate else ""
        return f"absent: {r.reason}{extra}"
    return r.show(a)


def cmd_subcat(cfg: RunConfig, args) -> int:
    a = load_algebra(cfg)
    s, how = _resolve_subcat(a, args)
    shape = classify(a, s)
    payload = {
        **_echo(a, cfg),
        "subcategory": s.to_json(a),
        "construction": how,
        "shape": {
            "N_L": _labels(a, shape.n_left),
            "N_R": _labels(a, shape.n_right),
            "product": shape.is_product,
            "superdiagonal": shape.is_superdiagonal,
            "subdiagonal": shape.is_subdiagonal,
            "diagonal": shape.is_diagonal,
        },
    }
    head = [
        f"subcategory ({how}): {{{', '.join(f'({a.label(i)},{a.label(j)})' for i, j in s)}}}",
        f"N_L = {{{', '.join(payload['shape']['N_L'])}}}, N_R = {{{', '.join(payload['shape']['N_R'])}}}; "
        f"superdiagonal={str(shape.is_superdiagonal).lower()}, "
        f"subdiagonal={str(shape.is_subdiagonal).lower()}, diagonal={str(shape.is_diagonal).lower()}",
    ]
    action = args.action
    status = EXIT_OK
    if action in ("cells", "eggbox"):
        cd = cellmod.cell_decomposition(a, s)
        semantics = None if shape.is_superdiagonal else EXTENDED
        egg = cellmod.eggbox_json(a, cd, semantics)
        payload["eggbox"] = egg
        if action == "eggbox":
            body = [cellmod.render_eggbox(a, cd)]
        else:
            idem = cellmod.idempotent_jcells(a, cd)
            vac = cellmod.vacuous_cells(a, cd)
            payload["cells"] = {
                "left": [_show_cell(a, c) for c in cd.left_cells],
                "right": [_show_cell(a, c) for c in cd.right_cells],
                "two_sided": [_show_cell(a, c) for c in cd.jcells],
                "idempotent": [_show_cell(a, c) for c in idem],
                "vacuous": [_show_cell(a, c) for c in vac],
                "strongly_regular": [cellmod.is_strongly_regular(cd, c) for c in cd.jcells],
            }
            body = [
                "left cells: " + " ".join(payload["cells"]["left"]),
                "right cells: " + " ".join(payload["cells"]["right"]),
                "J-cells (greatest first): " + " ".join(payload["cells"]["two_sided"]),
                "J-order (Hasse, by position): "
                + (", ".join(f"{x} > {y}" for x, y in cd.jorder) or "(none)"),
                "idempotent J-cells: " + " ".join(payload["cells"]["idempotent"]),
                "vacuous cells: " + (" ".join(payload["cells"]["vacuous"]) or "(none)"),
                "strongly regular: "
                + " ".join(str(x).lower() for x in payload["cells"]["strongly_regular"]),
            ]
            if semantics:
                body.append(f"note: {semantics}")
    elif action == "fiat":
        res = is_weakly_fiat(a, s)
        payload["weakly_fiat"] = res.weakly_fiat
        payload["star"] = (
            {x.show(a): y.show(a) for x, y in sorted(res.star.items(), key=lambda kv: kv[0].sort_key())}
            if res.star
            else None
        )
        payload["failures"] = [
            {"label": x.show(a), "side": side, "reason": _adjoint_text(a, r)} for x, side, r in res.failures
        ]
        body = [f"weakly fiat: {str(res.weakly_fiat).lower()}"]
        if res.star:
            body.append("right adjoints: " + ", ".join(f"{k} -> {v}" for k, v in payload["star"].items()))
        body += [f"  {f['label']}: no {f['side']} adjoint ({f['reason']})" for f in payload["failures"]]
    elif action == "adjoints":
        rows = []
        for x in s.morphisms():
            rows.append({
                "label": x.show(a),
                "right": _adjoint_text(a, right_adjoint(a, s, x)),
                "left": _adjoint_text(a, left_adjoint(a, s, x)),
            })
        payload["adjoints"] = rows
        body = [f"{r['label']}: right {r['right']}; left {r['left']}" for r in rows]
    elif action == "cellrep":
        col = None if args.column in (None, "Id") else a.index(args.column)
        rep = cell_rep(a, s, col)
        payload["rep"] = rep.to_json(a)
        body = [f"objects: {payload['rep']['objects']}"]
        for key, mat in payload["rep"]["matrices"].items():
            body += [f"{key}:", *_matrix_lines(mat)]
    elif action == "checkrep":
        if not args.rep:
            raise InputError("checkrep needs --rep FILE")
        rep = rep_from_json(a, read_json(args.rep))
        missing = [x.show(a) for x in s.morphisms() if x not in rep.matrices]
        if missing:
            raise InputError(f"representation lacks matrices for {', '.join(missing)}")
        func = check_functoriality(a, s, rep)
        cd = cellmod.cell_decomposition(a, s)
        payload["functorial"] = func.ok
        body = [f"functorial: {str(func.ok).lower()}"]
        if not func.ok:
            x, y, lhs, rhs = func.counterexample
            payload["counterexample"] = {
                "x": x.show(a), "y": y.show(a), "product": lhs.tolist(), "expected": rhs.tolist(),
            }
            body.append(f"  counterexample: [{x.show(a)}][{y.show(a)}] = {lhs.tolist()} != {rhs.tolist()}")
            status = EXIT_CHECK
        try:
            ap = cellmod.apex(a, cd, rep.matrices)
            payload["apex"] = {"cell": _show_cell(a, ap.cell), "idempotent": ap.idempotent}
            body.append(f"apex: {_show_cell(a, ap.cell)} (idempotent={str(ap.idempotent).lower()})")
        except PreconditionError as exc:
            payload["apex"] = {"error": str(exc)}
            body.append(f"apex: none ({exc})")
            status = EXIT_CHECK
        if shape.is_superdiagonal:
            u = sorted(shape.n_left)
            try:
                br = block_structure(a, u, rep)
                payload["blocks"] = {"count": br.blocks, "ordering": list(br.ordering), "zero": br.zero_size}
                body.append(f"U x U block structure: {br.blocks} block(s), zero part {br.zero_size}, "
                            f"ordering {list(br.ordering)}")
            except CellcalcError as exc:
                payload["blocks"] = {"error": str(exc)}
                body.append(f"U x U block structure: not conformant ({exc})")
                status = EXIT_CHECK
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown action {action!r}")
    _emit(cfg, payload, "\n".join(head + body))
    return status


def cmd_verify(cfg: RunConfig, args) -> int:
    a = load_algebra(cfg)
    u = parse_vertex_list(a, args.u)
    v = parse_vertex_list(a, args.v)
    report = theorem_consequence_suite(a, u, v)
    payload = {**_echo(a, cfg), "report": report.to_json(a)}
    lines = [f"D_{{U x V}} with U = {{{', '.join(_labels(a, u))}}}, V = {{{', '.join(_labels(a, v))}}}"
             " (decategorified check)"]
    for c in report.checks:
        detail = f"  [{c.details}]" if c.details else ""
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}{detail}")
    lines.append(report.conclusion if report.passed else "some checks failed")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_CHECK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", help="zigzag-star:k, zigzag:<graph.json>, an:n, two-vertex-ab")
    src.add_argument("--file", help="algebra JSON file")
    common.add_argument("--format", choices=("ascii", "json"), default="ascii")
    common.add_argument("--json", action="store_const", const="json", dest="format",
                        help="shorthand for --format json")
    common.add_argument("--length-bound", type=int, default=None,
                        help="maximal path length explored (default $CELLCALC_LENGTH_BOUND or 64)")

    p = argparse.ArgumentParser(prog="cellcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="dimension, Cartan matrix, Nakayama data")

    pc = sub.add_parser("cores", parents=[common], help="self-injective cores")
    pc.add_argument("--check", metavar="U", help="test one subset, e.g. 1,0")

    ps = sub.add_parser("subcat", parents=[common], help="combinatorial 2-subcategories")
    ps.add_argument("action", choices=("cells", "eggbox", "fiat", "adjoints", "cellrep", "checkrep"))
    ps.add_argument("--u", help="product form U (with --v)")
    ps.add_argument("--v", help="product form V (with --u)")
    ps.add_argument("--gens", help='generators "(i,j);(k,l)"; closure is taken')
    ps.add_argument("--subcat", help='JSON file {"labels": [[i, j], ...]}')
    ps.add_argument("--column", help="column j of the left cell for cellrep (default: trivial cell)")
    ps.add_argument("--rep", help="representation JSON for checkrep")

    pv = sub.add_parser("verify", parents=[common], help="consequence suite for D_{U x V}")
    pv.add_argument("--u", required=True)
    pv.add_argument("--v", required=True)
    return p


COMMANDS = {"info": cmd_info, "cores": cmd_cores, "subcat": cmd_subcat, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        bound = args.length_bound if args.length_bound is not None else default_length_bound()
        if bound < 1:
            raise InputError("--length-bound must be positive")
        source = f"builtin:{args.builtin}" if args.builtin else f"file:{args.file}"
        cfg = RunConfig(source, args.format, bound)
        return COMMANDS[args.command](cfg, args)
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InputError, NotFiniteDimensional) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CellcalcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
