"""Command-line front end: ``ribbon-genus <subcommand> ...``.

Machine output is JSON with a ``schema_version`` field unless ``--format csv``
is requested. Exit status is 0 on success, 1 on bad input and 2 when
``--require-exact`` is set and some search ran out of budget.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import __version__
from .facepairing import FacePairingError, TriangulatedSphere, census, pairing_count
from .genus_search import (
    SearchBudget,
    hierarchy_check,
    link_genus,
    min_genus_over_shuffles,
)
from .presentation import (
    PresentationError,
    connectify,
    degree3_normalize,
    parse_presentation,
    reduce_exponents,
    render_presentation,
)
from .ribbon import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    RibbonError,
    build_canonical_surface,
    link_graph,
    plumb,
    surface_summary,
    to_dot,
)

SCHEMA_VERSION = 1
SEED_ENV = "RIBBON_GENUS_SEED"

EXIT_OK, EXIT_INPUT, EXIT_INEXACT = 0, 1, 2


class InputError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _parse(text: str):
    try:
        return parse_presentation(text)
    except PresentationError as exc:
        raise InputError(str(exc)) from None


def _inputs(args) -> list[str]:
    texts = list(args.presentation or [])
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
        texts.extend(line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#"))
    if not texts:
        raise InputError("no presentation given (pass a string or --file)")
    return texts


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget, seed=args.seed, time_limit=args.time_limit,
                        exhaustive=args.exhaustive)


# per-presentation workers; module level so they pickle for --jobs

def _genus(text: str, args) -> dict:
    p = _parse(text)
    s = surface_summary(build_canonical_surface(p, args.convention))
    return {"presentation": render_presentation(p), "genus": s.genus, "euler": s.euler, "faces": s.faces,
            "components": s.components, "discs": s.discs, "ribbons": s.ribbons, "exact": True}


def _shuffle_min(text: str, args) -> dict:
    p = _parse(text)
    r = min_genus_over_shuffles(p, _budget(args), args.convention)
    return {"presentation": render_presentation(p), "shuffle_min_genus": r.genus, "exact": r.exact,
            "evaluated": r.evaluated, "shuffle": r.shuffle.to_list()}


def _link_genus(text: str, args) -> dict:
    p = _parse(text)
    r = link_genus(link_graph(p), _budget(args))
    return {"presentation": render_presentation(p), "link_genus": r.upper if r.exact else None,
            "lower": r.lower, "upper": r.upper, "exact": r.exact}


def _report(text: str, args) -> dict:
    rep = hierarchy_check(_parse(text), _budget(args), args.convention)
    out = rep.to_dict()
    out["chain"] = list(rep.chain)
    out["exact"] = rep.link_exact and rep.shuffle_exact
    return out


def _normalize(text: str, args) -> dict:
    p = _parse(text)
    fn = {"exp": lambda q: reduce_exponents(q, strict=args.strict), "deg3": degree3_normalize,
          "connect": connectify}[args.kind]
    try:
        q = fn(p)
    except PresentationError as exc:
        raise InputError(str(exc)) from None
    return {"presentation": render_presentation(p), "normalized": render_presentation(q), "kind": args.kind,
            "genus_before": surface_summary(build_canonical_surface(p, args.convention)).genus,
            "genus_after": surface_summary(build_canonical_surface(q, args.convention)).genus, "exact": True}


WORKERS: dict[str, Callable[[str, argparse.Namespace], dict]] = {
    "genus": _genus,
    "shuffle-min": _shuffle_min,
    "link-genus": _link_genus,
    "report": _report,
    "normalize": _normalize,
}


def _run_one(item):
    text, args = item
    try:
        return WORKERS[args.command](text, args)
    except InputError as exc:
        return {"presentation": text, "error": str(exc)}


def _batch(args) -> list[dict]:
    items = [(t, args) for t in _inputs(args)]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(_run_one, items))  # map keeps input order
    return [_run_one(it) for it in items]


def _emit(rows: list[dict], args, out) -> None:
    if args.format == "csv":
        keys: list[str] = []
        for r in rows:
            keys.extend(k for k in r if k not in keys)
        w = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return
    payload = {"schema_version": SCHEMA_VERSION, "command": args.command}
    if len(rows) == 1:
        payload.update(rows[0])
    else:
        payload["results"] = rows
    out.write(json.dumps(payload, sort_keys=True) + "\n")


def _cmd_batch(args, out) -> int:
    rows = _batch(args)
    _emit(rows, args, out)
    if any("error" in r for r in rows):
        for r in rows:
            if "error" in r:
                print(f"error: {r['error']}", file=sys.stderr)
        return EXIT_INPUT
    if args.require_exact and not all(r.get("exact", True) for r in rows):
        return EXIT_INEXACT
    return EXIT_OK


def _cmd_plumb(args, out) -> int:
    p1, p2 = _parse(args.first), _parse(args.second)
    if p1.generators != p2.generators:
        raise InputError("both presentations must have the same generators")
    rg = plumb(build_canonical_surface(p1, args.convention), build_canonical_surface(p2, args.convention))
    s = surface_summary(rg)
    _emit([{"first": render_presentation(p1), "second": render_presentation(p2), "genus": s.genus,
            "euler": s.euler, "faces": s.faces, "components": s.components}], args, out)
    return EXIT_OK


def _cmd_export_dot(args, out) -> int:
    p = _parse(args.presentation)
    out.write(to_dot(build_canonical_surface(p, args.convention)))
    return EXIT_OK


def _sphere(args) -> TriangulatedSphere:
    try:
        if args.sphere:
            with open(args.sphere, encoding="utf-8") as fh:
                return TriangulatedSphere.from_text(fh.read())
        return TriangulatedSphere.standard(args.n)
    except OSError as exc:
        raise InputError(f"cannot read {args.sphere}: {exc.strerror}") from None
    except FacePairingError as exc:
        raise InputError(str(exc)) from None


def _cmd_facepair(args, out) -> int:
    if args.action == "count":
        if args.n < 1:
            raise InputError("--n must be at least 1")
        _emit([{"n": args.n, "count": pairing_count(args.n)}], args, out)
        return EXIT_OK
    sphere = _sphere(args)
    rows, truncated = census(sphere, _budget(args), args.jobs)
    if args.format == "csv":
        _emit(rows, args, out)
    else:
        payload = {"schema_version": SCHEMA_VERSION, "command": "facepair census",
                   "triangles": len(sphere.triangles), "truncated": truncated, "rows": rows}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    if args.require_exact and truncated:
        return EXIT_INEXACT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--convention", choices=CONVENTIONS, default=DEFAULT_CONVENTION,
                        help="ordering of the negative discs (default %(default)s)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--budget", type=int, default=200_000, help="max search nodes")
    common.add_argument("--seed", type=int, default=None, help=f"search seed (default ${SEED_ENV} or 0)")
    common.add_argument("--time-limit", type=float, default=None,
                        help="seconds; results then depend on machine speed")
    common.add_argument("--exhaustive", action="store_true", help="ignore --budget and search everything")
    common.add_argument("--require-exact", action="store_true", help="exit 2 if any result is inexact")
    common.add_argument("--jobs", type=int, default=1)

    parser = argparse.ArgumentParser(prog="ribbon-genus", description="Genus of group presentations.")
    parser.add_argument("--version", action="version",
                        version=f"ribbon-genus {__version__} (default convention {DEFAULT_CONVENTION})")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, hlp in (("genus", "genus of the canonical surface"),
                      ("shuffle-min", "minimum genus over all shuffles"),
                      ("link-genus", "minimum genus of the link graph"),
                      ("report", "all three genera and the upper bound")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("presentation", nargs="*")
        sp.add_argument("--file", help="one presentation per line")

    sp = sub.add_parser("normalize", parents=[common], help="rewrite a presentation")
    sp.add_argument("kind", choices=("exp", "deg3", "connect"))
    sp.add_argument("presentation", nargs="*")
    sp.add_argument("--file")
    sp.add_argument("--strict", action="store_true", help="exp: always reduce odd runs to exponent 1")

    sp = sub.add_parser("plumb", parents=[common], help="plumb two surfaces over the same generators")
    sp.add_argument("first")
    sp.add_argument("second")

    sp = sub.add_parser("facepair", parents=[common], help="face pairings of a triangulated ball")
    sp.add_argument("action", choices=("count", "census"))
    sp.add_argument("--n", type=int, default=2, help="half the number of boundary triangles")
    sp.add_argument("--sphere", help="triangulation file, one triangle per line")

    sp = sub.add_parser("export-dot", parents=[common], help="Graphviz DOT of the canonical surface")
    sp.add_argument("presentation")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.jobs < 1:
            raise InputError("--jobs must be positive")
        if args.command in WORKERS:
            return _cmd_batch(args, out)
        if args.command == "plumb":
            return _cmd_plumb(args, out)
        if args.command == "facepair":
            return _cmd_facepair(args, out)
        return _cmd_export_dot(args, out)
    except (InputError, RibbonError, FacePairingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()
