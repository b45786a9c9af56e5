"""Command line entry point.

Exit codes: 0 success, 1 mathematical failure (e.g. Failed certificate),
2 input error.  SILT_FIELD overrides the field characteristic; --field wins
over both the environment and the presentation file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import presets
from .errors import SiltError
from .explorer import ExplorerConfig, bfs, export_dot, export_json, hasse_check
from .serde import (
    complex_from_json,
    complex_to_json,
    dump_json,
    load_json,
    presentation_from_json,
    silting_from_json,
    silting_to_json,
)
from .silting import algebra_object, compare, gamma, is_tilting, make_object, presilting_witness
from .workspace import Workspace


@dataclass
class CliConfig:
    algebra_path: str | None
    preset_name: str | None
    field: int | None
    json_errors: bool


def _field_override(args) -> int | None:
    if args.field is not None:
        return args.field
    env = os.environ.get("SILT_FIELD")
    if env:
        return int(env)
    return None


def _workspace(args) -> Workspace:
    override = _field_override(args)
    if args.preset:
        pres = presets.preset(args.preset, char=override if override is not None else presets.DEFAULT_CHAR)
    elif args.algebra:
        pres = presentation_from_json(load_json(args.algebra), field_override=override)
    else:
        raise SiltError("no algebra given: use --algebra FILE or --preset NAME")
    return Workspace.from_presentation(pres)


def _load_object(ws: Workspace, path: str | None):
    if path is None:
        return algebra_object(ws)
    from .serde import silting_object_from_json

    return silting_object_from_json(ws, load_json(path))


def cmd_check(ws: Workspace, args) -> int:
    ids = []
    for path in args.complexes:
        C = complex_from_json(ws.alg, load_json(path))
        ids.extend(ws.registry.register_decomposition(C))
    obj = make_object(ws, tuple(sorted(set(ids))))
    w = presilting_witness(ws, obj.ids)
    print(f"object: {obj.label(ws)}")
    print(f"presilting: {w is None}" + (f" (witness: shift {w[0]})" if w else ""))
    print(f"certificate: {obj.certificate.status} ({obj.certificate.reason})")
    tilt = is_tilting(ws, obj) if w is None else False
    print(f"tilting: {str(tilt).lower()}")
    return 0 if obj.certificate.status != "Failed" else 1


def cmd_mutate(ws: Workspace, args) -> int:
    from .mutation import mutate

    obj = _load_object(ws, args.object)
    cls = _resolve_class(ws, obj, args.at)
    new = mutate(ws, obj, [cls], args.dir)
    print(dump_json(silting_to_json(ws, new.ids, trail=new.certificate.trail)))
    return 0


def _resolve_class(ws: Workspace, obj, token: str) -> int:
    if token.isdigit() and int(token) in obj.ids:
        return int(token)
    for i in obj.ids:
        if ws.registry.label(i) == token:
            return i
    raise SiltError(f"class {token!r} is not a summand; have {[ws.registry.label(i) for i in obj.ids]}")


def cmd_compare(ws: Workspace, args) -> int:
    a = _load_object(ws, args.a)
    b = _load_object(ws, args.b)
    rel = compare(ws, a, b)
    provisional = "Verified" not in (a.certificate.status, b.certificate.status)
    print(rel + (" (provisional: certificates not Verified)" if provisional else ""))
    return 0


def cmd_gamma(ws: Workspace, args) -> int:
    base = _load_object(ws, args.base)
    X = complex_from_json(ws.alg, load_json(args.complex))
    vec = gamma(ws, base.ids, X)
    print(json.dumps({"basis": [ws.registry.label(i) for i in base.ids], "gamma": list(vec)}))
    return 0


def cmd_quiver(ws: Workspace, args) -> int:
    start = algebra_object(ws)
    cfg = ExplorerConfig(depth=args.depth, directions=args.dir, mod_shift=args.mod_shift)
    g = bfs(ws, start, cfg)
    if args.check_hasse:
        report = hasse_check(ws, g)
        if report["violations"]:
            print(json.dumps(report), file=sys.stderr)
            return 1
    if args.format == "dot":
        print(export_dot(ws, g))
    else:
        print(export_json(ws, g))
    return 0


def cmd_or(ws: Workspace, args) -> int:
    from .mutation import okuyama_rickard

    labels = [v.strip() for v in args.idempotent.split(",") if v.strip()]
    verts = [ws.alg.vertex_labels.index(v) for v in labels]
    res = okuyama_rickard(ws, verts)
    print(dump_json(complex_to_json(res.complex)))
    print(f"matches right mutation: {res.matches_right_mutation}", file=sys.stderr)
    print(f"tilting: {str(res.is_tilting).lower()}", file=sys.stderr)
    return 0 if res.matches_right_mutation else 1


def cmd_bb(ws: Workspace, args) -> int:
    from .mutation import bb_tilting

    v = ws.alg.vertex_labels.index(args.vertex)
    res = bb_tilting(ws, v)
    print(dump_json(complex_to_json(res.complex)))
    print(f"matches left mutation: {res.matches_left_mutation}", file=sys.stderr)
    return 0 if res.matches_left_mutation else 1


def cmd_exc_braid(ws: Workspace, args) -> int:
    from .exceptional import braid_apply, silting_to_exceptional

    start = _load_object(ws, args.object)
    seq = silting_to_exceptional(ws, start)
    out = braid_apply(ws, seq, args.word)
    print(json.dumps({"sequence": [ws.registry.label(i) for i in out.ids]}))
    return 0


def cmd_exc_probe(ws: Workspace, args) -> int:
    from .exceptional import hereditary_connectivity_probe

    a = _load_object(ws, args.a)
    b = _load_object(ws, args.b)
    word = hereditary_connectivity_probe(ws, a, b, args.budget)
    if word is None:
        print("exhausted")
        return 1
    print(json.dumps([[d, ws.registry.label(c)] for (d, c) in word]))
    return 0


def cmd_serve(ws_factory, args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app()
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="silt", description="silting mutation workbench")
    p.add_argument("--algebra", help="algebra presentation JSON file")
    p.add_argument("--preset", help=f"bundled algebra: {sorted(presets.PRESETS)}")
    p.add_argument("--field", type=int, help="field characteristic override")
    p.add_argument("--json-errors", action="store_true", help="machine-readable errors on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="presilting/certificate/tilting report")
    c.add_argument("complexes", nargs="+")

    m = sub.add_parser("mutate", help="irreducible mutation of a silting object")
    m.add_argument("--object", help="silting object JSON (default: the algebra)")
    m.add_argument("--at", required=True, help="summand class label or registry id")
    m.add_argument("--dir", choices=["left", "right"], required=True)

    cp = sub.add_parser("compare", help="order relation between two objects")
    cp.add_argument("a")
    cp.add_argument("b")

    g = sub.add_parser("gamma", help="gamma vector of a complex w.r.t. a base object")
    g.add_argument("--base", help="silting object JSON (default: the algebra)")
    g.add_argument("complex")

    q = sub.add_parser("quiver", help="BFS silting quiver")
    q.add_argument("--depth", type=int, default=2)
    q.add_argument("--dir", choices=["left", "right", "both"], default="left")
    q.add_argument("--mod-shift", action="store_true")
    q.add_argument("--format", choices=["dot", "json"], default="dot")
    q.add_argument("--check-hasse", action="store_true")

    o = sub.add_parser("or", help="Okuyama-Rickard complex for a vertex subset")
    o.add_argument("--idempotent", required=True, help="comma separated vertex labels")

    b = sub.add_parser("bb", help="BB tilting module at a vertex")
    b.add_argument("--vertex", required=True)

    e = sub.add_parser("exc", help="exceptional sequence operations")
    esub = e.add_subparsers(dest="exc_command", required=True)
    eb = esub.add_parser("braid")
    eb.add_argument("--word", required=True, help="comma separated s<i> / s<i>^-1")
    eb.add_argument("--object", help="silting object JSON to start from")
    ep = esub.add_parser("probe")
    ep.add_argument("a")
    ep.add_argument("b")
    ep.add_argument("--budget", type=int, default=10)

    s = sub.add_parser("serve", help="run the session HTTP service")
    s.add_argument("--port", type=int, default=8400)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(None, args)
        ws = _workspace(args)
        if args.command == "check":
            return cmd_check(ws, args)
        if args.command == "mutate":
            return cmd_mutate(ws, args)
        if args.command == "compare":
            return cmd_compare(ws, args)
        if args.command == "gamma":
            return cmd_gamma(ws, args)
        if args.command == "quiver":
            return cmd_quiver(ws, args)
        if args.command == "or":
            return cmd_or(ws, args)
        if args.command == "bb":
            return cmd_bb(ws, args)
        if args.command == "exc":
            if args.exc_command == "braid":
                return cmd_exc_braid(ws, args)
            return cmd_exc_probe(ws, args)
        raise SiltError(f"unknown command {args.command}")
    except SiltError as exc:
        _report_error(args, exc)
        return 1 if _is_math_error(exc) else 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _report_error(args, exc)
        return 2


def _is_math_error(exc: Exception) -> bool:
    from .errors import (
        CycleDetected,
        FieldTooSmall,
        InfiniteDimensional,
        NotInAisle,
        ProjDimTooBig,
        SelfExtension,
        SimpleIsInjective,
        ValidationFailed,
    )

    return isinstance(
        exc,
        (
            SimpleIsInjective,
            SelfExtension,
            ProjDimTooBig,
            NotInAisle,
            CycleDetected,
            InfiniteDimensional,
            FieldTooSmall,
            ValidationFailed,
        ),
    )


def _report_error(args, exc: Exception):
    if getattr(args, "json_errors", False):
        code = getattr(exc, "code", exc.__class__.__name__.lower())
        print(json.dumps({"error": code, "message": str(exc)}), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
