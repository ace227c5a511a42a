"""Command-line front end.

Subcommands:
  check      graph hypotheses: connectivity, cycles, per-edge extendability
  algebra    build the category and report its verified dimension data
  resolve    resolution of simple:i | mw:i:W | m1:i:j, minimal or cone:n
  ses        one short exact sequence: alpha:i | beta:i:j | gamma:i:W:j
  koszulity  scan Ext for off-diagonal classes up to position -N
  ext        nonzero Ext^n(L_i, L_j<-m>) table
  figure     layered text diagram of a module or a resolution

Exit codes: 0 ok/pass, 2 invalid input, 3 hypothesis violation,
4 Koszulity failure.  All output is deterministic for a fixed
(input, configuration) pair; JSON is emitted with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .category import build_category, verify_category
from .complexes import linearity_profile
from .errors import (HypothesisViolation, ParseError, PathKoszulError,
                     ValidationError, VerificationError)
from .graphs import (bridges, cycle_vertices, extendable, has_infinite_walk,
                     load_graph_file)
from .koszul import (ResolutionReport, ext_table, get_engine,
                     koszulity_verdict, ses_alpha, ses_beta, ses_gamma,
                     summand_table)
from .linalg import field_from_name
from .modules import projective, simple, standard_mw


def _int(text, what):
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{what} must be an integer, got {text!r}")


def parse_mode(text):
    """'truncate2' or 'literal:D' with D >= 2."""
    if text == "truncate2":
        return "truncate2", None
    if text.startswith("literal:"):
        cap = _int(text.split(":", 1)[1], "literal cap")
        if cap < 2:
            raise ValidationError("literal cap must be at least 2")
        return "literal", cap
    raise ValidationError(f"unknown mode {text!r}")


def parse_target(text):
    """Resolution target: simple:i | mw:i:W | m1:i:j (W comma-separated)."""
    parts = text.split(":")
    if parts[0] == "simple" and len(parts) == 2:
        return ("simple", _int(parts[1], "vertex"), 0)
    if parts[0] == "m1" and len(parts) == 3:
        return ("m1", _int(parts[1], "vertex"), _int(parts[2], "vertex"))
    if parts[0] == "mw" and len(parts) == 3:
        w = tuple(sorted(_int(t, "vertex") for t in parts[2].split(",") if t))
        if not w:
            raise ValidationError("mw target needs a nonempty W")
        return ("mw", w, _int(parts[1], "vertex"))
    raise ValidationError(f"cannot parse target {text!r}")


def parse_method(text):
    if text == "minimal":
        return ("minimal", None)
    if text.startswith("cone:"):
        n = _int(text.split(":", 1)[1], "cone level")
        if n < 0:
            raise ValidationError("cone level must be >= 0")
        return ("cone", n)
    raise ValidationError(f"unknown method {text!r}")


def target_label(key):
    if key[0] == "simple":
        return f"simple:{key[1]}"
    if key[0] == "m1":
        return f"m1:{key[1]}:{key[2]}"
    return f"mw:{key[2]}:{','.join(str(v) for v in key[1])}"


def _category(args):
    g = load_graph_file(args.graph)
    field = field_from_name(args.field)
    mode, cap = parse_mode(args.mode)
    return build_category(g, field, mode=mode, cap=cap)


def _summary(cat):
    by_degree = cat.dims_by_degree()
    return {
        "field": cat.field.name,
        "mode": cat.mode_label,
        "vertices": list(cat.graph.vertices),
        "edges": [list(e) for e in cat.graph.edges],
        "dims_by_degree": {str(d): n for d, n in sorted(by_degree.items())},
        "total_dim": cat.total_dim(),
        "hypothesis": has_infinite_walk(cat.graph),
    }


# -- commands -------------------------------------------------------------

def cmd_check(args):
    cat = _category(args)
    g = cat.graph
    table = {}
    for u, v in sorted(g.edges):
        table[f"{u}->{v}"] = extendable(g, u, v)
        table[f"{v}->{u}"] = extendable(g, v, u)
    payload = {
        "command": "check",
        "category": _summary(cat),
        "vertices": list(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
        "connected": True,
        "has_cycle": has_infinite_walk(g),
        "hypothesis": has_infinite_walk(g),
        "bridges": [list(e) for e in sorted(bridges(g))],
        "cycle_vertices": sorted(cycle_vertices(g)),
        "extendable": table,
    }
    return payload, 0


def cmd_algebra(args):
    cat = _category(args)
    report = verify_category(cat)
    payload = {
        "command": "algebra",
        "category": _summary(cat),
        "ok": report["ok"],
        "failures": report["failures"],
        "notes": report["notes"],
        "truncation_active": report["truncation_active"],
        "finite_from": report["finite_from"],
    }
    return payload, 0


def _resolve_complex(cat, args):
    key = parse_target(args.target)
    method, level = parse_method(args.method)
    engine = get_engine(cat)
    if method == "minimal":
        return engine.minimal(key, args.positions), "minimal", key
    if args.positions < level:
        raise ValidationError(
            f"--positions {args.positions} is below the cone level {level}")
    if key[0] == "simple":
        x = engine.build_A(level, key[1], args.positions,
                           allow_degenerate=args.allow_degenerate)
    elif key[0] == "m1":
        x = engine.build_B(level, key[1], key[2], args.positions,
                           allow_degenerate=args.allow_degenerate)
    else:
        x = engine.build_C(level, key[1], key[2], args.positions,
                           allow_degenerate=args.allow_degenerate)
    return x, f"cone:{level}", key


def cmd_resolve(args):
    cat = _category(args)
    x, method, key = _resolve_complex(cat, args)
    engine = get_engine(cat)
    report = ResolutionReport.from_complex(x, method, target_label(key),
                                           engine.target_module(key))
    payload = {"command": "resolve", "category": _summary(cat)}
    payload.update(report.to_dict())
    return payload, 0


def parse_ses_target(text):
    parts = text.split(":")
    if parts[0] == "alpha" and len(parts) == 2:
        return ("alpha", _int(parts[1], "vertex"))
    if parts[0] == "beta" and len(parts) == 3:
        return ("beta", _int(parts[1], "vertex"), _int(parts[2], "vertex"))
    if parts[0] == "gamma" and len(parts) == 4:
        i = _int(parts[1], "vertex")
        w = tuple(sorted(_int(t, "vertex") for t in parts[2].split(",") if t))
        j = _int(parts[3], "vertex")
        if not w:
            raise ValidationError("gamma needs a nonempty W")
        return ("gamma", i, w, j)
    raise ValidationError(f"cannot parse ses target {text!r}")


def cmd_ses(args):
    cat = _category(args)
    spec = parse_ses_target(args.target)
    if spec[0] == "alpha":
        ses = ses_alpha(cat, spec[1])
    elif spec[0] == "beta":
        ses = ses_beta(cat, spec[1], spec[2])
    else:
        ses = ses_gamma(cat, spec[2], spec[3], spec[1])
    def dims(m):
        return {f"{v},{d}": n for (v, d), n in sorted(m.dims.items())}
    payload = {
        "command": "ses",
        "category": _summary(cat),
        "kind": ses.kind,
        "params": [list(p) if isinstance(p, tuple) else p
                   for p in ses.params],
        "degenerate": ses.degenerate,
        "sub": {"total_dim": ses.sub.total_dim(), "dims": dims(ses.sub)},
        "mid": {"total_dim": ses.mid.total_dim(), "dims": dims(ses.mid)},
        "quot": {"total_dim": ses.quot.total_dim(), "dims": dims(ses.quot)},
        "verified_exact": True,
    }
    return payload, 0


def cmd_koszulity(args):
    cat = _category(args)
    report = koszulity_verdict(cat, args.positions)
    payload = {
        "command": "koszulity",
        "category": _summary(cat),
        "max_position": report["max_position"],
        "verdict": report["verdict"],
        "witness": report["witness"],
        "per_simple": {
            str(i): {
                "linear_up_to": prof["linear_up_to"],
                "positions": {str(n): rows
                              for n, rows in prof["positions"].items()},
            }
            for i, prof in report["per_simple"].items()
        },
        "ext_nonzero": report["ext_nonzero"],
    }
    return payload, 0 if report["passed"] else 4


def cmd_ext(args):
    cat = _category(args)
    table = ext_table(cat, args.positions)
    payload = {
        "command": "ext",
        "category": _summary(cat),
        "max_position": args.positions,
        "entries": [
            {"n": n, "source": i, "target": j, "shift": m, "dim": dim}
            for (n, i, j, m), dim in sorted(table.items())
        ],
    }
    return payload, 0


# -- figure rendering ------------------------------------------------------

def _module_layers(m):
    """Vertex labels per degree plus the nonzero arrow actions that
    connect one degree layer to the next."""
    layers = {}
    for (v, d), n in sorted(m.dims.items()):
        layers.setdefault(d, []).extend([v] * n)
    arrows = {}
    for (u, v, d), blk in sorted(m.acts.items()):
        if not blk.is_zero():
            arrows.setdefault(d, []).append(f"{u}->{v}")
    return ({d: sorted(vs) for d, vs in layers.items()},
            {d: sorted(set(a)) for d, a in arrows.items()})


def _render_module_figure(title, m):
    layers, arrows = _module_layers(m)
    lines = [title]
    degs = sorted(layers)
    for d in degs:
        lines.append(f"deg {d}: " + " ".join(str(v) for v in layers[d]))
        if d in arrows and (d + 1) in layers:
            lines.append("  arrows: " + " ".join(arrows[d]))
    return lines, layers, arrows


def _summand_label(vertex, shift, mult):
    base = f"P_{vertex}" + (f"<{shift}>" if shift else "")
    return base if mult == 1 else f"{mult}*{base}"


def _render_resolution_figure(title, x):
    """Positions as columns, generation degrees as rows; a linear
    resolution walks the diagonal, any stagger is visible at a glance."""
    table = summand_table(x)
    profile = linearity_profile(x)
    positions = sorted(table, reverse=True)
    cells = {}
    degrees = set()
    for n in positions:
        for row in table[n]:
            d = -row["shift"]
            degrees.add(d)
            label = _summand_label(row["vertex"], row["shift"],
                                   row["multiplicity"])
            cells.setdefault((d, n), []).append(label)
    width = max([len(" ".join(v)) for v in cells.values()] + [8]) + 2
    lines = [title]
    header = "deg \\ pos" + "".join(str(n).rjust(width) for n in positions)
    lines.append(header)
    for d in sorted(degrees):
        row = f"{d:9d}"
        for n in positions:
            row += " ".join(cells.get((d, n), [])).rjust(width)
        lines.append(row.rstrip())
    return lines, table, {str(n): list(p) for n, p in profile.items()}


def cmd_figure(args):
    cat = _category(args)
    parts = args.target.split(":", 1)
    if parts[0] == "resolution":
        if len(parts) != 2:
            raise ValidationError("figure resolution target needs a payload")
        sub = argparse.Namespace(**vars(args))
        sub.target = parts[1]
        x, method, key = _resolve_complex(cat, sub)
        title = (f"resolution of {target_label(key)} ({method}) over "
                 f"{cat.field.name}, {cat.mode_label}")
        lines, table, profile = _render_resolution_figure(title, x)
        payload = {
            "command": "figure",
            "category": _summary(cat),
            "object": args.target,
            "positions": {str(n): rows for n, rows in table.items()},
            "linearity": profile,
            "lines": lines,
        }
        return payload, 0
    tparts = args.target.split(":")
    if tparts[0] == "projective":
        if len(tparts) != 2:
            raise ValidationError(f"cannot parse target {args.target!r}")
        i = _int(tparts[1], "vertex")
        m = projective(cat, i)
        title = f"projective at {i}"
    else:
        key = parse_target(args.target)
        if key[0] == "simple":
            m = simple(cat, key[1], key[2])
            title = f"simple at {key[1]}"
        elif key[0] == "mw":
            m = standard_mw(cat, list(key[1]), key[2])
            title = f"standard module W={list(key[1])}, i={key[2]}"
        else:
            m = standard_mw(cat, [key[2]], key[1])
            title = f"standard module W=[{key[2]}], i={key[1]}"
    title += f" over {cat.field.name}, {cat.mode_label}"
    lines, layers, arrows = _render_module_figure(title, m)
    payload = {
        "command": "figure",
        "category": _summary(cat),
        "object": args.target,
        "layers": {str(d): vs for d, vs in layers.items()},
        "arrows": {str(d): a for d, a in arrows.items()},
        "lines": lines,
    }
    return payload, 0


# -- text renderers --------------------------------------------------------

def _text_lines(payload):
    cmd = payload["command"]
    out = []
    if "category" in payload:
        c = payload["category"]
        dims = " ".join(f"{d}:{n}" for d, n in sorted(c["dims_by_degree"].items()))
        out.append(f"category over {c['field']} ({c['mode']}): "
                   f"total dim {c['total_dim']}, by degree {dims}, "
                   f"hypothesis {'ok' if c['hypothesis'] else 'VIOLATED'}")
    if cmd == "check":
        out.append(f"vertices: {' '.join(str(v) for v in payload['vertices'])}")
        out.append(f"edges: {' '.join(f'{u}-{v}' for u, v in payload['edges'])}")
        out.append(f"connected: {payload['connected']}")
        out.append(f"has_cycle: {payload['has_cycle']}")
        out.append(f"hypothesis: {payload['hypothesis']}")
        for arc, ok in sorted(payload["extendable"].items()):
            out.append(f"extendable {arc}: {ok}")
    elif cmd == "algebra":
        out.append(f"verified: {payload['ok']}")
        for note in payload["notes"]:
            out.append(f"note: {note}")
        for f in payload["failures"]:
            out.append(f"FAILURE: {f}")
    elif cmd == "resolve":
        out.append(f"target: {payload['target']}  method: {payload['method']}")
        for n in sorted(payload["positions"], key=int, reverse=True):
            rows = payload["positions"][n]
            label = " + ".join(
                _summand_label(r["vertex"], r["shift"], r["multiplicity"])
                for r in rows) or "0"
            out.append(f"position {n}: {label}")
        out.append(f"linear_up_to: {payload['linear_up_to']}")
        out.append(f"exact: {payload['exact']}")
    elif cmd == "ses":
        out.append(f"kind: {payload['kind']}  params: {payload['params']}")
        out.append(f"degenerate: {payload['degenerate']}")
        for part in ("sub", "mid", "quot"):
            p = payload[part]
            dims = " ".join(f"({k})={n}" for k, n in sorted(p["dims"].items()))
            out.append(f"{part}: total {p['total_dim']}  {dims}")
        out.append("verified exact: true")
    elif cmd == "koszulity":
        out.append(f"koszulity up to position -{payload['max_position']}: "
                   f"{payload['verdict'].upper()}")
        if payload["witness"]:
            n, i, j, m = payload["witness"]
            out.append(f"witness: Ext^{n}(L_{i}, L_{j}<-{m}>) != 0 with m != n")
        for i, prof in sorted(payload["per_simple"].items(), key=lambda kv: int(kv[0])):
            out.append(f"simple {i}: linear_up_to {prof['linear_up_to']}")
    elif cmd == "ext":
        for e in payload["entries"]:
            out.append(f"Ext^{e['n']}(L_{e['source']}, "
                       f"L_{e['target']}<-{e['shift']}>) = {e['dim']}")
    elif cmd == "figure":
        out.extend(payload["lines"])
    return out


def render(payload, fmt):
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return "\n".join(_text_lines(payload)) + "\n"


# -- entry point ------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="pathkoszul",
        description="exact Koszulity checks for graph path categories")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="graph file (JSON or edge list)")
    common.add_argument("--field", default="fp:32003",
                        help="q or fp:P for a prime P (default fp:32003)")
    common.add_argument("--mode", default="truncate2",
                        help="truncate2 or literal:D (default truncate2)")
    common.add_argument("--positions", type=int, default=6,
                        help="resolution depth / Ext range (default 6)")
    common.add_argument("--format", default="text", choices=["json", "text"])
    common.add_argument("--out", default=None, help="write output to a file")
    common.add_argument("--allow-degenerate", action="store_true",
                        help="permit the degenerate leaf case in builders")

    sub.add_parser("check", parents=[common], help="graph hypothesis report")
    sub.add_parser("algebra", parents=[common], help="category dimensions")
    p = sub.add_parser("resolve", parents=[common], help="build a resolution")
    p.add_argument("--target", required=True,
                   help="simple:i | mw:i:W | m1:i:j (W comma-separated)")
    p.add_argument("--method", default="minimal", help="minimal | cone:n")
    p = sub.add_parser("ses", parents=[common], help="one short exact sequence")
    p.add_argument("--target", required=True,
                   help="alpha:i | beta:i:j | gamma:i:W:j")
    sub.add_parser("koszulity", parents=[common], help="Koszulity verdict")
    sub.add_parser("ext", parents=[common], help="nonzero Ext table")
    p = sub.add_parser("figure", parents=[common], help="layered text diagram")
    p.add_argument("--target", required=True,
                   help="projective:i | simple:i | mw:i:W | m1:i:j | "
                        "resolution:<resolve target>")
    p.add_argument("--method", default="minimal", help="minimal | cone:n")
    return ap


_DISPATCH = {
    "check": cmd_check,
    "algebra": cmd_algebra,
    "resolve": cmd_resolve,
    "ses": cmd_ses,
    "koszulity": cmd_koszulity,
    "ext": cmd_ext,
    "figure": cmd_figure,
}


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "positions", 0) < 0:
        print("error: --positions must be >= 0", file=sys.stderr)
        return 2
    try:
        payload, code = _DISPATCH[args.command](args)
    except HypothesisViolation as e:
        print(f"hypothesis violation: {e}", file=sys.stderr)
        return 3
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except VerificationError:
        raise
    except PathKoszulError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
