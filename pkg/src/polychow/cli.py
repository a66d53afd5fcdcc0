"""Command-line interface.

    polychow COMMAND [INPUT ...] [flags]

Inputs are JSON documents read from files ("-" reads standard input).
Output is JSON by default, CSV with --format csv.  Exit codes: 0 success,
1 domain error (a JSON error object is printed), 2 input parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Callable, Sequence, TextIO

from . import chow, core, fans, lift, polytopes, realization
from .core import DEFAULT_MAX_M, PolymatroidError, ValidationError
from .documents import (DocumentError, Named, dumps, is_fan_doc,
                        lifted_names, load_json, matrix_doc, parse_fan_doc,
                        parse_matrix, parse_polymatroid, parse_sequence,
                        polymatroid_doc)

COMMANDS = ("validate", "dual", "union", "meet", "lift", "expand", "flats", "points",
            "fan", "star", "balanced", "degree", "cascade", "volume", "egf", "hr",
            "dragon", "split", "valcheck", "realize", "suite")


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polychow", description="Exact polymatroid intersection theory.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("inputs", nargs="*", help="JSON documents; '-' reads stdin")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--max-m", type=int, default=DEFAULT_MAX_M)
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--seq", action="append",
                        help='set sequence such as "{1},{1,2}"; repeat for a batch')
    parser.add_argument("--element", help="element name for split")
    parser.add_argument("--value", type=int, help="slice value for split")
    parser.add_argument("--kind", choices=("independence", "base"), default="independence",
                        help="which lattice points to list")
    parser.add_argument("--polystell", action="store_true",
                        help="use the full polystellahedral fan of the type")
    parser.add_argument("--summary", action="store_true", help="print counts instead of cones")
    parser.add_argument("--support", action="store_true",
                        help="compare the fan support with the lifted fan by sampling")
    parser.add_argument("--dual", action="store_true", help="realize the dual subspace")
    return parser


class _Context:
    def __init__(self, args: argparse.Namespace, stdin: TextIO | None):
        self.args = args
        self.stdin = stdin
        self.names: Sequence[str] = ()

    def document(self, k: int) -> Any:
        inputs = self.args.inputs
        if k >= len(inputs):
            raise DocumentError(f"'{self.args.command}' needs {k + 1} input document(s)")
        path = inputs[k]
        if path == "-":
            text = (self.stdin or sys.stdin).read()
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise DocumentError(f"cannot read {path}: {exc}") from exc
        return load_json(text)

    def polymatroid(self, k: int = 0) -> Named:
        named = parse_polymatroid(self.document(k), self.args.max_m)
        if k == 0:
            self.names = named.names
        return named

    def sequences(self) -> list[list[int]]:
        if not self.args.seq:
            raise DocumentError(f"'{self.args.command}' needs --seq")
        return [parse_sequence(s, self.names) for s in self.args.seq]


def _pair(ctx: _Context) -> tuple[Named, Named]:
    first, second = ctx.polymatroid(0), ctx.polymatroid(1)
    if first.names != second.names:
        raise core.GroundMismatchError(
            f"element names differ: {list(first.names)} vs {list(second.names)}")
    return first, second


def _named(names: Sequence[str], p: core.Polymatroid) -> dict:
    return polymatroid_doc(Named(tuple(names), p))


def _cone_label(fan: fans.WeightedFan, label: fans.ConeLabel, names, ee) -> dict:
    return {"I": [ee[j] for j in core.elements_of(label.I)],
            "chain": [[names[i] for i in core.elements_of(f)] for f in label.chain]}


def _fan_for(ctx: _Context) -> tuple[fans.WeightedFan, Sequence[str], Named]:
    named = ctx.polymatroid()
    pi = lift.GroundMap(named.p.a)
    fan = fans.polystell_fan(pi) if ctx.args.polystell else fans.aug_bergman_fan(named.p, pi)
    return fan, named.names, named


# ---------------------------------------------------------------------------
# command handlers; each returns a JSON-ready object


def cmd_validate(ctx):
    ctx.polymatroid()
    return {"valid": True}


def cmd_dual(ctx):
    named = ctx.polymatroid()
    return _named(named.names, core.dual(named.p))


def cmd_union(ctx):
    a, b = _pair(ctx)
    return _named(a.names, core.union(a.p, b.p))


def cmd_meet(ctx):
    a, b = _pair(ctx)
    return _named(a.names, core.meet(a.p, b.p))


def _lifted(ctx, op):
    named = ctx.polymatroid()
    pi = lift.GroundMap(named.p.a)
    return _named(lifted_names(named.names, named.p.a), op(named.p, pi))


def cmd_lift(ctx):
    return _lifted(ctx, lift.msym_lift)


def cmd_expand(ctx):
    return _lifted(ctx, lift.expand)


def cmd_flats(ctx):
    named = ctx.polymatroid()
    fl, loops = core.flats(named.p)
    return {"flats": [named.subset_names(f) for f in fl], "loops": named.subset_names(loops)}


def cmd_points(ctx):
    named = ctx.polymatroid()
    op = polytopes.base_points if ctx.args.kind == "base" else polytopes.independence_points
    return {"points": [list(x) for x in op(named.p)]}


def cmd_fan(ctx):
    fan, names, named = _fan_for(ctx)
    if ctx.args.support:
        pi = lift.GroundMap(named.p.a)
        return {"support_equal": fans.support_equality_sample(
            named.p, pi, ctx.args.trials, ctx.args.seed)}
    if ctx.args.summary:
        return {"cones": len(fan.weights), "dimension": fan.dimension(),
                "f": list(fans.f_polynomial(fan)), "pure": fan.is_pure()}
    return fans.fan_to_json(fan, names, lifted_names(names, named.p.a))


def cmd_star(ctx):
    fan, names, named = _fan_for(ctx)
    base = core.make_boolean(named.p.ground) if ctx.args.polystell else named.p
    star = fans.star_empty(fan, base)
    if ctx.args.summary:
        return {"cones": len(star.weights), "dimension": star.dimension(),
                "f": list(fans.f_polynomial(star)), "pure": star.is_pure()}
    return fans.fan_to_json(star, names, lifted_names(names, named.p.a))


def cmd_balanced(ctx):
    doc = ctx.document(0)
    if is_fan_doc(doc):
        fan, names = parse_fan_doc(doc)
        a = fan.pi.a
    else:
        named = parse_polymatroid(doc, ctx.args.max_m)
        pi = lift.GroundMap(named.p.a)
        fan = fans.polystell_fan(pi) if ctx.args.polystell else fans.aug_bergman_fan(named.p, pi)
        names, a = named.names, named.p.a
    bad = fans.balancing_failure(fan)
    witness = None if bad is None else _cone_label(fan, bad, names, lifted_names(names, a))
    return {"balanced": bad is None, "witness": witness}


def _degrees(ctx, op):
    named = ctx.polymatroid()
    values = [op(named.p, seq) for seq in ctx.sequences()]
    return {"degree": values[0]} if len(values) == 1 else {"degrees": values}


def cmd_degree(ctx):
    return _degrees(ctx, chow.degree_hr)


def cmd_cascade(ctx):
    return _degrees(ctx, chow.degree_cascade)


def cmd_volume(ctx):
    return {"poly": str(chow.volume_polynomial(ctx.polymatroid().p))}


def cmd_egf(ctx):
    return {"poly": str(chow.basis_egf(ctx.polymatroid().p))}


def cmd_hr(ctx):
    named = ctx.polymatroid()
    out = []
    for seq in ctx.sequences():
        f = core.rado_matching(named.p, seq)
        out.append({"hall_rado": core.hall_rado(named.p, seq),
                    "matching": None if f is None else [named.names[i] for i in f]})
    return out[0] if len(out) == 1 else {"results": out}


def cmd_dragon(ctx):
    named = ctx.polymatroid()
    out = [{"degree": chow.dragon_degree(named.p, seq),
            "dragon_hall_rado": chow.dragon_check(named.p, seq)} for seq in ctx.sequences()]
    return out[0] if len(out) == 1 else {"results": out}


def cmd_split(ctx):
    named = ctx.polymatroid()
    if ctx.args.element is None or ctx.args.value is None:
        raise DocumentError("split needs --element and --value")
    if ctx.args.element not in named.names:
        raise DocumentError(f"unknown element {ctx.args.element!r}")
    i = named.names.index(ctx.args.element)
    q_le, q_ge, q_eq = chow.hyperplane_split(named.p, i, ctx.args.value)
    return {"le": _named(named.names, q_le), "ge": _named(named.names, q_ge),
            "eq": _named(named.names, q_eq)}


def cmd_valcheck(ctx):
    doc = ctx.document(0)
    if not isinstance(doc, dict) or not isinstance(doc.get("terms"), list) or not doc["terms"]:
        raise DocumentError("relation document needs a nonempty 'terms' list")
    terms = []
    for t in doc["terms"]:
        if not isinstance(t, dict) or not isinstance(t.get("coefficient"), int):
            raise DocumentError(f"malformed term {t!r}")
        terms.append((t["coefficient"], parse_polymatroid(t.get("polymatroid"), ctx.args.max_m).p))
    lhs, rhs = chow.valuative_check(terms)
    return {"classes_zero": lhs, "indicators_zero": rhs, "agree": lhs == rhs}


def cmd_realize(ctx):
    doc = ctx.document(0)
    r = parse_matrix(doc)
    if ctx.args.dual:
        r = realization.realize_dual(r)
    names = doc.get("elements") or [str(i + 1) for i in range(len(r.blocks))]
    out = _named(names, realization.rank_function(r))
    if ctx.args.dual:
        out = {"matrix": matrix_doc(r), "polymatroid": out}
    return out


def cmd_suite(ctx):
    from .suite import run_all
    results = run_all(seed=ctx.args.seed, trials=ctx.args.trials)
    return {"criteria": [r.as_dict() for r in results],
            "passed": all(r.passed for r in results)}


HANDLERS: dict[str, Callable[[_Context], Any]] = {
    name: globals()[f"cmd_{name}"] for name in COMMANDS}


# ---------------------------------------------------------------------------
# output


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)):
        return str(v)
    return json.dumps(v, sort_keys=True)


def to_csv(obj: Any) -> str:
    """Lists of objects become a table with sorted headers; objects whose
    values include one list of rows are exploded; anything else is key,value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if isinstance(obj, list):
        keys = sorted({k for row in obj for k in row})
        w.writerow(keys)
        for row in obj:
            w.writerow([_cell(row.get(k)) for k in keys])
    elif isinstance(obj, dict) and len(obj) == 1 and isinstance(next(iter(obj.values())), list):
        key, rows = next(iter(obj.items()))
        w.writerow([key])
        for row in rows:
            w.writerow([_cell(x) for x in row] if isinstance(row, list) else [_cell(row)])
    else:
        w.writerow(["key", "value"])
        for key in sorted(obj):
            w.writerow([key, _cell(obj[key])])
    return buf.getvalue()


def _error_witness(exc: PolymatroidError, ctx: _Context) -> Any:
    names = getattr(exc, "names", None) or ctx.names
    wit = exc.witness
    if wit is None:
        return None
    if isinstance(exc, chow.SplitOutOfRangeError):
        i, c, lo, hi = wit
        return {"element": names[i] if names else i, "value": c, "min": lo, "max": hi}
    if isinstance(exc, (ValidationError, fans.LoopyPolymatroidError, lift.NotAFlatError)) and names:
        return [[names[i] for i in core.elements_of(s)] for s in wit]
    return list(wit)


def _execute(argv: Sequence[str], stdin: TextIO | None) -> tuple[int, str, str | None]:
    try:
        args = build_parser().parse_args(list(argv))
    except _ArgumentError as exc:
        return 2, dumps({"error": "Parse", "operation": None, "message": str(exc)}), None
    ctx = _Context(args, stdin)
    try:
        result = HANDLERS[args.command](ctx)
    except DocumentError as exc:
        return 2, dumps({"error": "Parse", "operation": args.command, "message": str(exc)}), None
    except PolymatroidError as exc:
        return 1, dumps({"error": exc.kind, "operation": args.command,
                         "witness": _error_witness(exc, ctx)}), None
    except ValueError as exc:
        return 1, dumps({"error": "InvalidArgument", "operation": args.command,
                         "message": str(exc)}), None
    code = 1 if args.command == "suite" and not result["passed"] else 0
    text = to_csv(result) if args.format == "csv" else dumps(result)
    return code, text, args.out


def run(argv: Sequence[str], stdin: TextIO | None = None) -> tuple[int, str]:
    """Execute one command; returns (exit code, output text)."""
    code, text, _ = _execute(argv, stdin)
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text, out_path = _execute(sys.argv[1:] if argv is None else argv, None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
