"""Command-line front end.

    stringlink invariants --link whitehead:2
    stringlink classify --link braidA:3:1:2 --format json
    stringlink verdict --link whitehead:2
    stringlink compose --link whitehead:2 --link twistedhopf:1 --op stack -o out.sl
    stringlink verify --seed 0 --json

Link specs are builder names with integer arguments (``name[:arg]*``) or
paths to diagram files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from math import comb

from . import diagram as dg
from .filtration import classify_full_2comp, classify_linking, classify_zero, pairs, triples, verdict
from .invariants import component_arfs
from .magnus import DEFAULT_DEGREE, report
from .verify import run_all

SUBCOMMANDS = ("invariants", "classify", "verdict", "compose", "verify")
OPS = ("stack", "inverse", "commutator", "closure")
DEGREE_ENV = "STRINGLINK_DEGREE"
SCHEMA = 1


class UsageError(Exception):
    pass


@dataclass
class Command:
    subcommand: str
    links: list[str] = field(default_factory=list)
    degree: int = DEFAULT_DEGREE
    format: str = "table"
    seed: int = 0
    samples: int = 12
    op: str = "stack"
    output: str | None = None


def _ints(args: list[str], spec: str) -> list[int]:
    try:
        return [int(a) for a in args]
    except ValueError:
        raise UsageError(f"malformed builder spec '{spec}': arguments must be integers") from None


def _arity(spec: str, args: list[int], lo: int, hi: int):
    if not lo <= len(args) <= hi:
        want = str(lo) if lo == hi else f"{lo}-{hi}"
        raise UsageError(f"malformed builder spec '{spec}': expected {want} argument(s), got {len(args)}")


def _braid(m: int, *letters: int) -> dg.StringLinkDiagram:
    if any(x == 0 for x in letters):
        raise dg.DiagramError("braid letters are nonzero integers (i for sigma_i, -i for its inverse)")
    return dg.from_braid_word(m, [(abs(x), 1 if x > 0 else -1) for x in letters])


BUILDERS = {
    # name: (min args, max args, constructor)
    "trivial": (1, 1, dg.trivial),
    "braidA": (3, 3, dg.braid_generator_A),
    "twistedhopf": (1, 1, dg.twisted_hopf),
    "whitehead": (0, 1, dg.whitehead),
    "borromean": (0, 0, dg.borromean),
    "figure8": (0, 0, dg.figure_eight_component),
    "trefoil": (0, 1, dg.trefoil_component),
    "braid": (1, 10_000, _braid),
}


def load_link(spec: str) -> dg.Diagram:
    """Build a diagram from a builder spec or read it from a file."""
    if os.path.isfile(spec):
        with open(spec) as fh:
            try:
                d = dg.parse_diagram(fh.read())
            except dg.DiagramError as exc:
                raise UsageError(f"{spec}: {exc}") from None
        bad = dg.validate(d)
        if bad:
            raise UsageError(f"{spec}: invalid diagram: " + "; ".join(map(str, bad)))
        return d
    name, *raw = spec.split(":")
    if name not in BUILDERS:
        if os.sep in spec or spec.endswith((".sl", ".txt")):
            raise UsageError(f"missing file '{spec}'")
        raise UsageError(f"unknown builder '{name}' in spec '{spec}' (known: {', '.join(BUILDERS)})")
    lo, hi, make = BUILDERS[name]
    args = _ints(raw, spec)
    _arity(spec, args, lo, hi)
    try:
        return make(*args)
    except dg.DiagramError as exc:
        raise UsageError(f"bad builder spec '{spec}': {exc}") from None


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stringlink", description="Concordance invariants of string links.")
    sub = p.add_subparsers(dest="subcommand", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True

    def common(sp, links=True):
        if links:
            sp.add_argument("--link", action="append", default=[], metavar="SPEC",
                            help="builder spec (e.g. whitehead:2, braidA:3:1:2) or diagram file; repeatable")
        sp.add_argument("--degree", type=int, default=None,
                        help=f"truncation degree (default ${DEGREE_ENV} or {DEFAULT_DEGREE})")
        sp.add_argument("--format", choices=("table", "json"), default="table")

    common(sub.add_parser("invariants", help="mu-bar report and component Arf invariants"))
    common(sub.add_parser("classify", help="images in the low-order filtration quotients"))
    common(sub.add_parser("verdict", help="solvability verdict"))
    c = sub.add_parser("compose", help="combine diagrams and write the result")
    common(c)
    c.add_argument("--op", choices=OPS, default="stack")
    c.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    v = sub.add_parser("verify", help="run all checks")
    common(v, links=False)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=12, help="random diagrams per property suite")
    v.add_argument("--json", action="store_true", help="same as --format json")
    return p


def parse_args(argv: list[str] | None = None) -> Command:
    """Parse argv into a Command; usage errors exit with status 2."""
    parser = _parser()
    ns = parser.parse_args(argv)
    degree = ns.degree
    if degree is None:
        env = os.environ.get(DEGREE_ENV)
        try:
            degree = int(env) if env else DEFAULT_DEGREE
        except ValueError:
            parser.error(f"${DEGREE_ENV} must be an integer, got '{env}'")
    if degree < 4:
        parser.error(f"truncation degree must be at least 4, got {degree}")
    cmd = Command(ns.subcommand, list(getattr(ns, "link", [])), degree, ns.format)
    if ns.subcommand == "verify":
        cmd.seed, cmd.samples = ns.seed, ns.samples
        if ns.json:
            cmd.format = "json"
        if cmd.samples < 1:
            parser.error("--samples must be positive")
    else:
        if not cmd.links:
            parser.error(f"{ns.subcommand} needs at least one --link")
    if ns.subcommand == "compose":
        cmd.op, cmd.output = ns.op, ns.output
        if cmd.op in ("stack", "commutator") and len(cmd.links) < 2:
            parser.error(f"--op {cmd.op} needs at least two --link specs")
        if cmd.op == "commutator" and len(cmd.links) != 2:
            parser.error("--op commutator takes exactly two --link specs")
        if cmd.op in ("inverse", "closure") and len(cmd.links) != 1:
            parser.error(f"--op {cmd.op} takes exactly one --link spec")
    for spec in cmd.links:
        try:
            load_link(spec)
        except UsageError as exc:
            parser.error(str(exc))
    return cmd


# --------------------------------------------------------------------------
# Rendering

def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _string_link(spec: str) -> dg.StringLinkDiagram:
    d = load_link(spec)
    if not isinstance(d, dg.StringLinkDiagram):
        raise dg.DiagramError(f"'{spec}' is a closed diagram; a string link is needed")
    return d


def _label(idx) -> str:
    return "".join(map(str, idx)) if max(idx) < 10 else ",".join(map(str, idx))


def _invariants(cmd: Command) -> tuple[str, int]:
    rows = []
    for spec in cmd.links:
        d = _string_link(spec)
        r = report(d, cmd.degree)
        rows.append({
            "link": spec,
            "strands": d.num_strands,
            "crossings": d.num_crossings,
            "mu": r.as_dict(),
            "arf": list(component_arfs(d)),
        })
    if cmd.format == "json":
        return _dump_json({"schema": SCHEMA, "command": "invariants", "degree": cmd.degree, "results": rows}), 0
    out = []
    for row in rows:
        out.append(f"link {row['link']} ({row['strands']} strands, {row['crossings']} crossings, q = {cmd.degree})")
        out.extend(f"  mu {k} = {v}" for k, v in row["mu"].items())
        out.extend(f"  arf {i} = {a}" for i, a in enumerate(row["arf"], 1))
    return "\n".join(out) + "\n", 0


def _classify_one(spec: str, degree: int) -> dict:
    d = _string_link(spec)
    m = d.num_strands
    lk = classify_linking(d)
    row = {
        "link": spec,
        "strands": m,
        "linking": {
            "quotient": f"C^{m}/F^{m}_-0.5 ≅ Z^{comb(m, 2)}",
            "labels": [_label(p) for p in pairs(m)],
            "lk": list(lk),
        },
    }
    if not any(lk):
        v = classify_zero(d, degree)
        row["order0"] = {
            "quotient": f"F^{m}_-0.5/F^{m}_0 ≅ Z^{comb(m, 3)} ⊕ Z₂^{comb(m, 2)} ⊕ Z₂^{m}",
            "triple_labels": [_label(t) for t in triples(m)],
            "triple": list(v.triple),
            "sl_labels": [_label((i, i, j, j)) for i, j in pairs(m)],
            "sl_mod2": list(v.sl_mod2),
            "arf": list(v.arf),
        }
    if m == 2:
        c = classify_full_2comp(d, degree)
        row["full"] = {
            "quotient": "C²/F²_0 ≅ Z₂ ⊕ Z₂ ⊕ Z₂ ⊕ Z",
            "labels": ["arf1", "arf2", "sl mod 2", "lk"],
            "value": list(c.as_tuple()),
            "text": str(c),
        }
    row["verdict"] = verdict(d, degree).text()
    return row


def _fmt_vec(labels, values) -> str:
    if not values:
        return "()"
    return "  ".join(f"{a}={b}" for a, b in zip(labels, values))


def _classify(cmd: Command) -> tuple[str, int]:
    rows = [_classify_one(spec, cmd.degree) for spec in cmd.links]
    if cmd.format == "json":
        return _dump_json({"schema": SCHEMA, "command": "classify", "degree": cmd.degree, "results": rows}), 0
    out = []
    for row in rows:
        out.append(f"link {row['link']} ({row['strands']} strands)")
        lin = row["linking"]
        out.append(f"  {lin['quotient']}")
        out.append(f"    lk: {_fmt_vec(lin['labels'], lin['lk'])}")
        if "order0" in row:
            z = row["order0"]
            out.append(f"  {z['quotient']}")
            out.append(f"    triple: {_fmt_vec(z['triple_labels'], z['triple'])}")
            out.append(f"    sl mod 2: {_fmt_vec(z['sl_labels'], z['sl_mod2'])}")
            out.append(f"    arf: {_fmt_vec([str(i) for i in range(1, row['strands'] + 1)], z['arf'])}")
        if "full" in row:
            f = row["full"]
            out.append(f"  {f['quotient']}  ({', '.join(f['labels'])})")
            out.append(f"    {f['text']}")
        out.append(f"  verdict: {row['verdict']}")
    return "\n".join(out) + "\n", 0


def _verdict(cmd: Command) -> tuple[str, int]:
    rows = []
    for spec in cmd.links:
        v = verdict(_string_link(spec), cmd.degree)
        rows.append({
            "link": spec,
            "level": v.level.value,
            "obstruction_to_half": list(v.obstruction_to_half),
            "text": v.text(),
        })
    if cmd.format == "json":
        return _dump_json({"schema": SCHEMA, "command": "verdict", "degree": cmd.degree, "results": rows}), 0
    if len(rows) == 1:
        return rows[0]["text"] + "\n", 0
    return "".join(f"{r['link']}: {r['text']}\n" for r in rows), 0


def _compose(cmd: Command) -> tuple[str, int]:
    ds = [_string_link(s) for s in cmd.links]
    if cmd.op == "stack":
        result: dg.Diagram = dg.stack(*ds)
    elif cmd.op == "commutator":
        result = dg.commutator(*ds)
    elif cmd.op == "inverse":
        result = dg.inverse(ds[0])
    else:
        result = dg.closure(ds[0])
    if cmd.format == "json":
        text = _dump_json({
            "schema": SCHEMA,
            "command": "compose",
            "op": cmd.op,
            "strands": result.num_strands,
            "events": [str(e) for e in result.events],
        })
    else:
        text = f"# {cmd.op} of {', '.join(cmd.links)}\n" + dg.format_diagram(result)
    if cmd.output:
        with open(cmd.output, "w") as fh:
            fh.write(text)
        return f"wrote {cmd.output}\n", 0
    return text, 0


def _verify(cmd: Command) -> tuple[str, int]:
    results = run_all(cmd.seed, samples=cmd.samples)
    failed = sum(not r.passed for r in results)
    status = 1 if failed else 0
    if cmd.format == "json":
        return _dump_json({
            "schema": SCHEMA,
            "command": "verify",
            "seed": cmd.seed,
            "samples": cmd.samples,
            "passed": not failed,
            "results": [r.as_dict() for r in results],
        }), status
    lines = [r.text() for r in results]
    lines.append(f"{len(results) - failed}/{len(results)} checks passed (seed {cmd.seed})")
    return "\n".join(lines) + "\n", status


HANDLERS = {
    "invariants": _invariants,
    "classify": _classify,
    "verdict": _verdict,
    "compose": _compose,
    "verify": _verify,
}


def run(cmd: Command, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text, status = HANDLERS[cmd.subcommand](cmd)
    except (UsageError, dg.DiagramError, ValueError) as exc:
        stderr.write(f"stringlink {cmd.subcommand}: error: {exc}\n")
        return 2
    stdout.write(text)
    return status


def main(argv: list[str] | None = None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
