"""``sumsetlab`` command line.

Every command prints one report (JSON or text) and exits with
0 = certified yes / ok, 1 = certified no, 2 = unknown, 3 = error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Optional

from .complements import (PreconditionError, Status, dependents, gap_stats, is_complement,
                          covered_on_window, minimality_report, _exact_dependent_set)
from .constructions import (inherit_pipeline, prop11_generate, self_mac_check,
                            thm_converse_extract, thm_finite_build_w)
from .core import PeriodicSet, ResourceError, as_periodic
from .dsl import evaluate, parse, parse_ep, parse_literal
from .modular import ResidueSet, search_S_necessary, search_S_sufficient
from .oracle import Window, WindowSet, materialize, window_cap

EXIT_CODES = {"CERTIFIED_YES": 0, "OK": 0, "CERTIFIED_NO": 1, "UNKNOWN": 2, "ERROR": 3}


class CLIError(Exception):
    """A user-facing failure (bad flag, malformed window, precondition)."""


def _window(text: Optional[str], required: bool = True) -> Optional[Window]:
    if text is None:
        if required:
            raise CLIError("--window LO..HI is required for this command")
        return None
    try:
        w = Window.parse(text)
    except ValueError as exc:
        raise CLIError(f"malformed window {text!r}: {exc}") from None
    if len(w) > window_cap():
        raise CLIError(f"window span {len(w)} exceeds cap {window_cap()} (SUMSETLAB_WINDOW_CAP)")
    return w


def _expr(text: str):
    return evaluate(parse(text))


def _periodic(text: str, what: str) -> PeriodicSet:
    v = _expr(text)
    if isinstance(v, WindowSet):
        raise CLIError(f"{what} must be a periodic or finite set expression")
    return v


def _jsonable(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, (list, set, frozenset)):
        return [_jsonable(v) for v in (sorted(x) if not isinstance(x, list) else x)]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if hasattr(x, "item"):
        return x.item()
    return x


def _describe(v) -> dict:
    if isinstance(v, WindowSet):
        return {"kind": "windowed", "window": str(v.window), "count": len(v)}
    return {"kind": "periodic", "canonical": v.to_json()}


def _verdict(status, witnesses=(), note: str = "") -> dict:
    status = status.value if isinstance(status, Status) else status
    return {"status": status, "witnesses": [_jsonable(w) for w in witnesses], "note": note}


def _from(v) -> dict:
    return _verdict(v.status, [] if v.witness is None else [v.witness], v.note)


# -- commands ------------------------------------------------------------------------


def cmd_eval(a):
    v = _expr(a.expr)
    w = _window(a.window, required=False)
    result = _describe(v)
    if w is not None:
        result["window"] = str(w)
        result["members"] = materialize(v, w).members()
    elif isinstance(v, WindowSet):
        result["members"] = v.members()
    note = "exact canonical form" if isinstance(v, PeriodicSet) else f"windowed on {v.window}"
    return _verdict("OK", note=note), result


def cmd_iscomplement(a):
    C, W = _expr(a.c), _expr(a.w)
    if isinstance(C, WindowSet) or isinstance(W, WindowSet):
        w = _window(a.window)
        return _from(covered_on_window(C, W, w)), {}
    v = _from(is_complement(C, W))
    if a.window:
        v["note"] += f" (periodic inputs: window {a.window} ignored)"
    return v, {}


def _report_payload(rep) -> dict:
    return {"elements": [{"c": c, "status": e.label, "witness": e.witness}
                         for c, e in sorted(rep.elements.items())]}


def cmd_isminimal(a):
    C, W = _expr(a.c), _expr(a.w)
    w = _window(a.window)
    probe = _window(a.probe, required=False)
    rep = minimality_report(C, W, w, probe=probe)
    v = rep.overall
    wit = [v.witness] if v.witness is not None else []
    return _verdict(v.status, wit, v.note), _report_payload(rep)


def cmd_dependents(a):
    C, W = _expr(a.c), _expr(a.w)
    w = _window(a.window)
    periodic = not isinstance(C, WindowSet) and not isinstance(W, WindowSet)
    deps = dependents(C, W, a.element, w)
    result = {"c": a.element, "dependents": deps}
    if periodic and _exact_dependent_set(as_periodic(C), as_periodic(W), a.element).is_empty:
        return _verdict(Status.CERTIFIED_NO, [a.element],
                        f"exact: {a.element} has no dependent integer anywhere"), result
    if deps:
        note = "exact dependent set" if periodic else f"windowed: dependents of {a.element} in {w}"
        return _verdict(Status.CERTIFIED_YES, deps[:1], note), result
    if periodic:
        return _verdict(Status.CERTIFIED_YES, [],
                        f"exact: dependent set is nonempty but has no element in {w}"), result
    return _verdict(Status.UNKNOWN, [], f"windowed: no dependent of {a.element} in {w}"), result


def cmd_search_s(a):
    E = parse_ep(a.ep)
    fn = search_S_sufficient if a.theorem == "sufficient" else search_S_necessary
    found = [sorted(S.members) for S in fn(E)]
    note = f"exhaustive over nonempty subsets of Z/{E.n}Z"
    status = Status.CERTIFIED_YES if found else Status.CERTIFIED_NO
    return _verdict(status, found, note), {"S": found}


def cmd_build_finite_w(a):
    C = parse_literal(a.c)
    b = thm_finite_build_w(C, a.fill_to)
    status = Status.CERTIFIED_YES if b.verified else Status.CERTIFIED_NO
    note = (f"exact: W + C = Z and every c has a dependent integer; k = {b.k}"
            if b.verified else "exact verification failed")
    result = {"k": b.k, "steps": b.steps, "prefill_cover": b.prefill_cover,
              "W": b.W.to_json()}
    return _verdict(status, [{"c": c, "z": z} for c, z in b.witnesses.items()], note), result


def _s_residues(text: str, n: int) -> ResidueSet:
    return ResidueSet.of(n, parse_literal(text))


def cmd_build_inherit(a):
    E = parse_ep(a.ep)
    w = _window(a.window)
    D, res = inherit_pipeline(E, _s_residues(a.s, E.n), w)
    dp = materialize(res.d_prime, w)
    ok = res.coverage.status is Status.CERTIFIED_YES
    rep = res.report.overall
    if not ok:
        v = _from(res.coverage)
    else:
        v = _verdict(rep.status, [] if rep.witness is None else [rep.witness],
                     f"{res.coverage.note}; {rep.note}")
    result = {"D_prime": dp.members(), "shift": res.shift, "greedy_window": str(D.window)}
    result.update(_report_payload(res.report))
    return v, result


def cmd_extract_converse(a):
    E = parse_ep(a.ep)
    C = _periodic(a.c, "--c")
    w = _window(a.window)
    r = thm_converse_extract(E, C, w)
    result = {"case": r.case, "residue": r.residue, "m": r.m, "added": r.added,
              "D": r.D.to_json(), "D_in_window": materialize(r.D, w).members()}
    if r.coverage.status is not Status.CERTIFIED_YES:
        return _from(r.coverage), result
    if r.report is None:
        return _verdict(Status.UNKNOWN, [], f"{r.coverage.note}; {r.note}"), result
    rep = r.report.overall
    result.update(_report_payload(r.report))
    note = "; ".join(x for x in (r.coverage.note, rep.note, r.note) if x)
    return _verdict(rep.status, [] if rep.witness is None else [rep.witness], note), result


def cmd_gen_prop11(a):
    X = prop11_generate(a.limit)
    return (_verdict("OK", note=f"W = 2A | (-2A-1) for limit {a.limit}, on {X.window}"),
            {"window": str(X.window), "count": len(X), "members": X.members()})


def cmd_selfmac(a):
    W = _expr(a.expr)
    w = _window(a.window)
    v = _from(self_mac_check(W, w))
    if isinstance(W, PeriodicSet):
        v["note"] += f" (periodic input: window {w} ignored)"
    return v, {}


def cmd_gapstats(a):
    W = _expr(a.expr)
    w = _window(a.window)
    g = gap_stats(W, w)
    return (_verdict("OK", note=f"gaps of W on {w}"),
            {"count": g.count, "max_gap": g.max_gap, "gap_histogram": g.gap_histogram,
             "complement_gap_histogram": g.complement_gap_histogram})


# -- plumbing ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="sumsetlab", parents=[common],
                                description="Exact additive complements of eventually periodic sets.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_, parent=sub):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn, label=name)
        return sp

    sp = add("eval", cmd_eval, "evaluate a set expression")
    sp.add_argument("expr")
    sp.add_argument("--window")

    sp = add("iscomplement", cmd_iscomplement, "decide C + W = Z")
    sp.add_argument("c")
    sp.add_argument("w")
    sp.add_argument("--window")

    sp = add("isminimal", cmd_isminimal, "minimality report for C as a complement of W")
    sp.add_argument("c")
    sp.add_argument("w")
    sp.add_argument("--window", required=True)
    sp.add_argument("--probe", help="elements of C to probe, LO..HI")

    sp = add("dependents", cmd_dependents, "integers that only c + W represents")
    sp.add_argument("c")
    sp.add_argument("w")
    sp.add_argument("--c", dest="element", type=int, required=True)
    sp.add_argument("--window", required=True)

    sp = add("search-s", cmd_search_s, "admissible residue sets S")
    sp.add_argument("--theorem", choices=("necessary", "sufficient"), required=True)
    sp.add_argument("--ep", required=True)

    build = add("build", None, "constructions").add_subparsers(dest="what", metavar="WHAT")
    build.required = True
    sp = add("finite-w", cmd_build_finite_w, "W with C as a minimal complement", build)
    sp.set_defaults(label="build finite-w")
    sp.add_argument("--c", required=True)
    sp.add_argument("--fill-to", type=int, required=True)
    sp = add("inherit", cmd_build_inherit, "complement of W inherited from one of G", build)
    sp.set_defaults(label="build inherit")
    sp.add_argument("--ep", required=True)
    sp.add_argument("--s", required=True)
    sp.add_argument("--window", required=True)

    extract = add("extract", None, "extractions").add_subparsers(dest="what", metavar="WHAT")
    extract.required = True
    sp = add("converse", cmd_extract_converse, "complement of G read off one of W", extract)
    sp.set_defaults(label="extract converse")
    sp.add_argument("--ep", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--window", required=True)

    gen = add("gen", None, "generators").add_subparsers(dest="what", metavar="WHAT")
    gen.required = True
    sp = add("prop11", cmd_gen_prop11, "ternary self-complement", gen)
    sp.set_defaults(label="gen prop11")
    sp.add_argument("--limit", type=int, required=True)

    sp = add("selfmac", cmd_selfmac, "is W a minimal complement of itself")
    sp.add_argument("expr")
    sp.add_argument("--window", required=True)

    sp = add("gapstats", cmd_gapstats, "gap histogram of W on a window")
    sp.add_argument("expr")
    sp.add_argument("--window", required=True)
    return p


def _text(report: dict) -> str:
    v = report["verdict"]
    lines = [f"command: {report['command']}", f"status: {v['status']}"]
    if v["witnesses"]:
        lines.append("witnesses: " + " ".join(json.dumps(x, separators=(",", ":"))
                                              for x in v["witnesses"]))
    if v["note"]:
        lines.append(f"note: {v['note']}")
    for k, val in report.get("result", {}).items():
        lines.append(f"{k}: {json.dumps(val, separators=(',', ':'))}")
    return "\n".join(lines)


def execute(args: argparse.Namespace) -> tuple[dict, int]:
    """Run a parsed command; returns (report, exit code)."""
    for k, v in vars(args).items():
        if isinstance(v, str):
            setattr(args, k, v.strip())
    inputs = {k: v for k, v in vars(args).items()
              if k not in ("fn", "label", "format", "command", "what")}
    t0 = time.perf_counter()
    try:
        verdict, result = args.fn(args)
    except (CLIError, PreconditionError, ResourceError, ValueError, ZeroDivisionError) as exc:
        verdict, result = _verdict("ERROR", note=f"{type(exc).__name__}: {exc}"), {}
    report = {"command": args.label, "inputs": inputs, "verdict": verdict,
              "timing_ms": round((time.perf_counter() - t0) * 1000, 3)}
    if result:
        report["result"] = _jsonable(result)
    return report, EXIT_CODES[verdict["status"]]


def _protect(argv: list) -> list:
    """Keep values like ``-1000..1000`` or ``-N`` from being read as options.

    argparse treats any token containing a space as a value, and both the
    DSL and window parsers ignore leading blanks.
    """
    out = []
    for tok in argv:
        if tok.startswith("-") and not tok.startswith("--") and tok != "-h" and len(tok) > 1:
            tok = " " + tok
        out.append(tok)
    return out


def run(argv: list) -> tuple[dict, int]:
    return execute(build_parser().parse_args(_protect(argv)))


def render(report: dict, fmt: str = "text") -> str:
    return json.dumps(report, indent=2) if fmt == "json" else _text(report)


def main(argv: Optional[list] = None) -> int:
    try:
        args = build_parser().parse_args(_protect(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:  # usage errors (argparse has already printed them)
        return 0 if exc.code in (0, None) else EXIT_CODES["ERROR"]
    report, code = execute(args)
    print(render(report, getattr(args, "format", "text")))
    return code
