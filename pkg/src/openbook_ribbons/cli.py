"""Command-line entry point: ``openbook-ribbons <command> ...``.

Reports go to standard output as JSON.  Exit codes: 0 ok, 1 validation
failure, 2 parse error, 3 precondition violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .arc import validate_arc_diagram
from .exceptions import OpenBookError, ParseError, PreconditionViolation
from .formats import (format_arc, format_bsurf, format_front, read_file,
                      resolve_diagram)
from .front import abstract_graph, random_graph_front, validate_front
from .morse import page_invariants, validate_morse_diagram
from .position import to_arc_position
from .render import render
from .satellite import (PatternBraid, cable, quasipositive_annulus, satellite,
                        summarize)
from .surface import (destabilize, invariant_report, positive_markov_stabilization,
                      ribbon_to_bennequin)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3
DEFAULT_COMPANION = "builtin:unknot_lens"


@dataclass
class PipelineConfig:
    inputs: List[str] = field(default_factory=list)
    epsilon: object = "auto"
    seed: int = 0
    out: Optional[str] = None
    render: bool = False

    @staticmethod
    def parse_epsilon(text):
        if text is None or text == "auto":
            return "auto"
        try:
            eps = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad epsilon {text!r}") from None
        if eps <= 0:
            raise argparse.ArgumentTypeError("epsilon must be positive")
        return eps


class StageError(Exception):
    def __init__(self, stage: str, exc: Exception):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage
        self.exc = exc


def _color(text: str, ok: bool) -> str:
    if os.environ.get("OPENBOOK_RIBBONS_COLOR", "") not in ("1", "true", "yes", "always"):
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _emit(obj, out=None):
    (out or sys.stdout).write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _status(ok: bool, what: str):
    sys.stderr.write(_color(("ok" if ok else "FAIL") + f" {what}", ok) + "\n")


def _stage(name, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except OpenBookError as exc:
        raise StageError(name, exc) from exc


def _write(path: str, text: str):
    with open(path, "w") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(path: str) -> int:
    kind, obj, _ = read_file(path)
    if kind == "morse":
        rep = validate_morse_diagram(obj)
        extra = {"page_invariants": list(page_invariants(obj).as_tuple())} if rep.ok else {}
    elif kind == "front":
        rep = validate_front(obj, obj.diagram)
        extra = {}
    elif kind == "arc":
        rep = validate_arc_diagram(obj)
        extra = {}
    else:
        # the constructor already enforces well-formedness
        rep = None
        extra = {"invariants": invariant_report(obj).to_dict()}
    ok = rep.ok if rep is not None else True
    body = {"path": path, "kind": kind, "ok": ok,
            "issues": rep.to_dict()["issues"] if rep is not None else []}
    body.update(extra)
    _emit(body)
    _status(ok, path)
    return EXIT_OK if ok else EXIT_INVALID


def run_pipeline(front, config: PipelineConfig):
    """Front -> arc diagram -> Bennequin surface -> report."""
    rep = _stage("validate", validate_front, front, front.diagram)
    if not rep.ok:
        raise StageError("validate", PreconditionViolation(
            "invalid front: " + ", ".join(sorted(rep.code_set()))))
    arc, record = _stage("position", to_arc_position, front, config.epsilon)
    rep = validate_arc_diagram(arc)
    if not rep.ok:
        raise StageError("position", PreconditionViolation("arc diagram does not validate"))
    surf = _stage("ribbon", ribbon_to_bennequin, arc)
    report = invariant_report(surf)
    return arc, record, surf, report


def cmd_pipeline(path: str, config: PipelineConfig) -> int:
    kind, front, ref = read_file(path)
    if kind != "front":
        raise ParseError("pipeline expects a .front file", None, None, path)
    arc, record, surf, report = run_pipeline(front, config)
    body = {"input": path, "epsilon": str(record.epsilon),
            "subdivisions": record.subdivisions,
            "wires": len(arc.wires), "report": report.to_dict(),
            "graph_euler_char": abstract_graph(front).euler_char}
    if config.out:
        os.makedirs(config.out, exist_ok=True)
        stem = os.path.splitext(os.path.basename(path))[0]
        files = {
            "arc": os.path.join(config.out, stem + ".arc"),
            "bsurf": os.path.join(config.out, stem + ".bsurf"),
            "report": os.path.join(config.out, stem + ".report.json"),
        }
        arc_ref = ref if ref.startswith("builtin:") else os.path.relpath(
            os.path.join(os.path.dirname(os.path.abspath(path)), ref),
            os.path.abspath(config.out))
        _write(files["arc"], format_arc(arc, arc_ref))
        _write(files["bsurf"], format_bsurf(surf))
        _write(files["report"], report.to_json() + "\n")
        if config.render:
            for t, svg in enumerate(render(front.diagram, front, arc)):
                files[f"svg{t}"] = os.path.join(config.out, f"{stem}.torus{t}.svg")
                _write(files[f"svg{t}"], svg)
        # every written file must read back and validate
        _, arc2, _ = read_file(files["arc"])
        if not validate_arc_diagram(arc2).ok:
            raise StageError("write", PreconditionViolation("written arc diagram is invalid"))
        read_file(files["bsurf"])
        body["files"] = files
    ok = report.bennequin_slack == 0
    body["ok"] = ok
    _emit(body)
    _status(ok, path)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_render(path: str, out: Optional[str]) -> int:
    kind, obj, _ = read_file(path)
    if kind == "morse":
        svgs = render(obj)
    elif kind == "front":
        svgs = render(obj.diagram, obj)
    elif kind == "arc":
        svgs = render(obj.diagram, None, obj)
    else:
        raise ParseError("cannot render a .bsurf file", None, None, path)
    if out is None:
        sys.stdout.write("".join(svgs))
        return EXIT_OK
    os.makedirs(out, exist_ok=True)
    stem = os.path.basename(path).split(".")[0]
    files = []
    for t, svg in enumerate(svgs):
        files.append(os.path.join(out, f"{stem}.torus{t}.svg"))
        _write(files[-1], svg)
    _emit({"input": path, "files": files})
    return EXIT_OK


def load_companion(ref: str, epsilon="auto"):
    """Summary of a companion given as a .bsurf, a knot .front, or builtin:<front>."""
    if ref.startswith("builtin:"):
        from .front import builtin_front
        from .exceptions import UnknownName
        try:
            f = builtin_front(ref[len("builtin:"):])
        except UnknownName as exc:
            raise ParseError(str(exc)) from None
        return summarize(quasipositive_annulus(f, epsilon))
    kind, obj, _ = read_file(ref)
    if kind == "bsurf":
        return summarize(obj)
    if kind == "front":
        return summarize(quasipositive_annulus(obj, epsilon))
    raise ParseError("companion must be a .bsurf or a knot .front", None, None, ref)


def _parse_band(text: str):
    parts = text.split(",")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad band {text!r}, want I,J[,SIGN]") from None
    if len(vals) == 2:
        vals.append(1)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"bad band {text!r}, want I,J[,SIGN]")
    return tuple(vals)


def cmd_satellite(strands: int, bands, companion_ref: str, epsilon="auto") -> int:
    pattern = PatternBraid(strands, tuple(bands or ()))
    comp = load_companion(companion_ref, epsilon)
    res = satellite(pattern, comp)
    body = res.to_dict()
    body["companion"] = comp.to_dict()
    body["pattern"] = {"n": pattern.n, "k": pattern.k}
    _emit(body)
    return EXIT_OK


def cmd_cable(p: int, q: int, companion_ref: str, epsilon="auto") -> int:
    comp = load_companion(companion_ref, epsilon)
    res, verdict = cable(p, q, comp)
    body = res.to_dict()
    body.update({"p": p, "q": q, "verdict": verdict})
    _emit(body)
    return EXIT_OK


def cmd_stabilize(path: str, times: int, out: Optional[str], undo: bool = False) -> int:
    kind, s, _ = read_file(path)
    if kind != "bsurf":
        raise ParseError("stabilize expects a .bsurf file", None, None, path)
    before = invariant_report(s)
    for _ in range(times):
        s = destabilize(s) if undo else positive_markov_stabilization(s)
    after = invariant_report(s)
    if out:
        _write(out, format_bsurf(s))
    _emit({"before": before.to_dict(), "after": after.to_dict(), "d": s.d,
           "bands": len(s.bands)})
    return EXIT_OK


def cmd_invariants(path: str, epsilon="auto") -> int:
    kind, obj, _ = read_file(path)
    if kind == "morse":
        n, h, chi, g = page_invariants(obj).as_tuple()
        body = {"n": n, "h": h, "euler_char": chi, "genus": g}
    elif kind == "bsurf":
        body = invariant_report(obj).to_dict()
    elif kind == "front":
        _, _, _, report = run_pipeline(obj, PipelineConfig(epsilon=epsilon))
        body = report.to_dict()
        body["graph_euler_char"] = abstract_graph(obj).euler_char
    else:
        body = invariant_report(ribbon_to_bennequin(obj)).to_dict()
    _emit(body)
    return EXIT_OK


def cmd_gen(seed: int, size: int, diagram: str, out: Optional[str]) -> int:
    d = resolve_diagram(diagram, os.getcwd())
    f = random_graph_front(seed, size, d)
    text = format_front(f, diagram)
    if out:
        _write(out, text)
        _emit({"seed": seed, "size": size, "strands": len(f.strands), "file": out})
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="openbook-ribbons",
                                description="Legendrian ribbons and Bennequin surfaces "
                                            "in open books given by Morse diagrams.")
    sub = p.add_subparsers(dest="command", required=True)
    eps = dict(type=PipelineConfig.parse_epsilon, default="auto",
               help='smoothing parameter, a rational like 1/8, or "auto"')

    v = sub.add_parser("validate", help="validate a .morse/.front/.arc/.bsurf file")
    v.add_argument("path")

    pl = sub.add_parser("pipeline", help="front -> arc diagram -> Bennequin surface")
    pl.add_argument("path")
    pl.add_argument("--epsilon", **eps)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--out", help="directory for the .arc, .bsurf and report files")
    pl.add_argument("--svg", action="store_true", help="also render SVGs into --out")

    r = sub.add_parser("render", help="SVG per binding torus")
    r.add_argument("path")
    r.add_argument("--out", help="output directory (default: SVG text on stdout)")

    s = sub.add_parser("satellite", help="satellite of a positive band pattern")
    s.add_argument("--strands", "-n", type=int, default=1)
    s.add_argument("--band", type=_parse_band, action="append",
                   help="pattern band I,J[,SIGN]; repeat in theta order")
    s.add_argument("--companion", default=DEFAULT_COMPANION)
    s.add_argument("--epsilon", **eps)

    c = sub.add_parser("cable", help="(p, q)-cable criterion")
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-q", type=int, required=True)
    c.add_argument("--companion", default=DEFAULT_COMPANION)
    c.add_argument("--epsilon", **eps)

    st = sub.add_parser("stabilize", help="positive Markov stabilization of a .bsurf")
    st.add_argument("path")
    st.add_argument("--times", type=int, default=1)
    st.add_argument("--undo", action="store_true", help="destabilize instead")
    st.add_argument("--out", help="write the result as .bsurf")

    i = sub.add_parser("invariants", help="invariants of a diagram, front or surface")
    i.add_argument("path")
    i.add_argument("--epsilon", **eps)

    g = sub.add_parser("gen", help="seeded random graph front")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--size", type=int, default=3)
    g.add_argument("--diagram", default="builtin:disk_identity")
    g.add_argument("--out", help="write the .front file here")
    return p


def _dispatch(a) -> int:
    if a.command == "validate":
        return cmd_validate(a.path)
    if a.command == "pipeline":
        cfg = PipelineConfig([a.path], a.epsilon, a.seed, a.out, a.svg)
        if cfg.render and not cfg.out:
            raise PreconditionViolation("--svg needs --out")
        return cmd_pipeline(a.path, cfg)
    if a.command == "render":
        return cmd_render(a.path, a.out)
    if a.command == "satellite":
        return cmd_satellite(a.strands, a.band, a.companion, a.epsilon)
    if a.command == "cable":
        return cmd_cable(a.p, a.q, a.companion, a.epsilon)
    if a.command == "stabilize":
        return cmd_stabilize(a.path, a.times, a.out, a.undo)
    if a.command == "invariants":
        return cmd_invariants(a.path, a.epsilon)
    return cmd_gen(a.seed, a.size, a.diagram, a.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return _dispatch(a)
    except ParseError as exc:
        _emit({"error": "parse", "message": str(exc), "line": exc.line,
               "column": exc.column, "path": exc.path})
        return EXIT_PARSE
    except OSError as exc:
        _emit({"error": "parse", "message": str(exc), "line": None,
               "column": None, "path": getattr(exc, "filename", None)})
        return EXIT_PARSE
    except StageError as exc:
        code = EXIT_PRECONDITION if isinstance(exc.exc, PreconditionViolation) else EXIT_INVALID
        _emit({"error": type(exc.exc).__name__, "stage": exc.stage, "message": str(exc.exc)})
        return code
    except PreconditionViolation as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_PRECONDITION
    except OpenBookError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
