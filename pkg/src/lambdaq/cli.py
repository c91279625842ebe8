"""Command line front end.

Global flags come before the subcommand, e.g.

    python3 -m lambdaq --field Q --q 2 --point 1,-2,0 classify
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import family as fa
from . import modules as mo
from .exact import Field, FieldError, field_make
from .quiver import quiver_build
from .verify import CHECKS, run_verify


@dataclass
class RunConfig:
    field: Field
    depth: int = 6
    fmt: str = "text"
    budget: int = mo.DEFAULT_BUDGET
    out: Optional[str] = None
    side: str = "left"


class UsageError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lambdaq", description="Exact computations with Lambda(q) and its modules.")
    p.add_argument("--field", default="Q", help='"Q" or "Fp:<prime>" (default Q)')
    p.add_argument("--q", default="2", help="the parameter q, an integer or a/b literal (default 2)")
    p.add_argument("--depth", type=int, default=6, help="depth bound for iterated checks (default 6)")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "dot"), default="text")
    p.add_argument("--budget", type=int, default=mo.DEFAULT_BUDGET, help="limit for exhaustive scans")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--point", help="homogeneous coordinates a,b,c")
    p.add_argument("--side", choices=fa.SIDES, default="left")
    p.add_argument("--count", type=int, default=1, help="number of syzygy steps")
    p.add_argument("--seeds", help="quiver seeds, points separated by ';'")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", help="closed-form and computed classification of a point")
    sub.add_parser("syzygy", help="iterate Omega and match the case table")
    sub.add_parser("dual", help="Lambda-dual of a point module and the predicted answer")
    sub.add_parser("quiver", help="Omega-mho quiver around the seeds")
    sub.add_parser("appendix-case", help="case of the xM, yM, zM dispatch")
    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--check", type=int, action="append", help="only run this check id (repeatable)")
    return p


def _config(args) -> RunConfig:
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    if args.budget < 0:
        raise UsageError("--budget must be >= 0")
    f = field_make(args.field, args.q)
    return RunConfig(f, args.depth, args.fmt, args.budget, args.out, args.side)


def _need_point(cfg: RunConfig, args) -> fa.ProjPoint:
    if not args.point:
        raise UsageError("--point is required")
    return fa.parse_point(cfg.field, args.point)


def _fmt_point(p: fa.ProjPoint) -> list:
    return [p.field.fmt(v) for v in p.coords]


def cmd_classify(cfg: RunConfig, p: fa.ProjPoint, side: str):
    closed = fa.classify_closed_form(p, side)
    comp = fa.classify_computational(p, side, cfg.depth)
    bad = closed.mismatches(comp)
    doc = {"schema": 1, "module": fa.module_label(p, side), "point": _fmt_point(p), "side": side,
           "closed_form": closed.to_dict(), "computational": comp.to_dict(), "agree": not bad,
           "mismatches": bad}
    if cfg.fmt == "json":
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        lines = [f"{doc['module']} ({side} module) over {cfg.field}"]
        lines.append(f"{'flag':24} {'closed form':>12} {'computed':>12}")
        for k in fa.FLAG_NAMES:
            lines.append(f"{k:24} {str(getattr(closed, k)):>12} {str(getattr(comp, k)):>12}")
        lines.append(f"computed flags bounded at depth {cfg.depth}")
        lines.append("agree" if not bad else "DISAGREE on " + ", ".join(bad))
        text = "\n".join(lines) + "\n"
    return text, 0 if not bad else 1


def cmd_syzygy(cfg: RunConfig, p: fa.ProjPoint, side: str, count: int):
    if count < 1:
        raise UsageError("--count must be >= 1")
    steps = []
    seen = {p: 0}
    cur = p
    status = 0
    for i in range(1, count + 1):
        d = fa.syzygy_formula(cur, side)
        om = mo.syzygy(fa.module_M(cur, side))
        if d.kind == "decomposable":
            v = mo.is_direct_sum_of(om, fa.realize_parts(d), cfg.budget)
        else:
            v = mo.is_isomorphic(om, fa.realize(d), cfg.budget)
        cert = {True: "certified", False: "MISMATCH", None: "undecided"}[v.value]
        if v.value is not True:
            status = 1
        step = {"step": i, "from": fa.module_label(cur, side), "dim": om.dim,
                "case": fa.syzygy_case(cur, side), "formula": d.label, "kind": d.kind, "certificate": cert}
        steps.append(step)
        if d.kind not in ("point", "named_point"):
            step["terminal"] = True
            break
        nxt = d.point
        if nxt in seen:
            step["period"] = i - seen[nxt]
            steps.append({"cycle": True, "period": i - seen[nxt]})
            break
        seen[nxt] = i
        cur = nxt
    doc = {"schema": 1, "start": fa.module_label(p, side), "side": side, "steps": steps}
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n", status
    lines = [f"Omega iterates of {doc['start']} over {cfg.field}"]
    for s in steps:
        if "cycle" in s:
            lines.append(f"  returns to an earlier point: period {s['period']}")
            continue
        tail = " (decomposable, walk ends)" if s.get("terminal") else ""
        lines.append(f"  {s['step']}: Omega {s['from']} = {s['formula']} [case {s['case']}, "
                     f"dim {s['dim']}, {s['certificate']}]{tail}")
    return "\n".join(lines) + "\n", status


def cmd_dual(cfg: RunConfig, p: fa.ProjPoint, side: str):
    d = fa.dual_formula(p, side)
    D = mo.dual(fa.module_M(p, side))
    if d.kind == "decomposable":
        v = mo.is_direct_sum_of(D, fa.realize_parts(d), cfg.budget)
    else:
        v = mo.is_isomorphic(D, fa.realize(d), cfg.budget)
    cert = {True: "certified", False: "MISMATCH", None: "undecided"}[v.value]
    doc = {"schema": 1, "module": fa.module_label(p, side), "side": side, "dual_dim": D.dim,
           "formula": d.label, "branch": fa.dual_branch(p, side), "certificate": cert}
    status = 0 if v.value else 1
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n", status
    return (f"dual of {doc['module']}: dim {D.dim}, predicted {d.label} "
            f"[branch {doc['branch']}, {cert}]\n"), status


def cmd_quiver(cfg: RunConfig, seeds: list, side: str):
    if not seeds:
        raise UsageError("at least one seed is needed (--seeds or --point)")
    g = quiver_build(seeds, side, cfg.depth, field=cfg.field)
    status = 0 if all(e.certified for e in g.edges) else 1
    if cfg.fmt == "json":
        return g.to_json(), status
    if cfg.fmt == "dot":
        return g.to_dot(), status
    lines = [f"Omega-mho quiver ({side}) over {cfg.field}, depth {cfg.depth}"]
    for c in g.components:
        marks = " -> ".join(f"{k} [{g.nodes[k].category}]" for k in c.nodes)
        lines.append(f"  {c.shape}: {marks}")
    for k, lab in sorted(g.terminals.items()):
        lines.append(f"  Omega {k} = {lab} (decomposable)")
    return "\n".join(lines) + "\n", status


def cmd_appendix(cfg: RunConfig, p: fa.ProjPoint):
    res = fa.appendix_case(fa.module_M(p))
    doc = {"schema": 1, "module": fa.module_label(p), **res.to_dict(),
           "expected_from_coordinates": fa.appendix_case_expected(p)}
    status = 0 if res.case == doc["expected_from_coordinates"] else 1
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2) + "\n", status
    dims = ", ".join(f"dim {k}M = {v}" for k, v in res.dims.items())
    return f"{doc['module']}: case ({res.case}); {dims}\n", status


def cmd_verify(cfg: RunConfig, only=None):
    known = {c[0] for c in CHECKS}
    if only and not set(only) <= known:
        raise UsageError(f"unknown check id(s): {sorted(set(only) - known)}")
    rep = run_verify(cfg.field, cfg.depth, cfg.budget, only)
    text = rep.to_json() if cfg.fmt == "json" else rep.to_text()
    return text, 0 if rep.ok else 1


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.fmt == "dot" and args.command != "quiver":
            raise UsageError("--format dot is only available for quiver")
        if args.command == "classify":
            text, status = cmd_classify(cfg, _need_point(cfg, args), args.side)
        elif args.command == "syzygy":
            text, status = cmd_syzygy(cfg, _need_point(cfg, args), args.side, args.count)
        elif args.command == "dual":
            text, status = cmd_dual(cfg, _need_point(cfg, args), args.side)
        elif args.command == "quiver":
            if args.seeds:
                seeds = [fa.parse_point(cfg.field, s) for s in args.seeds.split(";") if s.strip()]
            else:
                seeds = [_need_point(cfg, args)]
            text, status = cmd_quiver(cfg, seeds, args.side)
        elif args.command == "appendix-case":
            text, status = cmd_appendix(cfg, _need_point(cfg, args))
        else:
            text, status = cmd_verify(cfg, args.check)
    except (UsageError, FieldError, fa.FamilyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
