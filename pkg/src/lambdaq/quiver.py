"""The Omega-mho quiver around a set of seed points.

An edge N -> M records an exact sequence 0 -> N -> Lambda^t -> M -> 0 with
N = Omega M and M = mho N.  From a node X one can step back along Omega when X
is extensionless, and forward along mho when X is torsionless.  Cosyzygies
that leave the 3-dimensional family become opaque nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import family as fa
from . import modules as mo
from .exact import Field


@dataclass
class Node:
    key: str
    kind: str  # "point" or "opaque"
    torsionless: bool
    extensionless: bool
    dim: int
    loewy_length: int
    point: Optional[fa.ProjPoint] = None
    module: Optional[mo.Module] = dc_field(default=None, repr=False)

    @property
    def category(self) -> str:
        return fa.category(self.torsionless, self.extensionless)

    def to_dict(self) -> dict:
        d = {"id": self.key, "kind": self.kind, "category": self.category, "dim": self.dim,
             "loewy_length": self.loewy_length, "torsionless": self.torsionless,
             "extensionless": self.extensionless}
        if self.point is not None:
            d["point"] = [self.point.field.fmt(v) for v in self.point.coords]
        return d


@dataclass
class Edge:
    source: str
    target: str
    t: int  # rank of the free module in the middle
    certified: Optional[bool]  # source is iso to Omega(target), checked by witness

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target, "t": self.t, "certified": self.certified}


@dataclass
class Component:
    shape: str
    nodes: list  # keys, from the Omega end to the mho end (cycles start at the smallest key)

    def to_dict(self) -> dict:
        return {"shape": self.shape, "nodes": self.nodes}


@dataclass
class QuiverGraph:
    field: Field
    side: str
    depth: int
    nodes: dict = dc_field(default_factory=dict)
    edges: list = dc_field(default_factory=list)
    components: list = dc_field(default_factory=list)
    terminals: dict = dc_field(default_factory=dict)  # node key -> decomposable Omega, if any

    def shapes(self) -> list[str]:
        return [c.shape for c in self.components]

    def component_of(self, key: str) -> Optional[Component]:
        for c in self.components:
            if key in c.nodes:
                return c
        return None

    def to_json(self) -> str:
        doc = {
            "schema": 1,
            "field": self.field.descriptor,
            "q": self.field.fmt(self.field.q),
            "side": self.side,
            "depth": self.depth,
            "nodes": [self.nodes[k].to_dict() for k in sorted(self.nodes)],
            "edges": [e.to_dict() for e in sorted(self.edges, key=lambda e: (e.source, e.target))],
            "components": [c.to_dict() for c in self.components],
            "terminals": {k: self.terminals[k] for k in sorted(self.terminals)},
        }
        return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n"

    def to_dot(self) -> str:
        shape = {"bullet": "shape=point", "black_square": "shape=square, style=filled, fillcolor=black",
                 "black_lozenge": "shape=diamond, style=filled, fillcolor=black", "circle": "shape=circle"}
        lines = ["digraph omega_mho {", "  rankdir=LR;"]
        for k in sorted(self.nodes):
            n = self.nodes[k]
            lines.append(f'  "{k}" [{shape[n.category]}, xlabel="{k}"];')
        for e in sorted(self.edges, key=lambda e: (e.source, e.target)):
            lines.append(f'  "{e.source}" -> "{e.target}";')
        for i, c in enumerate(self.components):
            lines.append(f"  // component {i}: {c.shape}: " + ", ".join(c.nodes))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _point_node(p: fa.ProjPoint, side: str) -> Node:
    rep = fa.classify_closed_form(p, side)
    return Node(fa.module_label(p, side), "point", rep.torsionless, rep.extensionless, 3, 2, p)


def _opaque_node(src: Node, side: str) -> Node:
    M = fa.module_M(src.point, side)
    Y = mo.cosyzygy(M)
    return Node(f"mho {src.key}", "opaque", bool(mo.is_torsionless(Y)), bool(mo.is_extensionless(Y)),
                Y.dim, mo.loewy_length(Y), None, Y)


def _node_module(n: Node, side: str) -> mo.Module:
    return n.module if n.kind == "opaque" else fa.module_M(n.point, side)


def _mho_point(p: fa.ProjPoint, side: str):
    return fa.omega_prime_point(p) if side == "left" else fa.omega_point(p)


def _omega_point(p: fa.ProjPoint, side: str):
    return fa.omega_point(p) if side == "left" else fa.omega_prime_point(p)


class _Builder:
    def __init__(self, f: Field, side: str, depth: int, certify: bool):
        self.g = QuiverGraph(f, side, depth)
        self.side = side
        self.certify = certify
        self._edges = set()

    def node(self, n: Node) -> Node:
        return self.g.nodes.setdefault(n.key, n)

    def edge(self, src: Node, dst: Node):
        if (src.key, dst.key) in self._edges:
            return
        self._edges.add((src.key, dst.key))
        N, M = _node_module(src, self.side), _node_module(dst, self.side)
        data = mo.syzygy_data(M)
        if N.dim + M.dim != 6 * data.t:
            raise AssertionError(f"edge {src.key} -> {dst.key} has wrong dimensions")
        cert = None
        if self.certify:
            cert = mo.is_isomorphic(N, data.omega).value
        self.g.edges.append(Edge(src.key, dst.key, data.t, cert))

    def forward(self, n: Node) -> Optional[Node]:
        """mho step: the successor of a torsionless node."""
        if n.kind != "point" or not n.torsionless:
            return None
        nxt = _mho_point(n.point, self.side)
        if nxt is not None:
            cand = _point_node(nxt, self.side)
            if cand.extensionless:
                return self.node(cand)
        return self.node(_opaque_node(n, self.side))

    def backward(self, n: Node) -> Optional[Node]:
        """Omega step: the predecessor of an extensionless node."""
        if n.kind != "point":
            return None
        d = fa.syzygy_formula(n.point, self.side)
        if d.kind == "decomposable":
            self.g.terminals[n.key] = d.label
        if not n.extensionless:
            return None
        return self.node(_point_node(d.point, self.side))

    def walk(self, seed: fa.ProjPoint):
        depth = self.g.depth
        start = self.node(_point_node(seed, self.side))
        cur = start
        for _ in range(depth):
            nxt = self.forward(cur)
            if nxt is None:
                break
            self.edge(cur, nxt)
            if nxt.key == start.key:
                return
            cur = nxt
        cur = start
        for _ in range(depth):
            prv = self.backward(cur)
            if prv is None:
                break
            self.edge(prv, cur)
            if prv.key == start.key:
                return
            cur = prv

    def finish(self) -> QuiverGraph:
        g = self.g
        succ, pred = {}, {}
        for e in g.edges:
            succ.setdefault(e.source, []).append(e.target)
            pred.setdefault(e.target, []).append(e.source)
        seen = set()
        comps = []
        for k in sorted(g.nodes):
            if k in seen:
                continue
            # connected component by undirected search
            stack, members = [k], set()
            while stack:
                u = stack.pop()
                if u in members:
                    continue
                members.add(u)
                stack.extend(succ.get(u, []))
                stack.extend(pred.get(u, []))
            seen |= members
            comps.append(self._shape(members, succ, pred))
        comps.sort(key=lambda c: (c.nodes[0], c.shape))
        g.components = comps
        return g

    def _shape(self, members, succ, pred) -> Component:
        g = self.g
        for u in members:
            if len(succ.get(u, [])) > 1 or len(pred.get(u, [])) > 1:
                raise AssertionError(f"branching at {u}: the quiver should be a union of paths and cycles")
        starts = sorted(u for u in members if not pred.get(u))
        if not starts:
            first = min(members)
            order = [first]
            while succ[order[-1]][0] != first:
                order.append(succ[order[-1]][0])
            return Component(f"Cycle({len(order)})", order)
        order = [starts[0]]
        while succ.get(order[-1]):
            order.append(succ[order[-1]][0])
        head, tail = g.nodes[order[0]], g.nodes[order[-1]]
        # an end is terminal when the quiver has no further arrow there
        omega_end = head.kind == "opaque" or not head.extensionless
        mho_end = not tail.torsionless
        n = len(order)
        if omega_end and mho_end:
            shape = "Singleton" if n == 1 else f"A({n})"
        elif omega_end:
            shape = "NatChain"
        elif mho_end:
            shape = "NegNatChain"
        else:
            shape = "ZTruncated"
        return Component(shape, order)


def quiver_build(seeds, side: str = "left", depth: int = 6, certify: bool = True,
                 field: Optional[Field] = None) -> QuiverGraph:
    """Walk mho and Omega up to ``depth`` steps from every seed and label the components."""
    fa._check_side(side)
    if depth < 1:
        raise fa.FamilyError("depth must be >= 1")
    seeds = list(seeds)
    if not seeds:
        raise fa.FamilyError("at least one seed is needed")
    f = field or seeds[0].field
    b = _Builder(f, side, depth, certify)
    for s in seeds:
        b.walk(s)
    return b.finish()
