"""The acceptance suite: twelve independent checks for one (field, q) configuration."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Callable, Optional

from . import family as fa
from . import modules as mo
from .algebra import algebra_lambda, algebra_opposite, radical_series, socle
from .exact import Field, Matrix, column_space, in_span, mul_order
from .quiver import quiver_build

PASS, FAIL, UNDECIDED, SKIP = "pass", "fail", "undecided", "skip"


class CheckFailure(AssertionError):
    pass


def expect(cond, msg):
    if not cond:
        raise CheckFailure(msg)


@dataclass
class CheckRecord:
    check_id: int
    name: str
    claim: str
    status: str
    details: str = ""
    repro: str = ""

    def to_dict(self):
        d = {"id": self.check_id, "name": self.name, "claim": self.claim, "status": self.status,
             "details": self.details}
        if self.repro:
            d["repro"] = self.repro
        return d


@dataclass
class VerifyReport:
    field: str
    q: str
    depth: int
    records: list = dc_field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {PASS: 0, FAIL: 0, UNDECIDED: 0, SKIP: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary[FAIL] == 0 and self.summary[UNDECIDED] == 0

    def to_dict(self):
        return {"schema": 1, "field": self.field, "q": self.q, "depth": self.depth,
                "records": [r.to_dict() for r in self.records], "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"field {self.field}, q = {self.q}, depth {self.depth}"]
        for r in self.records:
            lines.append(f"[{r.status.upper():9}] {r.check_id:2d} {r.name}: {r.details}")
            if r.repro:
                lines.append(f"            reproduce: {r.repro}")
        s = self.summary
        lines.append(f"{s[PASS]} passed, {s[FAIL]} failed, {s[UNDECIDED]} undecided, {s[SKIP]} skipped")
        return "\n".join(lines) + "\n"


@dataclass
class Context:
    field: Field
    depth: int = 6
    budget: int = mo.DEFAULT_BUDGET
    seed: int = 0

    @property
    def grid(self):
        return fa.default_grid(self.field)

    @property
    def affine_grid(self):
        return fa.default_grid(self.field, affine_only=True)

    def iso(self, M, N):
        v = mo.is_isomorphic(M, N, self.budget)
        if v.value is None:
            raise _Undecided(v.note)
        return v


class _Undecided(Exception):
    pass


# ---------------------------------------------------------------------------
# checks


def check_algebra(ctx: Context) -> str:
    f = ctx.field
    A = algebra_lambda(f)
    e = {k: A.basis_vector(A.index(k)) for k in A.labels}
    q = f.q

    def mul(u, v):
        return A.mul(u, v)

    def comb(*pairs):
        v = [f.zero] * 6
        for c, w in pairs:
            v = [a + c * b for a, b in zip(v, w)]
        return v

    x, y, z, yx, zx = e["x"], e["y"], e["z"], e["yx"], e["zx"]
    rels = {
        "x^2": mul(x, x), "y^2": mul(y, y), "z^2": mul(z, z), "yz": mul(y, z),
        "xy+q yx": comb((1, mul(x, y)), (q, mul(y, x))),
        "xz-zx": comb((1, mul(x, z)), (-1, mul(z, x))),
        "zy-zx": comb((1, mul(z, y)), (-1, mul(z, x))),
    }
    for name, v in rels.items():
        expect(all(c == 0 for c in v), f"relation {name} does not vanish")
    for i, j, k in product(range(6), repeat=3):
        b = [A.basis_vector(t) for t in (i, j, k)]
        expect(mul(mul(b[0], b[1]), b[2]) == mul(b[0], mul(b[1], b[2])), f"associativity at {(i, j, k)}")
    series = radical_series(A)
    expect(series.dims == [6, 5, 2, 0], f"radical series {series.dims}")
    soc = socle(A, "left")
    expect(soc.ncols == 2, "socle is not 2-dimensional")
    expect(column_space(soc.hstack(series.chain[2])).ncols == 2, "socle differs from rad^2")
    return "7 relations vanish, 216 triples associative, series 6,5,2,0, soc = rad^2 of dim 2"


def check_formulae(ctx: Context) -> str:
    f = ctx.field
    A = algebra_lambda(f)
    q = f.q
    n = 0

    def lin(a, b, c):
        return [f.zero, f(a), f(b), f(c), f.zero, f.zero]

    for p in ctx.grid:
        a, b, c = p.coords
        if a + b != 0:
            w = A.mul(lin(a, q * b, -(a * c) / (a + b)), lin(a, b, c))
            expect(not any(w), f"product (1) nonzero at {p}")
            n += 1
        w = A.mul(lin(0, 0, 1), lin(a, -a, c))
        expect(not any(w), f"product (2) nonzero at {p}")
        if a != 0:
            w = A.mul(lin(a, b, c), lin(a, b / q, -((a + b / q) / a) * c))
            expect(not any(w), f"product (3) nonzero at {p}")
            n += 1
        w = A.mul(lin(0, b, c), lin(0, 0, 1))
        expect(not any(w), f"product (4) nonzero at {p}")
        n += 2
    return f"{n} products vanish on {len(ctx.grid)} grid triples"


def _valid_triples(ctx: Context, cond: Callable, count: int = 100):
    f = ctx.field
    if f.is_prime:
        els = f.elements()
        return [t for t in product(els, repeat=3) if cond(*t)], "all"
    rng = random.Random(ctx.seed)
    out = []
    while len(out) < count:
        t = tuple(f(rng.randint(-9, 9)) / f(rng.randint(1, 5)) for _ in range(3))
        if cond(*t):
            out.append(t)
    return out, "sampled"


def check_round_trips(ctx: Context) -> str:
    f = ctx.field
    qinv = f.one / f.q
    dom, how1 = _valid_triples(ctx, lambda a, b, c: a != 0 and a + b != 0)
    for t in dom:
        back = fa.omega_prime_triple(f, *fa.omega_triple(f, *t))
        expect(back == tuple(t), f"omega' omega {t} = {back}")
    cod, how2 = _valid_triples(ctx, lambda a, b, c: a != 0 and a + qinv * b != 0)
    for t in cod:
        back = fa.omega_triple(f, *fa.omega_prime_triple(f, *t))
        expect(back == tuple(t), f"omega omega' {t} = {back}")
    return f"{len(dom)} ({how1}) and {len(cod)} ({how2}) triples round-trip"


def check_syzygy_tables(ctx: Context) -> str:
    hit = {"left": set(), "right": set()}
    for side in fa.SIDES:
        for p in ctx.grid:
            d = fa.syzygy_formula(p, side)
            om = mo.syzygy(fa.module_M(p, side))
            if d.kind == "decomposable":
                v = mo.is_direct_sum_of(om, fa.realize_parts(d), ctx.budget)
            else:
                v = ctx.iso(om, fa.realize(d))
            if v.value is None:
                raise _Undecided(v.note)
            expect(v.value, f"{side} Omega of {fa.module_label(p, side)} is not {d.label}")
            w = v.witness
            expect(w.is_intertwining() and w.is_iso(), "iso witness is not an invertible intertwiner")
            hit[side].add(fa.syzygy_case(p, side))
    expect(hit["left"] == {1, 2, 3, 4, 5}, f"left cases hit: {sorted(hit['left'])}")
    expect(hit["right"] == {1, 2, 3, 4}, f"right cases hit: {sorted(hit['right'])}")
    return f"{2 * len(ctx.grid)} syzygies certified; left cases 1-5, right cases 1-4 all hit"


def _classification(ctx: Context, side: str) -> str:
    problems = []
    for p in ctx.grid:
        cf = fa.classify_closed_form(p, side)
        cc = fa.classify_computational(p, side, ctx.depth)
        bad = cf.mismatches(cc)
        if bad:
            problems.append(f"{fa.module_label(p, side)}: {', '.join(bad)}")
        # a closed-form "no" must be visible within the bounded depth
        for key in ("semi_gp", "inf_torsionfree"):
            w = cc.witnesses[key]
            if not getattr(cf, key):
                expect(w.witness["failing_index"] is not None, f"{key} failure not detected at {p}")
    expect(not problems, "; ".join(problems))
    return f"{len(ctx.grid)} points agree on all eight flags (depth {ctx.depth})"


def check_left_classification(ctx: Context) -> str:
    return _classification(ctx, "left")


def check_right_classification(ctx: Context) -> str:
    msg = _classification(ctx, "right")
    f = ctx.field
    special = [p for p in ctx.affine_grid if p.b == -1 and p.c != 0]
    if not mul_order(f).finite:
        for p in special:
            rep = fa.classify_computational(p, "right", ctx.depth)
            expect(rep.semi_gp and not rep.inf_torsionfree and rep.pivotal_semi_gp,
                   f"special branch fails at {p}")
        msg += f"; special branch M'(1,-1,c), c != 0 checked at {len(special)} points"
    return msg


def check_opaque_cosyzygies(ctx: Context) -> str:
    f = ctx.field
    out = []
    for t in ((0, 1, 0), (0, 0, 1)):
        p = fa.point_make(f, *t)
        M = fa.module_M(p)
        approx = mo.left_approximation_minimal(M)
        tt = approx.target.dim // 6
        expect(tt >= 2, f"t = {tt} < 2 for {p}")
        expect(approx.is_injective(), f"approximation of {p} is not injective")
        expect(tt == mo.hom_top_dim(M), f"t = {tt} but Hom(M, Lambda) needs {mo.hom_top_dim(M)} generators")
        Y = mo.cosyzygy(M)
        expect(Y.dim == 6 * tt - 3, f"dim mho = {Y.dim}, expected {6 * tt - 3}")
        expect(mo.loewy_length(Y) == 3, "mho has Loewy length != 3")
        expect(not mo.is_torsionless(Y), "mho is torsionless")
        out.append(f"{fa.module_label(p)}: t={tt}, dim mho={Y.dim}")
    return "; ".join(out)


def check_duality(ctx: Context) -> str:
    f = ctx.field
    q = f.q
    notes = []
    # left duals
    for p in ctx.affine_grid:
        d = fa.dual_formula(p, "left")
        expect(ctx.iso(mo.dual(fa.module_M(p)), fa.realize(d)).value, f"dual of {fa.module_label(p)} is not {d}")
    # right duals, all branches
    branches = set()
    for p in ctx.affine_grid:
        d = fa.dual_formula(p, "right")
        D = mo.dual(fa.module_M(p, "right"))
        if d.kind == "decomposable":
            v = mo.is_direct_sum_of(D, fa.realize_parts(d), ctx.budget)
        else:
            v = ctx.iso(D, fa.realize(d))
        if v.value is None:
            raise _Undecided(v.note)
        expect(v.value, f"dual of {fa.module_label(p, 'right')} is not {d}")
        br = fa.dual_branch(p, "right")
        branches.add(br)
        if br == 3:
            expect(D.dim == 4, f"dual of M'(1,-1,0) has dim {D.dim}")
    need = {1, 2, 3} if q == 1 else {1, 2, 3, 4, 5}
    expect(branches == need, f"right dual branches hit: {sorted(branches)}")
    notes.append(f"duals certified, right branches {sorted(branches)}")
    # transposes
    n = 0
    for p in ctx.affine_grid:
        if p.b == -1 and p.c == 0:
            continue
        expect(ctx.iso(mo.transpose(fa.module_M(p)), fa.module_M(p, "right")).value, f"Tr M{p} is not M'{p}")
        expect(ctx.iso(mo.transpose(fa.module_M(p, "right")), fa.module_M(p)).value, f"Tr M'{p} is not M{p}")
        n += 1
    notes.append(f"{n} transposes")
    # semi-GP pairs with non-torsionless modules, for q = 2 over Q
    if not f.is_prime and q == 2:
        target = fa.point_make(f, 1, f.parse("-1/2"), 0)
        T = fa.module_M(target, "right")
        expect(mo.semi_gp_up_to(T, 8).value, "M'(1,-1/2,0) fails semi-GP to depth 8")
        for c in (0, 1, -1):
            M = fa.module_M(fa.point_make(f, 1, -2, c))
            expect(mo.semi_gp_up_to(M, 8).value, f"M(1,-2,{c}) fails semi-GP to depth 8")
            expect(not mo.is_torsionless(M), f"M(1,-2,{c}) is torsionless")
            expect(ctx.iso(mo.dual(M), T).value, f"M(1,-2,{c})* is not M'(1,-1/2,0)")
        notes.append("M(1,-2,c) and M'(1,-1/2,0) semi-GP to depth 8")
    # duals of right modules that are semi-GP but not GP
    fam = []
    for p in ctx.affine_grid:
        rep = fa.classify_closed_form(p, "right")
        if rep.semi_gp and not rep.gorenstein_projective:
            fam.append(p)
            D = mo.dual(fa.module_M(p, "right"))
            expect(not mo.is_extensionless(D), f"dual of M'{p} is extensionless")
            expect(not mo.semi_gp_up_to(D, ctx.depth).value, f"dual of M'{p} passes semi-GP")
    notes.append(f"{len(fam)} semi-GP non-GP right modules have non-semi-GP duals")
    return "; ".join(notes)


def _chain_points(g, comp):
    return [g.nodes[k].point for k in comp.nodes]


def check_quiver(ctx: Context) -> str:
    f = ctx.field
    q = f.q
    order = mul_order(f)
    notes = []
    for side in fa.SIDES:
        g = quiver_build(ctx.affine_grid, side, ctx.depth)
        expect(all(e.certified for e in g.edges), f"uncertified {side} edge")
        for c in g.components:
            if side == "left" and c.shape.startswith("A(") and any(
                    g.nodes[k].point is not None and g.nodes[k].point.b == -q for k in c.nodes):
                expect(order.finite and c.shape == f"A({order.n})", f"left component {c.shape} with o(q) = {order}")
        notes.append(f"{side}: {len(g.nodes)} nodes, {len(g.edges)} certified edges")
    # period of M(1,0,c)
    g = quiver_build([fa.point_make(f, 1, 0, c) for c in (0, 1)], "left", ctx.depth)
    expect(g.component_of("M(1:0:0)").shape == "Cycle(1)", "M(1,0,0) is not Omega-periodic of period 1")
    want = "Cycle(1)" if f.characteristic == 2 else "Cycle(2)"
    expect(g.component_of("M(1:0:1)").shape == want, f"M(1,0,1) is not in a {want}")
    notes.append(f"M(1,0,1) in {want}")
    if f.is_prime and f.p == 5 and q == 2:
        for c in f.elements():
            p = fa.point_make(f, 1, -q, c)
            g = quiver_build([p], "left", ctx.depth)
            comp = g.component_of(fa.module_label(p))
            expect(comp.shape == "A(4)", f"component of {p} is {comp.shape}")
            expect(g.nodes[comp.nodes[0]].category == "black_lozenge", "Omega end is not a lozenge")
            expect(g.nodes[comp.nodes[-1]].category == "black_square", "mho end is not a square")
            expect(_chain_points(g, comp)[0].b == -1, "Omega end is not on the line b = -1")
        notes.append("A(4) through every (1:-2:c)")
    if not f.is_prime and q == 2:
        for s in (1, 3):
            g = quiver_build([fa.point_make(f, 1, -2, s)], "left", 8)
            comp = g.component_of(f"M(1:-2:{s})")
            expect(comp.shape == "NegNatChain" and len(comp.nodes) == 9, f"c-chain shape {comp.shape}")
            expect(g.nodes[comp.nodes[-1]].category == "black_square", "c-chain end is not a square")
            pts = list(reversed(_chain_points(g, comp)))
            expect([p.c for p in pts] == fa.chain_coefficients(f, s, "c_chain", 9), "c-chain coefficients")
            expect([p.b for p in pts] == [-q ** (t + 1) for t in range(9)], "c-chain b values")
            g = quiver_build([fa.point_make(f, 1, -1, s)], "left", 8)
            comp = g.component_of(f"M(1:-1:{s})")
            expect(comp.shape == "NatChain" and len(comp.nodes) == 9, f"d-chain shape {comp.shape}")
            expect(g.nodes[comp.nodes[0]].category == "black_lozenge", "d-chain end is not a lozenge")
            pts = _chain_points(g, comp)
            expect([p.c for p in pts] == fa.chain_coefficients(f, s, "d_chain", 9), "d-chain coefficients")
        notes.append("depth-8 chains match the recurrences")
    if q == 1:
        for c in (0, 1, 3):
            p = fa.point_make(f, 1, -1, c)
            g = quiver_build([p], "left", ctx.depth)
            expect(g.component_of(fa.module_label(p)).shape == "Singleton", f"{p} is not a singleton")
        notes.append("(1:-1:c) singletons")
    return "; ".join(notes)


def check_ideal_scan(ctx: Context) -> str:
    f = ctx.field
    if not (f.is_prime and ((f.p == 3 and f.q == 2) or (f.p == 2 and f.q == 1))):
        return None
    A = algebra_lambda(f)
    R = mo.regular(A)
    soc = socle(A, "left")
    Lxy = mo.submodule(R, [A.element(x=1, y=-1)])[0]
    Lz = mo.submodule(R, [A.element(z=1)])[0]
    two = mo.enumerate_submodules(R, 2, ctx.budget)
    n2 = 0
    for S in two:
        if column_space(S.hstack(soc)).ncols == 2:
            continue
        L = mo.restrict(R, S)
        ok = ctx.iso(L, Lxy).value or ctx.iso(L, Lz).value
        expect(ok, "2-dim left ideal not iso to L(x-y) or Lz")
        n2 += 1
    three = mo.enumerate_submodules(R, 3, ctx.budget)
    for S in three:
        expect(in_span(S, soc), "3-dim left ideal misses the socle")
    pts = _all_points(f)
    us = {_canon(fa._ideal(p, "left")[1].matrix) for p in pts}
    found = {_canon(S) for S in three}
    expect(us == found and len(us) == len(pts), "3-dim left ideals are not exactly the U(a,b,c)")
    # right ideals generated by a linear form
    Aop = algebra_opposite(A)
    Rop = mo.regular(Aop)
    for p in pts:
        S, _ = mo.submodule(Rop, [fa._linear_vector(f, p)])
        a, b, c = p.coords
        want = 3 if (a != 0 or (b != 0 and c != 0)) else 2
        expect(S.dim == want, f"right ideal of {p} has dim {S.dim}")
    three_r = mo.enumerate_submodules(Rop, 3, ctx.budget)
    found_r = {_canon(S) for S in three_r}
    us_r = {_canon(fa._ideal(p, "right")[1].matrix) for p in pts}
    expect(found_r == us_r, "3-dim right ideals are not exactly the U'(a,b,c)")
    return (f"{len(two)} 2-dim ({n2} off the socle), {len(three)} 3-dim left ideals; "
            f"{len(pts)} points; {len(three_r)} 3-dim right ideals")


def _all_points(f: Field):
    out = []
    for a, b, c in product(f.elements(), repeat=3):
        if (a, b, c) != (0, 0, 0):
            p = fa.point_make(f, a, b, c)
            if p.coords == (a, b, c):
                out.append(p)
    return out


def _canon(basis: Matrix):
    red, _, rank = basis.T.rref()
    return tuple(red.raw_rows[:rank])


def check_local_iterates(ctx: Context) -> str:
    n_semi = n_inf = 0
    for p in ctx.grid:
        M = fa.module_M(p)
        semi = mo.semi_gp_up_to(M, ctx.depth)
        if semi.value:
            n_semi += 1
            for X in semi.witness["iterates"]:
                expect(X.dim == 3 and mo.is_local(X), f"Omega iterate of {p} is not 3-dim local")
        inf = mo.inf_tf_up_to(M, ctx.depth)
        if inf.value:
            n_inf += 1
            for X in inf.witness["iterates"]:
                expect(X.dim == 3 and mo.is_local(X), f"mho iterate of {p} is not 3-dim local")
    return f"{n_semi} semi-GP and {n_inf} inf-TF survivors have 3-dim local iterates"


def check_appendix(ctx: Context) -> str:
    seen = set()
    for p in ctx.grid:
        got = fa.appendix_case(fa.module_M(p)).case
        want = fa.appendix_case_expected(p)
        expect(got == want, f"{p}: case {got}, table row {want}")
        seen.add(got)
    expect(seen == set(range(1, 8)), f"cases exercised: {sorted(seen)}")
    return "cases 1-7 all exercised and matched"


CHECKS = [
    (1, "algebra integrity", "relations, associativity, socle and radical cube", check_algebra),
    (2, "product formulae", "four products of linear forms vanish", check_formulae),
    (3, "omega round trips", "omega and omega' are mutually inverse", check_round_trips),
    (4, "syzygy tables", "Omega of M and M' follows the case tables", check_syzygy_tables),
    (5, "left classification", "closed-form flags for left modules", check_left_classification),
    (6, "right classification", "closed-form flags for right modules", check_right_classification),
    (7, "opaque cosyzygies", "mho of M(0,1,0) and M(0,0,1) has dim 6t-3 and Loewy length 3", check_opaque_cosyzygies),
    (8, "duality", "duals, transposes, semi-GP pairs", check_duality),
    (9, "quiver shapes", "components, endpoint markers, chain coefficients", check_quiver),
    (10, "ideal scan", "exhaustive left and right ideals over tiny fields", check_ideal_scan),
    (11, "local iterates", "iterates of survivors stay 3-dim local", check_local_iterates),
    (12, "appendix cases", "xM, yM, zM dispatch matches coordinates", check_appendix),
]


def repro_command(f: Field, depth: int, check_id: int) -> str:
    return f"python3 -m lambdaq --field {f.descriptor} --q {f.fmt(f.q)} --depth {depth} verify --check {check_id}"


def run_verify(f: Field, depth: int = 6, budget: int = mo.DEFAULT_BUDGET, only: Optional[list] = None,
               seed: int = 0) -> VerifyReport:
    ctx = Context(f, depth, budget, seed)
    rep = VerifyReport(f.descriptor, f.fmt(f.q), depth)
    for cid, name, claim, fn in CHECKS:
        if only and cid not in only:
            continue
        try:
            details = fn(ctx)
            status = SKIP if details is None else PASS
            if details is None:
                details = "not applicable to this field"
        except CheckFailure as e:
            status, details = FAIL, str(e)
        except (_Undecided, mo.Undecided, mo.BudgetExceeded) as e:
            status, details = UNDECIDED, str(e)
        repro = repro_command(f, depth, cid) if status in (FAIL, UNDECIDED) else ""
        rep.records.append(CheckRecord(cid, name, claim, status, details, repro))
    return rep
