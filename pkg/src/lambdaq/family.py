"""The family of 3-dimensional local modules M(a:b:c) over Lambda(q).

Points of the projective plane, the modules U, M and their right-side
analogues, the transformations omega and omega', closed-form and computed
classification, the syzygy and duality tables, chain coefficients and the
appendix case dispatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional

from .algebra import algebra_lambda, algebra_opposite
from .exact import Field, Matrix, column_space, mul_order
from . import modules as mo

SIDES = ("left", "right")
X, Y, Z, YX, ZX = 1, 2, 3, 4, 5


class FamilyError(ValueError):
    pass


def _check_side(side: str):
    if side not in SIDES:
        raise FamilyError(f"side must be 'left' or 'right', got {side!r}")


def algebra_for(f: Field, side: str = "left"):
    _check_side(side)
    A = algebra_lambda(f)
    return A if side == "left" else algebra_opposite(A)


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class ProjPoint:
    """Normalized homogeneous coordinates: the first nonzero coordinate is 1."""

    field: Field
    a: object
    b: object
    c: object

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def affine(self) -> bool:
        return self.a != 0

    def __str__(self):
        f = self.field
        return "(" + ":".join(f.fmt(v) for v in self.coords) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


def point_make(f: Field, a, b, c) -> ProjPoint:
    a, b, c = f(a), f(b), f(c)
    lead = next((v for v in (a, b, c) if v != 0), None)
    if lead is None:
        raise FamilyError("(0,0,0) is not a point of the projective plane")
    inv = f.one / lead
    return ProjPoint(f, a * inv, b * inv, c * inv)


def parse_point(f: Field, text: str) -> ProjPoint:
    parts = [s for s in text.replace(":", ",").split(",")]
    if len(parts) != 3:
        raise FamilyError(f"a point needs three coordinates, got {text!r}")
    return point_make(f, *(f.parse(s) for s in parts))


def omega_triple(f: Field, a, b, c) -> Optional[tuple]:
    """omega(a,b,c) = (a, qb, -a c/(a+b)); None when a+b = 0."""
    a, b, c = f(a), f(b), f(c)
    if a + b == 0:
        return None
    return (a, f.q * b, -(a * c) / (a + b))


def omega_prime_triple(f: Field, a, b, c) -> Optional[tuple]:
    """omega'(a,b,c) = (a, b/q, -((a + b/q)/a) c); None when a = 0."""
    a, b, c = f(a), f(b), f(c)
    if a == 0:
        return None
    bq = b / f.q
    return (a, bq, -((a + bq) / a) * c)


def omega_point(p: ProjPoint) -> Optional[ProjPoint]:
    t = omega_triple(p.field, *p.coords)
    return None if t is None else point_make(p.field, *t)


def omega_prime_point(p: ProjPoint) -> Optional[ProjPoint]:
    t = omega_prime_triple(p.field, *p.coords)
    return None if t is None else point_make(p.field, *t)


def default_grid(f: Field, affine_only: bool = False) -> list[ProjPoint]:
    """b in {0, +-1, +-q, +-q^2, +-1/q, -q^3}, c in {0, 1, -1, q}, plus four points with a = 0."""
    q = f.q
    bs = [f(0), f(1), f(-1), q, -q, q * q, -q * q, f.one / q, -f.one / q, -q * q * q]
    cs = [f(0), f(1), f(-1), q]
    seen, out = set(), []

    def add(p):
        key = (p.a, p.b, p.c)
        if key not in seen:
            seen.add(key)
            out.append(p)

    for b in bs:
        for c in cs:
            add(point_make(f, 1, b, c))
    if not affine_only:
        for t in ((0, 1, 0), (0, 0, 1), (0, 1, 1), (0, 1, -1)):
            add(point_make(f, *t))
    return out


# ---------------------------------------------------------------------------
# modules


def _linear_vector(f: Field, p: ProjPoint) -> list:
    return [f.zero, p.a, p.b, p.c, f.zero, f.zero]


@lru_cache(maxsize=None)
def _ideal(p: ProjPoint, side: str):
    A = algebra_for(p.field, side)
    R = mo.regular(A)
    return mo.submodule(R, [_linear_vector(p.field, p), A.basis_vector(YX), A.basis_vector(ZX)])


def module_U(p: ProjPoint, side: str = "left") -> mo.Module:
    """U(a,b,c): the ideal generated by ax+by+cz together with the socle."""
    _check_side(side)
    return _ideal(p, side)[0]


@lru_cache(maxsize=None)
def module_M(p: ProjPoint, side: str = "left") -> mo.Module:
    """M(a,b,c) = Lambda / U(a,b,c); on the right side a module over the opposite algebra."""
    _check_side(side)
    U, inc = _ideal(p, side)
    M = mo.quotient(mo.regular(U.algebra), inc.matrix)[0]
    M.name = module_label(p, side)
    return M


def module_Up(p: ProjPoint) -> mo.Module:
    return module_U(p, "right")


def module_Mp(p: ProjPoint) -> mo.Module:
    return module_M(p, "right")


def module_label(p: ProjPoint, side: str = "left") -> str:
    return ("M" if side == "left" else "M'") + str(p)


# ---------------------------------------------------------------------------
# descriptors of syzygies and duals


@dataclass(frozen=True)
class Descriptor:
    """A module named by the formula tables.

    kind is one of "point" (a module M or M' of a point), "named_point" (the
    special points M(0,0,1), M(0,1,0)), "ideal" (an ideal given by
    generators), "decomposable" (a direct sum of cyclic ideals) or "zero".
    ``summands`` holds generator lists, one per summand.
    """

    kind: str
    side: str
    field: Field
    label: str
    point: Optional[ProjPoint] = None
    summands: tuple = ()

    def __str__(self):
        return self.label


def _point_desc(p: ProjPoint, side: str, named: bool = False) -> Descriptor:
    return Descriptor("named_point" if named else "point", side, p.field, module_label(p, side), p)


def _elem(f: Field, **coeffs) -> tuple:
    v = [f.zero] * 6
    names = {"x": X, "y": Y, "z": Z, "yx": YX, "zx": ZX}
    for k, c in coeffs.items():
        v[names[k]] = f(c)
    return tuple(v)


def _sum_desc(f: Field, side: str, label: str, summands) -> Descriptor:
    kind = "decomposable" if len(summands) > 1 else "ideal"
    return Descriptor(kind, side, f, label, None, tuple(tuple(s) for s in summands))


def realize(d: Descriptor) -> mo.Module:
    """Build the module a descriptor names."""
    if d.kind in ("point", "named_point"):
        return module_M(d.point, d.side)
    A = algebra_for(d.field, d.side)
    if d.kind == "zero":
        return mo.zero_module(A)
    parts = [mo.submodule(mo.regular(A), [list(g) for g in gens])[0] for gens in d.summands]
    return parts[0] if len(parts) == 1 else mo.direct_sum(parts)


def realize_parts(d: Descriptor) -> list[mo.Module]:
    """The summands of a decomposable descriptor, as separate modules."""
    A = algebra_for(d.field, d.side)
    return [mo.submodule(mo.regular(A), [list(g) for g in gens])[0] for gens in d.summands]


def syzygy_formula(p: ProjPoint, side: str = "left") -> Descriptor:
    """The predicted Omega of M(p) (left) or M'(p) (right)."""
    _check_side(side)
    f = p.field
    a, b, c = p.coords
    if side == "left":
        if a != 0 and a + b != 0:
            return _point_desc(omega_point(p), side)
        if a != 0 and c != 0:
            return _point_desc(point_make(f, 0, 0, 1), side, named=True)
        if a != 0:
            return _sum_desc(f, side, "Λ(x-y) ⊕ Λzx", [[_elem(f, x=1, y=-1)], [_elem(f, zx=1)]])
        if b != 0:
            return _point_desc(point_make(f, 0, 1, 0), side, named=True)
        return _sum_desc(f, side, "Λz ⊕ Λyx", [[_elem(f, z=1)], [_elem(f, yx=1)]])
    if a != 0:
        return _point_desc(omega_prime_point(p), side)
    if b != 0 and c != 0:
        return _point_desc(point_make(f, 0, 0, 1), side, named=True)
    if c == 0:
        return _sum_desc(f, side, "yΛ ⊕ zxΛ", [[_elem(f, y=1)], [_elem(f, zx=1)]])
    return _sum_desc(f, side, "zΛ ⊕ yxΛ", [[_elem(f, z=1)], [_elem(f, yx=1)]])


def syzygy_case(p: ProjPoint, side: str = "left") -> int:
    """Case number of the syzygy table that applies to p."""
    a, b, c = p.coords
    if side == "left":
        if a != 0:
            return 1 if a + b != 0 else (2 if c != 0 else 3)
        return 4 if b != 0 else 5
    if a != 0:
        return 1
    if b != 0 and c != 0:
        return 2
    return 3 if c == 0 else 4


def dual_formula(p: ProjPoint, side: str = "left") -> Descriptor:
    """Predicted Lambda-dual of M(1,b,c) (left) or M'(1,b,c) (right)."""
    _check_side(side)
    if not p.affine:
        raise FamilyError(f"dual table covers points with a != 0 only, got {p}")
    f = p.field
    q = f.q
    _, b, c = p.coords
    if side == "left":
        return _point_desc(omega_prime_point(omega_prime_point(p)), "right")
    if b != -1 and b != -f.one / q:
        return _point_desc(omega_point(omega_point(p)), "left")
    if b == -1 and c != 0:
        return _sum_desc(f, "left", "U(0,0,1) = Λz ⊕ Λyx", [[_elem(f, z=1)], [_elem(f, yx=1)]])
    if b == -1:
        gens = [_elem(f, x=1, y=-q), _elem(f, z=1), _elem(f, yx=1), _elem(f, zx=1)]
        return _sum_desc(f, "left", "U(1,-q,0)+U(0,0,1)", [gens])
    # b = -1/q with q != 1
    if c != 0:
        return _point_desc(point_make(f, 0, 0, 1), "left", named=True)
    return _sum_desc(f, "left", "U(1,-1,0) = Λ(x-y) ⊕ Λzx", [[_elem(f, x=1, y=-1)], [_elem(f, zx=1)]])


def dual_branch(p: ProjPoint, side: str = "left") -> int:
    """Branch number (1-5) of the right-side dual table; 1 for every left point."""
    if side == "left":
        return 1
    f = p.field
    _, b, c = p.coords
    if b != -1 and b != -f.one / f.q:
        return 1
    if b == -1:
        return 2 if c != 0 else 3
    return 4 if c != 0 else 5


# ---------------------------------------------------------------------------
# powers of q


def _rational_log_candidates(q, x) -> list[int]:
    """Exponents i with |q|^i possibly equal to |x| (q of infinite order, x != 0)."""
    qa, xa = abs(q), abs(x)
    lq = math.log(int(qa.numerator)) - math.log(int(qa.denominator))
    lx = math.log(int(xa.numerator)) - math.log(int(xa.denominator))
    i0 = round(lx / lq)
    return [i0 - 1, i0, i0 + 1]


def power_exponent(f: Field, x) -> Optional[tuple[int, Optional[int]]]:
    """Solve q^i = x exactly.

    Returns None if x is not a power of q, else (i0, n): the solutions are
    i0 + n*Z for n = o(q) finite, and exactly i0 when n is None.
    """
    x = f(x)
    if x == 0:
        return None
    q = f.q
    order = mul_order(f)
    if order.finite:
        n = order.n
        acc = f.one
        for i in range(n):
            if acc == x:
                return (i, n)
            acc = acc * q
        return None
    for i in _rational_log_candidates(q, x):
        if q ** i == x:
            return (i, None)
    return None


def neg_power_in(f: Field, b, lo: Optional[int], hi: Optional[int]) -> bool:
    """Is b = -q^i for some integer i with lo <= i <= hi (None = unbounded)?"""
    sol = power_exponent(f, -f(b))
    if sol is None:
        return False
    i0, n = sol
    if n is None:
        return (lo is None or i0 >= lo) and (hi is None or i0 <= hi)
    if lo is None or hi is None:
        return True
    # smallest i >= lo with i = i0 mod n
    first = lo + ((i0 - lo) % n)
    return first <= hi


# ---------------------------------------------------------------------------
# classification


FLAG_NAMES = ("torsionless", "extensionless", "reflexive", "gorenstein_projective",
              "semi_gp", "inf_torsionfree", "pivotal_semi_gp", "pivotal_inf_tf")


@dataclass
class ClassificationReport:
    torsionless: bool
    extensionless: bool
    reflexive: bool
    gorenstein_projective: bool
    semi_gp: bool
    inf_torsionfree: bool
    pivotal_semi_gp: bool
    pivotal_inf_tf: bool
    side: str = "left"
    source: str = "closed_form"
    depth: Optional[int] = None
    witnesses: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAG_NAMES}

    def mismatches(self, other: "ClassificationReport") -> list[str]:
        return [k for k in FLAG_NAMES if getattr(self, k) != getattr(other, k)]

    def to_dict(self) -> dict:
        d = self.flags()
        d.update(side=self.side, source=self.source)
        if self.depth is not None:
            d["depth"] = self.depth
        return d


def _report(side, source, depth=None, **flags) -> ClassificationReport:
    semi, inf = flags["semi_gp"], flags["inf_torsionfree"]
    return ClassificationReport(
        torsionless=flags["torsionless"], extensionless=flags["extensionless"],
        reflexive=flags["reflexive"], gorenstein_projective=flags.get("gorenstein_projective", semi and inf),
        semi_gp=semi, inf_torsionfree=inf,
        pivotal_semi_gp=semi and not flags["torsionless"],
        pivotal_inf_tf=inf and not flags["extensionless"],
        side=side, source=source, depth=depth)


def classify_closed_form(p: ProjPoint, side: str = "left") -> ClassificationReport:
    """Flags read off the closed-form criteria for M(p) or M'(p)."""
    _check_side(side)
    f = p.field
    a, b, c = p.coords
    if a == 0:
        special = (b, c) == (0, 1) if side == "right" else (b == 0 or c == 0)
        return _report(side, "closed_form", torsionless=special, extensionless=False,
                       reflexive=False, semi_gp=False, inf_torsionfree=False)
    q = f.q
    infinite = not mul_order(f).finite
    if side == "left":
        return _report(side, "closed_form",
                       torsionless=b != -q,
                       extensionless=b != -1,
                       reflexive=not neg_power_in(f, b, 1, 2),
                       semi_gp=not neg_power_in(f, b, None, 0),
                       inf_torsionfree=not neg_power_in(f, b, 1, None))
    on_e = b == -1
    return _report(side, "closed_form",
                   torsionless=not on_e or c == 0,
                   # M'(1,-1,0) is torsionless but not extensionless, also for q != 1
                   extensionless=b != -q and not (on_e and c == 0),
                   reflexive=not neg_power_in(f, b, -1, 0),
                   semi_gp=not neg_power_in(f, b, 0, None) or (on_e and c != 0 and infinite),
                   inf_torsionfree=not neg_power_in(f, b, None, 0))


def classify_module(M: mo.Module, side: str, depth: int = 6, closed: Optional[ClassificationReport] = None
                    ) -> ClassificationReport:
    if depth < 1:
        raise FamilyError("depth must be >= 1")
    tl = mo.is_torsionless(M)
    ext = mo.is_extensionless(M)
    refl = mo.is_reflexive(M)
    semi = mo.semi_gp_up_to(M, depth)
    inf = mo.inf_tf_up_to(M, depth)
    gp = bool(semi) and bool(inf)
    if closed is not None:
        gp = gp and closed.gorenstein_projective
    rep = _report(side, f"computational(depth={depth})", depth,
                  torsionless=bool(tl), extensionless=bool(ext), reflexive=bool(refl),
                  semi_gp=bool(semi), inf_torsionfree=bool(inf), gorenstein_projective=gp)
    rep.witnesses = {"torsionless": tl, "extensionless": ext, "semi_gp": semi, "inf_torsionfree": inf}
    return rep


def classify_computational(p: ProjPoint, side: str = "left", depth: int = 6) -> ClassificationReport:
    """Flags computed from the module itself, bounded at ``depth`` for the iterated properties."""
    _check_side(side)
    return classify_module(module_M(p, side), side, depth, classify_closed_form(p, side))


def category(torsionless: bool, extensionless: bool) -> str:
    if torsionless and extensionless:
        return "bullet"
    if extensionless:
        return "black_square"
    if torsionless:
        return "black_lozenge"
    return "circle"


# ---------------------------------------------------------------------------
# chains


def chain_coefficients(f: Field, seed, kind: str, length: int) -> list:
    """Third coordinates along the two chains through the lines T and E.

    c_chain: c_1 = seed, c_{t+1} = -c_t / (1 - q^t), following omega from (1,-q,c_1).
    d_chain: d_0 = seed, d_{t+1} = -(1 - q^{-(t+1)}) d_t, following omega' from (1,-1,d_0).
    """
    if length < 0:
        raise FamilyError("length must be >= 0")
    q = f.q
    out = []
    cur = f(seed)
    if kind == "c_chain":
        for t in range(1, length + 1):
            out.append(cur)
            if t == length:
                break
            den = f.one - q ** t
            if den == 0:
                raise ZeroDivisionError(f"q^{t} = 1: the chain ends at t = {t}")
            cur = -cur / den
        return out
    if kind == "d_chain":
        for t in range(length):
            out.append(cur)
            cur = -(f.one - q ** (-(t + 1))) * cur
        return out
    raise FamilyError(f"unknown chain kind {kind!r}")


# ---------------------------------------------------------------------------
# appendix cases


@dataclass
class AppendixCase:
    case: int
    dims: dict  # dim xM, yM, zM
    equal: dict  # which of the three subspaces coincide

    def to_dict(self):
        return {"case": self.case, "dims": self.dims, "equal": self.equal}


def _same_space(U: Matrix, V: Matrix) -> bool:
    if U.ncols != V.ncols:
        return False
    if U.ncols == 0:
        return True
    return column_space(U.hstack(V)).ncols == U.ncols


def appendix_case(M: mo.Module) -> AppendixCase:
    """Dispatch a 3-dimensional local module killed by rad^2 on the subspaces xM, yM, zM."""
    if M.dim != 3 or not mo.is_local(M):
        raise FamilyError("appendix cases need a 3-dimensional local module")
    if not (M.action[YX].is_zero() and M.action[ZX].is_zero()):
        raise FamilyError("module is not annihilated by rad^2")
    sp = {k: column_space(M.action[i]) for k, i in (("x", X), ("y", Y), ("z", Z))}
    dims = {k: v.ncols for k, v in sp.items()}
    eq = {"xy": _same_space(sp["x"], sp["y"]), "xz": _same_space(sp["x"], sp["z"]),
          "yz": _same_space(sp["y"], sp["z"])}
    if dims["z"] == 0:
        case = 1
    elif dims["y"] == 0:
        case = 2
    elif dims["x"] == 0:
        case = 3
    elif eq["xy"]:
        case = 4
    elif eq["xz"]:
        case = 5
    elif eq["yz"]:
        case = 6
    else:
        case = 7
    return AppendixCase(case, dims, eq)


def appendix_case_expected(p: ProjPoint) -> int:
    """Row of the appendix table read off the coordinates."""
    a, b, c = p.coords
    if a == 0 and b == 0:
        return 1
    if a == 0 and c == 0:
        return 2
    if b == 0 and c == 0:
        return 3
    if c == 0:
        return 4
    if b == 0:
        return 5
    if a == 0:
        return 6
    return 7
