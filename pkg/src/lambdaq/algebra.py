"""Finite-dimensional algebras given by structure constants.

Houses Lambda(q), its quotient modulo the socle, opposite algebras, the
radical series and the two socles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .exact import Field, Matrix, column_space, in_span

LAMBDA_LABELS = ("1", "x", "y", "z", "yx", "zx")


class AlgebraError(ValueError):
    pass


class Algebra:
    """Algebra with basis ``labels`` and products ``table[i][j]`` (coordinate tuples).

    Left and right multiplication operators are precomputed as matrices; the
    column ``j`` of ``left[i]`` holds the coordinates of ``b_i * b_j``.
    """

    def __init__(self, field: Field, labels: Sequence[str], table, unit_index: int = 0,
                 name: str = "A", check: bool = True):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.unit_index = unit_index
        self.name = name
        n = self.dim
        self.table = tuple(tuple(tuple(field.raw(v) for v in table[i][j]) for j in range(n)) for i in range(n))
        for i, j in product(range(n), repeat=2):
            if len(self.table[i][j]) != n:
                raise AlgebraError(f"structure constant c[{i}][{j}] has wrong length")
        self.left = tuple(Matrix.raw(field, [[self.table[i][j][k] for j in range(n)] for k in range(n)], n)
                          for i in range(n))
        self.right = tuple(Matrix.raw(field, [[self.table[j][i][k] for j in range(n)] for k in range(n)], n)
                           for i in range(n))
        self._key = (field, self.table, unit_index)
        if check:
            self._check()

    def _check(self):
        n, u = self.dim, self.unit_index
        ident = Matrix.identity(self.field, n)
        if self.left[u] != ident or self.right[u] != ident:
            raise AlgebraError("unit does not act as a two-sided identity")
        # (b_i b_j) b_k == b_i (b_j b_k) for all triples
        for i, j in product(range(n), repeat=2):
            lhs = self.left_of(self.table[i][j])
            if lhs != self.left[i] @ self.left[j]:
                raise AlgebraError(f"associativity fails at ({self.labels[i]}, {self.labels[j]}, -)")

    def __eq__(self, other):
        return isinstance(other, Algebra) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, {self.field})"

    # -- elements ---------------------------------------------------------
    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element(self, **coeffs) -> list:
        """Coordinate vector from label coefficients, e.g. ``element(x=1, y=-1)``."""
        v = [self.field.zero] * self.dim
        for lab, c in coeffs.items():
            v[self.index(lab)] = self.field(c)
        return v

    def left_of(self, u: Sequence) -> Matrix:
        """Matrix of left multiplication by the element with coordinates ``u``."""
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(u):
            if c:
                m = m + self.left[i].scale(c)
        return m

    def right_of(self, u: Sequence) -> Matrix:
        m = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in enumerate(u):
            if c:
                m = m + self.right[i].scale(c)
        return m

    def mul(self, u: Sequence, v: Sequence) -> list:
        return self.left_of([self.field(c) for c in u]).apply(v)

    def structure_constant(self, i: int, j: int) -> list:
        return [self.field.elem(v) for v in self.table[i][j]]

    # -- structure --------------------------------------------------------
    def radical_basis(self) -> Matrix:
        """Span of the non-unit basis directions, checked to be a nilpotent ideal."""
        cols = [self.basis_vector(i) for i in range(self.dim) if i != self.unit_index]
        rad = Matrix.from_columns(self.field, cols, self.dim)
        for i in range(self.dim):
            if not in_span(rad, self.left[i] @ rad) or not in_span(rad, self.right[i] @ rad):
                raise AlgebraError("span of non-unit basis elements is not an ideal")
        power = rad
        for _ in range(self.dim + 1):
            if power.ncols == 0:
                return rad
            power = _product_span(self, power, rad)
        raise AlgebraError("radical candidate is not nilpotent")

    def generators(self) -> list[int]:
        """Indices of basis elements of rad whose images span rad/rad^2."""
        rad = self.radical_basis()
        rad2 = _product_span(self, rad, rad)
        gens, span = [], rad2
        for i in range(self.dim):
            if i == self.unit_index:
                continue
            v = Matrix.column(self.field, self.basis_vector(i))
            if not in_span(span, v):
                gens.append(i)
                span = span.hstack(v) if span.ncols else v
        return gens


def _product_span(A: Algebra, left: Matrix, right: Matrix) -> Matrix:
    """Column basis of span{u v : u in left, v in right}."""
    prods = []
    for a in range(left.ncols):
        L = A.left_of(left.col(a))
        prods.append(L @ right)
    if not prods:
        return Matrix.zeros(A.field, A.dim, 0)
    return column_space(prods[0].hstack(*prods[1:]))


@dataclass(frozen=True)
class SeriesReport:
    chain: tuple  # subspace bases (matrices with basis columns), descending
    length: int

    @property
    def dims(self):
        return [m.ncols for m in self.chain]


def _lambda_product(i: int, j: int, q):
    """Coordinates of b_i * b_j in Lambda(q), basis (1, x, y, z, yx, zx)."""
    one, zero = 1, 0
    v = [zero] * 6
    if i == 0:
        v[j] = one
        return v
    if j == 0:
        v[i] = one
        return v
    X, Y, Z, YX, ZX = 1, 2, 3, 4, 5
    if (i, j) == (X, Y):
        v[YX] = -q
    elif (i, j) == (X, Z):
        v[ZX] = one
    elif (i, j) == (Y, X):
        v[YX] = one
    elif (i, j) == (Z, X):
        v[ZX] = one
    elif (i, j) == (Z, Y):
        v[ZX] = one
    # x^2, y^2, z^2, yz and every product of length >= 3 vanish
    return v


@lru_cache(maxsize=None)
def algebra_lambda(f: Field) -> Algebra:
    """The 6-dimensional local algebra Lambda(q) over ``f``."""
    if f.q == 0:
        raise AlgebraError("q must be non-zero")
    q = f.q
    table = [[_lambda_product(i, j, q) for j in range(6)] for i in range(6)]
    return Algebra(f, LAMBDA_LABELS, table, 0, name="Lambda")


@lru_cache(maxsize=None)
def algebra_opposite(A: Algebra) -> Algebra:
    n = A.dim
    table = [[[A.field.elem(v) for v in A.table[j][i]] for j in range(n)] for i in range(n)]
    name = A.name[:-3] if A.name.endswith("^op") else A.name + "^op"
    return Algebra(A.field, A.labels, table, A.unit_index, name=name, check=False)


def quotient_algebra(A: Algebra, ideal: Matrix, name: str) -> Algebra:
    """A modulo a two-sided ideal (given by basis columns); basis = complement of pivots."""
    red, piv, rank = ideal.T.rref()
    keep = [i for i in range(A.dim) if i not in piv]
    # reduce a vector modulo the ideal: subtract rows of the reduced basis
    rows = red.rows()[:rank]

    def reduce(v):
        v = list(v)
        for r, c in enumerate(piv):
            if v[c]:
                coef = v[c]
                v = [a - coef * b for a, b in zip(v, rows[r])]
        return [v[i] for i in keep]

    table = [[reduce(A.structure_constant(i, j)) for j in keep] for i in keep]
    labels = [A.labels[i] for i in keep]
    return Algebra(A.field, labels, table, keep.index(A.unit_index), name=name)


def algebra_quotient_rad2(A: Algebra) -> Algebra:
    """Lambda-bar: Lambda(q) modulo its socle (= rad^2)."""
    soc = socle(A, "left")
    if A.dim != 6 or soc.ncols != 2:
        raise AlgebraError("expected a Lambda(q)-shaped algebra (dim 6, socle dim 2)")
    return quotient_algebra(A, soc, name=A.name + "-bar")


def radical_series(A: Algebra) -> SeriesReport:
    whole = Matrix.identity(A.field, A.dim)
    rad = A.radical_basis()
    chain = [whole, rad]
    power = rad
    while power.ncols:
        power = _product_span(A, power, rad)
        chain.append(power)
    return SeriesReport(tuple(chain), len(chain) - 1)


def socle(A: Algebra, side: str = "left") -> Matrix:
    """Annihilator of rad A: {u : r u = 0} for side 'left', {u : u r = 0} for 'right'."""
    ops = A.left if side == "left" else A.right
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    gens = [ops[i] for i in range(A.dim) if i != A.unit_index]
    stacked = gens[0].vstack(*gens[1:])
    return stacked.kernel()


def regular_module(A: Algebra, side: str = "left"):
    """The regular representation; the right one as a left module over A^op."""
    from .modules import Module

    if side == "left":
        return Module(A, A.left)
    if side == "right":
        Aop = algebra_opposite(A)
        return Module(Aop, Aop.left)
    raise ValueError("side must be 'left' or 'right'")
