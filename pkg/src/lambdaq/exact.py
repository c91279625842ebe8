"""Exact fields (rationals, prime fields) and dense exact linear algebra.

Matrices keep their entries in a "raw" representation: ``gmpy2.mpq`` over
the rationals and plain ``int`` in ``range(p)`` over a prime field.  Scalars
handed out to callers are field elements that support the usual operators
(``mpq`` itself, or :class:`Mod` for prime fields).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq


class FieldError(ValueError):
    pass


_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/([+-]?\d+)$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Mod:
    """An element of the prime field Z/p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise ZeroDivisionError("0 has no inverse")
            return Mod(pow(pow(self.v, -1, self.p), -n, self.p), self.p)
        return Mod(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """The field k (rationals or F_p) together with the parameter q."""

    kind: str  # "Q" or "Fp"
    p: int = 0
    q_raw: object = None

    @property
    def is_prime(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    @property
    def q(self):
        return self.elem(self.q_raw)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce an int, string literal or field element into this field."""
        return self.elem(self.raw(value))

    def raw(self, value):
        if isinstance(value, str):
            return self.raw(self.parse(value))
        if self.is_prime:
            if isinstance(value, Mod):
                if value.p != self.p:
                    raise FieldError(f"element of F_{value.p} given to F_{self.p}")
                return value.v
            if isinstance(value, int):
                return value % self.p
            if type(value) is type(mpq()):
                den = int(value.denominator) % self.p
                if den == 0:
                    raise FieldError(f"{value} has no image in F_{self.p}")
                return int(value.numerator) * pow(den, -1, self.p) % self.p
            raise FieldError(f"cannot coerce {value!r} into F_{self.p}")
        if isinstance(value, Mod):
            raise FieldError("prime field element given to Q")
        return mpq(value)

    def elem(self, raw):
        if self.is_prime:
            return Mod(raw, self.p)
        return raw

    def parse(self, literal: str):
        s = literal.strip()
        if _INT_RE.match(s):
            return self.elem(self.raw(int(s)))
        m = _FRAC_RE.match(s)
        if m:
            num, den = int(m.group(1)), int(m.group(2))
            if self.is_prime:
                if den % self.p == 0:
                    raise FieldError(f"denominator of {s!r} vanishes in F_{self.p}")
                return Mod(num * pow(den, -1, self.p), self.p)
            if den == 0:
                raise FieldError(f"zero denominator in {s!r}")
            return mpq(num, den)
        raise FieldError(f"unparseable field element {literal!r}")

    def elements(self):
        """All elements of a prime field, in the order 0, 1, ..., p-1."""
        if not self.is_prime:
            raise FieldError("Q is infinite")
        return [Mod(v, self.p) for v in range(self.p)]

    def fmt(self, value) -> str:
        return str(self.raw(value))

    def __str__(self):
        name = "Q" if not self.is_prime else f"Fp:{self.p}"
        return f"{name} (q={self.fmt(self.q)})"

    @property
    def descriptor(self) -> str:
        return "Q" if not self.is_prime else f"Fp:{self.p}"


def field_make(desc: str, q: str | int = "1") -> Field:
    """Build a field from a descriptor ("Q" or "Fp:<prime>") and a literal for q."""
    s = desc.strip()
    if s in ("Q", "QQ"):
        base = Field("Q")
    else:
        m = re.match(r"^(?:Fp|GF|F):(\d+)$", s)
        if not m:
            raise FieldError(f"unknown field descriptor {desc!r}")
        p = int(m.group(1))
        if not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        base = Field("Fp", p)
    qraw = base.raw(q if not isinstance(q, str) else base.parse(q))
    if qraw == 0:
        raise FieldError("q must be non-zero")
    return Field(base.kind, base.p, qraw)


@dataclass(frozen=True)
class OrderResult:
    """Multiplicative order: ``n`` is None for infinite order."""

    n: Optional[int]

    @property
    def finite(self) -> bool:
        return self.n is not None

    def __str__(self):
        return "inf" if self.n is None else str(self.n)


def mul_order(f: Field, x=None) -> OrderResult:
    """Multiplicative order of q (or of ``x``) in the field."""
    x = f.q if x is None else f(x)
    if x == 0:
        raise FieldError("0 has no multiplicative order")
    if not f.is_prime:
        if x == 1:
            return OrderResult(1)
        if x == -1:
            return OrderResult(2)
        return OrderResult(None)
    v, p = f.raw(x), f.p
    n, acc = 1, v
    while acc != 1:
        acc = acc * v % p
        n += 1
    return OrderResult(n)


# ---------------------------------------------------------------------------
# raw kernels; ``p`` is 0 over Q


def _rref_inplace(rows: list, ncols: int, p: int) -> list:
    """Reduce ``rows`` (list of lists, raw entries) to RREF in place.

    Pivots on the first nonzero entry in column order.  Returns pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if p:
            if lead != 1:
                inv = pow(lead, -1, p)
                prow = [v * inv % p for v in prow]
                rows[r] = prow
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        else:
            if lead != 1:
                inv = 1 / lead
                prow = [v * inv for v in prow]
                rows[r] = prow
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def _matmul_raw(a: Sequence[Sequence], b: Sequence[Sequence], ncols_b: int, p: int) -> list:
    zero = 0 if p else mpq(0)
    out = []
    bt = list(zip(*b)) if b else [() for _ in range(ncols_b)]
    if not b:
        return [[zero] * ncols_b for _ in a]
    for row in a:
        nz = [(k, v) for k, v in enumerate(row) if v]
        if not nz:
            out.append([zero] * ncols_b)
            continue
        new = []
        for col in bt:
            s = zero
            for k, v in nz:
                w = col[k]
                if w:
                    s += v * w
            new.append(s % p if p else s)
        out.append(new)
    return out


def _det_raw(rows: list, p: int):
    n = len(rows)
    rows = [list(r) for r in rows]
    det = 1 if p else mpq(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return 0 if p else mpq(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        lead = rows[c][c]
        det = det * lead % p if p else det * lead
        inv = pow(lead, -1, p) if p else 1 / lead
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv % p if p else f * inv
                rows[i] = [(x - f * y) % p if p else x - f * y for x, y in zip(rows[i], rows[c])]
    return det % p if p else det


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_rref")

    def __init__(self, field: Field, rows: Iterable[Iterable] = (), ncols: Optional[int] = None, *, _raw=False):
        self.field = field
        if _raw:
            data = tuple(tuple(r) for r in rows)
        else:
            data = tuple(tuple(field.raw(v) for v in r) for r in rows)
        self._rows = data
        self.nrows = len(data)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix without rows")
            ncols = len(data[0])
        self.ncols = ncols
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self._rref = None

    # -- construction -----------------------------------------------------
    @classmethod
    def raw(cls, field: Field, rows, ncols: Optional[int] = None) -> "Matrix":
        return cls(field, rows, ncols, _raw=True)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.raw(0)
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols, _raw=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.raw(0), field.raw(1)
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n, _raw=True)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        cols = [[field.raw(v) for v in c] for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column of wrong length")
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(field, rows, len(cols), _raw=True)

    @classmethod
    def column(cls, field: Field, vector: Sequence) -> "Matrix":
        return cls(field, [[v] for v in vector], 1)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def raw_rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self.field.elem(self._rows[i][j])

    def rows(self) -> list:
        return [[self.field.elem(v) for v in r] for r in self._rows]

    def col(self, j: int) -> list:
        return [self.field.elem(r[j]) for r in self._rows]

    def raw_col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return not any(v for r in self._rows for v in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # -- arithmetic -------------------------------------------------------
    def _p(self):
        return self.field.p if self.field.is_prime else 0

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix.raw(self.field, _matmul_raw(self._rows, other._rows, other.ncols, self._p()), other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        p = self._p()
        rows = [[(a + b) % p if p else a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return Matrix.raw(self.field, rows, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        p = self._p()
        rows = [[(a - b) % p if p else a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return Matrix.raw(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        p = self._p()
        sv = self.field.raw(s)
        rows = [[v * sv % p if p else v * sv for v in r] for r in self._rows]
        return Matrix.raw(self.field, rows, self.ncols)

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, 0)
        return Matrix.raw(self.field, list(zip(*self._rows)), self.nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix.raw(self.field, [[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def apply(self, vector: Sequence) -> list:
        """Matrix times a column vector given as a sequence of elements."""
        v = Matrix.column(self.field, vector)
        return (self @ v).col(0)

    # -- elimination ------------------------------------------------------
    def _rref_data(self):
        if self._rref is None:
            rows = [list(r) for r in self._rows]
            piv = _rref_inplace(rows, self.ncols, self._p())
            self._rref = (tuple(tuple(r) for r in rows), tuple(piv))
        return self._rref

    def rref(self):
        """Return (reduced matrix, pivot columns, rank)."""
        rows, piv = self._rref_data()
        return Matrix.raw(self.field, rows, self.ncols), list(piv), len(piv)

    def rank(self) -> int:
        return len(self._rref_data()[1])

    def kernel(self) -> "Matrix":
        """Columns form a basis of the right null space (free columns ascending)."""
        rows, piv = self._rref_data()
        p = self._p()
        z, o = self.field.raw(0), self.field.raw(1)
        pivset = set(piv)
        cols = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [z] * self.ncols
            v[f] = o
            for r, c in enumerate(piv):
                a = rows[r][f]
                if a:
                    v[c] = (-a) % p if p else -a
            cols.append(v)
        return Matrix.raw(self.field, [[c[i] for c in cols] for i in range(self.ncols)], len(cols))

    def solve(self, b: "Matrix") -> Optional["Matrix"]:
        """Some X with self @ X == b (free variables zero), or None."""
        if b.nrows != self.nrows:
            raise ValueError(f"shape mismatch in solve: {self.shape} vs {b.shape}")
        n, k = self.ncols, b.ncols
        aug = [list(r) + list(s) for r, s in zip(self._rows, b._rows)]
        piv = _rref_inplace(aug, n + k, self._p())
        if piv and piv[-1] >= n:
            return None
        z = self.field.raw(0)
        x = [[z] * k for _ in range(n)]
        for r, c in enumerate(piv):
            x[c] = aug[r][n:]
        return Matrix.raw(self.field, x, k)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(Matrix.identity(self.field, self.nrows))
        if x is None or self.rank() != self.nrows:
            raise ZeroDivisionError("singular matrix")
        return x

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of a non-square matrix")
        return self.field.elem(_det_raw(self._rows, self._p()))

    # -- block helpers ----------------------------------------------------
    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in mats:
            if m.nrows != self.nrows:
                raise ValueError("row mismatch in hstack")
        rows = [sum((list(m._rows[i]) for m in mats), []) for i in range(self.nrows)]
        return Matrix.raw(self.field, rows, sum(m.ncols for m in mats))

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in mats:
            if m.ncols != self.ncols:
                raise ValueError("column mismatch in vstack")
        rows = [r for m in mats for r in m._rows]
        return Matrix.raw(self.field, rows, self.ncols)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    z = field.raw(0)
    rows = [[z] * nc for _ in range(nr)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.raw_rows):
            rows[r0 + i][c0:c0 + m.ncols] = list(row)
        r0 += m.nrows
        c0 += m.ncols
    return Matrix.raw(field, rows, nc)


def rref(m: Matrix):
    return m.rref()


def kernel_basis(m: Matrix) -> Matrix:
    return m.kernel()


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    return a.solve(b)


def column_space(m: Matrix) -> Matrix:
    """A basis (as columns, in RREF-of-transpose form) of the column space."""
    red, piv, rank = m.T.rref()
    return red.submatrix(range(rank), range(red.ncols)).T if rank else Matrix.zeros(m.field, m.nrows, 0)


def in_span(basis: Matrix, vector: Matrix) -> bool:
    """Is every column of ``vector`` in the column span of ``basis``?"""
    if basis.ncols == 0:
        return vector.is_zero()
    return basis.rank() == basis.hstack(vector).rank()
