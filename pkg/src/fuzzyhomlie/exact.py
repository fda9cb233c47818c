"""Exact scalars, matrices and canonical subspaces over Q or GF(p).

Vectors are plain tuples of canonical field values: ``Fraction`` over the
rationals, ``int`` in ``range(p)`` over GF(p).  Subspaces keep a reduced
row-echelon basis, so two subspaces are equal exactly when their
representations are equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    UnsupportedField,
)

DEFAULT_CAP = 10**6

Vector = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: rationals when ``p`` is None, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise ValueError(f"characteristic must be an integer, got {self.p!r}")
            if self.p > 2**31 or not _is_prime(self.p):
                raise ValueError(f"{self.p} is not a prime <= 2^31")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __repr__(self):
        return "Q" if self.p is None else f"GF({self.p})"

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or fraction string to canonical form."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} scalar used in {self!r}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"{x} has denominator divisible by {self.p}")
            return (x.numerator * pow(den, -1, self.p)) % self.p
        raise TypeError(f"cannot coerce {x!r} to GF({self.p})")

    def vector(self, coords: Iterable) -> Vector:
        return tuple(self(c) for c in coords)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def elements(self) -> range:
        if self.p is None:
            raise UnsupportedField("the rationals cannot be enumerated")
        return range(self.p)


RATIONALS = FieldSpec()


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field; supports ``+ - * /``."""

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return self * inv(Scalar(self.field, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __repr__(self):
        return f"{self.value}" if self.field.p is None else f"{self.value} (mod {self.field.p})"


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def inv(a: Scalar) -> Scalar:
    return Scalar(a.field, a.field.inv(a.value))


# ---------------------------------------------------------------------------
# Matrices


@dataclass(frozen=True)
class Matrix:
    """Dense ``nrows x ncols`` matrix; ``rows`` are canonical tuples."""

    field: FieldSpec
    rows: tuple
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(self.field.vector(r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            if not rows:
                raise DimensionMismatch("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("matrix is not rectangular")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int) -> "Matrix":
        return cls(field, tuple((0,) * n for _ in range(m)), n)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        f = self.field
        out = []
        for row in self.rows:
            s = f.zero
            for a, b in zip(row, v):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return Matrix(self.field, tuple(tuple(_dot(self.field, r, c) for c in cols) for r in self.rows), other.ncols)

    def columns(self) -> list[Vector]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(self.columns()), self.nrows)

    def rank(self) -> int:
        return len(rref(self.field, self.rows, self.ncols)[0])


def _dot(f: FieldSpec, a: Sequence, b: Sequence):
    s = f.zero
    for x, y in zip(a, b):
        if x and y:
            s = f.add(s, f.mul(x, y))
    return s


# ---------------------------------------------------------------------------
# Row reduction


def rref(f: FieldSpec, rows: Iterable[Sequence], ncols: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row-echelon form of ``rows``; zero rows are dropped.

    Returns ``(basis, pivots)``.  Input rows must already be canonical.
    """
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        piv = m[r][c]
        if piv != 1:
            s = f.inv(piv)
            m[r] = [f.mul(s, x) for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                a = m[i][c]
                m[i] = [f.sub(x, f.mul(a, y)) for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def nullspace(f: FieldSpec, rows: Iterable[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{v : row . v = 0 for every row}``."""
    basis, pivots = rref(f, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for j in free:
        v = [f.zero] * ncols
        v[j] = f.one
        for row, pc in zip(basis, pivots):
            v[pc] = f.neg(row[j])
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``field^ambient_dim`` with canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple = ()
    pivots: tuple = dc_field(default=(), compare=False, repr=False)

    def __post_init__(self):
        vecs = []
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
            vecs.append(self.field.vector(v))
        basis, pivots = rref(self.field, vecs, self.ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n).rows)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __len__(self):
        if self.field.p is None:
            raise UnsupportedField("a rational subspace is infinite")
        return self.field.p**self.rank


def span(field: FieldSpec, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, tuple(vectors))


def _check_same(a: Subspace, b: Subspace):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def _reduce(S: Subspace, v: Sequence) -> list:
    f = S.field
    w = list(v)
    for row, c in zip(S.basis, S.pivots):
        a = w[c]
        if a:
            w = [f.sub(x, f.mul(a, y)) for x, y in zip(w, row)]
    return w


def contains(S: Subspace, v: Sequence) -> bool:
    if len(v) != S.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {S.ambient_dim}")
    return not any(_reduce(S, S.field.vector(v)))


def subspace_leq(A: Subspace, B: Subspace) -> bool:
    _check_same(A, B)
    if A.rank > B.rank:
        return False
    return all(not any(_reduce(B, b)) for b in A.basis)


def sum_subspaces(A: Subspace, B: Subspace) -> Subspace:
    _check_same(A, B)
    return Subspace(A.field, A.ambient_dim, A.basis + B.basis)


def image(M: Matrix, S: Subspace) -> Subspace:
    if M.field != S.field:
        raise FieldMismatch(f"{M.field!r} vs {S.field!r}")
    if M.ncols != S.ambient_dim:
        raise DimensionMismatch(f"{M.nrows}x{M.ncols} matrix applied to ambient dimension {S.ambient_dim}")
    return Subspace(S.field, M.nrows, tuple(M.apply(b) for b in S.basis))


def preimage(M: Matrix, W: Subspace) -> Subspace:
    """``{v : M v in W}`` as the kernel of (annihilator of W) composed with M."""
    if M.field != W.field:
        raise FieldMismatch(f"{M.field!r} vs {W.field!r}")
    if M.nrows != W.ambient_dim:
        raise DimensionMismatch(f"{M.nrows}x{M.ncols} matrix pulled back from ambient dimension {W.ambient_dim}")
    f = M.field
    annihilator = nullspace(f, W.basis, W.ambient_dim)
    cols = M.columns()
    conditions = [tuple(_dot(f, phi, col) for col in cols) for phi in annihilator]
    return Subspace(f, M.ncols, tuple(nullspace(f, conditions, M.ncols)))


def enumerate_vectors(S: Subspace, cap: int = DEFAULT_CAP) -> Iterator[Vector]:
    """Every vector of ``S`` once, ordered lexicographically by basis coefficients."""
    f = S.field
    if f.p is None:
        raise UnsupportedField("cannot enumerate a subspace over the rationals")
    if f.p**S.rank > cap:
        raise CapExceeded(f"{f.p}^{S.rank} vectors exceeds cap {cap}")
    p, n = f.p, S.ambient_dim
    for coeffs in itertools.product(range(p), repeat=S.rank):
        v = [0] * n
        for c, b in zip(coeffs, S.basis):
            if c:
                for i, x in enumerate(b):
                    v[i] = (v[i] + c * x) % p
        yield tuple(v)


def all_vectors(field: FieldSpec, n: int, cap: int = DEFAULT_CAP) -> Iterator[Vector]:
    return enumerate_vectors(Subspace.full(field, n), cap)
