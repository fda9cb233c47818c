"""Hom-Lie algebras given by structure constants and a twist matrix."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Mapping, Sequence

from .errors import (
    CapExceeded,
    DimensionMismatch,
    EmptyList,
    FieldMismatch,
    InvariantViolation,
    NotCertified,
    UnsupportedField,
)
from .exact import (
    DEFAULT_CAP,
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    contains,
    image,
    sum_subspaces,
)


class Mode(enum.Enum):
    SUBALGEBRA = "sub"
    IDEAL = "ideal"


class HomLieAlgebra:
    """A finite-dimensional Hom-Lie algebra ``(L, [,], alpha)``.

    ``brackets`` maps index pairs ``(i, j)`` with ``i != j`` to the coordinates
    of ``[e_i, e_j]``.  Only ``i < j`` is stored; an ``(j, i)`` entry is
    accepted if it is the negative of ``(i, j)``.  Diagonal entries are
    rejected: the bracket is alternating by construction.
    """

    __slots__ = ("field", "dim", "structure", "alpha", "name", "_table")

    def __init__(self, field: FieldSpec, dim: int, brackets: Mapping | None = None, alpha=None, name=None):
        if dim < 0:
            raise InvariantViolation("dimension must be non-negative")
        self.field = field
        self.dim = dim
        self.name = name
        structure = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise InvariantViolation(f"bracket index ({i}, {j}) out of range for dimension {dim}")
            if i == j:
                raise InvariantViolation(f"bracket entry [e{i}, e{i}] given; the bracket is alternating")
            if len(coeffs) != dim:
                raise DimensionMismatch(f"bracket ({i}, {j}) has {len(coeffs)} coordinates, expected {dim}")
            v = field.vector(coeffs)
            if i > j:
                i, j, v = j, i, tuple(field.neg(c) for c in v)
            if (i, j) in structure and structure[(i, j)] != v:
                raise InvariantViolation(f"[e{i}, e{j}] and [e{j}, e{i}] are not negatives of each other")
            structure[(i, j)] = v
        self.structure = {k: v for k, v in sorted(structure.items()) if any(v)}
        if alpha is None:
            alpha = Matrix.zeros(field, dim, dim)
        elif not isinstance(alpha, Matrix):
            alpha = Matrix(field, tuple(alpha), dim)
        if alpha.field != field:
            raise FieldMismatch(f"alpha over {alpha.field!r}, algebra over {field!r}")
        if alpha.shape != (dim, dim):
            raise DimensionMismatch(f"alpha has shape {alpha.shape}, expected {(dim, dim)}")
        self.alpha = alpha
        # full antisymmetric table: _table[i][j] = [e_i, e_j] or None
        table = [[None] * dim for _ in range(dim)]
        for (i, j), v in self.structure.items():
            table[i][j] = v
            table[j][i] = tuple(field.neg(c) for c in v)
        self._table = table

    def __eq__(self, other):
        if not isinstance(other, HomLieAlgebra):
            return NotImplemented
        return (self.field, self.dim, self.structure, self.alpha, self.name) == (
            other.field, other.dim, other.structure, other.alpha, other.name)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(self.structure.items()), self.alpha))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<HomLieAlgebra{label} dim={self.dim} over {self.field!r}>"

    def basis_vector(self, i: int) -> Vector:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def basis(self) -> list[Vector]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def twist(self, x: Sequence) -> Vector:
        return self.alpha.apply(x)

    def bracket(self, x, y) -> Vector:
        return bracket(self, x, y)

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)


def _check_vec(A: HomLieAlgebra, x):
    if len(x) != A.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in algebra of dimension {A.dim}")
    return A.field.vector(x)


def bracket(A: HomLieAlgebra, x: Sequence, y: Sequence) -> Vector:
    f = A.field
    x = _check_vec(A, x)
    y = _check_vec(A, y)
    out = [f.zero] * A.dim
    for (i, j), c in A.structure.items():
        coef = f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]))
        if coef:
            for k, ck in enumerate(c):
                if ck:
                    out[k] = f.add(out[k], f.mul(coef, ck))
    return tuple(out)


def _vadd(f: FieldSpec, *vs):
    out = list(vs[0])
    for v in vs[1:]:
        out = [f.add(a, b) for a, b in zip(out, v)]
    return tuple(out)


# ---------------------------------------------------------------------------
# Axioms


class FailureKind(enum.Enum):
    SKEW_SYMMETRY = "SkewSymmetry"
    HOM_JACOBI = "HomJacobi"


@dataclass(frozen=True)
class AxiomFailure:
    kind: FailureKind
    witness: tuple
    defect: Vector


@dataclass(frozen=True)
class AxiomReport:
    failures: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.valid


def jacobi_defect(A: HomLieAlgebra, x, y, z) -> Vector:
    """``[a(x),[y,z]] + [a(y),[z,x]] + [a(z),[x,y]]``."""
    tw = A.twist
    return _vadd(
        A.field,
        bracket(A, tw(x), bracket(A, y, z)),
        bracket(A, tw(y), bracket(A, z, x)),
        bracket(A, tw(z), bracket(A, x, y)),
    )


def check_axioms(A: HomLieAlgebra) -> AxiomReport:
    failures = []
    e = A.basis()
    for i, j in itertools.combinations(range(A.dim), 2):
        d = _vadd(A.field, bracket(A, e[i], e[j]), bracket(A, e[j], e[i]))
        if any(d):
            failures.append(AxiomFailure(FailureKind.SKEW_SYMMETRY, (i, j), d))
    for i, j, k in itertools.combinations(range(A.dim), 3):
        d = jacobi_defect(A, e[i], e[j], e[k])
        if any(d):
            failures.append(AxiomFailure(FailureKind.HOM_JACOBI, (i, j, k), d))
    return AxiomReport(tuple(failures))


# ---------------------------------------------------------------------------
# Subalgebras and ideals


def _check_sub(A: HomLieAlgebra, H: Subspace):
    if H.field != A.field:
        raise FieldMismatch(f"subspace over {H.field!r}, algebra over {A.field!r}")
    if H.ambient_dim != A.dim:
        raise DimensionMismatch(f"subspace of ambient dimension {H.ambient_dim} in algebra of dimension {A.dim}")


def closure_defect(A: HomLieAlgebra, H: Subspace, mode: Mode = Mode.SUBALGEBRA):
    """First witness that ``H`` is not a subalgebra (or ideal), else None.

    Witnesses are ``("alpha", b)`` or ``("bracket", x, y)``, with ``x`` a basis
    vector of ``H``.
    """
    _check_sub(A, H)
    for b in H.basis:
        if not contains(H, A.twist(b)):
            return ("alpha", b)
    others = H.basis if mode is Mode.SUBALGEBRA else A.basis()
    for i, b in enumerate(H.basis):
        start = i + 1 if mode is Mode.SUBALGEBRA else 0
        for c in others[start:]:
            if not contains(H, bracket(A, b, c)):
                return ("bracket", b, c)
    return None


def is_subalgebra(A: HomLieAlgebra, H: Subspace) -> bool:
    return closure_defect(A, H, Mode.SUBALGEBRA) is None


def is_ideal(A: HomLieAlgebra, H: Subspace) -> bool:
    return closure_defect(A, H, Mode.IDEAL) is None


def closure(A: HomLieAlgebra, seed: Sequence[Sequence], mode: Mode = Mode.SUBALGEBRA) -> Subspace:
    """Smallest alpha-stable subspace containing ``seed`` closed under the bracket."""
    seed = [_check_vec(A, v) for v in seed]
    H = Subspace(A.field, A.dim, tuple(seed))
    ambient = A.basis()
    while True:
        new = [A.twist(b) for b in H.basis]
        if mode is Mode.SUBALGEBRA:
            new += [bracket(A, b, c) for b, c in itertools.combinations(H.basis, 2)]
        else:
            new += [bracket(A, b, e) for b in H.basis for e in ambient]
        G = sum_subspaces(H, Subspace(A.field, A.dim, tuple(new)))
        if G.rank == H.rank:
            return H
        H = G


# ---------------------------------------------------------------------------
# Direct sums


def block_diagonal(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.ncols for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * off + r + (0,) * (n - off - b.ncols))
        off += b.ncols
    return Matrix(field, tuple(rows), n)


def direct_sum_algebras(As: Sequence[HomLieAlgebra], name=None) -> HomLieAlgebra:
    """Componentwise bracket and block-diagonal twist on ``L_1 + ... + L_n``."""
    if not As:
        raise EmptyList("direct sum of no algebras")
    f = As[0].field
    for A in As[1:]:
        if A.field != f:
            raise FieldMismatch(f"{A.field!r} vs {f!r}")
    n = sum(A.dim for A in As)
    brackets = {}
    off = 0
    for A in As:
        for (i, j), v in A.structure.items():
            brackets[(off + i, off + j)] = (0,) * off + v + (0,) * (n - off - A.dim)
        off += A.dim
    return HomLieAlgebra(f, n, brackets, block_diagonal(f, [A.alpha for A in As]), name)


def inclusion_matrix(As: Sequence[HomLieAlgebra], k: int) -> Matrix:
    """Matrix of the inclusion of summand ``k`` into the direct sum."""
    f = As[0].field
    n = sum(A.dim for A in As)
    off = sum(A.dim for A in As[:k])
    rows = [tuple(int(r == off + c) for c in range(As[k].dim)) for r in range(n)]
    return Matrix(f, tuple(rows), As[k].dim)


def projection_matrix(As: Sequence[HomLieAlgebra], k: int) -> Matrix:
    return inclusion_matrix(As, k).transpose()


# ---------------------------------------------------------------------------
# Morphisms


def is_morphism(f: Matrix, A: HomLieAlgebra, B: HomLieAlgebra) -> bool:
    if not (f.field == A.field == B.field):
        raise FieldMismatch("map and algebras must share a field")
    if f.shape != (B.dim, A.dim):
        raise DimensionMismatch(f"map has shape {f.shape}, expected {(B.dim, A.dim)}")
    if f @ A.alpha != B.alpha @ f:
        return False
    images = f.columns()
    for (i, j) in itertools.combinations(range(A.dim), 2):
        lhs = f.apply(A._table[i][j] or (A.field.zero,) * A.dim)
        if lhs != bracket(B, images[i], images[j]):
            return False
    return True


@dataclass(frozen=True)
class Morphism:
    source: HomLieAlgebra
    target: HomLieAlgebra
    map: Matrix
    certified: bool = dc_field(default=False, compare=False)

    @classmethod
    def certify(cls, map: Matrix, source: HomLieAlgebra, target: HomLieAlgebra) -> "Morphism":
        if not is_morphism(map, source, target):
            raise NotCertified("map does not preserve brackets and twist maps")
        return cls(source, target, map, True)

    def require_certified(self):
        if not self.certified:
            raise NotCertified("morphism has not been certified")

    def __call__(self, x) -> Vector:
        return self.map.apply(x)

    @property
    def is_surjective(self) -> bool:
        return self.map.rank() == self.target.dim

    def image(self, S: Subspace) -> Subspace:
        return image(self.map, S)


def enumerate_morphisms(A: HomLieAlgebra, B: HomLieAlgebra, cap: int = DEFAULT_CAP) -> Iterator[Morphism]:
    """Every morphism ``A -> B`` over GF(p), in lexicographic row-major order."""
    f = A.field
    if B.field != f:
        raise FieldMismatch(f"{A.field!r} vs {B.field!r}")
    if f.p is None:
        raise UnsupportedField("morphisms can only be enumerated over GF(p)")
    count = f.p ** (A.dim * B.dim)
    if count > cap:
        raise CapExceeded(f"{count} candidate maps exceeds cap {cap}")
    for flat in itertools.product(range(f.p), repeat=A.dim * B.dim):
        rows = tuple(flat[r * A.dim:(r + 1) * A.dim] for r in range(B.dim))
        M = Matrix(f, rows, A.dim)
        if is_morphism(M, A, B):
            yield Morphism(A, B, M, True)


def standard_example(field: FieldSpec) -> HomLieAlgebra:
    """3-dimensional algebra: alpha(e1)=e2, alpha(e2)=alpha(e3)=0, [e1,e3]=e1."""
    alpha = ((0, 0, 0), (1, 0, 0), (0, 0, 0))
    return HomLieAlgebra(field, 3, {(0, 2): (1, 0, 0)}, alpha, name="standard-example")

