"""Finite-image fuzzy sets stored as level flags.

A flag is a strictly increasing chain of subspaces ``V_1 < ... < V_k`` with
strictly decreasing levels ``t_1 > ... > t_k``; a vector takes the level of
the first ``V_i`` containing it, or ``baseline`` when it lies outside ``V_k``.
Every cut of such a set is a subspace, which is exactly the requirement that
the membership function respects sums and scalar multiples.

Canonical form: the full space appears in the chain only for a constant fuzzy
set.  Otherwise a trailing full-space entry is folded into ``baseline`` and
``baseline`` is None precisely when ``V_k`` is the full space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    DimensionMismatch,
    EmptyList,
    FieldMismatch,
    InvariantViolation,
    NotSubspaceLeveled,
    UnsupportedField,
)
from .exact import (
    DEFAULT_CAP,
    FieldSpec,
    Subspace,
    Vector,
    all_vectors,
    contains,
    image,
    preimage,
    span,
    subspace_leq,
)
from .homlie import HomLieAlgebra, Mode, Morphism, closure_defect

Level = Fraction


def level(x) -> Level:
    t = Fraction(x)
    if not 0 <= t <= 1:
        raise InvariantViolation(f"level {t} outside [0, 1]")
    return t


@dataclass(frozen=True)
class FuzzyFlag:
    field: FieldSpec
    dim: int
    chain: tuple
    baseline: Level | None = None

    def __post_init__(self):
        chain = []
        for S, t in self.chain:
            if S.field != self.field:
                raise FieldMismatch(f"chain subspace over {S.field!r}, flag over {self.field!r}")
            if S.ambient_dim != self.dim:
                raise DimensionMismatch(f"chain subspace in dimension {S.ambient_dim}, flag in {self.dim}")
            chain.append((S, level(t)))
        if not chain:
            raise InvariantViolation("a flag needs at least one chain entry")
        for (S, s), (T, t) in zip(chain, chain[1:]):
            if not (subspace_leq(S, T) and S != T):
                raise InvariantViolation("chain subspaces must be strictly increasing")
            if not s > t:
                raise InvariantViolation(f"levels must strictly decrease, got {s} then {t}")
        baseline = None if self.baseline is None else level(self.baseline)
        if chain[-1][0].is_full:
            if len(chain) > 1:
                baseline = chain.pop()[1]
            else:
                baseline = None
        if not chain[-1][0].is_full:
            if baseline is None:
                raise InvariantViolation("baseline is required when the last chain subspace is proper")
            if not baseline < chain[-1][1]:
                raise InvariantViolation(f"baseline {baseline} must be below the last level {chain[-1][1]}")
        object.__setattr__(self, "chain", tuple(chain))
        object.__setattr__(self, "baseline", baseline)

    @classmethod
    def constant(cls, field: FieldSpec, dim: int, t) -> "FuzzyFlag":
        return cls(field, dim, ((Subspace.full(field, dim), t),))

    @property
    def levels(self) -> list[Level]:
        """Im(mu), in decreasing order."""
        out = [t for _, t in self.chain]
        if self.baseline is not None:
            out.append(self.baseline)
        return out

    @property
    def top(self) -> Level:
        return self.chain[0][1]

    def cuts(self) -> list[Subspace]:
        """The distinct nonempty upper cuts, innermost first, ending with the full space."""
        out = [S for S, _ in self.chain]
        if not out[-1].is_full:
            out.append(Subspace.full(self.field, self.dim))
        return out

    def __call__(self, x) -> Level:
        return evaluate(self, x)


def _check_vec(mu: FuzzyFlag, x):
    if len(x) != mu.dim:
        raise DimensionMismatch(f"vector of length {len(x)} for flag of dimension {mu.dim}")


def evaluate(mu: FuzzyFlag, x: Sequence) -> Level:
    _check_vec(mu, x)
    for S, t in mu.chain:
        if contains(S, x):
            return t
    return mu.baseline


def upper_level(mu: FuzzyFlag, t) -> Subspace | None:
    """``{x : mu(x) >= t}``; None when it is empty."""
    t = Fraction(t)
    if t > mu.top:
        return None
    if mu.baseline is not None and t <= mu.baseline:
        return Subspace.full(mu.field, mu.dim)
    return [S for S, s in mu.chain if s >= t][-1]


def strong_upper_level(mu: FuzzyFlag, t) -> Subspace | None:
    """``{x : mu(x) > t}``; None when it is empty."""
    t = Fraction(t)
    if t >= mu.top:
        return None
    if mu.baseline is not None and t < mu.baseline:
        return Subspace.full(mu.field, mu.dim)
    return [S for S, s in mu.chain if s > t][-1]


def _from_cuts(field: FieldSpec, dim: int, entries: Iterable, baseline: Level | None) -> FuzzyFlag:
    """Canonical flag from a weakly increasing chain with non-increasing levels.

    Repeated subspaces keep their highest level; entries at or below
    ``baseline`` and entries after the first full subspace are redundant.
    """
    chain = []
    for S, t in entries:
        if chain and (chain[-1][0] == S or chain[-1][0].is_full):
            continue
        if baseline is not None and t <= baseline and not S.is_full:
            continue
        chain.append((S, t))
    if not chain:
        chain = [(Subspace.full(field, dim), baseline)]
    if chain[-1][0].is_full:
        baseline = None
    return FuzzyFlag(field, dim, tuple(chain), baseline)


# ---------------------------------------------------------------------------
# Recognition


@dataclass(frozen=True)
class Report:
    """Outcome of a fuzzy subalgebra/ideal test; truthy when it passes."""

    ok: bool
    level: Level | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _check_ambient(mu: FuzzyFlag, A: HomLieAlgebra):
    if mu.field != A.field:
        raise FieldMismatch(f"flag over {mu.field!r}, algebra over {A.field!r}")
    if mu.dim != A.dim:
        raise DimensionMismatch(f"flag of dimension {mu.dim} on algebra of dimension {A.dim}")


def _recognize(mu: FuzzyFlag, A: HomLieAlgebra, mode: Mode) -> Report:
    _check_ambient(mu, A)
    for S, t in mu.chain:
        if S.is_full:
            continue
        w = closure_defect(A, S, mode)
        if w is not None:
            return Report(False, t, w)
    return Report(True)


def is_fuzzy_subalgebra(mu: FuzzyFlag, A: HomLieAlgebra) -> Report:
    return _recognize(mu, A, Mode.SUBALGEBRA)


def is_fuzzy_ideal(mu: FuzzyFlag, A: HomLieAlgebra) -> Report:
    return _recognize(mu, A, Mode.IDEAL)


def recognize(mu: FuzzyFlag, A: HomLieAlgebra, mode: Mode) -> Report:
    return _recognize(mu, A, mode)


# ---------------------------------------------------------------------------
# Constructions


def _direct_sum_subspace(parts: Sequence[Subspace]) -> Subspace:
    n = sum(S.ambient_dim for S in parts)
    rows = []
    off = 0
    for S in parts:
        for b in S.basis:
            rows.append((0,) * off + b + (0,) * (n - off - S.ambient_dim))
        off += S.ambient_dim
    return Subspace(parts[0].field, n, tuple(rows))


def fuzzy_direct_sum(mus: Sequence[FuzzyFlag]) -> FuzzyFlag:
    """Fuzzy set ``(x_1, ..., x_n) -> min_i mu_i(x_i)`` on the direct sum."""
    if not mus:
        raise EmptyList("direct sum of no fuzzy sets")
    f = mus[0].field
    for mu in mus[1:]:
        if mu.field != f:
            raise FieldMismatch(f"{mu.field!r} vs {f!r}")
    n = sum(mu.dim for mu in mus)
    levels = sorted({t for mu in mus for t in mu.levels}, reverse=True)
    entries = []
    for t in levels:
        cuts = [upper_level(mu, t) for mu in mus]
        if any(c is None for c in cuts):
            continue
        entries.append((_direct_sum_subspace(cuts), t))
    return _from_cuts(f, n, entries, None)


def pullback(f: Morphism, mu: FuzzyFlag) -> FuzzyFlag:
    """``x -> mu(f(x))`` on the source of ``f``."""
    f.require_certified()
    _check_ambient(mu, f.target)
    entries = [(preimage(f.map, W), s) for W, s in mu.chain]
    return _from_cuts(mu.field, f.source.dim, entries, mu.baseline)


def pushforward(f: Morphism, mu: FuzzyFlag) -> FuzzyFlag:
    """``y -> max{mu(x) : f(x) = y}``, and 0 off the image of ``f``."""
    f.require_certified()
    _check_ambient(mu, f.source)
    entries = [(image(f.map, V), t) for V, t in mu.chain]
    if mu.baseline is not None:
        entries.append((image(f.map, Subspace.full(mu.field, mu.dim)), mu.baseline))
    return _from_cuts(mu.field, f.target.dim, entries, Fraction(0))


# ---------------------------------------------------------------------------
# Pointwise tables


@dataclass(frozen=True)
class FuzzyTable:
    """Membership levels for every vector of ``GF(p)^dim``."""

    field: FieldSpec
    dim: int
    entries: dict

    def __post_init__(self):
        if self.field.p is None:
            raise UnsupportedField("pointwise tables need a finite field")
        if len(self.entries) != self.field.p**self.dim:
            raise InvariantViolation(f"table has {len(self.entries)} entries, expected {self.field.p ** self.dim}")

    def __getitem__(self, x) -> Level:
        return self.entries[tuple(x)]


def table_from_flag(mu: FuzzyFlag, over: FieldSpec | None = None, cap: int = DEFAULT_CAP) -> FuzzyTable:
    over = mu.field if over is None else over
    if over != mu.field:
        raise FieldMismatch(f"flag over {mu.field!r}, table requested over {over!r}")
    if over.p is None:
        raise UnsupportedField("pointwise tables need a finite field")
    return FuzzyTable(over, mu.dim, {x: evaluate(mu, x) for x in all_vectors(over, mu.dim, cap)})


def flag_from_table(T: FuzzyTable) -> FuzzyFlag:
    """Rebuild the flag from a table whose every upper cut is a subspace."""
    levels = sorted(set(T.entries.values()), reverse=True)
    entries = []
    for t in levels:
        cut = [x for x, s in T.entries.items() if s >= t]
        S = span(T.field, cut, T.dim)
        if len(S) != len(cut):
            raise NotSubspaceLeveled(f"the cut at level {t} has {len(cut)} elements and is not a subspace")
        entries.append((S, t))
    return _from_cuts(T.field, T.dim, entries, None)


def from_pointwise(field: FieldSpec, dim: int, fn: Callable[[Vector], Level]) -> FuzzyFlag:
    return flag_from_table(FuzzyTable(field, dim, {x: level(fn(x)) for x in all_vectors(field, dim)}))
