"""Exhaustive verification over small prime fields.

The pointwise checker works directly from a level table and the algebra's
structure constants, vectorised with numpy; it never looks at a flag or a
subspace, so it is an independent referee for the flag-based fast path.
"""

from __future__ import annotations

import enum
import functools
import itertools
import json
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import io
from .errors import CapExceeded, DimensionMismatch, InvalidParams, RetriesExhausted
from .exact import DEFAULT_CAP, FieldSpec, Matrix, all_vectors, contains, span
from .fuzzy import (
    FuzzyFlag,
    FuzzyTable,
    evaluate,
    flag_from_table,
    fuzzy_direct_sum,
    pullback,
    pushforward,
    recognize,
    strong_upper_level,
    table_from_flag,
    upper_level,
)
from .homlie import (
    HomLieAlgebra,
    Mode,
    Morphism,
    check_axioms,
    closure,
    closure_defect,
    direct_sum_algebras,
    enumerate_morphisms,
    inclusion_matrix,
    standard_example,
    projection_matrix,
)

# Largest carrier (p^dim vectors) handed to the pairwise checker; the pair
# arrays grow as N^2 * dim.
POINTWISE_LIMIT = 729
REJECTION_BUDGET = 10_000


class Family(enum.Enum):
    ZERO_ALPHA = "ZeroAlpha"
    ZERO_BRACKET = "ZeroBracket"
    STANDARD_EXAMPLE = "StandardExample"
    REJECTION_SAMPLED = "RejectionSampled"


@dataclass(frozen=True)
class InstanceParams:
    p: int
    dim: int
    flag_depth: int = 1
    seed: int = 0
    family: Family = Family.ZERO_ALPHA

    def validate(self, cap: int = DEFAULT_CAP):
        if self.p not in (2, 3, 5):
            raise InvalidParams(f"p must be 2, 3 or 5, got {self.p}")
        if not 1 <= self.dim <= 3:
            raise InvalidParams(f"dim must be in 1..3, got {self.dim}")
        if not 1 <= self.flag_depth <= self.dim + 1:
            raise InvalidParams(f"flag_depth must be in 1..{self.dim + 1}, got {self.flag_depth}")
        if self.family is Family.STANDARD_EXAMPLE and self.dim != 3:
            raise InvalidParams("the StandardExample family is 3-dimensional")
        if self.p**self.dim > cap:
            raise CapExceeded(f"{self.p}^{self.dim} exceeds cap {cap}")


def _rng(*parts) -> random.Random:
    return random.Random("/".join(map(str, parts)))


# ---------------------------------------------------------------------------
# Pointwise checking


@functools.lru_cache(maxsize=64)
def _carrier(p: int, n: int):
    """All vectors of GF(p)^n in lexicographic order, their index weights, and the sum table."""
    V = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(p**n, n)
    w = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    sums = ((V[:, None, :] + V[None, :, :]) % p) @ w
    scaled = [((c * V) % p) @ w for c in range(p)]
    return V, w, sums, scaled


def _structure_tensor(A: HomLieAlgebra) -> np.ndarray:
    n, p = A.dim, A.field.p
    C = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), v in A.structure.items():
        for k, c in enumerate(v):
            C[i, j, k] = c
            C[j, i, k] = (-c) % p
    return C


@functools.lru_cache(maxsize=256)
def _operation_tables(A: HomLieAlgebra):
    """Index of ``[x_a, x_b]`` and of ``alpha(x_a)`` for every carrier vector."""
    p, n = A.field.p, A.dim
    V, w, _, _ = _carrier(p, n)
    C = _structure_tensor(A)
    # [x, y]_k = sum_i x_i (sum_j y_j C[i, j, k])
    right = (V @ C.transpose(1, 0, 2).reshape(n, n * n)).reshape(-1, n, n) % p
    brackets = (np.tensordot(V, right, axes=([1], [1])) % p) @ w
    alpha = np.array(A.alpha.rows, dtype=np.int64).reshape(n, n)
    twisted = ((V @ alpha.T) % p) @ w
    return brackets, twisted


@dataclass(frozen=True)
class PointwiseReport:
    """First failing condition of the fuzzy subalgebra/ideal definition.

    ``condition`` is one of ``"sum"``, ``"scalar"``, ``"bracket"``,
    ``"alpha"``; ``witness`` holds the offending vectors (and scalar), and
    ``lhs``/``rhs`` the two sides of the violated inequality.
    """

    ok: bool
    condition: str | None = None
    witness: tuple | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.ok

    def to_doc(self):
        if self.ok:
            return {"ok": True}
        return {"ok": False, "condition": self.condition,
                "witness": [[str(c) for c in w] if isinstance(w, tuple) else str(w) for w in self.witness],
                "lhs": str(self.lhs), "rhs": str(self.rhs)}


def pointwise_check(T: FuzzyTable, A: HomLieAlgebra, mode: Mode = Mode.SUBALGEBRA,
                    cap: int = POINTWISE_LIMIT) -> PointwiseReport:
    """Check all four membership inequalities over every vector, pair and scalar."""
    if T.field != A.field or T.dim != A.dim:
        raise DimensionMismatch("table and algebra must share field and dimension")
    p, n = A.field.p, A.dim
    N = p**n
    if N > cap:
        raise CapExceeded(f"{N} vectors exceeds pointwise cap {cap}")
    V, w, sums, scaled_tables = _carrier(p, n)
    brackets, twisted = _operation_tables(A)
    levels = sorted(set(T.entries.values()))
    rank = {t: r for r, t in enumerate(levels)}
    L = np.array([rank[T.entries[tuple(int(c) for c in v)]] for v in V], dtype=np.int64)

    def vec(i):
        return tuple(int(c) for c in V[i])

    def fail(cond, wit, lhs, rhs):
        return PointwiseReport(False, cond, wit, levels[lhs], levels[rhs])

    pair_min = np.minimum(L[:, None], L[None, :])
    bad = np.argwhere(L[sums] < pair_min)
    if len(bad):
        a, b = bad[0]
        return fail("sum", (vec(a), vec(b)), L[sums[a, b]], pair_min[a, b])
    for c, scaled in enumerate(scaled_tables):
        bad = np.flatnonzero(L[scaled] < L)
        if len(bad):
            a = bad[0]
            return fail("scalar", (c, vec(a)), L[scaled[a]], L[a])
    bound = pair_min if mode is Mode.SUBALGEBRA else np.maximum(L[:, None], L[None, :])
    bad = np.argwhere(L[brackets] < bound)
    if len(bad):
        a, b = bad[0]
        return fail("bracket", (vec(a), vec(b)), L[brackets[a, b]], bound[a, b])
    bad = np.flatnonzero(L[twisted] < L)
    if len(bad):
        a = bad[0]
        return fail("alpha", (vec(a),), L[twisted[a]], L[a])
    return PointwiseReport(True)


# ---------------------------------------------------------------------------
# Instance generation


def _random_vector(rng: random.Random, p: int, n: int) -> tuple:
    return tuple(rng.randrange(p) for _ in range(n))


def _random_nonzero(rng: random.Random, p: int, n: int) -> tuple:
    while True:
        v = _random_vector(rng, p, n)
        if any(v):
            return v


def random_algebra(family: Family, p: int, dim: int, rng: random.Random,
                   budget: int = REJECTION_BUDGET) -> HomLieAlgebra:
    f = FieldSpec(p)
    pairs = list(itertools.combinations(range(dim), 2))
    if family is Family.STANDARD_EXAMPLE:
        return standard_example(f)
    if family is Family.ZERO_ALPHA:
        brackets = {ij: _random_vector(rng, p, dim) for ij in pairs}
        return HomLieAlgebra(f, dim, brackets, None, name=family.value)
    if family is Family.ZERO_BRACKET:
        alpha = tuple(_random_vector(rng, p, dim) for _ in range(dim))
        return HomLieAlgebra(f, dim, {}, alpha, name=family.value)
    max_entries = math.ceil(dim / 2)
    for _ in range(budget):
        chosen = rng.sample(pairs, min(len(pairs), rng.randint(1, max_entries))) if pairs else []
        brackets = {ij: _random_nonzero(rng, p, dim) for ij in chosen}
        alpha = tuple(_random_vector(rng, p, dim) for _ in range(dim))
        A = HomLieAlgebra(f, dim, brackets, alpha, name=family.value)
        if check_axioms(A).valid:
            return A
    raise RetriesExhausted(f"no Hom-Lie algebra found in {budget} draws")


def random_levels(rng: random.Random, k: int) -> list[Fraction]:
    """``k`` distinct levels in [0, 1], decreasing."""
    pool = [Fraction(a, 10) for a in range(11)] + [Fraction(a, 7) for a in range(1, 7)]
    return sorted(set(rng.sample(pool, k)), reverse=True)


def random_flag(A: HomLieAlgebra, depth: int, rng: random.Random, kind: str = "sub") -> FuzzyFlag:
    """Random flag on ``A`` of at most ``depth`` chain entries.

    ``kind`` is ``"sub"`` (chain of subalgebra closures, mixed with ideal
    closures), ``"ideal"`` (ideal closures only) or ``"any"`` (arbitrary nested
    subspaces, so the result may fail either test).
    """
    f, n, p = A.field, A.dim, A.field.p
    levels = random_levels(rng, depth + 1)

    def grow(seed):
        if kind == "any":
            return span(f, seed, n)
        mode = Mode.IDEAL if kind == "ideal" or rng.random() < 0.3 else Mode.SUBALGEBRA
        return closure(A, seed, mode)

    seeds = [] if rng.random() < 0.4 else [_random_nonzero(rng, p, n)]
    chain = []
    V = grow(seeds)
    for t in levels[:-1]:
        chain.append((V, t))
        if V.is_full:
            break
        while True:
            v = _random_nonzero(rng, p, n)
            if not contains(V, v):
                break
        seeds = list(V.basis) + [v]
        V = grow(seeds)
    return FuzzyFlag(f, n, tuple(chain), levels[len(chain)])


def random_instance(params: InstanceParams, kind: str = "sub") -> tuple[HomLieAlgebra, FuzzyFlag]:
    params.validate()
    rng = _rng("instance", params.family.value, params.p, params.dim, params.flag_depth, params.seed)
    A = random_algebra(params.family, params.p, params.dim, rng)
    return A, random_flag(A, params.flag_depth, rng, kind)


def _families_for(dim: int) -> list[Family]:
    fams = [Family.ZERO_ALPHA, Family.ZERO_BRACKET, Family.REJECTION_SAMPLED]
    if dim == 3:
        fams.insert(2, Family.STANDARD_EXAMPLE)
    return fams


def _derived_params(rng: random.Random, p: int, max_dim: int, dim=None) -> InstanceParams:
    dim = rng.randint(1, max_dim) if dim is None else dim
    family = rng.choice(_families_for(dim))
    return InstanceParams(p, dim, rng.randint(1, dim + 1), rng.getrandbits(63), family)


def make_batch(n: int, primes=(2, 3), max_dim: int = 3, seed: int = 0) -> list[InstanceParams]:
    """Seeded batch cycling through all families, primes and dimensions."""
    rng = _rng("batch", seed)
    out = []
    dims = list(range(1, max_dim + 1))
    families = list(Family) if max_dim >= 3 else [f for f in Family if f is not Family.STANDARD_EXAMPLE]
    for i in range(n):
        family = families[i % len(families)]
        p = primes[(i // len(families)) % len(primes)]
        dim = 3 if family is Family.STANDARD_EXAMPLE else dims[(i // (len(families) * len(primes))) % len(dims)]
        out.append(InstanceParams(p, dim, rng.randint(1, dim + 1), seed * 1_000_003 + i, family))
    return out


# ---------------------------------------------------------------------------
# Direct-sum search


class FindingKind(enum.Enum):
    COUNTEREXAMPLE = "Counterexample"
    EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class Finding:
    kind: FindingKind
    checked_count: int
    instance: str | None = None
    witness: dict | None = None

    def to_doc(self):
        doc = {"kind": self.kind.value, "checked_count": self.checked_count}
        if self.kind is FindingKind.COUNTEREXAMPLE:
            doc["instance"] = json.loads(self.instance)
            doc["witness"] = self.witness
        return doc


def serialize_instance(algebras, flags, mode: Mode) -> str:
    return json.dumps({"mode": mode.value,
                       "algebras": [io.algebra_to_doc(A) for A in algebras],
                       "flags": [io.flag_to_doc(mu) for mu in flags]}, indent=2)


def check_direct_sum(algebras, flags, mode: Mode) -> PointwiseReport:
    """Pointwise test of the direct-sum fuzzy set on the direct-sum algebra."""
    S = direct_sum_algebras(algebras)
    return pointwise_check(table_from_flag(fuzzy_direct_sum(flags)), S, mode)


def reverify(instance: str) -> PointwiseReport:
    """Rebuild a serialized direct-sum instance from scratch and recheck it pointwise."""
    doc = json.loads(instance)
    mode = Mode(doc["mode"])
    algebras = [io.algebra_from_doc(a) for a in doc["algebras"]]
    flags = [io.flag_from_doc(m) for m in doc["flags"]]
    return check_direct_sum(algebras, flags, mode)


def search_ideal_sum_counterexample(params: InstanceParams, budget: int, mode: Mode = Mode.IDEAL,
                                    summands: int = 2) -> Finding:
    """Look for fuzzy ideals (or subalgebras, with ``mode``) whose direct sum is not one.

    ``params`` supplies the prime, the largest summand dimension and the
    seed; each trial draws its summands' families and dimensions from the
    seed.  The first counterexample that survives a fresh round trip through
    serialization is returned.
    """
    if budget <= 0:
        raise InvalidParams("budget must be positive")
    if params.p not in (2, 3, 5) or not 1 <= params.dim <= 3:
        raise InvalidParams(f"unsupported search parameters {params}")
    kind = "ideal" if mode is Mode.IDEAL else "sub"
    for k in range(budget):
        rng = _rng("search", mode.value, params.p, params.dim, params.seed, k)
        dims = [rng.randint(1, params.dim) for _ in range(summands)]
        while params.p ** sum(dims) > POINTWISE_LIMIT:
            dims[dims.index(max(dims))] -= 1
        algebras, flags = [], []
        for d in dims:
            sub = _derived_params(rng, params.p, params.dim, d)
            A = random_algebra(sub.family, sub.p, sub.dim, rng)
            algebras.append(A)
            flags.append(random_flag(A, rng.randint(1, d + 1), rng, kind))
        if not all(recognize(mu, A, mode) for mu, A in zip(flags, algebras)):
            raise RuntimeError("generated summand flag fails its own closure mode")
        rep = check_direct_sum(algebras, flags, mode)
        if not rep:
            instance = serialize_instance(algebras, flags, mode)
            if not reverify(instance):
                return Finding(FindingKind.COUNTEREXAMPLE, k + 1, instance, rep.to_doc())
    return Finding(FindingKind.EXHAUSTED, budget)


# ---------------------------------------------------------------------------
# Theorem suite


@dataclass
class Tally:
    run: int = 0
    agreements: int = 0
    disagreements: int = 0
    # cases where the pointwise referee said yes; shows a tally is not one-sided
    positives: int = 0
    witnesses: list = dc_field(default_factory=list)

    def record(self, agree: bool, witness=None, keep: int = 5, positive: bool = True):
        self.run += 1
        self.positives += bool(positive)
        if agree:
            self.agreements += 1
        else:
            self.disagreements += 1
            if len(self.witnesses) < keep:
                self.witnesses.append(witness)


THEOREMS = (
    "weak-cut-sub",
    "weak-cut-ideal",
    "strong-cut-sub",
    "strong-cut-ideal",
    "sum-sub",
    "pullback-law",
    "pullback-sub",
    "pullback-ideal",
    "pushforward-law",
    "pushforward-sub-onto",
    "pushforward-sub-not-onto",
    "pushforward-ideal-onto",
    "oracle-coherence",
)


@dataclass
class SuiteReport:
    tallies: dict = dc_field(default_factory=lambda: {t: Tally() for t in THEOREMS})
    instances: int = 0
    morphisms: int = 0

    @property
    def ok(self) -> bool:
        return all(t.disagreements == 0 for t in self.tallies.values())

    def to_doc(self):
        return {
            "instances": self.instances,
            "morphisms": self.morphisms,
            "ok": self.ok,
            "theorems": {k: {"run": t.run, "agreements": t.agreements, "disagreements": t.disagreements,
                             "positives": t.positives, "witnesses": t.witnesses} for k, t in self.tallies.items()},
        }


def _params_doc(params: InstanceParams) -> dict:
    return {"p": params.p, "dim": params.dim, "flag_depth": params.flag_depth,
            "seed": params.seed, "family": params.family.value}


def _cut_condition(mu: FuzzyFlag, A: HomLieAlgebra, mode: Mode, cut) -> bool:
    for t in mu.levels:
        U = cut(mu, t)
        if U is not None and closure_defect(A, U, mode) is not None:
            return False
    return True


@functools.lru_cache(maxsize=4096)
def _pointwise(mu: FuzzyFlag, A: HomLieAlgebra, mode: Mode) -> bool:
    return pointwise_check(table_from_flag(mu), A, mode).ok


def check_coherence(mu: FuzzyFlag) -> bool:
    """Flag evaluation agrees with its table, and the table rebuilds the flag."""
    T = table_from_flag(mu)
    if any(evaluate(mu, x) != t for x, t in T.entries.items()):
        return False
    return flag_from_table(T) == mu


def _fiber_max(f: Morphism, mu: FuzzyFlag) -> dict:
    best = {}
    for x in all_vectors(f.source.field, f.source.dim):
        y = f(x)
        t = evaluate(mu, x)
        if best.get(y, -1) < t:
            best[y] = t
    return best


def _morphism_checks(report: SuiteReport, f: Morphism, src_flags, tgt_flags, wit):
    X, Y = f.source, f.target
    report.morphisms += 1
    for j, nu in enumerate(tgt_flags):
        pulled = pullback(f, nu)
        law = all(evaluate(pulled, x) == evaluate(nu, f(x)) for x in all_vectors(X.field, X.dim))
        report.tallies["pullback-law"].record(law, dict(wit, flag=j))
        for mode, key in ((Mode.SUBALGEBRA, "pullback-sub"), (Mode.IDEAL, "pullback-ideal")):
            if _pointwise(nu, Y, mode):
                ok = bool(recognize(pulled, X, mode)) and _pointwise(pulled, X, mode)
                report.tallies[key].record(ok, dict(wit, flag=j))
    onto = f.is_surjective
    for j, mu in enumerate(src_flags):
        pushed = pushforward(f, mu)
        best = _fiber_max(f, mu)
        law = all(evaluate(pushed, y) == best.get(y, 0) for y in all_vectors(Y.field, Y.dim))
        report.tallies["pushforward-law"].record(law, dict(wit, flag=j))
        if _pointwise(mu, X, Mode.SUBALGEBRA):
            ok = bool(recognize(pushed, Y, Mode.SUBALGEBRA)) and _pointwise(pushed, Y, Mode.SUBALGEBRA)
            key = "pushforward-sub-onto" if onto else "pushforward-sub-not-onto"
            report.tallies[key].record(ok, dict(wit, flag=j))
        if onto and _pointwise(mu, X, Mode.IDEAL):
            ok = bool(recognize(pushed, Y, Mode.IDEAL)) and _pointwise(pushed, Y, Mode.IDEAL)
            report.tallies["pushforward-ideal-onto"].record(ok, dict(wit, flag=j))


def canonical_morphisms(A: HomLieAlgebra, B: HomLieAlgebra, S: HomLieAlgebra | None = None) -> list[Morphism]:
    """Identity, zero, and the inclusion/projection maps of ``S = A + B``."""
    f = A.field
    S = direct_sum_algebras([A, B]) if S is None else S
    maps = [
        (Matrix.identity(f, A.dim), A, A),
        (Matrix.zeros(f, B.dim, A.dim), A, B),
        (inclusion_matrix([A, B], 0), A, S),
        (inclusion_matrix([A, B], 1), B, S),
        (projection_matrix([A, B], 0), S, A),
        (projection_matrix([A, B], 1), S, B),
    ]
    return [Morphism.certify(M, X, Y) for M, X, Y in maps]


def _flags_for(A: HomLieAlgebra, mu: FuzzyFlag, rng: random.Random) -> list[FuzzyFlag]:
    depth = rng.randint(1, A.dim + 1)
    return [mu, random_flag(A, depth, rng, "ideal"), random_flag(A, depth, rng, "any")]


def run_instance(report: SuiteReport, params: InstanceParams, morphism_cap: int = 512,
                 morphisms: bool = True, sums: bool = True):
    A, mu = random_instance(params)
    rng = _rng("suite", _params_doc(params))
    flags = _flags_for(A, mu, rng)
    report.instances += 1
    base = _params_doc(params)
    for j, nu in enumerate(flags):
        report.tallies["oracle-coherence"].record(check_coherence(nu), dict(base, flag=j))
        for mode in Mode:
            truth = _pointwise(nu, A, mode)
            fast = bool(recognize(nu, A, mode))
            for cut, name in ((upper_level, "weak"), (strong_upper_level, "strong")):
                side = _cut_condition(nu, A, mode, cut)
                report.tallies[f"{name}-cut-{mode.value}"].record(
                    truth == fast == side,
                    dict(base, flag=j, pointwise=truth, flag_path=fast, cuts=side), positive=truth)

    if sums:
        k = rng.choice([2, 3])
        dims = [rng.randint(1, params.dim) for _ in range(k)]
        while params.p ** sum(dims) > POINTWISE_LIMIT:
            dims[dims.index(max(dims))] -= 1
        dims = [d for d in dims if d > 0]
        parts = [random_instance(_derived_params(rng, params.p, params.dim, d)) for d in dims]
        algebras = [P[0] for P in parts]
        fl = [P[1] for P in parts]
        if all(recognize(m, B, Mode.SUBALGEBRA) for m, B in zip(fl, algebras)):
            S = direct_sum_algebras(algebras)
            nu = fuzzy_direct_sum(fl)
            ok = bool(recognize(nu, S, Mode.SUBALGEBRA)) and _pointwise(nu, S, Mode.SUBALGEBRA)
            report.tallies["sum-sub"].record(ok, dict(base, summands=dims))

    if morphisms:
        B, muB = random_instance(_derived_params(rng, params.p, params.dim))
        flagsB = _flags_for(B, muB, rng)
        candidates = []
        for X, Y in ((A, A), (A, B), (B, A)):
            if params.p ** (X.dim * Y.dim) <= morphism_cap:
                candidates.extend(enumerate_morphisms(X, Y, morphism_cap))
        S = direct_sum_algebras([A, B])
        if params.p ** S.dim <= POINTWISE_LIMIT:
            candidates.extend(canonical_morphisms(A, B, S))
        flagsS = [fuzzy_direct_sum([a, b]) for a, b in zip(flags, flagsB)]
        by_alg = {id(A): flags, id(B): flagsB, id(S): flagsS}
        for f in candidates:
            src, tgt = by_alg[id(f.source)], by_alg[id(f.target)]
            _morphism_checks(report, f, src, tgt, dict(base, morphism=[list(map(str, r)) for r in f.map.rows]))


def theorem_suite(batch, morphism_cap: int = 512, morphisms: bool = True, sums: bool = True,
                  cap: int = DEFAULT_CAP) -> SuiteReport:
    report = SuiteReport()
    for params in batch:
        params.validate(cap)
        run_instance(report, params, morphism_cap, morphisms, sums)
    return report
