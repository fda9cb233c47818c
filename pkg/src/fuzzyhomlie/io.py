"""JSON documents for algebras, subspaces, flags and morphisms.

Indices are 0-based; scalars and levels are written as integer or
``"a/b"`` fraction strings so every value round-trips exactly.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction

from .errors import FuzzyHomLieError, InvariantViolation, NotCertified, ParseError
from .exact import FieldSpec, Matrix, Subspace
from .fuzzy import FuzzyFlag
from .homlie import HomLieAlgebra, Morphism

_SCALAR = re.compile(r"^-?\d+(/\d+)?$")

ALGEBRA_KEYS = {"field", "dim", "name", "brackets", "alpha"}
FLAG_KEYS = {"field", "dim", "chain", "baseline"}
SUBSPACE_KEYS = {"field", "dim", "basis"}
MORPHISM_KEYS = {"source", "target", "matrix"}


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def _render(doc, indent: int) -> str:
    pad = "  " * (indent + 1)
    end = "\n" + "  " * indent
    if isinstance(doc, dict):
        if not any(isinstance(v, (dict, list)) for v in doc.values()):
            return json.dumps(doc)
        return "{\n" + ",\n".join(f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in doc.items()) + end + "}"
    if isinstance(doc, list):
        # rows and bracket entries stay on one line
        if not doc or not isinstance(doc[0], (dict, list)):
            return json.dumps(doc)
        return "[\n" + ",\n".join(pad + _render(x, indent + 1) for x in doc) + end + "]"
    return json.dumps(doc)


def dumps(doc) -> str:
    """JSON with one line per matrix row, bracket entry or flat object."""
    return _render(doc, 0) + "\n"


def _keys(doc, allowed, required, where):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise ParseError(f"{where}: missing key(s) {sorted(missing)}")


def scalar_str(x) -> str:
    return str(x)


def _scalar(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{where}: expected an integer or fraction string, got {x!r}")
    if isinstance(x, str) and not _SCALAR.match(x.strip()):
        raise ParseError(f"{where}: {x!r} is not an exact integer or fraction")
    try:
        return Fraction(x)
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {x!r}") from None


def _vector(v, n, where):
    if not isinstance(v, list) or len(v) != n:
        raise ParseError(f"{where}: expected a list of {n} scalars")
    return [_scalar(c, f"{where}[{k}]") for k, c in enumerate(v)]


def _rows(rows, n, where):
    if not isinstance(rows, list):
        raise ParseError(f"{where}: expected a list of rows")
    return [_vector(r, n, f"{where}[{k}]") for k, r in enumerate(rows)]


def field_doc(f: FieldSpec):
    return "Q" if f.p is None else {"gf": f.p}


def _field(doc, where="field") -> FieldSpec:
    if doc == "Q":
        return FieldSpec()
    if isinstance(doc, dict) and set(doc) == {"gf"} and isinstance(doc["gf"], int):
        try:
            return FieldSpec(doc["gf"])
        except ValueError as e:
            raise ParseError(f"{where}: {e}") from None
    raise ParseError(f'{where}: expected "Q" or {{"gf": p}}')


def _dim(doc, where="dim") -> int:
    if isinstance(doc, bool) or not isinstance(doc, int) or doc < 0:
        raise ParseError(f"{where}: expected a non-negative integer")
    return doc


def _wrap(fn, what):
    try:
        return fn()
    except (ParseError, InvariantViolation, NotCertified):
        raise
    except FuzzyHomLieError as e:
        raise InvariantViolation(f"{what}: {e}") from e


# ---------------------------------------------------------------------------
# Algebras


def algebra_to_doc(A: HomLieAlgebra) -> dict:
    doc = {"field": field_doc(A.field), "dim": A.dim}
    if A.name is not None:
        doc["name"] = A.name
    doc["brackets"] = [[i, j, [scalar_str(c) for c in v]] for (i, j), v in A.structure.items()]
    doc["alpha"] = [[scalar_str(c) for c in row] for row in A.alpha.rows]
    return doc


def algebra_from_doc(doc) -> HomLieAlgebra:
    _keys(doc, ALGEBRA_KEYS, {"field", "dim", "brackets", "alpha"}, "algebra")
    f = _field(doc["field"])
    n = _dim(doc["dim"])
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name: expected a string")
    brackets = {}
    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets: expected a list")
    for k, entry in enumerate(doc["brackets"]):
        where = f"brackets[{k}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ParseError(f"{where}: expected [i, j, [coefficients]]")
        i, j, coeffs = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise ParseError(f"{where}: indices must be integers")
        if i == j:
            raise InvariantViolation(f"{where}: diagonal bracket [e{i}, e{i}]; the bracket is alternating")
        if (i, j) in brackets or (j, i) in brackets:
            raise InvariantViolation(f"{where}: duplicate entry for the pair ({i}, {j})")
        brackets[(i, j)] = _vector(coeffs, n, f"{where}[2]")
    alpha = _rows(doc["alpha"], n, "alpha")
    if len(alpha) != n:
        raise ParseError(f"alpha: expected {n} rows")
    return _wrap(lambda: HomLieAlgebra(f, n, brackets, Matrix(f, tuple(alpha), n), name), "algebra")


def serialize_algebra(A: HomLieAlgebra) -> str:
    return dumps(algebra_to_doc(A))


def parse_algebra(text: str) -> HomLieAlgebra:
    return algebra_from_doc(_loads(text))


# ---------------------------------------------------------------------------
# Subspaces


def subspace_to_doc(S: Subspace) -> dict:
    return {"field": field_doc(S.field), "dim": S.ambient_dim,
            "basis": [[scalar_str(c) for c in b] for b in S.basis]}


def subspace_from_doc(doc) -> Subspace:
    _keys(doc, SUBSPACE_KEYS, SUBSPACE_KEYS, "subspace")
    f = _field(doc["field"])
    n = _dim(doc["dim"])
    rows = _rows(doc["basis"], n, "basis")
    return _wrap(lambda: Subspace(f, n, tuple(rows)), "subspace")


def parse_subspace(text: str) -> Subspace:
    return subspace_from_doc(_loads(text))


def serialize_subspace(S: Subspace) -> str:
    return dumps(subspace_to_doc(S))


# ---------------------------------------------------------------------------
# Flags


def flag_to_doc(mu: FuzzyFlag) -> dict:
    return {
        "field": field_doc(mu.field),
        "dim": mu.dim,
        "chain": [{"level": scalar_str(t), "basis": [[scalar_str(c) for c in b] for b in S.basis]}
                  for S, t in mu.chain],
        "baseline": None if mu.baseline is None else scalar_str(mu.baseline),
    }


def flag_from_doc(doc) -> FuzzyFlag:
    _keys(doc, FLAG_KEYS, {"field", "dim", "chain"}, "flag")
    f = _field(doc["field"])
    n = _dim(doc["dim"])
    if not isinstance(doc["chain"], list):
        raise ParseError("chain: expected a list")
    chain = []
    for k, entry in enumerate(doc["chain"]):
        where = f"chain[{k}]"
        _keys(entry, {"level", "basis"}, {"level", "basis"}, where)
        t = _scalar(entry["level"], f"{where}.level")
        rows = _rows(entry["basis"], n, f"{where}.basis")
        chain.append((_wrap(lambda: Subspace(f, n, tuple(rows)), where), t))
    baseline = doc.get("baseline")
    if baseline is not None:
        baseline = _scalar(baseline, "baseline")
    return _wrap(lambda: FuzzyFlag(f, n, tuple(chain), baseline), "flag")


def serialize_flag(mu: FuzzyFlag) -> str:
    return dumps(flag_to_doc(mu))


def parse_flag(text: str) -> FuzzyFlag:
    return flag_from_doc(_loads(text))


# ---------------------------------------------------------------------------
# Morphisms


def morphism_to_doc(m: Morphism, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref if source_ref is not None else algebra_to_doc(m.source),
        "target": target_ref if target_ref is not None else algebra_to_doc(m.target),
        "matrix": [[scalar_str(c) for c in row] for row in m.map.rows],
    }


def morphism_from_doc(doc, base_dir: str = ".", certify: bool = True) -> Morphism:
    """``source``/``target`` are file paths (relative to ``base_dir``) or inline algebras."""
    _keys(doc, MORPHISM_KEYS, MORPHISM_KEYS, "morphism")
    ends = []
    for key in ("source", "target"):
        ref = doc[key]
        if isinstance(ref, str):
            path = os.path.join(base_dir, ref)
            try:
                with open(path, encoding="utf-8") as fh:
                    ends.append(parse_algebra(fh.read()))
            except OSError as e:
                raise ParseError(f"{key}: cannot read {path}: {e.strerror}") from None
        else:
            ends.append(algebra_from_doc(ref))
    A, B = ends
    if A.field != B.field:
        raise InvariantViolation("source and target are over different fields")
    rows = _rows(doc["matrix"], A.dim, "matrix")
    if len(rows) != B.dim:
        raise ParseError(f"matrix: expected {B.dim} rows")
    M = _wrap(lambda: Matrix(A.field, tuple(rows), A.dim), "matrix")
    if certify:
        return _wrap(lambda: Morphism.certify(M, A, B), "morphism")
    return Morphism(A, B, M)


def parse_morphism(text: str, base_dir: str = ".", certify: bool = True) -> Morphism:
    return morphism_from_doc(_loads(text), base_dir, certify)


def serialize_morphism(m: Morphism, source_ref=None, target_ref=None) -> str:
    return dumps(morphism_to_doc(m, source_ref, target_ref))
