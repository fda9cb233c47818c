"""Command-line interface.

Every subcommand prints a JSON report to stdout.  Exit status: 0 when the
verdict is true, 1 when it is false (or a counterexample was found), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import io
from .errors import FuzzyHomLieError
from .exact import DEFAULT_CAP
from .fuzzy import (
    fuzzy_direct_sum,
    is_fuzzy_ideal,
    is_fuzzy_subalgebra,
    pullback,
    pushforward,
    recognize,
    strong_upper_level,
    table_from_flag,
    upper_level,
)
from .homlie import Mode, check_axioms, closure_defect, direct_sum_algebras, is_morphism
from .oracle import (
    POINTWISE_LIMIT,
    FindingKind,
    InstanceParams,
    make_batch,
    pointwise_check,
    search_ideal_sum_counterexample,
    theorem_suite,
)


class _Inputs:
    """Reads input files and remembers their content hashes."""

    def __init__(self):
        self.seen = []

    def read(self, path: str) -> str:
        with open(path, "rb") as fh:
            data = fh.read()
        self.seen.append({"path": path, "sha256": hashlib.sha256(data).hexdigest()})
        return data.decode("utf-8")

    def algebra(self, path):
        return io.parse_algebra(self.read(path))

    def flag(self, path):
        return io.parse_flag(self.read(path))

    def subspace(self, path):
        return io.parse_subspace(self.read(path))

    def morphism(self, path):
        doc = io._loads(self.read(path))
        base = os.path.dirname(path)
        for key in ("source", "target"):
            if isinstance(doc.get(key), str):
                self.read(os.path.join(base, doc[key]))
        return io.morphism_from_doc(doc, base, certify=False)


def _vec(v):
    return [str(c) for c in v]


def _witness(w):
    if w is None:
        return None
    return [w[0]] + [_vec(x) for x in w[1:]]


def _fuzzy_verdict(mu, A, mode: Mode):
    rep = recognize(mu, A, mode)
    out = {"mode": mode.value, "ok": rep.ok}
    if not rep.ok:
        out["level"] = str(rep.level)
        out["witness"] = _witness(rep.witness)
    return out


# ---------------------------------------------------------------------------
# Subcommands; each returns (verdict, result)


def cmd_validate(args, inp, cap):
    A = inp.algebra(args.algebra)
    rep = check_axioms(A)
    return rep.valid, {"dim": A.dim, "failures": [
        {"kind": f.kind.value, "witness": list(f.witness), "defect": _vec(f.defect)} for f in rep.failures]}


def _check_subspace(args, inp, mode):
    A = inp.algebra(args.algebra)
    H = inp.subspace(args.subspace)
    w = closure_defect(A, H, mode)
    return w is None, {"mode": mode.value, "rank": H.rank, "witness": _witness(w)}


def cmd_check_sub(args, inp, cap):
    return _check_subspace(args, inp, Mode.SUBALGEBRA)


def cmd_check_ideal(args, inp, cap):
    return _check_subspace(args, inp, Mode.IDEAL)


def cmd_fuzzy_check(args, inp, cap):
    A = inp.algebra(args.algebra)
    mu = inp.flag(args.flag)
    mode = Mode(args.mode)
    result = _fuzzy_verdict(mu, A, mode)
    verdict = result["ok"]
    if A.field.is_finite and A.field.p**A.dim <= min(cap, POINTWISE_LIMIT):
        pw = pointwise_check(table_from_flag(mu, cap=cap), A, mode)
        result["pointwise"] = pw.to_doc()
        verdict = verdict and pw.ok
    return verdict, result


def cmd_levels(args, inp, cap):
    mu = inp.flag(args.flag)
    t = Fraction(args.t)
    cut = (strong_upper_level if args.strict else upper_level)(mu, t)
    result = {"t": str(t), "strict": args.strict,
              "subspace": None if cut is None else io.subspace_to_doc(cut)}
    return cut is not None, result


def cmd_direct_sum(args, inp, cap):
    algebras = [inp.algebra(p) for p in args.algebras]
    S = direct_sum_algebras(algebras)
    valid = check_axioms(S).valid
    result = {"algebra": io.algebra_to_doc(S), "valid": valid}
    verdict = valid
    if args.flags:
        if len(args.flags) != len(algebras):
            raise FuzzyHomLieError("--flags needs one flag per algebra")
        flags = [inp.flag(p) for p in args.flags]
        nu = fuzzy_direct_sum(flags)
        result["flag"] = io.flag_to_doc(nu)
        result["subalgebra"] = bool(is_fuzzy_subalgebra(nu, S))
        result["ideal"] = bool(is_fuzzy_ideal(nu, S))
        verdict = verdict and result["subalgebra"]
    return verdict, result


def _transport(args, inp, push: bool):
    f = inp.morphism(args.morphism)
    mu = inp.flag(args.flag)
    if not is_morphism(f.map, f.source, f.target):
        return False, {"morphism": False}
    f = type(f).certify(f.map, f.source, f.target)
    here, there = (f.source, f.target) if push else (f.target, f.source)
    nu = (pushforward if push else pullback)(f, mu)
    result = {
        "morphism": True,
        "surjective": f.is_surjective,
        "flag": io.flag_to_doc(nu),
        "input": {"subalgebra": bool(is_fuzzy_subalgebra(mu, here)), "ideal": bool(is_fuzzy_ideal(mu, here))},
        "output": {"subalgebra": bool(is_fuzzy_subalgebra(nu, there)), "ideal": bool(is_fuzzy_ideal(nu, there))},
    }
    return True, result


def cmd_push(args, inp, cap):
    return _transport(args, inp, True)


def cmd_pull(args, inp, cap):
    return _transport(args, inp, False)


def cmd_suite(args, inp, cap):
    batch = make_batch(args.seeds, primes=(args.p,), max_dim=args.dim, seed=args.seed)
    report = theorem_suite(batch, morphism_cap=args.morphism_cap, cap=cap)
    return report.ok, report.to_doc()


def cmd_search(args, inp, cap):
    mode = Mode.IDEAL if args.mode == "ideal-sum" else Mode.SUBALGEBRA
    params = InstanceParams(args.p, args.dim, seed=args.seed)
    finding = search_ideal_sum_counterexample(params, args.budget, mode)
    return finding.kind is FindingKind.EXHAUSTED, finding.to_doc()


COMMANDS = {
    "validate": cmd_validate,
    "check-sub": cmd_check_sub,
    "check-ideal": cmd_check_ideal,
    "fuzzy-check": cmd_fuzzy_check,
    "levels": cmd_levels,
    "direct-sum": cmd_direct_sum,
    "push": cmd_push,
    "pull": cmd_pull,
    "suite": cmd_suite,
    "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzyhomlie", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default 10^6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check skew-symmetry and the Hom-Jacobi identity")
    p.add_argument("algebra")
    for name in ("check-sub", "check-ideal"):
        p = sub.add_parser(name, help=f"decide whether a subspace is a Hom-Lie {name[6:]}")
        p.add_argument("algebra")
        p.add_argument("subspace")
    p = sub.add_parser("fuzzy-check", help="decide whether a flag is a fuzzy subalgebra/ideal")
    p.add_argument("algebra")
    p.add_argument("flag")
    p.add_argument("--mode", choices=["sub", "ideal"], default="sub")
    p = sub.add_parser("levels", help="upper (or strong upper) level cut of a flag")
    p.add_argument("flag")
    p.add_argument("--t", required=True, help="level as an exact fraction, e.g. 2/5")
    p.add_argument("--strict", action="store_true")
    p = sub.add_parser("direct-sum", help="direct sum of algebras and, optionally, of flags")
    p.add_argument("algebras", nargs="+")
    p.add_argument("--flags", nargs="+")
    for name in ("push", "pull"):
        p = sub.add_parser(name, help=f"{name} a flag along a morphism")
        p.add_argument("morphism")
        p.add_argument("flag")
    p = sub.add_parser("suite", help="run the seeded theorem suite")
    p.add_argument("--seeds", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--morphism-cap", type=int, default=512)
    p = sub.add_parser("search", help="search for a direct sum of fuzzy ideals that is not one")
    p.add_argument("--mode", choices=["ideal-sum", "sub-sum"], default="ideal-sum")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--dim", type=int, default=2)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    inp = _Inputs()
    start = time.perf_counter()
    try:
        verdict, result = COMMANDS[args.command](args, inp, args.cap)
    except (FuzzyHomLieError, OSError, ValueError) as e:
        print(f"fuzzyhomlie {args.command}: {e}", file=sys.stderr)
        return 2
    report = {
        "command": args.command,
        "argv": argv,
        "inputs": inp.seen,
        "verdict": bool(verdict),
        "result": result,
        "timing_seconds": round(time.perf_counter() - start, 6),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if verdict else 1


if __name__ == "__main__":
    sys.exit(main())
