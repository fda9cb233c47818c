"""CLI invocations whose reports are frozen under tests/golden (run from the repo root)."""

CASES = {
    "validate": (["validate", "data/example.alg"], 0),
    "check_sub": (["check-sub", "data/example.alg", "data/span_e1_e2.sub"], 0),
    "check_ideal_fails": (["check-ideal", "data/example.alg", "data/span_e3.sub"], 1),
    "fuzzy_ideal_gf5": (["fuzzy-check", "--mode", "ideal", "data/example_gf5.alg",
                         "data/example_gf5.flag"], 0),
    "fuzzy_ideal_fails": (["fuzzy-check", "--mode", "ideal", "data/example.alg", "data/span_e3.flag"], 1),
    "fuzzy_sub": (["fuzzy-check", "data/example.alg", "data/span_e3.flag"], 0),
    "levels": (["levels", "data/example.flag", "--t", "2/5"], 0),
    "levels_strict_empty": (["levels", "data/example.flag", "--t", "4/5", "--strict"], 1),
    "direct_sum": (["direct-sum", "data/example.alg", "data/example.alg",
                    "--flags", "data/example.flag", "data/span_e3.flag"], 0),
    "push": (["push", "data/quotient.morph", "data/example.flag"], 0),
    "pull": (["pull", "data/identity.morph", "data/span_e3.flag"], 0),
    "suite": (["suite", "--seeds", "4", "--p", "2", "--dim", "2", "--morphism-cap", "16"], 0),
    "search": (["search", "--budget", "20", "--seed", "1"], 0),
}


def strip_timing(text: str) -> str:
    return "".join(line for line in text.splitlines(keepends=True) if '"timing_seconds"' not in line)
