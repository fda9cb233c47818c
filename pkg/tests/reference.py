"""Slow pure-Python referees shared by several test modules."""

from fuzzyhomlie import bracket, evaluate
from fuzzyhomlie.exact import all_vectors


def brute_recognize(mu, A, ideal):
    """Every pointwise inequality over all pairs of vectors."""
    return brute_recognize_table({x: evaluate(mu, x) for x in all_vectors(A.field, A.dim)}, A, ideal)


def brute_recognize_table(val, A, ideal):
    p = A.field.p
    vs = list(val)
    comb = max if ideal else min
    for x in vs:
        if val[A.twist(x)] < val[x]:
            return False
        if any(val[tuple(c * a % p for a in x)] < val[x] for c in range(p)):
            return False
        for y in vs:
            if val[tuple((a + b) % p for a, b in zip(x, y))] < min(val[x], val[y]):
                return False
            if val[bracket(A, x, y)] < comb(val[x], val[y]):
                return False
    return True
