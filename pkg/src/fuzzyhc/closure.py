"""Max-min composition and transitive closure of fuzzy relations."""

from __future__ import annotations

import numpy as np

from .relation import FuzzyRelation

FIXPOINT_TOL = 1e-12
ORACLE_LIMIT = 10


def _check_pair(r: FuzzyRelation, s: FuzzyRelation):
    if not r.same_shape(s):
        raise ValueError(f"size mismatch: {r.size} vs {s.size} (or differing labels)")


def max_min_compose(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    """T[i, k] = max_j min(R[i, j], S[j, k])."""
    _check_pair(r, s)
    a, b = r.values, s.values
    out = np.empty_like(a)
    # row at a time keeps memory O(n^2)
    for i in range(len(a)):
        out[i] = np.max(np.minimum(a[i][:, None], b), axis=0)
    return FuzzyRelation(out, r.labels)


def fuzzy_union(r: FuzzyRelation, s: FuzzyRelation) -> FuzzyRelation:
    _check_pair(r, s)
    return FuzzyRelation(np.maximum(r.values, s.values), r.labels)


def transitive_closure(r: FuzzyRelation) -> tuple[FuzzyRelation, int]:
    """Iterate R <- R u (R o R) until nothing changes.

    Returns the closure and the number of rounds performed; an already
    transitive relation takes one round. Since each round squares the
    relation, a reflexive input needs at most ceil(log2 n) + 1 rounds.
    """
    if not (r.is_reflexive() and r.is_symmetric()):
        raise ValueError("transitive_closure expects a reflexive, symmetric relation")
    rounds = 0
    while True:
        rounds += 1
        nxt = fuzzy_union(r, max_min_compose(r, r))
        if np.all(np.abs(nxt.values - r.values) <= FIXPOINT_TOL):
            return nxt, rounds
        r = nxt


def is_max_min_transitive(r: FuzzyRelation, tol: float = FIXPOINT_TOL) -> bool:
    composed = max_min_compose(r, r).values
    return bool(np.all(r.values >= composed - tol))


def path_strength_oracle(r: FuzzyRelation) -> FuzzyRelation:
    """Strongest-path relation by enumerating every simple path.

    Entry (i, k) is the best, over all simple paths i -> k, of the weakest
    edge on the path. Exponential in n, so limited to small relations;
    meant as a test oracle.
    """
    n = r.size
    if n > ORACLE_LIMIT:
        raise ValueError(f"oracle limit: enumeration supports n <= {ORACLE_LIMIT}, got {n}")
    w = r.values.tolist()
    best = [[0.0] * n for _ in range(n)]

    def walk(start, node, weakest, visited):
        if weakest > best[start][node]:
            best[start][node] = weakest
        for nxt in range(n):
            if not visited & (1 << nxt):
                walk(start, nxt, min(weakest, w[node][nxt]), visited | (1 << nxt))

    for i in range(n):
        walk(i, i, w[i][i], 1 << i)
    return FuzzyRelation(best, r.labels)


def minimax_path_strength(r: FuzzyRelation) -> FuzzyRelation:
    """Strongest-path relation in O(n^3) via Floyd-Warshall on (max, min)."""
    w = np.array(r.values)
    for k in range(len(w)):
        w = np.maximum(w, np.minimum(w[:, k][:, None], w[k, :][None, :]))
    return FuzzyRelation(w, r.labels)
