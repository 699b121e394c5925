"""Shared generators for the test suite.

Randomized tests draw either honest diagrams (via random_multistring) or
synthetic woven based matrices built directly from random weaving tables;
the synthetic ones give much denser eligibility for intersection moves.
"""

from __future__ import annotations

import random

import pytest

from vstrings.diagram import Multistring, random_multistring
from vstrings.homology import MatrixMove, apply_matrix_move
from vstrings.pairing import (WovenBasedMatrix, base, self_arrow,
                              validate_woven, weaving)


def diagrams(count: int, seed: int = 0, max_n: int = 3, max_m: int = 7):
    """Deterministic stream of random diagrams."""
    out = []
    for k in range(count):
        n = 1 + (seed + k) % max_n
        m = (seed + 3 * k) % (max_m + 1)
        out.append(random_multistring(n, m, seed=seed * 1000 + k))
    return out


def random_woven(seed: int, n: int = 2, selfs: int = 3,
                 xs: int = 4) -> WovenBasedMatrix:
    """Valid woven matrix with random weaving table and component blocks."""
    rng = random.Random(seed)
    comps = []
    for i in range(n):
        k = rng.randrange(selfs + 1)
        comps.append((base(i),)
                     + tuple(self_arrow(i, f"g{i}_{t}") for t in range(k)))
    weav = tuple(weaving(f"x{j}") for j in range(xs))
    order = [e for c in comps for e in c] + list(weav)
    idx = {e: k for k, e in enumerate(order)}
    size = len(order)
    rows = [[0] * size for _ in range(size)]

    def put(a, b, v):
        rows[idx[a]][idx[b]] = v
        rows[idx[b]][idx[a]] = -v

    gs = [e for c in comps for e in c]
    for a in range(len(gs)):
        for b in range(a + 1, len(gs)):
            put(gs[a], gs[b], rng.randrange(-2, 3))
    for x in weav:
        if n >= 2:
            i, j = sorted(rng.sample(range(n), 2))
        else:
            i = j = 0
        v = rng.choice((1, -1, 2, -2)) if n >= 2 else 0
        if n >= 2:
            put(base(i), x, v)
            put(base(j), x, -v)
            for ci, sign in ((i, v), (j, -v)):
                for g in comps[ci][1:]:
                    put(g, x, rng.choice((0, sign)))
    T = WovenBasedMatrix(tuple(comps), weav, tuple(tuple(r) for r in rows))
    assert validate_woven(T) == []
    return T


def random_m3_assignment(T: WovenBasedMatrix, j: int, rng: random.Random):
    """Valid free values for a complementary-pair extension in component j."""
    s = base(j)
    assignment = []
    for a in T.order:
        if a[0] == "x":
            w = T.b(s, a)
            assignment.append((a, rng.choice((0, w)) if w else 0))
        else:
            assignment.append((a, rng.randrange(-2, 3)))
    return tuple(assignment)


def random_m4_assignment(T: WovenBasedMatrix, rng: random.Random):
    """Valid column values for a sum-annihilating pair extension."""
    if T.n < 2:
        raise ValueError("M4 needs at least two components")
    i, j = sorted(rng.sample(range(T.n), 2))
    v = rng.choice((1, -1))
    assignment = []
    for ci, comp in enumerate(T.components):
        if ci == i:
            w = v
        elif ci == j:
            w = -v
        else:
            w = 0
        assignment.append((comp[0], w))
        for g in comp[1:]:
            assignment.append((g, rng.choice((0, w)) if w else 0))
    return tuple(assignment)


def fresh_self(T: WovenBasedMatrix, j: int, tag: str):
    used = {e[2] for comp in T.components for e in comp[1:]}
    k = 0
    while f"{tag}{k}" in used:
        k += 1
    return self_arrow(j, f"{tag}{k}")


def fresh_weaving(T: WovenBasedMatrix, tag: str):
    used = {x[1] for x in T.weaving}
    k = 0
    while f"{tag}{k}" in used:
        k += 1
    return weaving(f"{tag}{k}")


def add_complementary_pair(T: WovenBasedMatrix, j: int,
                           rng: random.Random) -> tuple:
    g1 = fresh_self(T, j, "c")
    g2 = self_arrow(j, g1[2] + "b")
    mv = MatrixMove("M3", (g1, g2), random_m3_assignment(T, j, rng))
    return apply_matrix_move(T, mv), g1, g2
