"""Move calculus on woven based matrices.

Extensions add distinguished elements (annihilating, core, complementary
pairs in a component; sum-annihilating pairs in the weaving set); their
inverses remove them.  Intersection moves switch the weaving values of an
eligible pair in one self-arrow row.  Reduction walks the closure of a
matrix under intersection moves looking for an applicable inverse extension
and repeats until none exists anywhere in the closure; the result is the
primitive representative, delivered with a replayable certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .pairing import (Element, WovenBasedMatrix, base, display_name,
                      element_from_json, element_to_json, validate_woven)

DEFAULT_CAP = 10 ** 6

EXTENSIONS = ("M1", "M2", "M3", "M4")
INVERSES = ("M1^-1", "M2^-1", "M3^-1", "M4^-1")
INTERSECTIONS = ("I1", "I2")


class MatrixMoveError(ValueError):
    """A matrix move whose arguments do not match the matrix."""


class ReductionUndetermined(RuntimeError):
    """Orbit cap exhausted before primitivity could be decided."""

    def __init__(self, message: str, partial: "MoveCertificate"):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class MatrixMove:
    """One elementary extension, inverse extension, or intersection move.

    ``elements``: M1/M2 the added or removed element; M3/M4 the pair;
    I1/I2 the triple (g, x1, x2).  ``assignment`` carries the free values an
    M3/M4 extension leaves open: the full row of the first new element over
    the old elements, as (element, value) pairs.
    """

    kind: str
    elements: tuple[Element, ...]
    assignment: tuple[tuple[Element, int], ...] = ()

    def describe(self) -> str:
        names = " ".join(display_name(e) for e in self.elements)
        if self.assignment:
            vals = ",".join(f"{display_name(e)}:{v}" for e, v in self.assignment)
            return f"{self.kind} {names} [{vals}]"
        return f"{self.kind} {names}"

    def to_json(self) -> dict:
        doc = {"kind": self.kind,
               "elements": [element_to_json(e) for e in self.elements]}
        if self.assignment:
            doc["assignment"] = [[element_to_json(e), v]
                                 for e, v in self.assignment]
        return doc

    @staticmethod
    def from_json(doc: dict) -> "MatrixMove":
        return MatrixMove(
            doc["kind"],
            tuple(element_from_json(e) for e in doc["elements"]),
            tuple((element_from_json(e), v)
                  for e, v in doc.get("assignment", ())))


# ---------------------------------------------------------------------------
# Distinguished elements
# ---------------------------------------------------------------------------

def is_annihilating(T: WovenBasedMatrix, g: Element) -> bool:
    return g[0] == "g" and not any(T.row(g))


def is_core(T: WovenBasedMatrix, g: Element) -> bool:
    return g[0] == "g" and T.row(g) == T.row(base(g[1]))


def is_complementary(T: WovenBasedMatrix, g1: Element, g2: Element) -> bool:
    if g1 == g2 or g1[0] != "g" or g2[0] != "g" or g1[1] != g2[1]:
        return False
    srow = T.row(base(g1[1]))
    r1, r2 = T.row(g1), T.row(g2)
    return all(a + b == c for a, b, c in zip(r1, r2, srow))


def is_sum_annihilating(T: WovenBasedMatrix, x1: Element, x2: Element) -> bool:
    if x1 == x2 or x1[0] != "x" or x2[0] != "x":
        return False
    return all(a + b == 0 for a, b in zip(T.row(x1), T.row(x2)))


def is_g_annihilating(T: WovenBasedMatrix, g: Element,
                      x1: Element, x2: Element) -> bool:
    if x1 == x2 or g[0] != "g":
        return False
    s = base(g[1])
    return (T.b(g, x1) + T.b(g, x2) == 0
            and T.b(s, x1) + T.b(s, x2) == 0)


def is_g_unequal(T: WovenBasedMatrix, g: Element,
                 x1: Element, x2: Element) -> bool:
    if x1 == x2 or g[0] != "g":
        return False
    s = base(g[1])
    return T.b(g, x1) != T.b(g, x2) and T.b(s, x1) == T.b(s, x2)


@dataclass(frozen=True)
class DistinguishedElements:
    annihilating: tuple[Element, ...]
    core: tuple[Element, ...]
    complementary: tuple[tuple[Element, Element], ...]
    sum_annihilating: tuple[tuple[Element, Element], ...]
    g_annihilating: tuple[tuple[Element, tuple[Element, Element]], ...]
    g_unequal: tuple[tuple[Element, tuple[Element, Element]], ...]


def classify(T: WovenBasedMatrix) -> DistinguishedElements:
    """All distinguished elements and eligible weaving pairs, in fixed order."""
    gs = [e for comp in T.components for e in comp[1:]]
    ann = tuple(g for g in gs if is_annihilating(T, g))
    core = tuple(g for g in gs if is_core(T, g))
    comp_pairs = tuple((g1, g2) for g1, g2 in combinations(gs, 2)
                       if is_complementary(T, g1, g2))
    sum_ann = tuple((x1, x2) for x1, x2 in combinations(T.weaving, 2)
                    if is_sum_annihilating(T, x1, x2))
    g_ann = []
    g_une = []
    for g in gs:
        for x1, x2 in combinations(T.weaving, 2):
            if is_g_annihilating(T, g, x1, x2):
                g_ann.append((g, (x1, x2)))
            if is_g_unequal(T, g, x1, x2):
                g_une.append((g, (x1, x2)))
    return DistinguishedElements(ann, core, comp_pairs, sum_ann,
                                 tuple(g_ann), tuple(g_une))


# ---------------------------------------------------------------------------
# Applying moves
# ---------------------------------------------------------------------------

def _remove(T: WovenBasedMatrix, drop: set[Element]) -> WovenBasedMatrix:
    keep = [i for i, el in enumerate(T.order) if el not in drop]
    comps = tuple(tuple(e for e in comp if e not in drop)
                  for comp in T.components)
    xs = tuple(x for x in T.weaving if x not in drop)
    entries = tuple(tuple(T.entries[i][j] for j in keep) for i in keep)
    return WovenBasedMatrix(comps, xs, entries)


def _extend(T: WovenBasedMatrix, news: Sequence[Element],
            rowmaps: Sequence[dict[Element, int]]) -> WovenBasedMatrix:
    """Add elements with given rows; rowmaps may reference the other newcomer."""
    for el in news:
        if el in T.index:
            raise MatrixMoveError(f"element {display_name(el)} already present")
    comps = [list(c) for c in T.components]
    xs = list(T.weaving)
    for el in news:
        if el[0] == "g":
            if not (0 <= el[1] < T.n):
                raise MatrixMoveError(f"no component {el[1]}")
            block = comps[el[1]]
            spot = next((k for k in range(1, len(block))
                         if block[k][2] > el[2]), len(block))
            block.insert(spot, el)
        elif el[0] == "x":
            spot = next((k for k in range(len(xs)) if xs[k][1] > el[1]),
                        len(xs))
            xs.insert(spot, el)
        else:
            raise MatrixMoveError("cannot add a base element")
    order = [e for c in comps for e in c] + xs
    idx = {e: k for k, e in enumerate(order)}
    size = len(order)
    rows = [[0] * size for _ in range(size)]
    for e1 in T.order:
        for e2 in T.order:
            rows[idx[e1]][idx[e2]] = T.b(e1, e2)
    for el, rm in zip(news, rowmaps):
        for other, v in rm.items():
            rows[idx[el]][idx[other]] = v
            rows[idx[other]][idx[el]] = -v
    return WovenBasedMatrix(tuple(tuple(c) for c in comps), tuple(xs),
                            tuple(tuple(r) for r in rows))


def _weaving_row_ok(T: WovenBasedMatrix, comp: int,
                    rowmap: dict[Element, int]) -> bool:
    s = base(comp)
    return all(rowmap.get(x, 0) in (0, T.b(s, x)) for x in T.weaving)


def apply_matrix_move(T: WovenBasedMatrix, mv: MatrixMove) -> WovenBasedMatrix:
    """Apply one matrix move, checking its precondition and the axioms."""
    if mv.kind == "M1":
        (g,) = mv.elements
        if g[0] != "g":
            raise MatrixMoveError("M1 adds a component element")
        out = _extend(T, [g], [{}])
    elif mv.kind == "M2":
        (g,) = mv.elements
        if g[0] != "g":
            raise MatrixMoveError("M2 adds a component element")
        rowmap = {a: T.b(base(g[1]), a) for a in T.order}
        out = _extend(T, [g], [rowmap])
    elif mv.kind == "M3":
        g1, g2 = mv.elements
        if g1[0] != "g" or g2[0] != "g" or g1[1] != g2[1] or g1 == g2:
            raise MatrixMoveError("M3 adds two distinct elements of one component")
        j = g1[1]
        row1 = dict(mv.assignment)
        if set(row1) != set(T.order):
            raise MatrixMoveError("M3 assignment must cover the old elements")
        row2 = {a: T.b(base(j), a) - row1[a] for a in T.order}
        if not (_weaving_row_ok(T, j, row1) and _weaving_row_ok(T, j, row2)):
            raise MatrixMoveError("M3 assignment breaks the weaving axioms")
        row1 = dict(row1)
        row1[g2] = row1[base(j)]  # forced by complementarity at the newcomers
        out = _extend(T, [g1, g2], [row1, row2])
        if not is_complementary(out, g1, g2):
            raise MatrixMoveError("M3 assignment is not complementary")
    elif mv.kind == "M4":
        x1, x2 = mv.elements
        if x1[0] != "x" or x2[0] != "x" or x1 == x2:
            raise MatrixMoveError("M4 adds two distinct weaving elements")
        col1 = dict(mv.assignment)
        gs = [e for comp in T.components for e in comp]
        if set(col1) != set(gs):
            raise MatrixMoveError("M4 assignment must cover the non-weaving elements")
        hot = [i for i in range(T.n) if col1[base(i)] != 0]
        if len(hot) != 2:
            raise MatrixMoveError("M4 pair must join exactly two components")
        i, j = hot
        if col1[base(i)] != -col1[base(j)]:
            raise MatrixMoveError("M4 base values must cancel")
        for ci in range(T.n):
            allowed = (0, col1[base(ci)])
            for g in T.components[ci][1:]:
                if col1[g] not in allowed:
                    raise MatrixMoveError("M4 assignment breaks the weaving axioms")
        row1 = {a: -col1[a] for a in gs}  # row of x1 = minus its column
        row2 = {a: col1[a] for a in gs}
        out = _extend(T, [x1, x2], [row1, row2])
        if not is_sum_annihilating(out, x1, x2):
            raise MatrixMoveError("M4 pair is not sum-annihilating")
    elif mv.kind == "M1^-1":
        (g,) = mv.elements
        if not is_annihilating(T, g):
            raise MatrixMoveError(f"{display_name(g)} is not annihilating")
        out = _remove(T, {g})
    elif mv.kind == "M2^-1":
        (g,) = mv.elements
        if not is_core(T, g):
            raise MatrixMoveError(f"{display_name(g)} is not core")
        out = _remove(T, {g})
    elif mv.kind == "M3^-1":
        g1, g2 = mv.elements
        if not is_complementary(T, g1, g2):
            raise MatrixMoveError("not a complementary pair")
        out = _remove(T, {g1, g2})
    elif mv.kind == "M4^-1":
        x1, x2 = mv.elements
        if not is_sum_annihilating(T, x1, x2):
            raise MatrixMoveError("not a sum-annihilating pair")
        out = _remove(T, {x1, x2})
    elif mv.kind in INTERSECTIONS:
        g, x1, x2 = mv.elements
        pred = is_g_annihilating if mv.kind == "I1" else is_g_unequal
        if not pred(T, g, x1, x2):
            eligible = "g-annihilating" if mv.kind == "I1" else "g-unequal"
            raise MatrixMoveError(
                f"({display_name(x1)}, {display_name(x2)}) is not "
                f"{eligible} for {display_name(g)}")
        s = base(g[1])
        rows = [list(r) for r in T.entries]
        gi = T.index[g]
        for x in (x1, x2):
            xi = T.index[x]
            new = T.b(s, x) - T.b(g, x)
            rows[gi][xi] = new
            rows[xi][gi] = -new
        out = WovenBasedMatrix(T.components, T.weaving,
                               tuple(tuple(r) for r in rows))
    else:
        raise MatrixMoveError(f"unknown move kind {mv.kind!r}")

    bad = validate_woven(out)
    if bad:
        raise MatrixMoveError("move breaks the axioms: " + "; ".join(bad))
    return out


def apply_sequence(T: WovenBasedMatrix,
                   moves: Iterable[MatrixMove]) -> WovenBasedMatrix:
    for mv in moves:
        T = apply_matrix_move(T, mv)
    return T


def enumerate_intersection_moves(T: WovenBasedMatrix) -> tuple[MatrixMove, ...]:
    """Applicable I1/I2 moves in fixed order, identity switches skipped."""
    out = []
    for comp in T.components:
        s = comp[0]
        for g in comp[1:]:
            for x1, x2 in combinations(T.weaving, 2):
                if T.b(s, x1) == 0 and T.b(s, x2) == 0:
                    continue
                if is_g_annihilating(T, g, x1, x2):
                    out.append(MatrixMove("I1", (g, x1, x2)))
                if is_g_unequal(T, g, x1, x2):
                    out.append(MatrixMove("I2", (g, x1, x2)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Sequence normalization
# ---------------------------------------------------------------------------

def normalize_move_sequence(seq: Sequence[MatrixMove],
                            T: WovenBasedMatrix) -> tuple[MatrixMove, ...]:
    """Equivalent reduced sequence: one block per touched element, each block
    using every weaving element at most once.

    Moves on distinct elements commute; within a block, moves sharing both
    weaving elements cancel and moves sharing one merge (same kinds compose
    to I2, different kinds to I1).  Replays to the same matrix, checked.
    """
    target = apply_sequence(T, seq)

    buckets: dict[Element, list[tuple[str, frozenset]]] = {}
    order: list[Element] = []
    for mv in seq:
        if mv.kind not in INTERSECTIONS:
            raise MatrixMoveError("normalization takes intersection moves only")
        g, x1, x2 = mv.elements
        if T.b(base(g[1]), x1) == 0 and T.b(base(g[1]), x2) == 0:
            continue  # identity switch
        if g not in buckets:
            buckets[g] = []
            order.append(g)
        buckets[g].append((mv.kind, frozenset((x1, x2))))

    out: list[MatrixMove] = []
    for g in order:
        items = buckets[g]
        while True:
            hit = None
            for i in range(len(items)):
                for j in range(i + 1, len(items)):
                    if items[i][1] & items[j][1]:
                        if hit is None or j - i < hit[1] - hit[0]:
                            hit = (i, j)
                        break
            if hit is None:
                break
            i, j = hit
            (k1, p1), (k2, p2) = items[i], items[j]
            del items[j]
            del items[i]
            if p1 == p2:
                if k1 != k2:
                    raise MatrixMoveError("invalid sequence: pair switched kind")
                continue
            merged = ("I2" if k1 == k2 else "I1", p1 ^ p2)
            items.insert(i, merged)
        for kind, pair in items:
            x1, x2 = sorted(pair)
            out.append(MatrixMove(kind, (g, x1, x2)))

    if apply_sequence(T, out) != target:
        raise MatrixMoveError("normalization failed to replay")
    return tuple(out)


# ---------------------------------------------------------------------------
# Orbit machinery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _MoveSpace:
    """Dynamic part of a matrix under intersection moves: the (g, x) block."""

    rows: tuple[Element, ...]
    cols: tuple[Element, ...]
    wrows: tuple[tuple[int, ...], ...]

    @staticmethod
    def of(T: WovenBasedMatrix) -> tuple["_MoveSpace", tuple]:
        rows = tuple(e for comp in T.components for e in comp[1:])
        cols = T.weaving
        wrows = tuple(tuple(T.b(base(g[1]), x) for x in cols) for g in rows)
        state = tuple(tuple(T.b(g, x) for x in cols) for g in rows)
        return _MoveSpace(rows, cols, wrows), state


def _successors(space: _MoveSpace, state: tuple):
    """Yield (move, new_state) for every non-identity intersection move."""
    ncols = len(space.cols)
    for ri in range(len(space.rows)):
        vals = state[ri]
        w = space.wrows[ri]
        for c1 in range(ncols):
            for c2 in range(c1 + 1, ncols):
                w1, w2 = w[c1], w[c2]
                if w1 == 0 and w2 == 0:
                    continue
                v1, v2 = vals[c1], vals[c2]
                if w1 + w2 == 0 and v1 + v2 == 0:
                    kind = "I1"
                elif w1 == w2 and v1 != v2:
                    kind = "I2"
                else:
                    continue
                row = list(vals)
                row[c1] = w1 - v1
                row[c2] = w2 - v2
                ns = state[:ri] + (tuple(row),) + state[ri + 1:]
                mv = MatrixMove(kind,
                                (space.rows[ri], space.cols[c1], space.cols[c2]))
                yield mv, ns


def _matrix_with_state(T: WovenBasedMatrix, space: _MoveSpace,
                       state: tuple) -> WovenBasedMatrix:
    rows = [list(r) for r in T.entries]
    for ri, g in enumerate(space.rows):
        gi = T.index[g]
        for ci, x in enumerate(space.cols):
            xi = T.index[x]
            rows[gi][xi] = state[ri][ci]
            rows[xi][gi] = -state[ri][ci]
    return WovenBasedMatrix(T.components, T.weaving,
                            tuple(tuple(r) for r in rows))


@dataclass
class OrbitResult:
    matrices: list[WovenBasedMatrix]
    truncated: bool


def intersection_orbit(T: WovenBasedMatrix,
                       cap: int = DEFAULT_CAP) -> OrbitResult:
    """Closure of T under intersection moves, in discovery order."""
    if cap < 1:
        raise ValueError("cap must be positive")
    space, s0 = _MoveSpace.of(T)
    seen = {s0}
    queue = deque([s0])
    states = [s0]
    truncated = False
    while queue:
        state = queue.popleft()
        for _, ns in _successors(space, state):
            if ns in seen:
                continue
            if len(seen) >= cap:
                truncated = True
                continue
            seen.add(ns)
            states.append(ns)
            queue.append(ns)
    return OrbitResult([_matrix_with_state(T, space, s) for s in states],
                       truncated)


class _InverseFinder:
    """Inverse-extension search over orbit states, fixed parts precomputed."""

    def __init__(self, T: WovenBasedMatrix, space: _MoveSpace,
                 priority: Sequence[str]):
        self.T = T
        self.space = space
        self.priority = tuple(priority)
        static_cols = [i for i, el in enumerate(T.order) if el[0] != "x"]
        fixed = {}
        for el in T.order:
            if el[0] != "x":
                fixed[el] = tuple(T.entries[T.index[el]][j] for j in static_cols)
        self.rows = space.rows
        self.m1_ok = tuple(not any(fixed[g]) for g in space.rows)
        self.m2_ok = tuple(fixed[g] == fixed[base(g[1])] for g in space.rows)
        m3 = []
        for i, j in combinations(range(len(space.rows)), 2):
            g1, g2 = space.rows[i], space.rows[j]
            if g1[1] != g2[1]:
                continue
            srow = fixed[base(g1[1])]
            if all(a + b == c for a, b, c in zip(fixed[g1], fixed[g2], srow)):
                m3.append((i, j))
        self.m3_pairs = tuple(m3)
        m4 = []
        for c1, c2 in combinations(range(len(space.cols)), 2):
            if all(T.b(base(i), space.cols[c1])
                   + T.b(base(i), space.cols[c2]) == 0 for i in range(T.n)):
                m4.append((c1, c2))
        self.m4_pairs = tuple(m4)

    def find(self, state: tuple) -> Optional[MatrixMove]:
        space = self.space
        for kind in self.priority:
            if kind == "M1^-1":
                for ri, g in enumerate(space.rows):
                    if self.m1_ok[ri] and not any(state[ri]):
                        return MatrixMove("M1^-1", (g,))
            elif kind == "M2^-1":
                for ri, g in enumerate(space.rows):
                    if self.m2_ok[ri] and state[ri] == space.wrows[ri]:
                        return MatrixMove("M2^-1", (g,))
            elif kind == "M3^-1":
                for i, j in self.m3_pairs:
                    w = space.wrows[i]
                    if all(a + b == c
                           for a, b, c in zip(state[i], state[j], w)):
                        return MatrixMove("M3^-1",
                                          (space.rows[i], space.rows[j]))
            elif kind == "M4^-1":
                for c1, c2 in self.m4_pairs:
                    if all(row[c1] + row[c2] == 0 for row in state):
                        return MatrixMove("M4^-1",
                                          (space.cols[c1], space.cols[c2]))
        return None


def _orbit_search(T: WovenBasedMatrix, cap: int, priority: Sequence[str]):
    """First orbit state (BFS order) admitting an inverse extension.

    Returns (path, move, state_matrix) or None if the full orbit is clean;
    raises ReductionUndetermined via sentinel (None, None, truncated flag).
    """
    space, s0 = _MoveSpace.of(T)
    finder = _InverseFinder(T, space, priority)
    seen = {s0}
    parent: dict = {s0: None}
    queue = deque([s0])
    truncated = False
    while queue:
        state = queue.popleft()
        mv = finder.find(state)
        if mv is not None:
            path = []
            cur = state
            while parent[cur] is not None:
                prev, step = parent[cur]
                path.append(step)
                cur = prev
            path.reverse()
            return tuple(path), mv, _matrix_with_state(T, space, state)
        for step, ns in _successors(space, state):
            if ns in seen:
                continue
            if len(seen) >= cap:
                truncated = True
                continue
            seen.add(ns)
            parent[ns] = (state, step)
            queue.append(ns)
    return None if not truncated else "truncated"


def is_primitive(T: WovenBasedMatrix, cap: int = DEFAULT_CAP) -> Optional[bool]:
    """True, False, or None when the orbit was truncated inconclusively."""
    if cap < 1:
        raise ValueError("cap must be positive")
    hit = _orbit_search(T, cap, INVERSES)
    if hit is None:
        return True
    if hit == "truncated":
        return None
    return False


@dataclass(frozen=True)
class MoveCertificate:
    """Replayable trace of a reduction: moves plus element-set snapshots."""

    moves: tuple[MatrixMove, ...]
    before: tuple
    after: tuple

    def to_text(self) -> str:
        if not self.moves:
            return "(empty)\n"
        return "".join(mv.describe() + "\n" for mv in self.moves)

    def to_json(self) -> dict:
        def snap(s):
            comps, xs = s
            return {"components": [[element_to_json(e) for e in c]
                                   for c in comps],
                    "weaving": [element_to_json(x) for x in xs]}
        return {"moves": [mv.to_json() for mv in self.moves],
                "before": snap(self.before), "after": snap(self.after)}

    @staticmethod
    def from_json(doc: dict) -> "MoveCertificate":
        def unsnap(d):
            return (tuple(tuple(element_from_json(e) for e in c)
                          for c in d["components"]),
                    tuple(element_from_json(x) for x in d["weaving"]))
        return MoveCertificate(
            tuple(MatrixMove.from_json(m) for m in doc["moves"]),
            unsnap(doc["before"]), unsnap(doc["after"]))


def replay_certificate(T: WovenBasedMatrix,
                       cert: MoveCertificate) -> WovenBasedMatrix:
    """Re-apply a certificate, checking both element-set snapshots."""
    if T.snapshot() != cert.before:
        raise MatrixMoveError("certificate does not start at this matrix")
    out = apply_sequence(T, cert.moves)
    if out.snapshot() != cert.after:
        raise MatrixMoveError("certificate replay reached a different shape")
    return out


def reduce_to_primitive(T: WovenBasedMatrix, cap: int = DEFAULT_CAP,
                        priority: Sequence[str] = INVERSES,
                        ) -> tuple[WovenBasedMatrix, MoveCertificate]:
    """Primitive representative plus the certificate that reaches it.

    Each round walks the intersection orbit in search order; at the first
    state admitting an inverse extension (kinds tried in ``priority`` order,
    arguments in element order) the extension is applied and the walk
    restarts.  The matrix returned is the orbit root of the final round.
    Deterministic and memoized (all values involved are immutable).
    """
    return _reduce_cached(T, cap, tuple(priority))


@lru_cache(maxsize=8192)
def _reduce_cached(T: WovenBasedMatrix, cap: int, priority: tuple[str, ...],
                   ) -> tuple[WovenBasedMatrix, MoveCertificate]:
    if cap < 1:
        raise ValueError("cap must be positive")
    for kind in priority:
        if kind not in INVERSES:
            raise ValueError(f"bad priority entry {kind!r}")
    moves: list[MatrixMove] = []
    start = T.snapshot()
    current = T
    while True:
        hit = _orbit_search(current, cap, priority)
        if hit is None:
            return current, MoveCertificate(tuple(moves), start,
                                            current.snapshot())
        if hit == "truncated":
            partial = MoveCertificate(tuple(moves), start, current.snapshot())
            raise ReductionUndetermined(
                f"orbit cap {cap} exhausted before primitivity was decided",
                partial)
        path, inv, at = hit
        moves.extend(path)
        moves.append(inv)
        current = apply_matrix_move(at, inv)
