"""Virtual n-strings as decorated chord diagrams.

A virtual n-string is a set of n oriented core circles carrying 2m marked
points partitioned into m directed arrows (tail, head).  Circles are stored
as cyclic sequences of endpoints; an arrow whose endpoints share a circle is
a self-arrow, otherwise an intersection arrow.  This module provides the
text format, validation, the flat homotopy moves (Type 1/2/3 and inverses),
generators for the standard example families, and the genus of the canonical
disk-band surface.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, NamedTuple, Optional, Sequence


class End(NamedTuple):
    """One endpoint of an arrow: the arrow's label plus which end it is."""

    label: str
    tail: bool

    @property
    def token(self) -> str:
        return self.label + ("+" if self.tail else "-")

    @property
    def mate(self) -> "End":
        return End(self.label, not self.tail)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}" if line else message)


class MoveError(ValueError):
    """A homotopy move whose location data does not match the diagram."""


def _rotate_min(circle: tuple[End, ...]) -> tuple[End, ...]:
    if len(circle) < 2:
        return circle
    k = len(circle)
    return min(tuple(circle[i:] + circle[:i]) for i in range(k))


@dataclass(frozen=True)
class Multistring:
    """n cyclic endpoint sequences; equality is rotation-invariant per circle.

    Circles are normalized on construction (smallest endpoint first), so
    tuple equality and hashing agree with cyclic equality.  Instances are
    immutable; every operation returns a new diagram.
    """

    circles: tuple[tuple[End, ...], ...]

    def __post_init__(self):
        norm = tuple(_rotate_min(tuple(c)) for c in self.circles)
        object.__setattr__(self, "circles", norm)

    @property
    def n(self) -> int:
        return len(self.circles)

    @cached_property
    def position(self) -> dict[End, tuple[int, int]]:
        pos = {}
        for ci, circle in enumerate(self.circles):
            for i, e in enumerate(circle):
                pos[e] = (ci, i)
        return pos

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(sorted({e.label for c in self.circles for e in c}))

    def circle_of(self, label: str, tail: bool) -> int:
        return self.position[End(label, tail)][0]

    @cached_property
    def self_arrows(self) -> tuple[str, ...]:
        out = []
        for lab in self.labels:
            if self.circle_of(lab, True) == self.circle_of(lab, False):
                out.append(lab)
        return tuple(out)

    @cached_property
    def intersection_arrows(self) -> tuple[str, ...]:
        selfs = set(self.self_arrows)
        return tuple(lab for lab in self.labels if lab not in selfs)

    def self_arrows_on(self, ci: int) -> tuple[str, ...]:
        return tuple(l for l in self.self_arrows if self.circle_of(l, True) == ci)

    @cached_property
    def open_arcs(self) -> dict[str, frozenset[End]]:
        """For each self-arrow, the endpoints strictly between tail and head."""
        arcs = {}
        for lab in self.self_arrows:
            ci, it = self.position[End(lab, True)]
            _, ih = self.position[End(lab, False)]
            circle = self.circles[ci]
            k = len(circle)
            content = []
            i = (it + 1) % k
            while i != ih:
                content.append(circle[i])
                i = (i + 1) % k
            arcs[lab] = frozenset(content)
        return arcs

    def describe(self) -> str:
        return serialize(self).rstrip("\n")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"([A-Za-z0-9_]+)([+-])$")


def parse_multistring(text: str) -> Multistring:
    """Parse the one-circle-per-line text format.

    Each line is ``circle:`` followed by whitespace-separated tokens
    ``LABEL+`` (tail) or ``LABEL-`` (head); ``#`` starts a comment.  Every
    label must occur exactly once with ``+`` and once with ``-``.
    """
    circles: list[tuple[End, ...]] = []
    seen: dict[tuple[str, bool], tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        hash_idx = raw.find("#")
        line = raw if hash_idx < 0 else raw[:hash_idx]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if not stripped.startswith("circle:"):
            raise ParseError("expected 'circle:'", lineno, indent + 1)
        body = stripped[len("circle:"):]
        body_off = indent + len("circle:")
        ends: list[End] = []
        for m in re.finditer(r"\S+", body):
            col = body_off + m.start() + 1
            tk = _TOKEN.match(m.group())
            if not tk:
                raise ParseError(f"malformed token {m.group()!r}", lineno, col)
            e = End(tk.group(1), tk.group(2) == "+")
            if (e.label, e.tail) in seen:
                kind = "tail" if e.tail else "head"
                raise ParseError(f"label {e.label!r} has two {kind} marks", lineno, col)
            seen[(e.label, e.tail)] = (lineno, col)
            ends.append(e)
        circles.append(tuple(ends))
    for (label, tail), (lineno, col) in seen.items():
        if (label, not tail) not in seen:
            raise ParseError(f"label {label!r} appears only once", lineno, col)
    return Multistring(tuple(circles))


def serialize(ms: Multistring) -> str:
    """Emit circles in index order starting at the normalized rotation."""
    lines = []
    for circle in ms.circles:
        lines.append("circle:" + "".join(" " + e.token for e in circle))
    return "\n".join(lines) + "\n"


def validate(ms: Multistring) -> list[str]:
    """Invariant violations as data; an empty list means a valid diagram."""
    violations = []
    counts: dict[End, int] = {}
    for circle in ms.circles:
        for e in circle:
            counts[e] = counts.get(e, 0) + 1
    for e in sorted(counts):
        if counts[e] > 1:
            violations.append(f"duplicate-endpoint: {e.token}")
    labels = sorted({e.label for e in counts})
    for lab in labels:
        if End(lab, True) not in counts:
            violations.append(f"dangling-endpoint: {lab} has no tail")
        if End(lab, False) not in counts:
            violations.append(f"dangling-endpoint: {lab} has no head")
    return violations


# ---------------------------------------------------------------------------
# Homotopy moves
# ---------------------------------------------------------------------------

MOVE_KINDS = ("T1a", "T1b", "T2", "T3a", "T3b",
              "T1a^-1", "T1b^-1", "T2^-1", "T3a^-1", "T3b^-1")


@dataclass(frozen=True)
class DiagramMove:
    """One flat homotopy move with its location data.

    ``gaps`` are (circle, position) insertion slots, position counted before
    the endpoint at that index (a k-endpoint circle has k gaps, an empty
    circle one).  ``pairs`` locate Type 3 moves by the start position of each
    of the three adjacent endpoint pairs.  ``arrows`` name the arrows removed
    by inverse moves; ``labels`` optionally fix the labels created by T1/T2.
    """

    kind: str
    gaps: tuple[tuple[int, int], ...] = ()
    flips: tuple[bool, ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()
    arrows: tuple[str, ...] = ()
    labels: tuple[str, ...] = ()

    def describe(self) -> str:
        bits = [self.kind]
        for g in self.gaps:
            bits.append(f"gap=({g[0]},{g[1]})")
        if self.flips:
            bits.append("flips=" + ",".join("1" if f else "0" for f in self.flips))
        if self.pairs:
            bits.append("pairs=" + "".join(f"({c},{p})" for c, p in self.pairs))
        if self.arrows:
            bits.append("arrows=" + ",".join(self.arrows))
        if self.labels:
            bits.append("labels=" + ",".join(self.labels))
        return " ".join(bits)


def fresh_labels(ms: Multistring, count: int) -> tuple[str, ...]:
    """Deterministic unused labels: n1, n2, ... skipping taken ones."""
    used = set(ms.labels)
    out: list[str] = []
    i = 1
    while len(out) < count:
        cand = f"n{i}"
        if cand not in used:
            used.add(cand)
            out.append(cand)
        i += 1
    return tuple(out)


def _gap_count(circle: Sequence[End]) -> int:
    return max(len(circle), 1)


def _check_gap(ms: Multistring, gap: tuple[int, int]) -> None:
    ci, p = gap
    if not (0 <= ci < ms.n):
        raise MoveError(f"no circle {ci}")
    if not (0 <= p < _gap_count(ms.circles[ci])):
        raise MoveError(f"no gap {p} on circle {ci}")


def _insert(circle: tuple[End, ...], p: int, ends: Sequence[End]) -> tuple[End, ...]:
    return circle[:p] + tuple(ends) + circle[p:]


def _is_arrow(u: End, v: End) -> bool:
    return u.tail and not v.tail and u.label == v.label


def _pair_at(ms: Multistring, pair: tuple[int, int]) -> tuple[End, End]:
    ci, p = pair
    circle = ms.circles[ci]
    k = len(circle)
    if k < 2 or not (0 <= p < k):
        raise MoveError(f"no adjacent pair at ({ci},{p})")
    return circle[p], circle[(p + 1) % k]


def _t3_match(kind: str, trip: Sequence[tuple[End, End]]) -> bool:
    """Does some role assignment of the three adjacent pairs fit the pattern?

    Writing each pair as (a, a+) in orientation order, the four patterns are
    T3a: (a+,b),(b+,c),(c+,a); its inverse: (a,b+),(b,c+),(c,a+);
    T3b: (a,b),(a+,c),(b+,c+); its inverse: (a+,b+),(a,c+),(b,c).
    Applying any of them swaps the two endpoints within each pair.
    """
    for (a, a2), (b, b2), (c, c2) in permutations(trip):
        if kind == "T3a":
            ok = _is_arrow(a2, b) and _is_arrow(b2, c) and _is_arrow(c2, a)
        elif kind == "T3a^-1":
            ok = _is_arrow(a, b2) and _is_arrow(b, c2) and _is_arrow(c, a2)
        elif kind == "T3b":
            ok = _is_arrow(a, b) and _is_arrow(a2, c) and _is_arrow(b2, c2)
        else:
            ok = _is_arrow(a2, b2) and _is_arrow(a, c2) and _is_arrow(b, c)
        if ok:
            return True
    return False


_T3_KINDS = ("T3a", "T3b", "T3a^-1", "T3b^-1")
_T3_INVERSE = {"T3a": "T3a^-1", "T3a^-1": "T3a", "T3b": "T3b^-1", "T3b^-1": "T3b"}


def apply_move(ms: Multistring, mv: DiagramMove) -> Multistring:
    """Apply one homotopy move; raises MoveError naming the failed precondition."""
    circles = list(ms.circles)

    if mv.kind in ("T1a", "T1b"):
        (gap,) = mv.gaps
        _check_gap(ms, gap)
        (lab,) = mv.labels if mv.labels else fresh_labels(ms, 1)
        if lab in ms.labels:
            raise MoveError(f"label {lab!r} already used")
        ci, p = gap
        tail, head = End(lab, True), End(lab, False)
        ends = (tail, head) if mv.kind == "T1a" else (head, tail)
        circles[ci] = _insert(circles[ci], p, ends)
        return Multistring(tuple(circles))

    if mv.kind == "T2":
        gap1, gap2 = mv.gaps
        _check_gap(ms, gap1)
        _check_gap(ms, gap2)
        f1, f2 = mv.flips
        lu, lv = mv.labels if mv.labels else fresh_labels(ms, 2)
        if lu in ms.labels or lv in ms.labels or lu == lv:
            raise MoveError(f"labels {lu!r},{lv!r} not fresh")
        side1 = (End(lu, True), End(lv, False))
        side2 = (End(lu, False), End(lv, True))
        if f1:
            side1 = side1[::-1]
        if f2:
            side2 = side2[::-1]
        if gap1 == gap2:
            # Both arcs in one gap, first arc laid down first.
            ci, p = gap1
            circles[ci] = _insert(circles[ci], p, side1 + side2)
        else:
            for (ci, p), ends in sorted(((gap1, side1), (gap2, side2)),
                                        reverse=True):
                circles[ci] = _insert(circles[ci], p, ends)
        return Multistring(tuple(circles))

    if mv.kind in _T3_KINDS:
        if len(mv.pairs) != 3:
            raise MoveError("T3 needs three adjacent pairs")
        used: set[tuple[int, int]] = set()
        trip = []
        for pair in mv.pairs:
            e1, e2 = _pair_at(ms, pair)
            ci, p = pair
            k = len(ms.circles[ci])
            spots = {(ci, p), (ci, (p + 1) % k)}
            if used & spots:
                raise MoveError("T3 pairs overlap")
            used |= spots
            trip.append((e1, e2))
        if not _t3_match(mv.kind, trip):
            raise MoveError(f"arrows do not match the {mv.kind} pattern")
        for ci, p in mv.pairs:
            circle = list(circles[ci])
            q = (p + 1) % len(circle)
            circle[p], circle[q] = circle[q], circle[p]
            circles[ci] = tuple(circle)
        return Multistring(tuple(circles))

    if mv.kind in ("T1a^-1", "T1b^-1"):
        (lab,) = mv.arrows
        if lab not in ms.labels:
            raise MoveError(f"no arrow {lab!r}")
        tail, head = End(lab, True), End(lab, False)
        ct, it = ms.position[tail]
        ch, ih = ms.position[head]
        if ct != ch:
            raise MoveError(f"{lab!r} is not a self-arrow")
        k = len(ms.circles[ct])
        first, second = (tail, head) if mv.kind == "T1a^-1" else (head, tail)
        i = ms.position[first][1]
        if ms.circles[ct][(i + 1) % k] != second:
            raise MoveError(f"{lab!r} endpoints are not adjacent in the required order")
        circles[ct] = tuple(e for e in circles[ct] if e.label != lab)
        return Multistring(tuple(circles))

    if mv.kind == "T2^-1":
        la, lb = mv.arrows
        for lu, lv in ((la, lb), (lb, la)):
            if _t2_inverse_applies(ms, lu, lv):
                drop = {lu, lv}
                return Multistring(tuple(tuple(e for e in c if e.label not in drop)
                                         for c in circles))
        raise MoveError(f"arrows {la!r},{lb!r} do not form a removable pattern")

    raise MoveError(f"unknown move kind {mv.kind!r}")


def _adjacent(ms: Multistring, e1: End, e2: End) -> bool:
    """Cyclically adjacent (either order) on a common circle."""
    if e1 not in ms.position or e2 not in ms.position:
        return False
    c1, i1 = ms.position[e1]
    c2, i2 = ms.position[e2]
    if c1 != c2:
        return False
    k = len(ms.circles[c1])
    return (i1 + 1) % k == i2 or (i2 + 1) % k == i1


def _t2_inverse_applies(ms: Multistring, lu: str, lv: str) -> bool:
    if lu == lv or lu not in ms.labels or lv not in ms.labels:
        return False
    ut, uh = End(lu, True), End(lu, False)
    vt, vh = End(lv, True), End(lv, False)
    return _adjacent(ms, ut, vh) and _adjacent(ms, uh, vt)


_T2_FLIPS = ((False, False), (False, True), (True, False), (True, True))


def _scan_t3(ms: Multistring, kind: str) -> list[DiagramMove]:
    """All moves of one Type 3 pattern, by walking the arrow chain from each
    candidate first pair (linear in the number of adjacent pairs)."""
    first: dict[tuple[int, int], End] = {}
    second: dict[tuple[int, int], End] = {}
    starts: dict[End, tuple[int, int]] = {}   # pair whose first element this is
    endings: dict[End, tuple[int, int]] = {}  # pair whose second element this is
    for ci in range(ms.n):
        circle = ms.circles[ci]
        k = len(circle)
        if k < 2:
            continue
        for p in range(k):
            e1, e2 = circle[p], circle[(p + 1) % k]
            first[(ci, p)] = e1
            second[(ci, p)] = e2
            starts[e1] = (ci, p)
            endings[e2] = (ci, p)

    def tail_mate_pair(e: End, via: dict) -> Optional[tuple[int, int]]:
        if not e.tail:
            return None
        return via.get(e.mate)

    found: set[tuple[tuple[int, int], ...]] = set()
    out: list[DiagramMove] = []
    for A in first:
        if kind == "T3a":
            B = tail_mate_pair(second[A], starts)
            if B is None:
                continue
            C = tail_mate_pair(second[B], starts)
            if C is None:
                continue
            e = second[C]
            if not (e.tail and e.mate == first[A]):
                continue
        elif kind == "T3a^-1":
            B = tail_mate_pair(first[A], endings)
            if B is None:
                continue
            C = tail_mate_pair(first[B], endings)
            if C is None:
                continue
            e = first[C]
            if not (e.tail and e.mate == second[A]):
                continue
        elif kind == "T3b":
            B = tail_mate_pair(first[A], starts)
            if B is None:
                continue
            C = tail_mate_pair(second[A], starts)
            if C is None:
                continue
            e = second[B]
            if not (e.tail and e.mate == second[C]):
                continue
        else:  # T3b^-1
            B = tail_mate_pair(second[A], endings)
            if B is None:
                continue
            C = tail_mate_pair(first[A], endings)
            if C is None:
                continue
            e = first[B]
            if not (e.tail and e.mate == first[C]):
                continue
        slots = (A, B, C)
        if len(set(slots)) != 3:
            continue
        spots: set[tuple[int, int]] = set()
        ok = True
        for ci, p in slots:
            k = len(ms.circles[ci])
            cover = {(ci, p), (ci, (p + 1) % k)}
            if spots & cover:
                ok = False
                break
            spots |= cover
        key = tuple(sorted(slots))
        if ok and key not in found:
            found.add(key)
            out.append(DiagramMove(kind, pairs=key))
    return sorted(out, key=lambda m: m.pairs)


def enumerate_applicable_moves(ms: Multistring,
                               kinds: Optional[Iterable[str]] = None) -> tuple[DiagramMove, ...]:
    """Complete, duplicate-free, deterministically ordered list of moves."""
    wanted = tuple(MOVE_KINDS) if kinds is None else tuple(kinds)
    for k in wanted:
        if k not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {k!r}")
    moves: list[DiagramMove] = []

    all_gaps = [(ci, p) for ci in range(ms.n) for p in range(_gap_count(ms.circles[ci]))]

    for kind in ("T1a", "T1b"):
        if kind in wanted:
            moves.extend(DiagramMove(kind, gaps=(g,)) for g in all_gaps)

    if "T2" in wanted:
        for i, g1 in enumerate(all_gaps):
            for g2 in all_gaps[i:]:
                for flips in _T2_FLIPS:
                    moves.append(DiagramMove("T2", gaps=(g1, g2), flips=flips))

    t3_wanted = [k for k in _T3_KINDS if k in wanted]
    if t3_wanted:
        for kind in t3_wanted:
            moves.extend(_scan_t3(ms, kind))

    for kind in ("T1a^-1", "T1b^-1"):
        if kind not in wanted:
            continue
        for lab in ms.self_arrows:
            tail, head = End(lab, True), End(lab, False)
            first, second = (tail, head) if kind == "T1a^-1" else (head, tail)
            ci, i = ms.position[first]
            k = len(ms.circles[ci])
            if ms.circles[ci][(i + 1) % k] == second:
                moves.append(DiagramMove(kind, arrows=(lab,)))

    if "T2^-1" in wanted:
        for la, lb in combinations(ms.labels, 2):
            if _t2_inverse_applies(ms, la, lb) or _t2_inverse_applies(ms, lb, la):
                moves.append(DiagramMove("T2^-1", arrows=(la, lb)))

    return tuple(moves)


def _t2_rebuild(ms: Multistring, after: Multistring,
                lu: str, lv: str) -> Optional[DiagramMove]:
    """A T2 move replaying on ``after`` the insertion that ``ms`` exhibits."""
    if not _t2_inverse_applies(ms, lu, lv):
        return None
    drop = {lu, lv}
    ut, uh = End(lu, True), End(lu, False)
    vt, vh = End(lv, True), End(lv, False)
    gaps = []
    flips = []
    for x, y in ((ut, vh), (uh, vt)):
        ci, ix = ms.position[x]
        k = len(ms.circles[ci])
        if ms.circles[ci][(ix + 1) % k] == y:
            first, flip = x, False
        else:
            first, flip = y, True
        i = ms.position[first][1]
        j = (i + 2) % k
        steps = 0
        while steps < k and ms.circles[ci][j].label in drop:
            j = (j + 1) % k
            steps += 1
        if steps >= k:
            gaps.append((ci, 0))
        else:
            gaps.append(after.position[ms.circles[ci][j]])
        flips.append(flip)
    mv = DiagramMove("T2", gaps=tuple(gaps), flips=tuple(flips), labels=(lu, lv))
    try:
        restored = apply_move(after, mv)
    except MoveError:
        return None
    return mv if restored == ms else None


def inverse_move(ms: Multistring, mv: DiagramMove) -> DiagramMove:
    """The move undoing ``mv``, located in apply_move(ms, mv)'s coordinates."""
    after = apply_move(ms, mv)

    if mv.kind in ("T1a", "T1b"):
        labels = mv.labels if mv.labels else fresh_labels(ms, 1)
        return DiagramMove(mv.kind + "^-1", arrows=labels)
    if mv.kind == "T2":
        labels = mv.labels if mv.labels else fresh_labels(ms, 2)
        return DiagramMove("T2^-1", arrows=tuple(sorted(labels)))
    if mv.kind in _T3_KINDS:
        # Pair starts may land elsewhere after normalization; track the
        # endpoint that now opens each pair (the old second element).
        new_pairs = []
        for pair in mv.pairs:
            _, e2 = _pair_at(ms, pair)
            new_pairs.append(after.position[e2])
        return DiagramMove(_T3_INVERSE[mv.kind], pairs=tuple(sorted(new_pairs)))
    if mv.kind in ("T1a^-1", "T1b^-1"):
        (lab,) = mv.arrows
        first = End(lab, mv.kind == "T1a^-1")
        ci, i = ms.position[first]
        k = len(ms.circles[ci])
        succ = ms.circles[ci][(i + 2) % k]
        gap = after.position[succ] if succ.label != lab else (ci, 0)
        return DiagramMove(mv.kind[:3], gaps=(gap,), labels=(lab,))
    if mv.kind == "T2^-1":
        la, lb = mv.arrows
        for lu, lv in ((la, lb), (lb, la)):
            rebuilt = _t2_rebuild(ms, after, lu, lv)
            if rebuilt is not None:
                return rebuilt
        raise MoveError(f"cannot invert {mv.describe()}")
    raise MoveError(f"unknown move kind {mv.kind!r}")


# ---------------------------------------------------------------------------
# Derived diagrams
# ---------------------------------------------------------------------------

def induced_string(ms: Multistring, i: int) -> Multistring:
    """The 1-string carried by circle i: its order restricted to self-arrows."""
    if not (0 <= i < ms.n):
        raise IndexError(f"no circle {i}")
    keep = set(ms.self_arrows_on(i))
    return Multistring((tuple(e for e in ms.circles[i] if e.label in keep),))


def reverse_all_arrows(ms: Multistring) -> Multistring:
    return Multistring(tuple(tuple(e.mate for e in c) for c in ms.circles))


def reverse_circle(ms: Multistring, i: int) -> Multistring:
    """Reverse the orientation of circle i; arrows keep their (tail, head)."""
    if not (0 <= i < ms.n):
        raise IndexError(f"no circle {i}")
    circles = list(ms.circles)
    circles[i] = tuple(reversed(circles[i]))
    return Multistring(tuple(circles))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_alpha(p: int, q: int) -> Multistring:
    """The 1-string with p parallel arrows crossed by q parallel arrows.

    Cyclic order: the p heads, the q heads, the p tails, the q tails, with
    each bundle ordered so the arrows are pairwise unlinked within a bundle
    and every p-arrow crosses every q-arrow once.
    """
    if p < 0 or q < 0:
        raise ValueError("parameters must be nonnegative")
    a = [f"a{i}" for i in range(1, p + 1)]
    b = [f"b{j}" for j in range(1, q + 1)]
    word = ([End(l, False) for l in reversed(a)]
            + [End(l, False) for l in reversed(b)]
            + [End(l, True) for l in a]
            + [End(l, True) for l in b])
    return Multistring((tuple(word),))


def gen_beta(p1: int, q1: int, p2: int, q2: int, r: int, s: int) -> Multistring:
    """Two crossed-bundle circles tied by r arrows one way and s the other.

    Circle 1 carries the (p1, q1) pattern, circle 2 the (p2, q2) pattern.
    The r arrows run circle 1 to circle 2 with both endpoint bundles sitting
    between the p-heads and q-heads; the s arrows run circle 2 to circle 1
    between the p-tails and q-tails.
    """
    if min(p1, q1, p2, q2, r, s) < 0:
        raise ValueError("parameters must be nonnegative")
    gp = [f"gp{i}" for i in range(1, p1 + 1)]
    gq = [f"gq{i}" for i in range(1, q1 + 1)]
    hp = [f"hp{i}" for i in range(1, p2 + 1)]
    hq = [f"hq{i}" for i in range(1, q2 + 1)]
    x = [f"x{i}" for i in range(1, r + 1)]
    y = [f"y{i}" for i in range(1, s + 1)]
    c1 = ([End(l, False) for l in reversed(gp)]
          + [End(l, True) for l in x]
          + [End(l, False) for l in reversed(gq)]
          + [End(l, True) for l in gp]
          + [End(l, False) for l in reversed(y)]
          + [End(l, True) for l in gq])
    c2 = ([End(l, False) for l in reversed(hp)]
          + [End(l, False) for l in reversed(x)]
          + [End(l, False) for l in reversed(hq)]
          + [End(l, True) for l in hp]
          + [End(l, True) for l in y]
          + [End(l, True) for l in hq])
    return Multistring((tuple(c1), tuple(c2)))


def fixture_sigma() -> Multistring:
    """2-string with two self-arrows and four intersection arrows."""
    return parse_multistring(
        "circle: x4+ x1- x2- x3+\n"
        "circle: g1+ x1+ g1- x4- x3- g2- x2+ g2+\n")


def fixture_tau() -> Multistring:
    """3-string chain fixture with one self-arrow on each outer... middle pair."""
    return parse_multistring(
        "circle: x1- x2+\n"
        "circle: g2- x5+ x6+ x1+ g2+ x2- x3- x4-\n"
        "circle: x4+ g3+ x6- x3+ g3- x5-\n")


def random_multistring(n: int, m: int, seed: int) -> Multistring:
    """Seed-deterministic random diagram with n circles and m arrows.

    Scheme: endpoints a1+, a1-, ..., am+, am- are each assigned a uniform
    circle index, then each circle's endpoint list is shuffled once.  Circles
    may end up empty and the diagram need not be connected.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    buckets: list[list[End]] = [[] for _ in range(n)]
    for i in range(1, m + 1):
        for tail in (True, False):
            buckets[rng.randrange(n)].append(End(f"a{i}", tail))
    for bucket in buckets:
        rng.shuffle(bucket)
    return Multistring(tuple(tuple(b) for b in buckets))


# ---------------------------------------------------------------------------
# Canonical surface
# ---------------------------------------------------------------------------

class GenusReport(NamedTuple):
    genus: int
    boundary_components: int
    components: int


def canonical_surface_genus(ms: Multistring) -> GenusReport:
    """Genus data of the disk-band thickening of the diagram's 4-valent graph.

    Arrow endpoints are identified into 4-valent vertices; the circle arcs
    between consecutive endpoints are the edges.  At the vertex of arrow
    (a, b) the counterclockwise half-edge order is (out at a, out at b,
    in at a, in at b), the rotation induced by a positively crossing pair of
    strands.  Boundary circles are the face-tracing orbits; an endpoint-free
    circle thickens to an annulus.  Totals are summed over connected
    components of the graph.
    """
    genus = 0
    boundary = 0
    comps = 0

    # Endpoint-free circles: annuli.
    busy = [ci for ci in range(ms.n) if ms.circles[ci]]
    comps += ms.n - len(busy)
    boundary += 2 * (ms.n - len(busy))

    if not busy:
        return GenusReport(genus, boundary, comps)

    # Union circles sharing an arrow.
    parent = {ci: ci for ci in busy}

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for lab in ms.labels:
        c1, c2 = find(ms.circle_of(lab, True)), find(ms.circle_of(lab, False))
        if c1 != c2:
            parent[c1] = c2

    # Darts: (circle, arc index, forward?) with arc p running endpoint p -> p+1.
    def out_dart(e: End):
        ci, i = ms.position[e]
        return (ci, i, True)

    def in_dart(e: End):
        ci, i = ms.position[e]
        return (ci, (i - 1) % len(ms.circles[ci]), False)

    next_ccw = {}
    for lab in ms.labels:
        a, b = End(lab, True), End(lab, False)
        cyc = (out_dart(a), out_dart(b), in_dart(a), in_dart(b))
        for i, d in enumerate(cyc):
            next_ccw[d] = cyc[(i + 1) % 4]

    def flip(d):
        ci, p, fwd = d
        return (ci, p, not fwd)

    faces_per_root: dict[int, int] = {}
    seen = set()
    for d0 in sorted(next_ccw):
        if d0 in seen:
            continue
        d = d0
        while d not in seen:
            seen.add(d)
            d = next_ccw[flip(d)]
        root = find(d0[0])
        faces_per_root[root] = faces_per_root.get(root, 0) + 1

    for root in sorted(faces_per_root):
        members = [ci for ci in busy if find(ci) == root]
        v = sum(1 for lab in ms.labels if find(ms.circle_of(lab, True)) == root)
        e = sum(len(ms.circles[ci]) for ci in members)
        f = faces_per_root[root]
        g2 = 2 - f - (v - e)
        assert g2 % 2 == 0
        genus += g2 // 2
        boundary += f
        comps += 1

    return GenusReport(genus, boundary, comps)
