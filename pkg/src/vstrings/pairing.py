"""Skew-symmetric pairings attached to virtual strings.

A 1-string carries a based matrix: the pairing of its arrow classes and the
core class on the canonical surface, computed combinatorially from linking
data.  An n-string carries a woven based matrix: one based matrix per core
circle, tied together through the intersection arrows (the weaving set).

Elements are tagged tuples so that component membership survives any amount
of relabeling:

    ("s", i)        base element of component i
    ("g", i, lab)   self-arrow lab on circle i
    ("x", lab)      intersection arrow lab
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .diagram import End, Multistring, induced_string

Element = tuple


def base(i: int) -> Element:
    return ("s", i)


def self_arrow(i: int, label: str) -> Element:
    return ("g", i, label)


def weaving(label: str) -> Element:
    return ("x", label)


def display_name(el: Element) -> str:
    if el[0] == "s":
        return f"s{el[1] + 1}"
    return el[-1]


def element_to_json(el: Element) -> dict:
    if el[0] == "s":
        return {"kind": "base", "component": el[1]}
    if el[0] == "g":
        return {"kind": "self", "component": el[1], "label": el[2]}
    return {"kind": "weaving", "label": el[1]}


def element_from_json(doc: dict) -> Element:
    if doc["kind"] == "base":
        return base(doc["component"])
    if doc["kind"] == "self":
        return self_arrow(doc["component"], doc["label"])
    return weaving(doc["label"])


@dataclass(frozen=True)
class BasedMatrix:
    """Finite ordered set with a distinguished base and a skew pairing.

    ``elements[0]`` is the base; entries are indexed by element order.
    """

    elements: tuple[Element, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def s(self) -> Element:
        return self.elements[0]

    @cached_property
    def index(self) -> dict[Element, int]:
        return {el: i for i, el in enumerate(self.elements)}

    def b(self, e1: Element, e2: Element) -> int:
        return self.entries[self.index[e1]][self.index[e2]]


@dataclass(frozen=True)
class WovenBasedMatrix:
    """Component based matrices joined through a weaving set.

    ``components[i]`` lists component i's elements with its base first;
    ``weaving`` lists the weaving set.  ``entries`` is the full pairing in
    the order components[0] + ... + components[n-1] + weaving.
    """

    components: tuple[tuple[Element, ...], ...]
    weaving: tuple[Element, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.components)

    @cached_property
    def order(self) -> tuple[Element, ...]:
        out: list[Element] = []
        for comp in self.components:
            out.extend(comp)
        out.extend(self.weaving)
        return tuple(out)

    @cached_property
    def index(self) -> dict[Element, int]:
        return {el: i for i, el in enumerate(self.order)}

    def bases(self) -> tuple[Element, ...]:
        return tuple(comp[0] for comp in self.components)

    def b(self, e1: Element, e2: Element) -> int:
        return self.entries[self.index[e1]][self.index[e2]]

    def row(self, el: Element) -> tuple[int, ...]:
        return self.entries[self.index[el]]

    def component_of(self, el: Element) -> int:
        if el[0] == "x":
            raise ValueError(f"{el} is a weaving element")
        return el[1]

    def snapshot(self) -> tuple:
        return (self.components, self.weaving)


def _skew_violations(order: Sequence[Element],
                     entries: Sequence[Sequence[int]]) -> list[str]:
    out = []
    for i, e1 in enumerate(order):
        if entries[i][i] != 0:
            out.append(f"nonzero diagonal at {display_name(e1)}")
        for j in range(i + 1, len(order)):
            if entries[i][j] != -entries[j][i]:
                out.append(f"not skew at ({display_name(e1)}, "
                           f"{display_name(order[j])})")
    return out


def validate_woven(T: WovenBasedMatrix) -> list[str]:
    """Empty list iff skew-symmetry and the weaving axioms all hold."""
    out = _skew_violations(T.order, T.entries)
    bases = T.bases()
    for x in T.weaving:
        nonzero = [i for i, s in enumerate(bases) if T.b(s, x) != 0]
        if len(nonzero) != 2:
            out.append(f"{display_name(x)} touches {len(nonzero)} components")
            continue
        i, j = nonzero
        if T.b(bases[i], x) != -T.b(bases[j], x):
            out.append(f"base values at {display_name(x)} do not cancel")
        for ci, comp in enumerate(T.components):
            sv = T.b(comp[0], x)
            for g in comp[1:]:
                if T.b(g, x) not in (0, sv):
                    out.append(f"({display_name(g)}, {display_name(x)}) "
                               f"outside {{0, {sv}}}")
        for y in T.weaving:
            if T.b(x, y) != 0:
                out.append(f"nonzero weaving pair ({display_name(x)}, "
                           f"{display_name(y)})")
    return out


# ---------------------------------------------------------------------------
# Linking combinatorics
# ---------------------------------------------------------------------------

def linking(ms: Multistring, g: str, h: str) -> int:
    """+1 if h's tail alone sits in g's open arc, -1 for the head, else 0."""
    if g not in ms.open_arcs:
        raise ValueError(f"{g!r} is not a self-arrow")
    arc = ms.open_arcs[g]
    t_in = End(h, True) in arc
    h_in = End(h, False) in arc
    if t_in and not h_in:
        return 1
    if h_in and not t_in:
        return -1
    return 0


def n_of(ms: Multistring, g: str) -> int:
    """Signed count of arrows of the whole diagram linking g."""
    return sum(linking(ms, g, h) for h in ms.labels)


def dot(ms: Multistring, g: str, gp: str) -> int:
    """Arrows from g's open arc into gp's minus arrows the other way."""
    if g not in ms.open_arcs or gp not in ms.open_arcs:
        raise ValueError("dot needs two self-arrows")
    if g == gp:
        raise ValueError("dot needs two distinct arrows")
    arc1 = ms.open_arcs[g]
    arc2 = ms.open_arcs[gp]
    forward = backward = 0
    for h in ms.labels:
        ht, hh = End(h, True), End(h, False)
        if ht in arc1 and hh in arc2:
            forward += 1
        if hh in arc1 and ht in arc2:
            backward += 1
    return forward - backward


def based_matrix(ms: Multistring) -> BasedMatrix:
    """The based matrix of a 1-string: base row n(g), arrow rows dot + linking."""
    if ms.n != 1:
        raise ValueError("based_matrix takes a 1-string")
    arrows = sorted(ms.self_arrows)
    elements = (base(0),) + tuple(self_arrow(0, lab) for lab in arrows)
    size = len(elements)
    rows = [[0] * size for _ in range(size)]
    for i, g in enumerate(arrows, start=1):
        n = n_of(ms, g)
        rows[i][0] = n
        rows[0][i] = -n
    for i, g in enumerate(arrows, start=1):
        for j, gp in enumerate(arrows, start=1):
            if i == j:
                continue
            rows[i][j] = dot(ms, g, gp) + linking(ms, g, gp)
    entries = tuple(tuple(r) for r in rows)
    bad = _skew_violations(elements, entries)
    assert not bad, bad
    return BasedMatrix(elements, entries)


@lru_cache(maxsize=8192)
def multistring_based_matrix(ms: Multistring) -> WovenBasedMatrix:
    """The woven based matrix of an n-string with its circle order.

    Component blocks come from the induced 1-strings.  A self-arrow pairs
    with an intersection arrow by linking; cross-component base entries are
    the sums of those linking values over the arrows joining the two circles;
    self-arrows on different circles pair by the signed arc-to-arc count.
    Both arguments and results are immutable, so calls are memoized.
    """
    comps = []
    for i in range(ms.n):
        labs = sorted(ms.self_arrows_on(i))
        comps.append((base(i),) + tuple(self_arrow(i, lab) for lab in labs))
    xs = tuple(weaving(lab) for lab in sorted(ms.intersection_arrows))
    order: list[Element] = [el for comp in comps for el in comp] + list(xs)
    idx = {el: k for k, el in enumerate(order)}
    size = len(order)
    rows = [[0] * size for _ in range(size)]

    def put(e1: Element, e2: Element, v: int) -> None:
        rows[idx[e1]][idx[e2]] = v
        rows[idx[e2]][idx[e1]] = -v

    induced = [induced_string(ms, i) for i in range(ms.n)]
    blocks = [based_matrix(a) for a in induced]

    # Component blocks.
    def local(e: Element) -> Element:
        return base(0) if e[0] == "s" else self_arrow(0, e[2])

    for i in range(ms.n):
        blk = blocks[i]
        for e1 in comps[i]:
            for e2 in comps[i]:
                rows[idx[e1]][idx[e2]] = blk.b(local(e1), local(e2))

    # Self-arrow vs weaving: linking in the full diagram.
    for i in range(ms.n):
        for g_el in comps[i][1:]:
            for x_el in xs:
                put(g_el, x_el, linking(ms, g_el[2], x_el[1]))

    # Base vs weaving: which circle holds the tail.
    for x_el in xs:
        lab = x_el[1]
        ct = ms.circle_of(lab, True)
        ch = ms.circle_of(lab, False)
        put(base(ct), x_el, 1)
        put(base(ch), x_el, -1)

    # Cross-component entries against bases: sums of weaving values.
    for i in range(ms.n):
        for j in range(ms.n):
            if i == j:
                continue
            between = [x for x in xs
                       if {ms.circle_of(x[1], True),
                           ms.circle_of(x[1], False)} == {i, j}]
            for g_el in comps[i][1:]:
                v = sum(rows[idx[g_el]][idx[x]] for x in between)
                rows[idx[g_el]][idx[base(j)]] = v
                rows[idx[base(j)]][idx[g_el]] = -v
            if i < j:
                v = sum(rows[idx[base(i)]][idx[x]] for x in between)
                put(base(i), base(j), v)

    # Self-arrows on different circles: signed arc-to-arc count.
    for i in range(ms.n):
        for j in range(ms.n):
            if i >= j:
                continue
            for g_el in comps[i][1:]:
                for h_el in comps[j][1:]:
                    put(g_el, h_el, dot(ms, g_el[2], h_el[2]))

    T = WovenBasedMatrix(tuple(comps), xs, tuple(tuple(r) for r in rows))
    bad = validate_woven(T)
    assert not bad, bad
    return T


def collapse_1string(T: WovenBasedMatrix) -> BasedMatrix:
    """A single-component woven matrix as a plain based matrix."""
    if T.n != 1 or T.weaving:
        raise ValueError("not a bare 1-string matrix")
    return BasedMatrix(T.components[0], T.entries)


# ---------------------------------------------------------------------------
# Exact rank
# ---------------------------------------------------------------------------

def integer_rank(entries: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free elimination."""
    m = [list(row) for row in entries]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, rows):
            for c in range(col + 1, cols):
                m[r][c] = (m[r][c] * m[rank][col] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Dumps
# ---------------------------------------------------------------------------

def format_matrix(T: WovenBasedMatrix) -> str:
    """Aligned text table with one row and column per element."""
    names = [display_name(el) for el in T.order]
    width = max((len(n) for n in names), default=1)
    width = max(width, max((len(str(v)) for row in T.entries for v in row),
                           default=1))
    head = " " * width + " " + " ".join(n.rjust(width) for n in names)
    lines = [head]
    for name, row in zip(names, T.entries):
        lines.append(name.rjust(width) + " "
                     + " ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def matrix_to_json(T: WovenBasedMatrix) -> dict:
    return {
        "components": [
            {"base": display_name(comp[0]),
             "self_arrows": [display_name(e) for e in comp[1:]]}
            for comp in T.components
        ],
        "weaving": [display_name(x) for x in T.weaving],
        "entries": [list(row) for row in T.entries],
    }
