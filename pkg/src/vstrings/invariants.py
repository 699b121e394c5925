"""Homotopy invariants computed from (primitive) based matrices.

The 1-string u-polynomial is the signed count of arrow classes by base
value; its multistring generalization attaches to every self-arrow a product
of two-term x-factors recording the cross-component base values, one factor
per other component.  The rho family counts the elements of the primitive
matrix; the full-matrix rank halved bounds the supporting genus from below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pairing import BasedMatrix, WovenBasedMatrix, base, integer_rank
from . import homology


def _sign(m: int) -> int:
    return (m > 0) - (m < 0)


@dataclass(frozen=True)
class LaurentPoly:
    """Integer polynomial in t (exponent >= 0) and x (any integer exponent).

    ``terms`` holds (t_exp, x_exp, coeff) triples, coeff nonzero, sorted
    ascending, so equality and hashing are exact term-wise comparisons.
    """

    terms: tuple[tuple[int, int, int], ...] = ()

    @staticmethod
    def from_dict(d: dict[tuple[int, int], int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((t, x, c) for (t, x), c in d.items()
                                        if c != 0)))

    @staticmethod
    def monomial(t: int, x: int, coeff: int = 1) -> "LaurentPoly":
        if t < 0:
            raise ValueError("t-exponent must be nonnegative")
        return LaurentPoly.from_dict({(t, x): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[tuple[int, int], int] = {}
        for t, x, c in self.terms + other.terms:
            d[(t, x)] = d.get((t, x), 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((t, x, -c) for t, x, c in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        d: dict[tuple[int, int], int] = {}
        for t1, x1, c1 in self.terms:
            for t2, x2, c2 in other.terms:
                key = (t1 + t2, x1 + x2)
                d[key] = d.get(key, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(tuple((t, x, k * c) for t, x, c in self.terms)
                           if k else ())

    def at_x1(self) -> "LaurentPoly":
        """Substitute x = 1, collapsing to a polynomial in t."""
        d: dict[tuple[int, int], int] = {}
        for t, _, c in self.terms:
            d[(t, 0)] = d.get((t, 0), 0) + c
        return LaurentPoly.from_dict(d)

    def t_degree(self) -> int:
        """Largest t-exponent, -1 for the zero polynomial."""
        return max((t for t, _, _ in self.terms), default=-1)

    def at_t0(self) -> int:
        """Constant term in t of a t-only polynomial."""
        return sum(c for t, x, c in self.terms if t == 0 and x == 0)

    def dt_at_1(self) -> int:
        """d/dt at t = 1 of a t-only polynomial."""
        if any(x for _, x, _ in self.terms):
            raise ValueError("not a polynomial in t alone")
        return sum(c * t for t, _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for t, x, c in sorted(self.terms, key=lambda m: (-m[0], -m[1])):
            factors = []
            if t:
                factors.append("t" if t == 1 else f"t^{t}")
            if x:
                factors.append("x" if x == 1 else f"x^{x}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            mono = "*".join(factors)
            bits.append(("- " if c < 0 else "+ ") + mono)
        head = bits[0][2:] if bits[0][0] == "+" else "-" + bits[0][2:]
        return head + ("" if len(bits) == 1 else " " + " ".join(bits[1:]))

    def to_json(self) -> list[list[int]]:
        return [[t, x, c] for t, x, c in self.terms]


def u_poly_1string(B: BasedMatrix) -> LaurentPoly:
    """sum over arrows of sign(n(g)) t^|n(g)| where n(g) is the base value."""
    out = LaurentPoly()
    s = B.s
    for g in B.elements[1:]:
        n = B.b(g, s)
        if n:
            out = out + LaurentPoly.monomial(abs(n), 0, _sign(n))
    return out


def u_components(T: WovenBasedMatrix) -> tuple[LaurentPoly, ...]:
    """One polynomial per component, in component order."""
    bases = T.bases()
    out = []
    for i, comp in enumerate(T.components):
        u_i = LaurentPoly()
        for g in comp[1:]:
            n_i = T.b(g, bases[i])
            if n_i == 0:
                continue
            term = LaurentPoly.monomial(abs(n_i), 0, _sign(n_i))
            for j in range(T.n):
                if j == i:
                    continue
                nj_g = T.b(g, bases[j])
                nj_s = T.b(bases[i], bases[j])
                term = term * (LaurentPoly.monomial(0, nj_g)
                               + LaurentPoly.monomial(0, nj_s - nj_g))
            u_i = u_i + term
        out.append(u_i)
    return tuple(out)


def u_invariant(T: WovenBasedMatrix) -> tuple[LaurentPoly, ...]:
    """The component polynomials as a multiset (canonically sorted)."""
    return tuple(sorted(u_components(T), key=lambda p: p.terms))


def u_sum(T: WovenBasedMatrix) -> LaurentPoly:
    """Sum of the component polynomials; weaker than the multiset."""
    total = LaurentPoly()
    for p in u_components(T):
        total = total + p
    return total


def genus_lower_bound(P: WovenBasedMatrix) -> int:
    rank = integer_rank(P.entries)
    assert rank % 2 == 0
    return rank // 2


@dataclass(frozen=True)
class InvariantReport:
    u: tuple[LaurentPoly, ...]
    rho: int
    rho_prime: int
    rho_cap: int
    rho_i: tuple[int, ...]
    genus_lower_bound: int
    primitive_size: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "u": [p.to_json() for p in self.u],
            "rho": self.rho,
            "rho_prime": self.rho_prime,
            "rho_cap": self.rho_cap,
            "rho_i": list(self.rho_i),
            "genus_lower_bound": self.genus_lower_bound,
            "primitive_size": list(self.primitive_size),
        }


def _rho_fields(P: WovenBasedMatrix) -> tuple[int, int, int, tuple[int, ...]]:
    n = P.n
    size_g = sum(len(comp) for comp in P.components)
    size_i = len(P.weaving)
    rho = size_g + size_i - n
    rho_prime = size_g - n
    rho_cap = size_i
    rho_i = tuple(len(comp) - 1 for comp in P.components)
    assert rho == rho_prime + rho_cap
    return rho, rho_prime, rho_cap, rho_i


def rho_family(P: WovenBasedMatrix, cap: int = homology.DEFAULT_CAP,
               check: bool = True) -> InvariantReport:
    """Size statistics of a primitive matrix (primitivity checked by default)."""
    if check:
        prim = homology.is_primitive(P, cap)
        if prim is False:
            raise ValueError("input matrix is not primitive")
    rho, rho_prime, rho_cap, rho_i = _rho_fields(P)
    return InvariantReport(u_invariant(P), rho, rho_prime, rho_cap, rho_i,
                           genus_lower_bound(P),
                           (sum(len(c) for c in P.components), len(P.weaving)))


def invariant_report(T: WovenBasedMatrix,
                     cap: int = homology.DEFAULT_CAP) -> InvariantReport:
    """Full report: u from the matrix, size fields from its reduction."""
    P, _ = homology.reduce_to_primitive(T, cap)
    rho, rho_prime, rho_cap, rho_i = _rho_fields(P)
    return InvariantReport(u_invariant(T), rho, rho_prime, rho_cap, rho_i,
                           genus_lower_bound(P),
                           (sum(len(c) for c in P.components), len(P.weaving)))
