"""Isomorphism and equivalence of woven based matrices.

Isomorphism search backtracks over a component permutation and then an
element bijection, pruned by signatures that any isomorphism must preserve
(row-value multisets, own-base values, component sizes).  Primitive matrices
are compared up to a trailing run of intersection moves by walking one
orbit and testing isomorphism against the other matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .diagram import Multistring
from .pairing import (Element, WovenBasedMatrix, display_name,
                      multistring_based_matrix)
from . import homology
from .invariants import _rho_fields, genus_lower_bound, u_invariant


@dataclass(frozen=True)
class WovenIsomorphism:
    """Witness: component permutation sigma and element bijection phi."""

    sigma: tuple[int, ...]
    phi: tuple[tuple[Element, Element], ...]

    @property
    def mapping(self) -> dict[Element, Element]:
        return dict(self.phi)

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma),
                "phi": {display_name(a): display_name(b) for a, b in self.phi}}


def verify_iso(T1: WovenBasedMatrix, T2: WovenBasedMatrix,
               iso: WovenIsomorphism) -> bool:
    """Exhaustive recheck of a witness against both matrices."""
    phi = iso.mapping
    if sorted(iso.sigma) != list(range(T1.n)) or T1.n != T2.n:
        return False
    if set(phi) != set(T1.order) or set(phi.values()) != set(T2.order):
        return False
    for i, comp in enumerate(T1.components):
        target = set(T2.components[iso.sigma[i]])
        if phi[comp[0]] != T2.components[iso.sigma[i]][0]:
            return False
        if {phi[e] for e in comp} != target:
            return False
    if {phi[x] for x in T1.weaving} != set(T2.weaving):
        return False
    for a in T1.order:
        for b in T1.order:
            if T1.b(a, b) != T2.b(phi[a], phi[b]):
                return False
    return True


def _row_signature(T: WovenBasedMatrix, el: Element) -> tuple:
    row = tuple(sorted(T.row(el)))
    if el[0] == "x":
        bases = tuple(sorted(T.b(s, el) for s in T.bases()))
        return ("x", row, bases)
    own = T.b(el, ("s", el[1]))
    others = tuple(sorted(T.b(el, s) for s in T.bases()))
    return ("g", row, own, others)


def woven_iso(T1: WovenBasedMatrix,
              T2: WovenBasedMatrix) -> Optional[WovenIsomorphism]:
    """A verified isomorphism witness, or None when there is none."""
    if T1.n != T2.n or len(T1.weaving) != len(T2.weaving):
        return None
    if len(T1.order) != len(T2.order):
        return None

    sig1 = {el: _row_signature(T1, el) for el in T1.order}
    sig2 = {el: _row_signature(T2, el) for el in T2.order}

    def comp_profile(T, sig, i):
        comp = T.components[i]
        return (len(comp), sig[comp[0]],
                tuple(sorted(sig[e] for e in comp[1:])))

    prof1 = [comp_profile(T1, sig1, i) for i in range(T1.n)]
    prof2 = [comp_profile(T2, sig2, i) for i in range(T2.n)]

    for sigma in permutations(range(T1.n)):
        if any(prof1[i] != prof2[sigma[i]] for i in range(T1.n)):
            continue
        pending: list[Element] = [e for i in range(T1.n)
                                  for e in T1.components[i][1:]]
        pending += list(T1.weaving)
        phi: dict[Element, Element] = {
            T1.components[i][0]: T2.components[sigma[i]][0]
            for i in range(T1.n)}
        used: set[Element] = set(phi.values())

        def candidates(el: Element) -> list[Element]:
            if el[0] == "x":
                pool = T2.weaving
            else:
                pool = T2.components[sigma[el[1]]][1:]
            return [c for c in pool
                    if c not in used and sig2[c] == sig1[el]]

        def extend(k: int) -> bool:
            if k == len(pending):
                return True
            el = pending[k]
            for cand in candidates(el):
                if any(T1.b(el, a) != T2.b(cand, phi[a]) for a in phi):
                    continue
                phi[el] = cand
                used.add(cand)
                if extend(k + 1):
                    return True
                del phi[el]
                used.discard(cand)
            return False

        if extend(0):
            witness = WovenIsomorphism(tuple(sigma), tuple(sorted(phi.items())))
            assert verify_iso(T1, T2, witness)
            return witness
    return None


def homologous_primitive_equiv(P1: WovenBasedMatrix, P2: WovenBasedMatrix,
                               cap: int = homology.DEFAULT_CAP,
                               check: bool = True) -> str:
    """'equivalent', 'inequivalent', or 'undetermined' for primitive inputs."""
    if check:
        for P in (P1, P2):
            prim = homology.is_primitive(P, cap)
            if prim is False:
                raise ValueError(
                    "homologous_primitive_equiv needs primitive inputs")
            if prim is None:
                return "undetermined"
    if P1.n != P2.n or len(P1.weaving) != len(P2.weaving):
        return "inequivalent"
    sizes1 = sorted(len(c) for c in P1.components)
    sizes2 = sorted(len(c) for c in P2.components)
    if sizes1 != sizes2:
        return "inequivalent"
    orbit = homology.intersection_orbit(P1, cap)
    for M in orbit.matrices:
        if woven_iso(M, P2) is not None:
            return "equivalent"
    return "undetermined" if orbit.truncated else "inequivalent"


@dataclass(frozen=True)
class DistinguishVerdict:
    verdict: str  # distinct | not-distinguished | undetermined
    evidence: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


def distinguish(ms1: Multistring, ms2: Multistring,
                cap: int = homology.DEFAULT_CAP) -> DistinguishVerdict:
    """Compare every implemented invariant; 'distinct' is conclusive,
    'not-distinguished' is not a homotopy-equivalence claim."""
    T1 = multistring_based_matrix(ms1)
    T2 = multistring_based_matrix(ms2)
    if u_invariant(T1) != u_invariant(T2):
        return DistinguishVerdict("distinct", "u-invariant differs")
    try:
        P1, _ = homology.reduce_to_primitive(T1, cap)
        P2, _ = homology.reduce_to_primitive(T2, cap)
    except homology.ReductionUndetermined:
        return DistinguishVerdict("undetermined", "orbit cap exhausted")
    rho1, rho2 = _rho_fields(P1), _rho_fields(P2)
    if rho1[:3] != rho2[:3]:
        return DistinguishVerdict("distinct", "rho family differs")
    if sorted(rho1[3]) != sorted(rho2[3]):
        return DistinguishVerdict("distinct", "component rho multiset differs")
    if ms1.n == 1 and ms2.n == 1:
        # Rank is an invariant only for single-circle diagrams, where no
        # intersection moves exist and the primitive is unique up to iso.
        if genus_lower_bound(P1) != genus_lower_bound(P2):
            return DistinguishVerdict("distinct", "genus lower bound differs")
    eq = homologous_primitive_equiv(P1, P2, cap, check=False)
    if eq == "inequivalent":
        return DistinguishVerdict("distinct", "primitive matrices inequivalent")
    if eq == "undetermined":
        return DistinguishVerdict("undetermined", "orbit cap exhausted")
    return DistinguishVerdict("not-distinguished",
                              "all implemented invariants agree")
