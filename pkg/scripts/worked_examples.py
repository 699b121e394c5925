#!/usr/bin/env python3
"""Print the library's worked examples end to end.

Builds the two-self-arrow 2-string (sigma), the three-circle chain (tau),
and a crossed-bundle pair, then shows their woven matrices, reductions with
certificates, and invariant reports.  Everything here is deterministic.
"""

from __future__ import annotations

import sys

sys.path.insert(0, "src")

from vstrings.diagram import fixture_sigma, fixture_tau, gen_beta, serialize
from vstrings.homology import reduce_to_primitive
from vstrings.invariants import invariant_report
from vstrings.pairing import format_matrix, multistring_based_matrix


def show(name, ms):
    print(f"== {name} ==")
    print(serialize(ms), end="")
    T = multistring_based_matrix(ms)
    print(format_matrix(T), end="")
    P, cert = reduce_to_primitive(T)
    print("certificate:")
    print(cert.to_text(), end="")
    rep = invariant_report(T)
    print("u =", "{" + ", ".join(str(p) for p in rep.u) + "}")
    print(f"rho = {rep.rho}  rho' = {rep.rho_prime}  rho_cap = {rep.rho_cap}")
    print()


def main():
    show("sigma", fixture_sigma())
    show("tau", fixture_tau())
    show("beta(1,2,2,1,1,0)", gen_beta(1, 2, 2, 1, 1, 0))


if __name__ == "__main__":
    main()
