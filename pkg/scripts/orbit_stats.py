#!/usr/bin/env python3
"""Survey orbit sizes and reduction depth over random diagrams.

Usage: python scripts/orbit_stats.py [count] [max_arrows] [seed]

Reports, for a stream of random diagrams, the intersection-orbit size of
the raw matrix, the certificate length of its reduction, and the size of
the primitive, as a quick empirical look at how hard reduction is at desk
scale.
"""

from __future__ import annotations

import sys
from collections import Counter

sys.path.insert(0, "src")

from vstrings.diagram import random_multistring
from vstrings.homology import intersection_orbit, reduce_to_primitive
from vstrings.pairing import multistring_based_matrix


def main(count=100, max_arrows=7, seed=0):
    orbit_sizes = Counter()
    cert_lens = Counter()
    biggest = 0
    for k in range(count):
        n = 1 + k % 3
        m = k % (max_arrows + 1)
        ms = random_multistring(n, m, seed=seed + k)
        T = multistring_based_matrix(ms)
        orb = intersection_orbit(T)
        orbit_sizes[len(orb.matrices)] += 1
        biggest = max(biggest, len(orb.matrices))
        P, cert = reduce_to_primitive(T)
        cert_lens[len(cert.moves)] += 1
    print(f"{count} diagrams (n<=3, m<={max_arrows}), seed base {seed}")
    print("orbit size histogram:",
          dict(sorted(orbit_sizes.items())))
    print("certificate length histogram:",
          dict(sorted(cert_lens.items())))
    print("largest orbit:", biggest)


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:4]]
    main(*args)
