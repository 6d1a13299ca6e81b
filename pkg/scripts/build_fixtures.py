#!/usr/bin/env python3
"""Write the fixed example groups as BGF files into a directory.

Produces the 8-dimensional isospectral pair, the 7-dimensional rank-4 pair
and the eight 24-dimensional family members, then cross-verifies
torsion-freeness and mutual isospectrality.

Usage: python3 scripts/build_fixtures.py [outdir]
"""

import sys
from itertools import combinations
from pathlib import Path

from flatiso import bieberbach


def main() -> int:
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    outdir.mkdir(parents=True, exist_ok=True)

    gamma, gamma_p = bieberbach.construct_main_pair(3, 8)
    d7a, d7b = bieberbach.construct_dim7_pair()
    named = {
        "dim8-gamma.bgf": gamma,
        "dim8-gammaprime.bgf": gamma_p,
        "dim7-gamma.bgf": d7a,
        "dim7-gammaprime.bgf": d7b,
    }
    for j in range(1, 9):
        named[f"dim24-gamma{j}.bgf"] = bieberbach.construct_family24(j)

    for name, group in named.items():
        check = bieberbach.is_torsion_free(group)
        assert check.ok, name
        bieberbach.write_bgf(group, str(outdir / name))
        print(f"wrote {outdir / name}  (k={group.k}, n={group.n})")

    for pair in (("dim8-gamma.bgf", "dim8-gammaprime.bgf"),
                 ("dim7-gamma.bgf", "dim7-gammaprime.bgf")):
        a, b = (bieberbach.read_bgf(str(outdir / p)) for p in pair)
        assert bieberbach.is_sunada_isospectral(a, b)
    members = [bieberbach.read_bgf(str(outdir / f"dim24-gamma{j}.bgf")) for j in range(1, 9)]
    for a, b in combinations(members, 2):
        assert bieberbach.is_sunada_isospectral(a, b)
    print("all pairs verified Sunada isospectral")
    return 0


if __name__ == "__main__":
    sys.exit(main())
