"""Transposition-graph neighbourhoods against the concentration bound.

Run: python demos/maurey_neighbourhoods.py
"""

import random

from permspectra import Family, permcore, search


def main(n=5, seed=3):
    rng = random.Random(seed)
    elems = list(permcore.enumerate_group(n))
    x = Family(n, rng.sample(elems, 6))
    rep = search.maurey_check(x)
    print(f"|X| = {rep.size} in S_{n}, h0 in [{float(rep.h0.lo):.6f}, {float(rep.h0.hi):.6f}]")
    print("profile:", search.neighborhood_profile(x))
    for row in rep.rows:
        print(f"  h={row.h}: |N_h| = {row.exact}, bound <= {float(row.bound.hi):.3f}, holds {row.holds}")


if __name__ == "__main__":
    main()
