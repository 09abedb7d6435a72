"""Compare the largest intersecting families found by search with the
constructions that avoid cosets.

Run: python demos/extremal_families.py
"""

from permspectra import families, search, solve_weights


def main():
    for n in (4, 5):
        best = search.max_t_intersecting(n, 1)
        spec = families.contained_in_t_coset(best.witness, 1)
        print(f"S_{n}: largest intersecting family {best.optimum} ({best.status}), coset {spec.pairs}")
        nontrivial = search.max_nontrivial_t_intersecting(n, 1)
        print(f"      largest outside every coset {nontrivial.optimum}, D(n,1) has {len(families.build_D(n, 1))}")

    d = families.build_D(5, 1)
    rep = families.stability_report(d, 1, solve_weights(5, 1))
    print(f"\nD(5,1): distance^2 to U = {rep.distance_sq_U}, stability bound = {rep.bound}, holds = {rep.holds}")


if __name__ == "__main__":
    main()
