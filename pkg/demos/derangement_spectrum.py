"""Spectrum of the weighted derangement graph and its Hoffman bound.

Run: python demos/derangement_spectrum.py [n]
"""

import sys

from permspectra import cayley_spectrum, hoffman_bound, solve_weights
from permspectra.spectral import uniform_derangement_spec


def show(title, spec):
    table = cayley_spectrum(spec)
    report = hoffman_bound(table)
    print(title)
    for alpha, value in table.eigenvalues.items():
        print(f"  {str(alpha):<16} {str(value):>10}  x{table.multiplicities[alpha]}")
    print(f"  least eigenvalue {report.lambda_min}, bound {report.bound}\n")


def main(n=5):
    show(f"uniform derangement weights, n={n}", uniform_derangement_spec(n))
    spec = solve_weights(n, 1)
    show(f"solved class weights, n={n}", spec)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
