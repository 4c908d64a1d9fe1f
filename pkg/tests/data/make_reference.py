"""Regenerate the reference zeta-zero tables with mpmath.

    python tests/data/make_reference.py

mpmath's ``zetazero`` (Rosser blocks plus its own Riemann-Siegel code) is
independent of the finder under test.
"""

from pathlib import Path

import mpmath

HERE = Path(__file__).parent
mpmath.mp.dps = 30


def main():
    with open(HERE / "zeros_first100.txt", "w") as fh:
        fh.write("# heights of the first 100 nontrivial zeta zeros (mpmath.zetazero)\n")
        for n in range(1, 101):
            fh.write(f"{mpmath.nstr(mpmath.zetazero(n).imag, 15, strip_zeros=False)}\n")
    with open(HERE / "zeros_9870_9890.txt", "w") as fh:
        fh.write("# index height (mpmath.zetazero)\n")
        for n in range(9870, 9891):
            fh.write(f"{n} {mpmath.nstr(mpmath.zetazero(n).imag, 15, strip_zeros=False)}\n")


if __name__ == "__main__":
    main()
