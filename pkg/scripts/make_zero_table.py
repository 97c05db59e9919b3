"""Write the reference table of zeta zero ordinates shipped with the package.

The ordinates come from mpmath.zetazero (Riemann-Siegel based), an evaluator
independent of the package's own Xi scan, so the table can cross-check it.
"""

import argparse
from pathlib import Path

import mpmath as mp

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "umbra" / "data" / "zeta_zeros.txt"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--digits", type=int, default=25)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()
    mp.mp.dps = args.digits + 5
    lines = [f"# imaginary parts of the first {args.count} nontrivial zeta zeros (mpmath.zetazero)"]
    for k in range(1, args.count + 1):
        lines.append(mp.nstr(mp.im(mp.zetazero(k)), args.digits))
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {args.count} ordinates to {args.out}")


if __name__ == "__main__":
    main()
