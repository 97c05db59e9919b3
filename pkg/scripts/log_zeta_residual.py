"""Residual of the log-zeta reflection check across s, against -2 pi cot(pi s).

Both log-zeta sums come from the shifted Euler-Maclaurin engine with zeta
continued by Euler-Maclaurin, so no functional equation enters the left side.
Also tabulates the Hurwitz-shift residual of (B + alpha)^{1-s}.
"""

import argparse

import mpmath as mp

from umbra import special
from umbra.catalogue import Recorder, get_identity
from umbra.umbral import ramanujan_sum


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()
    mp.mp.dps = args.precision
    entry = get_identity("funceq-6.1")
    print(f"{'s':>5}  {'lhs - rhs':<22} {'-2 pi cot(pi s)':<22} gap")
    for s in args.s:
        lhs, rhs = entry.evaluate(str(s), Recorder())
        model = -2 * mp.pi * mp.cot(mp.pi * mp.mpf(str(s)))
        print(f"{s:>5}  {mp.nstr(lhs - rhs, 15):<22} {mp.nstr(model, 15):<22} {mp.nstr(abs(lhs - rhs - model), 3)}")

    print("\n(B + alpha)^{1-s}: engine against zeta(s, alpha)(s - 1) and zeta(s, alpha + 1)(s - 1)")
    for alpha in (mp.mpf(1) / 2, mp.mpf(1) / 3, mp.mpf(2)):
        for s in (2, 3):
            engine = ramanujan_sum("power", alpha=1 - s, c=alpha).value
            a = engine - (s - 1) * special.hurwitz_zeta(s, alpha)
            b = engine - (s - 1) * special.hurwitz_zeta(s, alpha + 1)
            print(f"  alpha={mp.nstr(alpha, 6):<9} s={s}  vs alpha: {mp.nstr(a, 8):<12} vs alpha+1: {mp.nstr(b, 3)}")


if __name__ == "__main__":
    main()
