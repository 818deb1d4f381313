"""Necessary-condition verdicts and pencil types for a4 = -1/3 t^(2m), a6 = s^n + 2/27 t^(3m)."""

import argparse

from ellfib.tate import ClassificationError, classify, threefold_necessary_condition
from ellfib.weierstrass import ORIGIN, WeierstrassData, restrict_to_pencil


def family(m, n):
    return WeierstrassData.from_text(f"-1/3*t^{2 * m}", f"s^{n} + 2/27*t^{3 * m}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=7)
    args = ap.parse_args()
    print(f"{'m':>2} {'n':>2}  {'orders':<14} {'verdict':<9} pencil")
    for m in range(1, args.m_max + 1):
        for n in range(1, args.n_max + 1):
            w = family(m, n)
            (v,) = threefold_necessary_condition(w, [ORIGIN])
            try:
                pencil = str(classify(restrict_to_pencil(w, ORIGIN).generic_orders))
            except ClassificationError as e:
                pencil = type(e).__name__
            print(f"{m:>2} {n:>2}  {str(v.orders):<14} {v.verdict:<9} {pencil}")


if __name__ == "__main__":
    main()
