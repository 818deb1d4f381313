"""Strict transforms, discrepancy and chart checks of a weighted blow-up."""

import argparse
import itertools

from ellfib.blowup import (
    WeightVector,
    charts,
    discrepancy,
    form_pullback_discrepancy,
    rational_singular_search,
    singular_locus_check,
    strict_transform,
    transition_check,
)
from ellfib.poly import parse


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--equation", default="y^2 - x^3 - s^4*x - t^6")
    ap.add_argument("--ambient", default="s,t,x,y")
    ap.add_argument("--blown", default="s,t,x,y")
    ap.add_argument("--weights", default="1,1,2,3")
    ap.add_argument("--height", type=int, default=1, help="grid height of the singular point search")
    args = ap.parse_args()
    amb = tuple(args.ambient.split(","))
    wv = WeightVector(tuple(args.blown.split(",")), tuple(int(a) for a in args.weights.split(",")))
    f = parse(args.equation, amb)
    d, crepant = discrepancy(f, wv)
    print(f"f = {f}\nweights {dict(zip(wv.blown_variables, wv.weights))}, discrepancy {d}, crepant {crepant}")
    cs = charts(wv, amb)
    for c in cs:
        r = strict_transform(f, c, wv)
        print(f"\nchart {c.chart_variable}: group order {c.group_order}, E-order {r.exceptional_order}")
        print(f"  strict: {r.strict_equation} = 0")
        if c.group_order == 1:
            chk = form_pullback_discrepancy(f, wv, c)
            print(f"  form pullback: {chk.numerator_order} - {chk.denominator_order} = {chk.discrepancy}"
                  f" (applies: {chk.generator_on_exceptional})")
            hits = rational_singular_search(r.strict_equation, args.height)
            print(f"  singular rational points of height <= {args.height}: {hits or 'none found'}")
        else:
            info = singular_locus_check(f, c, wv)
            print(f"  misses the fixed locus {info['vanishing_coordinates']} = 0: {info['misses_singular_locus']}")
    ok = all(transition_check(f, wv, a, b) for a, b in itertools.permutations(cs, 2))
    print(f"\nchart transitions consistent: {ok}")


if __name__ == "__main__":
    main()
