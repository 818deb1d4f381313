"""All contractions of a Kodaira fibre up to isomorphism, optionally as DOT files."""

import argparse
from pathlib import Path

from ellfib.fibre import concurring_lines, config_isomorphic, emit_dot, enumerate_contractions, kodaira_config
from ellfib.tate import KodairaType


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("type", nargs="?", default="I1*")
    ap.add_argument("--keep-double", action="store_true",
                    help="never contract components of multiplicity 2")
    ap.add_argument("--dot-dir", type=Path)
    args = ap.parse_args()
    src = kodaira_config(KodairaType.parse(args.type))
    keep = [c.id for c in src.components if c.multiplicity == 2] if args.keep_double else []
    classes = enumerate_contractions(src, keep)
    print(f"{args.type}: {len(src.components)} components, {len(classes)} contraction classes")
    for k, (subset, c) in enumerate(classes):
        mults = sorted(x.multiplicity for x in c.components)
        sing = sorted(x.singularity for x in c.components if x.singularity != "smooth")
        tag = "  <- x^2 y = 0" if config_isomorphic(c, concurring_lines()) else ""
        print(f"{k:3d}  contract {list(subset)!s:<24} mults {mults} points {len(c.points)} {sing}{tag}")
        if args.dot_dir:
            args.dot_dir.mkdir(parents=True, exist_ok=True)
            emit_dot(c, args.dot_dir / f"{k:03d}.dot", name=f"{args.type} class {k}", contracted=subset)


if __name__ == "__main__":
    main()
