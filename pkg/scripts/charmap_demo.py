"""Push the level-2 cyclic cocycles of C[G] through the conjugation trace."""
import argparse

from hopfcyc import hopf as hp
from hopfcyc.charmaps import char_map_tau, conjugation_algebra
from hopfcyc.cocyclic import CocyclicModule
from hopfcyc.reports import qstr
from hopfcyc.verify import cyclic_cocycles


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", choices=["z3", "s3"], default="z3")
    ap.add_argument("--level", type=int, default=2)
    args = ap.parse_args()
    G = hp.cyclic_group(3) if args.group == "z3" else hp.symmetric_group3()
    A, tau = conjugation_algebra(G)
    cocycles = cyclic_cocycles(CocyclicModule(G, "localized"), args.level)
    print(f"{G.name}: {len(cocycles)} cyclic cocycles at level {args.level}")
    for c in cocycles:
        r = char_map_tau(A, tau, c)
        src = " + ".join(f"{qstr(v)}*{tuple(G.labels[g] for g in k)}" for k, v in sorted(c.items()))
        print(f"  {src}")
        print(f"    -> {len(r['cochain'])} nonzero entries, certificates {r['certificates']}")


if __name__ == "__main__":
    main()
