"""Periodic-window parity dims of U(g) next to Chevalley-Eilenberg homology."""
import argparse

from hopfcyc import hopf as hp
from hopfcyc.cocyclic import build_sharp_delta
from hopfcyc.complexes import cyclic_and_periodic
from hopfcyc.verify import lie_homology_dims


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=5)
    args = ap.parse_args()
    for g in (hp.abelian2(), hp.heisenberg3()):
        win = cyclic_and_periodic(build_sharp_delta(g, D=g.dim), args.nmax).extra["hp_window"]
        ce = lie_homology_dims(g)
        par = (sum(v for n, v in ce.items() if n % 2 == 0), sum(v for n, v in ce.items() if n % 2))
        print(f"{g.name:12s} window (even, odd) = ({win['even']['dim']}, {win['odd']['dim']})   "
              f"CE {dict(ce)} -> parity {par}")


if __name__ == "__main__":
    main()
