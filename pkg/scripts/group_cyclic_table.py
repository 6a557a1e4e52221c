"""HH and HC dimensions of group algebras with a chosen character, as a table."""
import argparse

from hopfcyc import hopf as hp
from hopfcyc.cocyclic import build_sharp_delta
from hopfcyc.complexes import cyclic_and_periodic, hochschild


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    args = ap.parse_args()
    S3 = hp.symmetric_group3()
    cases = [(hp.cyclic_group(n), None) for n in (2, 3, 4, 5)] + [(S3, None), (S3, hp.sign_character(S3))]
    print(f"{'group':10s} {'delta':6s} {'HH':>20s} {'HC':>20s}  S bijective")
    for G, d in cases:
        M = build_sharp_delta(G, d)
        hh = hochschild(M, args.nmax)
        hc = cyclic_and_periodic(M, args.nmax)
        name = "eps" if d is None else d.name
        row = lambda r: " ".join(str(r.dims[n]) for n in sorted(r.dims))  # noqa: E731
        print(f"{G.name:10s} {name:6s} {row(hh):>20s} {row(hc):>20s}  {all(hc.extra['S_bijective'].values())}")


if __name__ == "__main__":
    main()
