"""Rank table dim H^(k+1)(W_n nat) against HC^(k-2n) for small coalgebras."""
import argparse

from hopfcyc import hopf as hp
from hopfcyc.weil import Weil, tower_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dtot", type=int, default=8)
    ap.add_argument("--nmax", type=int, default=2)
    args = ap.parse_args()
    Z2 = hp.cyclic_group(2)
    for name, W in (("point", Weil(hp.one_grouplike(), args.dtot)), ("Z2", Weil(Z2, args.dtot)),
                    ("Z2 at eps", Weil(Z2, args.dtot, hp.counit_character(Z2)))):
        t = tower_check(W, args.nmax)
        print(f"{name}  (ok={t['ok']})")
        ks = sorted(t["table"][0])
        print("   n\\k " + " ".join(f"{k:>5d}" for k in ks))
        for n, row in t["table"].items():
            cells = [f"{row[k]['H^(k+1)(W_n)']}/{row[k]['HC^(k-2n)']}" for k in ks]
            print(f"   {n:3d} " + " ".join(f"{c:>5s}" for c in cells))


if __name__ == "__main__":
    main()
