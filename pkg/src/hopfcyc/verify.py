"""The end-to-end acceptance suite: one function per criterion, each returning {"ok": bool, ...}."""
from __future__ import annotations

import math
from fractions import Fraction

from . import hopf as hp
from .charmaps import (char_map_tau, conjugation_algebra, cyclic_module_map_check, descent_check,
                       gamma_face_check, lie_char_map, sl2_on_m2, abelian2_on_m2)
from .cocyclic import (CocyclicModule, build_sharp_delta, build_sharp_delta_sigma, check_cosimplicial,
                       check_cyclicity, check_power_formula)
from .complexes import (NotIntegral, averaging, check_left_integral, cyclic_and_periodic, group_haar,
                        haar_contraction_check, hochschild, uq_cyclic_core)
from .lie import d_lie, lie_quasi_iso_check, wedge_basis
from .linalg import SparseMatrix, kernel_basis, rank
from .weil import (Weil, beta_alpha_report, ch_cs_classes, check_contraction, check_cyclic_operators,
                   check_differentials, cs_rank_report, exactness_report, homotopy_report, s_operator_report,
                   tower_check)


def groups():
    return [hp.cyclic_group(2), hp.cyclic_group(3), hp.symmetric_group3()]


def lies():
    return [hp.abelian2(), hp.heisenberg3(), hp.sl2()]


# a nonzero character on the abelianization, where one exists
LIE_DELTAS = {"abelian2": {0: 1}, "heisenberg3": {0: 1}, "sl2": None}


def _all_ok(d):
    return all(v.get("ok", True) if isinstance(v, dict) else bool(v) for v in d.values())


def criterion_1(level="quick"):
    """Hopf axioms and twisted-antipode identities on every built-in."""
    rows = {}
    cases = [(G, None) for G in groups()] + [(hp.symmetric_algebra(d), 4) for d in (1, 2, 3)]
    cases += [(g, 4) for g in lies()] + [(hp.UqSl2(Fraction(3, 2)), 4)]
    for H, D in cases:
        ax = hp.check_hopf_axioms(H, D, strict=False)
        chars = [hp.counit_character(H) if not isinstance(H, hp.UqSl2) else H.character()]
        if isinstance(H, hp.UqSl2):
            chars.append(H.character(-1))
        elif isinstance(H, hp.GroupAlgebra) and H.name == "S3":
            chars.append(hp.sign_character(H))
        elif isinstance(H, hp.Enveloping) and LIE_DELTAS.get(H.name):
            chars.append(H.linear_character(LIE_DELTAS[H.name]))
        tw = {d.name: hp.check_twisted_identities(H, d, D, strict=False)["passed"] for d in chars}
        rows[H.name] = {"axioms": ax["passed"], "twisted": tw, "ok": ax["passed"] and all(tw.values())}
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_2(level="quick"):
    """t^(n+1) = Id for n <= 3; the power formula with sigma forced to 1 on U_q."""
    rows = {}
    mods = [build_sharp_delta(G) for G in groups()]
    S3 = hp.symmetric_group3()
    mods.append(build_sharp_delta(S3, hp.sign_character(S3)))
    for d in (1, 2, 3):
        mods.append(build_sharp_delta(hp.symmetric_algebra(d), D=2))
    for g in lies():
        mods.append(build_sharp_delta(g, D=2))
        if LIE_DELTAS.get(g.name):
            mods.append(build_sharp_delta(g, g.linear_character(LIE_DELTAS[g.name]), D=2))
    for M in mods:
        cyc = check_cyclicity(M, 3)
        rows[f"{M.H.name}/{M.delta.name}"] = {"ok": _all_ok(cyc)}
    U = hp.UqSl2(Fraction(3, 2))
    Mk = build_sharp_delta_sigma(U, U.character(), U.K, D=2)
    rows["Uq/(eps,K)"] = {"ok": _all_ok(check_cyclicity(Mk, 3, D=1)),
                          "cocyclic identities": check_cosimplicial(Mk, 2, D=1)["ok"]}
    rows["Uq/(eps,K)"]["ok"] &= rows["Uq/(eps,K)"]["cocyclic identities"]
    forced = build_sharp_delta(U, U.character(), D=2, force=True)
    pf = check_power_formula(forced, 3, D=1)
    not_cyclic = not all(v["ok"] for n, v in check_cyclicity(forced, 3, D=1).items() if n >= 1)
    rows["Uq/(eps,1) forced"] = {"power formula": _all_ok(pf), "t^(n+1)=Id fails": not_cyclic,
                                 "ok": _all_ok(pf) and not_cyclic}
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_3(level="quick"):
    rows = {}
    for G in groups():
        M = build_sharp_delta(G)
        hh = hochschild(M, 3).dims
        hc = cyclic_and_periodic(M, 5)
        bij = hc.extra["S_bijective"]
        r = {"HH": hh, "HC": hc.dims, "S_bijective": bij, "hp_window": hc.extra["hp_window"]}
        r["ok"] = (hh[0] == 1 and all(hh[n] == 0 for n in (1, 2, 3))
                   and all(hc.dims[n] == (1 if n % 2 == 0 else 0) for n in hc.dims)
                   and all(bij.values()))
        rows[G.name] = r
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_4(level="quick"):
    """s(h1..hn) = tau(h1)(h2..hn) contracts the complex in positive degrees.

    On C[G] the left integral is the coefficient of e; the uniform average is
    the integral of the dual algebra of functions, so it is run there, and on
    C[G] it must be rejected.
    """
    rows = {}
    for G in groups():
        for H, tau in ((G, group_haar(G)), (hp.FunctionAlgebra(G), averaging(G.n))):
            res = haar_contraction_check(H, tau, 3)
            rows[H.name] = {"levels": {n: r["ok"] for n, r in res.items()}, "ok": all(r["ok"] for r in res.values())}
        try:
            check_left_integral(G, averaging(G.n))
            rejected = False
        except NotIntegral:
            rejected = True
        rows[G.name]["average rejected"] = rejected
        rows[G.name]["ok"] = rows[G.name]["ok"] and rejected
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_5(level="quick"):
    rows = {}
    for d in (1, 2, 3):
        S = hp.symmetric_algebra(d)
        bw = hochschild(build_sharp_delta(S, D=4), 4, D=4).extra["by_weight"]
        got = {n: bw[n][n] for n in range(5)}
        want = {n: math.comb(d, n) for n in range(5)}
        rows[S.name] = {"HH weight n": got, "binomial": want, "ok": got == want}
    return {"rows": rows, "ok": _all_ok(rows)}


def lie_homology_dims(g, delta_vals=None):
    """Chevalley-Eilenberg homology with coefficients in C_delta, by ranks of the boundary matrices."""
    delta_vals = delta_vals or {}
    mats = {}
    for n in range(1, g.dim + 1):
        src, tgt = wedge_basis(g.dim, n), wedge_basis(g.dim, n - 1)
        idx = {w: i for i, w in enumerate(tgt)}
        cols = [{idx[k]: c for k, c in d_lie(g, delta_vals, {w: Fraction(1)}).items()} for w in src]
        mats[n] = rank(SparseMatrix.from_columns(cols, len(tgt)))
    return {n: math.comb(g.dim, n) - mats.get(n, 0) - mats.get(n + 1, 0) for n in range(g.dim + 1)}


def criterion_6(level="quick"):
    rows = {}
    for g in lies():
        r = {"delta=0": lie_quasi_iso_check(g, None, 3)["ok"]}
        if LIE_DELTAS.get(g.name):
            r["delta!=0"] = lie_quasi_iso_check(g, LIE_DELTAS[g.name], 3)["ok"]
        r["ok"] = all(r.values())
        rows[g.name] = r
    for g, want in ((hp.abelian2(), (2, 2)), (hp.heisenberg3(), (3, 3))):
        win = cyclic_and_periodic(build_sharp_delta(g, D=g.dim), 5).extra["hp_window"]
        ce = lie_homology_dims(g)
        ce_par = (sum(v for n, v in ce.items() if n % 2 == 0), sum(v for n, v in ce.items() if n % 2))
        got = (win["even"]["dim"], win["odd"]["dim"])
        rows[g.name]["HP window"] = got
        rows[g.name]["CE parity"] = ce_par
        rows[g.name]["ok"] = rows[g.name]["ok"] and got == ce_par == want
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_7(level="quick"):
    r = uq_cyclic_core(hp.UqSl2(Fraction(3, 2)))
    return {"core": r, "ok": r["ok"]}


def weil_acceptance(W, rho, n_max=2, seed=0):
    out = {"differentials": _all_ok(check_differentials(W)),
           "cyclic operators": _all_ok(check_cyclic_operators(W)),
           "acyclic": check_contraction(W)["ok"],
           "sequences": all(exactness_report(W, n)["ok"] for n in range(n_max + 1)),
           "cs bijective": all(cs_rank_report(W, n)["ok"] for n in range(n_max + 1))}
    if rho is not None:
        out["ch/cs classes"] = ch_cs_classes(W, rho, n_max)["ok"]
        s = s_operator_report(W, rho, seed)
        out["S"] = {k: v for k, v in s.items() if isinstance(v, bool) or v is None}
        out["S ok"] = s["ok"]
    out["ok"] = all(v for k, v in out.items() if isinstance(v, bool))
    return out


def criterion_8(level="quick", seed=0):
    pt = hp.one_grouplike()
    Z2 = hp.cyclic_group(2)
    rows = {"point": weil_acceptance(Weil(pt, 9 if level == "full" else 8), pt.e, 2, seed),
            "Z2": weil_acceptance(Weil(Z2, 6), Z2.e, 2, seed)}
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_9(level="quick"):
    rows = {}
    for C, Dt in ((hp.one_grouplike(), 7), (hp.cyclic_group(2), 6)):
        W = Weil(C, Dt)
        g = homotopy_report(W, 2)
        ba = {n: beta_alpha_report(W, n)["ok"] for n in (1, 2)}
        rows[C.name] = {"homotopy identities": g["ok"], "alpha beta": ba, "ok": g["ok"] and all(ba.values())}
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_10(level="quick"):
    rows = {}
    pt = hp.one_grouplike()
    Z2 = hp.cyclic_group(2)
    for name, W in (("point", Weil(pt, 8)), ("Z2", Weil(Z2, 8)),
                    ("Z2/eps", Weil(Z2, 8, hp.counit_character(Z2)))):
        t = tower_check(W, 2, 6)
        rows[name] = {"table": {n: {k: (v["H^(k+1)(W_n)"], v["HC^(k-2n)"]) for k, v in r.items()}
                                for n, r in t["table"].items()}, "ok": t["ok"]}
    return {"rows": rows, "ok": _all_ok(rows)}


def criterion_11(level="quick"):
    G = hp.cyclic_group(3)
    A, tau = conjugation_algebra(G)
    M = CocyclicModule(G, "localized")
    cocycles = cyclic_cocycles(M, 2)
    images = [char_map_tau(A, tau, c)["certificates"] for c in cocycles]
    lw = cyclic_module_map_check(A, tau, n_max=2)
    out = {"cyclic cocycles (level 2)": len(cocycles),
           "images cyclic": all(c["output cyclic cocycle"] and c["input cyclic cocycle"] for c in images),
           "level-wise": lw["ok"], "gamma faces": gamma_face_check(A, tau)["ok"],
           "descent": descent_check(A, tau)}
    agree = True
    for mk in (sl2_on_m2, abelian2_on_m2):
        B, t = mk()
        for n in (1, 2):
            for w in wedge_basis(B.H.dim, n):
                if not lie_char_map(B, t, {w: Fraction(1)})["certificates"]["equals k(A x)"]:
                    agree = False
    out["lie = k o A"] = agree
    if level == "full":
        S3 = hp.symmetric_group3()
        A3, t3 = conjugation_algebra(S3)
        out["S3 level-wise"] = cyclic_module_map_check(A3, t3, n_max=2)["ok"]
        out["S3 images cyclic"] = all(char_map_tau(A3, t3, c)["certificates"]["output cyclic cocycle"]
                                      for c in cyclic_cocycles(CocyclicModule(S3, "localized"), 2))
    out["ok"] = all(v for v in out.values() if isinstance(v, bool)) and len(cocycles) > 0
    return out


def cyclic_cocycles(M, n, D=None):
    """A basis of ker b cap ker(1 - lambda) at level n."""
    B = M.level_basis(n, D)
    nb = len(M.level_basis(n + 1, D))
    b = M.matrix("b", n, D)
    lam = M.matrix("lambda", n, D) - SparseMatrix.identity(len(B))
    bc, lc = b.columns(), lam.columns()
    cols = [{**bc[j], **{nb + k: v for k, v in lc[j].items()}} for j in range(len(B))]
    K = kernel_basis(SparseMatrix.from_columns(cols, nb + len(B)))
    return [{B[j]: x for j, x in v.items()} for v in K]


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}

TITLES = {
    1: "Hopf axioms and twisted antipode identities",
    2: "cyclicity of the cyclic operator",
    3: "group algebras: HH and HC window",
    4: "Haar contraction",
    5: "S(V): per-weight HH = binomial",
    6: "U(g): antisymmetrization and HP window vs Chevalley-Eilenberg",
    7: "U_q(sl2) low-degree cyclic classes",
    8: "Weil suite on C rho and C[Z2]",
    9: "homotopy-operator identities",
    10: "tower against coalgebra cyclic cohomology",
    11: "characteristic maps",
}


def run_suite(level="quick", only=None, seed=0, threads=1):
    keys = sorted(only) if only else sorted(CRITERIA)

    def one(i):
        fn = CRITERIA[i]
        return fn(level, seed) if i == 8 else fn(level)
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(threads) as ex:
            results = dict(zip(keys, ex.map(_worker, [(i, level, seed) for i in keys])))
    else:
        results = {i: one(i) for i in keys}
    return {"level": level, "seed": seed, "criteria": results, "ok": all(r["ok"] for r in results.values())}


def _worker(args):
    i, level, seed = args
    return CRITERIA[i](level, seed) if i == 8 else CRITERIA[i](level)
