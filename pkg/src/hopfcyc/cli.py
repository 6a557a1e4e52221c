"""Command line front end.

Every subcommand builds a RunConfig, produces a report dict through a pure
``run_*`` function and exits 0 iff every asserted check passed.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import hopf as hp
from .charmaps import (PreconditionFailure, abelian2_on_m2, abelian2_on_polynomials, char_map_tau,
                       conjugation_algebra, constant_term, cyclic_module_map_check, lie_char_map,
                       sl2_on_m2, sl2_on_polynomials)
from .cocyclic import CocyclicModule, check_cyclicity
from .complexes import cotor, cyclic_and_periodic, hochschild, mixed_complex_check, uq_cotor_classes, uq_cyclic_core
from .config import ConfigError, RunConfig, env_threads
from .io import PresentationError, load_presentation, with_q
from .reports import dumps, qparse, qstr
from .weil import Weil, weil_suite

WEIL_CHECKS = ("acyclic", "cs", "sequences", "homotopy", "tower", "ch")


# ----------------------------------------------------------------- helpers

def _present(cfg: RunConfig):
    P = load_presentation(cfg.hopf)
    if cfg.q is not None:
        if P.kind != "uq_sl2":
            raise ConfigError("--q only applies to uq_sl2 presentations")
        P = with_q(P, qparse(cfg.q))
    if cfg.delta is not None:
        P.delta = parse_delta(P, cfg.delta)
    if cfg.sigma is not None:
        P.sigma = parse_sigma(P, cfg.sigma)
    return P


def parse_delta(P, text):
    H = P.hopf
    if text == "eps":
        return H.character() if P.kind == "uq_sl2" else hp.counit_character(H)
    if P.kind == "uq_sl2":
        if text != "sgnK":
            raise ConfigError("uq_sl2 characters: eps, sgnK")
        return H.character(-1)
    if text == "sign" and isinstance(H, hp.GroupAlgebra) and H.name == "S3":
        return hp.sign_character(H)
    labels = getattr(H, "labels", None) or []
    vals = {}
    for part in text.split(","):
        if "=" not in part:
            raise ConfigError(f"--delta expects eps, sign, sgnK or label=value pairs, got {text!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in labels:
            raise ConfigError(f"--delta: unknown label {k!r}")
        vals[labels.index(k)] = qparse(v)
    if isinstance(H, hp.Enveloping):
        return H.linear_character(vals)
    if set(vals) != set(H.basis()):
        raise ConfigError("--delta must give a value for every group element")
    ch = hp.Character(H, lambda k: vals[k], "delta")
    for a in H.basis():
        for b in H.basis():
            if ch.on(H.mul(a, b)) != vals[a] * vals[b]:
                raise ConfigError("--delta is not multiplicative")
    return ch


def parse_sigma(P, text):
    H = P.hopf
    if P.kind == "uq_sl2":
        table = {"K": H.K, "Kinv": H.KINV, "1": (0, 0, 0)}
        if text not in table:
            raise ConfigError("uq_sl2 --sigma: K, Kinv or 1")
        return table[text]
    labels = getattr(H, "labels", None) or []
    if text not in labels:
        raise ConfigError(f"--sigma: unknown label {text!r}")
    return labels.index(text)


def passed(checks):
    def ok(v):
        if isinstance(v, dict):
            return v.get("ok", v.get("passed", all(ok(x) for x in v.values())))
        return v is not False
    return all(ok(v) for v in checks.values())


def _finish(cfg, report):
    report = {"config": cfg.record(), **report}
    report["passed"] = passed(report.get("checks", {}))
    return report


# ----------------------------------------------------------------- run functions

def run_axioms(cfg: RunConfig):
    P = _present(cfg)
    H = P.hopf
    D = cfg.D if cfg.D is not None else (None if getattr(H, "finite", True) else 4)
    ax = hp.check_hopf_axioms(H, D, strict=False)
    tw = hp.check_twisted_identities(H, P.delta, D, strict=False)
    inv = hp.check_involutive(H, P.delta, D)
    sampled = hp.sample_identities(H, D if D is not None else None, cfg.seed)
    checks = {"hopf axioms": ax["passed"], "twisted identities": tw["passed"], "sampled": sampled["passed"]}
    extra = {"involutive": inv["holds"]}
    if P.sigma is not None:
        try:
            hp.check_modular_pair(H, P.delta, P.sigma, D)
            checks["modular pair"] = True
        except hp.HopfError as e:
            checks["modular pair"] = False
            extra["modular failure"] = str(e)
    return _finish(cfg, {"presentation": P.describe(), "axioms": ax, "twisted": tw, "sampled": sampled, "extra": extra,
                         "checks": checks})


def run_cyclic(cfg: RunConfig):
    P = _present(cfg)
    H = P.hopf
    if P.kind == "uq_sl2":
        if P.sigma != H.K:
            raise ConfigError("for uq_sl2 the cyclic module needs --sigma K (S_delta^2 is not the identity)")
        core = uq_cyclic_core(H)
        return _finish(cfg, {"presentation": P.describe(), "exactness": "filtered",
                             "hp_window": {"HC0": core["HC0"], "degree-1 generators": ["E", "KF"]},
                             "core": core, "checks": {"low-degree core": core["ok"]}})
    D = cfg.D if cfg.D is not None else (None if getattr(H, "finite", True) else 3)
    if P.sigma is None:
        M = CocyclicModule(H, "localized", delta=P.delta, D=D)
    else:
        M = CocyclicModule(H, "modular", delta=P.delta, sigma=P.sigma, D=D)
    hh = hochschild(M, cfg.n_max, D)
    hc = cyclic_and_periodic(M, cfg.n_max, D)
    mixed = mixed_complex_check(M, min(cfg.n_max, 3), D) if getattr(H, "finite", True) else {}
    checks = {"cyclicity": all(r["ok"] for r in check_cyclicity(M, min(cfg.n_max, 3), D).values())}
    if mixed:
        checks["mixed complex"] = all(mixed.values())
    return _finish(cfg, {"presentation": P.describe(), "hochschild": hh, "cyclic": hc, "checks": checks})


def run_cotor(cfg: RunConfig):
    P = _present(cfg)
    H = P.hopf
    unit = (0, 0, 0) if P.kind == "uq_sl2" else getattr(H, "e", None)
    alpha = parse_sigma(P, cfg.extra["alpha"]) if cfg.extra.get("alpha") else unit
    if alpha is None:
        raise ConfigError("cotor needs --alpha for this presentation")
    beta = P.sigma if P.sigma is not None else alpha
    rep = cotor(H, alpha, beta, cfg.n_max, cfg.D)
    checks = {}
    extra = {}
    if isinstance(H, hp.GroupAlgebra):
        # group coalgebras are cosemisimple: only degree 0 survives, and only when alpha = beta
        want = {n: int(n == 0 and alpha == beta) for n in rep.dims}
        checks["cosemisimple"] = dict(rep.dims) == want
    if P.kind == "uq_sl2" and beta == H.K and alpha == (0, 0, 0):
        cls = uq_cotor_classes(H)
        extra["classes"] = cls
        checks["x, y cocycles"] = all(cls["cocycles"].values())
        checks["x, y independent"] = cls["independent"]
    return _finish(cfg, {"presentation": P.describe(), "cotor": rep, "extra": extra, "checks": checks})


def run_weil(cfg: RunConfig):
    P = _present(cfg)
    C = P.hopf
    delta = P.delta if cfg.delta is not None else None
    W = Weil(C, cfg.dtot, delta)
    checks = tuple(cfg.checks) or WEIL_CHECKS
    rho = C.e if isinstance(C, hp.GroupAlgebra) else None
    rep = weil_suite(W, cfg.n, checks, rho, cfg.seed)
    if "tower" in rep:
        rep["tower"]["rank table"] = {n: {k: [v["H^(k+1)(W_n)"], v["HC^(k-2n)"]] for k, v in row.items()}
                                      for n, row in rep["tower"]["table"].items()}
    flat = {}
    for k, v in rep.items():
        if k == "coalgebra":
            continue
        if k in ("differentials", "sequences", "cs"):
            flat[k] = all((x.get("ok", True) if isinstance(x, dict) else bool(x)) for x in v.values())
        elif isinstance(v, dict) and "ok" in v:
            flat[k] = v["ok"]
    return _finish(cfg, {"weil": rep, "checks": flat})


ALGEBRAS = {
    "conj": "group algebra acting on itself by conjugation, trace = coefficient of e",
    "m2-ad": "M2 with sl2 (or the diagonal of abelian2) acting by commutators, matrix trace",
    "poly": "Q[x,y]/deg>2 with degree-preserving derivations, constant-term trace",
}


def _algebra(P, name):
    H = P.hopf
    if name == "conj":
        if not isinstance(H, hp.GroupAlgebra):
            raise ConfigError("--algebra conj needs a group presentation")
        return conjugation_algebra(H)
    if name in ("m2-ad", "poly"):
        if not isinstance(H, hp.Enveloping) or H.name not in ("sl2", "abelian2"):
            raise ConfigError(f"--algebra {name} is defined for builtin:sl2 and builtin:abelian2")
        if name == "m2-ad":
            return sl2_on_m2() if H.name == "sl2" else abelian2_on_m2()
        A = sl2_on_polynomials(2) if H.name == "sl2" else abelian2_on_polynomials(2)
        return A, constant_term(A)
    raise ConfigError(f"unknown --algebra {name!r}; choose from {', '.join(ALGEBRAS)}")


def read_cochain(path, P):
    """JSON {"terms": [[[label, ..], "p/q"], ..]} or {"wedges": [[[label, ..], "p/q"], ..]}."""
    try:
        spec = json.loads(Path(path).read_text())
    except OSError as e:
        raise ConfigError(f"{path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}: invalid JSON: {e.msg}") from e
    labels = list(getattr(P.hopf, "labels", []))
    kind = "wedges" if "wedges" in spec else "terms"
    out = {}
    for entry in spec.get(kind, []):
        legs, c = entry
        try:
            idx = tuple(labels.index(x) for x in legs)
        except ValueError as e:
            raise ConfigError(f"{path}: unknown label in {legs}") from e
        if kind == "terms" and isinstance(P.hopf, hp.Enveloping):
            idx = tuple(P.hopf.gen(i) for i in idx)
        out[idx] = out.get(idx, Fraction(0)) + qparse(c)
    return kind, {k: v for k, v in out.items() if v}


def run_charmap(cfg: RunConfig):
    P = _present(cfg)
    A, tau = _algebra(P, cfg.extra.get("algebra", "conj"))
    kind, c = read_cochain(cfg.extra["cochain"], P) if cfg.extra.get("cochain") else ("terms", {(): Fraction(1)})
    if kind == "wedges":
        r = lie_char_map(A, tau, c)
    else:
        r = char_map_tau(A, tau, c, P.delta)
    lw = cyclic_module_map_check(A, tau, P.delta, D=1, n_max=min(cfg.n_max, 2))
    cert = r["certificates"]
    checks = {"level-wise map": lw["ok"]}
    if kind == "wedges":
        checks["equals k(A x)"] = cert["equals k(A x)"]
        if cert["Lie cycle"]:
            checks["cyclic output"] = cert["b-closed"] and cert["lambda-invariant"]
    elif cert["input cyclic cocycle"]:
        checks["cyclic output"] = cert["output cyclic cocycle"]
    tensor = [[list(k), qstr(v)] for k, v in sorted(r["cochain"].items())]
    return _finish(cfg, {"algebra": A.name, "trace": {str(k): qstr(v) for k, v in tau.items()},
                         "level": r["level"], "tensor": tensor, "certificates": cert,
                         "level-wise": lw, "checks": checks})


def run_verify(cfg: RunConfig):
    from .verify import TITLES, run_suite
    only = cfg.extra.get("only") or None
    res = run_suite(cfg.extra.get("level", "quick"), only, cfg.seed, cfg.threads)
    checks = {f"{i}. {TITLES[i]}": r["ok"] for i, r in res["criteria"].items()}
    return _finish(cfg, {"suite": res, "checks": checks})


GOLDEN = {
    "group_algebra.json": RunConfig("cyclic", hopf="builtin:s3", n_max=5),
    "symmetric_algebra.json": RunConfig("cyclic", hopf="builtin:sym2", D=4, n_max=4),
    "point_weil_tower.json": RunConfig("weil", hopf="builtin:point", dtot=8, n=2, checks=("tower",)),
}

RUNNERS = {"axioms": run_axioms, "cyclic": run_cyclic, "cotor": run_cotor, "weil": run_weil,
           "charmap": run_charmap, "verify": run_verify}


def golden_dir():
    return Path(__file__).parent / "golden"


def run_golden(update=False):
    rows = {}
    for name, cfg in GOLDEN.items():
        text = dumps(RUNNERS[cfg.command](cfg))
        path = golden_dir() / name
        if update:
            path.parent.mkdir(exist_ok=True)
            path.write_text(text)
            rows[name] = {"ok": True, "updated": True}
            continue
        if not path.exists():
            rows[name] = {"ok": False, "diff": "missing golden file"}
            continue
        old = path.read_text()
        diff = [f"line {i + 1}: {a!r} != {b!r}" for i, (a, b) in
                enumerate(zip(old.splitlines(), text.splitlines())) if a != b][:5]
        if len(old.splitlines()) != len(text.splitlines()):
            diff.append(f"line count {len(old.splitlines())} != {len(text.splitlines())}")
        rows[name] = {"ok": old == text, "diff": diff}
    return {"golden": rows, "checks": {k: v["ok"] for k, v in rows.items()}, "passed": all(v["ok"] for v in rows.values())}


# ----------------------------------------------------------------- click layer

def _emit(cfg, report):
    if cfg.fmt == "csv":
        from .reports import CohomologyReport
        parts = [v.to_csv() for v in report.values() if isinstance(v, CohomologyReport)]
        text = "".join(parts) if parts else dumps(report)
    else:
        text = dumps(report)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        click.echo(text, nl=False)
    sys.exit(0 if report.get("passed") else 1)


def _run(command, **kw):
    try:
        cfg = RunConfig(command, threads=env_threads(), **kw)
        report = RUNNERS[command](cfg)
    except (ConfigError, PresentationError, PreconditionFailure, hp.HopfError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)
    _emit(cfg, report)


def common(f):
    f = click.option("--seed", type=int, default=0, show_default=True, help="seed for sampled checks")(f)
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), help="write the report here")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")(f)
    return f


def hopf_opts(f):
    f = click.option("--hopf", default="builtin:z2", show_default=True,
                     help="builtin:<name> or a presentation JSON file")(f)
    f = click.option("--q", default=None, help="q for uq_sl2, as p/q")(f)
    f = click.option("--delta", default=None, help="eps, sign, sgnK or label=value,..")(f)
    f = click.option("--sigma", default=None, help="group-like label (K for uq_sl2)")(f)
    f = click.option("--D", "D", type=int, default=None, help="weight truncation")(f)
    return f


@click.group()
def main():
    """Exact computations for cyclic cohomology of Hopf algebras and the noncommutative Weil complex."""


@main.command()
@hopf_opts
@common
def axioms(**kw):
    """Hopf axioms, twisted antipode identities, modular pair."""
    _run("axioms", **kw)


@main.command()
@hopf_opts
@click.option("--nmax", "n_max", type=int, default=3, show_default=True)
@common
def cyclic(**kw):
    """Hochschild, cyclic and periodic-window cohomology of the cocyclic module."""
    _run("cyclic", **kw)


@main.command("cotor")
@hopf_opts
@click.option("--alpha", default=None, help="left group-like (default the unit)")
@click.option("--nmax", "n_max", type=int, default=2, show_default=True)
@common
def cotor_cmd(alpha, **kw):
    """Cotor between one-dimensional comodules given by group-likes."""
    _run("cotor", extra={"alpha": alpha}, **kw)


@main.command()
@click.option("--coalgebra", "hopf", default="builtin:point", show_default=True)
@click.option("--dtot", type=int, default=8, show_default=True)
@click.option("--n", type=int, default=2, show_default=True)
@click.option("--check", "checks", multiple=True, type=click.Choice(WEIL_CHECKS))
@click.option("--delta", default=None)
@common
def weil(**kw):
    """The truncated Weil complex and its identities."""
    kw["checks"] = tuple(kw["checks"])
    _run("weil", **kw)


@main.command()
@hopf_opts
@click.option("--algebra", default="conj", type=click.Choice(sorted(ALGEBRAS)), show_default=True)
@click.option("--trace", default="default", type=click.Choice(["default"]),
              help="the algebra's built-in invariant trace")
@click.option("--cochain", type=click.Path(exists=True, dir_okay=False), default=None,
              help='JSON {"terms": [[[labels..], "p/q"], ..]} or {"wedges": ...}')
@click.option("--nmax", "n_max", type=int, default=2, show_default=True)
@common
def charmap(algebra, trace, cochain, **kw):
    """Push a cochain of the Hopf algebra through an invariant trace."""
    _run("charmap", extra={"algebra": algebra, "cochain": cochain}, **kw)


@main.command()
@click.option("--suite", type=click.Choice(["paper", "acceptance"]), default="acceptance",
              help="both names run the acceptance suite")
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--only", type=int, multiple=True, help="criterion numbers to run")
@common
def verify(suite, level, only, **kw):
    """Run the acceptance suite."""
    _run("verify", extra={"level": level, "only": sorted(only)}, **kw)


@main.command()
@click.option("--update", is_flag=True, help="rewrite the golden files from the current code")
def golden(update):
    """Compare reports against the checked-in golden corpus."""
    res = run_golden(update)
    click.echo(dumps(res), nl=False)
    sys.exit(0 if res["passed"] else 1)


if __name__ == "__main__":
    main()
