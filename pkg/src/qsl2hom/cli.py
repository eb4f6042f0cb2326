"""Command-line front end: ``qsl2hom <command> [flags]``.

Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 bad parameters.
Every flag can also be set through an environment variable
``QSL2HOM_<FLAG>`` (for example ``QSL2HOM_LAMBDA=q^-2``); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .scalars import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    """Parsed flags shared by all commands."""

    command: str
    q: str = "generic"
    lam: str | None = None
    mu: str | None = None
    I: int | None = None
    L: int | None = None
    margin: int = 2
    N: int | None = None
    M: int | None = None
    i: int | None = None
    case: int | None = None
    fmt: str = "text"
    seed: int = 0
    degrees: tuple = (0, 1, 2, 3)
    cases: int = 1000
    workers: int = 1  # process pool size for per-bidegree work; never echoed
    extra: dict = field(default_factory=dict)

    def echo(self):
        out = {"command": self.command, "q": self.q, "lambda": self.lam, "mu": self.mu,
               "I": self.I, "L": self.L, "margin": self.margin, "seed": self.seed}
        for k in ("N", "M", "i", "case"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        out.update(self.extra)
        return out


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing


_FLAGS = [
    ("--q", str, "generic", "generic, or a rational specialization such as 2 or 3/2"),
    ("--lambda", str, None, "lambda as a scalar expression, e.g. q^-2"),
    ("--mu", str, None, "mu as a scalar expression"),
    ("--I", int, None, "window bound on |i|"),
    ("--L", int, None, "window cap on the bc-level j + k"),
    ("--margin", int, 2, "extra levels used for boundaries"),
    ("--N", int, None, None),
    ("--M", int, None, None),
    ("--i", int, None, None),
    ("--case", int, None, "parameter case 1..5"),
    ("--format", str, "text", "text, json or csv"),
    ("--seed", int, 0, "seed for the randomized suites"),
    ("--degrees", str, "0,1,2,3", "comma-separated homological degrees"),
    ("--cases", int, 1000, "cases per randomized suite"),
    ("--workers", int, 1, "processes for per-bidegree computations"),
]


def _env_default(flag: str, default):
    key = "QSL2HOM_" + flag.lstrip("-").upper()
    return os.environ.get(key, default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for flag, typ, default, hlp in _FLAGS:
        dest = "lam" if flag == "--lambda" else ("fmt" if flag == "--format" else flag.lstrip("-"))
        common.add_argument(flag, dest=dest, type=typ, default=_env_default(flag, default), help=hlp)
    p = argparse.ArgumentParser(prog="qsl2hom", description="Twisted Hochschild and cyclic homology of A(SL_q(2)).")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="windowed HH_n dims against the theorem table")
    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("suite", choices=["algebra", "hopf", "chains", "koszul", "resolution", "cocycles", "haar"])
    pr = sub.add_parser("pair", parents=[common], help="evaluate <cochain, cycle>")
    pr.add_argument("cochain")
    pr.add_argument("cycle")
    sub.add_parser("hc", parents=[common], help="twisted cyclic homology instance report")
    sub.add_parser("probe-conjecture", parents=[common], help="evidence on the case-2 conjecture")
    sub.add_parser("catalog", parents=[common], help="verify the generator catalog")
    return p


def parse_config(argv) -> tuple:
    args = build_parser().parse_args(argv)
    try:
        degrees = tuple(int(x) for x in str(args.degrees).split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad --degrees: {args.degrees}") from exc
    if any(d < 0 or d > 3 for d in degrees):
        raise UsageError("--degrees must lie in 0..3")
    if args.fmt not in ("text", "json", "csv"):
        raise UsageError("--format must be text, json or csv")

    def num(x):
        return None if x is None else int(x)

    cfg = CliConfig(args.command, str(args.q), args.lam, args.mu, num(args.I), num(args.L),
                    int(args.margin), num(args.N), num(args.M), num(args.i), num(args.case),
                    args.fmt, int(args.seed), degrees, int(args.cases), max(1, int(args.workers)))
    return cfg, args


# ---------------------------------------------------------------------------
# shared helpers


def _setting(cfg: CliConfig, lam=None, mu=None):
    from .homology import Setting

    lam = lam if lam is not None else (cfg.lam or "1")
    mu = mu if mu is not None else (cfg.mu or "1")
    cfg.lam, cfg.mu = lam, mu
    try:
        return Setting(cfg.q, lam, mu)
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def _case_params(cfg: CliConfig):
    """(lambda, mu) for --case with --N/--M, or the explicit flags."""
    c = cfg.case
    if c is None:
        return cfg.lam or "1", cfg.mu or "1"
    N, M = cfg.N, cfg.M
    if c == 1:
        return cfg.lam or "1", cfg.mu or "q"
    if c == 2:
        if N is None or N < 0:
            raise UsageError("case 2 needs --N >= 0")
        return f"q^{-(N + 2)}", "1"
    if c in (3, 4):
        if N is None or M is None or N < 0 or M < 0:
            raise UsageError(f"case {c} needs --N >= 0 and --M >= 0")
        return f"q^{-(N + 1)}", (f"q^{M + 1}" if c == 3 else f"q^{-(M + 1)}")
    if c == 5:
        if cfg.lam is None or cfg.mu is None:
            raise UsageError("case 5 needs explicit --lambda and --mu")
        return cfg.lam, cfg.mu
    raise UsageError("--case must be 1..5")


def _result(name, computed, verdict, expected=None, certificate=None):
    out = {"name": name}
    if expected is not None:
        out["expected"] = expected
    out["computed"] = computed
    out["verdict"] = verdict
    if certificate is not None:
        out["certificate"] = certificate
    return out


def _check_result(c: dict):
    return _result(c["name"], c["computed"], c["verdict"], c.get("expected"), c.get("certificate"))


@dataclass
class Report:
    config: dict
    results: list
    stability: dict
    label: str | None = None

    def failed(self) -> bool:
        return any(r["verdict"] == "fail" for r in self.results)

    def to_dict(self):
        out = {"config": self.config, "results": self.results, "stability": self.stability}
        if self.label:
            out["label"] = self.label
        return out


def render(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2, sort_keys=True, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "expected", "computed", "verdict"])
        for r in rep.results:
            w.writerow([r["name"], _flat(r.get("expected")), _flat(r["computed"]), r["verdict"]])
        return buf.getvalue().rstrip("\n")
    lines = []
    if rep.label:
        lines.append(f"[{rep.label}]")
    cfg = ", ".join(f"{k}={v}" for k, v in rep.config.items() if v is not None)
    lines.append(f"# {cfg}")
    for r in rep.results:
        exp = f" (expected {_flat(r['expected'])})" if "expected" in r else ""
        lines.append(f"{r['verdict']:>12}  {r['name']}: {_flat(r['computed'])}{exp}")
    if rep.stability:
        lines.append(f"# stability: {json.dumps(rep.stability, sort_keys=True)}")
    return "\n".join(lines)


def _flat(x) -> str:
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True, default=str)
    return "" if x is None else str(x)


# ---------------------------------------------------------------------------
# commands


def cmd_table(cfg: CliConfig) -> Report:
    from .homology import hh_dims, theorem_table_dims

    lam, mu = _case_params(cfg)
    st = _setting(cfg, lam, mu)
    cfg.I = 5 if cfg.I is None else cfg.I
    cfg.L = 10 if cfg.L is None else cfg.L
    reps = hh_dims(st, cfg.I, cfg.L, cfg.margin, cfg.degrees, cfg.workers)
    printed = theorem_table_dims(st.case)
    results = []
    for r in reps:
        cert = {"windowed": {str(k): v for k, v in sorted(r.windowed.items())}, "stable": r.stable,
                "grows": r.grows, "by_I": {str(k): v for k, v in sorted(r.by_I.items())},
                "grows_in_I": r.grows_in_I}
        if printed[r.n] != r.expected:
            cert["printed table value"] = printed[r.n]
        results.append(_result(f"HH_{r.n}", r.windowed[cfg.L], r.verdict, r.expected, cert))
    # finite rows must agree at L and L - 2; infinite rows carry the growth flag instead
    finite = [r for r in reps if r.expected != "inf"]
    agree = cfg.L >= 2 and all(r.windowed[cfg.L - 2] == r.windowed[cfg.L] for r in finite)
    cfg.extra["case_label"] = st.case.label()
    return Report(cfg.echo(), results, {"L": cfg.L, "L_minus_2_agree": agree})


def cmd_verify(cfg: CliConfig, suite: str) -> Report:
    from .scalars import make_field
    from .suites import GROUPS, run_suite

    try:
        F = make_field(cfg.q)
    except (ParseError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    results = []
    stability = {}
    if suite in GROUPS:
        for name in GROUPS[suite]:
            r = run_suite(name, F, cfg.cases, cfg.seed)
            cert = None if r.ok else {"first counterexample": r.first_failure}
            results.append(_result(name, {"cases": r.cases, "failures": r.failures},
                                   "pass" if r.ok else "fail", None, cert))
    elif suite == "resolution":
        from .koszul import verify_resolution
        from .qsl2 import QSL2

        cfg.I = 3 if cfg.I is None else cfg.I
        cfg.L = 8 if cfg.L is None else cfg.L
        reps = verify_resolution(QSL2(F), cfg.I, cfg.L, cfg.margin)
        for n in (0, 1, 2, 3):
            rs = [r for r in reps if r.degree == n]
            bad = [r.w for r in rs if not r.exact]
            kern = sum(r.kernel_dim for r in rs)
            results.append(_result(f"exactness at K_{n}", {"kernel": kern, "covered": sum(r.covered for r in rs)},
                                   "pass" if not bad else "fail", None,
                                   {"failing w": bad} if bad else None))
        r = run_suite("kk", F, cfg.cases, cfg.seed)
        results.append(_result("k o k = 0", {"cases": r.cases, "failures": r.failures},
                               "pass" if r.ok else "fail"))
    elif suite == "haar":
        from .homology import haar_checks

        cfg.I = 3 if cfg.I is None else cfg.I
        cfg.L = 8 if cfg.L is None else cfg.L
        results = [_check_result(c.to_dict()) for c in haar_checks(F, cfg.I, cfg.L)]
    elif suite == "cocycles":
        from .homology import s2h_check, verify_catalog

        lam, mu = _case_params(cfg)
        st = _setting(cfg, lam, mu)
        rep = verify_catalog(st)
        results = [_check_result(c.to_dict()) for c in rep.checks]
        for w in rep.witnesses:
            results.append(_result(f"Koszul witness {w.name}", w.to_dict(),
                                   "pass" if w.nontrivial else "fail"))
        results += [_check_result(c.to_dict()) for c in s2h_check(F, seed=cfg.seed)]
        cfg.extra["case_label"] = st.case.label()
    return Report(cfg.echo() | {"suite": suite}, results, stability)


_PHI_NAMES = {"phi1": ("cyclic", 0), "phi_1": ("cyclic", 0), "phi1'": ("cyclic", 1), "phi_1'": ("cyclic", 1),
              "phi2": ("two", 0), "phi_2": ("two", 0), "phi2'": ("two", 1), "phi_2'": ("two", 1)}


def resolve_cochain(st, name: str, cfg: CliConfig):
    """Cochain by name: catalog duals, h[...], h_n, haar, S2h, phi_2,n, phi1/phi2 (cases 3, 4)."""
    from .catalog import (case34_cyclic_cocycles, case34_two_cocycles, generator_catalog, h_n_trace,
                          h_one, h_power, haar_functional, phi_2n, point_functional)
    from .chains import FunctionalCochain, ProductCochain

    A = st.A
    s = name.strip()
    if s in ("haar", "h"):
        return FunctionalCochain(haar_functional(A))
    if s in ("S2h", "S^2h", "S^2 h"):
        return ProductCochain(haar_functional(A), 4)
    if s in _PHI_NAMES:
        if st.case.case not in (3, 4):
            raise UsageError(f"{s} is defined in cases 3 and 4")
        kind, k = _PHI_NAMES[s]
        fn = case34_cyclic_cocycles if kind == "cyclic" else case34_two_cocycles
        return fn(st, st.case.case, st.case.M, st.case.N)[k]
    m = re.fullmatch(r"h_(-?\d+)", s)
    if m:
        return FunctionalCochain(h_n_trace(A, int(m.group(1))))
    m = re.fullmatch(r"phi_?2,(-?\d+)", s)
    if m:
        return phi_2n(A, st.lam, int(m.group(1)))
    m = re.fullmatch(r"h\[(.+)\]", s)
    if m:
        inner = m.group(1)
        if inner.strip() == "1":
            return FunctionalCochain(h_one(A, st.lam))
        try:
            el = A.parse(inner.replace(" ", "*"), _env(cfg))
        except (ParseError, ValueError) as exc:
            raise UsageError(f"bad functional {s}: {exc}") from exc
        if len(el.terms) != 1:
            raise UsageError(f"{s}: expected a single monomial")
        mono = next(iter(el.terms))
        i, j, k = mono
        if i == 0 and (j == 0 or k == 0) and (j or k) and st.case.case in (1, 2):
            return FunctionalCochain(h_power(A, st.lam, "b" if j else "c", j or k))
        return FunctionalCochain(point_functional(A, mono))
    for e in generator_catalog(st):
        for phi in ([e.dual] if e.dual is not None else []) + list(e.extra_duals):
            if phi.name == s:
                return phi
    raise UsageError(f"unknown cochain {name!r}")


def _env(cfg: CliConfig):
    return {k: v for k, v in (("N", cfg.N), ("M", cfg.M), ("i", cfg.i)) if v is not None}


def resolve_cycle(st, text: str, cfg: CliConfig):
    """Chain by name (catalog entries) or by formula; B(...), B0(...), B1(...) apply Connes' B."""
    from .catalog import generator_catalog
    from .chains import connes_B, parse_chain

    s = text.strip()
    m = re.fullmatch(r"B_?\d?\((.*)\)", s)
    if m:
        inner = m.group(1)
        if not inner.startswith("("):
            inner = f"({inner})"
        return connes_B(resolve_cycle(st, inner, cfg), st.sigma)
    for e in generator_catalog(st):
        if e.name == s:
            return e.cycle
    try:
        return parse_chain(st.A, s, _env(cfg))
    except (ParseError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read cycle {text!r}: {exc}") from exc


def cmd_pair(cfg: CliConfig, cochain: str, cycle: str) -> Report:
    from .chains import chain_str, pair

    lam, mu = _case_params(cfg)
    st = _setting(cfg, lam, mu)
    phi = resolve_cochain(st, cochain, cfg)
    ch = resolve_cycle(st, cycle, cfg)
    if ch.n != phi.degree:
        raise UsageError(f"{cochain} has degree {phi.degree} but {cycle} has degree {ch.n}")
    v = pair(phi, ch)
    cfg.extra["case_label"] = st.case.label()
    return Report(cfg.echo(), [_result(f"<{cochain}, {cycle}>", st.F.fmt(v), "computed", None,
                                       {"chain": chain_str(ch)})], {})


def cmd_hc(cfg: CliConfig) -> Report:
    from .homology import hc_instance

    lam, mu = _case_params(cfg)
    st = _setting(cfg, lam, mu)
    info = st.case
    if cfg.case is not None and info.case != cfg.case:
        raise UsageError(f"parameters fall in {info.label()}, not case {cfg.case}")
    if info.case == 5:
        raise UsageError("no HC instance is stated for case 5")
    if cfg.I is None:
        cfg.I = (info.M + 2) if info.case in (3, 4) else (2 if info.case == 2 else 3)
    if cfg.L is None:
        cfg.L = 8 if info.case != 1 else 6
    rep = hc_instance(st, cfg.I, cfg.L, cfg.margin)
    results = [_check_result(c) for c in rep.checks]
    cert = {"hh": rep.hh, "ranks of B": rep.ranks}
    for n in sorted(rep.hc):
        name = f"HC_{n} (windowed)"
        verdict = "conditional" if rep.conditional.get(n) else "computed"
        results.append(_result(name, rep.hc[n], verdict, None, cert if n == 0 else None))
    cfg.extra["case_label"] = info.label()
    return Report(cfg.echo(), results, {"L": cfg.L, "L_minus_2_agree": not rep.unstable})


def cmd_probe(cfg: CliConfig) -> Report:
    from .homology import conjecture_probe

    N = 0 if cfg.N is None else cfg.N
    if N < 0 or N % 2:
        raise UsageError("probe-conjecture needs an even --N >= 0")
    cfg.N = N
    cfg.I = 2 if cfg.I is None else cfg.I
    cfg.L = 8 if cfg.L is None else cfg.L
    pr = conjecture_probe(N, cfg.q, cfg.I, cfg.L, cfg.margin)
    cfg.lam, cfg.mu = f"q^{-(N + 2)}", "1"
    results = [_check_result(c) for c in pr.to_dict()["evidence"]]
    return Report(cfg.echo(), results, {}, pr.label)


def cmd_catalog(cfg: CliConfig) -> Report:
    from .homology import verify_catalog

    lam, mu = _case_params(cfg)
    st = _setting(cfg, lam, mu)
    rep = verify_catalog(st, seed=cfg.seed)
    results = [_check_result(c.to_dict()) for c in rep.checks]
    for w in rep.witnesses:
        results.append(_result(f"Koszul witness {w.name}", w.to_dict(), "pass" if w.nontrivial else "fail"))
    cfg.extra["case_label"] = st.case.label()
    return Report(cfg.echo(), results, {})


def run(argv=None) -> tuple:
    """(exit code, rendered text)."""
    try:
        cfg, args = parse_config(argv)
        if cfg.command == "table":
            rep = cmd_table(cfg)
        elif cfg.command == "verify":
            rep = cmd_verify(cfg, args.suite)
        elif cfg.command == "pair":
            rep = cmd_pair(cfg, args.cochain, args.cycle)
        elif cfg.command == "hc":
            rep = cmd_hc(cfg)
        elif cfg.command == "catalog":
            rep = cmd_catalog(cfg)
        else:
            rep = cmd_probe(cfg)
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}"
    text = render(rep, cfg.fmt)
    if cfg.command == "probe-conjecture":
        return EXIT_OK, text
    return (EXIT_FAIL if rep.failed() else EXIT_OK), text


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:  # argparse
        return int(exc.code or 0)
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
