"""
Command-line entry point.

    smcloc rpoly --type A4 --u s3.s4.s3.s2 --w s4.s3.s1.s4.s2.s1.s3.s2
    smcloc verify-main --type GL3 --lambda 1,0,0 --all
    smcloc pipedream --n 7 --k 3 --f 2,6,5,10,8,11,7 --count
    smcloc selftest

Exit codes: 0 success, 1 a verification failed, 2 usage error.
Polynomials in one variable print as ascending coefficient lists; rational
functions print in the ring's canonical text form.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .coxeter import RootDatum, WeylElem, bruhat_leq, parse_word
from .extaffine import NotInImage, bounded_affine_perms, is_bounded
from .hecke import r_poly, twisted_r
from .ring import LaurentPoly, LimitDiverges, RatFun, limit_at_chamber

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    verb: str
    args: argparse.Namespace

    @property
    def fmt(self) -> str:
        return "json" if getattr(self.args, "json", False) else self.args.format


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def _datum(text: str | None) -> RootDatum:
    if not text:
        raise UsageError("--type is required")
    try:
        return RootDatum.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _elem(D: RootDatum, text: str | None, flag: str) -> WeylElem:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return D.parse_elem(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from exc


def _coeffs(p: LaurentPoly) -> list[int]:
    return p.coefficients() if p else [0]


def _ytext(f: RatFun) -> str:
    return str(f)


def _emit(cfg: RunConfig, records: list[dict], text_lines: list[str], columns: Sequence[str] | None = None,
          extra: dict | None = None) -> None:
    out = sys.stdout
    if cfg.fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.verb, "records": records}
        if extra:
            doc.update(extra)
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        cols = list(columns or (records[0].keys() if records else []))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            w.writerow([" ".join(map(str, r[c])) if isinstance(r[c], list) else r[c] for c in cols])
        out.write(buf.getvalue())
    else:
        for line in text_lines:
            out.write(line + "\n")


def _jobs(args) -> int:
    from .acceptance import default_jobs
    return args.jobs if args.jobs else default_jobs()


def _pmap(fn, items: list, jobs: int) -> list:
    """Order-preserving map; threads only change wall-clock time, never output."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def cmd_rpoly(cfg: RunConfig) -> int:
    a = cfg.args
    D = _datum(a.type)
    if a.all:
        E = D.elements()
        pairs = [(u, w) for w in E for u in E if bruhat_leq(u, w)]
    else:
        pairs = [(_elem(D, a.u, "--u"), _elem(D, a.w, "--w"))]
    recs = [{"u": str(u), "w": str(w), "coefficients": _coeffs(r_poly(u, w))} for u, w in pairs]
    lines = ([" ".join(map(str, r["coefficients"])) for r in recs] if not a.all else
             [f"{r['u']}\t{r['w']}\t{' '.join(map(str, r['coefficients']))}" for r in recs])
    _emit(cfg, recs, lines, ("u", "w", "coefficients"))
    return EXIT_OK


def cmd_twisted(cfg: RunConfig) -> int:
    a = cfg.args
    D = _datum(a.type)
    u, w, v = _elem(D, a.u, "--u"), _elem(D, a.w, "--w"), _elem(D, a.v, "--v")
    c = _coeffs(twisted_r(u, w, v))
    rec = {"u": str(u), "v": str(v), "w": str(w), "coefficients": c}
    _emit(cfg, [rec], [" ".join(map(str, c))], ("u", "v", "w", "coefficients"))
    return EXIT_OK


def cmd_subwords(cfg: RunConfig) -> int:
    from .subword import u_subwords
    a = cfg.args
    word = parse_word(a.word)
    D = _datum(a.type or f"A{max(word, default=1)}")
    if any(i > D.rank for i in word):
        raise UsageError(f"word uses letters beyond the rank of {D.name}")
    u = _elem(D, a.u, "--u")
    v = _elem(D, a.v, "--v") if a.v else None
    recs, lines = [], []
    header = "subword\tJ+\tJ-\tE+\tE-\treduced\tdistinguished"
    for mask, labels in u_subwords(D, word, u, v):
        sets = {lab: [k + 1 for k, x in enumerate(labels) if x == lab] for lab in ("J+", "J-", "E+", "E-")}
        shown = "(" + ",".join(str(i) if b else f"[{i}]" for i, b in zip(word, mask)) + ")"
        rec = {"mask": list(mask), "subword": shown, "J+": sets["J+"], "J-": sets["J-"],
               "E+": sets["E+"], "E-": sets["E-"], "reduced": not sets["J-"], "distinguished": not sets["E-"]}
        recs.append(rec)
        fmt = lambda s: "{" + ",".join(map(str, s)) + "}"
        lines.append("\t".join([shown, fmt(sets["J+"]), fmt(sets["J-"]), fmt(sets["E+"]), fmt(sets["E-"]),
                                "yes" if rec["reduced"] else "no", "yes" if rec["distinguished"] else "no"]))
    if not a.list:
        lines = [str(len(recs))]
    else:
        lines = [header] + lines
    _emit(cfg, recs, lines, ("subword", "J+", "J-", "E+", "E-", "reduced", "distinguished"),
          {"count": len(recs)})
    return EXIT_OK


def cmd_smc(cfg: RunConfig) -> int:
    from .locfinite import prefactor, smc_y_restrict
    a = cfg.args
    D = _datum(a.type)
    R = D.ring("y")
    if a.u is None and a.w is None:
        E = D.elements()
        pairs = [(u, w) for u in E for w in E]
    else:
        pairs = [(_elem(D, a.u, "--u"), _elem(D, a.w, "--w"))]
    chamber = _elem(D, a.limit_chamber, "--limit-chamber") if a.limit_chamber else None
    recs, lines = [], []
    for u, w in pairs:
        val = smc_y_restrict(u, w, R)
        if a.times_prefactor or chamber is not None:
            val = val * prefactor(D, w, R)
        if chamber is not None:
            try:
                val = limit_at_chamber(val, chamber)
            except LimitDiverges as exc:
                raise UsageError(f"limit diverges: {exc}") from exc
        recs.append({"u": str(u), "w": str(w), "value": _ytext(val)})
        lines.append(_ytext(val) if len(pairs) == 1 else f"{u}\t{w}\t{val}")
    _emit(cfg, recs, lines, ("u", "w", "value"))
    return EXIT_OK


def cmd_ajs(cfg: RunConfig) -> int:
    from .locfinite import ajs_billey
    a = cfg.args
    D = _datum(a.type)
    u, w = _elem(D, a.u, "--u"), _elem(D, a.w, "--w")
    word = parse_word(a.word) if a.word else None
    val = ajs_billey(u, w, word)
    text = str(val) if val != 0 else "0"
    _emit(cfg, [{"u": str(u), "w": str(w), "value": text}], [text], ("u", "w", "value"))
    return EXIT_OK


def cmd_limit(cfg: RunConfig) -> int:
    from .locfinite import limit_to_twisted
    a = cfg.args
    D = _datum(a.type)
    u, w = _elem(D, a.u, "--u"), _elem(D, a.w, "--w")
    vs = [_elem(D, a.v, "--v")] if a.v else D.elements()
    recs, lines = [], []
    for v in vs:
        val = limit_to_twisted(u, v, w)
        twisted = twisted_r(v.inverse() * u, v.inverse() * w, v)
        recs.append({"u": str(u), "v": str(v), "w": str(w), "limit": str(val),
                     "twisted_r_coefficients": _coeffs(twisted)})
        lines.append(str(val) if a.v else f"{v}\t{val}")
    _emit(cfg, recs, lines, ("u", "v", "w", "limit"))
    return EXIT_OK


def _parabolic(a):
    from .richardson import Parabolic
    D = _datum(a.type)
    if a.lam is None:
        raise UsageError("--lambda is required")
    try:
        return Parabolic.of(D, _ints(a.lam, "--lambda"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_richardson(cfg: RunConfig) -> int:
    from .richardson import smc_projected_column
    a = cfg.args
    par = _parabolic(a)
    D = par.datum
    if a.u or a.w:
        u, w = _elem(D, a.u, "--u"), _elem(D, a.w, "--w")
        if not par.is_rep(w):
            raise UsageError(f"--w {w} is not a minimal coset representative")
        pairs = [(u, w)]
    else:
        pairs = par.pairs()
    recs, lines = [], []
    for u, w in pairs:
        f = par.f(u, w)
        col = smc_projected_column(f, par)
        for z in par.reps:
            recs.append({"u": str(u), "w": str(w), "f": str(f), "fixed_point": str(z), "value": str(col[z])})
            lines.append(f"{u}\t{w}\t{f}\t{z}\t{col[z]}")
    _emit(cfg, recs, lines, ("u", "w", "f", "fixed_point", "value"))
    return EXIT_OK


def cmd_verify_main(cfg: RunConfig) -> int:
    from .locaffine import verify_main
    a = cfg.args
    par = _parabolic(a)
    D = par.datum
    if a.all or not (a.u or a.w):
        pairs = par.pairs()
    else:
        u, w = _elem(D, a.u, "--u"), _elem(D, a.w, "--w")
        if not par.is_rep(w):
            raise UsageError(f"--w {w} is not a minimal coset representative")
        pairs = [(u, w)]
    reports = _pmap(lambda p: verify_main(par, *p), pairs, _jobs(a))
    recs, lines = [], []
    for rep in reports:
        for row in rep.rows:
            recs.append({"u": str(rep.u), "w": str(rep.w), "f": str(row.f), "fixed_point": str(row.fixed_point),
                         "lhs": str(row.lhs), "rhs": str(row.rhs), "equal": row.equal})
        lines.append(f"{'PASS' if rep.passed else 'FAIL'}\tu={rep.u}\tw={rep.w}\tf={rep.f}")
    ok = all(r.passed for r in reports)
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} pairs pass")
    _emit(cfg, recs, lines, ("u", "w", "f", "fixed_point", "lhs", "rhs", "equal"), {"passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_pipedream(cfg: RunConfig) -> int:
    from .pipedream import enumerate_pd, gtilde, verify_positroid
    a = cfg.args
    n, k = a.n, a.k
    if n is None or k is None or n < 1 or k < 1:
        raise UsageError("--n and --k must be positive integers")
    if a.f is None:
        fs = bounded_affine_perms(n, k)
        recs = [{"f": list(f)} for f in fs]
        _emit(cfg, recs, [",".join(map(str, f)) for f in fs], ("f",), {"count": len(fs)})
        return EXIT_OK
    f = _ints(a.f, "--f")
    if len(f) != n:
        raise UsageError(f"--f needs {n} entries")
    if a.verify:
        if not is_bounded(f, k):
            raise UsageError(f"{f} is not a bounded affine permutation with k={k}")
        try:
            rep = verify_positroid(f, k, n)
        except NotInImage as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        recs = [{"subset": list(r.subset), "gtilde": str(r.gtilde), "smc": str(r.smc), "equal": r.equal}
                for r in rep.rows]
        lines = [f"{'PASS' if r.equal else 'FAIL'}\t{{{','.join(map(str, r.subset))}}}" for r in rep.rows]
        lines.append(f"symmetric in x: {'yes' if rep.symmetric else 'no'}")
        lines.append("PASS" if rep.passed else "FAIL")
        _emit(cfg, recs, lines, ("subset", "gtilde", "smc", "equal"), {"passed": rep.passed, "symmetric": rep.symmetric})
        return EXIT_OK if rep.passed else EXIT_FAIL
    if a.gtilde:
        val = gtilde(f, k, n)
        _emit(cfg, [{"f": list(f), "gtilde": str(val)}], [str(val)], ("f", "gtilde"))
        return EXIT_OK
    pds = enumerate_pd(f, k, n)
    if a.count:
        _emit(cfg, [{"f": list(f), "count": len(pds)}], [str(len(pds))], ("f", "count"), {"count": len(pds)})
        return EXIT_OK
    recs = [{"tiles": pd.matrix()} for pd in pds]
    lines = []
    for idx, pd in enumerate(pds):
        if a.ascii:
            lines += ([""] if idx else []) + pd.ascii().splitlines()
        else:
            lines.append(" ".join("".join(map(str, r)) for r in pd.rows))
    _emit(cfg, recs, lines, ("tiles",), {"count": len(pds)})
    return EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    from .acceptance import DEFAULT_SEED, run_battery
    a = cfg.args
    numbers = sorted(set(_ints(a.only, "--only"))) if a.only else None
    if numbers and any(k not in range(1, 10) for k in numbers):
        raise UsageError("--only takes criterion numbers 1..9")
    results = run_battery(numbers, _jobs(a), DEFAULT_SEED if a.seed is None else a.seed)
    recs, lines = [], []
    for r in results:
        ok = r.passed and r.within_budget
        recs.append({"criterion": r.number, "title": r.title, "passed": ok,
                     "failures": r.failures(), "checks": len(r.checks)})
        lines.append(r.line())
        lines += [f"    {msg}" for msg in r.failures()]
    ok = all(r["passed"] for r in recs)
    _emit(cfg, recs, lines, ("criterion", "title", "passed"), {"passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smcloc", description="Exact localization computations for motivic Chern classes.")
    p.add_argument("--version", action="version", version=f"smcloc {__version__}")
    sub = p.add_subparsers(dest="verb", metavar="VERB")

    def verb(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--format", choices=("text", "json", "csv"), default="text")
        s.add_argument("--json", action="store_true", help="shorthand for --format json")
        s.add_argument("--jobs", type=int, default=0, help="worker count (default: $SMCLOC_JOBS or 1)")
        s.add_argument("--seed", type=int, default=None, help="RNG seed for sampled checks")
        return s

    s = verb("rpoly", "Kazhdan-Lusztig R-polynomial R_{u,w}(q)")
    s.add_argument("--type"), s.add_argument("--u"), s.add_argument("--w")
    s.add_argument("--all", action="store_true", help="every pair u <= w")

    s = verb("twisted-rpoly", "twisted R-polynomial R^(v)_{u,w}(q)")
    s.add_argument("--type"), s.add_argument("--u"), s.add_argument("--w"), s.add_argument("--v")

    s = verb("subwords", "u-subwords of a word with their J/E classification")
    s.add_argument("--type"), s.add_argument("--word", required=True), s.add_argument("--u")
    s.add_argument("--v", help="twist element")
    s.add_argument("--list", action="store_true")

    s = verb("smc", "SMC_y(Y(u)°)|_w")
    s.add_argument("--type"), s.add_argument("--u"), s.add_argument("--w")
    s.add_argument("--times-prefactor", action="store_true")
    s.add_argument("--limit-chamber", metavar="V")

    s = verb("ajs-billey", "[Y(u)]|_w as a polynomial in the simple roots")
    s.add_argument("--type"), s.add_argument("--u"), s.add_argument("--w")
    s.add_argument("--word", help="reduced word for w")

    s = verb("limit", "chamber limits of the normalized SMC restriction")
    s.add_argument("--type"), s.add_argument("--u"), s.add_argument("--w")
    s.add_argument("--v", help="chamber; all chambers when omitted")

    for name, help_ in (("richardson", "SMC_y of open projected Richardson varieties on G/P"),
                        ("verify-main", "compare G/P classes with affine SMC restrictions")):
        s = verb(name, help_)
        s.add_argument("--type"), s.add_argument("--lambda", dest="lam")
        s.add_argument("--u"), s.add_argument("--w")
        if name == "verify-main":
            s.add_argument("--all", action="store_true")

    s = verb("pipedream", "periodic pipe dreams and positroid classes")
    s.add_argument("--n", type=int), s.add_argument("--k", type=int)
    s.add_argument("--f", help="window f(1),...,f(n); omit to list bounded affine permutations")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--gtilde", action="store_true")
    g.add_argument("--verify", action="store_true")
    s.add_argument("--ascii", action="store_true")

    s = verb("selftest", "run the acceptance battery")
    s.add_argument("--only", help="comma-separated criterion numbers")
    return p


COMMANDS = {
    "rpoly": cmd_rpoly, "twisted-rpoly": cmd_twisted, "subwords": cmd_subwords, "smc": cmd_smc,
    "ajs-billey": cmd_ajs, "limit": cmd_limit, "richardson": cmd_richardson,
    "verify-main": cmd_verify_main, "pipedream": cmd_pipedream, "selftest": cmd_selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not args.verb:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.verb](RunConfig(args.verb, args))
    except UsageError as exc:
        print(f"smcloc {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
