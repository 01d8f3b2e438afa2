"""Command-line front end: ``mzv <command> ...`` (also ``python -m ohnolab``).

Every command builds a :class:`Report`.  Its body (everything except
``timing``) depends only on the configuration and cached values, so two runs
with the same inputs print byte-identical JSON and CSV.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import __version__
from .bigfixed import BigFixed
from .fmzv import verify_theorem
from .indices import enumerate_admissible, format_index, format_index_sum, parse_index
from .lab import REFERENCE_COUNTS, PrecisionError, discover_relations, duplex_indices, table1
from .linear import LinComb
from .mzv import DEFAULT_DIGITS, ValueCache, ZetaEvaluator, default_guard, open_cache, \
    truncation_terms
from .relations import (
    FAMILIES,
    NAMED_RELATIONS,
    RelationError,
    expand_symbols,
    gen_D,
    gen_double_ohno,
    gen_ohno,
)

log = logging.getLogger("ohnolab")


# configuration ------------------------------------------------------------------

@dataclass
class Config:
    digits: int = DEFAULT_DIGITS
    guard: int | None = None
    m_max: int = 6
    weight_max: int = 6
    p_max: int = 500
    cache: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.guard is None:
            self.guard = default_guard(self.weight_max)

    def validate(self) -> "Config":
        if self.digits < 20:
            raise ValueError(f"digits must be >= 20, got {self.digits}")
        if self.guard < 10 + self.weight_max:
            raise ValueError(f"guard must be >= 10 + weight_max = {10 + self.weight_max}")
        if self.m_max < 0 or self.weight_max < 2 or self.jobs < 1:
            raise ValueError("m_max >= 0, weight_max >= 2 and jobs >= 1 are required")
        return self


def read_config_file(path: str | Path) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    types = {f.name: f.type for f in dataclasses.fields(Config)}
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        key = key.replace("-", "_")
        if not sep or key not in types:
            raise ValueError(f"{path}:{lineno}: expected one of {sorted(types)} as key=value")
        out[key] = value if key == "cache" else int(value)
    return out


def build_config(args: argparse.Namespace) -> Config:
    values = read_config_file(args.config) if args.config else {}
    for name in ("digits", "guard", "m_max", "weight_max", "p_max", "cache", "jobs"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    return Config(**values).validate()


# reports ------------------------------------------------------------------------

@dataclass
class Record:
    check: str
    params: str
    residual: str
    verdict: str
    conjectural: bool = False
    log10: float | None = None
    seconds: float = 0.0

    def body(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("seconds")
        if d["log10"] is not None:
            d["log10"] = round(d["log10"], 2)
        return d


@dataclass
class Report:
    command: str
    config: dict
    provenance: dict = field(default_factory=dict)
    records: list[Record] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def failed(self) -> list[Record]:
        return [r for r in self.records if r.verdict == "FAIL" and not r.conjectural]

    @property
    def conjecture_failures(self) -> list[Record]:
        return [r for r in self.records if r.verdict == "FAIL" and r.conjectural]

    def summary(self) -> dict:
        return {
            "checks": len(self.records),
            "passed": sum(r.verdict == "pass" for r in self.records),
            "failed": len(self.failed),
            "conjecture_failures": len(self.conjecture_failures),
            "ok": not self.failed,
        }

    def body(self) -> dict:
        return {"command": self.command, "config": self.config, "provenance": self.provenance,
                "records": [r.body() for r in self.records], "extra": self.extra,
                "summary": self.summary()}

    def to_json(self, timing: bool = False) -> str:
        data = self.body()
        if timing:
            data["timing"] = {"seconds": round(self.seconds, 3),
                              "per_check": [round(r.seconds, 4) for r in self.records]}
        return json.dumps(data, indent=2, sort_keys=True)

    def write_csv(self, path: Path) -> Path:
        cols = ["check", "params", "residual", "log10", "verdict", "conjectural"]
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=cols, extrasaction="ignore")
            w.writeheader()
            for r in self.records:
                w.writerow(r.body())
        return path


def residual_string(v: BigFixed) -> str:
    """Six significant digits; an exact zero at the working precision prints as ``0``."""
    return "0" if v.mantissa == 0 else format(v.to_decimal(), ".6e")


def _tol_log10(cfg: Config, tol_exp: int | None) -> int:
    return -(cfg.digits - 10) if tol_exp is None else -tol_exp


def _numeric_records(items: Sequence[tuple[str, str, LinComb, bool]], ev: ZetaEvaluator,
                     tol_log10: float) -> list[Record]:
    t0 = time.perf_counter()
    values = ev.combos([c for _, _, c, _ in items])
    each = (time.perf_counter() - t0) / max(1, len(items))
    out = []
    for (check, params, combo, conj), v in zip(items, values):
        # report at the working precision, whatever precision the cache held
        v = v.rescale(ev.digits)
        lg = v.log10_abs() if combo else -math.inf
        ok = lg < tol_log10
        out.append(Record(check, params, residual_string(v), "pass" if ok else "FAIL", conj,
                          lg if math.isfinite(lg) else None, each))
    return out


def _provenance(cfg: Config, max_depth: int) -> dict:
    return {
        "method": "Holder convolution of polylogarithms at 1/2, fixed-point integers",
        "digits": cfg.digits,
        "guard": cfg.guard,
        "truncation_terms": truncation_terms(max(1, max_depth), cfg.digits, cfg.guard),
        "version": __version__,
    }


# parameter grids ------------------------------------------------------------------

def parse_range(text: str) -> list[int]:
    """``"2..6"`` -> [2, 3, 4, 5, 6]; ``"2,4"`` -> [2, 4]; ``"3"`` -> [3]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _fmt_params(**kw) -> str:
    return " ".join(f"{k}={format_index(v) if isinstance(v, tuple) else v}" for k, v in kw.items())


def verify_items(family: str, args: argparse.Namespace, cfg: Config
                 ) -> list[tuple[str, str, LinComb, bool]]:
    """``(check, params, zeta combination, conjectural)`` for the requested grid."""
    mrange = range(cfg.m_max + 1)
    items = []
    if family == "ohno":
        weights = [args.weight] if args.weight else range(2, cfg.weight_max + 1)
        for n in weights:
            for k in enumerate_admissible(n):
                for m in mrange:
                    items.append((family, _fmt_params(k=k, m=m), gen_ohno(k, m), False))
    elif family == "double-ohno":
        for k in duplex_indices(args.weight or cfg.weight_max):
            for m in mrange:
                for m1 in range(m + 1):
                    items.append((family, _fmt_params(k=k, m1=m1, m2=m - m1),
                                  gen_double_ohno(k, m1, m - m1), False))
    elif family == "thm1.8":
        for s in _grid(args.s, 2, args.s_max):
            for t in _grid(args.t, 2, args.t_max):
                for m in mrange:
                    items.append((family, _fmt_params(s=s, t=t, m=m), gen_D(s, t, m), False))
    elif family == "d-recurrence":
        # D_{m-1}(s,t) = D_m(s-1,t) + D_m(s,t-1)
        for s in _grid(args.s, 3, args.s_max):
            for t in _grid(args.t, 3, args.t_max):
                for m in range(1, cfg.m_max + 1):
                    c = gen_D(s, t, m - 1) - gen_D(s - 1, t, m) - gen_D(s, t - 1, m)
                    items.append((family, _fmt_params(s=s, t=t, m=m), c, False))
    elif family in NAMED_RELATIONS:
        for m in mrange:
            items.append((family, _fmt_params(m=m), expand_symbols(NAMED_RELATIONS[family], m), False))
    elif family in FAMILIES and FAMILIES[family].conjectural:
        fam = FAMILIES[family]
        lows = {"s": 3 if family == "conj4.2" else 2, "t": 2, "m": 0, "n": 0}
        grids = {"s": _grid(args.s, lows["s"], 6), "t": _grid(args.t, 2, 6),
                 "m": _grid(args.m, 0, 2), "n": _grid(args.n, 0, 2)}
        for combo_params in _product({p: grids[p] for p in fam.params}):
            symbols = fam.symbols(*(combo_params[p] for p in fam.params))
            for c in mrange:
                items.append((family, _fmt_params(**combo_params, coeff=c),
                              expand_symbols(symbols, c), True))
    else:
        raise RelationError(f"unknown family {family!r}; choose from {VERIFY_FAMILIES}")
    return items


def _grid(text: str | None, lo: int, hi: int | None) -> list[int]:
    if text:
        return parse_range(text)
    return list(range(lo, (hi if hi is not None else 6) + 1))


def _product(grids: dict[str, list[int]]) -> Iterable[dict]:
    keys = list(grids)
    if not keys:
        yield {}
        return
    first, rest = keys[0], {k: grids[k] for k in keys[1:]}
    for v in grids[first]:
        for tail in _product(rest):
            yield {first: v, **tail}


VERIFY_FAMILIES = ["ohno", "double-ohno", "thm1.8", "d-recurrence", *NAMED_RELATIONS,
                   *sorted(f for f, fam in FAMILIES.items() if fam.conjectural)]


# commands ------------------------------------------------------------------------------

def _config_dict(cfg: Config) -> dict:
    d = dataclasses.asdict(cfg)
    d.pop("cache")
    d.pop("jobs")
    return d


def cmd_eval(args, cfg: Config, cache: ValueCache) -> Report:
    ev = ZetaEvaluator(cfg.digits, cache, cfg.guard)
    ks = [parse_index(s) for s in args.index]
    rep = Report("eval", _config_dict(cfg), _provenance(cfg, max(map(len, ks))))
    vals = ev.zeta_many(ks)
    for k in ks:
        rep.records.append(Record("zeta", format_index(k), str(vals[k]), "value"))
    return rep


def cmd_verify(args, cfg: Config, cache: ValueCache) -> Report:
    items = verify_items(args.family, args, cfg)
    tol = _tol_log10(cfg, args.tol_exp)
    depth = max((len(k) for _, _, c, _ in items for k in c), default=1)
    rep = Report("verify", _config_dict(cfg), _provenance(cfg, depth),
                 extra={"family": args.family, "tolerance_log10": tol})
    rep.records = _numeric_records(items, ZetaEvaluator(cfg.digits, cache, cfg.guard), tol)
    return rep


def cmd_table1(args, cfg: Config, cache: ValueCache) -> Report:
    rows = None if args.rows == "auto" else int(args.rows)
    discover_max = min(cfg.weight_max, 6) if args.discover_max is None else args.discover_max
    result = table1(cfg.weight_max, cfg.digits, rows, discover_max, cache, args.out_of_sample)
    rep = Report("table1", _config_dict(cfg), _provenance(cfg, cfg.weight_max + 8))
    for r in result:
        ref1 = REFERENCE_COUNTS["ohno_span"].get(r.weight)
        ref2 = REFERENCE_COUNTS["all_relations"].get(r.weight)
        rep.records.append(Record("ohno-span", f"n={r.weight}", str(r.ohno_span),
                                  "pass" if r.ohno_span == ref1 else "FAIL", seconds=r.seconds))
        if r.all_relations is not None:
            worst = max((d.residual_log10 for d in r.discovery.relations), default=None)
            rep.records.append(Record("all-relations", f"n={r.weight}", str(r.all_relations),
                                      "pass" if r.all_relations == ref2 else "FAIL",
                                      log10=worst, seconds=r.seconds))
    rep.extra["table"] = {
        "weight": [r.weight for r in result],
        "ohno_span": [r.ohno_span for r in result],
        "all_relations": [r.all_relations for r in result],
        "reference_all_relations": [REFERENCE_COUNTS["all_relations"].get(r.weight) for r in result],
    }
    return rep


def cmd_discover(args, cfg: Config, cache: ValueCache) -> Report:
    rows = None if args.rows == "auto" else int(args.rows)
    res = discover_relations(args.weight, rows, cfg.digits, cache)
    rep = Report("discover", _config_dict(cfg), _provenance(cfg, args.weight))
    for i, d in enumerate(res.relations):
        combo = LinComb(d.coeffs)
        rep.records.append(Record("relation", f"#{i}", format_index_sum(combo), "pass",
                                  log10=d.residual_log10))
    rep.extra = {
        "weight": res.weight, "rows": res.rows, "scale_log10": res.scale_log10,
        "count": res.count, "contains": res.contains,
        "relations": [{"coefficients": {format_index(k): c for k, c in d.coeffs.items()},
                       "height": d.height,
                       "residual_log10": round(d.residual_log10, 2),
                       "stable_residual_log10": round(d.stable_residual_log10, 2),
                       "out_of_sample_log10": None if d.out_of_sample_log10 is None
                       else round(d.out_of_sample_log10, 2)}
                      for d in res.relations],
    }
    if not all(res.contains.values()):
        rep.records.append(Record("contains-proved", "", json.dumps(res.contains), "FAIL"))
    return rep


def cmd_fmzv(args, cfg: Config, cache: ValueCache) -> Report:
    theorems = [args.theorem] if args.theorem else ["2.5", "2.6"]
    rep = Report("fmzv", _config_dict(cfg), {"method": "truncated harmonic sums mod p"})
    for thm in theorems:
        r = verify_theorem(thm, args.weight_max or 6, args.m_max_f, cfg.p_max, args.margin)
        rep.records.append(Record(f"theorem-{thm}", f"primes<={r.p_max} checks={r.checks}",
                                  str(len(r.failures)), "pass" if r.passed else "FAIL",
                                  seconds=r.seconds))
        rep.extra[thm] = {"failures": [str(f) for f in r.failures[:20]],
                          "small_prime_failures": len(r.small_prime_failures)}
    return rep


def cmd_cache(args, cfg: Config, cache: ValueCache) -> Report:
    rep = Report("cache", _config_dict(cfg), {"path": None if cache.path is None else "set"})
    if args.action == "warm":
        ks = [k for n in range(2, cfg.weight_max + 1) for k in enumerate_admissible(n)
              if len(k) <= args.depth]
        ZetaEvaluator(cfg.digits, cache, cfg.guard).zeta_many(ks)
        rep.records.append(Record("warm", f"weight<={cfg.weight_max} depth<={args.depth}",
                                  str(len(ks)), "pass"))
    elif args.action == "export":
        out = Path(args.out)
        cache.save(out)
        rep.records.append(Record("export", out.name, str(len(cache)), "pass"))
    elif args.action == "verify":
        entries = sorted(cache.values.items(), key=lambda kv: (kv[0][1], len(kv[0][0]), kv[0][0]))
        sample = entries[:: max(1, len(entries) // args.sample)][: args.sample]
        bad = 0
        for (k, d), v in sample:
            fresh = ZetaEvaluator(d, ValueCache(), cfg.guard).zeta(k)
            diff = (fresh.rescale(d) - v.rescale(d)).log10_abs()
            if diff > -(d - 2):
                bad += 1
                rep.records.append(Record("mismatch", f"{format_index(k)} D={d}",
                                          f"1e{diff:.1f}", "FAIL"))
        rep.records.append(Record("verify", f"sample={len(sample)}", str(bad),
                                  "pass" if not bad else "FAIL"))
    return rep


# figures and output ---------------------------------------------------------------------

def write_report_dir(rep: Report, outdir: Path, name: str) -> list[Path]:
    from . import plotting

    outdir.mkdir(parents=True, exist_ok=True)
    paths = [rep.write_csv(outdir / f"{name}.csv")]
    (outdir / f"{name}.json").write_text(rep.to_json(timing=True) + "\n", encoding="utf-8")
    paths.append(outdir / f"{name}.json")
    numeric = [r for r in rep.records if r.log10 is not None]
    if numeric:
        tol = rep.extra.get("tolerance_log10", -(rep.config.get("digits", 50) // 2))
        paths.append(plotting.residual_plot([f"{r.check} {r.params}" for r in numeric],
                                            [r.log10 for r in numeric], tol,
                                            outdir / f"{name}_residuals.png", title=name))
    if "table" in rep.extra:
        t = rep.extra["table"]
        paths.append(plotting.table1_plot(t["weight"], t["ohno_span"], t["all_relations"],
                                          REFERENCE_COUNTS, outdir / f"{name}_counts.png"))
    return paths


def print_text(rep: Report, out=None) -> None:
    out = out or sys.stdout
    for r in rep.records:
        flag = " [conjectural]" if r.conjectural else ""
        print(f"{r.verdict:5} {r.check} {r.params} {r.residual}{flag}", file=out)
    if rep.command == "eval":
        return
    s = rep.summary()
    print(f"{s['checks']} checks, {s['passed']} passed, {s['failed']} failed", file=out)
    if s["conjecture_failures"]:
        print(f"*** {s['conjecture_failures']} CONJECTURAL CHECKS FAILED "
              f"(reported, not gating) ***", file=out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--cache", help="value cache file (default: $OHNOLAB_CACHE)")
    common.add_argument("--digits", type=int)
    common.add_argument("--guard", type=int)
    common.add_argument("--m-max", dest="m_max", type=int)
    common.add_argument("--weight-max", dest="weight_max", type=int)
    common.add_argument("--p-max", dest="p_max", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--emit-json", action="store_true", help="print the report as JSON")
    common.add_argument("--report-dir", help="write CSV, JSON and PNG figures here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="mzv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate zeta values")
    e.add_argument("--index", action="append", required=True, help="e.g. 1,3,2 (repeatable)")

    v = sub.add_parser("verify", parents=[common], help="check a relation family numerically")
    v.add_argument("family", choices=VERIFY_FAMILIES)
    v.add_argument("--weight", type=int)
    v.add_argument("--s", help="range like 2..6")
    v.add_argument("--t")
    v.add_argument("--m", help="conjecture parameter m (not the Ohno coefficient)")
    v.add_argument("--n")
    v.add_argument("--s-max", type=int)
    v.add_argument("--t-max", type=int)
    v.add_argument("--tol-exp", type=int, help="pass when |residual| < 10^-TOL_EXP (default D-10)")

    t = sub.add_parser("table1", parents=[common], help="relation counts per weight")
    t.add_argument("--rows", default="auto")
    t.add_argument("--discover-max", type=int)
    t.add_argument("--out-of-sample", action="store_true")

    d = sub.add_parser("discover", parents=[common], help="find relations among Ohno sums")
    d.add_argument("--weight", type=int, required=True)
    d.add_argument("--rows", default="auto")

    f = sub.add_parser("fmzv", parents=[common], help="finite multiple zeta value checks")
    f.add_argument("action", choices=["verify"])
    f.add_argument("--theorem", choices=["2.5", "2.6"])
    f.add_argument("--lift-max", dest="m_max_f", type=int, default=3)
    f.add_argument("--margin", type=int, default=2)

    c = sub.add_parser("cache", parents=[common], help="manage the value cache")
    c.add_argument("action", choices=["warm", "export", "verify"])
    c.add_argument("--depth", type=int, default=4)
    c.add_argument("--out", default="values-export.txt")
    c.add_argument("--sample", type=int, default=20)
    return p


COMMANDS: dict[str, Callable] = {
    "eval": cmd_eval, "verify": cmd_verify, "table1": cmd_table1,
    "discover": cmd_discover, "fmzv": cmd_fmzv, "cache": cmd_cache,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "fmzv" and args.m_max is not None:
        args.m_max_f = args.m_max
    if args.command == "fmzv" and args.weight_max is None:
        args.weight_max = 6
    try:
        cfg = build_config(args)
    except ValueError as exc:
        print(f"mzv: {exc}", file=sys.stderr)
        return 2
    cache = open_cache(cfg.cache)
    t0 = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args, cfg, cache)
    except (RelationError, PrecisionError, ValueError) as exc:
        print(f"mzv: {exc}", file=sys.stderr)
        return 2
    finally:
        if cache.path is not None:
            cache.flush()
    rep.seconds = time.perf_counter() - t0
    if args.emit_json:
        print(rep.to_json())
    else:
        print_text(rep)
    if args.report_dir:
        for path in write_report_dir(rep, Path(args.report_dir), args.command):
            log.info("wrote %s", path)
    return 1 if rep.failed else 0


if __name__ == "__main__":
    sys.exit(main())
