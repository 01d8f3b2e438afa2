"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py -s`` to see the lines inline, or
``python3 tests/test_acceptance.py`` for the lines alone.  Criterion 10 is
evidence for open conjectures and never fails the run.
"""

import time
from pathlib import Path

import mpmath
import pytest

from ohnolab.fmzv import verify_theorem
from ohnolab.lab import (
    OHNO,
    REFERENCE_COUNTS,
    RelationVector,
    discover_relations,
    double_ohno_zeta_vectors,
    duplex_indices,
    eq11_vector,
    ohno_span_dim,
    ohno_symbol_generators,
    ohno_zeta_generators,
    span_membership,
)
from ohnolab.linalg import combine
from ohnolab.mzv import ZetaEvaluator
from ohnolab.relations import EQ_1_1, FAMILIES, NAMED_RELATIONS, expand_symbols, gen_D, gen_double_ohno
from ohnolab.words import duplex_words, sigma_compose_check

TOL_LOG10 = -40
RESULTS: dict[int, bool] = {}
_LOG = Path(__file__).resolve().parents[1] / "acceptance_results.txt"
_LOG.write_text("", encoding="utf-8")


def report(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = ok
    line = f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line, flush=True)
    with open(_LOG, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")



def _worst(values) -> float:
    return max(v.rescale(50).log10_abs() for v in values)


def _fmt(lg: float) -> str:
    return "0 to 50 digits" if lg <= -50 else f"1e{lg:.0f}"


@pytest.fixture(scope="module")
def ev50(value_cache):
    return ZetaEvaluator(50, value_cache)


def test_criterion_01_table_row_one():
    t0 = time.perf_counter()
    got = [ohno_span_dim(n) for n in range(2, 14)]
    dt = time.perf_counter() - t0
    want = [REFERENCE_COUNTS["ohno_span"][n] for n in range(2, 14)]
    ok = got == want and dt < 1.0
    report(1, ok, f"Ohno span dims n=2..13 {got} in {dt:.3f}s")
    assert ok


def test_criterion_02_table_row_two(value_cache):
    counts, contains, eq11, worst_oos = [], True, None, -1e9
    t0 = time.perf_counter()
    for n in range(2, 7):
        res = discover_relations(n, digits=60, cache=value_cache)
        counts.append(res.count)
        contains &= all(res.contains.values())
        worst_oos = max([worst_oos] + [r.out_of_sample_log10 for r in res.relations])
        if n == 6:
            eq11 = span_membership(eq11_vector(), res.vectors())[0]
    value_cache.flush()
    want = [REFERENCE_COUNTS["all_relations"][n] for n in range(2, 7)]
    ok = counts == want and contains and eq11 and worst_oos < -60 + 8
    report(2, ok, f"relations found n=2..6 {counts} (expect {want}); proved families "
                  f"contained={contains}; eq1.1 vector in span={eq11}; worst out-of-sample "
                  f"residual 1e{worst_oos:.1f}; {time.perf_counter() - t0:.0f}s; weight 7 not run")
    assert ok


def test_criterion_03_named_relations(ev50):
    details, ok = [], True
    for name, symbols in NAMED_RELATIONS.items():
        t0 = time.perf_counter()
        worst = _worst(ev50.combos([expand_symbols(symbols, m) for m in range(7)]))
        dt = time.perf_counter() - t0
        ok &= worst < TOL_LOG10 and dt < 60
        details.append(f"{name} {_fmt(worst)} ({dt:.1f}s)")
    report(3, ok, "residuals m=0..6 at D=50: " + ", ".join(details))
    assert ok


def test_criterion_04_double_ohno(ev50):
    combos = []
    for k in duplex_indices(8):
        for m in range(5):
            for m1 in range(m + 1):
                c = gen_double_ohno(k, m1, m - m1)
                if c:
                    combos.append(c)
    worst = _worst(ev50.combos(combos))
    ok = worst < TOL_LOG10
    report(4, ok, f"{len(duplex_indices(8))} duplex indices of weight <= 8, m1+m2 <= 4: "
                  f"{len(combos)} nonzero checks, worst {_fmt(worst)}")
    assert ok


def test_criterion_05_D_and_recurrence(ev50):
    d_combos = [gen_D(s, t, m) for s in range(2, 7) for t in range(2, 7) for m in range(7)
                if s != t]
    rec = [gen_D(s, t, m - 1) - gen_D(s - 1, t, m) - gen_D(s, t - 1, m)
           for s in range(3, 7) for t in range(3, 7) for m in range(1, 6)]
    vals = ev50.combos(d_combos + rec)
    w1, w2 = _worst(vals[:len(d_combos)]), _worst(vals[len(d_combos):])
    ok = w1 < TOL_LOG10 and w2 < TOL_LOG10
    report(5, ok, f"D_m(s,t) 2<=s,t<=6 m<=6 worst {_fmt(w1)}; recurrence 3<=s,t<=6 "
                  f"1<=m<=5 worst {_fmt(w2)}")
    value_cache_flush(ev50)
    assert ok


def value_cache_flush(ev):
    if ev.cache.path is not None:
        ev.cache.flush()


def test_criterion_06_sigma_tau_lemma():
    t0 = time.perf_counter()
    words = duplex_words(10)
    ok = all(sigma_compose_check(m1, m2, w) for w in words for m1 in range(4) for m2 in range(4))
    dt = time.perf_counter() - t0
    ok &= dt < 60
    report(6, ok, f"{len(words)} duplex words of length <= 10, m1,m2 <= 3, exact, {dt:.1f}s")
    assert ok


def test_criterion_07_span_structure():
    checked, ok = 0, True
    for n in range(2, 10):
        gens = ohno_zeta_generators(n)
        for params, v in double_ohno_zeta_vectors(n):
            inside, cert = span_membership(v, gens)
            ok &= inside and combine(cert, [g.coords for g in gens]) == dict(v.coords)
            checked += 1
    outside = not span_membership(RelationVector(EQ_1_1, 6, OHNO), ohno_symbol_generators(6))[0]
    ok &= outside and checked > 0
    report(7, ok, f"{checked} double-Ohno zeta vectors (weight <= 9) certified in the Ohno span; "
                  f"eq1.1 outside the weight-6 Ohno span={outside}")
    assert ok


def test_criterion_08_evaluator_oracles():
    mpmath.mp.dps = 70
    ev = ZetaEvaluator(50)
    pi = mpmath.pi
    errs = [abs(mpmath.mpf(ev.zeta((2,)).exact_string()) - pi ** 2 / 6)]
    for n in range(1, 5):
        ref = pi ** (2 * n) / mpmath.factorial(2 * n + 1)
        errs.append(abs(mpmath.mpf(ev.zeta((2,) * n).exact_string()) - ref))
    errs.append(abs(mpmath.mpf((ev.zeta((3,)) - ev.zeta((1, 2))).exact_string())))
    worst = max(errs)
    ok = worst < mpmath.mpf(10) ** -48
    report(8, ok, f"zeta(2), zeta({{2}}^n) n<=4, zeta(3)-zeta(1,2) at D=50: worst error "
                  f"{mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion_09_finite_mzv():
    reps = [verify_theorem(t, weight_max=6, m_max=3, p_max=500, margin=2) for t in ("2.5", "2.6")]
    ok = all(r.passed for r in reps)
    detail = "; ".join(f"theorem {r.theorem}: {r.checks} checks over {len(r.primes)} primes, "
                       f"{len(r.failures)} failures, {len(r.small_prime_failures)} below margin"
                       for r in reps)
    report(9, ok, detail)
    assert ok


def conjecture_combos() -> dict[str, list]:
    grids = {
        "conj4.1": [(s, m, n) for s in range(2, 7) for m in range(3) for n in range(3)],
        "conj4.2": [(s, n) for s in range(3, 7) for n in range(3)],
        "conj4.3": [(s,) for s in range(2, 7)],
        "conj4.4": [(s,) for s in range(2, 7)],
        "conj4.5": [(s, t, m) for s in range(2, 7) for t in range(2, 7) for m in range(3)],
    }
    out = {}
    for fam, params in grids.items():
        sym = FAMILIES[fam].symbols
        out[fam] = [expand_symbols(sym(*p), c) for p in params for c in range(5)]
    return out


def test_criterion_10_conjectures(ev50):
    # evidence only: a failing conjecture is a finding, so this never fails the run
    parts, all_ok = [], True
    for fam, combos in conjecture_combos().items():
        worst = _worst(ev50.combos([c for c in combos if c]))
        all_ok &= worst < TOL_LOG10
        parts.append(f"{fam} {_fmt(worst)}")
    value_cache_flush(ev50)
    report(10, all_ok, "conjectural, non-gating; s,t<=6 m,n<=2 coefficient<=4: " + ", ".join(parts))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
