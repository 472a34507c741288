"""Acceptance gate: nine checks, one printed verdict line each (run with
pytest -s to see the lines and timings). The heavy sweeps enumerate their
whole stated domains, so this file is slower than the unit suites.
"""

import itertools
import time

import pytest

from fghlab.classical import (
    CONTINGENT, ConditionFails, classify, is_tautology, lemma1_synthesize,
    lemma2_synthesize,
)
from fghlab.extensions import glw_proves_box, glw_proves_negbox, nontrifling
from fghlab.fghsim import (
    ABSENT, NOT_PHI, PHI, ProofStream, l6_hypotheses_hold, mtr_check,
    rosser_run, sigma_realized, solovay_check, solovay_run, wc_prec,
    wc_preceq,
)
from fghlab.formula import (
    BOT, TOP, Bot, Box, Neg, Top, Var, box_n, conj, cx, diamond_n,
    enumerate_formulas, iff, imp, land, lor, rf, sample_formulas, substitute,
    variables,
)
from fghlab.glprover import Proved, gl_proves, gl_proves_brute
from fghlab.kripke import (
    KripkeModel, forces, model_forces_at_root, validate_frame,
)
from fghlab.surgery import chain_extend, merge_mt, merge_mt4, merge_nontrifling

P = Var("p")
CHAIN_P_TOP = KripkeModel([0, 1], {(0, 1)}, 0, {1: {"p": 1}})
DEAD_END_P = KripkeModel([0], set(), 0, {0: {"p": 1}})


def _line(num, ok, detail):
    print("criterion %d: %s (%s)" % (num, "PASS" if ok else "FAIL", detail))


def _rf_conj(f):
    return conj(sorted(rf(f), key=lambda g: g.key))


def _packed_table(f, full, cols):
    """Truth function of a box-free formula as a packed integer over the
    fixed column space; constants come out as 0 or full."""
    if isinstance(f, Var):
        return cols[f.name]
    if isinstance(f, Top):
        return full
    if isinstance(f, Bot):
        return 0
    if isinstance(f, Neg):
        return full ^ _packed_table(f.sub, full, cols)
    a = _packed_table(f.left, full, cols)
    b = _packed_table(f.right, full, cols)
    if f.op == "&":
        return a & b
    if f.op == "|":
        return a | b
    if f.op == "->":
        return (full ^ a) | b
    return full ^ (a ^ b)


def _bit_columns(names):
    width = 1 << len(names)
    cols = {}
    for i, name in enumerate(names):
        c = 0
        for j in range(width):
            if (j >> i) & 1:
                c |= 1 << j
        cols[name] = c
    return (1 << width) - 1, cols


@pytest.fixture(scope="module")
def prover_sweep():
    """One pass over the full criterion-1 corpus, shared with criterion 2."""
    stats = {"total": 0, "exact": 0, "skipped": 0, "refuted": 0,
             "disagreements": [], "dishonest": []}
    start = time.perf_counter()
    for f in enumerate_formulas(7, names=("p", "q"), max_modal_depth=2):
        stats["total"] += 1
        verdict = gl_proves(f)
        brute = gl_proves_brute(f)
        if isinstance(verdict, Proved):
            stats["exact"] += 1
            if brute != 1:
                stats["disagreements"].append(f.key)
            continue
        m = verdict.countermodel
        stats["refuted"] += 1
        bound = box_n(cx(f) + 1, BOT)
        if (validate_frame(m) or model_forces_at_root(m, f)
                or not model_forces_at_root(m, bound)):
            stats["dishonest"].append(f.key)
        if brute == 0:
            stats["exact"] += 1
        elif len(m.worlds) <= 4:
            stats["disagreements"].append(f.key)
        else:
            stats["skipped"] += 1
    stats["elapsed"] = time.perf_counter() - start
    return stats


def test_criterion_1_prover_agrees_with_brute_force(prover_sweep):
    s = prover_sweep
    ok = not s["disagreements"] and s["elapsed"] < 120.0
    _line(1, ok, "%d formulas, %d exact, %d skipped as inexact, %.1fs"
          % (s["total"], s["exact"], s["skipped"], s["elapsed"]))
    assert s["total"] == 246012
    assert ok, s["disagreements"][:5] or "over time budget"


def test_criterion_2_countermodels_meet_depth_bound(prover_sweep):
    s = prover_sweep
    ok = s["refuted"] > 0 and not s["dishonest"]
    _line(2, ok, "%d refuted instances checked" % s["refuted"])
    assert ok, s["dishonest"][:5]


def test_criterion_3_characterizations_agree():
    corpus = {}
    for a in itertools.islice(
            enumerate_formulas(5, names=("p", "q"), max_modal_depth=2), 200):
        corpus[a.key] = a
    for a in sample_formulas(150, seed=7, max_size=8, max_modal_depth=2):
        corpus[a.key] = a
    start = time.perf_counter()
    bad = []
    for a in corpus.values():
        r = nontrifling(a)
        bits = [
            (1 - r.char2[0]) & (1 - r.char2[1]),
            (1 - r.char3[0]) & (1 - r.char3[1]),
            (1 - r.char4[1]) & (1 - r.char4[2]),
            (1 - r.char5[0]) & (1 - r.char5[1]),
        ]
        if bits != [r.verdict] * 4:
            bad.append(a.key)
    ok = len(corpus) >= 300 and not bad
    _line(3, ok, "%d formulas, %.1fs" % (len(corpus),
                                         time.perf_counter() - start))
    assert len(corpus) >= 300
    assert ok, bad[:5]


def test_criterion_4_contingency_iff_nontrifling():
    start = time.perf_counter()
    total = 0
    bad = []
    for a in enumerate_formulas(8, names=("p", "q"), box_free=True):
        total += 1
        want = classify(a) == CONTINGENT
        got = not glw_proves_box(a) and not glw_proves_negbox(a)
        if want != got:
            bad.append(a.key)
        if total % 50 == 0 and (nontrifling(a).verdict == 1) != got:
            bad.append("report diverges from deciders: " + a.key)
    ok = not bad
    _line(4, ok, "%d box-free formulas, %.1fs" % (total,
                                                  time.perf_counter() - start))
    assert total == 773664
    assert ok, bad[:5]


def test_criterion_5_synthesizers_verify():
    start = time.perf_counter()
    full, cols = _bit_columns(("p", "q", "s"))
    total = contingent = audited = 0
    bad = []
    for a in enumerate_formulas(9, names=("p", "q", "s"), box_free=True):
        total += 1
        table = _packed_table(a, full, cols)
        if table == 0 or table == full:
            continue
        contingent += 1
        try:
            sub = lemma1_synthesize(a)
        except Exception as exc:
            bad.append("%s: %s" % (a.key, exc))
            continue
        if contingent % 500 == 0:
            audited += 1
            if not is_tautology(iff(Var("r"), substitute(a, sub))):
                bad.append("audit failed: " + a.key)
    plain = (total, contingent)

    q_all = {"q1", "q2"}
    total2 = qualifying = audited2 = 0
    for a in enumerate_formulas(7, names=("p1", "p2", "q1", "q2"),
                                box_free=True):
        total2 += 1
        q_names = sorted(variables(a) & q_all)
        if not q_names or not (variables(a) - set(q_names)):
            continue
        try:
            sub = lemma2_synthesize(a, q_names)
        except ConditionFails:
            continue
        except Exception as exc:
            bad.append("%s: %s" % (a.key, exc))
            continue
        qualifying += 1
        if qualifying % 200 == 0:
            audited2 += 1
            if not is_tautology(iff(Var("r"), substitute(a, sub))):
                bad.append("audit failed: " + a.key)

    ok = not bad and contingent > 0 and qualifying > 0
    _line(5, ok,
          "plain %d/%d contingent (+%d audits), parameterized %d/%d "
          "qualifying (+%d audits), %.1fs"
          % (plain[1], plain[0], audited, qualifying, total2, audited2,
             time.perf_counter() - start))
    assert plain[0] == 18912445 and total2 == 564954
    assert ok, bad[:5]


def test_criterion_6_surgery_certificates():
    start = time.perf_counter()
    claims = 0
    for length in range(6):
        cert = merge_nontrifling(CHAIN_P_TOP, DEAD_END_P, P, length)
        claims += len(cert.checked_claims)

    left = gl_proves(imp(Box(P), P)).countermodel
    right = gl_proves(imp(_rf_conj(Box(P)), Neg(Box(P)))).countermodel
    claims += len(merge_nontrifling(left, right, P, 3).checked_claims)

    for a in (P, imp(Box(P), P), lor(P, Box(Var("q")))):
        m0 = gl_proves(a).countermodel
        m1 = gl_proves(imp(_rf_conj(Box(a)), Neg(Box(a)))).countermodel
        claims += len(merge_mt(m0, m1, a).checked_claims)

    s = 3
    depth = land(box_n(s + 1, BOT), diamond_n(s, TOP))
    v0 = chain_extend(
        gl_proves(imp(diamond_n(1, TOP), Neg(Box(P)))).countermodel, s)
    v1 = chain_extend(gl_proves(Neg(land(depth, Box(P)))).countermodel, s)
    claims += len(merge_mt4(v0, v1, P, s).checked_claims)

    ok = claims > 0
    _line(6, ok, "%d claims checked, %.1fs" % (claims,
                                               time.perf_counter() - start))
    assert ok


def test_criterion_7_witness_comparison_laws():
    positions = list(range(6)) + [ABSENT]
    configs = 0
    for a, b in itertools.product(positions, repeat=2):
        configs += 1
        assert not (wc_preceq(a, b) and wc_prec(b, a)), (a, b)
        if a is not ABSENT or b is not ABSENT:
            assert wc_preceq(a, b) or wc_prec(b, a), (a, b)
    _line(7, configs == 49, "%d configurations" % configs)
    assert configs == 49


def _finite_streams(horizon, max_events, tags, infinite):
    yield ProofStream(horizon, {}, infinite)
    for k in range(1, max_events + 1):
        for stages in itertools.combinations(range(horizon), k):
            for assigned in itertools.product(tags, repeat=k):
                yield ProofStream(horizon, dict(zip(stages, assigned)),
                                  infinite)


def _all_gated_streams(horizon):
    """Every assignment of {no proof, PHI, NOT_PHI} to every stage; OTHER
    tags never touch the gate, so this is the full space up to them."""
    for assigned in itertools.product((None, PHI, NOT_PHI), repeat=horizon):
        events = {s: t for s, t in enumerate(assigned) if t is not None}
        yield ProofStream(horizon, events, False)


def _discipline_streams(horizon):
    tags = (PHI, NOT_PHI, "OTHER(0)")
    for t in tags:
        for count in (2, 3, 4):
            for stages in itertools.combinations(range(horizon), count):
                yield ProofStream(horizon, {s: t for s in stages}, True)
    for t, u in itertools.combinations(tags, 2):
        for stages in itertools.combinations(range(horizon), 4):
            for first in itertools.combinations(range(4), 2):
                events = {stages[i]: (t if i in first else u)
                          for i in range(4)}
                yield ProofStream(horizon, events, True)


def test_criterion_8_rosser_equivalences():
    start = time.perf_counter()
    tags = (PHI, NOT_PHI, "OTHER(0)")
    taus = list(range(7)) + [ABSENT]
    configs = [(t0, t1) for t0 in taus for t1 in taus
               if t0 is ABSENT or t1 is ABSENT]
    bad = []
    runs = inconclusive = 0
    streams = itertools.chain(_all_gated_streams(12),
                              _finite_streams(12, 3, tags, False),
                              _finite_streams(8, 4, tags, False))
    for stream in streams:
        for t0, t1 in configs:
            runs += 1
            run = rosser_run(stream, t0, t1)
            report = {e.name: e for e in mtr_check(run, stream, t0, t1)}
            for e in report.values():
                if e.status == "fail":
                    bad.append((stream.events, t0, t1, e.name))
                elif e.status == "inconclusive" \
                        and e.name.startswith("sigma"):
                    inconclusive += 1
            for tau, name in ((t0, "sigma0_iff_rosser_phi"),
                              (t1, "sigma1_iff_rosser_not_phi")):
                realized = tau is not ABSENT and sigma_realized(stream, tau)
                if (realized or tau is ABSENT) \
                        and report[name].status != "pass":
                    bad.append((stream.events, t0, t1, "want " + name))
            if report["mutual_exclusion"].status != "pass":
                bad.append((stream.events, t0, t1, "exclusion"))

    affirmed = 0
    for stream in _discipline_streams(10):
        for t0, t1 in configs:
            runs += 1
            run = rosser_run(stream, t0, t1)
            report = {e.name: e for e in mtr_check(run, stream, t0, t1)}
            for e in report.values():
                if e.status == "fail":
                    bad.append((stream.events, t0, t1, e.name))
            if l6_hypotheses_hold(stream, t0, t1):
                if report["l6_range"].status == "pass":
                    affirmed += 1
                else:
                    bad.append((stream.events, t0, t1, "l6 under hypotheses"))
    elapsed = time.perf_counter() - start
    ok = not bad and affirmed > 0 and elapsed < 180.0
    _line(8, ok, "%d runs, %d equivalence entries inconclusive at horizon, "
          "%d range equalities, %.1fs" % (runs, inconclusive, affirmed,
                                          elapsed))
    assert ok, bad[:5] or "over time budget"


def test_criterion_9_solovay_simulation():
    start = time.perf_counter()
    a = imp(Box(P), P)
    model = merge_mt(CHAIN_P_TOP, DEAD_END_P, a).model
    assert len(model.worlds) == 6
    worlds = sorted(model.worlds)
    taus = list(range(7)) + [ABSENT]
    horizon = 20
    schedules = [{}]
    schedules += [{s: w} for s in range(14) for w in worlds]
    schedules += [{s1: w1, s2: w2}
                  for s1, s2 in itertools.combinations(range(14), 2)
                  for w1 in worlds for w2 in worlds]
    schedules += [{7: "0,1", 8: "0,2", 9: "1,1"},
                  {1: "1,1", 8: "0,1", 12: "0,2"},
                  {7: "0,2", 9: "0,1", 11: "1,1"}]
    runs = embeddings = 0
    bad = []
    for sigma in taus:
        for fa in taus:
            for sched in schedules:
                runs += 1
                run = solovay_run(model, sigma, fa, sched, horizon)
                if run.unstable:
                    bad.append((sigma, fa, sched, "unstable"))
                    continue
                for e in solovay_check(run, model, a):
                    if e.status != "pass":
                        bad.append((sigma, fa, sched, e.name))
                    elif e.name == "embedding_at_limit" and e.detail == "":
                        embeddings += 1
    elapsed = time.perf_counter() - start
    ok = not bad and embeddings > 0
    _line(9, ok, "%d runs, %d non-vacuous embeddings, %.1fs"
          % (runs, embeddings, elapsed))
    assert ok, bad[:5]
