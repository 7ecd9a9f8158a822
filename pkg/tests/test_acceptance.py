"""Acceptance gate: nine top-level criteria, one summary line each.

Each criterion is implemented faithfully against its stated target and
tolerance.  Criteria whose stated targets are not attainable by a correct
implementation (2, and parts of 7) are asserted as stated and allowed to
fail; see the repository notes for the analysis.  Nothing here is loosened
to force a pass.
"""

import dataclasses
import math
import statistics

from conftest import ACCEPTANCE_LINES

from sparsewitness import analytics, detect, gnp, logic
from sparsewitness.experiment import ExperimentConfig, run_experiment
from sparsewitness.graphs import automorphism_count, induced_embeddings
from sparsewitness.witness import (
    build_W,
    build_W_star,
    has_gamma_r_property,
    omega,
    process_init,
    process_step,
    w_star_edge_count,
    w_star_vertex_count,
)


def _report(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {num}: {status} — {detail}")
    assert ok, f"criterion {num}: {detail}"


# ---------------------------------------------------------------------------
# 1. Count identities, runtime < 5 s.

def test_criterion_1_count_identities():
    bad = []
    for a in range(1, 6):
        for gamma in range(4):
            for r in (2, 3, 4):
                g = build_W(a, gamma, r).graph
                s = a + (gamma + 1) * omega(a, r)
                e_target = ((gamma + 2) * s - a) / (gamma + 1) - 2
                if g.n != s or g.m != e_target:
                    bad.append(("W", a, gamma, r, g.n, g.m))
    for a in (1, 2):
        for gamma in range(4):
            g = build_W_star(a, gamma, 2).graph
            if g.n != w_star_vertex_count(a, gamma, 2) or g.m != w_star_edge_count(
                a, gamma, 2
            ):
                bad.append(("W*", a, gamma, 2, g.n, g.m))
    _report(1, not bad, f"vertex/edge closed forms, {len(bad)} mismatches")


# ---------------------------------------------------------------------------
# 2. Automorphism oracle, runtime < 30 s.  Stated target: 24.

def test_criterion_2_automorphism_oracle():
    counts = {
        gamma: automorphism_count(build_W(2, gamma, 4).graph)
        for gamma in (0, 1, 2)
    }
    w20 = build_W(2, 0, 4).graph
    self_embeddings = len(induced_embeddings(w20, w20))
    ok = all(c == 24 for c in counts.values()) and self_embeddings == 24
    _report(
        2, ok,
        f"target 24; measured automorphisms {counts}, "
        f"self-embeddings {self_embeddings}",
    )


# ---------------------------------------------------------------------------
# 3. Process fidelity, runtime < 60 s.

def test_criterion_3_process_fidelity():
    state = process_init(2, 2)
    target_n = w_star_vertex_count(2, 2, 2)
    increments_ok = True
    while state.graph.n < target_n:
        nxt = process_step(state)
        if nxt.graph.n - state.graph.n not in (1, 3):
            increments_ok = False
        state = nxt
    target = build_W_star(2, 2, 2).graph
    iso = bool(induced_embeddings(target, state.graph, limit=1))
    ok = increments_ok and state.graph.n == target_n and iso
    _report(
        3, ok,
        f"(gamma=2, r=2) process at {state.graph.n} vertices "
        f"isomorphic={iso}, increments in {{1, 3}}={increments_ok}",
    )


# ---------------------------------------------------------------------------
# 4. Logic/detect equivalence on 200 random graphs, runtime < 10 min.

def test_criterion_4_logic_detect_equivalence():
    phi = logic.parse_formula("EXSET X (@isoW(X) & @max(X))")
    mismatches = 0
    for t in range(200):
        n = 4 + (t % 7)  # n in [4, 10]
        p = 0.2 if t % 2 == 0 else 0.5
        g = gnp.sample_gnp(gnp.SamplerConfig(n=n, p=p, seed=42, stream=t))
        via_logic = logic.evaluate(g, phi, gamma=0, r=4, budget=10**7)
        via_detect = bool(detect.find_dominating_induced_W(g, 0, 4, (1, 2)))
        if via_logic != via_detect:
            mismatches += 1
    _report(4, mismatches == 0, f"200 instances, {mismatches} disagreements")


# ---------------------------------------------------------------------------
# 5. First-moment agreement, runtime < 10 min.

def test_criterion_5_first_moment_agreement():
    # (a) ordered induced copies of the gamma=1, a=1 witness (P_3) in
    # G(100, 100^-0.3), 2000 samples, within 3 standard errors.
    n, p, trials = 100, 100 ** (-0.3), 2000
    counts = []
    for t in range(trials):
        g = gnp.sample_gnp(gnp.SamplerConfig(n=n, p=p, seed=7, stream=t))
        counts.append(detect.find_induced_W(g, 1, 1, 4, mode="count").count)
    mean = statistics.fmean(counts)
    se = statistics.stdev(counts) / math.sqrt(trials)
    expect = analytics.expected_W(n, p, 1, 1).to_float()
    dev_a = abs(mean - expect) / se

    # (b) dominating ordered copies of the a=1, gamma=0 witness (an edge)
    # in G(50, 0.3), 5000 samples.  The analytic expectation is ~7e-12,
    # so the empirical mean must be statistically indistinguishable from it.
    n2, p2, trials2 = 50, 0.3, 5000
    counts2 = []
    for t in range(trials2):
        g = gnp.sample_gnp(gnp.SamplerConfig(n=n2, p=p2, seed=8, stream=t))
        counts2.append(
            detect.find_dominating_induced_W(g, 0, 4, (1, 1), mode="count").count
        )
    mean2 = statistics.fmean(counts2)
    sd2 = statistics.stdev(counts2)
    se2 = sd2 / math.sqrt(trials2) if sd2 > 0 else 1.0 / trials2
    expect2 = analytics.expected_W_dominating(n2, p2, 1, 0).to_float()
    dev_b = abs(mean2 - expect2) / se2

    ok = dev_a <= 3.0 and dev_b <= 3.0
    _report(
        5, ok,
        f"plain copies {mean:.1f} vs {expect:.1f} ({dev_a:.2f} SE); "
        f"dominating copies {mean2:.3g} vs {expect2:.3g} ({dev_b:.2f} SE)",
    )


# ---------------------------------------------------------------------------
# 6. Domination formula, 10^5 samples, runtime < 2 min.

def test_criterion_6_domination_formula():
    n, p, k, trials = 50, 0.2, 5, 100_000
    full = (1 << n) - 1
    hits = 0
    for t in range(trials):
        g = gnp.sample_gnp(gnp.SamplerConfig(n=n, p=p, seed=66, stream=t))
        cover = 0
        for v in range(k):
            cover |= g.bits[v] | (1 << v)
        hits += cover == full
    freq = hits / trials
    expect = analytics.domination_probability(n, p, k)
    se = math.sqrt(max(expect * (1 - expect), 1e-300) / trials)
    dev = abs(freq - expect) / se
    ok = dev <= 3.0
    _report(
        6, ok,
        f"frequency {freq:.3g} vs (1-0.8^5)^45 = {expect:.3g} ({dev:.2f} SE)",
    )


# ---------------------------------------------------------------------------
# 7. Non-convergence certificates, exact arithmetic, runtime < 1 min.
# Stated parameters: part 1 (alpha=0.3, gamma=10, i in [3,8]);
# part 2 (alpha=0.6, beta=0.25, r=2, smallest admissible gamma, i in [1,4]).

def test_criterion_7_nonconvergence_certificates():
    part1_fail = []
    for i in range(3, 9):
        row = analytics.sequence_part1(i, 0.3, 10)
        if not (row.gap_certificate and row.existence_certificate):
            part1_fail.append((i, row.gap_violators))
    part2_fail = []
    for i in range(1, 5):
        row = analytics.sequence_part2(i, 0.6, 0.25, 4, 2)
        if not (row.n_certificate.holds and row.m_certificate.holds):
            part2_fail.append(i)
    ok = not part1_fail and not part2_fail
    _report(
        7, ok,
        f"part1 (gamma=10) failures {part1_fail or 'none'}; "
        f"part2 (r=2) failures at i={part2_fail or 'none'}",
    )


# ---------------------------------------------------------------------------
# 8. Parity property checker, runtime < 5 min.

def test_criterion_8_parity_property():
    on_stage = bool(has_gamma_r_property(build_W_star(2, 2, 2).graph, 2, 2))
    below = bool(has_gamma_r_property(build_W_star(1, 2, 2).graph, 2, 2))
    # One full rule-(i) extension step past the completed stage.
    state = process_init(2, 2)
    while state.graph.n < w_star_vertex_count(2, 2, 2):
        state = process_step(state)
    extended = process_step(state)
    past = bool(has_gamma_r_property(extended.graph, 2, 2))
    ok = on_stage and not below and not past
    _report(
        8, ok,
        f"holds on completed stage={on_stage}, below={below}, "
        f"past one extension={past}",
    )


# ---------------------------------------------------------------------------
# 9. Reproducibility, runtime < 1 min.

def test_criterion_9_reproducibility():
    cfg = ExperimentConfig(
        n_values=(15, 25), alpha=0.3, gamma=0, r=4, a_min=1, a_max=2,
        trials=30, seed=12, budget=10**6,
    )
    csv1 = run_experiment(cfg)
    csv2 = run_experiment(cfg)
    csv3 = run_experiment(dataclasses.replace(cfg, workers=3))
    ok = csv1 == csv2 == csv3
    _report(9, ok, f"byte-identical across reruns and worker counts: {ok}")
