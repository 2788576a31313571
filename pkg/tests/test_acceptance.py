"""Acceptance gate: ten end-to-end criteria, one printed verdict line each.

Each test prints "criterion NN <name>: PASS/FAIL (<detail>)" regardless of
pytest capture, then asserts.  Criterion 07 records a measured fact about
small registers: at k = round(sqrt(2^n)) iterations the marked probability
is 1/4 at n=2 and about 0.330 at n=3, so the blanket ">1/2 for all
n in [2,12]" check fails there.  The test states the check faithfully and
is expected to stay red; the per-n evidence is in its printed detail.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from grover_lab.analysis import compare, paper_amplitude, sigma_sum
from grover_lab.grover_diagram import (
    build_grover_diagram,
    indicator_box,
    register_space,
    sigma_sum_diagram,
)
from grover_lab.rewrite import check_rule_soundness, normalize, rules_catalog
from grover_lab.simulator import (
    OracleFunction,
    closed_form_marked_prob,
    grover_run,
    optimal_iterations,
)
from grover_lab.spaces import set_space
from grover_lab.tensor_eval import evaluate, scalar_of

from oracles import brute_force_probs


def report(capsys, number, name, ok, detail):
    with capsys.disabled():
        verdict = "PASS" if ok else "FAIL"
        print(f"criterion {number:02d} {name}: {verdict} ({detail})")


def test_criterion_01_simulator_matches_closed_form(capsys):
    worst = 0.0
    for n in range(2, 11):
        N = 2**n
        for k in range(0, int(2 * math.sqrt(N)) + 1):
            got = grover_run(n, OracleFunction.single(n, 0), k).marked_probability
            want = closed_form_marked_prob(n, k)
            worst = max(worst, abs(got - want))
    ok = worst <= 1e-10
    report(capsys, 1, "simulator closed-form exactness", ok, f"max |Δ| = {worst:.3e}")
    assert ok


def test_criterion_02_brute_force_equivalence(capsys):
    worst = 0.0
    for n in range(1, 5):
        for x0 in range(2**n):
            for k in range(0, int(2 * math.sqrt(2**n)) + 1):
                got = grover_run(n, OracleFunction.single(n, x0), k).probabilities
                want = brute_force_probs(n, {x0}, k)
                worst = max(worst, float(np.max(np.abs(got - want))))
    ok = worst <= 1e-12
    report(capsys, 2, "dense-matrix oracle equivalence", ok, f"max |Δ| = {worst:.3e}")
    assert ok


def test_criterion_03_rule_soundness(capsys):
    worst = 0.0
    all_pass = True
    for rule in rules_catalog():
        rep = check_rule_soundness(rule, [2, 3, 4, 8], seed=0, n_random=100)
        worst = max(worst, rep.max_deviation)
        all_pass = all_pass and rep.passed
    ok = all_pass and worst <= 1e-12
    report(
        capsys,
        3,
        "rewrite-rule soundness",
        ok,
        f"{len(rules_catalog())} rules, max deviation = {worst:.3e}",
    )
    assert ok


def test_criterion_04_diagram_simulator_equivalence(capsys):
    worst = 0.0
    for n in range(1, 6):
        space = register_space(n)
        for x0 in range(2**n):
            for k in range(1, 9):
                d = build_grover_diagram(n, indicator_box(space, {x0}), k)
                probs = np.abs(evaluate(d).matrix[:, 0]) ** 2
                want = grover_run(n, OracleFunction.single(n, x0), k).probabilities
                worst = max(worst, float(np.max(np.abs(probs - want))))
    ok = worst <= 1e-10
    report(capsys, 4, "diagram vs simulator", ok, f"max |Δ| = {worst:.3e}")
    assert ok


def test_criterion_05_two_summand_equals_simplified(capsys):
    worst = 0.0
    for n in range(2, 21):
        N = 2.0**n
        for k in (1.0, math.sqrt(N), 2.0 * math.sqrt(N)):
            amp = paper_amplitude(N, k)
            scale = max(abs(amp.simplified_value), 1e-300)
            worst = max(worst, abs(amp.two_summand_value - amp.simplified_value) / scale)
    ok = worst <= 1e-12
    report(capsys, 5, "amplitude forms agree", ok, f"max relative Δ = {worst:.3e}")
    assert ok


def test_criterion_06_formula_level_claims(capsys):
    sq = {n: paper_amplitude(2.0**n).squared for n in range(2, 21)}
    total = {n: (2**n - 1) * sq[n] for n in sq}
    below_half = all(sq[n] < 0.5 for n in sq) and all(total[n] < 0.5 for n in total)
    decreasing = all(total[n + 2] < total[n] for n in range(6, 20, 2))
    tail_small = total[20] < 1e-5
    ok = below_half and decreasing and tail_small
    report(
        capsys,
        6,
        "amplitude-bound claims",
        ok,
        f"total unmarked at n=20 is {total[20]:.3e}",
    )
    assert ok


def test_criterion_07_marked_majority_at_root_N_iterations(capsys):
    failures = []
    for n in range(2, 13):
        k = optimal_iterations(n).paper_mode
        p = grover_run(n, OracleFunction.single(n, 0), k).marked_probability
        if not p > 0.5:
            failures.append((n, k, round(p, 4)))
    ok = not failures
    report(
        capsys,
        7,
        "marked majority at k = round(sqrt(N))",
        ok,
        f"violations (n, k, p): {failures}" if failures else "all n in [2,12]",
    )
    assert ok, (
        "marked probability fails to exceed 1/2 at small n; "
        f"measured violations (n, k, p): {failures}"
    )


def test_criterion_08_discrepancy_report(capsys):
    rep = compare(4, k_mode="paper")
    sim_ok = abs(rep.simulator_unmarked_each - 0.027886390686035156) <= 1e-12
    formula_ok = abs(rep.formula_A_squared - 4.425671733407903e-4) <= 1e-12
    # the two quantities measurably differ; the ratio is part of the record
    gap_ok = rep.discrepancy_ratio > 10.0
    ok = sim_ok and formula_ok and gap_ok
    report(
        capsys,
        8,
        "formula-vs-simulator discrepancy",
        ok,
        f"sim {rep.simulator_unmarked_each:.6e} vs A^2 {rep.formula_A_squared:.6e}, "
        f"ratio {rep.discrepancy_ratio:.2f}",
    )
    assert ok


def test_criterion_09_sign_sum(capsys):
    ok = True
    for N in range(2, 65):
        space = set_space("S", N)
        d = sigma_sum_diagram(indicator_box(space, {0}))
        ok = ok and sigma_sum(N, 1) == N - 2
        ok = ok and abs(scalar_of(d) - (N - 2)) <= 1e-12
    report(capsys, 9, "sign-sum identity", ok, "N in [2,64]")
    assert ok


def test_criterion_10_determinism(capsys):
    cli = [sys.executable, "-m", "grover_lab.cli"]
    outputs = []
    for argv in (["claims", "--n-min", "2", "--n-max", "10"], ["compare", "--n", "4"]):
        runs = [
            subprocess.run(cli + argv, capture_output=True, text=True).stdout
            for _ in range(2)
        ]
        outputs.append(runs[0] == runs[1] and bool(runs[0]))
    space = register_space(3)
    d = build_grover_diagram(3, indicator_box(space, {2}), 2)
    (f1, t1), (f2, t2) = normalize(d), normalize(d)
    trace_ok = f1 == f2 and t1.steps == t2.steps
    ok = all(outputs) and trace_ok
    report(
        capsys,
        10,
        "byte-identical outputs",
        ok,
        "two CLI subcommands and one normalize trace, run twice each",
    )
    assert ok
