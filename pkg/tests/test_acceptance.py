"""Acceptance criteria, each evaluated at its stated tolerance.

The default catalogue is run once; each criterion inspects the rows of its
scenario group and reports a single pass/fail line.
"""

import itertools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from ncverify import torus as tt
from ncverify.harness import run_scenarios
from ncverify.harness.catalogue import default_scenarios

RUN_ALL_BUDGET = 300.0
CRITERION_1_BUDGET = 30.0


def _report(key, name, ok, detail=""):
    line = f"[{key}] {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def catalogue():
    start = time.perf_counter()
    rows = run_scenarios(default_scenarios())
    return rows, time.perf_counter() - start


def _group(rows, *prefixes):
    out = [r for r in rows if r.scenario.startswith(prefixes)]
    assert out, f"no rows for {prefixes}"
    return out


def _hard_ok(rows):
    bad = [r for r in rows if r.status in ("fail", "error")]
    hard = [r for r in rows if r.status != "estimate"]
    worst = min((r.slack for r in hard if r.slack is not None and math.isfinite(r.slack)), default=math.nan)
    return not bad, f"{len(hard)} hard rows, {len(bad)} failing, worst slack {worst:.3g}"


def _check_group(rows, key, name, *prefixes):
    ok, detail = _hard_ok(_group(rows, *prefixes))
    assert _report(key, name, ok, detail), detail


def test_c01_holomorphic_heat_smoothing(catalogue):
    rows, _ = catalogue
    group = _group(rows, "c01-free-hs-tail")
    assert {r.p for r in group} == {2, 4, 6} and {r.t for r in group} == {0.1, 0.5, 1.0}
    assert len({(r.scenario, r.params["instance"]) for r in group}) == 150
    scen = [s for s in default_scenarios() if s.id.startswith("c01-free-hs-tail")]
    start = time.perf_counter()
    again = run_scenarios(scen)
    elapsed = time.perf_counter() - start
    ok, detail = _hard_ok(group)
    same = [(r.lhs, r.rhs) for r in again] == [(r.lhs, r.rhs) for r in group]
    passed = ok and same and elapsed < CRITERION_1_BUDGET
    assert _report(1, "holomorphic heat smoothing", passed, f"{detail}, {elapsed:.1f} s, reproducible={same}")


def test_c02_spectral_gap_pair(catalogue):
    _check_group(catalogue[0], 2, "spectral gap pair", "c01-free-gap-", "c01-free-hs-low")


def test_c03_sharpness(catalogue):
    rows = _group(catalogue[0], "c03-")
    assert {r.algebra for r in rows} == {"free", "qgauss", "qtorus"}
    assert max(r.d for r in rows) == 5
    _check_group(catalogue[0], 3, "sharpness for the generator powers", "c03-")


def test_c04_hankel_bound(catalogue):
    rows = _group(catalogue[0], "c04-")
    quantities = {r.params.get("quantity") for r in rows if r.check == "hankel"}
    assert {"trace-norm", "B", "C", "A-tilde-psd", "A-tilde-trace", "smoothing-constant", "smoothing-quadrature"} <= quantities
    _check_group(catalogue[0], 4, "Hankel multiplier bound and tail estimates", "c04-")


def test_c05_kernels(catalogue):
    _check_group(catalogue[0], 5, "circle kernels and averaging identities", "c05-")


def test_c06_hypercontractive_smoothing(catalogue):
    _check_group(catalogue[0], 6, "smoothing with c_p = 2/p at p = 4", "c06-")


def test_c07_moment_comparison(catalogue):
    rows = _group(catalogue[0], "c07-")
    assert {r.algebra for r in rows} == {"free", "qgauss"}
    _check_group(catalogue[0], 7, "moment comparison", "c07-")


def test_c08_qgaussian_structure(catalogue):
    rows = _group(catalogue[0], "c08-")
    assert {r.check for r in rows} >= {"gram-psd", "qcr", "zq-norms", "kemp", "hs-tail", "gap-tail", "gap-low", "hs-low"}
    _check_group(catalogue[0], 8, "q-Gaussian structure and suite", "c08-")


def test_c09_quantum_tori(catalogue):
    rows = _group(catalogue[0], "c09-")
    assert {round(r.params.get("theta", [0, 0.0])[1], 12) for r in rows if "theta" in r.params} >= {0.3, 0.2}
    _check_group(catalogue[0], "9a", "quantum torus suite and windowed Weyl cross-validation", "c09-")


def _weyl_agrees(x, p, a=1, b=5, tol=1e-10):
    M = tt.weyl_model(a, b, x)
    trace_ok = abs(tt.weyl_trace(M) - tt.trace_theta(x)) <= tol
    return trace_ok and abs(tt.weyl_norm(x, a, b, p, check_window=False) - tt.norm_even_theta(x, p)) <= tol


def test_c09_weyl_monomials():
    th = tt.theta_2(0.2)
    box = list(itertools.product(range(-2, 3), repeat=2))
    ok = all(_weyl_agrees(tt.TorusPolynomial.monomial(al, th, 0.7 - 0.4j), p) for al in box for p in (2, 4, 6))
    assert _report("9b", "Weyl cross-validation on single monomials with |alpha_j| <= 2", ok, f"{len(box)} monomials, p = 2, 4, 6")


@pytest.mark.xfail(strict=True, reason="the 5-dimensional model aliases U_1^5 = 1 once a moment product leaves the window")
def test_c09_weyl_general_supports():
    th = tt.theta_2(0.2)
    rng = np.random.default_rng(9)
    failures = 0
    trials = 0
    for p in (2, 4, 6):
        for _ in range(20):
            support = {tuple(rng.integers(-2, 3, size=2)) for _ in range(4)}
            x = tt.TorusPolynomial(2, th, {al: complex(*rng.uniform(-1, 1, 2)) for al in support})
            trials += 1
            failures += not _weyl_agrees(x, p)
    x = tt.TorusPolynomial(2, th, {(0, 0): 1, (1, 0): 1, (2, 0): 1})
    witness = (tt.norm_even_theta(x, 6), tt.weyl_norm(x, 1, 5, 6, check_window=False))
    detail = f"{failures}/{trials} random supports disagree; 1+U1+U1^2 at p=6: {witness[0]:.6f} vs {witness[1]:.6f}"
    assert _report("9c", "Weyl cross-validation on arbitrary supports inside |alpha_j| <= 2", failures == 0, detail), detail


def test_c10_structure_and_runtime(catalogue):
    rows, elapsed = catalogue
    group = _group(rows, "c10-")
    for algebra in ("free", "qtorus", "qgauss"):
        assert len({r.params["instance"] for r in group if r.check == "axioms" and r.algebra == algebra}) == 200
    ok, detail = _hard_ok(group)
    everything, _ = _hard_ok(rows)
    passed = ok and everything and elapsed < RUN_ALL_BUDGET
    assert _report(10, "structural axioms and full run", passed, f"{detail}; run --all {elapsed:.1f} s, all hard rows pass={everything}")
