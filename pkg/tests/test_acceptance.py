"""Acceptance criteria 1-13, one test each, printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the bare list of lines.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from _scen import FAMILIES, scenario, setup  # noqa: E402

from qvertex import delta  # noqa: E402
from qvertex.families import star_algebra_check  # noqa: E402
from qvertex.fields import find_annihilator  # noqa: E402
from qvertex.identities import (conjugation_check, d_rules_check, vacuum_creation_check,  # noqa: E402
                                witness_independence_check)
from qvertex.polys import BiPoly  # noqa: E402
from qvertex.scalars import ONE, GroupElement, Scalar  # noqa: E402
from qvertex.scenario import SUITES, Setup  # noqa: E402
from qvertex.suites import (_ClosedBook, _alphas, _spread, products_check, run_suite,  # noqa: E402
                            suite_minpoly)

Z3, Z4 = Scalar.zeta(3), Scalar.zeta(4)


def _all(reports) -> tuple:
    bad = [r for r in reports if not r.passed]
    return (not bad, f"{len(reports)} reports" if not bad else f"{bad[0].name}: {bad[0].counterexample}")


def _pick(reports, *names):
    return [r for r in reports if r.name in names]


# ------------------------------------------------------------ the criteria

def c1():
    worst, reps = 0.0, []
    for a in (ONE, -ONE, Z3, Z4):
        t = time.perf_counter()
        reps.append(delta.verify_delta_identity(a, ((-8, 8),) * 3))
        worst = max(worst, time.perf_counter() - t)
    ok, msg = _all(reps)
    return ok and worst < 1.0, f"{msg}, slowest {worst:.2f}s of 1s"


def c2():
    reps = [delta.iota_check(n, a, 20) for a in (ONE, Z3, Scalar.q()) for n in range(-5, 6)]
    return _all(reps)


def c3():
    rep = delta.decomposition_roundtrip({ONE: 1, Z3: 2, Z3 * Z3: 1}, random.Random(2024), support=(-5, 5))
    return rep.passed, f"{rep.compared} coefficients compared"


def c4():
    reps = []
    for name in FAMILIES:
        s = setup(name)
        for g in s.gens:
            reps.append(vacuum_creation_check(s.book, g.field, _alphas(s), max_degree=2))
    return _all(reps)


def c5():
    reps = []
    for name in FAMILIES:
        s = setup(name)
        for a, b in s.pairs():
            reps.append(d_rules_check(s.book, a.field, b.field, _alphas(s), max_degree=2))
            reps.append(conjugation_check(s.book, a.field, b.field, _alphas(s), max_degree=2))
    return _all(reps)


def c6():
    reps = []
    for name in FAMILIES:
        s = setup(name)
        for a, b in _spread(s.pairs(), 3):
            reps.append(witness_independence_check(s.book, a.field, b.field, _alphas(s),
                                                   extra=BiPoly.linear(2), max_degree=2))
    return _all(reps)


def _twisted_witnesses(s: Setup):
    """Every generator pair's least witness; their lcm must be (x1^2 - x2^2)^2."""
    target = {GroupElement(): 2, GroupElement(1, 2): 2}
    top = {}
    for a in s.gens:
        for b in s.gens:
            w = find_annihilator(a.field, b.field, candidates=s.gamma, labels=s.labels())
            got = dict(w.factors)
            if got != s.expected_roots(a, b):
                return False, f"{a.field.name},{b.field.name}: {w.to_text()}"
            for g, k in got.items():
                top[g] = max(top.get(g, 0), k)
    return top == target, f"lcm of witnesses {top}"


def c7():
    msgs, ok = [], True
    for name in ("twisted_abelian_T2", "twisted_affine_T2"):
        s = Setup(scenario(name))
        good, msg = _twisted_witnesses(s)
        reps = _pick(run_suite(s, "yalpha"), "mode-products", "commutator-formula")
        reps += run_suite(s, "jacobi") + _pick(run_suite(s, "quasi-module"), "quasi-jacobi")
        mp = suite_minpoly(s)[0]
        good2, msg2 = _all(reps + [mp])
        poly_ok = mp.params.get("polynomial") == "x^2 - 1"
        ok = ok and good and good2 and poly_ok
        msgs.append(f"{name}: {msg}; {msg2}; minpoly {mp.params.get('polynomial')}")
    return ok, " | ".join(msgs)


def c8():
    s = Setup(scenario("sublattice_k2"))
    pairs = [(a, b) for a in s.gens for b in s.gens]
    reps = [products_check(s, pairs, s.book, 2)]
    mp = suite_minpoly(s)[0]
    ok, msg = _all(reps + [mp])
    return ok and mp.params.get("polynomial") == "x^2 - 1", f"{msg}; minpoly {mp.params.get('polynomial')}"


def c9():
    s = Setup(scenario("quantum_heisenberg"))
    for a in s.gens:
        for b in s.gens:
            m, n = a.desc[1], b.desc[1]
            w = find_annihilator(a.field, b.field, candidates=s.gamma, labels=s.labels())
            want = {GroupElement(0, 1, n - m + 1): 2, GroupElement(0, 1, n - m - 1): 2}
            if dict(w.factors) != want:
                return False, f"m={m}, n={n}: {w.to_text()}"
    rep = products_check(s, [(a, b) for a in s.gens for b in s.gens], s.book, 2)
    return rep.passed, f"25 annihilators, products {rep.compared} coefficients"


def c10():
    s = Setup(scenario("quantum_torus"))
    star = star_algebra_check(3)
    pairs = [(a, b) for a in s.gens for b in s.gens]
    prods = products_check(s, pairs, _ClosedBook(s), 2)
    return _all([star, s.fam.A.check(), prods])


def _gamma_va(*names):
    reps = []
    for name in ("twisted_affine_T2", "twisted_abelian_T2"):
        reps += _pick(run_suite(Setup(scenario(name)), "gamma-va"), *names)
    return reps


def c11():
    return _all(_gamma_va("adjoint-locality"))


def c12():
    return _all(_gamma_va("closure", "gamma-closure-equals-closure", "gamma-va-equivalence",
                          "r-alpha-translation", "closure-determinism"))


def c13():
    """Every verifier must fail, with a counterexample, on one perturbed coefficient."""
    failures = []
    low = {
        "delta-identity": delta.verify_delta_identity(ONE, ((-8, 8),) * 3, perturb=(-1, 0, 0)),
        "iota-expansion": delta.iota_check(-2, Z3, 20, perturb=(0, 3)),
        "decomposition": delta.decomposition_roundtrip({ONE: 1, Z3: 2}, random.Random(1), perturb=(0, 0)),
    }
    for name, rep in low.items():
        if rep.passed or not rep.counterexample:
            failures.append(name)
    for suite in SUITES:
        s = Setup(scenario("twisted_abelian_T2", closure={"weight": 2}, perturb={"suite": suite}))
        reps = run_suite(s, suite)
        if all(r.passed for r in reps) or not any(r.counterexample for r in reps if not r.passed):
            failures.append(suite)
    return not failures, "all controls failed as required" if not failures else f"still passing: {failures}"


CRITERIA = {
    1: ("delta identity, alpha in {1, -1, zeta3, zeta4}", c1, 4.0),
    2: ("iota expansions, n in [-5, 5]", c2, 1.0),
    3: ("decomposition round trip and Bezout path", c3, 5.0),
    4: ("vacuum, creation and translation for all families", c4, 10.0),
    5: ("D rules and conjugation for all families", c5, 30.0),
    6: ("witness independence, three pairs per family", c6, None),
    7: ("twisted affine, abelian and sl2, T = 2", c7, 120.0),
    8: ("sublattice fields, k = 2", c8, 60.0),
    9: ("quantum Heisenberg", c9, 60.0),
    10: ("quantum torus", c10, 120.0),
    11: ("adjoint locality on the depth-2 closure", c11, None),
    12: ("gamma-VA equivalence on the depth-2 closure", c12, None),
    13: ("negative controls", c13, None),
}


def run_criterion(n: int):
    title, fn, limit = CRITERIA[n]
    t = time.perf_counter()
    ok, detail = fn()
    secs = time.perf_counter() - t
    in_time = limit is None or secs < limit
    status = "PASS" if ok and in_time else "FAIL"
    budget = f" (limit {limit:g}s)" if limit else ""
    line = f"criterion {n:2d} {status}  {title}: {detail}  [{secs:.1f}s{budget}]"
    return ok, in_time, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, in_time, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line
    assert in_time, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(CRITERIA)]
    for _, _, line in results:
        print(line)
    sys.exit(0 if all(a and b for a, b, _ in results) else 1)
