import math
import time

import pytest

from polyrank import (
    IterationLimitError,
    Limits,
    Polynomial,
    Status,
    member,
    polyhedron_member,
    prove,
    terminate_lprf,
    terminate_prf,
    transition,
    zero_ideal,
    zero_stable_restrict,
)
from polyrank.oracle import holds_on, prf_violations, qprf_violations, sample_models, simulate
from polyrank.ranking import zero_stable_chain

from _support import CORPUS, DISEQ, INCOMPLETE, MONOTONE_PAIRS, NX_LOOP, NZ_LOOP, XY_FIXED, XY_LOOP, ZERO_STABLE, models, strengthen

P = Polynomial.parse
WLPRF_ENTRIES = [e for e in CORPUS if e.wlprf]


def test_nx_loop_prf():
    start = time.perf_counter()
    verdict = terminate_prf(NX_LOOP)
    assert time.perf_counter() - start < 10
    assert verdict.status is Status.REAL_TERMINATING and verdict.iterations == 1
    poly = verdict.prf.polyhedron
    assert polyhedron_member(P("n*x + z"), poly)
    assert polyhedron_member(verdict.prf.witness, poly)
    for p in ("n*x", "x", "n", "1"):
        assert member(P(p), poly.cone)


def test_fixed_lexicographic_loop():
    verdict = terminate_lprf(XY_FIXED)
    assert verdict.status is Status.INT_TERMINATING and verdict.iterations == 2
    first, second = verdict.lprf
    assert member(P("y"), first.cone)
    assert member(P("x - x*y"), second.cone)
    assert verdict.describe() == "IntTerminating in 2 iterations"


def test_incomplete_example_stays_unknown():
    assert terminate_prf(INCOMPLETE).status is Status.UNKNOWN
    assert terminate_lprf(INCOMPLETE).status is Status.UNKNOWN


def test_diseq_and_halving():
    verdict = terminate_prf(DISEQ)
    assert verdict.status is Status.REAL_TERMINATING
    assert verdict.prf.polyhedron.ideal.contains_one()
    assert terminate_lprf(NZ_LOOP).status is Status.INT_TERMINATING


def test_unsat_formula():
    false = transition("x", "x >= 1 && x <= 0")
    assert terminate_lprf(false).iterations == 0
    assert terminate_prf(false).status is Status.REAL_TERMINATING


def test_zero_stable_example():
    restricted = zero_stable_restrict(ZERO_STABLE)
    ideal = zero_ideal(restricted, restricted.all_variables)
    for z in ("x", "z", "x'", "z'"):
        assert P(z) in ideal
    again = zero_stable_restrict(restricted)
    assert zero_ideal(again, again.all_variables) == ideal


def test_iteration_limit():
    with pytest.raises(IterationLimitError):
        terminate_lprf(XY_FIXED, Limits(max_iters=1))


def test_prove_dispatch():
    assert prove(NX_LOOP, "auto").mode == "prf"
    assert prove(XY_FIXED, "auto").mode == "lprf"
    with pytest.raises(ValueError):
        prove(NX_LOOP, "bogus")


def test_describe():
    v = terminate_prf(transition("x", "x >= 0 && x' == x - 1"))
    assert v.describe() == "RealTerminating in 1 iteration (ranking function x)"
    assert terminate_lprf(INCOMPLETE).describe().startswith("Unknown after")


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_zero_stability_of_restriction(entry):
    restricted = zero_stable_restrict(entry.formula)
    state = zero_ideal(restricted, restricted.state_variables)
    full = zero_ideal(restricted, restricted.all_variables)
    for z in state.basis:
        assert z.prime() in full


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_prf_soundness(entry):
    verdict = terminate_prf(entry.formula)
    if not verdict.proven:
        return
    restricted = zero_stable_restrict(entry.formula)
    for domain in ("integer", "rational"):
        samples = sample_models(restricted, n=500, domain=domain, seed=21)
        assert not prf_violations(verdict.prf.witness, samples)


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_qprf_soundness(entry):
    verdict = terminate_lprf(entry.formula)
    for k, step in enumerate(verdict.lprf):
        samples = models(step.formula, 500, seed=31 + k)
        for p in step.cone.positives:
            assert not qprf_violations(p, samples), f"step {k + 1}: {p}"


@pytest.mark.parametrize("entry", WLPRF_ENTRIES, ids=lambda e: e.name)
def test_completeness_regression(entry):
    verdict = terminate_lprf(entry.formula)
    assert verdict.status is Status.INT_TERMINATING
    assert verdict.iterations <= entry.dimension


def test_enough_wlprf_annotations():
    dims = {e.dimension for e in WLPRF_ENTRIES}
    assert len(WLPRF_ENTRIES) >= 10 and dims == {1, 2, 3}


@pytest.mark.parametrize("name,extra", MONOTONE_PAIRS)
@pytest.mark.parametrize("run", [terminate_prf, terminate_lprf], ids=["prf", "lprf"])
def test_monotonicity(name, extra, run):
    weak, strong = strengthen(name, extra)
    if run(weak).proven:
        assert run(strong).proven


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_never_contradiction(entry):
    formula = entry.formula
    verdict = terminate_prf(formula)
    if not verdict.proven:
        return
    rounds = len(zero_stable_chain(formula)) - 1
    witness = verdict.prf.witness
    starts = sample_models(formula, n=20, seed=41)
    for i, vals in enumerate(starts):
        v0 = {v: vals[v] for v in formula.variables}
        trace = simulate(formula, v0, 60, seed=i)
        transitions = len(trace) - 1
        # the first ``rounds`` steps may lie outside the zero-stable restriction
        bound = max(0, math.floor(witness.eval(v0))) + 1 + rounds
        assert transitions <= rounds or transitions <= bound, (v0, transitions, bound)


def test_literal_lexicographic_loop_runs_forever():
    # y = 1 pins x - x*y at 0 while the second branch keeps decrementing x
    run = [{"x": 5 - k, "y": 1} for k in range(200)]
    assert all(holds_on(XY_LOOP, a, b) for a, b in zip(run, run[1:]))
    assert not terminate_lprf(XY_LOOP).proven
