import pytest

from polyrank import AlgebraicCone, Polynomial, cell_cone, consequence, dnf, is_unsat, member, transition
from polyrank.consequence import Limits, zero_ideal
from polyrank.formula import Cell
from polyrank.oracle import nonnegativity_violations

from _support import CORPUS, INCOMPLETE, MONOTONE_PAIRS, XY_LOOP, models, strengthen

P = Polynomial.parse


def _equivalent(a, b):
    return all(member(g, b) for g in a.positives + a.zeros) and all(
        member(g, a) for g in b.positives + b.zeros
    ) and all(member(-z, b) for z in a.zeros) and all(member(-z, a) for z in b.zeros)


def test_cell_cone_examples():
    (cell,) = dnf(transition("xy", "x == 2 && y <= 1"))
    got = cell_cone(cell, {"x", "y"}, 1)
    assert _equivalent(got, AlgebraicCone([P("x - 2")], [P("1 - y")]))
    (cell,) = dnf(transition("x", "x' == 0 && x' > 0"))
    assert cell_cone(cell, {"x", "x'"}).is_inconsistent
    empty = cell_cone(Cell(), {"x"})
    assert empty.zeros == () and empty.positives == (Polynomial.constant(1),)


def test_consequence_examples():
    f = transition("xy", "x == 2 && y <= 1")
    assert _equivalent(consequence(f, {"x", "y"}), AlgebraicCone([P("x - 2")], [P("1 - y")]))
    assert not member(P("x*y - 1"), consequence(INCOMPLETE, INCOMPLETE.all_variables))
    t = consequence(transition("x", "true"), {"x"})
    assert t.zeros == () and t.positives == (Polynomial.constant(1),)


def test_projection_keeps_entailed_facts():
    f = transition("xy", "x' == x + y && y >= 1 && x >= 0")
    c = consequence(f, {"x'", "y"})
    assert member(P("x' - y"), c)
    assert not member(P("x' - 2*y"), c)


def test_disjunction_zeros_are_exact():
    f = transition("xy", "(x == 0 && y >= 0) || (x == 0 && y <= 0)")
    c = consequence(f, {"x", "y"})
    assert c.zeros == (P("x"),)
    assert not member(P("y"), c) and not member(P("-y"), c)


def test_is_unsat_examples():
    assert is_unsat(transition("x", "x <= -1 && x >= 0"))
    assert not is_unsat(transition("x", "x >= 0"))
    from polyrank.formula import conjoin_frame

    framed = conjoin_frame(conjoin_frame(transition("xy", "x - x*y >= 0 && y >= 0 && ((x' == x && y' == y - 1) || (y <= 0 && x' == x - 1 && y' == y))"), [], [P("y")]), [P("y")], [P("x")])
    assert is_unsat(framed)


def test_zero_ideal_matches_consequence():
    for f in (XY_LOOP, INCOMPLETE):
        assert zero_ideal(f, f.all_variables) == consequence(f, f.all_variables).ideal


def test_degree_knob():
    f = transition("xy", "(y >= 0 && x*y >= 1) || (y >= 1 && x*y >= 2)")
    low = consequence(f, {"x", "y"}, Limits(max_degree=1))
    high = consequence(f, {"x", "y"}, Limits(max_degree=2))
    assert member(P("x*y - 1"), high)
    assert member(P("x*y - 1"), low)  # generator degrees raise the bound
    assert member(P("y"), low)


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_sampling_soundness(entry):
    f = entry.formula
    cone = consequence(f, f.all_variables)
    samples = models(f, 500, seed=11)
    if is_unsat(f):
        assert cone.is_inconsistent
        return
    assert samples, "sampler found no models"
    for z in cone.zeros:
        assert all(z.eval(v) == 0 for v in samples), f"zero {z} fails"
    for p in cone.positives:
        assert not nonnegativity_violations(p, samples), f"positive {p} fails"


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.name)
def test_is_unsat_never_true_on_models(entry):
    f = entry.formula
    if models(f, 20, seed=5):
        assert not is_unsat(f)


@pytest.mark.parametrize("name,extra", MONOTONE_PAIRS)
def test_monotone_in_hypotheses(name, extra):
    weak, strong = strengthen(name, extra)
    cw = consequence(weak, weak.all_variables)
    cs = consequence(strong, strong.all_variables, Limits(max_degree=weak.max_degree()))
    for g in cw.positives + cw.zeros:
        assert member(g, cs)
