"""Independent validation: model sampling, execution simulation, and a
Farkas-based linear ranking function oracle.

Nothing here touches the Groebner or cone machinery, so agreement with the
prover is meaningful evidence.
"""

import random
from fractions import Fraction
from itertools import product

from .formula import TransitionFormula, dnf, eval_formula
from .polyring import Polynomial, prime_name

DEFAULT_BOX = (-10, 10)
DEFAULT_SAMPLES = 500
_DENOMINATORS = (1, 1, 2, 3, 4)


def _draw(rng, box, domain):
    lo, hi = box
    if domain == "integer":
        return Fraction(rng.randint(lo, hi))
    q = rng.choice(_DENOMINATORS)
    return Fraction(rng.randint(lo * q, hi * q), q)


def _solve_one(eq, known, domain):
    """Value for the single unknown of ``eq`` if it enters linearly."""
    rest = eq.substitute({v: Polynomial.constant(x) for v, x in known.items() if v in eq.variables})
    if rest.degree() != 1 or len(rest.variables) != 1:
        return None
    (v,) = rest.variables
    value = -rest.constant_term / rest.coefficient(((v, 1),))
    if domain == "integer" and value.denominator != 1:
        return False
    return v, value


def _propagate(cell, known, rng, box, domain, order):
    """Complete ``known`` to a valuation, solving equalities when possible."""
    vals = dict(known)
    pending = [v for v in order if v not in vals]
    while pending:
        progress = False
        for eq in cell.equalities:
            unknown = eq.variables - vals.keys()
            if len(unknown) == 1:
                solved = _solve_one(eq, vals, domain)
                if solved is False:
                    return None
                if solved:
                    v, value = solved
                    vals[v] = value
                    pending.remove(v)
                    progress = True
        if not progress and pending:
            v = pending.pop(0)
            vals[v] = _draw(rng, box, domain)
    return vals


def _variables(formula):
    if isinstance(formula, TransitionFormula):
        return list(formula.variables) + [prime_name(v) for v in formula.variables]
    raise TypeError("expected a TransitionFormula")


def sample_models(formula, box=DEFAULT_BOX, n=DEFAULT_SAMPLES, domain="integer", seed=0, budget=None):
    """Up to ``n`` valuations over X and X' satisfying ``formula``.

    Each attempt picks a DNF cell, samples unprimed variables first and
    solves equalities that pin down a single remaining variable; a plain
    rejection draw is mixed in for robustness.
    """
    rng = random.Random(seed)
    names = _variables(formula)
    cells = dnf(formula, max_cells=4096)
    if not cells:
        return []
    budget = budget if budget is not None else 60 * n
    out = []
    for attempt in range(budget):
        if len(out) >= n:
            break
        if attempt % 5 == 4:
            vals = {v: _draw(rng, box, domain) for v in names}
        else:
            order = names[:]
            rng.shuffle(order)
            order.sort(key=lambda v: v.endswith("'"))
            vals = _propagate(rng.choice(cells), {}, rng, box, domain, order)
        if vals is not None and eval_formula(formula, vals):
            out.append(vals)
    return out


def successors(formula, state, rng, box=DEFAULT_BOX, domain="integer", tries=200):
    """Yield candidate successor valuations of ``state`` (a map over X)."""
    primed = [prime_name(v) for v in formula.variables]
    for cell in dnf(formula, max_cells=4096):
        for _ in range(max(1, tries // 4)):
            vals = _propagate(cell, state, rng, box, domain, primed)
            if vals is not None and eval_formula(formula, vals):
                yield vals
                break
    if domain == "integer" and len(primed) <= 2:
        lo, hi = box
        for point in product(range(lo, hi + 1), repeat=len(primed)):
            vals = dict(state)
            vals.update(zip(primed, map(Fraction, point)))
            if eval_formula(formula, vals):
                yield vals
                return


def simulate(formula, start, steps, seed=0, box=DEFAULT_BOX, domain="integer"):
    """Greedy execution from ``start``; returns the visited states (over X).

    The trace has at most ``steps`` transitions and stops early when no
    successor is found.
    """
    rng = random.Random(seed)
    state = {v: Fraction(start[v]) for v in formula.variables}
    trace = [state]
    for _ in range(steps):
        nxt = next(successors(formula, state, rng, box, domain), None)
        if nxt is None:
            break
        state = {v: nxt[prime_name(v)] for v in formula.variables}
        trace.append(state)
    return trace


def holds_on(formula, before, after):
    vals = dict(before)
    vals.update({prime_name(v): x for v, x in after.items()})
    return eval_formula(formula, vals)


# -- validation of emitted objects -------------------------------------------


def _split(vals):
    pre = {v: x for v, x in vals.items() if not v.endswith("'")}
    post = {v[:-1]: x for v, x in vals.items() if v.endswith("'")}
    return pre, post


def prf_violations(witness, models):
    """Models where ``witness`` is negative or fails to drop by one."""
    bad = []
    for vals in models:
        pre, post = _split(vals)
        r, r_next = witness.eval(pre), witness.eval(post)
        if r < 0 or r_next > r - 1:
            bad.append(vals)
    return bad


def qprf_violations(p, models):
    bad = []
    for vals in models:
        pre, post = _split(vals)
        r, r_next = p.eval(pre), p.eval(post)
        if r < 0 or r_next > r:
            bad.append(vals)
    return bad


def nonnegativity_violations(p, models):
    return [vals for vals in models if p.eval(vals) < 0]


# -- Farkas linear ranking oracle -------------------------------------------


def _phase_one(rows, rhs):
    """Nonnegative solution of ``rows @ x = rhs`` by Bland-rule simplex."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    tab = []
    for row, b in zip(rows, rhs):
        row, b = [Fraction(x) for x in row], Fraction(b)
        if b < 0:
            row, b = [-x for x in row], -b
        tab.append(row + [Fraction(0)] * m + [b])
    for i in range(m):
        tab[i][n + i] = Fraction(1)
    basic = list(range(n, n + m))
    cost = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            if j < n or j == n + m:
                cost[j] -= tab[i][j]
    while True:
        col = next((j for j in range(n + m) if cost[j] < 0), None)
        if col is None:
            break
        pivot_row = None
        for i in range(m):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                key = (ratio, basic[i])
                if pivot_row is None or key < pivot_row[0]:
                    pivot_row = (key, i)
        if pivot_row is None:
            break
        r = pivot_row[1]
        pv = tab[r][col]
        tab[r] = [x / pv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][col]:
                f = tab[i][col]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[r])]
        f = cost[col]
        cost = [a - f * b for a, b in zip(cost, tab[r])]
        basic[r] = col
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * (n + m)
    for i, j in enumerate(basic):
        x[j] = tab[i][-1]
    return x[:n]


def linear_rf_oracle(cell, variables):
    """A linear ranking function over ``variables`` for a linear cell, or ``None``.

    Looks for ``r`` with ``r >= 0`` and ``r - r' >= 1`` each written as a
    nonnegative combination of the cell's constraints plus a nonnegative
    constant (affine Farkas lemma).  Strict atoms are read as nonstrict.
    """
    if not cell.is_linear():
        raise ValueError("linear_rf_oracle needs a cell with linear atoms")
    variables = list(variables)
    primed = [prime_name(v) for v in variables]
    coords = [()] + [((v, 1),) for v in variables + primed]
    constraints = list(cell.nonstrict) + list(cell.strict)
    for e in cell.equalities:
        constraints += [e, -e]
    k = len(constraints)
    # unknowns: r+ (n+1), r- (n+1), mu (k+1), nu (k+1)
    n = len(variables)
    width = 2 * (n + 1) + 2 * (k + 1)
    rows, rhs = [], []

    def r_coeff(row, coord, sign):
        # coefficient of the template r (or -r') on coordinate ``coord``
        if coord == ():
            idx = 0
        else:
            name = coord[0][0]
            if name in variables:
                if sign == "post":
                    return
                idx = 1 + variables.index(name)
            else:
                if sign != "post":
                    return
                idx = 1 + primed.index(name)
        s = -1 if sign == "post" else 1
        row[idx] += s
        row[n + 1 + idx] -= s

    mu0 = 2 * (n + 1)
    nu0 = mu0 + k + 1
    for coord in coords:
        # bounded: r - mu0 - sum mu_i g_i = 0
        row = [Fraction(0)] * width
        r_coeff(row, coord, "pre")
        if coord == ():
            row[mu0] -= 1
        for i, g in enumerate(constraints):
            row[mu0 + 1 + i] -= g.coefficient(coord)
        rows.append(row)
        rhs.append(Fraction(0))
        # decreasing: r - r' - 1 - nu0 - sum nu_i g_i = 0
        row = [Fraction(0)] * width
        r_coeff(row, coord, "pre")
        if coord == ():
            row[0] -= 1
            row[n + 1] += 1  # r' shares the constant, so it cancels
            row[nu0] -= 1
        else:
            r_coeff(row, coord, "post")
        for i, g in enumerate(constraints):
            row[nu0 + 1 + i] -= g.coefficient(coord)
        rows.append(row)
        rhs.append(Fraction(1) if coord == () else Fraction(0))
    x = _phase_one(rows, rhs)
    if x is None:
        return None
    terms = {}
    for j, coord in enumerate([()] + [((v, 1),) for v in variables]):
        c = x[j] - x[n + 1 + j]
        if c:
            terms[coord] = c
    return Polynomial(terms)


__all__ = [
    "DEFAULT_BOX",
    "DEFAULT_SAMPLES",
    "holds_on",
    "linear_rf_oracle",
    "nonnegativity_violations",
    "prf_violations",
    "qprf_violations",
    "sample_models",
    "simulate",
    "successors",
]
