"""Ideal arithmetic over reduced Groebner bases (Buchberger's algorithm).

Internally polynomials are converted to dicts keyed by dense exponent
tuples over a ranked variable list; the public surface speaks
:class:`~polyrank.polyring.Polynomial`.
"""

from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement

from .polyring import GREVLEX, MonomialOrder, Polynomial, mono_degree, mono_from_dict, var_key

_TAG = "__tag"


def _to_dense(p, ranked):
    index = {v: i for i, v in enumerate(ranked)}
    n = len(ranked)
    out = {}
    for m, c in p.items():
        e = [0] * n
        for v, k in m:
            e[index[v]] = k
        out[tuple(e)] = c
    return out


def _from_dense(d, ranked):
    return Polynomial._raw(
        {mono_from_dict({ranked[i]: k for i, k in enumerate(e) if k}): c for e, c in d.items()}
    )


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lead(f, key):
    return max(f, key=key)


def _monic(f, key):
    lm = _lead(f, key)
    lc = f[lm]
    if lc == 1:
        return f
    return {m: c / lc for m, c in f.items()}


def _reduce(f, basis, key, full=True):
    """Remainder of ``f`` modulo ``basis`` (list of ``(lm, monic poly)``)."""
    f = dict(f)
    rem = {}
    while f:
        m = _lead(f, key)
        c = f[m]
        for g_lm, g in basis:
            if _divides(g_lm, m):
                q = tuple(a - b for a, b in zip(m, g_lm))
                for gm, gc in g.items():
                    t = tuple(a + b for a, b in zip(q, gm))
                    v = f.get(t, 0) - c * gc
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


def _spoly(f, f_lm, g, g_lm):
    lcm = tuple(max(a, b) for a, b in zip(f_lm, g_lm))
    qf = tuple(a - b for a, b in zip(lcm, f_lm))
    qg = tuple(a - b for a, b in zip(lcm, g_lm))
    out = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(qf, m))] = c
    for m, c in g.items():
        t = tuple(a + b for a, b in zip(qg, m))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(polys, key):
    """Reduced, monic Groebner basis of dense polynomials."""
    basis = []
    for f in polys:
        if not f:
            continue
        r = _reduce(f, basis, key)
        if r:
            r = _monic(r, key)
            basis.append((_lead(r, key), r))
    if not basis:
        return []
    n = len(basis[0][0])
    if any(not any(lm) for lm, _ in basis):
        return [(tuple([0] * n), {tuple([0] * n): Fraction(1)})]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        i, j = min(
            pairs,
            key=lambda ij: (
                key(tuple(max(a, b) for a, b in zip(basis[ij[0]][0], basis[ij[1]][0]))),
                ij,
            ),
        )
        pairs.discard((i, j))
        lm_i, f_i = basis[i]
        lm_j, f_j = basis[j]
        lcm = tuple(max(a, b) for a, b in zip(lm_i, lm_j))
        if all(min(a, b) == 0 for a, b in zip(lm_i, lm_j)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(basis[k][0], lcm)
            and (max(i, k), min(i, k)) not in pairs
            and (max(j, k), min(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue  # chain criterion
        r = _reduce(_spoly(f_i, lm_i, f_j, lm_j), basis, key)
        if not r:
            continue
        r = _monic(r, key)
        lm = _lead(r, key)
        if not any(lm):
            return [(lm, {lm: Fraction(1)})]
        basis.append((lm, r))
        new = len(basis) - 1
        pairs.update((new, k) for k in range(new))

    # minimal, then interreduced
    minimal = []
    for idx, (lm, f) in enumerate(basis):
        if any(
            _divides(other, lm) and (other != lm or k < idx)
            for k, (other, _) in enumerate(basis)
            if k != idx
        ):
            continue
        minimal.append((lm, f))
    reduced = []
    for idx, (lm, f) in enumerate(minimal):
        others = [g for k, g in enumerate(minimal) if k != idx]
        r = _monic(_reduce(f, others, key), key)
        reduced.append((lm, r))
    reduced.sort(key=lambda item: key(item[0]), reverse=True)
    return reduced


def groebner_basis(gens, order=GREVLEX):
    """Reduced Groebner basis of ``gens`` as a list of monic polynomials."""
    return list(Ideal(gens, order).basis)


def normal_form(p, basis, order=GREVLEX):
    """Remainder of ``p`` on division by ``basis`` (assumed a Groebner basis)."""
    ranked = order.rank(set(p.variables).union(*(g.variables for g in basis)))
    key = order.dense_key(ranked)
    dense = [_to_dense(g, ranked) for g in basis if not g.is_zero]
    dense = [(_lead(g, key), _monic(g, key)) for g in dense]
    return _from_dense(_reduce(_to_dense(p, ranked), dense, key), ranked)


class Ideal:
    """An ideal of Q[X] with a lazily computed reduced Groebner basis.

    Instances are immutable; the basis and the dense encodings used for
    reduction are cached on first use.
    """

    def __init__(self, generators=(), order=GREVLEX):
        self.generators = tuple(g for g in generators if not g.is_zero)
        self.order = order
        self._dense_cache = {}

    @cached_property
    def variables(self):
        return frozenset().union(*(g.variables for g in self.generators))

    @cached_property
    def _ranked(self):
        return self.order.rank(self.variables)

    @cached_property
    def basis(self):
        ranked = self._ranked
        key = self.order.dense_key(ranked)
        dense = _buchberger([_to_dense(g, ranked) for g in self.generators], key)
        return tuple(_from_dense(f, ranked) for _, f in dense)

    def _dense_basis(self, ranked):
        cached = self._dense_cache.get(ranked)
        if cached is None:
            key = self.order.dense_key(ranked)
            cached = [
                (_lead(d, key), d) for d in (_to_dense(g, ranked) for g in self.basis)
            ]
            self._dense_cache[ranked] = cached
        return cached

    def reduce(self, p):
        if not self.generators or p.is_zero:
            return p
        if self.is_unit:
            return Polynomial._raw({})
        ranked = self.order.rank(self.variables | p.variables)
        key = self.order.dense_key(ranked)
        return _from_dense(_reduce(_to_dense(p, ranked), self._dense_basis(ranked), key), ranked)

    @cached_property
    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant

    def contains_one(self):
        return self.is_unit

    def __contains__(self, p):
        return self.reduce(p).is_zero

    def is_zero_ideal(self):
        return not self.basis

    def leading_monomials(self):
        return [g.leading_term(self.order)[0] for g in self.basis]

    def with_order(self, order):
        return Ideal(self.basis if order == self.order else self.generators, order)

    def __add__(self, other):
        gens = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.basis + tuple(gens), self.order)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return "Ideal<" + ", ".join(map(str, self.basis)) + ">"


UNIT = Ideal([Polynomial.constant(1)])
ZERO_IDEAL = Ideal()


def ideal_member(p, ideal):
    return p in ideal


def contains_one(ideal):
    return ideal.contains_one()


def ideal_equal(first, second):
    if first.order == second.order:
        return first.basis == second.basis
    return all(g in second for g in first.basis) and all(g in first for g in second.basis)


def elimination_ideal(ideal, keep, order=GREVLEX):
    """``ideal`` intersected with Q[keep], as an ideal under ``order``."""
    keep = frozenset(keep)
    drop = ideal.variables - keep
    if not drop:
        return Ideal(ideal.basis, order) if ideal.order == order else Ideal(ideal.generators, order)
    block = MonomialOrder(eliminate=frozenset(drop))
    basis = Ideal(ideal.generators, block).basis
    return Ideal([g for g in basis if g.variables <= keep], order)


def ideal_intersection(first, second, order=GREVLEX):
    if first.contains_one():
        return Ideal(second.generators, order)
    if second.contains_one():
        return Ideal(first.generators, order)
    if first.is_zero_ideal() or second.is_zero_ideal():
        return Ideal((), order)
    t = Polynomial.var(_TAG)
    gens = [t * g for g in first.generators] + [(1 - t) * g for g in second.generators]
    return elimination_ideal(Ideal(gens), first.variables | second.variables, order)


def monomials_up_to(variables, degree):
    ranked = sorted(variables, key=var_key)
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(ranked, d):
            exps = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            out.append(mono_from_dict(exps))
    return out


def bounded_degree_slice(ideal, degree, variables=None):
    """A basis of ``{f in ideal : deg f <= degree}`` as a Q-vector space.

    ``variables`` is the ambient universe (defaults to the ideal's own).
    Uses that a graded-order Groebner basis gives degree-bounded standard
    representations.
    """
    if degree < 0:
        return []
    universe = set(variables or ()) | ideal.variables
    if ideal.order != GREVLEX:
        ideal = Ideal(ideal.generators)
    products = []
    for g in ideal.basis:
        dg = g.degree()
        if dg > degree:
            continue
        for m in monomials_up_to(universe, degree - dg):
            products.append(g * Polynomial._raw({m: Fraction(1)}))
    return _row_echelon(products)


def _row_echelon(polys):
    """Gauss-Jordan basis of the span of ``polys`` (pivot = grevlex-leading monomial)."""
    rows = {}
    for p in polys:
        p = _reduce_by_rows(p, rows)
        if p.is_zero:
            continue
        m, c = p.leading_term()
        p = p.scale(1 / c)
        for k in list(rows):
            coeff = rows[k].coefficient(m)
            if coeff:
                rows[k] = rows[k] - p.scale(coeff)
        rows[m] = p
    key = GREVLEX.sort_key(frozenset().union(*(p.variables for p in rows.values())))
    return [rows[m] for m in sorted(rows, key=key, reverse=True)]


def _reduce_by_rows(p, rows):
    for m, row in rows.items():
        c = p.coefficient(m)
        if c:
            p = p - row.scale(c)
    return p


def standard_monomials(ideal, variables, degree):
    """Monomials of degree <= ``degree`` not divisible by a leading monomial."""
    lms = [dict(m) for m in ideal.with_order(GREVLEX).leading_monomials()] if ideal.generators else []
    out = []
    for m in monomials_up_to(variables, degree):
        md = dict(m)
        if any(all(md.get(v, 0) >= e for v, e in lm.items()) for lm in lms):
            continue
        out.append(m)
    return out


__all__ = [
    "Ideal",
    "UNIT",
    "ZERO_IDEAL",
    "bounded_degree_slice",
    "contains_one",
    "elimination_ideal",
    "groebner_basis",
    "ideal_equal",
    "ideal_intersection",
    "ideal_member",
    "monomials_up_to",
    "normal_form",
    "standard_monomials",
]
