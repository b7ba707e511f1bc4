"""Algebraic cones ``<Z> + cone(P)`` and algebraic polyhedra over Q[X].

Membership reduces to linear programming: normal forms modulo ``Z`` are
linear, so ``p`` is a member iff ``nf(p)`` lies in the polyhedral cone
spanned by the normal forms of the positives (coordinates = monomials).
"""

from fractions import Fraction

from .groebner import UNIT, Ideal, ideal_intersection, standard_monomials, bounded_degree_slice
from .polyhedron import (
    VPolyhedron,
    cone_generators,
    h_to_v,
    in_cone,
    intersect,
    lp_feasible,
    sorted_dims,
    v_to_h,
    HPolyhedron,
)
from .polyring import ONE, Polynomial, normalize_scale

_ONE_POLY = Polynomial.constant(1)


def _as_ideal(zeros):
    return zeros if isinstance(zeros, Ideal) else Ideal(list(zeros))


def _dedupe(polys):
    out, seen = [], set()
    for p in polys:
        if p.is_zero:
            continue
        p = normalize_scale(p)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


class AlgebraicCone:
    """``<zeros> + cone(positives)``; positives kept reduced modulo the ideal."""

    def __init__(self, zeros=(), positives=(), variables=None):
        self.ideal = _as_ideal(zeros)
        if self.ideal.contains_one():
            self.ideal = UNIT
            pos = [_ONE_POLY]
        else:
            pos = _dedupe([_ONE_POLY] + [self.ideal.reduce(p) for p in positives])
        self.positives = tuple(pos)
        universe = set(variables or ()) | self.ideal.variables
        for p in self.positives:
            universe |= p.variables
        self.variables = frozenset(universe)

    @classmethod
    def inconsistent(cls, variables=()):
        return cls(UNIT, (), variables)

    @property
    def zeros(self):
        return self.ideal.basis

    @property
    def is_inconsistent(self):
        return self.ideal.contains_one()

    def __contains__(self, p):
        return member(p, self)

    def __repr__(self):
        z = ", ".join(map(str, self.zeros))
        p = ", ".join(map(str, self.positives))
        return f"AlgebraicCone(zeros=[{z}], positives=[{p}])"


class AlgebraicPolyhedron:
    """``<zeros> + cone(positives) + conv(vertices)``; empty iff no vertices."""

    def __init__(self, zeros=(), positives=(), vertices=()):
        self.cone = AlgebraicCone(zeros, positives)
        self.vertices = tuple(dict.fromkeys(self.cone.ideal.reduce(v) for v in vertices))

    @property
    def ideal(self):
        return self.cone.ideal

    @property
    def zeros(self):
        return self.cone.zeros

    @property
    def positives(self):
        return self.cone.positives

    @property
    def is_empty(self):
        return not self.vertices

    def __contains__(self, p):
        return polyhedron_member(p, self)

    def __repr__(self):
        v = ", ".join(map(str, self.vertices))
        return f"AlgebraicPolyhedron({self.cone!r}, vertices=[{v}])"


def member(p, cone):
    if cone.is_inconsistent:
        return True
    q = cone.ideal.reduce(p)
    if q.is_zero:
        return True
    return in_cone(q, [cone.ideal.reduce(g) for g in cone.positives])


def regularize(cone):
    """Move implied equalities (lineality of the positive cone) into the ideal."""
    ideal = cone.ideal
    positives = list(cone.positives)
    while True:
        if ideal.contains_one():
            return AlgebraicCone.inconsistent(cone.variables)
        reduced = _dedupe(ideal.reduce(p) for p in positives)
        if any(p.is_constant and p.constant_term < 0 for p in reduced):
            return AlgebraicCone.inconsistent(cone.variables)
        lineal = [p for p in reduced if in_cone(-p, reduced)]
        if not lineal:
            return AlgebraicCone(ideal, reduced, cone.variables)
        ideal = Ideal(ideal.basis + tuple(lineal))
        positives = [p for p in reduced if p not in lineal]


def _coordinate(name):
    return ((name, 1),)


def linear_preimage(cone, images):
    """``{q in Q[Y]^1 : f(q) in cone}`` for ``f(y) = images[y]``.

    Coordinates are the constant monomial and one linear monomial per
    ``y``.  Computed as the preimage of the H-representation of the
    positive cone in normal-form coordinates.
    """
    names = sorted(images)
    dims = sorted_dims([ONE] + [_coordinate(y) for y in names])
    if cone.is_inconsistent:
        return VPolyhedron.full(dims)
    ideal = cone.ideal
    columns = {ONE: ideal.reduce(_ONE_POLY)}
    for y in names:
        columns[_coordinate(y)] = ideal.reduce(images[y])
    gens = [ideal.reduce(p) for p in cone.positives]
    gens = [g for g in gens if not g.is_zero]
    support = set()
    for p in list(columns.values()) + gens:
        support.update(p.monomials())
    support = sorted_dims(support)
    if not support:
        return VPolyhedron.full(dims)
    target = v_to_h(VPolyhedron.cone(gens, dims=support))

    def pull(a):
        # functional a on the target space, pulled back to the a-coordinates
        return Polynomial._raw(
            {d: s for d in dims if (s := _pair(a, columns[d]))}
        )

    pre = HPolyhedron(
        dims,
        [(pull(a), b) for a, b in target.inequalities],
        [(pull(a), b) for a, b in target.equalities],
    )
    return h_to_v(pre)


def _pair(a, p):
    s = Fraction(0)
    for m, c in a.items():
        x = p.coefficient(m)
        if x:
            s += c * x
    return s


def linearize(cone):
    """The linear polynomials of ``cone`` as a polyhedron over ``{1} + X``."""
    return linear_preimage(cone, {v: Polynomial.var(v) for v in cone.variables})


def _degree_slice(cone, ideal, degree):
    """Generators of ``cone`` restricted to degree ``degree``, reduced modulo ``ideal``."""
    lineality = [ideal.reduce(g) for g in bounded_degree_slice(cone.ideal, degree, cone.variables)]
    rays = [ideal.reduce(p) for p in cone.positives if p.degree() <= degree]
    return [r for r in rays if not r.is_zero], [l for l in lineality if not l.is_zero]


def intersect_cones(first, second, degree):
    """Sound under-approximation of ``first & second`` through degree ``degree``.

    The zero ideal is the exact ideal intersection; positives come from the
    polyhedral intersection of both cones' degree-bounded parts.
    """
    if first.is_inconsistent:
        return second
    if second.is_inconsistent:
        return first
    variables = first.variables | second.variables
    ideal = ideal_intersection(first.ideal, second.ideal)
    degree = max(
        [degree]
        + [p.degree() for c in (first, second) for p in c.positives]
        + [g.degree() for c in (first, second) for g in c.zeros]
    )
    coords = standard_monomials(ideal, variables, degree)
    dims = sorted_dims(coords)
    parts = []
    for c in (first, second):
        rays, lineality = _degree_slice(c, ideal, degree)
        parts.append(VPolyhedron.cone(rays, lineality, dims))
    meet = intersect(*parts)
    extra = [l for l in meet.lineality]
    if extra:
        ideal = Ideal(ideal.basis + tuple(extra))
    return regularize(AlgebraicCone(ideal, meet.rays, variables))


def polyhedron_member(p, poly):
    if poly.is_empty:
        return False
    ideal = poly.ideal
    if ideal.contains_one():
        return True
    q = ideal.reduce(p)
    rays = [ideal.reduce(g) for g in poly.positives]
    vertices = [ideal.reduce(v) for v in poly.vertices]
    dims = sorted_dims(set(q.monomials()).union(*(r.monomials() for r in rays + vertices)))
    columns = [[r.coefficient(d) for d in dims] + [Fraction(0)] for r in rays]
    columns += [[v.coefficient(d) for d in dims] + [Fraction(1)] for v in vertices]
    target = [q.coefficient(d) for d in dims] + [Fraction(1)]
    return lp_feasible(columns, target) is not None


def restrict_positives(generators, keep):
    """Extreme combinations of ``generators`` whose support avoids non-``keep`` variables.

    ``generators`` are normal forms under an elimination order, so this is
    exactly the part of their cone living over ``keep``.
    """
    keep = frozenset(keep)
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        return []
    if all(g.variables <= keep for g in gens):
        return gens
    foreign = sorted_dims(
        m for g in gens for m in g.monomials() if any(v not in keep for v, _ in m)
    )
    k = len(gens)
    eqs = [[g.coefficient(m) for g in gens] for m in foreign]
    ineqs = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    lineality, rays = cone_generators(k, ineqs, eqs)
    out = []
    for lam in rays + lineality:
        p = Polynomial._raw({})
        for c, g in zip(lam, gens):
            if c:
                p = p + g.scale(c)
        out.append(p)
    return [p for p in out if not p.is_zero]


__all__ = [
    "AlgebraicCone",
    "AlgebraicPolyhedron",
    "intersect_cones",
    "linear_preimage",
    "linearize",
    "member",
    "polyhedron_member",
    "regularize",
    "restrict_positives",
]
