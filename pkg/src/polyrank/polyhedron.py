"""Exact rational convex polyhedra over monomial-indexed coordinates.

Vectors are :class:`~polyrank.polyring.Polynomial` objects read as sparse
coordinate maps (monomial -> rational), so a polyhedron of polynomials and
a polyhedron of coefficient vectors are the same thing.  Each polyhedron
carries its ambient coordinate tuple ``dims``; coordinates outside ``dims``
are fixed at zero.

Conversions use the double description method on the homogenized cone;
membership and redundancy are decided by an exact phase-one simplex.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .polyring import ZERO, Polynomial, mono_degree, var_key

_ZERO = Fraction(0)
_ONE = Fraction(1)


def dim_key(m):
    return (mono_degree(m), tuple((var_key(v), -e) for v, e in m))


def sorted_dims(monomials):
    return tuple(sorted(set(monomials), key=dim_key))


# -- dense helpers ----------------------------------------------------------


def _dot(a, b):
    s = _ZERO
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def _axpy(y, alpha, x):
    """``y + alpha * x``"""
    return [yi + alpha * xi if xi else yi for yi, xi in zip(y, x)]


def _primitive(v):
    """Positive rescaling of ``v`` to a primitive integer vector."""
    dens = 1
    for x in v:
        if x:
            d = x.denominator
            dens = dens * d // gcd(dens, d)
    ints = [int(x * dens) for x in v]
    g = 0
    for x in ints:
        if x:
            g = gcd(g, abs(x))
    if g == 0:
        return [_ZERO] * len(v)
    return [Fraction(x // g) for x in ints]


def _first_unit(v):
    """Positive rescaling so the first nonzero entry is +-1."""
    for x in v:
        if x:
            s = abs(x)
            return [y / s for y in v]
    return list(v)


def cone_generators(n, inequalities=(), equalities=()):
    """Double description of ``{x in Q^n : a.x >= 0, e.x = 0}``.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the cone modulo it, as primitive integer vectors
    (lists of Fractions).
    """
    lin = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    rays = []  # (vector, bitmask of tight processed inequalities)
    processed = 0
    constraints = [(list(a), True) for a in equalities] + [(list(a), False) for a in inequalities]
    for idx, (a, is_eq) in enumerate(constraints):
        bit = 0 if is_eq else 1 << idx
        vals = [_dot(a, l) for l in lin]
        pivot = next((k for k, v in enumerate(vals) if v), None)
        if pivot is not None:
            l0 = lin.pop(pivot)
            v0 = vals.pop(pivot)
            if v0 < 0:
                l0 = [-x for x in l0]
                v0 = -v0
            lin = [_primitive(_axpy(l, -v / v0, l0)) if v else l for l, v in zip(lin, vals)]
            new_rays = []
            for r, mask in rays:
                v = _dot(a, r)
                if v:
                    r = _primitive(_axpy(r, -v / v0, l0))
                new_rays.append((r, mask | bit))
            if not is_eq:
                new_rays.append((_primitive(l0), processed))
            rays = new_rays
        else:
            signed = [(r, mask, _dot(a, r)) for r, mask in rays]
            pos = [i for i, (_, _, v) in enumerate(signed) if v > 0]
            neg = [i for i, (_, _, v) in enumerate(signed) if v < 0]
            new_rays = [(r, mask | bit) for r, mask, v in signed if v == 0]
            if not is_eq:
                new_rays += [(signed[i][0], signed[i][1]) for i in pos]
            masks = [mask for _, mask, _ in signed]
            for ip in pos:
                rp, mp, vp = signed[ip]
                for iq in neg:
                    rq, mq, vq = signed[iq]
                    common = mp & mq
                    if any(
                        k != ip and k != iq and (mk & common) == common
                        for k, mk in enumerate(masks)
                    ):
                        continue
                    new = [vp * y - vq * x for x, y in zip(rp, rq)]
                    if any(new):
                        new_rays.append((_primitive(new), common | bit))
            rays = new_rays
        processed |= bit
    unique = []
    seen = set()
    for r, _ in rays:
        t = tuple(r)
        if t not in seen:
            seen.add(t)
            unique.append(r)
    return lin, unique


def lp_feasible(columns, target):
    """Find ``x >= 0`` with ``sum_j x_j * columns[j] == target``, or ``None``.

    Exact phase-one simplex with Bland's rule.
    """
    m = len(target)
    k = len(columns)
    if m == 0:
        return [_ZERO] * k
    rows = []
    for i in range(m):
        row = [Fraction(col[i]) for col in columns]
        rhs = Fraction(target[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [_ONE if j == i else _ZERO for j in range(m)] + [rhs])
    width = k + m
    basis = [k + i for i in range(m)]
    obj = [-sum((rows[i][j] for i in range(m)), _ZERO) for j in range(k)] + [_ZERO] * m
    obj.append(-sum((rows[i][-1] for i in range(m)), _ZERO))
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        _, r = best
        piv = rows[r][enter]
        prow = [x / piv for x in rows[r]]
        rows[r] = prow
        for i in range(m):
            if i != r and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[r] = enter
    if obj[-1] != 0:
        return None
    x = [_ZERO] * width
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    return x[:k]


def _rref(vectors):
    """Reduced row echelon basis: list of (pivot index, vector)."""
    rows = []
    for v in vectors:
        v = list(v)
        for p, r in rows:
            if v[p]:
                v = _axpy(v, -v[p], r)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            continue
        c = v[piv]
        v = [x / c for x in v]
        rows = [(p, _axpy(r, -r[piv], v) if r[piv] else r) for p, r in rows]
        rows.append((piv, v))
    rows.sort(key=lambda pr: pr[0])
    return rows


def _reduce_mod(v, rref):
    for p, r in rref:
        if v[p]:
            v = _axpy(v, -v[p], r)
    return v


# -- polyhedra --------------------------------------------------------------


def _support(polys):
    out = set()
    for p in polys:
        out.update(p.monomials())
    return out


def _vec(p, dims):
    return [p.coefficient(d) for d in dims]


def _poly(v, dims):
    return Polynomial._raw({d: x for d, x in zip(dims, v) if x})


@dataclass(frozen=True)
class VPolyhedron:
    """``cone(rays) + span(lineality) + conv(vertices)`` inside ``Q^dims``.

    No vertices means the empty set.
    """

    rays: tuple = ()
    vertices: tuple = ()
    lineality: tuple = ()
    dims: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(self.rays))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "lineality", tuple(self.lineality))
        extra = _support(self.rays + self.vertices + self.lineality)
        if self.dims is None:
            object.__setattr__(self, "dims", sorted_dims(extra))
        else:
            dims = tuple(self.dims)
            missing = extra - set(dims)
            if missing:
                raise ValueError(f"generators leave the ambient coordinates: {sorted(missing)}")
            object.__setattr__(self, "dims", dims)

    @classmethod
    def cone(cls, rays=(), lineality=(), dims=None):
        return cls(rays, (ZERO,), lineality, dims)

    @classmethod
    def empty(cls, dims=()):
        return cls((), (), (), dims)

    @classmethod
    def full(cls, dims):
        dims = tuple(dims)
        return cls.cone((), [Polynomial._raw({d: _ONE}) for d in dims], dims)

    @property
    def is_empty(self):
        return not self.vertices

    def __contains__(self, point):
        return member(point, self)

    def __str__(self):
        def fmt(ps):
            return "{" + ", ".join(map(str, ps)) + "}"

        if self.is_empty:
            return "VPolyhedron(empty)"
        return f"VPolyhedron(rays={fmt(self.rays)}, vertices={fmt(self.vertices)}, lineality={fmt(self.lineality)})"


@dataclass(frozen=True)
class HPolyhedron:
    """``{x in Q^dims : <a, x> >= b for (a, b) in inequalities, <a, x> = b for equalities}``."""

    dims: tuple
    inequalities: tuple = ()
    equalities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(
            self, "inequalities", tuple((a, Fraction(b)) for a, b in self.inequalities)
        )
        object.__setattr__(self, "equalities", tuple((a, Fraction(b)) for a, b in self.equalities))

    def satisfied_by(self, point):
        dims = set(self.dims)
        if any(m not in dims for m in point.monomials()):
            return False
        for a, b in self.equalities:
            if _inner(a, point) != b:
                return False
        return all(_inner(a, point) >= b for a, b in self.inequalities)

    def __contains__(self, point):
        return self.satisfied_by(point)


def _inner(a, x):
    return sum((c * x.coefficient(m) for m, c in a.items()), _ZERO)


def v_to_h(poly):
    dims = poly.dims
    n = len(dims)
    if poly.is_empty:
        return HPolyhedron(dims, inequalities=((ZERO, _ONE),))
    ineqs = [_vec(v, dims) + [_ONE] for v in poly.vertices] + [_vec(r, dims) + [_ZERO] for r in poly.rays]
    eqs = [_vec(l, dims) + [_ZERO] for l in poly.lineality]
    lin, rays = cone_generators(n + 1, ineqs, eqs)
    equalities = [(_poly(a[:n], dims), -a[n]) for a in (_first_unit(v) for v in lin)]
    inequalities = [
        (_poly(a[:n], dims), -a[n]) for a in (_first_unit(r) for r in rays) if any(a[:n])
    ]
    return HPolyhedron(dims, inequalities, equalities)


def h_to_v(hpoly):
    dims = hpoly.dims
    n = len(dims)
    ineqs = [_vec(a, dims) + [-b] for a, b in hpoly.inequalities]
    ineqs.append([_ZERO] * n + [_ONE])
    eqs = [_vec(a, dims) + [-b] for a, b in hpoly.equalities]
    lin, rays = cone_generators(n + 1, ineqs, eqs)
    vertices = [[x / r[n] for x in r[:n]] for r in rays if r[n] > 0]
    if not vertices:
        return VPolyhedron.empty(dims)
    return _canonical(dims, [r[:n] for r in rays if r[n] == 0], vertices, [l[:n] for l in lin])


def _canonical(dims, rays, vertices, lineality):
    rref = _rref(lineality)
    lin = [_first_unit(v) for _, v in rref]
    out_rays, seen = [], set()
    for r in rays:
        r = _first_unit(_reduce_mod(list(r), rref))
        t = tuple(r)
        if any(r) and t not in seen:
            seen.add(t)
            out_rays.append(r)
    out_vertices, seen = [], set()
    for v in vertices:
        v = _reduce_mod(list(v), rref)
        t = tuple(v)
        if t not in seen:
            seen.add(t)
            out_vertices.append(v)
    return VPolyhedron(
        tuple(sorted((_poly(r, dims) for r in out_rays), key=str)),
        tuple(sorted((_poly(v, dims) for v in out_vertices), key=str)),
        tuple(_poly(l, dims) for l in lin),
        dims,
    )


def _extend(hpoly, dims):
    extra = [d for d in dims if d not in set(hpoly.dims)]
    eqs = hpoly.equalities + tuple((Polynomial._raw({d: _ONE}), _ZERO) for d in extra)
    return HPolyhedron(dims, hpoly.inequalities, eqs)


def intersect_h(first, second):
    dims = sorted_dims(set(first.dims) | set(second.dims))
    a, b = _extend(first, dims), _extend(second, dims)
    return HPolyhedron(dims, a.inequalities + b.inequalities, a.equalities + b.equalities)


def intersect(first, second):
    """Exact intersection of two V-represented polyhedra."""
    return h_to_v(intersect_h(v_to_h(first), v_to_h(second)))


def project(poly, keep):
    """Image of ``poly`` under the coordinate projection onto ``keep``."""
    if isinstance(poly, HPolyhedron):
        poly = h_to_v(poly)
    keep = set(keep)
    dims = tuple(d for d in poly.dims if d in keep)
    if poly.is_empty:
        return VPolyhedron.empty(dims)

    def cut(p):
        return Polynomial._raw({m: c for m, c in p.items() if m in keep})

    return minimize(
        VPolyhedron(
            [cut(r) for r in poly.rays],
            [cut(v) for v in poly.vertices],
            [cut(l) for l in poly.lineality],
            dims,
        )
    )


def _in_hull(point, rays, vertices, lineality, n):
    """LP: point in cone(rays) + span(lineality) + conv(vertices) (dense)."""
    columns = [list(r) for r in rays] + [[-x for x in l] for l in lineality] + [list(l) for l in lineality]
    target = list(point)
    if vertices is not None:
        columns = [c + [_ZERO] for c in columns] + [list(v) + [_ONE] for v in vertices]
        target = target + [_ONE]
    return lp_feasible(columns, target) is not None


def member(point, poly):
    if isinstance(poly, HPolyhedron):
        return poly.satisfied_by(point)
    if poly.is_empty:
        return False
    dims = sorted_dims(set(poly.dims) | set(point.monomials()))
    vec = lambda p: _vec(p, dims)  # noqa: E731
    return _in_hull(
        vec(point),
        [vec(r) for r in poly.rays],
        [vec(v) for v in poly.vertices],
        [vec(l) for l in poly.lineality],
        len(dims),
    )


def in_cone(point, generators, lineality=()):
    """Whether ``point`` lies in ``cone(generators) + span(lineality)``."""
    dims = sorted_dims(_support(list(generators) + list(lineality) + [point]))
    return _in_hull(
        _vec(point, dims),
        [_vec(g, dims) for g in generators],
        None,
        [_vec(l, dims) for l in lineality],
        len(dims),
    )


def minimize(poly):
    """Drop redundant generators and expose hidden lineality; canonical output."""
    if poly.is_empty:
        return VPolyhedron.empty(poly.dims)
    dims = poly.dims
    n = len(dims)
    rays = [_vec(r, dims) for r in poly.rays]
    lin = [_vec(l, dims) for l in poly.lineality]
    vertices = [_vec(v, dims) for v in poly.vertices]

    rref = _rref(lin)
    rays = [r for r in (_reduce_mod(r, rref) for r in rays) if any(r)]
    # a ray whose negation is in the cone spans lineality
    hidden = [r for r in rays if _in_hull([-x for x in r], rays, None, [v for _, v in rref], n)]
    if hidden:
        rref = _rref([v for _, v in rref] + hidden)
        rays = [r for r in (_reduce_mod(r, rref) for r in rays) if any(r)]
    lin = [v for _, v in rref]
    uniq, seen = [], set()
    for r in rays:
        t = tuple(_first_unit(r))
        if t not in seen:
            seen.add(t)
            uniq.append(list(t))
    rays = uniq
    i = 0
    while i < len(rays):
        others = rays[:i] + rays[i + 1 :]
        if _in_hull(rays[i], others, None, lin, n):
            rays = others
        else:
            i += 1
    vertices = [_reduce_mod(v, rref) for v in vertices]
    uniq, seen = [], set()
    for v in vertices:
        if tuple(v) not in seen:
            seen.add(tuple(v))
            uniq.append(v)
    vertices = uniq
    i = 0
    while i < len(vertices) and len(vertices) > 1:
        others = vertices[:i] + vertices[i + 1 :]
        if _in_hull(vertices[i], rays, others, lin, n):
            vertices = others
        else:
            i += 1
    return _canonical(dims, rays, vertices, lin)


def contains(outer, inner):
    """Whether ``inner`` is a subset of ``outer`` (generator-wise check)."""
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    if not all(member(v, outer) for v in inner.vertices):
        return False
    base = inner.vertices[0]
    for r in inner.rays:
        if not member(base + r, outer):
            return False
    for l in inner.lineality:
        if not (member(base + l, outer) and member(base - l, outer)):
            return False
    return _recession_ok(outer, inner)


def _recession_ok(outer, inner):
    rec = VPolyhedron.cone(outer.rays, outer.lineality, outer.dims)
    return all(member(r, rec) for r in inner.rays) and all(
        member(l, rec) and member(-l, rec) for l in inner.lineality
    )


def equivalent(first, second):
    return contains(first, second) and contains(second, first)


__all__ = [
    "HPolyhedron",
    "VPolyhedron",
    "cone_generators",
    "contains",
    "equivalent",
    "h_to_v",
    "in_cone",
    "intersect",
    "intersect_h",
    "lp_feasible",
    "member",
    "minimize",
    "project",
    "sorted_dims",
    "v_to_h",
]
