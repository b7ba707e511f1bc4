import random
from fractions import Fraction

import pytest

from polyrank import HPolyhedron, Polynomial, VPolyhedron, h_to_v, intersect, project, v_to_h
from polyrank.polyhedron import contains, equivalent, intersect_h, member, minimize, sorted_dims

P = Polynomial.parse
X, Y = (("x", 1),), (("y", 1),)
XY = sorted_dims([X, Y])


def pt(x, y=0):
    return Polynomial({X: x, Y: y})


def test_triangle_to_constraints():
    tri = VPolyhedron(vertices=[pt(0), pt(1), pt(0, 1)], dims=XY)
    h = v_to_h(tri)
    got = {(str(a), b) for a, b in h.inequalities}
    assert got == {("x", 0), ("y", 0), ("-x - y", -1)}
    assert not h.equalities


def test_round_trip_quadrant():
    quad = VPolyhedron.cone([P("x"), P("y")], dims=XY)
    back = h_to_v(v_to_h(quad))
    assert equivalent(quad, back)
    assert set(back.rays) == {P("x"), P("y")}


def test_degenerate_point():
    h = HPolyhedron(sorted_dims([X]), [(P("x"), 0), (P("-x"), 0)])
    v = h_to_v(h)
    assert v.vertices == (Polynomial(),) and not v.rays and not v.lineality


def test_empty_is_first_class():
    h = HPolyhedron(sorted_dims([X]), [(P("x"), 1), (P("-x"), 0)])
    v = h_to_v(h)
    assert v.is_empty
    assert not member(Polynomial(), v)
    assert member(Polynomial(), VPolyhedron.cone())


def test_intersect_examples():
    a = VPolyhedron.cone([P("x"), P("y")], dims=XY)
    b = VPolyhedron.cone([P("x")], dims=XY)
    assert equivalent(intersect(a, b), b)
    assert equivalent(intersect(a, a), a)


def test_lifted_template_intersection():
    # lifted PRF template: rays from the linear preimage, vertex with constant -1
    t = {n: ((n, 1),) for n in ("tnx", "tx", "tn", "tz", "t1")}
    dims = sorted_dims([()] + list(t.values()))
    v = lambda s: P(s)  # noqa: E731
    pre = VPolyhedron(
        rays=[v("tn"), v("-tn"), v("t1"), v("-t1"), v("tnx + tz - 1"), v("1 - tnx - tz"), v("tnx"), v("tx")],
        vertices=[Polynomial()],
        dims=dims,
    )
    template = VPolyhedron(rays=[v(n) for n in t], vertices=[Polynomial.constant(-1)], dims=dims)
    meet = intersect(pre, template)
    assert member(v("tnx + tz - 1"), meet)
    for r in ("tnx", "tx", "tn", "t1"):
        assert member(v("tnx + tz - 1") + v(r), meet)


def test_project_examples():
    lam = (("lam", 1),)
    dims = sorted_dims([X, lam])
    lifted = h_to_v(HPolyhedron(dims, [(P("lam"), 0)], [(P("x - lam"), 0)]))
    assert equivalent(project(lifted, {X}), VPolyhedron.cone([P("x")], dims=(X,)))
    square = VPolyhedron(vertices=[pt(0), pt(1), pt(0, 1), pt(1, 1)], dims=XY)
    seg = project(square, {X})
    assert set(seg.vertices) == {Polynomial(), P("x")}


def test_member_examples():
    quad = VPolyhedron.cone([P("x"), P("y")], dims=XY)
    assert member(pt(1, 1), quad)
    assert not member(pt(-1, 0), quad)


def test_minimize_removes_redundancy():
    p = VPolyhedron.cone([P("x"), P("y"), P("x + y"), P("-x")], dims=XY)
    m = minimize(p)
    assert m.lineality == (P("x"),)
    assert m.rays == (P("y"),)


def test_canonical_scaling():
    p = h_to_v(v_to_h(VPolyhedron.cone([P("3*x + 6*y")], dims=XY)))
    assert p.rays == (P("x + 2*y"),)


def _random_instance(r, dim):
    dims = sorted_dims([((f"v{i}", 1),) for i in range(dim)])

    def vec():
        return Polynomial({d: r.randint(-3, 3) for d in dims})

    vertices = [vec() for _ in range(r.randint(1, 4))]
    rays = [vec() for _ in range(r.randint(0, 3))]
    lineality = [vec() for _ in range(r.randint(0, 1))]
    return VPolyhedron(rays, vertices, lineality, dims)


@pytest.mark.parametrize("seed", range(6))
def test_round_trip_membership_agreement(seed):
    r = random.Random(seed)
    poly = _random_instance(r, 2 + seed % 2)
    h = v_to_h(poly)
    back = h_to_v(h)
    for _ in range(1000):
        point = Polynomial({d: Fraction(r.randint(-16, 16), r.randint(1, 4)) for d in poly.dims})
        expected = member(point, poly)
        assert h.satisfied_by(point) == expected
        assert member(point, back) == expected
    assert equivalent(poly, back)


@pytest.mark.parametrize("seed", range(6))
def test_intersection_commutative_idempotent(seed):
    r = random.Random(100 + seed)
    a, b = _random_instance(r, 2), _random_instance(r, 2)
    ab, ba = intersect(a, b), intersect(b, a)
    assert equivalent(ab, ba)
    assert equivalent(intersect(a, a), a)
    assert contains(a, ab) and contains(b, ab)
    for _ in range(200):
        point = Polynomial({d: Fraction(r.randint(-12, 12), 2) for d in a.dims})
        assert member(point, ab) == (member(point, a) and member(point, b))


def test_project_commutes_with_halfspace():
    r = random.Random(7)
    poly = _random_instance(r, 3)
    keep = set(poly.dims[:2])
    d0 = poly.dims[0]
    half = HPolyhedron(poly.dims, [(Polynomial({d0: 1}), 0)])
    lhs = project(h_to_v(intersect_h(v_to_h(poly), half)), keep)
    rhs_half = HPolyhedron(tuple(d for d in poly.dims if d in keep), [(Polynomial({d0: 1}), 0)])
    rhs = h_to_v(intersect_h(v_to_h(project(poly, keep)), rhs_half))
    assert equivalent(lhs, rhs)

