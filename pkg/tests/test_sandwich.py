from fractions import Fraction as F

import pytest

from conecert.cones import Cone
from conecert.exact import Mat, inverse, rank, vdot, vec, vadd, vscale
from conecert.sandwich import (
    ClassicalConeError,
    Kite,
    Sandwich,
    blunt_square_contains,
    construct_sandwich,
    kite_cone,
    sandwich_from_doc,
    sandwich_to_doc,
    verify_sandwich,
)


def square_cone():
    return Cone([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)], name="square")


def pyramid_cone():
    return Cone([(1, 1, 0, 1), (1, -1, 0, 1), (-1, 1, 0, 1), (-1, -1, 0, 1), (0, 0, 1, 1)],
                name="pyramid")


def orthant(n):
    return Cone([tuple(1 if j == i else 0 for j in range(n)) for i in range(n)])


# -- blunt square ---------------------------------------------------------------


def test_blunt_membership():
    assert blunt_square_contains((1, 0, 1))          # edge midpoint allowed
    assert not blunt_square_contains((1, 1, 1))      # corner excluded
    assert blunt_square_contains((F(1, 2), F(-1, 2), 1))
    assert blunt_square_contains((0, 0, 0))          # apex belongs to the cone
    assert not blunt_square_contains((0, 0, -1))
    assert not blunt_square_contains((2, 0, 1))
    assert blunt_square_contains((2, 0, 2))          # scaled edge midpoint
    assert not blunt_square_contains((2, 2, 2))      # scaled corner
    with pytest.raises(ValueError):
        blunt_square_contains((1, 0))


# -- kites ----------------------------------------------------------------------


def test_kite_zero_is_cross_polytope_base():
    c = kite_cone(Kite((0, 0, 0, 0)))
    assert set(c.extreme_rays) == {vec((1, 0, 1)), vec((0, 1, 1)),
                                   vec((-1, 0, 1)), vec((0, -1, 1))}


def test_kite_half_rays_blunt():
    c = kite_cone(Kite((F(1, 2), 0, 0, 0)))
    assert len(c.extreme_rays) == 4
    assert all(blunt_square_contains(r) for r in c.generators)


def test_kite_rejects_boundary_parameters():
    with pytest.raises(ValueError):
        Kite((1, 0, 0, 0))
    with pytest.raises(ValueError):
        Kite((0, 0, 0, F(-5, 4)))


# -- construction ----------------------------------------------------------------


def test_square_sandwich_is_the_degenerate_kite():
    C = square_cone()
    s, tr = construct_sandwich(C)
    assert s.kite.alpha == (0, 0, 0, 0)
    assert verify_sandwich(C, s).ok
    assert tr.d == 0
    # the four distinguished points are distinct vertices of the normalized body
    corners = {tr.v1, tr.v2, tr.y1, tr.y2}
    assert len(corners) == 4
    assert corners <= set(tr.body.vertices)


def test_classical_cone_refused():
    with pytest.raises(ClassicalConeError):
        construct_sandwich(orthant(3))
    with pytest.raises(ClassicalConeError):
        construct_sandwich(orthant(5))


def test_pyramid_sandwich():
    C = pyramid_cone()
    s, tr = construct_sandwich(C)
    assert tr.d == 1
    assert verify_sandwich(C, s).ok


def test_projective_path_pentagon():
    C = Cone([(2, 0, 1), (1, 2, 1), (-2, 1, 1), (-2, -1, 1), (1, -2, 1)], name="pentagon")
    s, tr = construct_sandwich(C)
    assert tr.pmap is not None
    assert verify_sandwich(C, s).ok


def test_trace_invariants():
    for C in (square_cone(), pyramid_cone(),
              Cone([(1, F(1, 2), 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], name="kite_cone")):
        s, tr = construct_sandwich(C)
        f, body = tr.f, tr.body
        assert vdot(f, tr.v1) == 1
        for p in tr.face_vertices:
            assert vdot(f, p) == 0
        ones = [v for v in body.vertices if vdot(f, v) == 1]
        zeros = [v for v in body.vertices if vdot(f, v) == 0]
        assert ones == [tr.v1]
        assert set(zeros) == set(tr.face_vertices)
        assert all(0 <= vdot(f, v) <= 1 for v in body.vertices)
        assert 0 < tr.mu < 1 and 0 < tr.lam < 1
        assert all(-1 < a < 1 for a in s.kite.alpha)
        # the two convex combinations agree exactly
        lhs = vadd(vscale(tr.mu, tr.y1), vscale(1 - tr.mu, tr.y2))
        rhs = vadd(vscale(tr.lam, tr.v1), vscale(1 - tr.lam, tr.v2))
        assert lhs == rhs
        # the antipodal pair brackets the origin of the shadow
        mix = vadd(vscale(tr.mu, tr.x1), vscale(1 - tr.mu, tr.x2))
        assert all(x == 0 for x in mix)


def _reconstruct_projection(tr):
    v_basis = [tr.v1]
    for p in tr.face_vertices:
        if any(x != 0 for x in p) and rank(Mat(v_basis + [p])) > len(v_basis):
            v_basis.append(p)
    m = Mat.from_cols(v_basis + list(tr.w_basis))
    return Mat(inverse(m).rows[len(v_basis):])


def test_squash_formula_reproduces_kite_rays():
    # on the normalized body: (x;1) -> (1-2f(x), (1-2mu)+2 ell(proj x); 1)
    # must send v2, y2, v1, y1 to the four kite rays in order
    for C in (square_cone(), pyramid_cone()):
        s, tr = construct_sandwich(C)
        proj = _reconstruct_projection(tr)
        t1, t2, t3, t4 = kite_cone(s.kite).generators

        def squash_point(p):
            x = vdot(tr.f, p)
            ell_val = vdot(tr.ell, proj @ p)
            return (1 - 2 * x, (1 - 2 * tr.mu) + 2 * ell_val, F(1))

        assert squash_point(tr.v2) == t1
        assert squash_point(tr.y2) == t2
        assert squash_point(tr.v1) == t3
        assert squash_point(tr.y1) == t4
        # and the projections of the preimages are the antipodal pair
        assert proj @ tr.y1 == tr.x1
        assert proj @ tr.y2 == tr.x2


def test_body_meets_span_in_pyramid_hull():
    # the section of the body by span(v1, face) is conv(face + {v1})
    from conecert.exact import solve_linear
    from conecert.lp import EQ, GE, lp_solve, make_lp

    for C in (square_cone(), pyramid_cone()):
        s, tr = construct_sandwich(C)
        v_basis = [tr.v1] + [p for p in tr.face_vertices if any(x != 0 for x in p)]
        span_mat = Mat.from_cols(v_basis)
        hull_pts = [tr.v1] + list(tr.face_vertices)
        for v in tr.body.vertices:
            inside_span = solve_linear(span_mat, v) is not None
            if not inside_span:
                continue
            k = len(hull_pts)
            rows = [([q[c] for q in hull_pts], EQ, v[c]) for c in range(len(v))]
            rows.append(([1] * k, EQ, 1))
            for i in range(k):
                e = [0] * k
                e[i] = 1
                rows.append((e, GE, 0))
            assert lp_solve(make_lp(k, rows), _certify=False).status == "feasible"
        for p in hull_pts:
            assert tr.body.contains(p)


# -- verification failure modes ----------------------------------------------------


def test_identity_squash_fails_blunt_at_corners():
    C = square_cone()
    s = Sandwich(Kite((0, 0, 0, 0)), Mat.identity(3), Mat.identity(3))
    rep = verify_sandwich(C, s)
    assert rep.identity_ok
    assert not rep.embed_failures
    assert len(rep.blunt_failures) == 4  # every corner ray breaks bluntness
    assert not rep.ok


def test_perturbed_embed_fails_identity():
    C = square_cone()
    s, _ = construct_sandwich(C)
    bad = Mat([[x + (1 if (i, j) == (0, 0) else 0) for j, x in enumerate(row)]
               for i, row in enumerate(s.embed.rows)])
    rep = verify_sandwich(C, Sandwich(s.kite, bad, s.squash))
    assert not rep.identity_ok


def test_determinism_and_serialization():
    C = square_cone()
    s1, _ = construct_sandwich(C)
    s2, _ = construct_sandwich(C)
    assert s1 == s2
    doc = sandwich_to_doc(s1)
    s3 = sandwich_from_doc(doc)
    assert s3.kite.alpha == s1.kite.alpha
    assert s3.embed == s1.embed and s3.squash == s1.squash
