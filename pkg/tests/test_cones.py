import itertools
from fractions import Fraction as F

import pytest

from conecert.cones import (
    Cone,
    ConeError,
    DimensionGuardError,
    ImproperConeError,
    base,
    cone_to_doc,
    dual,
    is_classical,
    load_cone,
    max_tensor_contains,
    min_tensor_contains,
    min_tensor_generators,
    nuclear_check,
    tensor_of,
)
from conecert.exact import Mat, primitive, vdot, vec


def orthant(n):
    return Cone([tuple(1 if j == i else 0 for j in range(n)) for i in range(n)],
                name=f"orthant{n}")


def square_cone():
    return Cone([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)], name="square")


def ray_set(rays):
    return {primitive(r) for r in rays}


# -- properness -----------------------------------------------------------------


def test_orthant_proper():
    assert orthant(3).is_proper() == {"generating": True, "salient": True}


def test_line_not_salient():
    C = Cone([(1, 0), (-1, 0)])
    assert C.is_proper()["salient"] is False
    with pytest.raises(ImproperConeError):
        C.require_proper()


def test_single_ray_not_generating():
    C = Cone([(1, 0)])
    assert C.is_proper()["generating"] is False


def test_rejects_zero_generator():
    with pytest.raises(ConeError):
        Cone([(0, 0)])
    with pytest.raises(ConeError):
        Cone([])


# -- duality ---------------------------------------------------------------------


def test_orthant_self_dual():
    C = orthant(3)
    assert ray_set(dual(C).extreme_rays) == ray_set(C.extreme_rays)


def test_square_cone_dual_is_cross_polytope_cone():
    D = dual(square_cone())
    assert ray_set(D.extreme_rays) == {(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)}


@pytest.mark.parametrize("C", [orthant(2), orthant(4), square_cone(),
                               Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)])])
def test_bipolar(C):
    assert ray_set(dual(dual(C)).extreme_rays) == ray_set(C.extreme_rays)


def test_dual_rays_nonnegative_on_generators():
    C = square_cone()
    for f in C.dual_rays:
        for g in C.generators:
            assert vdot(f, g) >= 0


# -- extreme rays ------------------------------------------------------------------


def test_redundant_generator_dropped():
    C = Cone([(1, 0), (0, 1), (1, 1)])
    assert ray_set(C.extreme_rays) == {(1, 0), (0, 1)}


def test_kite_cone_has_4_rays():
    kite = Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    assert len(kite.extreme_rays) == 4


def test_square_cone_counts():
    C = square_cone()
    assert C.ambient_dim == 3 and len(C.extreme_rays) == 4


def test_duplicate_generators_survive():
    C = Cone([(1, 0), (2, 0), (0, 1)])
    assert ray_set(C.extreme_rays) == {(1, 0), (0, 1)}


# -- classicality -------------------------------------------------------------------


def test_orthant_classical():
    assert is_classical(orthant(4))


def test_square_not_classical():
    assert not is_classical(square_cone())


def test_pentagon_not_classical():
    C = Cone([(2, 0, 1), (1, 2, 1), (-2, 1, 1), (-2, -1, 1), (1, -2, 1)], name="pentagon")
    assert len(C.extreme_rays) == 5
    assert not is_classical(C)


def test_classicality_matches_dual():
    for C in (orthant(3), square_cone()):
        assert is_classical(C) == is_classical(dual(C))


# -- base ----------------------------------------------------------------------------


def test_base_of_orthant_is_simplex():
    sec = base(orthant(3))
    assert sec.body.ambient_dim == 2
    assert len(sec.body.vertices) == 3
    assert sec.body.f_vector() == (3, 3)


def test_base_of_square_cone():
    sec = base(square_cone())
    assert sec.level == (F(0), F(0), F(4)) or primitive(sec.level) == (0, 0, 1)
    assert len(sec.body.vertices) == 4
    assert sec.body.f_vector() == (4, 4)


def test_base_section_roundtrip():
    for C in (orthant(3), square_cone(),
              Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)], name="quad")):
        sec = base(C)
        lifted = {primitive(sec.lift_point(v)) for v in sec.body.vertices}
        assert lifted == ray_set(C.extreme_rays)
        # and the section map is a linear isomorphism
        assert sec.to_base @ sec.from_base == Mat.identity(C.ambient_dim)


# -- tensor products -----------------------------------------------------------------


def test_min_generators_count():
    gens = min_tensor_generators(orthant(2), orthant(2))
    assert len(gens) == 4
    gens = min_tensor_generators(square_cone(), square_cone())
    assert len(gens) == 16


def test_min_generators_pass_max_membership():
    C1, C2 = square_cone(), square_cone()
    for g in min_tensor_generators(C1, C2):
        ok, violations = max_tensor_contains(C1, C2, g)
        assert ok and not violations


def test_max_membership_rejects_negative():
    C = orthant(2)
    z = tensor_of((-1, 0), (1, 0))
    ok, violations = max_tensor_contains(C, C, z)
    assert not ok
    (i, j, val), = violations
    assert C.dual_rays[i] == (1, 0) and C.dual_rays[j] == (1, 0)
    assert val == -1


def test_min_membership_feasible_for_sums():
    C = square_cone()
    gens = min_tensor_generators(C, C)
    z = gens[0].matrix + gens[5].matrix
    out = min_tensor_contains(C, C, type(gens[0])(z))
    assert out.status == "feasible"


def test_min_membership_orthants_are_nonneg_matrices():
    C = orthant(2)
    z = tensor_of((1, 0), (1, 0)).matrix - tensor_of((0, 1), (0, 1)).matrix.scale(1)
    out = min_tensor_contains(C, C, type(tensor_of((1, 0), (1, 0)))(z))
    assert out.status == "infeasible"
    assert out.farkas is not None


def test_tensor_shape_checked():
    with pytest.raises(ConeError):
        max_tensor_contains(orthant(2), orthant(3), tensor_of((1, 0), (1, 0)))


# -- nuclear check --------------------------------------------------------------------


def test_orthant_pair_nuclear():
    res = nuclear_check(orthant(3), orthant(3))
    assert res.equal and res.witness is None
    assert res.max_ray_count == 9


def test_classical_partner_nuclear():
    res = nuclear_check(orthant(2), square_cone())
    assert res.equal


def test_square_square_entangleable():
    res = nuclear_check(square_cone(), square_cone(), guard=12)
    assert not res.equal
    assert res.witness is not None
    ok, _ = max_tensor_contains(square_cone(), square_cone(), res.witness)
    assert ok
    out = min_tensor_contains(square_cone(), square_cone(), res.witness)
    assert out.status == "infeasible"


def test_guard():
    with pytest.raises(DimensionGuardError):
        nuclear_check(orthant(4), orthant(4), guard=12)


# -- serialization ---------------------------------------------------------------------


def test_cone_json_roundtrip():
    C = Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)], name="quad")
    doc = cone_to_doc(C)
    C2 = load_cone(doc)
    assert C2.name == "quad"
    assert C2.generators == C.generators


def test_load_cone_rejects_malformed():
    with pytest.raises(ConeError):
        load_cone({"name": "bad"})
    with pytest.raises(ConeError):
        load_cone({"name": "bad", "ambient_dim": 2, "generators": [["1", "x"]]})
