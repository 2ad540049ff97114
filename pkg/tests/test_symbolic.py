import random
from fractions import Fraction as F

import pytest

from conecert.symbolic import (
    ONE,
    MultiPoly,
    MultilinearityError,
    check_magical_identity,
    check_weight_positivity,
    identity_report,
    symbolic_f,
    symbolic_omega,
    symbolic_r,
    symbolic_weights,
)
from conecert.witness import f_functional, omega, r_value


def var(name):
    return MultiPoly.var(name)


def test_disjoint_product_expands():
    p = (var("a1") + ONE) * (var("b1") + ONE)
    assert p == var("a1") * var("b1") + var("a1") + var("b1") + ONE


def test_squaring_rejected():
    with pytest.raises(MultilinearityError):
        (var("a1") + ONE) * (var("a1") - ONE)


def test_eval():
    p = var("a1") * var("b2")
    assert p.eval({"a1": F(1, 2), "b2": F(1, 3)}) == F(1, 6)


def test_zero_detection():
    p = var("a1") * var("b3") + MultiPoly.const(F(2, 7))
    assert (p - p).is_zero()
    assert not p.is_zero()


def test_canonical_printing_is_deterministic():
    p = var("a2") + var("a1") * var("b1") - MultiPoly.const(3)
    assert str(p) == str(var("a2") + var("a1") * var("b1") - MultiPoly.const(3))
    assert str(MultiPoly()) == "0"


# -- symbolic omega ------------------------------------------------------------


def test_omega_entry_values():
    om = symbolic_omega()
    assert om[2][2].eval([0] * 8) == 8
    assert om[0][0].coeffs.get(0) == 4  # constant term of the (1,1) entry


def test_omega_matches_numeric_at_random_points():
    rng = random.Random(7)
    om = symbolic_omega()
    for _ in range(100):
        point = [F(rng.randint(-9, 9), 10) for _ in range(8)]
        numeric = omega(tuple(point[:4]), tuple(point[4:]))
        for i in range(3):
            for j in range(3):
                assert om[i][j].eval(point) == numeric.rows[i][j]


def test_f_and_r_match_numeric():
    rng = random.Random(11)
    f_om = symbolic_f(symbolic_omega())
    ra, rb = symbolic_r("a"), symbolic_r("b")
    for _ in range(50):
        point = [F(rng.randint(-9, 9), 10) for _ in range(8)]
        assert f_om.eval(point) == f_functional(omega(tuple(point[:4]), tuple(point[4:])))
        assert ra.eval(point) == r_value(tuple(point[:4]))
        assert rb.eval(point) == r_value(tuple(point[4:]))


# -- the central identity ---------------------------------------------------------


def test_magical_identity():
    assert check_magical_identity()


def test_magical_identity_mutation_detected():
    # rebuild omega with the third term's sign flipped; the identity must break
    weights_a = symbolic_weights("a")
    weights_b = symbolic_weights("b")
    rays = lambda blk: ((ONE, var(f"{blk}1"), ONE), (var(f"{blk}2"), ONE, ONE),
                        (-ONE, var(f"{blk}3"), ONE), (var(f"{blk}4"), -ONE, ONE))
    T = [[c * x for x in ray] for c, ray in zip(weights_a, rays("a"))]
    U = [[c * x for x in ray] for c, ray in zip(weights_b, rays("b"))]
    om = [[MultiPoly() for _ in range(3)] for _ in range(3)]
    for Ti, Uj, sign in ((T[0], U[1], 1), (T[1], U[1], -1), (T[1], U[0], -1), (T[2], U[2], 1)):
        for i in range(3):
            for j in range(3):
                prod = Ti[i] * Uj[j]
                om[i][j] = om[i][j] + (prod if sign > 0 else -prod)
    residual = symbolic_f(om) + symbolic_r("a") * symbolic_r("b")
    assert not residual.is_zero()


def test_f_omega_monomials_split_into_r_supports():
    f_om = symbolic_f(symbolic_omega())
    supp_a = symbolic_r("a").support()
    supp_b = symbolic_r("b").support()
    for mask in f_om.support():
        a_part, b_part = mask & 0x0F, mask & 0xF0
        assert a_part in supp_a
        assert b_part in supp_b


# -- weight positivity --------------------------------------------------------------


def test_weight_positivity():
    assert check_weight_positivity()


def test_weight_factorization_c1_expands():
    g2, g3, g4 = var("a2"), var("a3"), var("a4")
    fact = (ONE + g2) * (ONE + g3) + (ONE + g4) * (ONE - g3)
    assert fact == symbolic_weights("a")[0]


def test_weights_eval_positive_on_samples():
    rng = random.Random(3)
    ws = symbolic_weights("a")
    for _ in range(100):
        point = [F(rng.randint(-9, 9), 10) for _ in range(4)] + [F(0)] * 4
        for w in ws:
            assert w.eval(point) > 0


def test_identity_report_shape():
    rep = identity_report()
    assert rep["magical_identity"] and rep["weight_positivity"]
    assert rep["f_omega_monomials"] == rep["r_product_monomials"] == 64
