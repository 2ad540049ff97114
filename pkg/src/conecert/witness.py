"""Witness tensors separating the maximal from the minimal tensor product.

Given kite-square sandwichings of two cones, an explicit tensor built from
weighted kite rays lies in the maximal tensor product, while a CHSH-style
functional pushed through the squash maps is strictly negative on every
nonzero separable element.  Evaluating the functional on the tensor gives
exactly -R(alpha) R(beta) for an explicit quartic R, so after an optional
coordinate swap on the first factor the pair (tensor, functional)
certifies that the cone pair is entangleable.

All four certificate checks are exact; `verify_certificate` re-runs them
from the certificate data alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from .cones import Cone, TensorElement, cone_to_doc, load_cone, max_tensor_contains
from .exact import Mat, Rat, Vec, rat, rat_str, vdot, vec
from .sandwich import (
    Kite,
    Sandwich,
    blunt_square_contains,
    kite_cone,
    sandwich_from_doc,
    sandwich_to_doc,
    verify_sandwich,
)

# coefficient matrix of f(m) = m11 + m12 + m21 - m22 - 2 m33
F_COEFFS = Mat([[1, 1, 0], [1, -1, 0], [0, 0, -2]])

SWAP_XY = Mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]])


@dataclass(frozen=True)
class KiteWeights:
    """Positive multipliers c_i turning the kite rays t_i into vectors with
    c1 t1 + c3 t3 = c2 t2 + c4 t4 (both sides hit the diagonal crossing)."""

    c1: Rat
    c2: Rat
    c3: Rat
    c4: Rat

    def as_tuple(self):
        return (self.c1, self.c2, self.c3, self.c4)


def kite_weights(gamma) -> KiteWeights:
    g1, g2, g3, g4 = (rat(g) for g in gamma)
    if any(not (-1 < g < 1) for g in (g1, g2, g3, g4)):
        raise ValueError("kite parameters must lie strictly inside (-1, 1)")
    c1 = 2 + g2 + g4 + g3 * (g2 - g4)
    c2 = 2 + g1 + g3 + g4 * (g1 - g3)
    c3 = 2 - g4 - g2 + g1 * (g4 - g2)
    c4 = 2 - g3 - g1 + g2 * (g3 - g1)
    w = KiteWeights(c1, c2, c3, c4)
    assert all(c > 0 for c in w.as_tuple())
    t1, t2, t3, t4 = Kite((g1, g2, g3, g4)).rays()
    lhs = vec([c1 * a + c3 * b for a, b in zip(t1, t3)])
    rhs = vec([c2 * a + c4 * b for a, b in zip(t2, t4)])
    assert lhs == rhs
    return w


def weighted_rays(gamma) -> tuple[Vec, Vec, Vec, Vec]:
    """The kite rays scaled by their weights (T_i = c_i t_i)."""
    w = kite_weights(gamma)
    rays = Kite(tuple(rat(g) for g in gamma)).rays()
    return tuple(vec([c * x for x in t]) for c, t in zip(w.as_tuple(), rays))


def omega(alpha, beta) -> Mat:
    """The 3x3 entangled element T1 U2^T - T2 U2^T + T2 U1^T + T3 U3^T
    of (kite cone) max-tensor (kite cone)."""
    T = weighted_rays(alpha)
    U = weighted_rays(beta)
    assert vec([a + b for a, b in zip(T[0], T[2])]) == vec([a + b for a, b in zip(T[1], T[3])])
    assert vec([a + b for a, b in zip(U[0], U[2])]) == vec([a + b for a, b in zip(U[1], U[3])])
    out = Mat.zero(3, 3)
    for Ti, Uj, sign in ((T[0], U[1], 1), (T[1], U[1], -1), (T[1], U[0], 1), (T[2], U[2], 1)):
        out = out + Mat([[sign * a * b for b in Uj] for a in Ti])
    return out


def f_functional(m: Mat) -> Rat:
    """m11 + m12 + m21 - m22 - 2 m33."""
    r = m.rows
    return r[0][0] + r[0][1] + r[1][0] - r[1][1] - 2 * r[2][2]


def r_value(gamma) -> Rat:
    """R(g) = (g1 g2 - 1)(g3 - g4) - (g3 g4 - 1)(g1 - g2); it changes sign
    under the swap (g1,g2,g3,g4) -> (g2,g1,g4,g3)."""
    g1, g2, g3, g4 = (rat(g) for g in gamma)
    return (g1 * g2 - 1) * (g3 - g4) - (g3 * g4 - 1) * (g1 - g2)


def chsh_check(p, q) -> tuple[Rat, bool]:
    """The correlation xx' + xy' + yx' - yy' of two blunt-square points,
    and whether it is strictly below 2 (it always is on the blunt square;
    equality would need two opposite corners)."""
    p, q = vec(p), vec(q)
    if len(p) != 2 or len(q) != 2:
        raise ValueError("expected planar points")
    for point in (p, q):
        if not blunt_square_contains(tuple(point) + (Fraction(1),)):
            raise ValueError("point is outside the blunt square")
    x, y = p
    xp, yp = q
    value = x * xp + x * yp + y * xp - y * yp
    return value, value < 2


def sigma_fix(alpha, s: Sandwich) -> tuple[tuple[Rat, ...], Sandwich]:
    """Conjugate a sandwiching by the coordinate swap (x,y;t) -> (y,x;t).
    The swap preserves the blunt-square cone and carries the kite with
    parameters (a1,a2,a3,a4) to the kite with (a2,a1,a4,a3), so the result
    is again a valid sandwiching of the same cone, with R negated."""
    a1, a2, a3, a4 = (rat(a) for a in alpha)
    swapped = (a2, a1, a4, a3)
    fixed = Sandwich(Kite(swapped), s.embed @ SWAP_XY, SWAP_XY @ s.squash)
    return swapped, fixed


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str


@dataclass(frozen=True)
class WitnessCertificate:
    cone1: Cone
    cone2: Cone
    sandwich1: Sandwich  # already sigma-fixed when needed
    sandwich2: Sandwich
    alpha_used: tuple[Rat, ...]
    beta: tuple[Rat, ...]
    sigma_applied: bool
    omega: Mat
    W: TensorElement
    G: Mat
    checks: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def g_of(self, z: TensorElement) -> Rat:
        return sum((vdot(gr, zr) for gr, zr in zip(self.G.rows, z.matrix.rows)),
                   Fraction(0))


def build_witness(C1: Cone, s1: Sandwich, C2: Cone, s2: Sandwich) -> WitnessCertificate:
    """Assemble and verify the full entangleability certificate for two
    sandwiched cones: W = (embed1 x embed2)(omega) lies in the maximal
    tensor product while the functional G = squash1^T F squash2 separates
    it from the minimal one."""
    if not verify_sandwich(C1, s1).ok or not verify_sandwich(C2, s2).ok:
        raise ValueError("witness construction requires verified sandwichings")
    alpha, beta = s1.kite.alpha, s2.kite.alpha
    sigma_applied = False
    value = f_functional(omega(alpha, beta))
    assert value == -r_value(alpha) * r_value(beta)
    if value < 0:
        alpha, s1 = sigma_fix(alpha, s1)
        sigma_applied = True
        assert verify_sandwich(C1, s1).ok
    om = omega(alpha, beta)
    W = TensorElement(s1.embed @ om @ s2.embed.transpose())
    G = s1.squash.transpose() @ F_COEFFS @ s2.squash
    cert = WitnessCertificate(
        cone1=C1, cone2=C2, sandwich1=s1, sandwich2=s2,
        alpha_used=alpha, beta=beta, sigma_applied=sigma_applied,
        omega=om, W=W, G=G, checks={},
    )
    return replace(cert, checks=dict(certificate_checks(cert)))


def certificate_checks(cert: WitnessCertificate) -> list[tuple[str, CheckResult]]:
    """The four exact checks proving W sits in the maximal but not the
    minimal tensor product:

    (a) W is nonnegative against every pair of dual extreme rays;
    (b) the functional G is strictly negative on every product of extreme
        rays, hence on every nonzero separable element;
    (c) g(W) equals -R(alpha) R(beta) and is nonnegative;
    (d) W is nonzero: omega_33 > 0 and both embeds are left-invertible.
    """
    C1, C2 = cert.cone1, cert.cone2
    out = []

    ok_a, violations = max_tensor_contains(C1, C2, cert.W)
    vals = [cert.W.pair(phi, psi) for phi in C1.dual_rays for psi in C2.dual_rays]
    out.append(("a", CheckResult(ok_a, f"min dual-pair value {rat_str(min(vals))}"
                                 + ("" if ok_a else f"; {len(violations)} violations"))))

    sep_vals = [vdot(r, cert.G @ s) for r in C1.extreme_rays for s in C2.extreme_rays]
    ok_b = max(sep_vals) < 0
    out.append(("b", CheckResult(ok_b, f"max separable value {rat_str(max(sep_vals))}")))

    gw = cert.g_of(cert.W)
    expected = -r_value(cert.alpha_used) * r_value(cert.beta)
    ok_c = gw == expected and gw >= 0
    out.append(("c", CheckResult(ok_c, f"g(W) = {rat_str(gw)}, expected {rat_str(expected)}")))

    om33 = cert.omega.rows[2][2]
    left_inv = ((cert.sandwich1.squash @ cert.sandwich1.embed) == Mat.identity(3)
                and (cert.sandwich2.squash @ cert.sandwich2.embed) == Mat.identity(3))
    ok_d = om33 > 0 and left_inv
    out.append(("d", CheckResult(ok_d, f"omega_33 = {rat_str(om33)}, embeds injective: {left_inv}")))
    return out


def verify_certificate(cert: WitnessCertificate) -> dict[str, CheckResult]:
    """Re-run the four checks from the certificate data alone."""
    return dict(certificate_checks(cert))


# ---------------------------------------------------------------------------
# Serialization


def certificate_to_doc(cert: WitnessCertificate) -> dict:
    return {
        "cones": [cone_to_doc(cert.cone1), cone_to_doc(cert.cone2)],
        "alpha": [rat_str(a) for a in cert.alpha_used],
        "beta": [rat_str(b) for b in cert.beta],
        "sigma_applied": cert.sigma_applied,
        "sandwiches": [sandwich_to_doc(cert.sandwich1), sandwich_to_doc(cert.sandwich2)],
        "omega": [[rat_str(x) for x in row] for row in cert.omega.rows],
        "W": [[rat_str(x) for x in row] for row in cert.W.matrix.rows],
        "G": [[rat_str(x) for x in row] for row in cert.G.rows],
        "checks": {k: {"passed": c.passed, "detail": c.detail}
                   for k, c in cert.checks.items()},
    }


def certificate_from_doc(doc: dict) -> WitnessCertificate:
    C1 = load_cone(doc["cones"][0])
    C2 = load_cone(doc["cones"][1])
    s1 = sandwich_from_doc(doc["sandwiches"][0])
    s2 = sandwich_from_doc(doc["sandwiches"][1])
    cert = WitnessCertificate(
        cone1=C1, cone2=C2, sandwich1=s1, sandwich2=s2,
        alpha_used=tuple(rat(a) for a in doc["alpha"]),
        beta=tuple(rat(b) for b in doc["beta"]),
        sigma_applied=bool(doc["sigma_applied"]),
        omega=Mat([[rat(x) for x in row] for row in doc["omega"]]),
        W=TensorElement(Mat([[rat(x) for x in row] for row in doc["W"]])),
        G=Mat([[rat(x) for x in row] for row in doc["G"]]),
        checks={k: CheckResult(v["passed"], v["detail"])
                for k, v in doc["checks"].items()},
    )
    return cert


def save_certificate(cert: WitnessCertificate, path) -> None:
    with open(path, "w") as fh:
        json.dump(certificate_to_doc(cert), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_certificate(path) -> WitnessCertificate:
    with open(path) as fh:
        return certificate_from_doc(json.load(fh))
