"""Kite-square sandwichings of non-classical proper polyhedral cones.

A sandwiching of a cone C consists of a planar kite Q (a quadrilateral
conv{(1,a1),(a2,1),(-1,a3),(a4,-1)} with parameters in (-1,1)^4) and two
linear maps embed: R^3 -> V, squash: V -> R^3 with

    squash . embed = Id,   embed(cone over Q) inside C,
    squash(C) inside the cone over the blunt square [-1,1]^2 minus corners.

Such a factorization exists exactly for non-classical cones; the
construction below produces one, together with a trace of every
intermediate quantity, and refuses classical cones.

Construction outline (all steps exact): pass to a base body K of C; find
the smallest d with a vertex and a d-face of K joined through the
interior; expose both by hyperplanes, made parallel by a projective map
when needed; normalize so the face sits at 0 and the exposing functional
f runs from 0 to 1 across K; split off the span V of the vertex and the
face, project onto a complement W, and pick an antipodal pair of the
shadow through 0; the preimages and the split parameters then determine
the kite and both maps in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import BaseSection, Cone, ConeError, base, is_classical
from .exact import (
    Mat,
    Rat,
    Vec,
    complete_basis,
    inverse,
    rank,
    rat,
    rat_str,
    vadd,
    vdot,
    vec,
    vneg,
    vscale,
    vsub,
    zero_vec,
)
from .lp import EQ, GE, LE, lp_solve, make_lp
from .polytope import (
    Face,
    Polytope,
    ProjectiveMap,
    antipodal_through,
    delta,
    dd_convert,
    exposing_functional,
    send_to_infinity,
)


class ClassicalConeError(ConeError):
    """Raised when a sandwiching is requested for a classical cone (none exists)."""


class SandwichConstructionError(ConeError):
    """An internal consistency check failed; this indicates a bug, since the
    construction provably succeeds on every non-classical proper cone."""


@dataclass(frozen=True)
class Kite:
    """Parameters of the quadrilateral conv{(1,a1),(a2,1),(-1,a3),(a4,-1)}."""

    alpha: tuple[Rat, Rat, Rat, Rat]

    def __post_init__(self):
        alpha = tuple(rat(a) for a in self.alpha)
        if len(alpha) != 4:
            raise ValueError("a kite has exactly four parameters")
        if any(not (-1 < a < 1) for a in alpha):
            raise ValueError("kite parameters must lie strictly inside (-1, 1)")
        object.__setattr__(self, "alpha", alpha)

    def rays(self) -> tuple[Vec, Vec, Vec, Vec]:
        a1, a2, a3, a4 = self.alpha
        one = Fraction(1)
        return (
            (one, a1, one),
            (a2, one, one),
            (-one, a3, one),
            (a4, -one, one),
        )


def blunt_square_contains(p) -> bool:
    """Membership in the cone over the blunt square (the square [-1,1]^2
    with its four corner points removed).  Nonzero members have level
    t > 0 with |a| <= t, |b| <= t and not both equalities at once."""
    p = vec(p)
    if len(p) != 3:
        raise ValueError("expected a vector of length 3")
    a, b, t = p
    if a == 0 and b == 0 and t == 0:
        return True
    if t <= 0:
        return False
    return abs(a) <= t and abs(b) <= t and not (abs(a) == t and abs(b) == t)


def kite_cone(k: Kite) -> Cone:
    """The cone over the kite, generated by its four lifted vertices."""
    c = Cone(k.rays(), name="kite")
    assert all(blunt_square_contains(r) for r in c.generators)
    return c


@dataclass(frozen=True)
class Sandwich:
    kite: Kite
    embed: Mat   # R^3 -> cone space, carries the kite cone into C
    squash: Mat  # cone space -> R^3, carries C into the blunt-square cone


@dataclass(frozen=True)
class SandwichTrace:
    """Every intermediate of the construction, in the coordinates of the
    normalized base body (face barycenter at the origin)."""

    d: int
    v1: Vec
    face_vertices: tuple[Vec, ...]
    pmap: ProjectiveMap | None
    f: Vec
    f_offset: Rat
    ell: Vec
    mu: Rat
    lam: Rat
    x1: Vec
    x2: Vec
    y1: Vec
    y2: Vec
    v2: Vec
    w_basis: tuple[Vec, ...]
    body: Polytope


@dataclass(frozen=True)
class SandwichReport:
    identity_ok: bool
    embed_failures: tuple[int, ...]   # kite ray indices not mapped into C
    blunt_failures: tuple[int, ...]   # extreme ray indices not mapped bluntly

    @property
    def ok(self) -> bool:
        return self.identity_ok and not self.embed_failures and not self.blunt_failures


def verify_sandwich(C: Cone, s: Sandwich) -> SandwichReport:
    """The three exact sandwich conditions: squash.embed = Id; the four
    kite rays embed into C; every extreme ray of C squashes into the blunt
    square cone (sufficient for all of C by convexity)."""
    identity_ok = (s.squash @ s.embed) == Mat.identity(3)
    embed_failures = []
    for i, t in enumerate(s.kite.rays()):
        if not C.contains(s.embed @ t):
            embed_failures.append(i)
    blunt_failures = []
    for i, r in enumerate(C.extreme_rays):
        if not blunt_square_contains(s.squash @ r):
            blunt_failures.append(i)
    return SandwichReport(identity_ok, tuple(embed_failures), tuple(blunt_failures))


# ---------------------------------------------------------------------------
# Construction


def construct_sandwich(C: Cone) -> tuple[Sandwich, SandwichTrace]:
    """Build a verified kite-square sandwiching of a non-classical proper
    cone.  Classical cones are refused (none exists for them); any failed
    internal consistency check raises SandwichConstructionError."""
    C.require_proper()
    if is_classical(C):
        raise ClassicalConeError(
            "cone is classical (extreme rays form a basis); "
            "classical cones admit no kite-square sandwiching")

    sec = base(C)
    K = sec.body
    n = K.ambient_dim

    w = delta(K)
    v1_orig = w.vertex
    f1, t1 = exposing_functional(K, frozenset([w.vertex_index]))
    f2, t2 = exposing_functional(K, w.face.vertex_indices)

    if rank(Mat([f1, f2])) == 1:
        pmap = None
        K2 = K
        v1_img = v1_orig
        face_img = K.face_vertices(w.face)
        g1, r1 = f1, t1
    else:
        pmap, K2 = send_to_infinity(K, (f1, t1), (f2, t2))
        v1_img = pmap.apply_point(v1_orig)
        face_img = [pmap.apply_point(v) for v in K.face_vertices(w.face)]
        g1, r1 = pmap.transform_support(f1, t1)

    face_vals = {vdot(g1, v) for v in face_img}
    if len(face_vals) != 1:
        raise SandwichConstructionError("vertex hyperplane is not constant on the face image")
    s2 = face_vals.pop()
    if not r1 < s2:
        raise SandwichConstructionError("exposing hyperplanes are not separated on the body")

    p0 = _barycenter(face_img)
    K3 = K2.translate(vneg(p0))
    v1 = vsub(v1_img, p0)
    face_pts = tuple(vsub(v, p0) for v in face_img)

    # f = 1 exactly at v1, f = 0 exactly on the face, 0 <= f <= 1 on K3
    f_vec = vscale(1 / (r1 - s2), g1)
    _check_normalized_functional(K3, f_vec, v1, face_pts)

    v_basis = [v1] + _greedy_independent(face_pts)
    if len(v_basis) != w.d + 1 or rank(Mat(v_basis)) != w.d + 1:
        raise SandwichConstructionError("vertex/face span has unexpected dimension")
    w_basis = complete_basis(v_basis, n)
    m_basis = Mat.from_cols(v_basis + w_basis)
    proj = Mat(inverse(m_basis).rows[w.d + 1:])  # onto W along span(v1, face)

    shadow = dd_convert(vertices=[proj @ v for v in K3.vertices])
    x1, x2, ell, mu = antipodal_through(shadow, zero_vec(proj.nrows))

    y1 = _preimage_in_body(K3, proj, x1)
    y2 = _preimage_in_body(K3, proj, x2)
    fy1, fy2 = vdot(f_vec, y1), vdot(f_vec, y2)
    if not (0 < fy1 < 1 and 0 < fy2 < 1):
        raise SandwichConstructionError("preimages touch the extreme level sets")

    lam = mu * fy1 + (1 - mu) * fy2
    if not 0 < lam < 1:
        raise SandwichConstructionError("mixing parameter escaped (0, 1)")
    mix = vadd(vscale(mu, y1), vscale(1 - mu, y2))
    v2 = vscale(1 / (1 - lam), vsub(mix, vscale(lam, v1)))
    if not _in_hull(v2, face_pts):
        raise SandwichConstructionError("projected mix point left the face")
    assert mix == vadd(vscale(lam, v1), vscale(1 - lam, v2))

    kite = Kite((1 - 2 * mu, 1 - 2 * fy2, 1 - 2 * mu, 1 - 2 * fy1))

    # squash on the cone over K3: (x; t) -> (t - 2 f(x), (1-2mu) t + 2 ell(proj x); t)
    ell_proj = proj.transpose() @ ell
    squash_norm = Mat([
        list(vneg(vscale(Fraction(2), f_vec))) + [Fraction(1)],
        list(vscale(Fraction(2), ell_proj)) + [1 - 2 * mu],
        [Fraction(0)] * n + [Fraction(1)],
    ])

    # embed determined by three kite rays; the fourth must come out right
    t_rays = kite.rays()
    t_mat = Mat.from_cols(t_rays[:3])
    targets = Mat.from_cols([tuple(v2) + (Fraction(1),),
                             tuple(y2) + (Fraction(1),),
                             tuple(v1) + (Fraction(1),)])
    embed_norm = targets @ inverse(t_mat)
    fourth = embed_norm @ t_rays[3]
    if fourth != tuple(y1) + (Fraction(1),):
        raise SandwichConstructionError("fourth kite ray is inconsistent")

    # pull everything back to the cone's own coordinates
    chain = _affine_lift(vneg(p0), n)
    if pmap is not None:
        chain = chain @ pmap.lift()
    chain = chain @ sec.to_base
    squash = squash_norm @ chain
    embed = inverse(chain) @ embed_norm

    sandwich = Sandwich(kite, embed, squash)
    report = verify_sandwich(C, sandwich)
    if not report.ok:
        raise SandwichConstructionError(f"sandwich verification failed: {report}")

    trace = SandwichTrace(
        d=w.d, v1=v1, face_vertices=face_pts, pmap=pmap,
        f=f_vec, f_offset=Fraction(0), ell=ell, mu=mu, lam=lam,
        x1=x1, x2=x2, y1=y1, y2=y2, v2=v2,
        w_basis=tuple(w_basis), body=K3,
    )
    return sandwich, trace


def _barycenter(points) -> Vec:
    acc = points[0]
    for p in points[1:]:
        acc = vadd(acc, p)
    return vscale(Fraction(1, len(points)), acc)


def _check_normalized_functional(K3, f_vec, v1, face_pts) -> None:
    face_set = set(face_pts)
    for v in K3.vertices:
        val = vdot(f_vec, v)
        if not 0 <= val <= 1:
            raise SandwichConstructionError("normalized functional escapes [0, 1]")
        if (val == 1) != (v == v1) or (val == 0) != (v in face_set):
            raise SandwichConstructionError("functional level sets do not match the faces")


def _greedy_independent(points) -> list[Vec]:
    out: list[Vec] = []
    for p in points:
        if any(x != 0 for x in p) and (not out or rank(Mat(out + [p])) > len(out)):
            out.append(p)
    return out


def _preimage_in_body(K3: Polytope, proj: Mat, x: Vec) -> Vec:
    rows = [(list(nrm), LE, off) for nrm, off in K3.facets]
    for i in range(proj.nrows):
        rows.append((list(proj.rows[i]), EQ, x[i]))
    out = lp_solve(make_lp(K3.ambient_dim, rows), _certify=False)
    if out.status != "feasible":
        raise SandwichConstructionError("projection point has no preimage in the body")
    return out.point


def _in_hull(p: Vec, points) -> bool:
    k = len(points)
    rows = []
    for coord in range(len(p)):
        rows.append(([q[coord] for q in points], EQ, p[coord]))
    rows.append(([1] * k, EQ, 1))
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rows.append((e, GE, 0))
    return lp_solve(make_lp(k, rows), _certify=False).status == "feasible"


def _affine_lift(shift: Vec, n: int) -> Mat:
    rows = [[Fraction(1 if i == j else 0) for j in range(n)] + [shift[i]]
            for i in range(n)]
    rows.append([Fraction(0)] * n + [Fraction(1)])
    return Mat(rows)


# ---------------------------------------------------------------------------
# Serialization


def sandwich_to_doc(s: Sandwich) -> dict:
    return {
        "alpha": [rat_str(a) for a in s.kite.alpha],
        "embed": _mat_doc(s.embed),
        "squash": _mat_doc(s.squash),
    }


def sandwich_from_doc(doc: dict) -> Sandwich:
    kite = Kite(tuple(rat(a) for a in doc["alpha"]))
    return Sandwich(kite, _mat_undoc(doc["embed"]), _mat_undoc(doc["squash"]))


def trace_to_doc(t: SandwichTrace) -> dict:
    doc = {
        "d": t.d,
        "v1": _vec_doc(t.v1),
        "face_vertices": [_vec_doc(v) for v in t.face_vertices],
        "f": _vec_doc(t.f),
        "f_offset": rat_str(t.f_offset),
        "ell": _vec_doc(t.ell),
        "mu": rat_str(t.mu),
        "lambda": rat_str(t.lam),
        "x1": _vec_doc(t.x1), "x2": _vec_doc(t.x2),
        "y1": _vec_doc(t.y1), "y2": _vec_doc(t.y2),
        "v2": _vec_doc(t.v2),
        "w_basis": [_vec_doc(v) for v in t.w_basis],
        "projective": None,
    }
    if t.pmap is not None:
        doc["projective"] = {
            "B": _mat_doc(t.pmap.B),
            "z": _vec_doc(t.pmap.z),
            "w": _vec_doc(t.pmap.w),
            "k": rat_str(t.pmap.k),
        }
    return doc


def _vec_doc(v: Vec) -> list[str]:
    return [rat_str(x) for x in v]


def _mat_doc(m: Mat) -> list[list[str]]:
    return [[rat_str(x) for x in row] for row in m.rows]


def _mat_undoc(rows) -> Mat:
    return Mat([[rat(x) for x in row] for row in rows])
