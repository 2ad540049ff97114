"""Exact polytope engine.

V- and H-representations are kept simultaneously and converted by the
double description method run entirely over integers (rays and halfspace
normals are stored as primitive integer vectors, so all the sign tests in
the incremental step are exact integer arithmetic).

Conventions:
* a facet is a pair (normal, offset) meaning  normal . x <= offset;
* the vertex list and the facet list of a converted polytope are sorted
  lexicographically, so equal polytopes compare equal structurally;
* faces are the closed sets of the vertex-facet incidence relation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    Mat,
    Rat,
    Vec,
    det,
    inverse,
    primitive,
    rank,
    rat,
    vadd,
    vdot,
    vec,
    vscale,
    vsub,
    zero_vec,
)
from .lp import EQ, GE, LE, lp_solve, make_lp


class PolytopeError(Exception):
    pass


class EmptyPolytopeError(PolytopeError):
    pass


class UnboundedPolytopeError(PolytopeError):
    pass


class NotFullDimensionalError(PolytopeError):
    """The input set spans only a proper affine subspace.  `point` plus the
    span of `directions` is that affine hull, so callers can re-embed."""

    def __init__(self, point, directions):
        self.point = point
        self.directions = directions
        super().__init__(
            f"set is not full-dimensional: affine hull has dimension {len(directions)}")


class LinealityError(PolytopeError):
    """The halfspace intersection contains a line (cone not pointed)."""


# ---------------------------------------------------------------------------
# Double description on pointed cones


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def dd_extreme_rays(halfspaces, dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : h . x >= 0 for all h}.

    Incremental double description: start from `dim` linearly independent
    halfspaces (their simplicial cone has the inverse-matrix columns as
    rays) and insert the rest one at a time, combining adjacent rays across
    the new hyperplane.  Raises LinealityError when the halfspace normals
    do not span, i.e. the cone contains a line.
    """
    hs: list[tuple[int, ...]] = []
    seen = set()
    for h in halfspaces:
        p = primitive(h)
        if p not in seen:
            seen.add(p)
            hs.append(p)
    if any(len(h) != dim for h in hs):
        raise ValueError("halfspace dimension mismatch")

    base_idx: list[int] = []
    r = 0
    for i, h in enumerate(hs):
        if rank(Mat([hs[j] for j in base_idx] + [h])) > r:
            base_idx.append(i)
            r += 1
            if r == dim:
                break
    if r < dim:
        raise LinealityError("halfspace normals do not span the ambient space")

    B = Mat([hs[i] for i in base_idx])
    Binv = inverse(B)
    rays = [primitive(Binv.col(j)) for j in range(dim)]
    processed = [hs[i] for i in base_idx]
    tight = [_tight_mask(ray, processed) for ray in rays]

    for pos, h in enumerate(hs):
        if pos in base_idx:
            continue
        vals = [_idot(h, ray) for ray in rays]
        if all(v >= 0 for v in vals):
            processed.append(h)
            bit = 1 << (len(processed) - 1)
            tight = [t | (bit if v == 0 else 0) for t, v in zip(tight, vals)]
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        for i, j in itertools.product(plus, minus):
            common = tight[i] & tight[j]
            adjacent = True
            for k in range(len(rays)):
                if k != i and k != j and (tight[k] & common) == common:
                    adjacent = False
                    break
            if adjacent:
                combo = tuple(vals[i] * b - vals[j] * a
                              for a, b in zip(rays[i], rays[j]))
                new_rays.append(primitive(combo))
        processed.append(h)
        keep = plus + zero
        rays = [rays[i] for i in keep] + new_rays
        tight = [_tight_mask(ray, processed) for ray in rays]
    return rays


def _tight_mask(ray, halfspaces) -> int:
    mask = 0
    for k, h in enumerate(halfspaces):
        if _idot(h, ray) == 0:
            mask |= 1 << k
    return mask


# ---------------------------------------------------------------------------
# Polytopes


@dataclass(frozen=True)
class Face:
    """A proper face, as a closed set of the vertex-facet incidence."""

    vertex_indices: frozenset[int]
    dim: int
    tight_facets: frozenset[int]

    def sort_key(self):
        return (self.dim, tuple(sorted(self.vertex_indices)))


class Polytope:
    """Full-dimensional bounded polytope carrying both representations."""

    __slots__ = ("ambient_dim", "vertices", "facets", "incidence", "_faces")

    def __init__(self, ambient_dim, vertices, facets, incidence):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(self, "incidence", tuple(incidence))
        object.__setattr__(self, "_faces", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Polytope is immutable")

    def __eq__(self, other):
        return (isinstance(other, Polytope)
                and self.vertices == other.vertices
                and self.facets == other.facets)

    def __hash__(self):
        return hash((self.vertices, self.facets))

    def __repr__(self):
        return (f"Polytope(dim={self.ambient_dim}, "
                f"{len(self.vertices)} vertices, {len(self.facets)} facets)")

    # -- membership ---------------------------------------------------------

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.ambient_dim:
            raise ValueError("point dimension mismatch")
        return all(vdot(n, x) <= o for n, o in self.facets)

    def strictly_contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.ambient_dim:
            raise ValueError("point dimension mismatch")
        return all(vdot(n, x) < o for n, o in self.facets)

    # -- faces ---------------------------------------------------------------

    def proper_faces(self) -> list[Face]:
        """All proper nonempty faces (vertices up to facets), sorted by
        dimension then by vertex indices."""
        if self._faces is not None:
            return self._faces
        facet_vsets = [frozenset(i for i, inc in enumerate(self.incidence) if j in inc)
                       for j in range(len(self.facets))]
        seen: set[frozenset[int]] = set(facet_vsets)
        frontier = list(facet_vsets)
        while frontier:
            nxt = []
            for vset in frontier:
                for fv in facet_vsets:
                    inter = vset & fv
                    if inter and inter not in seen:
                        seen.add(inter)
                        nxt.append(inter)
            frontier = nxt
        faces = []
        for vset in seen:
            tightf = frozenset(j for j in range(len(self.facets))
                               if vset <= facet_vsets[j])
            faces.append(Face(vset, self._affine_dim(vset), tightf))
        faces.sort(key=Face.sort_key)
        object.__setattr__(self, "_faces", faces)
        return faces

    def _affine_dim(self, vset) -> int:
        idx = sorted(vset)
        if len(idx) == 1:
            return 0
        v0 = self.vertices[idx[0]]
        return rank(Mat([vsub(self.vertices[i], v0) for i in idx[1:]]))

    def face_vertices(self, face: Face) -> list[Vec]:
        return [self.vertices[i] for i in sorted(face.vertex_indices)]

    def barycenter(self) -> Vec:
        return _barycenter(self.vertices)

    def face_barycenter(self, face: Face) -> Vec:
        return _barycenter(self.face_vertices(face))

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * self.ambient_dim
        for f in self.proper_faces():
            counts[f.dim] += 1
        return tuple(counts)

    def translate(self, t) -> "Polytope":
        """Shift by t.  Vertex and facet order (hence incidence) is kept."""
        t = vec(t)
        verts = [vadd(v, t) for v in self.vertices]
        facets = [(n, o + vdot(n, t)) for n, o in self.facets]
        return Polytope(self.ambient_dim, verts, facets, self.incidence)


def _barycenter(points) -> Vec:
    n = len(points)
    acc = points[0]
    for p in points[1:]:
        acc = vadd(acc, p)
    return vscale(Fraction(1, n), acc)


def faces_of_dim(P: Polytope, d: int) -> list[Face]:
    if not 0 <= d <= P.ambient_dim - 1:
        raise ValueError(f"face dimension {d} out of range")
    return [f for f in P.proper_faces() if f.dim == d]


# ---------------------------------------------------------------------------
# V <-> H conversion


def dd_convert(vertices=None, facets=None) -> Polytope:
    """Build a Polytope with both representations populated and irredundant.

    Exactly one of `vertices` (list of points) or `facets` (list of
    (normal, offset) pairs) must be given.  Raises EmptyPolytopeError /
    UnboundedPolytopeError for bad H-input and NotFullDimensionalError
    (carrying the affine hull) for degenerate input.
    """
    if (vertices is None) == (facets is None):
        raise ValueError("give exactly one of vertices= or facets=")
    if vertices is not None:
        pts = _dedupe_points(vertices)
        return _from_points(pts)
    return _from_halfspaces(facets)


def _dedupe_points(points) -> list[Vec]:
    out, seen = [], set()
    for p in points:
        p = vec(p)
        if p not in seen:
            seen.add(p)
            out.append(p)
    if not out:
        raise EmptyPolytopeError("no points given")
    return out


def _from_points(pts: list[Vec]) -> Polytope:
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("point dimension mismatch")
    lifted = [primitive(tuple(p) + (Fraction(1),)) for p in pts]
    if rank(Mat(lifted)) != n + 1:
        p0 = pts[0]
        dirs = [vsub(p, p0) for p in pts[1:]]
        basis = []
        for d in dirs:
            if any(x != 0 for x in d) and (not basis or rank(Mat(basis + [d])) > len(basis)):
                basis.append(d)
        raise NotFullDimensionalError(p0, basis)
    facet_rays = dd_extreme_rays(lifted, n + 1)
    facets = []
    for ray in facet_rays:
        a, c = ray[:n], ray[n]
        facets.append((vec(tuple(-x for x in a)), rat(c)))
    facets.sort(key=lambda fo: (fo[0], fo[1]))

    verts = []
    for p in pts:
        tightset = frozenset(j for j, (nrm, off) in enumerate(facets)
                             if vdot(nrm, p) == off)
        if not all(vdot(nrm, p) <= off for nrm, off in facets):
            raise AssertionError("input point escapes its own hull")
        if tightset and rank(Mat([facets[j][0] for j in tightset])) == n:
            verts.append(p)
    verts.sort()
    incidence = [frozenset(j for j, (nrm, off) in enumerate(facets)
                           if vdot(nrm, v) == off) for v in verts]
    return Polytope(n, verts, facets, incidence)


def _from_halfspaces(facets) -> Polytope:
    rows = []
    seen = set()
    for nrm, off in facets:
        nrm = vec(nrm)
        h = primitive(tuple(-x for x in nrm) + (rat(off),))
        if h not in seen:
            seen.add(h)
            rows.append(h)
    if not rows:
        raise ValueError("no facets given")
    n = len(rows[0]) - 1
    rows.append(tuple([0] * n + [1]))  # t >= 0 (redundant for bounded input)
    try:
        rays = dd_extreme_rays(rows, n + 1)
    except LinealityError:
        raise UnboundedPolytopeError("feasible set is empty or contains a line")
    pos = [r for r in rays if r[n] > 0]
    zero = [r for r in rays if r[n] == 0]
    if not pos:
        raise EmptyPolytopeError("halfspace system has no solution")
    if zero:
        raise UnboundedPolytopeError("feasible set is unbounded")
    pts = [tuple(Fraction(x, r[n]) for x in r[:n]) for r in pos]
    return _from_points(_dedupe_points(pts))


# ---------------------------------------------------------------------------
# Exposing functionals


def exposing_functional(P: Polytope, vertex_indices) -> tuple[Vec, Rat]:
    """A pair (f, t) with f . x >= t on P and equality exactly on the face
    spanned by the given vertices: the (normalized) sum of the face's tight
    facet inequalities."""
    vertex_indices = frozenset(vertex_indices)
    tight = None
    for i in vertex_indices:
        tight = P.incidence[i] if tight is None else (tight & P.incidence[i])
    if not tight:
        raise ValueError("vertex set is not contained in a proper face")
    f = zero_vec(P.ambient_dim)
    t = Fraction(0)
    for j in tight:
        nrm, off = P.facets[j]
        f = vsub(f, nrm)
        t -= off
    scaled = primitive(tuple(f) + (t,))
    f, t = vec(scaled[:-1]), rat(scaled[-1])
    exposed = frozenset(i for i, v in enumerate(P.vertices) if vdot(f, v) == t)
    if exposed != vertex_indices:
        raise ValueError("vertex set is not a face of the polytope")
    return f, t


# ---------------------------------------------------------------------------
# delta(K): the segment-through-the-interior parameter


@dataclass(frozen=True)
class DeltaWitness:
    d: int
    vertex_index: int
    vertex: Vec
    face: Face
    witness_point: Vec


def delta(P: Polytope) -> DeltaWitness:
    """Smallest d admitting a vertex u and a d-face F whose joining segment
    meets the interior; the witness point is midpoint(u, barycenter(F)).

    The midpoint test is complete: if any point of F sees the interior
    along a segment from u, so does the barycenter, because a supporting
    hyperplane through a relative-interior point of a face contains the
    whole face.  Simplices yield d = n-1, nothing smaller exists for them.
    """
    for d in range(P.ambient_dim):
        for u_idx, u in enumerate(P.vertices):
            for face in faces_of_dim(P, d):
                mid = vscale(Fraction(1, 2), vadd(u, P.face_barycenter(face)))
                if P.strictly_contains(mid):
                    return DeltaWitness(d, u_idx, u, face, mid)
    raise AssertionError("no interior segment found; polytope is not full-dimensional")


# ---------------------------------------------------------------------------
# Antipodal pairs through a given interior point


def antipodal_through(P: Polytope, z) -> tuple[Vec, Vec, Vec, Rat]:
    """An antipodal pair (x1, x2) of P with z on the segment [x1, x2]:
    some nonzero linear ell attains its minimum over P at x1 and its
    maximum at x2, normalized so ell(x2) - ell(x1) = 1.  Returns
    (x1, x2, ell, mu) with mu in (0,1), mu*x1 + (1-mu)*x2 = z and
    mu = ell(x2) - ell(z).

    Finite search over ordered pairs of proper faces: membership of z in
    conv(F1 u F2) and existence of a functional constant-minimal on F1 and
    constant-maximal on F2 are both exact LPs.  The first pair (in
    deterministic face order) satisfying both wins.
    """
    z = vec(z)
    if not P.strictly_contains(z):
        raise ValueError("point is not in the interior of the polytope")
    n = P.ambient_dim
    faces = P.proper_faces()
    nv = len(P.vertices)
    for f1, f2 in itertools.product(faces, repeat=2):
        if f1 is f2:
            continue
        split = _convex_split(P, f1, f2, z)
        if split is None:
            continue
        ell_c = _common_extremizer(P, f1, f2)
        if ell_c is None:
            continue
        x1, x2, mu = split
        ell, c1, c2 = ell_c
        assert vdot(ell, x1) == c1 and vdot(ell, x2) == c2
        assert c2 - vdot(ell, z) == mu and Fraction(0) < mu < Fraction(1)
        assert vadd(vscale(mu, x1), vscale(1 - mu, x2)) == z
        assert all(c1 <= vdot(ell, v) <= c2 for v in P.vertices)
        return x1, x2, ell, mu
    raise AssertionError("no antipodal pair through the point; input not a polytope?")


def _convex_split(P, f1: Face, f2: Face, z):
    """Weights putting z in conv(vertices of f1 and of f2), reassembled as
    x1 in f1, x2 in f2 with mu*x1 + (1-mu)*x2 = z."""
    a_idx = sorted(f1.vertex_indices)
    b_idx = sorted(f2.vertex_indices)
    pts = [P.vertices[i] for i in a_idx] + [P.vertices[i] for i in b_idx]
    k = len(pts)
    rows = []
    for coord in range(P.ambient_dim):
        rows.append(([p[coord] for p in pts], EQ, z[coord]))
    rows.append(([1] * k, EQ, 1))
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rows.append((e, GE, 0))
    out = lp_solve(make_lp(k, rows), _certify=False)
    if out.status != "feasible":
        return None
    w = out.point
    mu = sum(w[: len(a_idx)], Fraction(0))
    if mu == 0 or mu == 1:
        return None  # z would lie on a proper face; cannot happen for interior z
    x1 = zero_vec(P.ambient_dim)
    for wi, p in zip(w[: len(a_idx)], pts[: len(a_idx)]):
        x1 = vadd(x1, vscale(wi / mu, p))
    x2 = zero_vec(P.ambient_dim)
    for wi, p in zip(w[len(a_idx):], pts[len(a_idx):]):
        x2 = vadd(x2, vscale(wi / (1 - mu), p))
    return x1, x2, mu


def _common_extremizer(P, f1: Face, f2: Face):
    """A functional ell constant (= its minimum over P) on f1 and constant
    (= its maximum) on f2, normalized to max - min = 1."""
    n = P.ambient_dim
    nvars = n + 2  # ell, c1, c2
    rows = []
    for i in sorted(f1.vertex_indices):
        rows.append((list(P.vertices[i]) + [-1, 0], EQ, 0))
    for i in sorted(f2.vertex_indices):
        rows.append((list(P.vertices[i]) + [0, -1], EQ, 0))
    for v in P.vertices:
        rows.append((list(v) + [-1, 0], GE, 0))
        rows.append((list(v) + [0, -1], LE, 0))
    rows.append(([0] * n + [-1, 1], EQ, 1))
    out = lp_solve(make_lp(nvars, rows), _certify=False)
    if out.status != "feasible":
        return None
    sol = out.point
    return vec(sol[:n]), sol[n], sol[n + 1]


# ---------------------------------------------------------------------------
# Projective transformations


@dataclass(frozen=True)
class ProjectiveMap:
    """x -> (B x + z) / (<w, x> + k), with nonzero block determinant."""

    B: Mat
    z: Vec
    w: Vec
    k: Rat

    def __post_init__(self):
        n = self.B.nrows
        if self.B.ncols != n or len(self.z) != n or len(self.w) != n:
            raise ValueError("projective map blocks have mismatched dimensions")
        if self.block_det() == 0:
            raise ValueError("projective map is singular")

    @staticmethod
    def identity(n: int) -> "ProjectiveMap":
        return ProjectiveMap(Mat.identity(n), zero_vec(n), zero_vec(n), Fraction(1))

    def lift(self) -> Mat:
        rows = [list(r) + [zi] for r, zi in zip(self.B.rows, self.z)]
        rows.append(list(self.w) + [self.k])
        return Mat(rows)

    def block_det(self) -> Rat:
        return det(self.lift())

    def denominator_at(self, x) -> Rat:
        return vdot(self.w, vec(x)) + self.k

    def apply_point(self, x) -> Vec:
        x = vec(x)
        den = self.denominator_at(x)
        if den <= 0:
            raise ValueError("projective denominator is not positive at the point")
        num = vadd(self.B @ x, self.z)
        return vscale(1 / den, num)

    def transform_support(self, f: Vec, t: Rat) -> tuple[Vec, Rat]:
        """Push the supporting inequality f . x >= t through the map: the
        returned (f', t') satisfies f' . P(x) - t' = (f . x - t)/den(x), so
        on any region where the denominator is positive, sign and tightness
        are preserved pointwise."""
        n = len(self.w)
        lifted = tuple(rat(x) for x in f) + (-rat(t),)
        img = inverse(self.lift()).transpose() @ lifted
        return vec(img[:n]), -img[n]


def apply_projective(P: ProjectiveMap, K: Polytope) -> Polytope:
    """Image polytope conv(P(vertices)).  Requires a strictly positive
    denominator on every vertex; the face lattice is preserved."""
    images = [P.apply_point(v) for v in K.vertices]
    return dd_convert(vertices=images)


def send_to_infinity(K: Polytope, H1: tuple[Vec, Rat], H2: tuple[Vec, Rat]
                     ) -> tuple[ProjectiveMap, Polytope]:
    """Projective map making two supporting hyperplanes of K parallel.

    H_i = (f_i, t_i) must support K in the orientation f_i . x >= t_i, and
    the faces K n H1, K n H2 must be disjoint (otherwise the map's
    denominator would vanish inside K).  The map sends H1 n H2 to infinity:
    x -> (x - x0) / (f1(x) + f2(x) - t1 - t2)  with x0 the vertex barycenter.
    """
    (f1, t1), (f2, t2) = (vec(H1[0]), rat(H1[1])), (vec(H2[0]), rat(H2[1]))
    for f, t, label in ((f1, t1, "H1"), (f2, t2, "H2")):
        if min(vdot(f, v) for v in K.vertices) != t:
            raise ValueError(f"{label} is not a supporting hyperplane written as f(x) >= t")
    tight1 = {i for i, v in enumerate(K.vertices) if vdot(f1, v) == t1}
    tight2 = {i for i, v in enumerate(K.vertices) if vdot(f2, v) == t2}
    if tight1 & tight2:
        raise ValueError("H1 and H2 meet inside K; cannot send their intersection to infinity")
    x0 = K.barycenter()
    n = K.ambient_dim
    pmap = ProjectiveMap(Mat.identity(n), vscale(Fraction(-1), x0),
                         vadd(f1, f2), -(t1 + t2))
    assert pmap.block_det() == vdot(f1, x0) + vdot(f2, x0) - t1 - t2 > 0
    image = apply_projective(pmap, K)
    return pmap, image
