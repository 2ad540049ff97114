"""Proper polyhedral cones and their minimal/maximal tensor products.

A cone is given by finitely many generators.  Extreme rays are stored as
primitive integer vectors sorted lexicographically, so ray-set equality is
plain tuple comparison.  The tensor convention is fixed package-wide:
an element z of V1 (x) V2 is an m1 x m2 matrix with
(phi (x) psi)(z) = phi^T z psi, the row index belonging to factor 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exact import Mat, Rat, Vec, kernel_basis, inverse, primitive, rank, rat, rat_str, vdot, vec, vscale
from .lp import EQ, GE, LpOutcome, lp_solve, make_lp
from .polytope import Polytope, dd_convert, dd_extreme_rays


class ConeError(Exception):
    pass


class ImproperConeError(ConeError):
    pass


class DimensionGuardError(ConeError):
    pass


class Cone:
    """Polyhedral cone generated by finitely many vectors.

    Immutable; the extreme rays, the dual's extreme rays and the facet
    inequalities are computed once on first use and cached.  Operations
    that need properness raise ImproperConeError otherwise.
    """

    __slots__ = ("name", "ambient_dim", "generators", "_cache")

    def __init__(self, generators, name: str = "", ambient_dim: int | None = None):
        gens = tuple(vec(g) for g in generators)
        if not gens:
            raise ConeError("a cone needs at least one generator")
        dim = ambient_dim if ambient_dim is not None else len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ConeError("generator dimension mismatch")
        if any(all(x == 0 for x in g) for g in gens):
            raise ConeError("zero vector among the generators")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "ambient_dim", dim)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cone is immutable")

    def __repr__(self):
        label = self.name or "cone"
        return f"Cone({label}, dim={self.ambient_dim}, {len(self.generators)} generators)"

    # -- properness -----------------------------------------------------------

    def is_proper(self) -> dict:
        """{"generating": bool, "salient": bool}; proper means both."""
        if "proper" not in self._cache:
            generating = rank(Mat(self.generators)) == self.ambient_dim
            rows = [(list(g), GE, 1) for g in self.generators]
            out = lp_solve(make_lp(self.ambient_dim, rows), _certify=False)
            salient = out.status == "feasible"
            self._cache["proper"] = {"generating": generating, "salient": salient}
        return self._cache["proper"]

    def require_proper(self) -> None:
        status = self.is_proper()
        if not (status["generating"] and status["salient"]):
            bad = [k for k, ok in status.items() if not ok]
            raise ImproperConeError(f"cone {self.name or ''} is not {' or '.join(bad)}")

    # -- cached descriptions ----------------------------------------------------

    @property
    def extreme_rays(self) -> tuple[Vec, ...]:
        """Irredundant generators, canonically scaled and sorted: g survives
        iff no nonnegative combination of the other generators equals it."""
        if "rays" not in self._cache:
            self.require_proper()
            canon = []
            seen = set()
            for g in self.generators:
                p = primitive(g)
                if p not in seen:
                    seen.add(p)
                    canon.append(p)
            kept = []
            for i, g in enumerate(canon):
                others = [h for j, h in enumerate(canon) if j != i]
                if not others or not _in_cone_of(g, others):
                    kept.append(vec(g))
            kept.sort()
            self._cache["rays"] = tuple(kept)
        return self._cache["rays"]

    @property
    def dual_rays(self) -> tuple[Vec, ...]:
        """Extreme rays of the dual cone {f : f(x) >= 0 on the cone}; they
        are also the facet inequalities of the cone itself."""
        if "dual_rays" not in self._cache:
            self.require_proper()
            rays = dd_extreme_rays([primitive(g) for g in self.generators],
                                   self.ambient_dim)
            rays = sorted(vec(r) for r in rays)
            self._cache["dual_rays"] = tuple(rays)
        return self._cache["dual_rays"]

    @property
    def facet_ineqs(self) -> tuple[Vec, ...]:
        return self.dual_rays

    def contains(self, x) -> bool:
        x = vec(x)
        if len(x) != self.ambient_dim:
            raise ConeError("point dimension mismatch")
        return all(vdot(f, x) >= 0 for f in self.facet_ineqs)


def _in_cone_of(g, generators) -> bool:
    k = len(generators)
    rows = []
    for coord in range(len(g)):
        rows.append(([h[coord] for h in generators], EQ, g[coord]))
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rows.append((e, GE, 0))
    return lp_solve(make_lp(k, rows), _certify=False).status == "feasible"


# -----------------------------------------------------------------------------
# Serialization


def load_cone(doc: dict) -> Cone:
    """Build a cone from its JSON document {"name", "ambient_dim", "generators"}."""
    try:
        gens = [[rat(x) for x in row] for row in doc["generators"]]
        return Cone(gens, name=doc.get("name", ""), ambient_dim=doc["ambient_dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise ConeError(f"malformed cone document: {e}") from e


def cone_to_doc(C: Cone) -> dict:
    return {
        "name": C.name,
        "ambient_dim": C.ambient_dim,
        "generators": [[rat_str(x) for x in g] for g in C.generators],
    }


def load_cone_file(path) -> Cone:
    with open(path) as fh:
        return load_cone(json.load(fh))


def is_proper(C: Cone) -> dict:
    return C.is_proper()


def dual(C: Cone) -> Cone:
    """The dual cone, generated by its own extreme rays (computed by double
    description from the inequalities f(g) >= 0 over the generators)."""
    C.require_proper()
    return Cone(C.dual_rays, name=f"dual({C.name})" if C.name else "dual",
                ambient_dim=C.ambient_dim)


def extreme_rays(C: Cone) -> tuple[Vec, ...]:
    return C.extreme_rays


def is_classical(C: Cone) -> bool:
    """A proper cone is classical iff its extreme rays form a linear basis,
    i.e. there are exactly ambient_dim of them."""
    C.require_proper()
    return len(C.extreme_rays) == C.ambient_dim


# -----------------------------------------------------------------------------
# Base body of a proper cone


@dataclass(frozen=True)
class BaseSection:
    """K is the cross-section {x in C : level . x = 1}, re-embedded as a
    full-dimensional polytope.  to_base maps cone coordinates to
    (body coordinates ; level) and from_base is its inverse, so
    to_base(C) is exactly the cone over K."""

    body: Polytope
    level: Vec
    to_base: Mat
    from_base: Mat

    def lift_point(self, p) -> Vec:
        """Body point -> cone coordinates at level 1."""
        return self.from_base @ (tuple(vec(p)) + (Fraction(1),))


def base(C: Cone) -> BaseSection:
    C.require_proper()
    e_sum = [Fraction(0)] * C.ambient_dim
    for f in C.dual_rays:
        e_sum = [a + b for a, b in zip(e_sum, f)]
    e = vec(primitive(e_sum))
    hyper = kernel_basis(Mat([e]))
    normalized = []
    for r in C.extreme_rays:
        lvl = vdot(e, r)
        assert lvl > 0, "level functional must be positive on extreme rays"
        normalized.append(vscale(1 / lvl, r))
    p0 = vscale(Fraction(1, len(normalized)), _vsum(normalized))
    from_base = Mat.from_cols(list(hyper) + [p0])
    to_base = inverse(from_base)
    coords = []
    for r in normalized:
        c = to_base @ r
        assert c[-1] == 1
        coords.append(c[:-1])
    body = dd_convert(vertices=coords)
    return BaseSection(body=body, level=e, to_base=to_base, from_base=from_base)


def _vsum(vectors):
    acc = vectors[0]
    for v in vectors[1:]:
        acc = tuple(a + b for a, b in zip(acc, v))
    return acc


# -----------------------------------------------------------------------------
# Tensor products


@dataclass(frozen=True)
class TensorElement:
    """z in V1 (x) V2 as an m1 x m2 matrix; (phi (x) psi)(z) = phi^T z psi."""

    matrix: Mat

    @property
    def shape(self):
        return self.matrix.shape

    def pair(self, phi, psi) -> Rat:
        return vdot(vec(phi), self.matrix @ vec(psi))


def tensor_of(x, y) -> TensorElement:
    x, y = vec(x), vec(y)
    return TensorElement(Mat([[a * b for b in y] for a in x]))


def min_tensor_generators(C1: Cone, C2: Cone) -> list[TensorElement]:
    """The products r s^T over extreme rays; they generate the minimal
    tensor product cone."""
    C1.require_proper()
    C2.require_proper()
    return [tensor_of(r, s) for r in C1.extreme_rays for s in C2.extreme_rays]


def max_tensor_contains(C1: Cone, C2: Cone, z: TensorElement):
    """Membership of z in the maximal tensor product: nonnegativity against
    every pair of dual extreme rays (sufficient for polyhedral cones).
    Returns (bool, violations) with violations = [(i, j, value), ...]."""
    if z.shape != (C1.ambient_dim, C2.ambient_dim):
        raise ConeError(f"tensor shape {z.shape} does not match cone dimensions")
    violations = []
    for i, phi in enumerate(C1.dual_rays):
        for j, psi in enumerate(C2.dual_rays):
            val = z.pair(phi, psi)
            if val < 0:
                violations.append((i, j, val))
    return (not violations, violations)


def min_tensor_contains(C1: Cone, C2: Cone, z: TensorElement) -> LpOutcome:
    """LP membership of z in the minimal tensor product: feasibility of
    z = sum lambda_ij r_i s_j^T with lambda >= 0.  Infeasible outcomes
    carry a Farkas vector whose equality-row multipliers form a functional
    separating z from the cone."""
    if z.shape != (C1.ambient_dim, C2.ambient_dim):
        raise ConeError(f"tensor shape {z.shape} does not match cone dimensions")
    R1, R2 = C1.extreme_rays, C2.extreme_rays
    gens = [tensor_of(r, s).matrix for r in R1 for s in R2]
    k = len(gens)
    rows = []
    for a in range(C1.ambient_dim):
        for b in range(C2.ambient_dim):
            rows.append(([g.rows[a][b] for g in gens], EQ, z.matrix.rows[a][b]))
    for i in range(k):
        e = [0] * k
        e[i] = 1
        rows.append((e, GE, 0))
    return lp_solve(make_lp(k, rows))


@dataclass(frozen=True)
class NuclearCheckResult:
    equal: bool
    witness: TensorElement | None
    max_ray_count: int


def nuclear_check(C1: Cone, C2: Cone, guard: int = 12) -> NuclearCheckResult:
    """Decide C1 (min) C2 = C1 (max) C2 by enumerating the extreme rays of
    the maximal tensor product (double description on the product
    inequalities) and testing each for minimal-tensor membership.  The
    tensor space dimension is guarded because double description there can
    blow up."""
    C1.require_proper()
    C2.require_proper()
    d = C1.ambient_dim * C2.ambient_dim
    if d > guard:
        raise DimensionGuardError(
            f"tensor space dimension {d} exceeds the guard {guard}")
    halfspaces = []
    for phi in C1.dual_rays:
        for psi in C2.dual_rays:
            halfspaces.append(primitive([a * b for a in phi for b in psi]))
    rays = sorted(dd_extreme_rays(halfspaces, d))
    m2 = C2.ambient_dim
    for ray in rays:
        z = TensorElement(Mat([ray[i * m2:(i + 1) * m2] for i in range(C1.ambient_dim)]))
        out = min_tensor_contains(C1, C2, z)
        if out.status != "feasible":
            return NuclearCheckResult(False, z, len(rays))
    return NuclearCheckResult(True, None, len(rays))
