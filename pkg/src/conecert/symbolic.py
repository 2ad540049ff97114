"""Exact multilinear polynomials over the eight kite parameters.

Both kites contribute four parameters each (a1..a4 for the first factor,
b1..b4 for the second).  Every polynomial that appears in the witness
construction is multilinear in these eight variables, so monomials are
stored as 8-bit masks and multilinearity is enforced structurally: any
product that would square a variable raises immediately, which catches
transcription mistakes at the spot where they happen.

The two theorem-level facts proved here once and for all:

* the evaluation of the separating functional on the witness tensor is
  identically - R(a) R(b) as a polynomial (not just at sample points);
* all four kite-ray weights factor into sums of products of (1 +/- g)
  terms, hence are strictly positive on (-1, 1)^4.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Rat, rat, rat_str

VARS = ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4")
_VAR_BIT = {name: 1 << i for i, name in enumerate(VARS)}


class MultilinearityError(ValueError):
    """A product tried to square one of the eight variables."""


class MultiPoly:
    """Multilinear polynomial: monomial bitmask -> nonzero rational coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        clean = {}
        for mask, c in (coeffs or {}).items():
            if not 0 <= mask < 256:
                raise ValueError("monomial outside the eight declared variables")
            if c != 0:
                clean[mask] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def const(c) -> "MultiPoly":
        return MultiPoly({0: rat(c)})

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly({_VAR_BIT[name]: Fraction(1)})

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPoly(out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out: dict[int, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                if m1 & m2:
                    raise MultilinearityError(
                        f"product would square {_mask_str(m1 & m2)}")
                m = m1 | m2
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(out)

    def scalar_mul(self, c) -> "MultiPoly":
        c = rat(c)
        return MultiPoly({m: c * v for m, v in self.coeffs.items()})

    def eval(self, assignment) -> Rat:
        """Evaluate at a point; assignment is a dict over variable names or
        a sequence of eight rationals in declared order."""
        if not isinstance(assignment, dict):
            assignment = dict(zip(VARS, assignment))
        vals = {name: rat(v) for name, v in assignment.items()}
        total = Fraction(0)
        for mask, c in self.coeffs.items():
            term = c
            for i, name in enumerate(VARS):
                if mask & (1 << i):
                    term *= vals[name]
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.coeffs

    def monomial_count(self) -> int:
        return len(self.coeffs)

    def support(self) -> set[int]:
        return set(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for mask in sorted(self.coeffs, key=lambda m: (bin(m).count("1"), m)):
            c = self.coeffs[mask]
            mono = _mask_str(mask)
            if mono == "1":
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _mask_str(mask: int) -> str:
    names = [name for i, name in enumerate(VARS) if mask & (1 << i)]
    return "*".join(names) if names else "1"


ONE = MultiPoly.const(1)


def _gamma(block: str) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    return tuple(MultiPoly.var(f"{block}{i}") for i in range(1, 5))


def symbolic_weights(block: str) -> tuple[MultiPoly, ...]:
    """The four kite-ray weights c_i as polynomials in one parameter block."""
    g1, g2, g3, g4 = _gamma(block)
    two = MultiPoly.const(2)
    c1 = two + g2 + g4 + g3 * (g2 - g4)
    c2 = two + g1 + g3 + g4 * (g1 - g3)
    c3 = two - g4 - g2 + g1 * (g4 - g2)
    c4 = two - g3 - g1 + g2 * (g3 - g1)
    return c1, c2, c3, c4


def _symbolic_rays(block: str):
    g1, g2, g3, g4 = _gamma(block)
    one = ONE
    return (
        (one, g1, one),
        (g2, one, one),
        (-one, g3, one),
        (g4, -one, one),
    )


def symbolic_omega() -> list[list[MultiPoly]]:
    """The witness tensor expanded entrywise as polynomials in all eight
    parameters, independently of any printed coordinate tables."""
    ca = symbolic_weights("a")
    cb = symbolic_weights("b")
    T = [[c * comp for comp in ray] for c, ray in zip(ca, _symbolic_rays("a"))]
    U = [[c * comp for comp in ray] for c, ray in zip(cb, _symbolic_rays("b"))]
    zero = MultiPoly()
    om = [[zero for _ in range(3)] for _ in range(3)]
    terms = ((T[0], U[1], 1), (T[1], U[1], -1), (T[1], U[0], 1), (T[2], U[2], 1))
    for Ti, Uj, sign in terms:
        for i in range(3):
            for j in range(3):
                prod = Ti[i] * Uj[j]
                om[i][j] = om[i][j] + (prod if sign > 0 else -prod)
    return om


def symbolic_f(matrix: list[list[MultiPoly]]) -> MultiPoly:
    """f(m) = m11 + m12 + m21 - m22 - 2 m33 applied entrywise."""
    return (matrix[0][0] + matrix[0][1] + matrix[1][0]
            - matrix[1][1] - matrix[2][2].scalar_mul(2))


def symbolic_r(block: str) -> MultiPoly:
    g1, g2, g3, g4 = _gamma(block)
    return (g1 * g2 - ONE) * (g3 - g4) - (g3 * g4 - ONE) * (g1 - g2)


def check_magical_identity() -> bool:
    """Prove f(omega) + R(a) R(b) = 0 as a polynomial in eight variables."""
    lhs = symbolic_f(symbolic_omega())
    return (lhs + symbolic_r("a") * symbolic_r("b")).is_zero()


# factor lists for the four weights: each entry ((s1, i1), (s2, i2)) stands
# for the summand (1 + s1*g_i1)(1 + s2*g_i2); every factor lies in (0, 2)
# on (-1, 1)^4, so each weight is strictly positive there
WEIGHT_FACTORIZATIONS = (
    (((1, 2), (1, 3)), ((1, 4), (-1, 3))),
    (((1, 1), (1, 4)), ((1, 3), (-1, 4))),
    (((-1, 2), (1, 1)), ((-1, 4), (-1, 1))),
    (((-1, 1), (1, 2)), ((-1, 3), (-1, 2))),
)


def check_weight_positivity() -> bool:
    """Prove, symbolically, that each weight c_i equals its factorized form
    (a sum of two products of strictly positive factors on (-1,1)^4)."""
    weights = symbolic_weights("a")
    g = {i: MultiPoly.var(f"a{i}") for i in range(1, 5)}
    for c, summands in zip(weights, WEIGHT_FACTORIZATIONS):
        total = MultiPoly()
        for (s1, i1), (s2, i2) in summands:
            factor1 = ONE + g[i1].scalar_mul(s1)
            factor2 = ONE + g[i2].scalar_mul(s2)
            total = total + factor1 * factor2
        if not (c - total).is_zero():
            return False
    return True


def identity_report() -> dict:
    """Everything the identity-check command prints: verification results
    plus the monomial counts of the main objects."""
    om = symbolic_omega()
    f_om = symbolic_f(om)
    rr = symbolic_r("a") * symbolic_r("b")
    return {
        "magical_identity": (f_om + rr).is_zero(),
        "weight_positivity": check_weight_positivity(),
        "f_omega_monomials": f_om.monomial_count(),
        "r_product_monomials": rr.monomial_count(),
        "omega_entry_monomials": [[om[i][j].monomial_count() for j in range(3)]
                                  for i in range(3)],
    }
