"""Exact rational linear programming with verified certificates.

Two-phase primal simplex over `fractions.Fraction` with Bland's pivoting
rule, which guarantees termination in exact arithmetic.  Variables are
free; nonnegativity is imposed by explicit constraints.  Every answer is
re-verified by substitution before it is returned:

* feasible  -> the returned point satisfies every constraint exactly;
* infeasible -> the returned Farkas multipliers combine the constraints
  into the contradiction 0 <= c with c < 0, exactly;
* bounded objective -> the optimum is attained at the returned point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Rat, Vec, rat, vec

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)


@dataclass(frozen=True)
class Constraint:
    coeffs: Vec
    rel: str
    rhs: Rat

    def holds_at(self, x: Vec) -> bool:
        lhs = sum((a * xi for a, xi in zip(self.coeffs, x)), Fraction(0))
        if self.rel == LE:
            return lhs <= self.rhs
        if self.rel == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Constraints over free rational variables, plus an optional objective
    ("max" or "min")."""

    num_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Vec, str] | None = None

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("a linear program needs at least one variable")
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint arity does not match variable count")
            if c.rel not in _RELATIONS:
                raise ValueError(f"unknown relation {c.rel!r}")
        if self.objective is not None:
            coeffs, sense = self.objective
            if len(coeffs) != self.num_vars:
                raise ValueError("objective arity does not match variable count")
            if sense not in ("max", "min"):
                raise ValueError(f"unknown objective sense {sense!r}")


def make_lp(num_vars, rows, objective=None) -> LinearProgram:
    """Convenience builder: rows are (coeffs, rel, rhs) triples."""
    cons = tuple(Constraint(vec(a), rel, rat(b)) for a, rel, b in rows)
    obj = (vec(objective[0]), objective[1]) if objective else None
    return LinearProgram(num_vars, cons, obj)


@dataclass(frozen=True)
class LpOutcome:
    status: str  # "feasible" | "infeasible" | "unbounded"
    point: Vec | None = None
    optimum: Rat | None = None
    farkas: Vec | None = None


def verify_farkas(p: LinearProgram, y: Vec) -> bool:
    """Check that the multipliers y prove infeasibility: the combination
    sum_i y_i * (constraint_i in its <= orientation) must read 0 <= c with
    c < 0.  Multipliers on inequality rows must be nonnegative; equality
    rows may carry either sign."""
    if len(y) != len(p.constraints):
        return False
    combo = [Fraction(0)] * p.num_vars
    total = Fraction(0)
    for yi, c in zip(y, p.constraints):
        if c.rel != EQ and yi < 0:
            return False
        sign = Fraction(-1) if c.rel == GE else Fraction(1)
        for j, a in enumerate(c.coeffs):
            combo[j] += yi * sign * a
        total += yi * sign * c.rhs
    return all(x == 0 for x in combo) and total < 0


def lp_solve(p: LinearProgram, _certify: bool = True) -> LpOutcome:
    """Exact status of p, with a verifying point / optimum / Farkas vector."""
    tab = _Tableau(p)
    feasible = tab.phase1()
    if not feasible:
        if not _certify:
            return LpOutcome(status="infeasible")
        y = _farkas_certificate(p)
        return LpOutcome(status="infeasible", farkas=y)

    if p.objective is None:
        x = tab.solution()
        assert all(c.holds_at(x) for c in p.constraints)
        return LpOutcome(status="feasible", point=x)

    coeffs, sense = p.objective
    bounded = tab.phase2(coeffs, sense)
    x = tab.solution()
    assert all(c.holds_at(x) for c in p.constraints)
    if not bounded:
        return LpOutcome(status="unbounded", point=x)
    value = sum((a * xi for a, xi in zip(coeffs, x)), Fraction(0))
    return LpOutcome(status="feasible", point=x, optimum=value)


def _farkas_certificate(p: LinearProgram) -> Vec:
    """Solve for multipliers proving infeasibility (Farkas' lemma guarantees
    they exist) and verify them by substitution."""
    m = len(p.constraints)
    rows = []
    # combination must cancel every variable
    for j in range(p.num_vars):
        coeffs = []
        for c in p.constraints:
            sign = Fraction(-1) if c.rel == GE else Fraction(1)
            coeffs.append(sign * c.coeffs[j])
        rows.append((coeffs, EQ, Fraction(0)))
    # and produce a strictly negative right-hand side (scaled to -1)
    rhs_row = []
    for c in p.constraints:
        sign = Fraction(-1) if c.rel == GE else Fraction(1)
        rhs_row.append(sign * c.rhs)
    rows.append((rhs_row, EQ, Fraction(-1)))
    # inequality multipliers are nonnegative
    for i, c in enumerate(p.constraints):
        if c.rel != EQ:
            e = [Fraction(0)] * m
            e[i] = Fraction(1)
            rows.append((e, GE, Fraction(0)))
    aux = make_lp(m, rows)
    out = lp_solve(aux, _certify=False)
    assert out.status == "feasible", "Farkas system must be feasible for an infeasible LP"
    y = out.point
    assert verify_farkas(p, y)
    return y


class _Tableau:
    """Dense simplex tableau in standard form.

    Free variables are split x = u - v; each row is normalized to a
    nonnegative right-hand side; <= rows get a slack (which doubles as the
    initial basic variable), >= rows a surplus plus an artificial, = rows
    an artificial.  Column layout: [u | v | slacks/surpluses | artificials].
    """

    def __init__(self, p: LinearProgram):
        self.p = p
        n = p.num_vars
        m = len(p.constraints)
        self.n = n
        self.m = m

        n_slack = sum(1 for c in p.constraints if c.rel != EQ)
        self.first_slack = 2 * n
        self.first_art = 2 * n + n_slack

        prepared = []  # (row-without-artificials, rhs, normalized rel, slack col or None)
        slack_idx = 0
        for c in p.constraints:
            flip = c.rhs < 0
            sign = Fraction(-1) if flip else Fraction(1)
            rel = c.rel
            if flip and rel != EQ:
                rel = GE if rel == LE else LE
            row = [sign * a for a in c.coeffs] + [-sign * a for a in c.coeffs]
            row += [Fraction(0)] * n_slack
            slack_col = None
            if c.rel != EQ:
                slack_col = self.first_slack + slack_idx
                row[slack_col] = Fraction(1) if rel == LE else Fraction(-1)
                slack_idx += 1
            prepared.append((row, sign * c.rhs, rel, slack_col))

        total_art = sum(1 for (_, _, rel, _) in prepared if rel != LE)
        self.ncols = self.first_art + total_art
        self.rows: list[list[Fraction]] = []
        basis: list[int] = []
        art_cols: list[int] = []
        art_idx = 0
        for row, rhs, rel, slack_col in prepared:
            full = row + [Fraction(0)] * total_art + [rhs]
            if rel == LE:
                basic = slack_col  # slack enters the initial basis
            else:
                basic = self.first_art + art_idx
                full[basic] = Fraction(1)
                art_cols.append(basic)
                art_idx += 1
            self.rows.append(full)
            basis.append(basic)
        self.basis = basis
        self.art_cols = set(art_cols)
        self.live = [True] * len(self.rows)

    # -- core pivoting ------------------------------------------------------

    def _pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [x * inv for x in row]
        for i, other in enumerate(self.rows):
            if i != r and self.live[i] and other[c] != 0:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        self.basis[r] = c

    def _run_simplex(self, cost: list[Fraction], allowed) -> bool:
        """Maximize cost over the current feasible basis.  Returns False on
        unboundedness.  Bland's rule: smallest eligible index everywhere."""
        while True:
            z = self._reduced_costs(cost)
            enter = next((j for j in range(self.ncols) if allowed[j] and z[j] > 0), None)
            if enter is None:
                return True
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                if not self.live[i] or row[enter] <= 0:
                    continue
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                    best = ratio
                    leave = i
            if leave is None:
                return False
            self._pivot(leave, enter)

    def _reduced_costs(self, cost: list[Fraction]) -> list[Fraction]:
        z = list(cost)
        for i, row in enumerate(self.rows):
            if not self.live[i]:
                continue
            cb = cost[self.basis[i]]
            if cb != 0:
                for j in range(self.ncols):
                    if row[j] != 0:
                        z[j] -= cb * row[j]
        return z

    # -- phases -------------------------------------------------------------

    def phase1(self) -> bool:
        if not self.rows:
            return True
        if self.art_cols:
            cost = [Fraction(0)] * self.ncols
            for c in self.art_cols:
                cost[c] = Fraction(-1)  # maximize -(sum of artificials)
            allowed = [True] * self.ncols
            self._run_simplex(cost, allowed)
            value = sum(self.rows[i][-1] for i in range(self.m)
                        if self.live[i] and self.basis[i] in self.art_cols)
            if value != 0:
                return False
            self._evict_artificials()
        return True

    def _evict_artificials(self) -> None:
        for i in range(self.m):
            if not self.live[i] or self.basis[i] not in self.art_cols:
                continue
            row = self.rows[i]
            col = next((j for j in range(self.first_art) if row[j] != 0), None)
            if col is None:
                self.live[i] = False  # redundant row
            else:
                self._pivot(i, col)

    def phase2(self, coeffs: Vec, sense: str) -> bool:
        cost = [Fraction(0)] * self.ncols
        s = Fraction(1) if sense == "max" else Fraction(-1)
        for j, a in enumerate(coeffs):
            cost[j] = s * a
            cost[self.n + j] = -s * a
        allowed = [j < self.first_art for j in range(self.ncols)]
        return self._run_simplex(cost, allowed)

    def solution(self) -> Vec:
        vals = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            if self.live[i]:
                vals[b] = self.rows[i][-1]
        return tuple(vals[j] - vals[self.n + j] for j in range(self.n))
