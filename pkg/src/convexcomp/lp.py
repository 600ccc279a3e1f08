"""
Exact linear programming over the rationals.

The solver is a dense two-phase tableau simplex with Bland's rule, so it
terminates and returns the same answer for the same input. Every outcome
carries a certificate (primal point plus dual multipliers, Farkas
multipliers, or a feasible point plus an improving ray) that
:func:`check_certificate` re-verifies by substitution alone.

Vertex enumeration of bounded polyhedra uses the double-description method
on the homogenized cone.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union
import logging

from convexcomp.errors import DimensionMismatch, UnboundedPolyhedronError
from convexcomp.rationals import (
    RMat, RVec, fmt, nullspace, primitive, rat, solve_linear, span_dim, vsum)

log = logging.getLogger(__name__)


def _constraints(pairs, dim, name):
    out = []
    for i, (a, b) in enumerate(pairs):
        a = RVec(a)
        if len(a) != dim:
            raise DimensionMismatch(
                "{0}[{1}] has {2} coefficients, expected {3}".format(
                    name, i, len(a), dim))
        out.append((a, rat(b)))
    return tuple(out)


@dataclass(frozen=True)
class LpProblem:
    """
    Maximize ``objective . x`` subject to ``a . x = b`` for every pair in
    `eq_constraints`, ``a . x <= b`` for every pair in `ineq_constraints`
    and ``x[i] >= 0`` for ``i`` in `nonneg_vars`. Other variables are free.
    """
    objective: RVec
    eq_constraints: tuple = ()
    ineq_constraints: tuple = ()
    nonneg_vars: frozenset = frozenset()

    def __post_init__(self):
        objective = RVec(self.objective)
        dim = len(objective)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(
            self, "eq_constraints",
            _constraints(self.eq_constraints, dim, "eq_constraints"))
        object.__setattr__(
            self, "ineq_constraints",
            _constraints(self.ineq_constraints, dim, "ineq_constraints"))
        nonneg = frozenset(self.nonneg_vars)
        if any(i < 0 or i >= dim for i in nonneg):
            raise DimensionMismatch("nonneg_vars index out of range")
        object.__setattr__(self, "nonneg_vars", nonneg)

    @property
    def num_vars(self):
        return len(self.objective)

    def rows(self):
        """Equality rows followed by inequality rows."""
        return list(self.eq_constraints) + list(self.ineq_constraints)


@dataclass(frozen=True)
class Optimal:
    x: RVec
    value: Fraction
    dual: RVec
    status: ClassVar[str] = "optimal"
    feasible: ClassVar[bool] = True


@dataclass(frozen=True)
class Infeasible:
    farkas: RVec
    status: ClassVar[str] = "infeasible"
    feasible: ClassVar[bool] = False


@dataclass(frozen=True)
class Unbounded:
    x: RVec
    ray: RVec
    status: ClassVar[str] = "unbounded"
    feasible: ClassVar[bool] = True


LpOutcome = Union[Optimal, Infeasible, Unbounded]


class _Tableau(object):

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, j):
        pivot = self.rows[r][j]
        self.rows[r] = [x / pivot for x in self.rows[r]]
        self.rhs[r] = self.rhs[r] / pivot
        for i, row in enumerate(self.rows):
            factor = row[j]
            if i == r or factor == 0:
                continue
            self.rows[i] = [x - factor * y for x, y in zip(row, self.rows[r])]
            self.rhs[i] -= factor * self.rhs[r]
        self.basis[r] = j

    def reduced_cost(self, cost, j):
        return cost[j] - sum(
            (cost[b] * row[j] for b, row in zip(self.basis, self.rows)),
            Fraction(0))

    def value(self, cost):
        return sum(
            (cost[b] * v for b, v in zip(self.basis, self.rhs)), Fraction(0))

    def maximize(self, cost, allowed):
        """
        Pivot with Bland's rule until optimal.

        Returns None at the optimum, or the entering column along which the
        objective grows without bound.
        """
        steps = 0
        while True:
            entering = next(
                (j for j in allowed if self.reduced_cost(cost, j) > 0), None)
            if entering is None:
                log.debug("simplex optimal after {0} pivots".format(steps))
                return None
            candidates = [
                (self.rhs[i] / row[entering], self.basis[i], i)
                for i, row in enumerate(self.rows) if row[entering] > 0]
            if not candidates:
                return entering
            self.pivot(min(candidates)[2], entering)
            steps += 1

    def duals(self, cost, first_artificial):
        """Simplex multipliers ``c_B B^-1``, read off the artificial columns."""
        return [
            sum((cost[b] * row[first_artificial + k]
                 for b, row in zip(self.basis, self.rows)), Fraction(0))
            for k in range(len(self.rows))]


def lp_solve(problem):
    """
    Solve an :class:`LpProblem` exactly.

    Free variables are split into a difference of two nonnegative columns,
    inequalities get a slack column, rows are sign-flipped to a nonnegative
    right-hand side and phase 1 starts from an artificial basis.
    """
    n = problem.num_vars
    columns = []
    for i in range(n):
        columns.append((i, 1))
        if i not in problem.nonneg_vars:
            columns.append((i, -1))
    constraints = problem.rows()
    n_eq, m = len(problem.eq_constraints), len(constraints)
    n_in = m - n_eq
    n_struct = len(columns) + n_in

    rows, rhs, flips = [], [], []
    for k, (a, b) in enumerate(constraints):
        row = [a[i] * s for i, s in columns]
        row += [Fraction(1) if k - n_eq == s else Fraction(0) for s in range(n_in)]
        flip = -1 if b < 0 else 1
        rows.append(
            [flip * x for x in row]
            + [Fraction(1) if k == s else Fraction(0) for s in range(m)])
        rhs.append(flip * b)
        flips.append(flip)
    tableau = _Tableau(rows, rhs, [n_struct + k for k in range(m)])

    phase1 = [Fraction(0)] * n_struct + [Fraction(-1)] * m
    tableau.maximize(phase1, range(n_struct + m))
    if tableau.value(phase1) < 0:
        pi = tableau.duals(phase1, n_struct)
        log.info("LP infeasible ({0} vars, {1} rows)".format(n, m))
        return Infeasible(RVec(f * p for f, p in zip(flips, pi)))

    # artificials left in the basis at level zero are pivoted out where the
    # row allows it; the rest sit on redundant rows and never move again
    for r, b in enumerate(tableau.basis):
        if b >= n_struct:
            j = next((j for j in range(n_struct) if tableau.rows[r][j] != 0), None)
            if j is not None:
                tableau.pivot(r, j)

    phase2 = [problem.objective[i] * s for i, s in columns]
    phase2 += [Fraction(0)] * (n_in + m)
    entering = tableau.maximize(phase2, range(n_struct))

    def to_vars(y):
        x = [Fraction(0)] * n
        for (i, s), value in zip(columns, y):
            x[i] += s * value
        return RVec(x)

    y = [Fraction(0)] * (n_struct + m)
    for b, value in zip(tableau.basis, tableau.rhs):
        y[b] = value
    x = to_vars(y)

    if entering is not None:
        d = [Fraction(0)] * (n_struct + m)
        d[entering] = Fraction(1)
        for b, row in zip(tableau.basis, tableau.rows):
            d[b] = -row[entering]
        log.info("LP unbounded ({0} vars, {1} rows)".format(n, m))
        return Unbounded(x, to_vars(d))

    pi = tableau.duals(phase2, n_struct)
    value = problem.objective.dot(x)
    log.info("LP optimal, value {0}".format(fmt(value)))
    return Optimal(x, value, RVec(f * p for f, p in zip(flips, pi)))


def feasibility(eqs, ineqs, nonneg, num_vars=None):
    """Phase-1 question: is ``{a.x = b, a.x <= b, x[nonneg] >= 0}`` nonempty?"""
    eqs, ineqs, nonneg = list(eqs), list(ineqs), set(nonneg)
    if num_vars is None:
        if eqs or ineqs:
            num_vars = len((eqs + ineqs)[0][0])
        else:
            num_vars = max(nonneg) + 1 if nonneg else 0
    return lp_solve(LpProblem(RVec([0] * num_vars), eqs, ineqs, nonneg))


def _sign_ok(vector, problem):
    for i, g in enumerate(vector):
        if i in problem.nonneg_vars:
            if g < 0:
                return False
        elif g != 0:
            return False
    return True


def _is_feasible_point(problem, x):
    if len(x) != problem.num_vars:
        return False
    if any(a.dot(x) != b for a, b in problem.eq_constraints):
        return False
    if any(a.dot(x) > b for a, b in problem.ineq_constraints):
        return False
    return all(x[i] >= 0 for i in problem.nonneg_vars)


def check_certificate(problem, outcome):
    """
    Re-verify an outcome of :func:`lp_solve` by exact substitution.

    Optimal: x is feasible and the dual multipliers prove that no feasible
    point does better. Infeasible: the Farkas multipliers combine the rows
    into ``0 <= negative``. Unbounded: x is feasible and the ray keeps
    feasibility while increasing the objective.
    """
    rows, n_eq = problem.rows(), len(problem.eq_constraints)
    n = problem.num_vars

    def combination(y):
        return vsum([y_k * a for y_k, (a, _) in zip(y, rows)], n)

    def rhs(y):
        return sum((y_k * b for y_k, (_, b) in zip(y, rows)), Fraction(0))

    if isinstance(outcome, Optimal):
        y = outcome.dual
        if len(y) != len(rows) or any(v < 0 for v in y[n_eq:]):
            return False
        if not _is_feasible_point(problem, outcome.x):
            return False
        if problem.objective.dot(outcome.x) != outcome.value:
            return False
        return (_sign_ok(combination(y) - problem.objective, problem)
                and rhs(y) == outcome.value)
    if isinstance(outcome, Infeasible):
        y = outcome.farkas
        if len(y) != len(rows) or any(v < 0 for v in y[n_eq:]):
            return False
        return _sign_ok(combination(y), problem) and rhs(y) < 0
    if isinstance(outcome, Unbounded):
        r = outcome.ray
        if len(r) != n or not _is_feasible_point(problem, outcome.x):
            return False
        if any(a.dot(r) != 0 for a, _ in problem.eq_constraints):
            return False
        if any(a.dot(r) > 0 for a, _ in problem.ineq_constraints):
            return False
        if any(r[i] < 0 for i in problem.nonneg_vars):
            return False
        return problem.objective.dot(r) > 0
    return False


@dataclass(frozen=True)
class HRep:
    """Polyhedron ``{x : a.x = b (equalities), a.x >= b (inequalities)}``."""
    dim: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "equalities",
            _constraints(self.equalities, self.dim, "equalities"))
        object.__setattr__(
            self, "inequalities",
            _constraints(self.inequalities, self.dim, "inequalities"))


def vertex_key(v):
    """Sort key of vertices: the list of their coordinate strings."""
    return [fmt(c) for c in v]


def hrep_slacks(h, x):
    return [a.dot(x) - b for a, b in h.inequalities]


def hrep_contains(h, x):
    x = RVec(x)
    if len(x) != h.dim:
        raise DimensionMismatch(
            "point has {0} coordinates, polyhedron lives in dimension {1}".format(
                len(x), h.dim))
    if any(a.dot(x) != b for a, b in h.equalities):
        return False
    return all(s >= 0 for s in hrep_slacks(h, x))


def _bounded(h):
    """False if empty; raises when some coordinate is unbounded."""
    ineqs = [(-a, -b) for a, b in h.inequalities]
    for i in range(h.dim):
        for sign in (1, -1):
            objective = RVec([sign if j == i else 0 for j in range(h.dim)])
            outcome = lp_solve(LpProblem(objective, h.equalities, ineqs))
            if isinstance(outcome, Infeasible):
                return False
            if isinstance(outcome, Unbounded):
                raise UnboundedPolyhedronError(
                    "coordinate {0} is unbounded {1}".format(
                        i, "above" if sign > 0 else "below"))
    return True


def vertex_enumerate(h):
    """
    Vertices of the bounded polyhedron `h`, sorted by their coordinate strings.

    The polyhedron is lifted to the cone ``{(x, t) : a.x - b t >= 0, t >= 0}``
    restricted to the homogenized equalities, which are eliminated by a kernel
    basis. Double description then adds the inequalities in input order, and
    two rays are adjacent when the constraints tight at both have rank two
    less than the cone dimension.
    """
    if not _bounded(h):
        return []
    d = h.dim
    eq_rows = [tuple(a) + (-b,) for a, b in h.equalities]
    if eq_rows:
        basis = nullspace(RMat.from_rows(eq_rows, cols=d + 1))
    else:
        basis = [RVec([1 if j == i else 0 for j in range(d + 1)]) for i in range(d + 1)]
    k = len(basis)
    lifted = [RVec([0] * d + [1])] + [a.concat([-b]) for a, b in h.inequalities]
    rows = [RVec(row.dot(v) for v in basis) for row in lifted]
    if span_dim(rows) != k:
        raise UnboundedPolyhedronError("the homogenized cone is not pointed")

    initial, chosen = [], []
    for idx, row in enumerate(rows):
        if span_dim(chosen + [row]) > len(chosen):
            chosen.append(row)
            initial.append(idx)
        if len(chosen) == k:
            break
    square = RMat.from_rows(chosen, cols=k)
    rays = [
        primitive(solve_linear(square, RVec([1 if j == i else 0 for j in range(k)])))
        for i in range(k)]
    processed = list(initial)

    for idx, a in enumerate(rows):
        if idx in initial:
            continue
        values = [a.dot(r) for r in rays]
        tight = [
            frozenset(p for p in processed if rows[p].dot(r) == 0) for r in rays]
        kept = [r for r, v in zip(rays, values) if v >= 0]
        for p, vp in enumerate(values):
            if vp <= 0:
                continue
            for q, vq in enumerate(values):
                if vq >= 0:
                    continue
                common = tight[p] & tight[q]
                if len(common) < k - 2:
                    continue
                if span_dim([rows[c] for c in common]) != k - 2:
                    continue
                kept.append(primitive(rays[q] * vp - rays[p] * vq))
        rays = kept
        processed.append(idx)
        log.debug("double description: row {0}, {1} rays".format(idx, len(rays)))

    vertices = set()
    for z in rays:
        point = vsum([zi * v for zi, v in zip(z, basis)], d + 1)
        if point[d] <= 0:
            raise UnboundedPolyhedronError("extreme ray at infinity")
        vertices.add(RVec(point[:d]) / point[d])
    log.info("vertex enumeration: {0} vertices".format(len(vertices)))
    return sorted(vertices, key=vertex_key)
