from dataclasses import replace
from fractions import Fraction
import random

import pytest

import convexcomp.lp
from convexcomp.errors import UnboundedPolyhedronError
from convexcomp.lp import (
    HRep, Infeasible, LpProblem, Optimal, Unbounded, check_certificate,
    feasibility, hrep_contains, hrep_slacks, lp_solve, vertex_enumerate)
from convexcomp.rationals import RVec
from convexcomp.separability import classify_vertices
from convexcomp.composition import max_tensor
from convexcomp.statespace import gbit_square


def test_optimal():
    problem = LpProblem(
        [1, 1], ineq_constraints=[([1, 2], 4), ([3, 1], 6)], nonneg_vars={0, 1})
    outcome = lp_solve(problem)
    assert isinstance(outcome, Optimal)
    assert outcome.x == RVec(["8/5", "6/5"])
    assert outcome.value == Fraction(14, 5)
    assert check_certificate(problem, outcome)
    assert not check_certificate(problem, replace(outcome, value=outcome.value + 1))
    assert not check_certificate(problem, replace(outcome, dual=RVec([0, 0])))


def test_free_variable_equality():
    problem = LpProblem([-1], eq_constraints=[([1], 3)])
    outcome = lp_solve(problem)
    assert outcome.status == "optimal"
    assert outcome.value == -3
    assert check_certificate(problem, outcome)


def test_infeasible():
    problem = LpProblem([0], ineq_constraints=[([1], 1), ([-1], -2)])
    outcome = lp_solve(problem)
    assert isinstance(outcome, Infeasible)
    assert not outcome.feasible
    assert check_certificate(problem, outcome)
    assert not check_certificate(problem, Infeasible(RVec([0, 0])))


def test_unbounded():
    problem = LpProblem([1, 0], ineq_constraints=[([1, -1], 1)], nonneg_vars={0, 1})
    outcome = lp_solve(problem)
    assert isinstance(outcome, Unbounded)
    assert check_certificate(problem, outcome)
    assert not check_certificate(problem, replace(outcome, ray=RVec([-1, 0])))


def test_feasibility():
    assert feasibility([([1, 1], 1)], [], [0, 1]).feasible
    assert not feasibility([([1, 1], -1)], [], [0, 1]).feasible


def test_random_certificates():
    rng = random.Random(0)
    for _ in range(60):
        n = rng.randint(1, 4)

        def row():
            return [rng.randint(-3, 3) for _ in range(n)]
        problem = LpProblem(
            row(),
            eq_constraints=[(row(), rng.randint(-3, 3)) for _ in range(rng.randint(0, 2))],
            ineq_constraints=[(row(), rng.randint(-3, 3)) for _ in range(rng.randint(0, 4))],
            nonneg_vars={i for i in range(n) if rng.random() < 0.7})
        outcome = lp_solve(problem)
        assert check_certificate(problem, outcome)


def test_every_lp_of_a_separability_sweep_reverifies(monkeypatch):
    audited = []
    solve = convexcomp.lp.lp_solve

    def audit(problem):
        outcome = solve(problem)
        audited.append(check_certificate(problem, outcome))
        return outcome
    monkeypatch.setattr(convexcomp.lp, "lp_solve", audit)

    g = gbit_square()
    classify_vertices([g, g], max_tensor([g, g]).vertices)
    assert audited
    assert all(audited)


def test_vertex_enumerate_square():
    square = HRep(2, [], [([1, 0], 0), ([-1, 0], -1), ([0, 1], 0), ([0, -1], -1)])
    assert vertex_enumerate(square) == [
        RVec([0, 0]), RVec([0, 1]), RVec([1, 0]), RVec([1, 1])]


def test_vertex_enumerate_with_equality():
    triangle = HRep(
        3, [([1, 1, 1], 1)], [([1, 0, 0], 0), ([0, 1, 0], 0), ([0, 0, 1], 0)])
    assert vertex_enumerate(triangle) == [
        RVec([0, 0, 1]), RVec([0, 1, 0]), RVec([1, 0, 0])]


def test_vertex_enumerate_redundant_and_degenerate():
    # a pyramid apex has four tight facets; one inequality is redundant
    pyramid = HRep(3, [], [
        ([0, 0, 1], 0),
        ([-1, 0, -1], -1), ([1, 0, -1], -1), ([0, -1, -1], -1), ([0, 1, -1], -1),
        ([0, 0, -1], -5)])
    vertices = vertex_enumerate(pyramid)
    assert len(vertices) == 5
    assert RVec([0, 0, 1]) in vertices


def test_vertex_enumerate_empty_and_unbounded():
    assert vertex_enumerate(HRep(1, [], [([1], 1), ([-1], 0)])) == []
    with pytest.raises(UnboundedPolyhedronError):
        vertex_enumerate(HRep(1, [], [([1], 0)]))


def test_hrep_contains():
    h = HRep(2, [([1, 1], 1)], [([1, 0], 0), ([0, 1], 0)])
    assert hrep_contains(h, ["1/3", "2/3"])
    assert not hrep_contains(h, [2, -1])
    assert not hrep_contains(h, [1, 1])
    assert hrep_slacks(h, [2, -1]) == [2, -1]


def random_problem(rng):
    n = rng.randint(1, 4)

    def row():
        return [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
    return LpProblem(
        row(),
        eq_constraints=[(row(), rng.randint(-3, 3)) for _ in range(rng.randint(0, 2))],
        ineq_constraints=[(row(), rng.randint(-3, 3)) for _ in range(rng.randint(0, 4))],
        nonneg_vars={i for i in range(n) if rng.random() < 0.7})


def test_lp_solve_is_deterministic():
    first, second = random.Random(12), random.Random(12)
    for _ in range(40):
        problem, again = random_problem(first), random_problem(second)
        assert problem == again
        outcome = lp_solve(problem)
        assert lp_solve(again) == outcome
        assert lp_solve(problem) == outcome
