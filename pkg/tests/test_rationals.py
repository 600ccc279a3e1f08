from fractions import Fraction
import math
import random

import pytest

from convexcomp.errors import DimensionMismatch, RationalFormatError
from convexcomp.rationals import (
    RMat, RVec, fmt, identity, kron, kron_all, mat_vec, nullspace, primitive,
    rank, rat, solve_linear, span_dim, transpose, vsum, zeros)


def random_matrix(rng, rows, cols, bound=3):
    return RMat.from_rows(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
          for _ in range(cols)] for _ in range(rows)], cols=cols)


def test_rat():
    assert rat("3/6") == Fraction(1, 2)
    assert rat("-2") == -2
    assert rat(" 4/2 ") == 2
    assert rat(7) == 7
    assert rat(Fraction(2, 3)) == Fraction(2, 3)
    for bad in ["1/0", "0.5", "1/-2", "", "one", 0.5, True, None]:
        with pytest.raises(RationalFormatError):
            rat(bad)


def test_fmt():
    assert fmt(Fraction(4, 2)) == "2"
    assert fmt("-3/6") == "-1/2"
    assert fmt(0) == "0"


def test_rvec():
    v = RVec([1, "1/2"])
    assert v + RVec([1, 1]) == RVec([2, "3/2"])
    assert v - v == RVec([0, 0])
    assert -v == RVec([-1, "-1/2"])
    assert 2 * v == v * 2 == RVec([2, 1])
    assert v / 2 == RVec(["1/2", "1/4"])
    assert v.dot([2, 2]) == 3
    assert v.concat([5]) == RVec([1, "1/2", 5])
    assert RVec([0, 0]).is_zero()
    with pytest.raises(DimensionMismatch):
        v + RVec([1, 2, 3])
    with pytest.raises(DimensionMismatch):
        v.dot([1])


def test_kron():
    assert kron([1, 2], [3, 4]) == RVec([3, 4, 6, 8])
    assert kron_all([]) == RVec([1])
    assert kron_all([[1, 0], [0, 1], [2, 3]]) == RVec([0, 0, 2, 3, 0, 0, 0, 0])


def test_matrices():
    m = RMat.from_rows([[1, 2, 3], [4, 5, 6]])
    assert m[1, 2] == 6
    assert m.column(1) == RVec([2, 5])
    assert transpose(transpose(m)) == m
    assert transpose(m).rows == 3
    assert mat_vec(m, [1, 0, -1]) == RVec([-2, -2])
    assert mat_vec(identity(3), [1, 2, 3]) == RVec([1, 2, 3])
    assert rank(zeros(2, 3)) == 0
    with pytest.raises(DimensionMismatch):
        RMat.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        m.mat_vec([1, 2])


def test_rank():
    assert rank(RMat.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(identity(4)) == 4
    assert rank(RMat.from_rows([[0, 1, 0], [0, 0, 1], [0, 1, 1]])) == 2
    assert span_dim([]) == 0
    assert span_dim([["1/2", "1/3"], [3, 2]]) == 1


def test_solve_linear():
    x = solve_linear(RMat.from_rows([[2, 1], [1, 3]]), [3, 5])
    assert x == RVec(["4/5", "7/5"])
    assert solve_linear(RMat.from_rows([[1, 1], [2, 2]]), [1, 3]) is None
    with pytest.raises(DimensionMismatch):
        solve_linear(identity(2), [1])


def test_solve_linear_random():
    rng = random.Random(0)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        x = RVec(Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(m.cols))
        b = m.mat_vec(x)
        y = solve_linear(m, b)
        assert y is not None
        assert m.mat_vec(y) == b


def test_nullspace():
    m = RMat.from_rows([[1, 1, 1]])
    basis = nullspace(m)
    assert len(basis) == 2
    assert all(m.mat_vec(v) == RVec([0]) for v in basis)
    assert nullspace(identity(3)) == []

    rng = random.Random(1)
    for _ in range(50):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        basis = nullspace(m)
        assert rank(m) + len(basis) == m.cols
        assert all(m.mat_vec(v).is_zero() for v in basis)
        if basis:
            assert span_dim(basis) == len(basis)


def test_primitive():
    assert primitive(["1/2", "-3/4"]) == RVec([2, -3])
    assert primitive([0, 6, 9]) == RVec([0, 2, 3])
    assert primitive([0, 0]) == RVec([0, 0])


def test_vsum():
    assert vsum([], 3) == RVec([0, 0, 0])
    assert vsum([[1, 2], ["1/2", 0]], 2) == RVec(["3/2", 2])


def test_string_operands_are_read_as_rationals():
    assert kron([2, 1], ["5", "7"]) == RVec([10, 14, 5, 7])
    assert kron([3], ["1"]) == RVec([3])
    assert kron(["1/2", "1/3"], ["2/3", 1]) == RVec(["1/3", "1/2", "2/9", "1/3"])
    v = RVec([1, "1/2"])
    assert v + ["1/2", 0] == RVec(["3/2", "1/2"])
    assert v - ["1", "1/2"] == RVec([0, 0])
    assert v.dot(["1/2", "1/2"]) == Fraction(3, 4)
    assert v.concat(["2/4"]) == RVec([1, "1/2", "1/2"])
    with pytest.raises(RationalFormatError):
        v + ["1/0", 1]


def random_rat(rng, bound=9):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_vec(rng, dim):
    return RVec(random_rat(rng) for _ in range(dim))


def canonical(x):
    return (type(x) is Fraction and x.denominator > 0
            and math.gcd(x.numerator, x.denominator) == 1)


def test_results_stay_canonical():
    rng = random.Random(2)
    for _ in range(200):
        u, w = random_vec(rng, 3), random_vec(rng, 3)
        a = random_rat(rng)
        results = list(u + w) + list(u - w) + list(-u) + list(a * u) + list(kron(u, w))
        results.append(u.dot(w))
        if a != 0:
            results.extend(u / a)
        assert all(canonical(x) for x in results)
        scaled = ["{0}/{1}".format(3 * x.numerator, 3 * x.denominator) for x in u]
        assert RVec(scaled) == u
        assert all(canonical(x) for x in RVec(scaled))


def test_ring_laws():
    rng = random.Random(3)
    for _ in range(200):
        u, v, w = (random_vec(rng, 4) for _ in range(3))
        a, b = random_rat(rng), random_rat(rng)
        assert u + (-u) == RVec([0] * 4)
        assert u + v == v + u
        assert (u + v) + w == u + (v + w)
        assert a * (u + v) == a * u + a * v
        assert (a + b) * u == a * u + b * u
        assert u.dot(v + w) == u.dot(v) + u.dot(w)
        assert (a * u).dot(v) == a * u.dot(v)


def test_kron_bilinearity():
    rng = random.Random(4)
    for _ in range(100):
        u, v = random_vec(rng, 2), random_vec(rng, 2)
        w = random_vec(rng, 3)
        a, b = random_rat(rng), random_rat(rng)
        assert kron(a * u + b * v, w) == a * kron(u, w) + b * kron(v, w)
        assert kron(w, a * u + b * v) == a * kron(w, u) + b * kron(w, v)


def test_rank_of_transpose():
    rng = random.Random(5)
    for _ in range(100):
        m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=2)
        assert rank(m) == rank(transpose(m))
        assert rank(m) <= min(m.rows, m.cols)
