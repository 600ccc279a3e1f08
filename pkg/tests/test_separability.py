from fractions import Fraction
import random

import pytest

from convexcomp.composition import max_tensor, min_tensor
from convexcomp.effects import Functional
from convexcomp.errors import DimensionMismatch, DomainError, NormalizationError
from convexcomp.rationals import RVec, kron, kron_all
from convexcomp.separability import (
    Entangled, Separable, Term, classify_vertices, is_separable,
    separable_hull_equals, tensor_label, verify_decomposition, verify_witness)
from convexcomp.statespace import classical_simplex, gbit_square, random_state

GBIT = gbit_square()
PAIR = [GBIT, GBIT]


def test_product_state():
    a, b = GBIT.generators[0], GBIT.generators[1]
    state = kron(a, b)
    verdict = is_separable(PAIR, state)
    assert isinstance(verdict, Separable)
    assert verdict.verdict == "separable"
    assert verdict.terms == (Term(Fraction(1), (a, b)),)
    assert verify_decomposition(PAIR, verdict, state)


def test_uniform_mixture_of_products():
    products = min_tensor(PAIR).realization.generators
    state = sum(products, RVec([0] * 9)) / len(products)
    assert state == kron([0, 0, 1], [0, 0, 1])
    verdict = is_separable(PAIR, state)
    assert isinstance(verdict, Separable)
    assert verify_decomposition(PAIR, verdict, state)


def test_mixture_of_two_products():
    g = GBIT.generators
    state = (kron(g[0], g[0]) + kron(g[3], g[3])) / 2
    verdict = is_separable(PAIR, state)
    assert isinstance(verdict, Separable)
    assert 1 <= len(verdict.terms) <= 10
    assert verify_decomposition(PAIR, verdict, state)
    tampered = Separable(tuple(
        Term(t.weight / 2, t.factors) for t in verdict.terms))
    assert not verify_decomposition(PAIR, tampered, state)


def test_classical_composites_have_no_entanglement():
    for dims, count in [((2, 2), 4), ((2, 3), 6)]:
        parties = [classical_simplex(n) for n in dims]
        vertices = max_tensor(parties).vertices
        assert len(vertices) == count
        assert set(vertices) == set(min_tensor(parties).realization.generators)
        assert separable_hull_equals(parties, vertices)
        separable, entangled = classify_vertices(parties, vertices)
        assert not entangled
        assert all(verify_decomposition(parties, v, x) for x, v in separable)


def test_gbit_composite_admits_entanglement():
    vertices = max_tensor(PAIR).vertices
    separable, entangled = classify_vertices(PAIR, vertices)
    assert (len(vertices), len(separable), len(entangled)) == (24, 16, 8)
    assert set(x for x, _ in separable) == set(min_tensor(PAIR).realization.generators)
    products = [kron_all([a, b]) for a in GBIT.generators for b in GBIT.generators]
    for x, verdict in entangled:
        assert isinstance(verdict, Entangled)
        assert verdict.verdict == "entangled"
        assert verdict.margin == -1
        assert verdict.witness.space_label == tensor_label(PAIR) == "tensor(gbit, gbit)"
        assert verify_witness(PAIR, verdict.witness, x)
        assert all(verdict.witness.coords.dot(p) >= 0 for p in products)
        assert verdict.witness.coords.dot(x) < 0
        assert not verify_witness(PAIR, verdict.witness, products[0])


def test_separable_set_is_convex():
    rng = random.Random(0)
    minimal = min_tensor(PAIR).realization
    for _ in range(100):
        a, b = random_state(minimal, rng), random_state(minimal, rng)
        midpoint = (a + b) / 2
        verdict = is_separable(PAIR, midpoint)
        assert isinstance(verdict, Separable)
        assert verify_decomposition(PAIR, verdict, midpoint)


def test_three_parties():
    bit = classical_simplex(2)
    parties = [GBIT, bit, bit]
    state = kron_all([[0, 0, 1], ["1/3", "2/3"], [1, 0]])
    verdict = is_separable(parties, state)
    assert isinstance(verdict, Separable)
    assert len(verdict.terms) == 1
    assert verify_decomposition(parties, verdict, state)


def test_errors():
    with pytest.raises(DomainError):
        is_separable([], [1])
    with pytest.raises(DimensionMismatch):
        is_separable(PAIR, [0, 0, 1])
    with pytest.raises(NormalizationError):
        is_separable(PAIR, [0] * 9)
    with pytest.raises(DimensionMismatch):
        verify_witness(PAIR, Functional([1, 0]), [0] * 8 + [1])


def test_two_term_classical_mixture():
    bit = classical_simplex(2)
    g1, g2 = bit.generators
    state = (kron(g1, g1) + kron(g2, g2)) / 2
    verdict = is_separable([bit, bit], state)
    assert isinstance(verdict, Separable)
    assert sorted(verdict.terms, key=lambda t: t.factors) == [
        Term(Fraction(1, 2), (g2, g2)), Term(Fraction(1, 2), (g1, g1))]


def test_trivial_functionals_are_not_witnesses():
    state = kron([0, 0, 1], [1, 1, 1])
    unit = Functional(kron([0, 0, 1], [0, 0, 1]))
    assert not verify_witness(PAIR, unit, state)
    assert not verify_witness(PAIR, Functional([0] * 9), state)


def test_verdicts_are_deterministic():
    rng = random.Random(13)
    minimal = min_tensor(PAIR).realization
    states = [random_state(minimal, rng) for _ in range(5)]
    states += [v for v in max_tensor(PAIR).vertices if v not in set(minimal.generators)][:3]
    for state in states:
        first, second = is_separable(PAIR, state), is_separable(PAIR, state)
        assert first == second
        if isinstance(first, Separable):
            assert [t.factors for t in first.terms] == [t.factors for t in second.terms]
        else:
            assert first.witness.coords == second.witness.coords
