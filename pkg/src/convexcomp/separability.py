"""
Separability of composite states and entanglement witnesses.

A normalized state of the tensor ambient space is separable when it is a
convex combination of Kronecker products of party states. Since the parties
are polytopes, it is enough to look for weights on products of party
generators, which is a single exact LP. When the LP is infeasible, its
Farkas multipliers are turned into a witness: a functional that is
nonnegative on every product state and negative on the queried state.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union
import logging
import math

from tqdm import tqdm as progressbar

from convexcomp.effects import Functional, evaluate
from convexcomp.errors import (
    CertificateError, DimensionMismatch, DomainError, NormalizationError)
from convexcomp.lp import Infeasible, feasibility
from convexcomp.rationals import RVec, fmt, kron_all, vsum
from convexcomp.statespace import membership

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Term:
    weight: Fraction
    factors: tuple


@dataclass(frozen=True)
class Separable:
    terms: tuple
    verdict = "separable"


@dataclass(frozen=True)
class Entangled:
    witness: Functional
    margin: Fraction
    verdict = "entangled"


SeparabilityVerdict = Union[Separable, Entangled]


def tensor_label(parties):
    return "tensor({0})".format(", ".join(p.label for p in parties))


def _check_state(parties, state):
    parties = list(parties)
    if not parties:
        raise DomainError("separability needs at least one party")
    state = RVec(state)
    dim = math.prod(p.ambient_dim for p in parties)
    if len(state) != dim:
        raise DimensionMismatch(
            "state has dimension {0}, the parties need {1}".format(len(state), dim))
    unit = kron_all([p.unit_effect for p in parties])
    if unit.dot(state) != 1:
        raise NormalizationError(
            "state evaluates to {0} on the unit effect, expected 1".format(
                fmt(unit.dot(state))))
    return parties, state, unit


def _products(parties):
    """Index tuples of party generators and their Kronecker products."""
    tuples = list(product(*(range(len(p.generators)) for p in parties)))
    return tuples, [
        kron_all([p.generators[i] for p, i in zip(parties, t)]) for t in tuples]


def _factor_product(parties, state):
    """
    Split `state` into one normalized vector per party if it is a Kronecker
    product, else None.
    """
    if len(parties) == 1:
        return [state]
    first, rest = parties[0], parties[1:]
    width = len(state) // first.ambient_dim
    rows = [
        RVec(state[i * width:(i + 1) * width]) for i in range(first.ambient_dim)]
    pivot = next((row for row in rows if not row.is_zero()), None)
    if pivot is None:
        return None
    j = next(j for j, x in enumerate(pivot) if x != 0)
    column = RVec(row[j] / pivot[j] for row in rows)
    if any(row != pivot * c for row, c in zip(rows, column)):
        return None
    scale = first.unit_effect.dot(column)
    if scale == 0:
        return None
    tail = _factor_product(rest, pivot * scale)
    if tail is None:
        return None
    return [column / scale] + tail


def is_separable(parties, state):
    """
    Decide separability of `state` exactly.

    A product of party states is answered with its single-term
    decomposition. Otherwise the LP has one weight per tuple of party
    generator indices. A feasible basic solution gives at most dim + 1
    nonzero weights; an infeasibility certificate gives the witness, scaled
    so that its value on the state is -1, and re-checked before it is
    returned.
    """
    parties, state, unit = _check_state(parties, state)
    factors = _factor_product(parties, state)
    if factors is not None and all(
            membership(p, f) for p, f in zip(parties, factors)):
        log.info("product state, one term")
        return Separable((Term(Fraction(1), tuple(factors)),))

    tuples, products = _products(parties)
    m, d = len(products), len(state)
    eqs = [(RVec(k[i] for k in products), state[i]) for i in range(d)]
    eqs.append((RVec([1] * m), 1))
    outcome = feasibility(eqs, [], range(m), num_vars=m)

    if not isinstance(outcome, Infeasible):
        terms = tuple(
            Term(weight, tuple(p.generators[i] for p, i in zip(parties, t)))
            for t, weight in zip(tuples, outcome.x) if weight != 0)
        log.info("separable with {0} terms".format(len(terms)))
        return Separable(terms)

    y = outcome.farkas
    coords = RVec(y[:d]) + unit * y[d]
    margin = coords.dot(state)
    witness = Functional(coords / -margin, tensor_label(parties))
    if not verify_witness(parties, witness, state):
        raise CertificateError("Farkas witness failed its re-check")
    log.info("entangled, witness margin {0}".format(fmt(evaluate(witness, state))))
    return Entangled(witness, evaluate(witness, state))


def verify_witness(parties, witness, state):
    """
    True iff `witness` is nonnegative on every product of party generators
    and strictly negative on `state`.
    """
    parties = list(parties)
    state = RVec(state)
    dim = math.prod(p.ambient_dim for p in parties)
    if witness.dim != dim or len(state) != dim:
        raise DimensionMismatch(
            "witness and state must have dimension {0}".format(dim))
    if witness.coords.dot(state) >= 0:
        return False
    for factors in product(*(p.generators for p in parties)):
        if witness.coords.dot(kron_all(factors)) < 0:
            return False
    return True


def verify_decomposition(parties, verdict, state):
    """Re-check a separable verdict without the LP."""
    parties = list(parties)
    state = RVec(state)
    weights = [t.weight for t in verdict.terms]
    if any(w < 0 for w in weights) or sum(weights) != 1:
        return False
    if len(verdict.terms) > len(state) + 1:
        return False
    for term in verdict.terms:
        if len(term.factors) != len(parties):
            return False
        for party, factor in zip(parties, term.factors):
            if len(factor) != party.ambient_dim or not membership(party, factor):
                return False
    mixture = vsum(
        [t.weight * kron_all(t.factors) for t in verdict.terms], len(state))
    return mixture == state


def separable_hull_equals(parties, candidate_vertices):
    """True iff every candidate is separable."""
    return all(
        isinstance(is_separable(parties, v), Separable)
        for v in candidate_vertices)


def classify_vertices(parties, vertices):
    """Split points into (separable, entangled) lists of (point, verdict)."""
    separable, entangled = [], []
    for v in progressbar(vertices, desc="separability", leave=False):
        verdict = is_separable(parties, v)
        if isinstance(verdict, Separable):
            separable.append((v, verdict))
        else:
            entangled.append((v, verdict))
    return separable, entangled
