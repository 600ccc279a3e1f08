"""
Composite systems built from party state spaces.

Three constructions are available:

* juxtaposition, the Cartesian product with block coordinates, whose dual
  tuples add up (a dual tuple vanishes only when every factor does);
* the minimal tensor composite, the convex hull of all product states;
* the maximal tensor composite, every normalized point on which all products
  of party effects are nonnegative.

In both tensor composites the product embedding is the Kronecker product of
the party states, and simple functionals (Kronecker products of party
functionals) evaluate on product states as the product of the factor values.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce
from itertools import product
from typing import Optional
import logging
import math

from convexcomp.effects import Functional, dual_basis, evaluate, random_functional
from convexcomp.errors import (
    DimensionMismatch, DomainError, FactorizationError, MembershipError,
    RankDeficiencyError)
from convexcomp.lp import HRep, hrep_contains, vertex_enumerate
from convexcomp.rationals import (
    RMat, RVec, kron_all, rank, solve_linear, span_dim, vsum)
from convexcomp.statespace import (
    StateSpace, effect_cone_rays, extreme_points, make_state_space, membership)

log = logging.getLogger(__name__)


class Mode(Enum):
    JUXTAPOSE = "juxtapose"
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class Composite:
    """
    A composite of `parties`. Juxtaposition and minimal composites carry a
    generator `realization`, the maximal composite carries an `hrep` and
    computes its vertices on first access.
    """
    parties: tuple
    mode: Mode
    realization: Optional[StateSpace] = None
    hrep: Optional[HRep] = None

    @property
    def label(self):
        return "{0}({1})".format(
            self.mode.value, ", ".join(p.label for p in self.parties))

    @property
    def is_tensor(self):
        return self.mode is not Mode.JUXTAPOSE

    @property
    def party_dims(self):
        return [p.ambient_dim for p in self.parties]

    @property
    def ambient_dim(self):
        if self.is_tensor:
            return math.prod(self.party_dims)
        return sum(self.party_dims)

    @property
    def unit_effect(self):
        if self.is_tensor:
            return kron_all([p.unit_effect for p in self.parties])
        return self.realization.unit_effect

    @cached_property
    def vertices(self):
        if self.mode is Mode.MAX:
            return vertex_enumerate(self.hrep)
        return extreme_points(self.realization)


def _parties(parties):
    parties = tuple(parties)
    if not parties:
        raise DomainError("a composite needs at least one party")
    return parties


def _tensor(c):
    if not c.is_tensor:
        raise DomainError(
            "{0} is a juxtaposition, it has no product embedding".format(c.label))


def _check_states(c, states):
    states = [RVec(s) for s in states]
    if len(states) != len(c.parties):
        raise DimensionMismatch(
            "{0} parties but {1} states".format(len(c.parties), len(states)))
    for j, (party, state) in enumerate(zip(c.parties, states)):
        if not membership(party, state):
            raise MembershipError(
                "states[{0}] is not a state of {1!r}".format(j, party.label))
    return states


def _check_functionals(c, functionals):
    functionals = list(functionals)
    if len(functionals) != len(c.parties):
        raise DimensionMismatch(
            "{0} parties but {1} functionals".format(
                len(c.parties), len(functionals)))
    for j, (party, f) in enumerate(zip(c.parties, functionals)):
        if f.dim != party.ambient_dim:
            raise DimensionMismatch(
                "functionals[{0}] has dimension {1}, {2!r} has {3}".format(
                    j, f.dim, party.label, party.ambient_dim))
    return functionals


def juxtapose(parties):
    """
    Cartesian product of the parties in block coordinates.

    The unit effect is the concatenation of the party units divided by the
    number of parties, so that it evaluates to 1 on every tuple.
    """
    parties = _parties(parties)
    generators = [
        reduce(RVec.concat, tuple_) for tuple_ in product(
            *(p.generators for p in parties))]
    unit = reduce(RVec.concat, (p.unit_effect for p in parties)) / len(parties)
    c = Composite(parties, Mode.JUXTAPOSE)
    realization = make_state_space(c.label, generators, unit, require_span=False)
    log.info("{0}: {1} generators in dimension {2}".format(
        c.label, len(generators), len(unit)))
    return Composite(parties, Mode.JUXTAPOSE, realization)


def juxt_embed(c, states):
    if c.is_tensor:
        raise DomainError("{0} is not a juxtaposition".format(c.label))
    return reduce(RVec.concat, _check_states(c, states))


def juxt_functional(c, functionals):
    """The dual tuple: on an embedded tuple it evaluates to the sum of the factors."""
    if c.is_tensor:
        raise DomainError("{0} is not a juxtaposition".format(c.label))
    functionals = _check_functionals(c, functionals)
    return Functional(
        reduce(RVec.concat, (f.coords for f in functionals)), c.label)


def product_embed(c, states):
    """Embed a tuple of party states as their Kronecker product."""
    _tensor(c)
    return kron_all(_check_states(c, states))


@dataclass(frozen=True)
class SimpleFunctional:
    factors: tuple
    realized: Functional


def simple_functional(c, functionals):
    _tensor(c)
    functionals = tuple(_check_functionals(c, functionals))
    realized = Functional(kron_all([f.coords for f in functionals]), c.label)
    return SimpleFunctional(functionals, realized)


def _basis_tuples(c):
    return list(product(*(range(d) for d in c.party_dims)))


def _simple_basis(c):
    bases = [dual_basis(p) for p in c.parties]
    return [
        kron_all([bases[j][i].coords for j, i in enumerate(t)])
        for t in _basis_tuples(c)]


def simple_span_dim(c):
    """Dimension of the span of the simple functionals built from dual bases."""
    _tensor(c)
    return span_dim(_simple_basis(c))


def _coords(f):
    return f.coords if isinstance(f, Functional) else RVec(f)


def multilinear_extension(c, phi, probe):
    """Value at `probe` of the multilinear map given by `phi` on basis tuples."""
    probe = [_coords(f) for f in probe]
    terms = []
    for t in _basis_tuples(c):
        weight = math.prod(probe[j][i] for j, i in enumerate(t))
        if weight:
            terms.append(RVec(phi[t]) * weight)
    return vsum(terms, len(RVec(phi[_basis_tuples(c)[0]])))


def random_multilinear_map(c, target_dim, rng):
    """Random values on the dual-basis tuples, i.e. a random multilinear map."""
    return {
        t: random_functional(target_dim, rng).coords for t in _basis_tuples(c)}


def random_probe(c, rng):
    return [random_functional(p.ambient_dim, rng) for p in c.parties]


def universal_factorization(c, phi, probes=()):
    """
    The linear map on the span of simple functionals that factors `phi`.

    `phi` maps every tuple of dual-basis indices to a vector of a target
    space of dimension k. The result is the k x D matrix of the unique linear
    map sending each simple basis functional to its `phi` value; each probe
    (a tuple of party functionals) is checked against the multilinear
    extension of `phi`.
    """
    _tensor(c)
    tuples = _basis_tuples(c)
    missing = [t for t in tuples if t not in phi]
    if missing:
        raise DomainError("phi has no value for basis tuple {0}".format(missing[0]))
    targets = [RVec(phi[t]) for t in tuples]
    k = len(targets[0])
    if any(len(v) != k for v in targets):
        raise DimensionMismatch("phi values do not share one target dimension")
    basis = RMat.from_rows(_simple_basis(c), cols=c.ambient_dim)
    if rank(basis) != c.ambient_dim:
        raise RankDeficiencyError(
            "simple basis of {0} has rank {1}, expected {2}".format(
                c.label, rank(basis), c.ambient_dim))
    rows = [
        solve_linear(basis, RVec(v[r] for v in targets)) for r in range(k)]
    phi_matrix = RMat.from_rows(rows, cols=c.ambient_dim)
    for n, probe in enumerate(probes):
        functionals = [
            f if isinstance(f, Functional) else Functional(f) for f in probe]
        realized = simple_functional(c, functionals).realized.coords
        if phi_matrix.mat_vec(realized) != multilinear_extension(c, phi, functionals):
            raise FactorizationError(
                "probe {0} disagrees with the multilinear extension".format(n))
    return phi_matrix


def min_tensor(parties):
    """Convex hull of all Kronecker products of party generators."""
    parties = _parties(parties)
    generators = [
        kron_all(tuple_) for tuple_ in product(*(p.generators for p in parties))]
    unit = kron_all([p.unit_effect for p in parties])
    c = Composite(parties, Mode.MIN)
    realization = make_state_space(c.label, generators, unit)
    log.info("{0}: {1} product generators in dimension {2}".format(
        c.label, len(generators), len(unit)))
    return Composite(parties, Mode.MIN, realization)


def max_tensor(parties):
    """
    Normalized points on which every Kronecker product of party effect-cone
    rays is nonnegative.
    """
    parties = _parties(parties)
    rays = [effect_cone_rays(p) for p in parties]
    inequalities = [
        (kron_all([r.coords for r in tuple_]), 0) for tuple_ in product(*rays)]
    unit = kron_all([p.unit_effect for p in parties])
    hrep = HRep(len(unit), [(unit, 1)], inequalities)
    c = Composite(parties, Mode.MAX, hrep=hrep)
    log.info("{0}: {1} product-effect inequalities in dimension {2}".format(
        c.label, len(inequalities), len(unit)))
    return c


def contains(c, x):
    """Is `x` a state of the composite?"""
    if c.mode is Mode.MAX:
        return hrep_contains(c.hrep, x)
    return membership(c.realization, x)


def vanishes_on(f, points):
    return all(evaluate(f, p) == 0 for p in points)
