"""
Convex state spaces of a single party.

A state space is the convex hull of finitely many generator points in a
rational ambient space, together with the unit effect that evaluates to 1
on every state.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging

from tqdm import tqdm as progressbar

from convexcomp.effects import Functional
from convexcomp.errors import (
    DegenerateSpanError, DimensionMismatch, DomainError, NormalizationError)
from convexcomp.lp import HRep, feasibility
from convexcomp.rationals import (
    RMat, RVec, fmt, nullspace, primitive, span_dim, vsum)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateSpace:
    label: str
    ambient_dim: int
    generators: tuple
    unit_effect: RVec

    def __str__(self):
        return "{0} (dim {1}, {2} generators)".format(
            self.label, self.ambient_dim, len(self.generators))


def make_state_space(label, generators, unit_effect, require_span=True):
    """
    Validate and build a :class:`StateSpace`.

    `require_span` is only switched off for juxtaposition composites, whose
    normalized blocks span a proper subspace of the direct sum.
    """
    generators = [RVec(g) for g in generators]
    if not generators:
        raise DomainError("state space {0!r} has no generators".format(label))
    unit_effect = RVec(unit_effect)
    d = len(unit_effect)
    for i, g in enumerate(generators):
        if len(g) != d:
            raise DimensionMismatch(
                "generators[{0}] has dimension {1}, unit_effect has {2}".format(
                    i, len(g), d))
    if unit_effect.is_zero():
        raise NormalizationError("unit_effect of {0!r} is zero".format(label))
    for i, g in enumerate(generators):
        value = unit_effect.dot(g)
        if value != 1:
            raise NormalizationError(
                "generators[{0}] evaluates to {1} on the unit effect, expected 1".format(
                    i, fmt(value)))
    if require_span and span_dim(generators) != d:
        raise DegenerateSpanError(
            "generators of {0!r} span dimension {1}, ambient dimension is {2}".format(
                label, span_dim(generators), d))
    return StateSpace(label, d, tuple(generators), unit_effect)


def classical_simplex(n):
    """The classical system with `n` perfectly distinguishable states."""
    if n < 1:
        raise DomainError("a simplex needs n >= 1, got {0}".format(n))
    basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    label = {1: "point", 2: "bit", 3: "trit"}.get(n, "simplex{0}".format(n))
    return make_state_space(label, basis, [1] * n)


def gbit_square():
    """The square bit: a square in the plane z = 1 of R^3."""
    return make_state_space(
        "gbit",
        [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]],
        [0, 0, 1])


def _in_hull(points, p):
    """Exact LP: is `p` a convex combination of `points`?"""
    if not points:
        return False
    m, d = len(points), len(p)
    eqs = [
        (RVec(g[i] for g in points), p[i]) for i in range(d)]
    eqs.append((RVec([1] * m), 1))
    return feasibility(eqs, [], range(m), num_vars=m).feasible


def membership(s, p):
    """True iff `p` lies in the convex hull of the generators of `s`."""
    p = RVec(p)
    if len(p) != s.ambient_dim:
        raise DimensionMismatch(
            "point has dimension {0}, {1!r} has ambient dimension {2}".format(
                len(p), s.label, s.ambient_dim))
    return _in_hull(list(s.generators), p)


def remove_redundant_generators(s):
    """
    Keep exactly the extreme points, in their original order.

    Duplicates are dropped first, then one LP per generator asks whether it
    lies in the hull of the remaining ones.
    """
    unique = list(dict.fromkeys(s.generators))
    kept = []
    for i, g in enumerate(progressbar(
            unique, desc="extreme points of " + s.label, leave=False,
            disable=len(unique) < 16)):
        others = unique[:i] + unique[i + 1:]
        if not _in_hull(others, g):
            kept.append(g)
    log.info("{0}: {1} of {2} generators are extreme".format(
        s.label, len(kept), len(s.generators)))
    return StateSpace(s.label, s.ambient_dim, tuple(kept), s.unit_effect)


def extreme_points(s):
    return list(remove_redundant_generators(s).generators)


def effect_cone_rays(s):
    """
    Extreme rays of the cone of functionals nonnegative on `s`.

    Every (d-1)-subset of generators of rank d-1 has a one-dimensional
    annihilator; its direction is kept, with the sign that makes it
    nonnegative on all generators, if such a sign exists. Rays are scaled to
    primitive integer vectors and returned in decreasing lexicographic order.
    """
    d = s.ambient_dim
    generators = list(dict.fromkeys(s.generators))
    rays = set()
    for subset in combinations(generators, d - 1):
        if span_dim(subset) != d - 1:
            continue
        kernel = nullspace(RMat.from_rows(subset, cols=d))
        direction = kernel[0]
        values = [direction.dot(g) for g in generators]
        if all(v >= 0 for v in values):
            rays.add(primitive(direction))
        elif all(v <= 0 for v in values):
            rays.add(primitive(-direction))
    return [
        Functional(r, s.label) for r in sorted(rays, reverse=True)]


def state_space_hrep(s):
    """Facet description: ``u.x = 1`` and ``r.x >= 0`` for every effect ray."""
    return HRep(
        s.ambient_dim,
        [(s.unit_effect, 1)],
        [(r.coords, 0) for r in effect_cone_rays(s)])


def random_state(s, rng, spread=6):
    """A random rational convex combination of the generators."""
    weights = [rng.randint(0, spread) for _ in s.generators]
    if not any(weights):
        weights[rng.randrange(len(weights))] = 1
    total = sum(weights)
    return vsum(
        [Fraction(w, total) * g for w, g in zip(weights, s.generators)],
        s.ambient_dim)
