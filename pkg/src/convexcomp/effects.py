"""
Linear functionals on state spaces and their pairing with states.

Because the generators of a valid state space span the ambient space, the
dual of the space they generate is the full ambient dual, and a functional
is just a coordinate vector tagged with the label of the space it acts on.
"""

from dataclasses import dataclass
from fractions import Fraction

from convexcomp.errors import DimensionMismatch
from convexcomp.rationals import RVec


@dataclass(frozen=True)
class Functional:
    coords: RVec
    space_label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", RVec(self.coords))

    @property
    def dim(self):
        return len(self.coords)

    def __add__(self, other):
        return Functional(self.coords + other.coords, self.space_label)

    def __neg__(self):
        return Functional(-self.coords, self.space_label)

    def scale(self, factor):
        return Functional(self.coords * factor, self.space_label)

    def is_zero(self):
        return self.coords.is_zero()


def evaluate(f, p):
    """Exact pairing of a functional with a point."""
    p = RVec(p)
    if len(p) != f.dim:
        raise DimensionMismatch(
            "functional on {0!r} has dimension {1}, point has {2}".format(
                f.space_label, f.dim, len(p)))
    return f.coords.dot(p)


def _check(s, f):
    if f.dim != s.ambient_dim:
        raise DimensionMismatch(
            "functional has dimension {0}, {1!r} has ambient dimension {2}".format(
                f.dim, s.label, s.ambient_dim))


def dual_basis(s):
    """The coordinate functionals of the ambient dual of `s`."""
    d = s.ambient_dim
    return [
        Functional([1 if j == i else 0 for j in range(d)], s.label)
        for i in range(d)]


def unit_functional(s):
    return Functional(s.unit_effect, s.label)


def is_nonneg_on(s, f):
    """True iff `f` is nonnegative on every generator, hence on all of `s`."""
    _check(s, f)
    return all(evaluate(f, g) >= 0 for g in s.generators)


def random_functional(dim, rng, bound=4):
    """A seeded random functional with entries p/q, |p| <= bound, 1 <= q <= bound."""
    return Functional(
        [Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
         for _ in range(dim)])
