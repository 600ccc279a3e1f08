"""
Exact convex state spaces, their composites, and separability certificates.
"""
from pathlib import Path

from convexcomp.composition import (
    Composite, Mode, juxt_embed, juxt_functional, juxtapose, max_tensor,
    min_tensor, product_embed, simple_functional, simple_span_dim,
    universal_factorization)
from convexcomp.effects import Functional, dual_basis, evaluate, is_nonneg_on
from convexcomp.errors import ConvexCompError
from convexcomp.lp import HRep, LpProblem, check_certificate, lp_solve, vertex_enumerate
from convexcomp.rationals import RMat, RVec, fmt, rat
from convexcomp.separability import (
    Entangled, Separable, is_separable, verify_decomposition, verify_witness)
from convexcomp.statespace import (
    StateSpace, classical_simplex, effect_cone_rays, gbit_square,
    make_state_space, membership, remove_redundant_generators)

__version__ = "0.1.dev0"


def convexcomp_path(*comps):
    return Path(__file__).parent.parent.parent.joinpath(*comps)
