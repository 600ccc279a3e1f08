"""
Command-line interface.

    convexcomp info gbit --rays
    convexcomp compose gbit gbit --mode max --out gbit2.json --enumerate-vertices
    convexcomp separability gbit gbit --state state.json --out verdict.json
    convexcomp separability --composite bitbit.json --state state.json
    convexcomp witness-verify gbit gbit --witness witness.json --state state.json
    convexcomp verify-universal gbit gbit --target-dim 2 --probes 20
    convexcomp demo gbit --seed 0

Exit codes: 0 success (or separable), 1 entangled or a failed check,
2 input error, 3 internal invariant breach.
"""

from itertools import product
from pathlib import Path
import argparse
import logging
import math
import random

from tabulate import tabulate
from tqdm import tqdm as progressbar

from convexcomp import convexcomp_path
from convexcomp.composition import (
    Mode, juxt_embed, juxt_functional, juxtapose, max_tensor, min_tensor,
    product_embed, random_multilinear_map, random_probe, simple_functional,
    simple_span_dim, universal_factorization, vanishes_on)
from convexcomp.effects import Functional, evaluate, random_functional
from convexcomp.errors import (
    CertificateError, ConvexCompError, DomainError, FactorizationError)
from convexcomp.formats import (
    BUILDERS, composite_to_json, dumps, load_composite, load_functional, load_registry,
    load_state, resolve_party, verdict_to_json, write_json)
from convexcomp.rationals import fmt
from convexcomp.separability import (
    Separable, classify_vertices, is_separable, verify_decomposition,
    verify_witness)
from convexcomp.statespace import (
    classical_simplex, effect_cone_rays, extreme_points, gbit_square,
    random_state)

log = logging.getLogger(__name__)

LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
    "critical": logging.CRITICAL,
}


def party_label(parties):
    return " x ".join(p.label for p in parties)


def report(checks):
    """Print one line per check, return the exit code."""
    for check, passed, detail in checks:
        print("{0}: {1}{2}".format(
            check, "PASS" if passed else "FAIL",
            " ({0})".format(detail) if detail else ""))
    return 0 if all(passed for _, passed, _ in checks) else 1


def cmd_info(space, rays=False):
    extreme = extreme_points(space)
    cone = effect_cone_rays(space)
    print("{0}: dim {1}, {2} generators, {3} extreme, {4} effect rays".format(
        space.label, space.ambient_dim, len(space.generators), len(extreme),
        len(cone)))
    if rays:
        print(tabulate(
            [[i + 1] + [fmt(x) for x in r.coords] for i, r in enumerate(cone)],
            headers=["RAY"] + ["x{0}".format(i) for i in range(space.ambient_dim)]))
    return 0


def cmd_compose(parties, mode, out, enumerate_vertices=False):
    if not parties:
        raise DomainError("compose needs at least one party")
    composite = BUILDERS[Mode(mode)](parties)
    vertices = None
    if enumerate_vertices:
        vertices = composite.vertices
    write_json(composite_to_json(composite, vertices), out)
    print("[i] wrote {0} to {1}{2}".format(
        composite.label, out,
        "" if vertices is None else " ({0} vertices)".format(len(vertices))))
    return 0


def cmd_separability(parties, state, out=None):
    verdict = is_separable(parties, state)
    if isinstance(verdict, Separable):
        if not verify_decomposition(parties, verdict, state):
            raise CertificateError("decomposition failed its re-check")
        code = 0
    else:
        if not verify_witness(parties, verdict.witness, state):
            raise CertificateError("witness failed its re-check")
        code = 1
    data = verdict_to_json(verdict)
    print(dumps(data))
    if out:
        write_json(data, out)
    return code


def cmd_witness_verify(parties, witness, state):
    return report([("witness verified", verify_witness(parties, witness, state), "")])


def universal_checks(parties, rng, maps=1, target_dims=(2,), probes=20):
    """
    Dimension of the span of simple functionals, then factorization of
    random multilinear maps checked on random probes.
    """
    composite = min_tensor(parties)
    dims = composite.party_dims
    dim_w = simple_span_dim(composite)
    checks = [(
        "dim W = {0} = {1}".format(dim_w, "*".join(str(d) for d in dims)),
        dim_w == math.prod(dims), "")]
    passed = True
    for n in progressbar(range(maps), desc="multilinear maps", leave=False):
        k = target_dims[n % len(target_dims)]
        phi = random_multilinear_map(composite, k, rng)
        tuples = [random_probe(composite, rng) for _ in range(probes)]
        try:
            universal_factorization(composite, phi, tuples)
        except FactorizationError as e:
            log.warning(str(e))
            passed = False
    checks.append((
        "factorization on {0} random probes".format(probes), passed,
        "maps: {0}, target dims: {1}".format(
            maps, ", ".join(str(k) for k in target_dims))))
    return checks


def cmd_verify_universal(parties, target_dim=2, probes=20, seed=0):
    return report(universal_checks(
        parties, random.Random(seed), target_dims=(target_dim,), probes=probes))


def demo_classical(rng, samples=20):
    checks = []
    for dims in [(2, 2), (2, 3)]:
        parties = [classical_simplex(n) for n in dims]
        label = party_label(parties)
        products = min_tensor(parties)
        vertices = max_tensor(parties).vertices
        separable, entangled = classify_vertices(parties, vertices)
        verified = all(
            verify_decomposition(parties, verdict, v) for v, verdict in separable)
        checks.append((
            "{0} min=max".format(label),
            (not entangled and verified
             and set(vertices) == set(products.realization.generators)),
            "{0} vertices, {1}".format(
                len(vertices),
                "all separable" if not entangled else
                "{0} entangled".format(len(entangled)))))
        states = [random_state(products.realization, rng) for _ in range(samples)]
        verdicts = [is_separable(parties, s) for s in states]
        checks.append((
            "{0} random states separable".format(label),
            all(isinstance(v, Separable) and verify_decomposition(parties, v, s)
                for v, s in zip(verdicts, states)),
            "{0} samples".format(samples)))
    return checks


def demo_gbit(rng, samples=20):
    g = gbit_square()
    parties = [g, g]
    products = min_tensor(parties).realization.generators
    vertices = max_tensor(parties).vertices
    separable, entangled = classify_vertices(parties, vertices)
    checks = [(
        "{0} max vertices, {1} separable, {2} entangled".format(
            len(vertices), len(separable), len(entangled)),
        (len(vertices), len(separable), len(entangled)) == (24, 16, 8), "")]
    checks.append((
        "witnesses re-verified",
        all(verify_witness(parties, verdict.witness, v) for v, verdict in entangled),
        "{0} witnesses".format(len(entangled))))
    checks.append((
        "separable vertices are the product states",
        (set(v for v, _ in separable) == set(products)
         and all(verify_decomposition(parties, verdict, v)
                 for v, verdict in separable)),
        ""))
    midpoints = []
    for _ in range(samples if separable else 0):
        a, b = rng.choice(separable)[0], rng.choice(separable)[0]
        midpoints.append((a + b) / 2)
    checks.append((
        "midpoints of separable states separable",
        all(isinstance(is_separable(parties, m), Separable) for m in midpoints),
        "{0} samples".format(samples)))
    return checks


def demo_universal(rng, maps=20, probes=20):
    g = gbit_square()
    return universal_checks(
        [g, g], rng, maps=maps, target_dims=(1, 2, 5), probes=probes)


def interdependence_checks(parties, rng, samples=50):
    """
    The product law and the vanishing dichotomy on one party list, then
    injectivity of the product embedding on random state tuples.
    """
    label = party_label(parties)
    minimal, maximal = min_tensor(parties), max_tensor(parties)
    law = True
    for _ in range(samples):
        states = [random_state(p, rng) for p in parties]
        functionals = [random_functional(p.ambient_dim, rng) for p in parties]
        value = evaluate(
            simple_functional(minimal, functionals).realized,
            product_embed(minimal, states))
        law = law and value == math.prod(
            evaluate(f, s) for f, s in zip(functionals, states))

    juxt = juxtapose(parties)
    embedded = [
        juxt_embed(juxt, list(t))
        for t in product(*(p.generators for p in parties))]
    points = list(minimal.realization.generators) + list(maximal.vertices)
    dichotomy = True
    for j in range(len(parties)):
        zero_factor = [
            Functional([0] * p.ambient_dim) if i == j
            else random_functional(p.ambient_dim, rng)
            for i, p in enumerate(parties)]
        dichotomy = dichotomy and vanishes_on(
            simple_functional(minimal, zero_factor).realized, points)
        lone_factor = [
            Functional([1 if k == 0 else 0 for k in range(p.ambient_dim)])
            if i == j else Functional([0] * p.ambient_dim)
            for i, p in enumerate(parties)]
        dichotomy = dichotomy and not vanishes_on(
            juxt_functional(juxt, lone_factor), embedded)

    tuples = {
        tuple(random_state(p, rng) for p in parties) for _ in range(samples)}
    images = {product_embed(minimal, list(t)) for t in tuples}
    return [
        ("{0}: product law".format(label), law, "{0} samples".format(samples)),
        ("{0}: vanishing dichotomy".format(label), dichotomy,
         "{0} factor positions".format(len(parties))),
        ("{0}: embedding injective".format(label), len(images) == len(tuples),
         "{0} distinct tuples".format(len(tuples))),
    ]


def demo_interdependence(rng, samples=50):
    bit, g = classical_simplex(2), gbit_square()
    checks = []
    for parties in ([bit, bit], [g, g], [g, bit, bit]):
        checks += interdependence_checks(parties, rng, samples)
    return checks


DEMOS = {
    "classical": demo_classical,
    "gbit": demo_gbit,
    "universal": demo_universal,
    "interdependence": demo_interdependence,
}


def cmd_demo(name, seed=0):
    return report(DEMOS[name](random.Random(seed)))


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got {0}".format(text))
    return value


def seed_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected an unsigned integer, got {0}".format(text))
    return value


def parse_args(*args):
    parser = argparse.ArgumentParser(
        description="Exact convex state spaces, composites and separability.")
    parser.add_argument(
            "--spaces",
            action="store",
            type=Path,
            default=convexcomp_path("spaces.json"),
            help="JSON registry of named state spaces (default=spaces.json)."
            )
    parser.add_argument(
            "-v", "--verbosity",
            default="warning",
            choices=sorted(LEVELS, key=LEVELS.get),
            help="Logging level (default=warning)."
            )
    verbs = parser.add_subparsers(dest="verb", required=True)

    info = verbs.add_parser("info", help="Summarize a state space.")
    info.add_argument("space", help="State-space file or registered name.")
    info.add_argument(
            "--rays",
            action="store_true",
            help="Also print the effect-cone rays."
            )

    compose = verbs.add_parser("compose", help="Build and write a composite.")
    compose.add_argument("parties", nargs="*", help="Party files or names.")
    compose.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            required=True,
            help="Kind of composite."
            )
    compose.add_argument(
            "--out",
            type=Path,
            required=True,
            help="File to which the composite is written."
            )
    compose.add_argument(
            "--enumerate-vertices",
            action="store_true",
            help="Also write the extreme points (vertices) of the composite."
            )

    sep = verbs.add_parser("separability", help="Decide separability of a state.")
    sep.add_argument("parties", nargs="*", help="Party files or names.")
    sep.add_argument(
            "--composite",
            type=Path,
            default=None,
            help="Composite file whose parties are used instead."
            )
    sep.add_argument(
            "--state",
            type=Path,
            required=True,
            help="JSON file with the composite state."
            )
    sep.add_argument(
            "--out",
            type=Path,
            default=None,
            help="File to which the verdict is also written."
            )

    witness = verbs.add_parser("witness-verify", help="Check an entanglement witness.")
    witness.add_argument("parties", nargs="*", help="Party files or names.")
    witness.add_argument(
            "--composite",
            type=Path,
            default=None,
            help="Composite file whose parties are used instead."
            )
    witness.add_argument(
            "--witness",
            type=Path,
            required=True,
            help="JSON file with the witness functional, or an entangled verdict."
            )
    witness.add_argument(
            "--state",
            type=Path,
            required=True,
            help="JSON file with the composite state."
            )

    universal = verbs.add_parser(
        "verify-universal", help="Check the universal factorization.")
    universal.add_argument("parties", nargs="+", help="Party files or names.")
    universal.add_argument(
            "--target-dim",
            type=positive_int,
            default=2,
            help="Dimension of the target space (default=2)."
            )
    universal.add_argument(
            "--probes",
            type=positive_int,
            default=20,
            help="Number of random probe tuples (default=20)."
            )
    universal.add_argument(
            "--seed",
            type=seed_int,
            default=0,
            help="Random seed (default=0)."
            )

    demo = verbs.add_parser("demo", help="Run a built-in demonstration.")
    demo.add_argument("name", choices=sorted(DEMOS))
    demo.add_argument(
            "--seed",
            type=seed_int,
            default=0,
            help="Random seed (default=0)."
            )

    return parser.parse_args(*args)


def party_list(args):
    """Parties named on the command line, or those of a composite file."""
    composite = getattr(args, "composite", None)
    if composite is not None:
        if args.parties:
            raise DomainError("give either parties or --composite, not both")
        return list(load_composite(composite).parties)
    registry, base = load_registry(args.spaces)
    names = [args.space] if args.verb == "info" else args.parties
    if not names and args.verb != "compose":
        raise DomainError("no parties given")
    return [resolve_party(name, registry, base) for name in names]


def run(args):
    if args.verb == "demo":
        return cmd_demo(args.name, args.seed)

    parties = party_list(args)

    if args.verb == "info":
        return cmd_info(parties[0], args.rays)
    if args.verb == "compose":
        return cmd_compose(parties, args.mode, args.out, args.enumerate_vertices)
    if args.verb == "separability":
        return cmd_separability(parties, load_state(args.state), args.out)
    if args.verb == "witness-verify":
        return cmd_witness_verify(
            parties, load_functional(args.witness), load_state(args.state))
    return cmd_verify_universal(parties, args.target_dim, args.probes, args.seed)


def main(*args):
    args = parse_args(*args)
    logging.basicConfig(
        level=LEVELS[args.verbosity],
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return run(args)
    except ConvexCompError as e:
        log.error(str(e))
        return e.exit_code
