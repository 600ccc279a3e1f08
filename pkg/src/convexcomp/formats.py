"""
JSON readers and writers.

Every rational is written as the string "p/q" (or "p"), so files round-trip
bit-exactly. Reading errors name the offending field, and JSON syntax errors
the line.
"""

from pathlib import Path
import json

from convexcomp.composition import Mode, juxtapose, max_tensor, min_tensor
from convexcomp.effects import Functional
from convexcomp.errors import RationalFormatError, SchemaError
from convexcomp.lp import HRep
from convexcomp.rationals import RVec, fmt, rat
from convexcomp.separability import Entangled, Separable, Term
from convexcomp.statespace import classical_simplex, gbit_square, make_state_space

DEFAULT_SPACES = {
    "point": {"kind": "simplex", "n": 1},
    "bit": {"kind": "simplex", "n": 2},
    "trit": {"kind": "simplex", "n": 3},
    "quart": {"kind": "simplex", "n": 4},
    "gbit": {"kind": "gbit"},
}


def read_json(path):
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError("{0}: line {1}: {2}".format(path, e.lineno, e.msg))
    except OSError as e:
        raise SchemaError("{0}: {1}".format(path, e.strerror))


def write_json(data, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(data) + "\n")


def dumps(data):
    return json.dumps(data, indent=2, ensure_ascii=False)


def _field(data, key, field):
    if not isinstance(data, dict):
        raise SchemaError("{0}: expected an object".format(field or "document"))
    if key not in data:
        raise SchemaError("{0}: missing field {1!r}".format(field or "document", key))
    return data[key]


def _rat(value, field):
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise RationalFormatError(
            "{0}: expected a rational string, got {1!r}".format(field, value))
    try:
        return rat(value)
    except RationalFormatError as e:
        raise RationalFormatError("{0}: {1}".format(field, e))


def _vector(value, field):
    if not isinstance(value, list):
        raise SchemaError("{0}: expected a list of rationals".format(field))
    return RVec(_rat(x, "{0}[{1}]".format(field, i)) for i, x in enumerate(value))


def _vectors(value, field):
    if not isinstance(value, list):
        raise SchemaError("{0}: expected a list of vectors".format(field))
    return [_vector(v, "{0}[{1}]".format(field, i)) for i, v in enumerate(value)]


def vector_to_json(v):
    return [fmt(x) for x in v]


def state_space_to_json(s):
    return {
        "label": s.label,
        "ambient_dim": s.ambient_dim,
        "generators": [vector_to_json(g) for g in s.generators],
        "unit_effect": vector_to_json(s.unit_effect),
    }


def state_space_from_json(data, field=""):
    prefix = field + "." if field else ""
    label = _field(data, "label", field)
    if not isinstance(label, str):
        raise SchemaError("{0}label: expected a string".format(prefix))
    ambient_dim = _field(data, "ambient_dim", field)
    if not isinstance(ambient_dim, int) or isinstance(ambient_dim, bool) or ambient_dim < 1:
        raise SchemaError("{0}ambient_dim: expected a positive integer".format(prefix))
    generators = _vectors(_field(data, "generators", field), prefix + "generators")
    unit = _vector(_field(data, "unit_effect", field), prefix + "unit_effect")
    if len(unit) != ambient_dim:
        raise SchemaError(
            "{0}unit_effect: {1} entries, ambient_dim is {2}".format(
                prefix, len(unit), ambient_dim))
    return make_state_space(label, generators, unit)


def load_state_space(path):
    return state_space_from_json(read_json(path))


def write_state_space(s, path):
    write_json(state_space_to_json(s), path)


def space_from_registry(entry, name, base=Path(".")):
    kind = _field(entry, "kind", name)
    if kind == "simplex":
        return classical_simplex(_field(entry, "n", name))
    if kind == "gbit":
        return gbit_square()
    if kind == "file":
        return load_state_space(Path(base) / _field(entry, "path", name))
    raise SchemaError("{0}.kind: unknown kind {1!r}".format(name, kind))


def load_registry(path):
    """The named-space registry, or the built-in one if `path` does not exist."""
    path = Path(path)
    if not path.exists():
        return dict(DEFAULT_SPACES), Path(".")
    registry = read_json(path)
    if not isinstance(registry, dict):
        raise SchemaError("{0}: expected an object of named spaces".format(path))
    return registry, path.parent


def resolve_party(name, registry, base=Path(".")):
    """A party given as a state-space file or as a registry name."""
    if Path(name).is_file():
        return load_state_space(name)
    if name in registry:
        return space_from_registry(registry[name], name, base)
    raise SchemaError("{0!r} is neither a file nor a registered space".format(name))


def functional_to_json(f):
    return {"space": f.space_label, "coords": vector_to_json(f.coords)}


def functional_from_json(data, field=""):
    prefix = field + "." if field else ""
    space = data.get("space", "") if isinstance(data, dict) else ""
    return Functional(_vector(_field(data, "coords", field), prefix + "coords"), space)


def load_functional(path):
    """Read a functional, or the witness of an entangled verdict file."""
    data = read_json(path)
    if isinstance(data, dict) and "verdict" in data:
        verdict = verdict_from_json(data)
        if not isinstance(verdict, Entangled):
            raise SchemaError("verdict: a {0} verdict carries no witness".format(
                verdict.verdict))
        return verdict.witness
    return functional_from_json(data)


def state_from_json(data):
    if isinstance(data, dict):
        return _vector(_field(data, "state", ""), "state")
    return _vector(data, "state")


def load_state(path):
    return state_from_json(read_json(path))


def write_state(v, path):
    write_json({"state": vector_to_json(v)}, path)


def hrep_to_json(h):
    return {
        "dim": h.dim,
        "equalities": [
            {"a": vector_to_json(a), "b": fmt(b)} for a, b in h.equalities],
        "inequalities": [
            {"a": vector_to_json(a), "b": fmt(b)} for a, b in h.inequalities],
    }


def hrep_from_json(data, field="hrep"):
    def rows(key):
        value = _field(data, key, field)
        if not isinstance(value, list):
            raise SchemaError("{0}.{1}: expected a list".format(field, key))
        return [
            (_vector(_field(row, "a", "{0}.{1}[{2}]".format(field, key, i)),
                     "{0}.{1}[{2}].a".format(field, key, i)),
             _rat(_field(row, "b", "{0}.{1}[{2}]".format(field, key, i)),
                  "{0}.{1}[{2}].b".format(field, key, i)))
            for i, row in enumerate(value)]
    return HRep(_field(data, "dim", field), rows("equalities"), rows("inequalities"))


def composite_to_json(c, vertices=None):
    """
    The composite with its parties inlined: generators for juxtaposition and
    minimal composites, the H-representation (and optionally vertices) for
    the maximal one.
    """
    out = {
        "mode": c.mode.value,
        "label": c.label,
        "ambient_dim": c.ambient_dim,
        "parties": [state_space_to_json(p) for p in c.parties],
    }
    if c.realization is not None:
        out["generators"] = [vector_to_json(g) for g in c.realization.generators]
        out["unit_effect"] = vector_to_json(c.realization.unit_effect)
    if c.hrep is not None:
        out["hrep"] = hrep_to_json(c.hrep)
    if vertices is not None:
        out["vertices"] = [vector_to_json(v) for v in vertices]
    return out


BUILDERS = {
    Mode.JUXTAPOSE: juxtapose,
    Mode.MIN: min_tensor,
    Mode.MAX: max_tensor,
}


def composite_from_json(data, base=Path(".")):
    """
    Rebuild a composite from its mode and parties. Parties are inline
    state-space objects or paths relative to `base`.
    """
    mode = _field(data, "mode", "")
    try:
        mode = Mode(mode)
    except ValueError:
        raise SchemaError("mode: expected juxtapose, min or max, got {0!r}".format(mode))
    parties = _field(data, "parties", "")
    if not isinstance(parties, list):
        raise SchemaError("parties: expected a list")
    spaces = []
    for i, party in enumerate(parties):
        if isinstance(party, str):
            spaces.append(load_state_space(Path(base) / party))
        else:
            spaces.append(state_space_from_json(party, "parties[{0}]".format(i)))
    composite = BUILDERS[mode](spaces)
    if composite.hrep is not None and "hrep" in data:
        if hrep_from_json(data["hrep"]) != composite.hrep:
            raise SchemaError(
                "hrep: does not match the {0} composite of the listed parties".format(
                    mode.value))
    return composite


def load_composite(path):
    path = Path(path)
    return composite_from_json(read_json(path), path.parent)


def verdict_to_json(verdict):
    if isinstance(verdict, Separable):
        return {
            "verdict": "separable",
            "terms": [
                {"p": fmt(t.weight),
                 "factors": [vector_to_json(f) for f in t.factors]}
                for t in verdict.terms],
        }
    return {
        "verdict": "entangled",
        "witness": functional_to_json(verdict.witness),
        "margin": fmt(verdict.margin),
    }


def verdict_from_json(data):
    kind = _field(data, "verdict", "")
    if kind == "separable":
        terms = _field(data, "terms", "")
        return Separable(tuple(
            Term(_rat(_field(t, "p", "terms[{0}]".format(i)), "terms[{0}].p".format(i)),
                 tuple(_vectors(_field(t, "factors", "terms[{0}]".format(i)),
                                "terms[{0}].factors".format(i))))
            for i, t in enumerate(terms)))
    if kind == "entangled":
        return Entangled(
            functional_from_json(_field(data, "witness", ""), "witness"),
            _rat(_field(data, "margin", ""), "margin"))
    raise SchemaError("verdict: expected separable or entangled, got {0!r}".format(kind))
