"""Reading and writing MatroidSpec JSON documents."""

import json
from functools import cache
from importlib import resources
from pathlib import Path

import jsonschema

from . import matroid as mm
from .bits import elements_of
from .errors import ParseError, ValidationError

CORPUS = ("u24", "k4", "k4e", "cube6", "cube8", "cube16", "r10", "mk5dual")


@cache
def schema():
    return json.loads(resources.files("matro").joinpath("data/spec.schema.json").read_text())


def corpus_path(name):
    return resources.files("matro").joinpath(f"data/{name}.json")


def resolve(path_or_name):
    """A filesystem path, or a corpus name such as ``r10`` when no such file exists."""
    p = Path(path_or_name)
    if p.exists():
        return p
    stem = p.name.removesuffix(".json")
    if stem in CORPUS:
        return corpus_path(stem)
    return p


def parse_text(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", e.lineno, e.colno) from None
    validate(doc)
    return doc


def validate(doc):
    v = jsonschema.Draft202012Validator(schema())
    err = jsonschema.exceptions.best_match(v.iter_errors(doc))
    if err is not None:
        where = "/".join(str(x) for x in err.absolute_path) or "<root>"
        raise ValidationError(f"spec does not match the schema at {where}: {err.message}")


def build(doc):
    kind = doc["kind"]
    if kind == "bases":
        M = mm.from_bases(doc["n"], doc["r"], doc["bases"])
    elif kind == "nonbases":
        M = mm.from_nonbases(doc["n"], doc["r"], doc["nonbases"])
    elif kind == "circuits":
        M = mm.from_circuits(doc["n"], doc["circuits"])
    elif kind == "graph":
        M = mm.from_graph(doc["vertices"], doc["edges"])
    elif kind == "vectors":
        M = mm.from_vectors(doc["matrix"])
    else:
        M = mm.uniform(doc["r"], doc["n"])
    return M.dual() if doc.get("dualize") else M


def load(path_or_name):
    """Return ``(name, matroid)`` for a spec file or corpus name."""
    p = resolve(path_or_name)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path_or_name}: {e.strerror}") from None
    doc = parse_text(text)
    return doc.get("name", Path(str(p)).stem), build(doc)


def to_spec(M, name="matroid"):
    """Bases-kind document for M (1-based labels)."""
    return {
        "name": name,
        "kind": "bases",
        "n": M.n,
        "r": M.r,
        "bases": [[e + 1 for e in elements_of(b)] for b in M.bases],
    }


def dumps(M, name="matroid"):
    return json.dumps(to_spec(M, name), indent=2) + "\n"
