"""JSON population/sampler files and the plain-text tuple stream.

Population file::

    {"size": 3, "weights": ["1/2", "1/3", "1/6"] | "classical",
     "labels": ["a", "b", "c"], "variables": {"X": ["0", "1/2", "7"]}}

Sampler file::

    {"n": 2, "population_size": 3,
     "experiment": {"weights": [...]} | {"uniform": 9},
     "table": [[0, 0], [0, 1], ...]}

Tuple stream: one tuple per line, comma-separated 0-based indices, no
whitespace.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .measure import (
    FinitePopulationSpace,
    RandomVariable,
    ShapeError,
    format_rational,
    make_classical,
    parse_rational,
)
from .sampler import FiniteExperimentSpace, FiniteSampler, uniform_experiment

__all__ = [
    "FormatError",
    "population_from_dict",
    "population_to_dict",
    "load_population",
    "sampler_from_dict",
    "sampler_to_dict",
    "load_sampler",
    "dump_sampler",
    "read_tuples",
    "write_tuples",
    "format_tuple",
    "parse_tuple",
]


class FormatError(ValueError):
    """A file is structurally wrong (missing keys, wrong types)."""


def _load_json(path):
    text = Path(path).read_text()
    return json.loads(text)


def _require(d, key, what):
    if not isinstance(d, dict):
        raise FormatError(f"{what} must be a JSON object")
    if key not in d:
        raise FormatError(f"{what} is missing required key {key!r}")
    return d[key]


def _int(v, what):
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"{what} must be an integer, got {v!r}")
    return v


def _rationals(seq, what) -> tuple[Fraction, ...]:
    if not isinstance(seq, list):
        raise FormatError(f"{what} must be a list")
    return tuple(parse_rational(v) for v in seq)


def population_from_dict(d) -> tuple[FinitePopulationSpace, dict[str, RandomVariable]]:
    N = _int(_require(d, "size", "population"), "size")
    weights = _require(d, "weights", "population")
    labels = d.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise FormatError("labels must be a list of strings")
    if weights == "classical":
        space = make_classical(N, labels)
    else:
        w = _rationals(weights, "weights")
        if len(w) != N:
            raise ShapeError(f"population size is {N} but {len(w)} weights were given")
        space = FinitePopulationSpace(w, None if labels is None else tuple(labels))
    variables = {}
    raw = d.get("variables", {})
    if not isinstance(raw, dict):
        raise FormatError("variables must be an object mapping names to value lists")
    for name, values in raw.items():
        X = RandomVariable(_rationals(values, f"variable {name!r}"))
        if len(X) != N:
            raise ShapeError(f"variable {name!r} has {len(X)} values for {N} elements")
        variables[name] = X
    return space, variables


def population_to_dict(space: FinitePopulationSpace, variables=None) -> dict:
    d = {"size": space.size,
         "weights": "classical" if space.is_classical
         else [format_rational(w) for w in space.weights]}
    if space.labels is not None:
        d["labels"] = list(space.labels)
    if variables:
        d["variables"] = {k: [format_rational(v) for v in X.values] for k, X in variables.items()}
    return d


def load_population(path):
    return population_from_dict(_load_json(path))


def sampler_from_dict(d) -> FiniteSampler:
    n = _int(_require(d, "n", "sampler"), "n")
    N = _int(_require(d, "population_size", "sampler"), "population_size")
    exp = _require(d, "experiment", "sampler")
    if isinstance(exp, dict) and "uniform" in exp:
        experiment = uniform_experiment(_int(exp["uniform"], "experiment.uniform"))
    else:
        experiment = FiniteExperimentSpace(_rationals(_require(exp, "weights", "experiment"),
                                                      "experiment.weights"))
    table = _require(d, "table", "sampler")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise FormatError("table must be a list of index lists")
    rows = tuple(tuple(_int(i, "table entry") for i in r) for r in table)
    return FiniteSampler(experiment, n, rows, N)


def sampler_to_dict(s: FiniteSampler) -> dict:
    exp = s.experiment
    return {
        "n": s.n,
        "population_size": s.population_size,
        "experiment": {"uniform": exp.size} if exp.is_uniform
        else {"weights": [format_rational(w) for w in exp.weights]},
        "table": [list(t) for t in s.table],
    }


def load_sampler(path) -> FiniteSampler:
    return sampler_from_dict(_load_json(path))


def dump_sampler(s: FiniteSampler, path) -> None:
    Path(path).write_text(json.dumps(sampler_to_dict(s), separators=(",", ":")) + "\n")


def format_tuple(t) -> str:
    return ",".join(str(a) for a in t)


def parse_tuple(line: str) -> tuple[int, ...]:
    parts = line.split(",")
    if not all(p.isdigit() for p in parts):
        raise FormatError(f"bad tuple line {line!r}; expected comma-separated indices")
    return tuple(int(p) for p in parts)


def write_tuples(tuples, path) -> None:
    with open(path, "w") as fh:
        for t in tuples:
            fh.write(format_tuple(t))
            fh.write("\n")


def read_tuples(path):
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                yield parse_tuple(line)
            except FormatError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from None
