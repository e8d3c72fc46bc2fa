"""JSON codecs. Rationals travel as "p/q" strings, complex entries as {"re", "im"}."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

import numpy as np

from .dist import FiniteDistribution, normalize_distribution
from .errors import MalformedInput
from .matrix import RationalMatrix
from .nptools import PartitionInstance, SubsetSumInstance
from .rational import fmt, to_fraction
from .sat import SatInstance


def dumps(obj: Any) -> str:
    """Deterministic rendering used for every emitted artifact."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _need(obj: Any, key: str):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"missing field {key!r}")
    return obj[key]


def num_to_json(x) -> Union[str, dict]:
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    z = complex(x)
    if z.imag == 0:
        return repr(float(z.real))
    return {"re": repr(float(z.real)), "im": repr(float(z.imag))}


# distributions

def dist_to_json(d: FiniteDistribution) -> dict:
    return {"pmf": [fmt(p) for p in d.probs]}


def dist_from_json(obj: Any) -> FiniteDistribution:
    raw = _need(obj, "pmf")
    if not isinstance(raw, list):
        raise MalformedInput("pmf must be a list")
    d, _ = normalize_distribution(raw)
    return d


# matrices

def _entry(x):
    if isinstance(x, dict):
        re, im = to_fraction(x.get("re", "0")), to_fraction(x.get("im", "0"))
        return re if im == 0 else complex(float(re), float(im))
    return to_fraction(x)


def matrix_from_json(obj: Any) -> Union[RationalMatrix, np.ndarray]:
    rows = _need(obj, "rows")
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise MalformedInput("rows must be a list of lists")
    vals = [[_entry(x) for x in r] for r in rows]
    if "dim" in obj and obj["dim"] != len(vals):
        raise MalformedInput("dim does not match the number of rows")
    if any(len(r) != len(vals) for r in vals):
        raise MalformedInput("matrix must be square")
    if any(isinstance(x, complex) for r in vals for x in r):
        return np.array([[complex(x) for x in r] for r in vals])
    return RationalMatrix(tuple(tuple(r) for r in vals))


def matrix_to_json(m: Union[RationalMatrix, np.ndarray]) -> dict:
    if isinstance(m, RationalMatrix):
        return {"dim": m.dim, "rows": [[fmt(x) for x in r] for r in m.rows]}
    a = np.asarray(m)
    return {"dim": int(a.shape[0]), "rows": [[num_to_json(x) for x in r] for r in a]}


# combinatorial instances

def subset_from_json(obj: Any) -> SubsetSumInstance:
    els = _need(obj, "elements")
    return SubsetSumInstance(tuple(to_fraction(e) for e in els), to_fraction(obj.get("bound", "0")),
                             obj.get("variant", "plain"), obj.get("m"),
                             obj.get("x"), obj.get("y"))


def subset_to_json(s: SubsetSumInstance) -> dict:
    out = {"elements": [fmt(e) for e in s.elements], "bound": fmt(s.bound), "variant": s.variant}
    if s.m is not None:
        out["m"] = s.m
    if s.x is not None:
        out["x"], out["y"] = fmt(s.x), fmt(s.y)
    return out


def partition_from_json(obj: Any) -> PartitionInstance:
    return PartitionInstance(tuple(to_fraction(e) for e in _need(obj, "elements")))


def sat_from_json(obj: Any) -> SatInstance:
    try:
        return SatInstance(int(_need(obj, "n_v")), tuple(tuple(c) for c in _need(obj, "clauses")))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"bad SAT instance: {exc}") from exc


def sat_to_json(inst: SatInstance) -> dict:
    return {"n_v": inst.n_v, "clauses": [list(c) for c in inst.clauses]}
