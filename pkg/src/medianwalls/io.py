"""JSON encoding of every library object.

All rationals are written as strings (``"3"``, ``"-3/2"``) so certificates
survive serialization; integers are accepted on input.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInputError
from .kernels import CndVerdict, HierarchyVerdict, HypermetricVerdict, Kernel, MeasureDefiniteVerdict
from .l1embed import CutConeInfeasible, CutDecomposition
from .lp import FarkasCertificate
from .medianization import MedianizedSpace, cube_adjacency
from .metric import FiniteMetric, L1Points, MedianVerdict
from .rational import rat_str, to_rat
from .walls import SubdivisionResult, WallSpace


def parse_json(text: str, source="<input>"):
    """``json.loads`` with errors reported as ``source:line:column``."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{source}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_json(text, str(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _require(data, key, kind):
    if not isinstance(data, dict) or key not in data:
        raise InvalidInputError(f"{kind} JSON needs a {key!r} field")
    return data[key]


def _rats(row):
    return [rat_str(v) for v in row]


# -- metrics and points ----------------------------------------------------

def metric_to_json(M: FiniteMetric) -> dict:
    out = {}
    if M.labels is not None:
        out["labels"] = list(M.labels)
    out["dist"] = [_rats(row) for row in M.d]
    return out


def metric_from_json(data, allow_pseudo=False) -> FiniteMetric:
    dist = _require(data, "dist", "metric")
    if not isinstance(dist, list) or any(not isinstance(row, list) for row in dist):
        raise InvalidInputError("'dist' must be a list of rows")
    return FiniteMetric(dist, labels=data.get("labels"),
                        allow_pseudo=allow_pseudo or bool(data.get("allow_pseudo", False)))


def points_to_json(P: L1Points) -> dict:
    return {"dim": P.dim, "points": [_rats(p) for p in P.coords]}


def points_from_json(data) -> L1Points:
    pts = _require(data, "points", "points")
    if not isinstance(pts, list) or any(not isinstance(p, list) for p in pts):
        raise InvalidInputError("'points' must be a list of coordinate lists")
    return L1Points(pts, dim=data.get("dim"), allow_pseudo=bool(data.get("allow_pseudo", False)))


def median_verdict_to_json(v: MedianVerdict) -> dict:
    return {"is_median": v.is_median,
            "witness": list(v.witness) if v.witness is not None else None,
            "median_count": v.median_count}


# -- walls -----------------------------------------------------------------

def walls_to_json(WS: WallSpace) -> dict:
    return {"n": WS.n,
            "walls": [{"h": sorted(w.h), "weight": rat_str(w.weight)} for w in WS.walls]}


def walls_from_json(data) -> WallSpace:
    n = _require(data, "n", "wall space")
    walls = _require(data, "walls", "wall space")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InvalidInputError("'n' must be a nonnegative integer")
    if not isinstance(walls, list):
        raise InvalidInputError("'walls' must be a list")
    parsed = []
    for k, w in enumerate(walls):
        if not isinstance(w, dict) or "h" not in w or "weight" not in w:
            raise InvalidInputError(f"wall {k} needs 'h' and 'weight'")
        if not isinstance(w["h"], list) or any(not isinstance(p, int) for p in w["h"]):
            raise InvalidInputError(f"wall {k}: 'h' must be a list of point indices")
        parsed.append((w["h"], w["weight"]))
    return WallSpace(n, parsed)


def subdivision_to_json(R: SubdivisionResult) -> dict:
    return {"sequence": list(R.sequence), "partition": [sorted(b) for b in R.partition]}


def subdivision_from_json(data) -> SubdivisionResult:
    seq = _require(data, "sequence", "subdivision")
    part = _require(data, "partition", "subdivision")
    return SubdivisionResult(tuple(int(p) for p in seq), tuple(tuple(int(i) for i in b) for b in part))


def pairs_from_json(data):
    """``{"a": i, "b": j, "pairs": [[x, y], ...]}``."""
    a = _require(data, "a", "pairs")
    b = _require(data, "b", "pairs")
    pairs = _require(data, "pairs", "pairs")
    if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
        raise InvalidInputError("'pairs' must be a list of [x, y] lists")
    return int(a), int(b), [(int(x), int(y)) for x, y in pairs]


def medianized_to_json(MS: MedianizedSpace) -> dict:
    return {"walls": walls_to_json(MS.space),
            "sections": [list(s.choice) for s in MS.sections],
            "metric": metric_to_json(MS.metric),
            "iota": list(MS.iota),
            "adjacency": [{"i": e.i, "j": e.j, "wall": e.wall, "weight": rat_str(e.weight)}
                          for e in cube_adjacency(MS)]}


# -- embeddings and LP -----------------------------------------------------

def decomposition_to_json(D: CutDecomposition) -> dict:
    return {"n": D.n, "cuts": [sorted(S) for S in D.cuts], "weights": _rats(D.weights)}


def decomposition_from_json(data, n=None) -> CutDecomposition:
    cuts = _require(data, "cuts", "cut decomposition")
    weights = _require(data, "weights", "cut decomposition")
    if len(cuts) != len(weights):
        raise InvalidInputError("'cuts' and 'weights' differ in length")
    n = data.get("n", n)
    if n is None:
        raise InvalidInputError("cut decomposition needs the point count 'n'")
    return CutDecomposition(int(n), tuple(frozenset(int(p) for p in S) for S in cuts),
                            tuple(to_rat(w) for w in weights))


def farkas_to_json(C: FarkasCertificate) -> dict:
    return {"y": _rats(C.y)}


def infeasible_to_json(C: CutConeInfeasible) -> dict:
    return {"n": C.n, "pairs": [list(p) for p in C.pairs], "farkas": farkas_to_json(C.certificate)}


def infeasible_from_json(data) -> CutConeInfeasible:
    pairs = tuple(tuple(int(v) for v in p) for p in _require(data, "pairs", "certificate"))
    y = tuple(to_rat(v) for v in _require(_require(data, "farkas", "certificate"), "y", "Farkas"))
    return CutConeInfeasible(int(_require(data, "n", "certificate")), pairs, FarkasCertificate(y))


# -- kernels ---------------------------------------------------------------

def kernel_to_json(K: Kernel) -> dict:
    out = {}
    if K.labels is not None:
        out["labels"] = list(K.labels)
    out["psi"] = [_rats(row) for row in K.psi]
    if K.approximate:
        out["approximate"] = True
    return out


def kernel_from_json(data) -> Kernel:
    psi = _require(data, "psi", "kernel")
    if not isinstance(psi, list) or any(not isinstance(row, list) for row in psi):
        raise InvalidInputError("'psi' must be a list of rows")
    return Kernel(psi, labels=data.get("labels"), approximate=bool(data.get("approximate", False)))


def cnd_to_json(v: CndVerdict) -> dict:
    return {"is_cnd": v.is_cnd,
            "violation": _rats(v.violation) if v.violation is not None else None,
            "value": rat_str(v.value) if v.value is not None else None,
            "tolerance": rat_str(v.tolerance)}


def hypermetric_to_json(v: HypermetricVerdict) -> dict:
    return {"holds_at_bound": v.holds_at_bound, "bound": v.bound,
            "violation": list(v.violation) if v.violation is not None else None,
            "value": rat_str(v.value) if v.value is not None else None,
            "vectors_checked": v.checked}


def measure_to_json(v: MeasureDefiniteVerdict) -> dict:
    return {"is_measure_definite": v.is_measure_definite,
            "slack": rat_str(v.slack),
            "decomposition": decomposition_to_json(v.decomposition) if v.decomposition is not None else None,
            "certificate": infeasible_to_json(v.certificate) if v.certificate is not None else None,
            "triangle_violation": list(v.triangle_violation) if v.triangle_violation is not None else None}


def hierarchy_to_json(v: HierarchyVerdict) -> dict:
    return {"type1": v.type1, "hypermetric": v.hypermetric, "negative_type": v.negative_type,
            "sqrt_type1": v.sqrt_type1, "bound": v.bound,
            "measure_definite": measure_to_json(v.measure) if v.measure is not None else None,
            "hypermetric_detail": hypermetric_to_json(v.hyper) if v.hyper is not None else None,
            "cnd": cnd_to_json(v.cnd),
            "sqrt_measure_definite": measure_to_json(v.sqrt_measure) if v.sqrt_measure is not None else None}
