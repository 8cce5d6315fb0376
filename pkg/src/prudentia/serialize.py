"""JSON encoding for databases, rankings, matrices, yield models and reports."""

from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any, Mapping

from .core import Database, Ranking, car_list, parse_car, to_fraction
from .engine import PairwiseMatrix, SimilarityMatrix
from .errors import NotCAR

SCHEMA = "prudentia/1"


def fmt_rational(q: Fraction) -> str:
    return str(q)


def fmt_float(x: float) -> float:
    return float(f"{x:.12g}")


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(_key(a) for a in k)
    if isinstance(k, Fraction):
        return fmt_rational(k)
    if isinstance(k, enum.Enum):
        return str(k.value)
    return str(k)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return fmt_rational(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, Database):
        return dump_database(obj)
    if isinstance(obj, Ranking):
        return dump_ranking(obj)
    if isinstance(obj, SimilarityMatrix):
        return dump_similarity(obj)
    if isinstance(obj, PairwiseMatrix):
        return dump_pairwise(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Mapping):
        return {_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(a) for a in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((to_jsonable(a) for a in obj), key=lambda a: json.dumps(a, sort_keys=True))
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(payload: Mapping[str, Any]) -> str:
    body = {"schema": SCHEMA, **to_jsonable(payload)}
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- databases and rankings -------------------------------------------------


def dump_database(J: Database) -> dict:
    return {"counts": {k: fmt_rational(v) for k, v in J.items()}}


def load_database(obj: Mapping) -> Database:
    if "counts" not in obj:
        raise ValueError('database JSON needs a "counts" object')
    return Database({k: to_fraction(v) for k, v in obj["counts"].items()})


def dump_ranking(R: Ranking) -> dict:
    out: dict = {"domain": list(R.domain), "pairs": sorted([list(p) for p in R.pairs])}
    try:
        out["car"] = car_list(R)
    except NotCAR:
        pass
    return out


def load_ranking(obj: Mapping) -> Ranking:
    if "car" in obj and "pairs" not in obj:
        return parse_car(obj["car"])
    return Ranking(obj["domain"], (tuple(p) for p in obj["pairs"]))


# --- matrices -----------------------------------------------------------------


def dump_similarity(v: SimilarityMatrix) -> dict:
    return {
        "eventualities": list(v.eventualities),
        "case_types": list(v.case_types),
        "v": [[fmt_rational(a) for a in v.rows[x]] for x in v.eventualities],
    }


def load_similarity(obj: Mapping) -> SimilarityMatrix:
    for key in ("eventualities", "case_types", "v"):
        if key not in obj:
            raise ValueError(f'similarity matrix JSON needs "{key}"')
    return SimilarityMatrix(obj["eventualities"], obj["case_types"], obj["v"])


def dump_pairwise(vp: PairwiseMatrix) -> dict:
    out = {
        "eventualities": list(vp.eventualities),
        "case_types": list(vp.case_types),
        "rows": [{"pair": [x, y], "v": [fmt_rational(a) for a in vp.row(x, y)]} for x, y in vp.upper_pairs() if (x, y) in vp.rows],
    }
    if vp.free_case is not None:
        out["free_case"] = vp.free_case
    return out


def load_pairwise(obj: Mapping) -> PairwiseMatrix:
    for key in ("eventualities", "case_types", "rows"):
        if key not in obj:
            raise ValueError(f'pairwise matrix JSON needs "{key}"')
    rows = {(r["pair"][0], r["pair"][1]): r["v"] for r in obj["rows"]}
    return PairwiseMatrix(obj["eventualities"], obj["case_types"], rows, obj.get("free_case"))


def load_matrix(obj: Mapping):
    """A similarity matrix (key "v") or a pairwise matrix (key "rows")."""
    if "v" in obj:
        return load_similarity(obj)
    if "rows" in obj:
        return load_pairwise(obj)
    raise ValueError('matrix JSON needs either "v" (similarity) or "rows" (pairwise)')


# --- yield models ---------------------------------------------------------------


def dump_model(model) -> dict:
    return {
        "dates": [fmt_rational(d) for d in model.dates],
        "case_types": list(model.case_types),
        "rows": [
            {"pair": [fmt_rational(x), fmt_rational(y)], "v": [fmt_rational(a) for a in model.v(x, y)]}
            for i, x in enumerate(model.dates)
            for y in model.dates[i + 1:]
        ],
    }


def load_model(obj: Mapping):
    from .finance import YieldCurveModel

    for key in ("dates", "case_types", "rows"):
        if key not in obj:
            raise ValueError(f'yield model JSON needs "{key}"')
    rows = {(to_fraction(r["pair"][0]), to_fraction(r["pair"][1])): r["v"] for r in obj["rows"]}
    return YieldCurveModel.from_rows(obj["dates"], obj["case_types"], rows)


def load_observations(obj: Mapping):
    """Labelled observations, grouped by unordered pair.

    Accepts ``{"observations": [{"database", "pair", "sign"}]}`` or
    ``{"rankings": [{"database", "ranking"}]}``; either form needs
    ``"eventualities"`` and ``"case_types"``.
    """
    from .representation import LabeledObservation

    for key in ("eventualities", "case_types"):
        if key not in obj:
            raise ValueError(f'observation JSON needs "{key}"')
    xs = sorted(obj["eventualities"])
    groups: dict[tuple[str, str], list] = {}
    if "observations" in obj:
        for o in obj["observations"]:
            x, y = o["pair"]
            s = int(o["sign"])
            if x > y:
                x, y, s = y, x, -s
            groups.setdefault((x, y), []).append(LabeledObservation(load_database(o["database"]), (x, y), s))
    elif "rankings" in obj:
        for item in obj["rankings"]:
            J = load_database(item["database"])
            R = load_ranking(item["ranking"])
            for i, x in enumerate(xs):
                for y in xs[i + 1:]:
                    s = 1 if R.strict(x, y) else -1 if R.strict(y, x) else 0
                    groups.setdefault((x, y), []).append(LabeledObservation(J, (x, y), s))
    else:
        raise ValueError('observation JSON needs "observations" or "rankings"')
    return xs, list(obj["case_types"]), groups
