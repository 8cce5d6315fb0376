"""Command-line front end.

Exit codes: 0 when the check passes (axioms hold, prudent, no findings),
1 when it fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Any, Callable, Sequence

from . import serialize as ser
from .arrangements import (
    build_arrangement,
    count_regions_mobius,
    count_regions_rank,
    enumerate_chambers,
    intersection_poset,
)
from .axioms import (
    AxiomReport,
    Verdict,
    check_2_diversity,
    check_archimedean,
    check_combination,
    check_completeness,
    check_conditional_2_diversity,
    check_k_diversity,
    check_partial_3_diversity,
    check_transitivity,
    default_sample,
)
from .config import RunConfig, load_config
from .core import RankingFamily
from .engine import PairwiseMatrix, SimilarityMatrix, pairwise_from_global
from .errors import PrudentiaError
from .finance import bond_price, check_no_arbitrage
from .representation import (
    assemble_global_matrix,
    check_uniqueness_equivalence,
    complexity_table,
    fit_separating_hyperplane,
    test_prudence,
)

SCHEMA_HINTS = {
    "matrix": '{"eventualities": [...], "case_types": [...], "v": [["p/q", ...], ...]} or a pairwise matrix',
    "pairwise": '{"eventualities": [...], "case_types": [...], "rows": [{"pair": ["x", "y"], "v": ["p/q", ...]}]}',
    "rankings": '{"eventualities": [...], "case_types": [...], "observations": [{"database": {"counts": {...}}, "pair": ["x", "y"], "sign": 1}]}',
    "model": '{"dates": ["0", "1", ...], "case_types": [...], "rows": [{"pair": ["0", "1"], "v": ["p/q", ...]}]}',
    "database": '{"counts": {"<case type>": "p/q"}}',
}


class InputError(Exception):
    pass


def _read_json(path: str, kind: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}\nexpected {kind} JSON: {SCHEMA_HINTS[kind]}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON ({exc.msg})\nexpected {kind} JSON: {SCHEMA_HINTS[kind]}") from None


def _load(path: str, kind: str, loader: Callable[[Any], Any]) -> Any:
    obj = _read_json(path, kind)
    try:
        return loader(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}\nexpected {kind} JSON: {SCHEMA_HINTS[kind]}") from None


def _text(payload: Any, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{prefix}{k}:")
                lines.extend(_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)):
                lines.append(f"{prefix}-")
                lines.extend(_text(item, prefix + "  "))
            else:
                lines.append(f"{prefix}- {json.dumps(item, ensure_ascii=False)}")
    return lines


def _emit(payload: dict, cfg: RunConfig, out_path: str | None, summary: str | None = None) -> None:
    text = ser.dumps(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if cfg.output == "text":
        body = json.loads(text)
        lines = ([summary] if summary else []) + _text(body)
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------------


def cmd_check_axioms(args, cfg: RunConfig) -> tuple[dict, int]:
    matrix = _load(args.matrix, "matrix", ser.load_matrix)
    if isinstance(matrix, SimilarityMatrix):
        family = RankingFamily.from_matrix(matrix)
        vp = pairwise_from_global(matrix)
    else:
        family = RankingFamily.from_pairwise(matrix)
        vp = matrix
    sample = default_sample(family.case_types, cfg.max_entry, cfg.max_denominator, cfg.n_random, cfg.seed)
    rng = random.Random(cfg.seed)
    n_pairs = args.samples if args.samples is not None else cfg.n_random
    pairs = [(rng.choice(sample), rng.choice(sample)) for _ in range(n_pairs)]
    reports: list[AxiomReport] = [
        check_transitivity(family, sample),
        check_completeness(family, sample),
        check_combination(family, pairs, seed=cfg.seed),
        _archimedean_probe(family, sample, rng),
        check_2_diversity(vp),
        check_conditional_2_diversity(vp),
        check_partial_3_diversity(vp),
    ]
    if args.k is not None:
        reports.append(check_k_diversity(vp, args.k))
    code = 0 if all(r.ok for r in reports) else 1
    return {"command": "check-axioms", "reports": reports}, code


def _archimedean_probe(family: RankingFamily, sample, rng: random.Random) -> AxiomReport:
    xs = family.eventualities
    for J in sample:
        R = family(J)
        for x in xs:
            for y in xs:
                if R.strict(x, y):
                    I = rng.choice(sample)
                    return check_archimedean(family, I, J, x, y, k_max=64)
    return AxiomReport("A3", Verdict.HOLDS_ON_SAMPLE, details={"note": "no strict comparison in the sample"})


def cmd_fit(args, cfg: RunConfig) -> tuple[dict, int]:
    xs, case_types, groups = _load(args.rankings, "rankings", ser.load_observations)
    rows = {}
    for pair in sorted(groups):
        try:
            rows[pair] = fit_separating_hyperplane(groups[pair], case_types)
        except PrudentiaError as exc:
            payload = {"command": "fit", "error": type(exc).__name__, "pair": list(pair), "message": str(exc)}
            if getattr(exc, "witness", None) is not None:
                payload["witness"] = exc.witness
                payload["basis"] = list(exc.basis)
            return payload, 1
    vp = PairwiseMatrix(xs, case_types, rows)
    return {"command": "fit", "pairwise": vp}, 0


def cmd_prudence(args, cfg: RunConfig) -> tuple[dict, int]:
    vp = _load(args.pairwise, "pairwise", ser.load_pairwise)
    try:
        verdict = test_prudence(vp)
    except PrudentiaError as exc:
        return {"command": "prudence", "prudent": False, "error": type(exc).__name__, "witness": getattr(exc, "witness", None)}, 1
    payload = {
        "command": "prudence",
        "prudent": verdict.prudent,
        "scalars": verdict.scalars,
        "witness": verdict.witness,
    }
    return payload, 0 if verdict.prudent else 1


def cmd_chambers(args, cfg: RunConfig) -> tuple[dict, int]:
    vp = _load(args.pairwise, "pairwise", ser.load_pairwise)
    subset = args.subset.split(",") if args.subset else list(vp.eventualities)
    arr = build_arrangement(vp, subset, args.ambient)
    poset = intersection_poset(arr, cfg.max_dim)
    chambers = enumerate_chambers(arr, cfg.max_dim, cfg.max_hyperplanes)
    payload: dict = {
        "command": "chambers",
        "ambient": arr.ambient.value,
        "subset": list(arr.eventualities),
        "hyperplanes": len(arr),
        "count": len(chambers),
        "count_mobius": count_regions_mobius(poset),
        "count_rank": count_regions_rank(arr, cfg.max_dim, cfg.max_hyperplanes),
        "mobius": sorted(poset.mobius.values(), reverse=True),
        "transitive": sum(1 for c in chambers if c.ranking is not None and c.ranking.is_transitive()),
    }
    if args.list:
        payload["chambers"] = [
            {"sign_vector": list(c.sign_vector), "witness": list(c.witness), "car": list(c.car) if c.car else None}
            for c in chambers
        ]
    return payload, 0


def cmd_assemble(args, cfg: RunConfig) -> tuple[dict, int]:
    vp = _load(args.pairwise, "pairwise", ser.load_pairwise)
    try:
        v = assemble_global_matrix(vp, args.base)
    except PrudentiaError as exc:
        return {
            "command": "assemble",
            "error": type(exc).__name__,
            "triple": getattr(exc, "triple", None),
            "residual": getattr(exc, "residual", None),
        }, 1
    return {"command": "assemble", "matrix": v}, 0


def cmd_uniq(args, cfg: RunConfig) -> tuple[dict, int]:
    u = _load(args.u, "matrix", ser.load_similarity)
    v = _load(args.v, "matrix", ser.load_similarity)
    try:
        res = check_uniqueness_equivalence(u, v)
    except PrudentiaError as exc:
        return {"command": "uniq", "equivalent": None, "error": type(exc).__name__, "message": str(exc)}, 1
    if res is None:
        return {"command": "uniq", "equivalent": False}, 1
    return {"command": "uniq", "equivalent": True, "lambda": res[0], "beta": res[1]}, 0


def cmd_yield_curve(args, cfg: RunConfig) -> tuple[dict, int]:
    model = _load(args.model, "model", ser.load_model)
    D = _load(args.database, "database", ser.load_database)
    prices = {ser.fmt_rational(x): bond_price(model, x, D) for x in model.dates}
    return {"command": "yield-curve", "prices": prices}, 0


def cmd_arbitrage_scan(args, cfg: RunConfig) -> tuple[dict, int]:
    model = _load(args.model, "model", ser.load_model)
    findings = check_no_arbitrage(model)
    return {"command": "arbitrage-scan", "findings": findings}, 1 if findings else 0


def cmd_complexity(args, cfg: RunConfig) -> tuple[dict, int]:
    main, gsii = complexity_table(args.m, args.n)
    return {"command": "complexity", "m": args.m, "n": args.n, "main": main, "gsii": gsii, "summary": f"{main} vs {gsii}"}, 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prudentia", description="Case-based plausibility rankings: axioms, arrangements, prudence.")
    p.add_argument("--format", choices=["json", "text"], default=None, help="report format (default json)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-axioms", help="check A0-A3 and the diversity conditions")
    s.add_argument("--matrix", required=True)
    s.add_argument("--k", type=int, choices=[2, 3, 4], default=None)
    s.add_argument("--samples", type=int, default=None, help="number of sampled database pairs for A2")
    s.add_argument("--seed", type=int, default=None, dest="sub_seed")
    s.set_defaults(func=cmd_check_axioms)

    s = sub.add_parser("fit", help="fit a pairwise matrix to labelled rankings")
    s.add_argument("--rankings", required=True)
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("prudence", help="Jacobi prudence test")
    s.add_argument("--pairwise", required=True)
    s.set_defaults(func=cmd_prudence)

    s = sub.add_parser("chambers", help="count and list ranking chambers")
    s.add_argument("--pairwise", required=True)
    s.add_argument("--subset", default=None, help="comma-separated eventualities")
    s.add_argument("--ambient", choices=["positive", "full"], default="positive")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_chambers)

    s = sub.add_parser("assemble", help="assemble a similarity matrix from Jacobi rows")
    s.add_argument("--pairwise", required=True)
    s.add_argument("--base", default=None)
    s.set_defaults(func=cmd_assemble)

    s = sub.add_parser("uniq", help="test u = lam v + beta")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s.set_defaults(func=cmd_uniq)

    s = sub.add_parser("yield-curve", help="bond prices for a database")
    s.add_argument("--model", required=True)
    s.add_argument("--database", required=True)
    s.set_defaults(func=cmd_yield_curve)

    s = sub.add_parser("arbitrage-scan", help="list arbitrage triples")
    s.add_argument("--model", required=True)
    s.set_defaults(func=cmd_arbitrage_scan)

    s = sub.add_parser("complexity", help="operation counts of the two row conditions")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_complexity)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "sub_seed", None)
    seed = seed if seed is not None else args.seed
    try:
        cfg = load_config({"seed": seed, "output": args.format})
    except (OSError, ValueError, TypeError) as exc:
        sys.stderr.write(f"prudentia: bad configuration: {exc}\n")
        return 2
    try:
        payload, code = args.func(args, cfg)
    except InputError as exc:
        sys.stderr.write(f"prudentia: {exc}\n")
        return 2
    except PrudentiaError as exc:
        sys.stderr.write(f"prudentia: {type(exc).__name__}: {exc}\n")
        return 2
    summary = payload.get("summary") if isinstance(payload, dict) else None
    _emit(payload, cfg, args.out, summary)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
