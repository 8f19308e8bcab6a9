"""
Command-line front end: python -m conegeo.main <subcommand> [inputs] [flags]

Inputs are file paths, inline JSON, or "-" for standard input. Results go
to standard output as JSON (JSON lines for geodesic and convergence);
errors go to standard error as JSON with exit code 1 for invalid input and
2 for numerical failures.
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from conegeo.codec import (
    chain_to_json,
    descriptor_from_json,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    parse_metric,
)
from conegeo.config import RESIDUAL_THRESHOLD, get_default_seed, get_log_level
from conegeo.geometry import classify_geodesic, geodesic_point, geometric_mean, hilbert_midpoint_witness, nonunique_midpoint_witness
from conegeo.metrics import convergence_table, distance, gauge, normalize_ray
from conegeo.morphisms import (
    IsometryDescriptor,
    build_isometry,
    factor_hilbert_isometry,
    factor_thompson_isometry,
    hilbert_factorization,
    linearize_isometry,
)
from conegeo.projections import orthogonal_simplex, orthogonality_chain, simplex_membership
from conegeo.verify import SUITE_NAMES, run_suites
from jordan.algebra import quadratic_rep, require_same_algebra
from jordan.errors import InvalidInputError, NumericalFailure
from jordan.models import Element
from jordan.spectral import inverse

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    "dist", "gauge", "mean", "geodesic", "classify", "witness", "convergence",
    "linearize", "factorize", "theta", "chain", "simplex", "verify",
)


def _read_source(source: str) -> Any:
    if source == "-":
        text = sys.stdin.read()
    elif os.path.isfile(source):
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise InvalidInputError(f"cannot read {source}: {str(e)}")
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"input is neither a readable file nor valid JSON: {str(e)}")


def _elements(sources: List[str], count: int) -> List[Element]:
    if len(sources) != count:
        raise InvalidInputError(f"expected {count} element input(s), got {len(sources)}")
    elements = [element_from_json(_read_source(s)) for s in sources]
    require_same_algebra(*elements)
    return elements


def _metric(args) -> str:
    return parse_metric(args.metric or "thompson")


def _threshold(args) -> float:
    if args.tol is None:
        return RESIDUAL_THRESHOLD
    if args.tol < 0:
        raise InvalidInputError(f"--tol must be non-negative, got {args.tol}")
    return args.tol


def _descriptor(args) -> IsometryDescriptor:
    if not args.inputs:
        raise InvalidInputError("expected an isometry descriptor input")
    d = descriptor_from_json(_read_source(args.inputs[0]))
    if args.metric is not None and parse_metric(args.metric) != d.metric:
        raise InvalidInputError(f"--metric {args.metric} does not match the {d.metric} descriptor")
    return d


def _normalized_map(d: IsometryDescriptor) -> Callable:
    """U_{b^-1} o f, which fixes e (the ray of e for H)"""
    f = build_isometry(d)
    b_inv = inverse(d.b)
    if d.metric == "T":
        return lambda x: quadratic_rep(b_inv, f(x))
    return lambda x: normalize_ray(quadratic_rep(b_inv, f(x).representative))


def _cmd_dist(args) -> Any:
    a, b = _elements(args.inputs, 2)
    metric = _metric(args)
    return {"metric": metric, "distance": distance(a, b, metric)}


def _cmd_gauge(args) -> Any:
    a, b = _elements(args.inputs, 2)
    return {"gauge": gauge(a, b)}


def _cmd_mean(args) -> Any:
    a, b = _elements(args.inputs, 2)
    return element_to_json(geometric_mean(a, b))


def _cmd_geodesic(args) -> Any:
    a, b = _elements(args.inputs, 2)
    if args.t is not None:
        return element_to_json(geodesic_point(a, b, args.t))
    metric = _metric(args)
    samples = args.n if args.n is not None else 11
    if samples < 2:
        raise InvalidInputError(f"geodesic sampling needs --n >= 2, got {samples}")
    rows = []
    for t in np.linspace(0.0, 1.0, samples):
        point = geodesic_point(a, b, float(t))
        rows.append({"t": float(t), "point": element_to_json(point), "distance": distance(a, point, metric)})
    return rows


def _cmd_classify(args) -> Any:
    a, b = _elements(args.inputs, 2)
    result = classify_geodesic(a, b, _metric(args))
    return {
        "metric": result.metric,
        "unique": result.unique,
        "spectrum_points": list(result.spectrum_points),
        "witness": None if result.witness is None else element_to_json(result.witness),
    }


def _cmd_witness(args) -> Any:
    a, b = _elements(args.inputs, 2)
    if _metric(args) == "H":
        return element_to_json(hilbert_midpoint_witness(a, b))
    return element_to_json(nonunique_midpoint_witness(a, b))


def _cmd_convergence(args) -> List[Dict[str, Any]]:
    a, b = _elements(args.inputs, 2)
    k = args.n if args.n is not None else 12
    table = convergence_table(a, b, _metric(args), k)
    return [
        {"n": int(row.n), "distance": float(row.distance), "limit": float(row.limit), "error": float(row.error)}
        for row in table.itertuples(index=False)
    ]


def _cmd_linearize(args) -> Any:
    d = _descriptor(args)
    linearized = linearize_isometry(_normalized_map(d), d.metric, d.algebra, args.seed, threshold=_threshold(args))
    return {
        "metric": linearized.metric,
        "matrix": [[float(x) for x in row] for row in linearized.matrix],
        "residual": linearized.residual,
    }


def _cmd_factorize(args) -> Any:
    d = _descriptor(args)
    f = build_isometry(d)
    threshold = _threshold(args)
    if d.metric == "T":
        recovered = factor_thompson_isometry(f, d.algebra, args.seed, threshold)
    else:
        recovered = factor_hilbert_isometry(f, d.algebra, args.seed, threshold)
    payload = descriptor_to_json(recovered)
    payload["diagnostics"] = dict(recovered.diagnostics)
    return payload


def _cmd_theta(args) -> Any:
    d = _descriptor(args)
    if d.metric != "H":
        raise InvalidInputError("theta is induced by Hilbert isometries; pass an H descriptor")
    projections = [element_from_json(_read_source(s)) for s in args.inputs[1:]]
    if not projections:
        raise InvalidInputError("theta needs at least one projection after the descriptor")
    theta = hilbert_factorization(build_isometry(d), d.algebra, args.seed).theta
    return {"images": [element_to_json(theta(p)) for p in projections]}


def _cmd_chain(args) -> Any:
    p, q = _elements(args.inputs, 2)
    if args.tol is not None:
        return chain_to_json(orthogonality_chain(p, q, args.tol))
    return chain_to_json(orthogonality_chain(p, q))


def _cmd_simplex(args) -> Any:
    p1, p2, p3, a = _elements(args.inputs, 4)
    simplex = orthogonal_simplex(p1, p2, p3)
    result = simplex_membership(simplex, a, args.tol) if args.tol is not None else simplex_membership(simplex, a)
    return {
        "region": result.region,
        "barycentric": [float(c) for c in result.barycentric],
        "cone_position": result.cone_position,
    }


def _cmd_verify(args) -> Any:
    names = args.inputs or None
    if names:
        unknown = [name for name in names if name not in SUITE_NAMES]
        if unknown:
            raise InvalidInputError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITE_NAMES)}")
    report = run_suites(args.seed, args.n if args.n is not None else 5, names)
    return {"report": report.to_dict(orient="records"), "passed": bool(report["passed"].all())}


COMMANDS: Dict[str, Callable] = {
    "dist": _cmd_dist,
    "gauge": _cmd_gauge,
    "mean": _cmd_mean,
    "geodesic": _cmd_geodesic,
    "classify": _cmd_classify,
    "witness": _cmd_witness,
    "convergence": _cmd_convergence,
    "linearize": _cmd_linearize,
    "factorize": _cmd_factorize,
    "theta": _cmd_theta,
    "chain": _cmd_chain,
    "simplex": _cmd_simplex,
    "verify": _cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors become InvalidInputError so they exit with code 1"""

    def error(self, message: str):
        raise InvalidInputError(f"{self.prog}: {message}")


def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = _Parser(
        prog="conegeo",
        description="Hilbert and Thompson metric geometry on symmetric cones",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("inputs", nargs="*", help="element/descriptor JSON: file path, inline JSON, or - for stdin")
    parser.add_argument("--metric", default=None, help="thompson (T, default) or hilbert (H); must match a descriptor's metric")
    parser.add_argument("--tol", type=float, default=None, help="tolerance or residual threshold override")
    parser.add_argument("--seed", type=int, default=get_default_seed())
    parser.add_argument("--n", type=int, default=None, help="sample count, table depth k, or verify trials")
    parser.add_argument("--t", type=float, default=None, help="geodesic parameter for a single point")
    parser.add_argument("--output", default=None, help="write results to this path instead of stdout")
    return parser.parse_args(argv)


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _emit(payload: Any, lines: bool, output: Optional[str]) -> None:
    if lines:
        text = "\n".join(json.dumps(row, default=_json_default) for row in payload) + "\n"
    else:
        text = json.dumps(payload, default=_json_default) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_error(error: Exception) -> None:
    sys.stderr.write(json.dumps({"error": type(error).__name__, "message": str(error)}) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = _parse_args(argv)
    except InvalidInputError as e:
        _emit_error(e)
        return 1
    logging.basicConfig(
        stream=sys.stderr,
        level=get_log_level(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        payload = COMMANDS[args.subcommand](args)
        _emit(payload, isinstance(payload, list), args.output)
        if args.subcommand == "verify" and not payload["passed"]:
            failed = [row["suite"] for row in payload["report"] if not row["passed"]]
            _emit_error(NumericalFailure(f"property suites failed: {', '.join(failed)}"))
            return 2
    except InvalidInputError as e:
        logger.debug("invalid input for %s", args.subcommand, exc_info=True)
        _emit_error(e)
        return 1
    except NumericalFailure as e:
        logger.debug("numerical failure in %s", args.subcommand, exc_info=True)
        _emit_error(e)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
