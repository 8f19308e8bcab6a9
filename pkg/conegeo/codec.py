"""
Shared JSON encodings for algebras, elements, Jordan isomorphisms,
isometry descriptors and projection chains
"""
from typing import Any, Dict, Optional, Union

import numpy as np

from conegeo.metrics import MetricKind, Ray
from conegeo.morphisms import (
    IDENTITY,
    ISO_KINDS,
    ORTHOGONAL,
    PERMUTATION,
    SPIN_ORTHOGONAL,
    IsometryDescriptor,
    JordanIsoRep,
    coordinate_permutation,
    identity_iso,
    orthogonal_conjugation,
    spin_orthogonal,
    sum_iso,
)
from conegeo.projections import ProjectionChain
from jordan.errors import InvalidInputError
from jordan.models import (
    SPIN,
    SUM,
    SYM,
    VECTOR,
    AlgebraDescriptor,
    Element,
    direct_sum,
    make_element,
    spin_algebra,
    sym_algebra,
    vector_algebra,
)

METRIC_ALIASES = {
    "t": "T",
    "thompson": "T",
    "h": "H",
    "hilbert": "H",
}


def parse_metric(name: str) -> MetricKind:
    try:
        return METRIC_ALIASES[str(name).strip().lower()]
    except KeyError:
        raise InvalidInputError(f"unknown metric {name!r}; use thompson (T) or hilbert (H)")


def _require_key(payload: Dict[str, Any], key: str, what: str) -> Any:
    if not isinstance(payload, dict) or key not in payload:
        raise InvalidInputError(f"{what} JSON is missing the {key!r} field")
    return payload[key]


def algebra_to_json(algebra: AlgebraDescriptor) -> Dict[str, Any]:
    if algebra.kind in (VECTOR, SYM):
        return {"kind": algebra.kind, "n": algebra.n}
    if algebra.kind == SPIN:
        return {"kind": SPIN, "dim": algebra.n}
    return {"kind": SUM, "parts": [algebra_to_json(part) for part in algebra.parts]}


def algebra_from_json(payload: Dict[str, Any]) -> AlgebraDescriptor:
    kind = _require_key(payload, "kind", "algebra")
    try:
        if kind == VECTOR:
            return vector_algebra(int(_require_key(payload, "n", "algebra")))
        if kind == SYM:
            return sym_algebra(int(_require_key(payload, "n", "algebra")))
        if kind == SPIN:
            return spin_algebra(int(_require_key(payload, "dim", "algebra")))
        if kind == SUM:
            return direct_sum(*(algebra_from_json(part) for part in _require_key(payload, "parts", "algebra")))
    except (TypeError, ValueError) as e:
        if isinstance(e, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed algebra descriptor: {str(e)}")
    raise InvalidInputError(f"unknown algebra kind {kind!r}")


def _data_to_json(a: Element) -> Any:
    kind = a.algebra.kind
    if kind == VECTOR:
        return [float(x) for x in a.data]
    if kind == SYM:
        return [[float(x) for x in row] for row in a.data]
    if kind == SPIN:
        return {"h": [float(x) for x in a.h], "t": a.t}
    return [_data_to_json(part) for part in a.parts]


def _data_from_json(algebra: AlgebraDescriptor, data: Any) -> Any:
    kind = algebra.kind
    if kind == SPIN:
        if isinstance(data, dict):
            h = _require_key(data, "h", "spin element")
            t = _require_key(data, "t", "spin element")
            return np.concatenate([np.asarray(h, dtype=float), [float(t)]])
        return data
    if kind == SUM:
        if not isinstance(data, list) or len(data) != len(algebra.parts):
            raise InvalidInputError(f"{algebra} expects a list of {len(algebra.parts)} component encodings")
        parts = []
        for part, item in zip(algebra.parts, data):
            if isinstance(item, dict) and "algebra" in item:
                component = element_from_json(item)
                if component.algebra != part:
                    raise InvalidInputError(f"component {component.algebra} does not match {part}")
                parts.append(component)
            else:
                parts.append(make_element(part, _data_from_json(part, item)))
        return parts
    return data


def element_to_json(a: Union[Element, Ray]) -> Dict[str, Any]:
    if isinstance(a, Ray):
        a = a.representative
    return {"algebra": algebra_to_json(a.algebra), "data": _data_to_json(a)}


def element_from_json(payload: Dict[str, Any]) -> Element:
    algebra = algebra_from_json(_require_key(payload, "algebra", "element"))
    data = _require_key(payload, "data", "element")
    try:
        return make_element(algebra, _data_from_json(algebra, data))
    except (TypeError, ValueError) as e:
        if isinstance(e, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed element data for {algebra}: {str(e)}")


def iso_to_json(J: JordanIsoRep) -> Dict[str, Any]:
    return {
        "kind": J.kind,
        "u": None if J.u is None else [[float(x) for x in row] for row in J.u],
        "perm": list(J.perm),
        "parts": [iso_to_json(part) for part in J.parts],
    }


def iso_from_json(payload: Dict[str, Any]) -> JordanIsoRep:
    kind = _require_key(payload, "kind", "Jordan isomorphism")
    if kind not in ISO_KINDS:
        raise InvalidInputError(f"unknown Jordan isomorphism kind {kind!r}")
    if kind == IDENTITY:
        return identity_iso()
    if kind == ORTHOGONAL:
        return orthogonal_conjugation(_require_key(payload, "u", "orthogonal conjugation"))
    if kind == SPIN_ORTHOGONAL:
        return spin_orthogonal(_require_key(payload, "u", "spin orthogonal map"))
    if kind == PERMUTATION:
        return coordinate_permutation(_require_key(payload, "perm", "permutation"))
    parts = _require_key(payload, "parts", "sum isomorphism")
    if not isinstance(parts, list):
        raise InvalidInputError(f"sum isomorphism parts must be a list, got {type(parts).__name__}")
    parts = [iso_from_json(part) for part in parts]
    return sum_iso(_require_key(payload, "perm", "sum isomorphism"), parts)


def descriptor_to_json(d: IsometryDescriptor) -> Dict[str, Any]:
    return {
        "metric": d.metric,
        "b": element_to_json(d.b),
        "p": None if d.p is None else element_to_json(d.p),
        "epsilon": d.epsilon,
        "iso": iso_to_json(d.iso),
    }


def descriptor_from_json(payload: Dict[str, Any]) -> IsometryDescriptor:
    metric = parse_metric(_require_key(payload, "metric", "descriptor"))
    b = element_from_json(_require_key(payload, "b", "descriptor"))
    p: Optional[Element] = None
    if payload.get("p") is not None:
        p = element_from_json(payload["p"])
    epsilon = payload.get("epsilon")
    if epsilon is not None:
        try:
            epsilon = int(epsilon)
        except (TypeError, ValueError, OverflowError) as e:
            raise InvalidInputError(f"malformed epsilon {epsilon!r}: {str(e)}")
    iso = iso_from_json(_require_key(payload, "iso", "descriptor"))
    return IsometryDescriptor(metric=metric, b=b, iso=iso, p=p, epsilon=epsilon)


def chain_to_json(chain: ProjectionChain) -> Dict[str, Any]:
    return {"chain": [element_to_json(p) for p in chain.projections]}
