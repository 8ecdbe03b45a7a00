# serialize.py
"""
JSON forms of signatures, vectors, subspaces, charts, maps, verdicts and
reports. Scalars are [re, im] pairs of rational strings; polynomials use the
text grammar of ``core.polyalg``.
"""
import json
from typing import Any, Dict, List, Optional

from core.config import REPORT_SCHEMA_VERSION
from core.errors import DescriptorError, SignatureError
from core.gaussian import format_rational, gaussian_from_json, gaussian_to_json
from core.grassmann import PlaneChart
from core.hermitian import Signature, Subspace, Vector
from core.maps import MapClass, OrthogonalityResult, RationalMap
from core.polyalg import format_polynomial, parse_polynomial


def signature_to_json(sig: Signature) -> Dict[str, Any]:
    data = {"r": sig.r, "s": sig.s, "t": sig.t}
    if sig.is_weighted:
        data["weights"] = [format_rational(w) for w in sig.weights]
    return data


def signature_from_json(data: Any, field: str = "signature") -> Signature:
    if not isinstance(data, dict):
        raise DescriptorError("expected an object with r, s, t", field)
    try:
        values = [data.get(key, 0) for key in ("r", "s", "t")]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
            raise DescriptorError("r, s, t must be integers", field)
        return Signature(*values, weights=data.get("weights"))
    except (SignatureError, ValueError) as e:
        if isinstance(e, DescriptorError):
            raise
        raise DescriptorError(str(e), field)


def row_to_json(row) -> List[List[str]]:
    return [gaussian_to_json(x) for x in row]


def row_from_json(data: Any, field: str) -> tuple:
    if not isinstance(data, list):
        raise DescriptorError("expected a list of [re, im] pairs", field)
    try:
        return tuple(gaussian_from_json(x) for x in data)
    except ValueError as e:
        raise DescriptorError(str(e), field)


def vector_to_json(v: Vector) -> Dict[str, Any]:
    return {"sig": signature_to_json(v.sig), "coords": row_to_json(v.coords)}


def vector_from_json(data: Dict[str, Any]) -> Vector:
    sig = signature_from_json(data.get("sig"), "sig")
    coords = row_from_json(data.get("coords"), "coords")
    if len(coords) != sig.n:
        raise DescriptorError(f"expected {sig.n} coordinates, got {len(coords)}", "coords")
    return Vector(coords, sig)


def subspace_to_json(space: Subspace) -> Dict[str, Any]:
    return {
        "sig": signature_to_json(space.sig),
        "basis": [row_to_json(row) for row in space.basis],
        "abc": list(space.derived_abc),
    }


def subspace_from_json(data: Dict[str, Any]) -> Subspace:
    sig = signature_from_json(data.get("sig"), "sig")
    rows = [row_from_json(row, f"basis[{i}]") for i, row in enumerate(data.get("basis", []))]
    for i, row in enumerate(rows):
        if len(row) != sig.n:
            raise DescriptorError(f"expected {sig.n} coordinates", f"basis[{i}]")
    return Subspace.span(rows, sig)


def chart_to_json(chart: PlaneChart) -> Dict[str, Any]:
    return {
        "sig": signature_to_json(chart.sig),
        "A": [row_to_json(row) for row in chart.A],
        "B": [row_to_json(row) for row in chart.B],
    }


def chart_from_json(data: Dict[str, Any]) -> PlaneChart:
    if not isinstance(data, dict):
        raise DescriptorError("expected a chart object")
    sig = signature_from_json(data.get("sig"), "sig")
    A = [row_from_json(row, f"A[{i}]") for i, row in enumerate(data.get("A", []))]
    B = data.get("B")
    B = None if B is None else [row_from_json(row, f"B[{i}]") for i, row in enumerate(B)]
    try:
        return PlaneChart.of(sig, A, B)
    except ValueError as e:
        raise DescriptorError(str(e), "A")


def map_to_descriptor(F: RationalMap) -> Dict[str, Any]:
    data = {
        "source": signature_to_json(F.source),
        "target": signature_to_json(F.target),
        "components": F.texts(),
    }
    if F.label:
        data["label"] = F.label
    return data


def map_from_descriptor(data: Any) -> RationalMap:
    """Build a map from a descriptor; polynomial errors keep their line/column"""
    if not isinstance(data, dict):
        raise DescriptorError("a map descriptor must be a JSON object")
    source = signature_from_json(data.get("source"), "source")
    target = signature_from_json(data.get("target"), "target")
    texts = data.get("components")
    if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
        raise DescriptorError("expected a list of polynomial strings", "components")
    if len(texts) != target.n:
        raise DescriptorError(f"{len(texts)} components for target {target.label()}", "components")
    components = []
    for i, text in enumerate(texts):
        probe = parse_polynomial(text, pair=False)
        if probe.ring.ngens > source.n and probe:
            raise DescriptorError(f"uses z{probe.ring.ngens} but the source has {source.n} variables",
                                  f"components[{i}]")
        components.append(parse_polynomial(text, source.n, pair=False))
    try:
        return RationalMap(source, target, tuple(components), data.get("label"))
    except ValueError as e:
        raise DescriptorError(str(e), "components")


def orthogonality_to_json(result: OrthogonalityResult) -> Dict[str, Any]:
    return {
        "orthogonal": result.orthogonal,
        "k": result.k,
        "rho": format_polynomial(result.rho),
        "remainder": format_polynomial(result.remainder),
    }


def verdict_to_json(result: MapClass) -> Dict[str, Any]:
    data: Dict[str, Any] = {"verdict": result.verdict.value}
    if result.decomposition is not None:
        data["A"] = subspace_to_json(result.A)
        data["B"] = subspace_to_json(result.B)
    if result.common_factor is not None:
        data["common_factor"] = format_polynomial(result.common_factor)
    if result.gram_scalar is not None:
        data["gram_scalar"] = format_rational(result.gram_scalar)
    return data


def with_schema(payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"schema": REPORT_SCHEMA_VERSION, **payload}


def dumps(payload: Dict[str, Any]) -> str:
    """Stable text: sorted keys, two-space indent, unicode kept"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def loads(text: str, source: Optional[str] = None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        where = f" in {source}" if source else ""
        raise DescriptorError(f"invalid JSON{where}: {e.msg} at line {e.lineno}, column {e.colno}")
