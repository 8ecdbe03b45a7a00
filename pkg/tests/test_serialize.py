import pytest

from core.errors import DescriptorError, PolynomialParseError
from core.gaussian import gauss
from core.grassmann import PlaneChart
from core.hermitian import Signature, Subspace, Vector
from core.maps import classify, is_orthogonal
from core.serialize import (chart_from_json, chart_to_json, dumps, loads, map_from_descriptor,
                            map_to_descriptor, orthogonality_to_json, signature_from_json,
                            signature_to_json, subspace_from_json, subspace_to_json,
                            vector_from_json, vector_to_json, verdict_to_json, with_schema)


def test_signature_json():
    assert signature_to_json(Signature(2, 1, 1)) == {"r": 2, "s": 1, "t": 1}
    weighted = Signature(1, 1, 0, weights=("1/2", -3))
    assert signature_to_json(weighted) == {"r": 1, "s": 1, "t": 0, "weights": ["1/2", "-3"]}
    assert signature_from_json(signature_to_json(weighted)) == weighted
    assert signature_from_json({"r": 1, "s": 2}) == Signature(1, 2, 0)


@pytest.mark.parametrize("data, field", [
    ([1, 1, 0], "source"),
    ({"r": "1", "s": 1}, "source"),
    ({"r": -1, "s": 1}, "target"),
    ({"r": 0, "s": 0}, "target"),
])
def test_signature_errors_name_the_field(data, field):
    with pytest.raises(DescriptorError) as excinfo:
        signature_from_json(data, field)
    assert excinfo.value.field == field
    assert str(excinfo.value).startswith(f"{field}: ")


def test_vector_and_subspace_json():
    sig = Signature(1, 1, 1)
    v = Vector((gauss(1, 2), gauss("1/3"), gauss(0, -1)), sig)
    data = vector_to_json(v)
    assert data["coords"] == [["1", "2"], ["1/3", "0"], ["0", "-1"]]
    assert vector_from_json(data) == v

    space = Subspace.span([(1, 1, 0), (0, 0, 1)], sig)
    data = subspace_to_json(space)
    assert data["abc"] == [0, 0, 2]
    assert subspace_from_json(data) == space

    with pytest.raises(DescriptorError):
        vector_from_json({"sig": {"r": 1, "s": 1}, "coords": [["1", "0"]]})


def test_chart_json():
    chart = PlaneChart.of(Signature(1, 2, 1), [[1, "1/2"]], [[3]])
    assert chart_from_json(chart_to_json(chart)) == chart
    with pytest.raises(DescriptorError):
        chart_from_json({"sig": {"r": 2, "s": 1}, "A": [[["0", "0"]]]})


def test_map_descriptor(example_map):
    data = map_to_descriptor(example_map)
    assert data["components"] == ["z1^2", "z2^2", "z1*z2", "z2^2", "z2^2"]
    assert data["target"] == {"r": 2, "s": 2, "t": 1}
    assert map_from_descriptor(data) == example_map


def test_map_descriptor_errors():
    source = {"r": 1, "s": 1}
    with pytest.raises(DescriptorError) as excinfo:
        map_from_descriptor({"source": source, "target": source, "components": ["z1"]})
    assert excinfo.value.field == "components"
    with pytest.raises(DescriptorError) as excinfo:
        map_from_descriptor({"source": source, "target": source, "components": ["z1", "z3"]})
    assert excinfo.value.field == "components[1]"
    with pytest.raises(PolynomialParseError) as excinfo:
        map_from_descriptor({"source": source, "target": source, "components": ["z1", "z2 +"]})
    assert excinfo.value.line == 1
    with pytest.raises(DescriptorError):
        map_from_descriptor(["z1", "z2"])


def test_result_json(example_map):
    ortho = orthogonality_to_json(is_orthogonal(example_map))
    assert ortho == {"orthogonal": True, "k": 1, "rho": "z1*w1", "remainder": "0"}

    verdict = verdict_to_json(classify(example_map))
    assert verdict["verdict"] == "QuasiStandard"
    assert verdict["gram_scalar"] == "1"
    assert verdict["A"]["abc"] == [1, 1, 0]
    assert verdict["B"]["abc"] == [1, 1, 1]
    assert "common_factor" not in verdict


def test_dumps_is_stable():
    payload = with_schema({"b": 1, "a": ["P^{1,1}", "≅"]})
    text = dumps(payload)
    assert text == dumps(loads(text))
    assert text.index('"a"') < text.index('"b"') < text.index('"schema"')
    assert "≅" in text
    with pytest.raises(DescriptorError):
        loads("{not json", "input.json")
