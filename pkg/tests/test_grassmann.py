import pytest

from core.errors import DimensionError, IndeterminacyError, ShapeError
from core.gaussian import RationalSampler, gauss
from core.generators import power_map
from core.grassmann import (PlaneChart, PlaneKind, generic_plane_image_dim, in_omega,
                            negative_plane_from_chart, on_shilov, plane_from_chart, plane_kind,
                            random_chart, random_omega_point, random_plane, random_shilov_point,
                            random_unitary, span_of_image, symbolic_plane_image_dim)
from core.hermitian import Signature, Subspace, conj_transpose, identity_rows, mat_mul
from core.maps import RationalMap, image_span


def test_chart_kinds_on_the_line():
    sig = Signature(1, 1)
    assert plane_kind(PlaneChart.of(sig, [[0]])) is PlaneKind.POSITIVE
    assert plane_kind(PlaneChart.of(sig, [["1/2"]])) is PlaneKind.POSITIVE
    assert plane_kind(PlaneChart.of(sig, [[(gauss(0, 1))]])) is PlaneKind.NULL
    assert plane_kind(PlaneChart.of(sig, [[2]])) is PlaneKind.MIXED


def test_chart_shapes():
    with pytest.raises(ShapeError):
        PlaneChart.of(Signature(2, 1), [[0]])
    with pytest.raises(ShapeError):
        PlaneChart.of(Signature(0, 2), [])
    with pytest.raises(ShapeError):
        on_shilov([[1], [0]])
    chart = PlaneChart.of(Signature(1, 2, 1), [[1, 0]])
    assert chart.B == ((gauss(0),),)


def test_plane_from_chart_basis():
    sig = Signature(1, 2, 1)
    chart = PlaneChart.of(sig, [[1, 0]], [[5]])
    plane = plane_from_chart(chart)
    assert plane == Subspace.span([(1, 1, 0, 5)], sig)
    assert plane.derived_abc == (0, 0, 1)


def test_negative_plane_from_chart():
    sig = Signature(2, 1)
    chart = PlaneChart.of(sig.swapped(), [[0, 0]])
    plane = negative_plane_from_chart(chart)
    assert plane.sig == sig
    assert plane.derived_abc == (0, 1, 0)


def test_random_unitary_is_unitary():
    sampler = RationalSampler(11)
    for n in (1, 2, 3, 4):
        u = random_unitary(n, sampler)
        assert mat_mul(u, conj_transpose(u)) == identity_rows(n)


def test_random_boundary_points():
    sampler = RationalSampler(3)
    assert on_shilov(random_shilov_point(2, 3, sampler))
    assert in_omega(random_omega_point(2, 3, sampler))
    assert in_omega(random_omega_point(3, 2, sampler))
    with pytest.raises(ShapeError):
        random_shilov_point(3, 2, sampler)


def _check_random_charts(sig, count):
    sampler = RationalSampler(20240601, height=6)
    for _ in range(count):
        positive = random_chart(sig, sampler, PlaneKind.POSITIVE)
        assert in_omega(positive.A)
        assert plane_from_chart(positive).derived_abc == (sig.r, 0, 0)

        null = random_chart(sig, sampler, PlaneKind.NULL)
        assert on_shilov(null.A)
        assert plane_from_chart(null).derived_abc == (0, 0, sig.r)


@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(2, 3), Signature(2, 2, 1), Signature(1, 3, 2)])
def test_random_charts_have_expected_plane_signature(sig):
    _check_random_charts(sig, 25)


@pytest.mark.slow
@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(2, 3), Signature(2, 2, 1), Signature(1, 3, 2),
                                 Signature(3, 3), Signature(2, 4, 2)])
def test_many_random_charts_have_expected_plane_signature(sig):
    _check_random_charts(sig, 100)


def test_random_plane_dimension():
    sampler = RationalSampler(5)
    sig = Signature(2, 2, 1)
    for k in range(sig.n):
        assert random_plane(sig, k, sampler).projective_dim == k
    with pytest.raises(DimensionError):
        random_plane(sig, sig.n, sampler)


def test_span_of_image(example_map, sig11):
    assert span_of_image(example_map, Subspace.whole(sig11)) == image_span(example_map)
    point = Subspace.span([(1, 0)], sig11)
    assert span_of_image(example_map, point) == Subspace.coordinate(example_map.target, [0])

    identity = RationalMap.identity(Signature(1, 1, 1))
    plane = Subspace.span([(1, 2, 0), (0, 1, 1)], identity.source)
    assert span_of_image(identity, plane) == plane

    with pytest.raises(IndeterminacyError):
        span_of_image(example_map, Subspace.zero(sig11))
    with pytest.raises(DimensionError):
        span_of_image(example_map, Subspace.whole(Signature(1, 2)))


def test_plane_image_dimensions(example_map):
    assert generic_plane_image_dim(example_map, 0, 4, seed=1) == 0
    assert generic_plane_image_dim(example_map, 1, 4, seed=1) == 2
    assert symbolic_plane_image_dim(example_map, 0) == 0
    assert symbolic_plane_image_dim(example_map, 1) == 2

    square = power_map(2)
    assert symbolic_plane_image_dim(square, 1) == 1

    identity = RationalMap.identity(Signature(1, 1, 1))
    assert symbolic_plane_image_dim(identity, 1) == 1
    assert generic_plane_image_dim(identity, 1, 3, seed=2) == 1
    with pytest.raises(DimensionError):
        symbolic_plane_image_dim(identity, 3)
