import pytest
from sympy.polys.domains import QQ, QQ_I

from core.errors import DegreeMismatchError, PolynomialParseError, ZeroDivisorError
from core.gaussian import RationalSampler, gauss
from core.polyalg import (block_degrees, conj_to_second_block, degree_of, evaluate,
                          exact_quotient, format_polynomial, lift_to_pair_ring,
                          monomials_of_degree, pair_ring, parse_polynomial, poly_add, poly_gcd,
                          random_homogeneous, reduce_by, substitute_linear, swap_blocks, z_ring)


def test_parse_simple():
    p = parse_polynomial("(1/2+3i)*z1^2*z3 - z2^3")
    ring = z_ring(3)
    z1, z2, z3 = ring.gens
    assert p == (z1 ** 2 * z3).mul_ground(QQ_I(QQ(1, 2), QQ(3))) - z2 ** 3
    assert degree_of(p) == 3


def test_parse_variants():
    assert parse_polynomial("2 z1 z2", 2) == parse_polynomial("2*z1*z2", 2)
    assert parse_polynomial("-z1 + 3/4*z2") == parse_polynomial("(3/4+0i)*z2 - z1")
    assert parse_polynomial("(-1-2i)*z1", 1) == z_ring(1).gens[0].mul_ground(gauss(-1, -2))
    assert parse_polynomial("0", 2) == z_ring(2).zero


def test_parse_pair_ring():
    q = parse_polynomial("z1*w1 - z2*w2")
    assert q.ring == pair_ring(2)
    assert block_degrees(q) == (1, 1)


@pytest.mark.parametrize("text, line, column", [
    ("z1 + z2^2", 1, 6),
    ("z1 +\n  * z2", 2, 3),
    ("z1 + 1/0*z2", 1, 8),
    ("z1 # z2", 1, 4),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(PolynomialParseError) as excinfo:
        parse_polynomial(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_parse_range_and_block_errors():
    with pytest.raises(PolynomialParseError):
        parse_polynomial("z3", 2)
    with pytest.raises(PolynomialParseError):
        parse_polynomial("z1*w1", 1, pair=False)


def test_format_round_trip():
    for text in ["z1^2 - (1/2-3i)*z1*z2 + 4*z2^2", "-z1", "(0+1i)*z2^3 + z1^3", "3/2"]:
        p = parse_polynomial(text, 2)
        assert parse_polynomial(format_polynomial(p), 2) == p
    assert format_polynomial(parse_polynomial("z1^2 - z2^2")) == "z1^2 - z2^2"
    assert format_polynomial(z_ring(2).zero) == "0"


def test_random_polynomials_round_trip():
    sampler = RationalSampler(5)
    ring = z_ring(3)
    for degree in (1, 2, 3):
        p = random_homogeneous(ring, degree, sampler)
        assert degree_of(p) == degree
        assert parse_polynomial(format_polynomial(p), 3) == p


def test_degree_checks():
    ring = z_ring(2)
    z1, z2 = ring.gens
    with pytest.raises(DegreeMismatchError):
        degree_of(z1 + z2 ** 2)
    with pytest.raises(DegreeMismatchError):
        poly_add(z1, z2 ** 2)
    assert degree_of(ring.zero) is None


def test_reduce_by_counts_multiplicity():
    q = parse_polynomial("z1*w1 - z2*w2")
    p = parse_polynomial("z1^2*w1^2 - z1*z2*w1*w2")
    result = reduce_by(p, q)
    assert result.k == 1
    assert result.quotient == parse_polynomial("z1*w1", 2, pair=True)
    assert result.reconstruct() == p

    squared = reduce_by(q * q * parse_polynomial("z2*w1", 2, pair=True), q)
    assert squared.k == 2
    assert squared.reconstruct() == q * q * parse_polynomial("z2*w1", 2, pair=True)


def test_reduce_by_remainder():
    q = parse_polynomial("z1*w1 - z2*w2")
    p = parse_polynomial("z1*w1 - 4*z2*w2")
    result = reduce_by(p, q)
    assert result.k == 0
    assert result.remainder
    assert result.reconstruct() == p
    with pytest.raises(ZeroDivisorError):
        reduce_by(p, p.ring.zero)


def test_reduce_by_rejects_constant_divisors():
    p = parse_polynomial("z1*w1 - 4*z2*w2")
    for divisor in (p.ring.one, p.ring.one.mul_ground(gauss(3, -1))):
        with pytest.raises(ZeroDivisorError):
            reduce_by(p, divisor)
        with pytest.raises(ZeroDivisorError):
            reduce_by(p.ring.zero, divisor)


def test_gcd_and_exact_quotient():
    ring = z_ring(2)
    z1, z2 = ring.gens
    g = poly_gcd([z1 ** 2 * z2, z1 * z2 ** 2, ring.zero])
    assert g == z1 * z2
    assert exact_quotient(z1 ** 2 * z2, g) == z1
    assert poly_gcd([z1.mul_ground(gauss(2, 1)), z1 * 0]) == z1


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_gcd_of_random_multiples(seed):
    ring = z_ring(3)
    sampler = RationalSampler(seed, height=5)
    g = random_homogeneous(ring, 1, sampler)
    a = random_homogeneous(ring, 2, sampler)
    b = random_homogeneous(ring, 2, sampler)
    common = poly_gcd([g * a, g * b])
    assert common == (g * poly_gcd([a, b])).monic()
    assert exact_quotient(g * a, common) * common == g * a


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_substitute_linear_is_a_ring_homomorphism(seed):
    ring = z_ring(3)
    sampler = RationalSampler(seed, height=5)
    p = random_homogeneous(ring, 2, sampler)
    q = random_homogeneous(ring, 2, sampler)
    matrix = sampler.matrix(3, 2)
    assert substitute_linear(p + q, matrix) == substitute_linear(p, matrix) + substitute_linear(q, matrix)
    assert substitute_linear(p * q, matrix) == substitute_linear(p, matrix) * substitute_linear(q, matrix)
    point = sampler.vector(2)
    image = [sum((c * x for c, x in zip(row, point)), QQ_I.zero) for row in matrix]
    assert evaluate(substitute_linear(p, matrix), point) == evaluate(p, image)


def test_conjugate_blocks():
    p = parse_polynomial("(1+2i)*z1*z2", 2)
    assert conj_to_second_block(p) == parse_polynomial("(1-2i)*w1*w2", 2, pair=True)
    assert lift_to_pair_ring(p) == parse_polynomial("(1+2i)*z1*z2", 2, pair=True)
    assert swap_blocks(lift_to_pair_ring(p)) == parse_polynomial("(1+2i)*w1*w2", 2, pair=True)


def test_substitute_and_evaluate():
    p = parse_polynomial("z1^2 - z2*z3", 3)
    matrix = [[1, 0], [0, 1], [1, 1]]
    restricted = substitute_linear(p, matrix)
    assert restricted == parse_polynomial("z1^2 - z1*z2 - z2^2", 2)
    point = (gauss(1, 1), gauss(2), gauss(0, -1))
    assert evaluate(p, point) == gauss(1, 1) ** 2 - gauss(2) * gauss(0, -1)


def test_monomials_of_degree():
    monomials = monomials_of_degree(3, 2)
    assert len(monomials) == 6
    assert monomials[0] == (2, 0, 0)
    assert monomials[-1] == (0, 0, 2)
