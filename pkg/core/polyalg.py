# polyalg.py
"""
Homogeneous polynomials over the Gaussian rationals.

Polynomials are sympy sparse ``PolyElement``s. A z-block ring has generators
z1..zn; a pair ring has z1..zn followed by w1..wn, where w stands for the
conjugated variables. Both use the degree-lexicographic order, so the lead
term of the hyperquadric form is z1*w1.
"""
import itertools
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing
from sympy.polys.domains import QQ, QQ_I

from core.errors import (DegreeMismatchError, DimensionError, HyperquadricError,
                         PolynomialParseError, ZeroDivisorError)
from core.gaussian import GaussianRational, conj, format_rational, to_gaussian

Monomial = Tuple[int, ...]


@lru_cache(maxsize=None)
def z_ring(n: int) -> PolyRing:
    if n < 1:
        raise DimensionError("a polynomial ring needs at least one variable")
    return PolyRing(",".join(f"z{i}" for i in range(1, n + 1)), QQ_I, grlex)


@lru_cache(maxsize=None)
def pair_ring(n: int) -> PolyRing:
    if n < 1:
        raise DimensionError("a polynomial ring needs at least one variable")
    names = [f"z{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)]
    return PolyRing(",".join(names), QQ_I, grlex)


def is_pair_ring(ring: PolyRing) -> bool:
    return ring.ngens % 2 == 0 and ring.ngens > 0 and str(ring.symbols[-1]).startswith('w')


def block_size(ring: PolyRing) -> int:
    """Number of z variables"""
    return ring.ngens // 2 if is_pair_ring(ring) else ring.ngens


def degree_of(p: PolyElement) -> Optional[int]:
    """Total degree of a homogeneous polynomial; None for zero"""
    if not p:
        return None
    degrees = {sum(m) for m in p.itermonoms()}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"{format_polynomial(p)} is not homogeneous")
    return degrees.pop()


def block_degrees(p: PolyElement) -> Optional[Tuple[int, int]]:
    """(z-degree, w-degree) of a bihomogeneous polynomial in a pair ring"""
    if not p:
        return None
    n = block_size(p.ring)
    degrees = {(sum(m[:n]), sum(m[n:])) for m in p.itermonoms()}
    if len(degrees) != 1:
        raise DegreeMismatchError(f"{format_polynomial(p)} is not bihomogeneous")
    return degrees.pop()


def is_homogeneous(p: PolyElement) -> bool:
    try:
        degree_of(p)
        return True
    except DegreeMismatchError:
        return False


def _check_ring(p: PolyElement, q: PolyElement):
    if p.ring != q.ring:
        raise DimensionError(f"incompatible polynomial rings {p.ring.symbols} and {q.ring.symbols}")


def poly_add(p: PolyElement, q: PolyElement) -> PolyElement:
    _check_ring(p, q)
    dp, dq = degree_of(p), degree_of(q)
    if dp is not None and dq is not None and dp != dq:
        raise DegreeMismatchError(f"cannot add polynomials of degree {dp} and {dq}")
    return p + q


def poly_mul(p: PolyElement, q: PolyElement) -> PolyElement:
    _check_ring(p, q)
    return p * q


def poly_scale(c, p: PolyElement) -> PolyElement:
    return p.mul_ground(to_gaussian(c)) if c else p.ring.zero


def conj_coefficients(p: PolyElement) -> PolyElement:
    return p.ring.from_dict({m: conj(c) for m, c in p.iterterms()})


def conj_to_second_block(p: PolyElement) -> PolyElement:
    """z-block polynomial -> pair-ring polynomial in w with conjugated coefficients"""
    n = p.ring.ngens
    zeros = (0,) * n
    return pair_ring(n).from_dict({zeros + m: conj(c) for m, c in p.iterterms()})


def lift_to_pair_ring(p: PolyElement) -> PolyElement:
    n = p.ring.ngens
    zeros = (0,) * n
    return pair_ring(n).from_dict({m + zeros: c for m, c in p.iterterms()})


def swap_blocks(p: PolyElement) -> PolyElement:
    """Exchange z and w in a pair-ring polynomial"""
    n = block_size(p.ring)
    return p.ring.from_dict({m[n:] + m[:n]: c for m, c in p.iterterms()})


@dataclass(frozen=True)
class DivisionResult:
    """
    ``remainder`` is the normal form of the dividend modulo the divisor and
    ``k`` the largest power of the divisor dividing the dividend. When k >= 1
    the quotient is dividend / divisor^k, otherwise it is the quotient of a
    single division step, so ``reconstruct()`` always returns the dividend.
    """
    dividend: PolyElement
    divisor: PolyElement
    quotient: PolyElement
    remainder: PolyElement
    k: int

    @property
    def divides(self) -> bool:
        return self.k > 0

    def reconstruct(self) -> PolyElement:
        if self.k:
            return self.divisor ** self.k * self.quotient
        return self.divisor * self.quotient + self.remainder


def _total_degree(p: PolyElement) -> int:
    return max(sum(m) for m in p.itermonoms())


def reduce_by(dividend: PolyElement, divisor: PolyElement) -> DivisionResult:
    _check_ring(dividend, divisor)
    if not divisor:
        raise ZeroDivisorError("division by the zero polynomial")
    if divisor.is_ground:
        raise ZeroDivisorError(f"the constant {format_polynomial(divisor)} divides every "
                               f"polynomial any number of times")
    ring = dividend.ring
    if not dividend:
        return DivisionResult(dividend, divisor, ring.zero, ring.zero, 0)

    quotient, remainder = dividend.div(divisor)
    if remainder:
        return DivisionResult(dividend, divisor, quotient, remainder, 0)
    k = 1
    divisor_degree = _total_degree(divisor)
    while quotient and _total_degree(quotient) >= divisor_degree:
        q, r = quotient.div(divisor)
        if r:
            break
        quotient = q
        k += 1
    return DivisionResult(dividend, divisor, quotient, ring.zero, k)


def exact_quotient(p: PolyElement, q: PolyElement) -> PolyElement:
    _check_ring(p, q)
    if not q:
        raise ZeroDivisorError("division by the zero polynomial")
    try:
        return p.exquo(q)
    except ExactQuotientFailed:
        raise HyperquadricError(f"{format_polynomial(q)} does not divide {format_polynomial(p)}")


def poly_gcd(ps: Sequence[PolyElement]) -> PolyElement:
    """Monic (under grlex) gcd; zero inputs are skipped"""
    if not ps:
        raise HyperquadricError("gcd of an empty list of polynomials")
    ring = ps[0].ring
    for p in ps:
        _check_ring(ps[0], p)
    nonzero = [p for p in ps if p]
    if not nonzero:
        return ring.zero
    g = reduce(lambda a, b: a.gcd(b), nonzero[1:], nonzero[0])
    return g.monic()


def substitute_linear(p: PolyElement, matrix: Sequence[Sequence], ring: Optional[PolyRing] = None) -> PolyElement:
    """
    p(M u) for an n x k matrix M, expanded in a k-variable ring (z1..zk
    unless ``ring`` is given).
    """
    n = p.ring.ngens
    if len(matrix) != n:
        raise DimensionError(f"substitution matrix has {len(matrix)} rows, polynomial has {n} variables")
    k = len(matrix[0]) if n else 0
    if any(len(row) != k for row in matrix):
        raise DimensionError("ragged substitution matrix")
    target = ring or z_ring(k)
    if target.ngens != k:
        raise DimensionError(f"target ring has {target.ngens} variables, matrix has {k} columns")
    images = [sum((g.mul_ground(to_gaussian(c)) for c, g in zip(row, target.gens) if to_gaussian(c)), target.zero)
              for row in matrix]
    powers: Dict[Tuple[int, int], PolyElement] = {}

    def power(i, e):
        if (i, e) not in powers:
            powers[(i, e)] = images[i] ** e
        return powers[(i, e)]

    result = target.zero
    for monom, c in p.iterterms():
        term = target.ground_new(c)
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        result += term
    return result


def evaluate(p: PolyElement, point: Sequence) -> GaussianRational:
    if len(point) != p.ring.ngens:
        raise DimensionError(f"point of length {len(point)} for {p.ring.ngens} variables")
    values = [to_gaussian(v) for v in point]
    total = QQ_I.zero
    for monom, c in p.iterterms():
        term = c
        for v, e in zip(values, monom):
            if e:
                term = term * v ** e
        total += term
    return total


def monomials_of_degree(n: int, degree: int) -> List[Monomial]:
    """All exponent vectors of the given total degree, in descending grlex order"""
    monomials = []
    for combo in itertools.combinations_with_replacement(range(n), degree):
        exponents = [0] * n
        for i in combo:
            exponents[i] += 1
        monomials.append(tuple(exponents))
    return sorted(monomials, reverse=True)


def random_homogeneous(ring: PolyRing, degree: int, sampler, density: float = 0.6) -> PolyElement:
    """Random nonzero homogeneous polynomial; each monomial kept with probability ``density``"""
    monomials = monomials_of_degree(ring.ngens, degree)
    while True:
        terms = {m: sampler.gaussian(nonzero=True) for m in monomials if sampler.coin(density)}
        if terms:
            return ring.from_dict(terms)


# ---------------------------------------------------------------------------
# text form

def _format_coefficient(c: GaussianRational) -> str:
    if c.y == 0:
        return format_rational(c.x)
    sign = '-' if c.y < 0 else '+'
    return f"({format_rational(c.x)}{sign}{format_rational(abs(c.y))}i)"


def _format_monomial(monom: Monomial, ring: PolyRing) -> str:
    n = block_size(ring)
    parts = []
    for i, e in enumerate(monom):
        if not e:
            continue
        name = f"z{i + 1}" if i < n else f"w{i - n + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: PolyElement) -> str:
    """Render in the grammar accepted by ``parse_polynomial``"""
    if not p:
        return "0"
    out = []
    for monom, c in p.terms():
        negative = c.y == 0 and c.x < 0
        if negative:
            c = -c
        body = _format_monomial(monom, p.ring)
        if not body:
            text = _format_coefficient(c)
        elif c == QQ_I.one:
            text = body
        else:
            text = f"{_format_coefficient(c)}*{body}"
        if not out:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<var>[zw])|(?P<op>[-+*/^()i]))")


class _PolynomialParser:
    """Recursive descent over the term grammar; collects (coefficient, varpows) terms"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                stripped = len(text[pos:]) - len(text[pos:].lstrip())
                self.error(f"unexpected character {text[pos + stripped]!r}", pos + stripped)
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            pos = match.end()
        self.index = 0

    def error(self, message: str, position: Optional[int] = None):
        if position is None:
            position = self.tokens[self.index][2] if self.index < len(self.tokens) else len(self.text)
        raise PolynomialParseError(message, self.text, position)

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else (None, None, len(self.text))

    def take(self, kind=None, value=None):
        token = self.peek()
        if token[0] is None or (kind and token[0] != kind) or (value and token[1] != value):
            expected = value or kind or "token"
            self.error(f"expected {expected!r}" if token[0] is not None else f"expected {expected!r}, found end of input")
        self.index += 1
        return token

    def at(self, kind, value=None) -> bool:
        token = self.peek()
        return token[0] == kind and (value is None or token[1] == value)

    def parse(self):
        if not self.tokens:
            self.error("empty polynomial", 0)
        terms = []
        sign = QQ(1)
        if self.at('op', '-') or self.at('op', '+'):
            sign = QQ(-1) if self.take()[1] == '-' else QQ(1)
        terms.append(self.term(sign))
        while self.peek()[0] is not None:
            op = self.peek()
            if not (op[0] == 'op' and op[1] in '+-'):
                self.error(f"expected '+' or '-', found {op[1]!r}")
            self.index += 1
            terms.append(self.term(QQ(-1) if op[1] == '-' else QQ(1)))
        return terms

    def rational(self):
        numerator = int(self.take('number')[1])
        if self.at('op', '/'):
            self.take()
            position = self.peek()[2]
            denominator = int(self.take('number')[1])
            if denominator == 0:
                self.error("zero denominator", position)
            return QQ(numerator, denominator)
        return QQ(numerator)

    def coefficient(self) -> GaussianRational:
        if self.at('number'):
            return QQ_I(self.rational(), 0)
        self.take('op', '(')
        sign = QQ(1)
        if self.at('op', '-') or self.at('op', '+'):
            sign = QQ(-1) if self.take()[1] == '-' else QQ(1)
        re_part = sign * self.rational()
        if not (self.at('op', '+') or self.at('op', '-')):
            self.error("expected '+' or '-' in complex coefficient")
        im_sign = QQ(-1) if self.take()[1] == '-' else QQ(1)
        im_part = im_sign * self.rational()
        self.take('op', 'i')
        self.take('op', ')')
        return QQ_I(re_part, im_part)

    def varpow(self):
        block, _, position = self.take('var')
        index_token = self.peek()
        if index_token[0] != 'number' or index_token[2] != position + 1:
            self.error(f"expected an index after {block!r}", position + 1)
        index = int(self.take('number')[1])
        if index < 1:
            self.error("variable indices start at 1", position)
        exponent = 1
        if self.at('op', '^'):
            self.take()
            exponent = int(self.take('number')[1])
        return block, index, exponent, position

    def term(self, sign):
        position = self.peek()[2]
        factors = []
        if self.at('var'):
            coefficient = QQ_I.one
            factors.append(self.varpow())
        else:
            coefficient = self.coefficient()
        while self.at('op', '*') or self.at('var'):
            if self.at('op', '*'):
                self.take()
            factors.append(self.varpow())
        return QQ_I(sign, 0) * coefficient, factors, position


def parse_polynomial(text: str, n: Optional[int] = None, pair: Optional[bool] = None) -> PolyElement:
    """
    Parse ``(1/2+3i)*z1^2*z3 - z2^3`` style text. ``n`` fixes the number of z
    variables (inferred from the largest index otherwise); w variables select
    the pair ring. The result must be homogeneous.
    """
    terms = _PolynomialParser(text).parse()
    uses_w = any(block == 'w' for _, factors, _ in terms for block, _, _, _ in factors)
    if pair is None:
        pair = uses_w
    elif uses_w and not pair:
        position = next(pos for _, factors, _ in terms for block, _, _, pos in factors if block == 'w')
        raise PolynomialParseError("conjugate variable in a z-only polynomial", text, position)
    largest = max([index for _, factors, _ in terms for _, index, _, _ in factors], default=1)
    if n is None:
        n = largest
    for _, factors, _ in terms:
        for block, index, _, position in factors:
            if index > n:
                raise PolynomialParseError(f"variable {block}{index} out of range (n={n})", text, position)
    ring = pair_ring(n) if pair else z_ring(n)

    coefficients: Dict[Monomial, GaussianRational] = {}
    degrees = set()
    for coefficient, factors, position in terms:
        exponents = [0] * ring.ngens
        for block, index, exponent, _ in factors:
            exponents[index - 1 + (n if block == 'w' else 0)] += exponent
        monom = tuple(exponents)
        if coefficient:
            degrees.add((sum(monom[:n]), sum(monom[n:])) if pair else sum(monom))
        coefficients[monom] = coefficients.get(monom, QQ_I.zero) + coefficient
        if len(degrees) > 1:
            raise PolynomialParseError("polynomial is not homogeneous", text, position)
    return ring.from_dict({m: c for m, c in coefficients.items() if c})
