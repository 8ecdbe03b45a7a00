# gaussian.py
"""
Exact scalars of the toolkit: Gaussian rationals from sympy's ``QQ_I`` field,
plus the seeded sampler every randomized routine draws from.
"""
import hashlib
import random
from typing import Any, List, Sequence, Tuple, Union

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational


# ints, rational strings such as "3/2", or QQ elements
RationalLike = Union[int, str, Any]


def parse_rational(text: Union[str, int]):
    """Parse '3/2', '-4' or an int into a QQ element"""
    if isinstance(text, int):
        return QQ(text)
    if not isinstance(text, str):
        return QQ.convert(text)
    raw = text.strip()
    try:
        if '/' in raw:
            numerator, denominator = raw.split('/', 1)
            if int(denominator) == 0:
                raise ValueError("zero denominator")
            return QQ(int(numerator), int(denominator))
        return QQ(int(raw))
    except ValueError as e:
        raise ValueError(f"Invalid rational {text!r}: {e}")


def gauss(re: RationalLike = 0, im: RationalLike = 0) -> GaussianRational:
    """Build re + i*im from ints, rational strings or QQ elements"""
    return QQ_I(to_rational(re), to_rational(im))


def to_rational(value):
    if isinstance(value, (str, int)):
        return parse_rational(value)
    return QQ.convert(value)


def to_gaussian(value) -> GaussianRational:
    """Coerce ints, QQ elements, (re, im) pairs and Gaussian rationals"""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (tuple, list)):
        re, im = value
        return gauss(re, im)
    if isinstance(value, str):
        return gauss(value, 0)
    return QQ_I.convert(value)


def conj(z: GaussianRational) -> GaussianRational:
    return QQ_I(z.x, -z.y)


def abs2(z: GaussianRational):
    """|z|^2 as a QQ element"""
    return z.x * z.x + z.y * z.y


def is_real(z: GaussianRational) -> bool:
    return z.y == 0


def real_part(z: GaussianRational):
    return z.x


def sign_of(value) -> int:
    """Sign of a real QQ element or of a Gaussian rational known to be real"""
    if isinstance(value, GaussianRational):
        if value.y != 0:
            raise ValueError(f"{value} is not real")
        value = value.x
    return (value > 0) - (value < 0)


def format_rational(q) -> str:
    return str(q)


def gaussian_to_json(z: GaussianRational) -> List[str]:
    return [format_rational(z.x), format_rational(z.y)]


def gaussian_from_json(pair) -> GaussianRational:
    if isinstance(pair, (int, str)):
        return gauss(pair, 0)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"Expected a [re, im] pair, got {pair!r}")
    return gauss(pair[0], pair[1])


def derive_seed(seed: int, *labels) -> int:
    """Stable 63-bit child seed; independent of PYTHONHASHSEED"""
    payload = ":".join([str(seed)] + [str(label) for label in labels])
    digest = hashlib.sha256(payload.encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big') >> 1


class RationalSampler:
    """
    Deterministic source of random exact scalars. Numerators are drawn from
    [-height, height] and denominators from [1, height].
    """

    def __init__(self, seed: int, height: int = 10):
        if height < 1:
            raise ValueError("height must be at least 1")
        self.seed = seed
        self.height = height
        self.rng = random.Random(seed)

    def spawn(self, *labels) -> "RationalSampler":
        return RationalSampler(derive_seed(self.seed, *labels), self.height)

    def integer(self, low: int, high: int) -> int:
        return self.rng.randint(low, high)

    def rational(self, nonzero: bool = False):
        while True:
            numerator = self.rng.randint(-self.height, self.height)
            if numerator or not nonzero:
                return QQ(numerator, self.rng.randint(1, self.height))

    def gaussian(self, nonzero: bool = False) -> GaussianRational:
        while True:
            z = QQ_I(self.rational(), self.rational())
            if z or not nonzero:
                return z

    def unit(self) -> GaussianRational:
        """A unit-modulus Gaussian rational (a+bi)^2/(a^2+b^2)"""
        while True:
            a = self.rng.randint(-self.height, self.height)
            b = self.rng.randint(-self.height, self.height)
            if a or b:
                return QQ_I(a, b) ** 2 / QQ_I(a * a + b * b, 0)

    def vector(self, n: int) -> Tuple[GaussianRational, ...]:
        return tuple(self.gaussian() for _ in range(n))

    def nonzero_vector(self, n: int) -> Tuple[GaussianRational, ...]:
        while True:
            v = self.vector(n)
            if any(v):
                return v

    def matrix(self, rows: int, cols: int) -> List[List[GaussianRational]]:
        return [list(self.vector(cols)) for _ in range(rows)]

    def choice(self, items: Sequence):
        return self.rng.choice(list(items))

    def shuffle(self, items: list) -> list:
        items = list(items)
        self.rng.shuffle(items)
        return items

    def coin(self, p: float = 0.5) -> bool:
        return self.rng.random() < p
