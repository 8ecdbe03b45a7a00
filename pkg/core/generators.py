# generators.py
"""
Deterministic instance generators: exact isometries, standard, null and
quasi-standard maps, the introductory example family and the known
orthogonal maps outside every rigidity hypothesis.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I

from core.errors import CapacityError, NoNullPointsError, SignatureError
from core.gaussian import RationalSampler, derive_seed, to_gaussian
from core.grassmann import random_unitary
from core.hermitian import Row, Signature, Subspace, Vector, identity_rows, mat_mul, null_basis
from core.maps import (RationalMap, Verdict, compose_linear_target, gram_scalar,
                       remove_common_factor, swap_signature)
from core.polyalg import monomials_of_degree, parse_polynomial, random_homogeneous, z_ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenSpec:
    source: Signature
    target: Signature
    degree: int = 1
    seed: int = 0
    height: int = 10

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if self.source.is_weighted or self.target.is_weighted:
            raise SignatureError("generators work with canonical signatures")

    @property
    def mixed(self) -> bool:
        """seed 0 keeps the unmixed block structure"""
        return self.seed != 0

    def sampler(self, *labels) -> RationalSampler:
        return RationalSampler(derive_seed(self.seed, self.source.label(), self.target.label(),
                                           self.degree, *labels), self.height)


# ---------------------------------------------------------------------------
# exact isometries

def _rotate(m: List[List], i: int, j: int, a, b, c, d):
    """rows (i, j) <- [[a, b], [c, d]] (row_i, row_j)"""
    row_i, row_j = m[i], m[j]
    m[i] = [a * x + b * y for x, y in zip(row_i, row_j)]
    m[j] = [c * x + d * y for x, y in zip(row_i, row_j)]


def random_isometry(sig: Signature, sampler: RationalSampler, steps: Optional[int] = None) -> List[Row]:
    """
    Exact M with M^H J M = J: unitary mixing inside the positive and negative
    blocks, hyperbolic boosts ((1+t^2)/(1-t^2), 2t/(1-t^2)) between a positive
    and a negative coordinate, and shears of the degenerate coordinates.
    """
    if sig.is_weighted:
        raise SignatureError("isometries are built for canonical signatures only")
    n, r, s = sig.n, sig.r, sig.s
    m = [list(row) for row in identity_rows(n)]
    for start, size in ((0, r), (r, s)):
        if size:
            block = random_unitary(size, sampler)
            for i in range(size):
                for j in range(size):
                    m[start + i][start + j] = block[i][j]
    for _ in range(n if steps is None else steps):
        if r and s:
            p, q = sampler.integer(0, r - 1), r + sampler.integer(0, s - 1)
            t = sampler.rational()
            while t * t == 1:
                t = sampler.rational()
            ch = QQ_I((1 + t * t) / (1 - t * t), 0)
            sh = QQ_I(2 * t / (1 - t * t), 0)
            _rotate(m, p, q, ch, sh, sh, ch)
        if sig.t:
            k = r + s + sampler.integer(0, sig.t - 1)
            j = sampler.integer(0, n - 1)
            if j != k:
                c = sampler.gaussian()
                m[k] = [x + c * y for x, y in zip(m[k], m[j])]
    return [tuple(row) for row in m]


def block_embedding(source: Signature, target: Signature) -> List[Row]:
    """n' x n matrix sending the positive / negative units of the source to the first ones of the target"""
    if target.r < source.r or target.s < source.s:
        raise CapacityError(f"{source} does not embed isometrically in {target}")
    rows = [[QQ_I.zero] * source.n for _ in range(target.n)]
    for i in range(source.r):
        rows[i][i] = QQ_I.one
    for i in range(source.s):
        rows[target.r + i][source.r + i] = QQ_I.one
    return [tuple(row) for row in rows]


def gen_isometry_matrix(spec: GenSpec) -> List[Row]:
    matrix = block_embedding(spec.source, spec.target)
    if spec.mixed:
        sampler = spec.sampler("isometry")
        matrix = mat_mul(random_isometry(spec.target, sampler), mat_mul(matrix, random_isometry(spec.source, sampler)))
    return matrix


def gen_standard(spec: GenSpec) -> RationalMap:
    return RationalMap.linear(spec.source, spec.target, gen_isometry_matrix(spec), "standard")


def gen_scaled_isometry(spec: GenSpec, scale) -> RationalMap:
    """Isometry times a scalar c; the Gram scalar is |c|^2"""
    c = to_gaussian(scale)
    matrix = [tuple(c * x for x in row) for row in gen_isometry_matrix(spec)]
    return RationalMap.linear(spec.source, spec.target, matrix, "scaled-isometry")


def gen_linear(spec: GenSpec) -> RationalMap:
    """Random linear map that is not a scaled isometry"""
    sampler = spec.sampler("linear")
    while True:
        matrix = sampler.matrix(spec.target.n, spec.source.n)
        if any(any(row) for row in matrix) and gram_scalar(matrix, spec.source, spec.target) is None:
            return RationalMap.linear(spec.source, spec.target, matrix, "linear")


# ---------------------------------------------------------------------------
# null maps

def random_null_subspace(sig: Signature, sampler: RationalSampler, dim: Optional[int] = None,
                         mixed: bool = True) -> Subspace:
    """Image of (part of) the coordinate null basis under a random isometry"""
    basis = null_basis(sig)
    if not basis:
        raise NoNullPointsError(f"{sig} has no null points")
    if dim is None:
        dim = sampler.integer(1, len(basis))
    rows = sampler.shuffle(basis)[:dim] if mixed else basis[:dim]
    if mixed:
        rows = mat_mul(rows, _transpose(random_isometry(sig, sampler)))
    return Subspace.from_basis(rows, sig)


def _transpose(m: Sequence[Sequence]) -> List[Tuple]:
    return [tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0]))]


def random_null_vector(sig: Signature, sampler: RationalSampler) -> Vector:
    """Isometry image of e_p + u e_n plus a random degenerate part"""
    if sig.is_weighted:
        raise SignatureError("null vectors are built for canonical signatures only")
    if min(sig.r, sig.s) + sig.t < 1:
        raise NoNullPointsError(f"{sig} has no null points")
    while True:
        coords = [QQ_I.zero] * sig.n
        if sig.r and sig.s:
            coords[sampler.integer(0, sig.r - 1)] = QQ_I.one
            coords[sig.r + sampler.integer(0, sig.s - 1)] = sampler.unit()
        for k in range(sig.r + sig.s, sig.n):
            coords[k] = sampler.gaussian()
        if any(coords):
            break
    isometry = random_isometry(sig, sampler)
    image = [sum((isometry[i][j] * coords[j] for j in range(sig.n)), QQ_I.zero) for i in range(sig.n)]
    c = sampler.gaussian(nonzero=True)
    return Vector(tuple(c * x for x in image), sig)


def _null_map(source: Signature, target: Signature, rows: Sequence[Row], degree: int,
              sampler: RationalSampler) -> List:
    ring = z_ring(source.n)
    count = sampler.integer(1, len(rows))
    components = [ring.zero] * target.n
    for row in rows[:count]:
        psi = random_homogeneous(ring, degree, sampler)
        for l, c in enumerate(row):
            if c:
                components[l] += psi.mul_ground(c)
    return components


def gen_null(spec: GenSpec) -> RationalMap:
    target = spec.target
    if min(target.r, target.s) + target.t < 1:
        raise NoNullPointsError(f"{target} has no null points")
    sampler = spec.sampler("null")
    rows = null_basis(target)
    if spec.mixed:
        isometry = random_isometry(target, sampler)
        rows = mat_mul(rows, _transpose(isometry))
        rows = sampler.shuffle(rows)
    return RationalMap(spec.source, target, tuple(_null_map(spec.source, target, rows, spec.degree, sampler)), "null")


# ---------------------------------------------------------------------------
# quasi-standard maps

def quasi_capacity(source: Signature, target: Signature) -> bool:
    if target.r < source.r or target.s < source.s:
        return False
    return min(target.r - source.r, target.s - source.s) + target.t >= 1


def gen_quasi_standard(spec: GenSpec, attempts: int = 16) -> RationalMap:
    """
    (phi * L) (+) N: L an isometric embedding into the first coordinates, phi of
    degree d-1, N a null map of degree d into the orthogonal rest, then a
    random target isometry. Redrawn while the common factor would make the
    map linear.
    """
    source, target = spec.source, spec.target
    if spec.degree < 2:
        raise CapacityError("quasi-standard maps need degree >= 2")
    if not quasi_capacity(source, target):
        raise CapacityError(f"{target} cannot hold {source} plus a null block")
    ring = z_ring(source.n)
    embedding = block_embedding(source, target)
    rest = Signature(target.r - source.r, target.s - source.s, target.t)
    rest_index = (list(range(source.r, target.r)) + list(range(target.r + source.s, target.r + target.s))
                  + list(range(target.r + target.s, target.n)))
    for attempt in range(attempts):
        sampler = spec.sampler("quasi", attempt)
        linear = embedding
        if spec.mixed:
            linear = mat_mul(embedding, random_isometry(source, sampler))
        phi = random_homogeneous(ring, spec.degree - 1, sampler)
        components = []
        for row in linear:
            form = sum((g.mul_ground(c) for c, g in zip(row, ring.gens) if c), ring.zero)
            components.append(form * phi)
        null_part = _null_map(source, rest, null_basis(rest), spec.degree, sampler)
        for i, p in zip(rest_index, null_part):
            components[i] += p
        F = RationalMap(source, target, tuple(components), "quasi-standard")
        if spec.mixed:
            F = compose_linear_target(random_isometry(target, sampler), F)
        if remove_common_factor(F)[1].degree >= 2:
            return F.with_label("quasi-standard")
        logger.debug(f"quasi-standard draw {attempt} collapsed to a linear map, redrawing")
    raise CapacityError(f"could not draw a non-linear quasi-standard map for {spec}")


def gen_example_family(phi, psi, chi, source: Signature) -> RationalMap:
    """
    [phi z+, psi, phi z-, psi, chi] from (r, s) into (r+1, s+1, 1); the
    arguments are polynomials or polynomial text.
    """
    if source.t:
        raise SignatureError("the example family is defined on nondegenerate sources")
    phi, psi, chi = (parse_polynomial(p, source.n, pair=False) if isinstance(p, str) else p
                     for p in (phi, psi, chi))
    gens = z_ring(source.n).gens
    components = ([phi * g for g in gens[:source.r]] + [psi]
                  + [phi * g for g in gens[source.r:]] + [psi, chi])
    target = Signature(source.r + 1, source.s + 1, 1)
    return RationalMap(source, target, tuple(components), "example-family")


def example_instance() -> RationalMap:
    """[z1^2, z2^2, z1 z2, z2^2, z2^2] from (1,1) into (2,2,1)"""
    return gen_example_family("z1", "z2^2", "z2^2", Signature(1, 1, 0))


# ---------------------------------------------------------------------------
# maps outside the rigidity hypotheses

def power_map(degree: int) -> RationalMap:
    """[z1^d, z2^d] on (1,1): orthogonal and unclassified for d >= 2"""
    sig = Signature(1, 1, 0)
    return RationalMap.from_strings(sig, sig, [f"z1^{degree}", f"z2^{degree}"], "power-map")


def whitney_map() -> RationalMap:
    """Homogenized Whitney map of the ball, (1,2) -> (1,3)"""
    return RationalMap.from_strings(Signature(1, 2, 0), Signature(1, 3, 0),
                                    ["z1^2", "z1*z2", "z2*z3", "z3^2"], "whitney")


def perturb_map(F: RationalMap, sampler: RationalSampler) -> RationalMap:
    """Add a random nonzero multiple of a random monomial to a random component"""
    ring = F.ring
    while True:
        index = sampler.integer(0, F.target.n - 1)
        monom = sampler.choice(monomials_of_degree(F.source.n, F.degree))
        components = list(F.components)
        components[index] = components[index] + ring.from_dict({monom: sampler.gaussian(nonzero=True)})
        if any(components):
            return RationalMap(F.source, F.target, tuple(components), f"perturbed:{F.label}")


# ---------------------------------------------------------------------------
# mixtures

STANDARD = frozenset({Verdict.STANDARD})
NULLISH = frozenset({Verdict.NULL, Verdict.CONSTANT})
QUASI = frozenset({Verdict.QUASI_STANDARD})


def _standard_swapped(spec: GenSpec) -> RationalMap:
    swapped = GenSpec(spec.source.swapped(), spec.target.swapped(), spec.degree, spec.seed, spec.height)
    return swap_signature(gen_standard(swapped))


def _example_for(spec: GenSpec) -> RationalMap:
    sampler = spec.sampler("example")
    ring = z_ring(spec.source.n)
    phi = random_homogeneous(ring, spec.degree - 1, sampler)
    psi = random_homogeneous(ring, spec.degree, sampler)
    chi = random_homogeneous(ring, spec.degree, sampler)
    return gen_example_family(phi, psi, chi, spec.source)


MIXTURES: Dict[str, Tuple[Callable[[GenSpec], RationalMap], FrozenSet[Verdict]]] = {
    "standard": (gen_standard, STANDARD),
    "standard∘swap": (_standard_swapped, STANDARD),
    "null": (gen_null, NULLISH),
    "quasi-standard": (gen_quasi_standard, QUASI),
    "example-family": (_example_for, frozenset({Verdict.QUASI_STANDARD, Verdict.STANDARD})),
    "power-map": (lambda spec: power_map(spec.degree), frozenset({Verdict.UNCLASSIFIED})),
    "whitney": (lambda spec: whitney_map(), frozenset({Verdict.UNCLASSIFIED})),
}


def gen_orthogonal_mixture(spec: GenSpec, label: str) -> Tuple[RationalMap, FrozenSet[Verdict]]:
    """Build the labelled construction and the verdicts it is expected to receive"""
    if label not in MIXTURES:
        raise ValueError(f"Unknown construction {label!r}. Available: {', '.join(MIXTURES)}")
    builder, expected = MIXTURES[label]
    return builder(spec).with_label(label), expected
