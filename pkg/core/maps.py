# maps.py
"""
Rational maps between indefinite projective spaces and their taxonomy.

A map is a tuple of homogeneous polynomials of one common degree over the
Gaussian rationals. Orthogonality is decided by dividing the Hermitian
pullback by the polarized source quadric; the classification ladder runs
Constant, Null, Standard, Linear, QuasiStandard, QuasiLinear and ends in the
honest Unclassified verdict.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement

from core.errors import (DecompositionError, DegenerateFormError, DegreeMismatchError,
                         DimensionError, IndeterminacyError, ShapeError,
                         UnsupportedSignatureError)
from core.gaussian import RationalSampler, derive_seed, to_gaussian
from core.hermitian import (PointKind, Signature, Subspace, Vector, conj_transpose,
                            diagonal_basis, domain_matrix, form_value, is_null_subspace,
                            mat_mul, matrix_rows, orthogonal_complement, point_sign)
from core.polyalg import (conj_to_second_block, degree_of, evaluate, exact_quotient,
                          format_polynomial, lift_to_pair_ring, pair_ring, parse_polynomial,
                          poly_gcd, reduce_by, substitute_linear, z_ring)

logger = logging.getLogger(__name__)


class Verdict(Enum):
    CONSTANT = "Constant"
    NULL = "Null"
    STANDARD = "Standard"
    LINEAR = "Linear"
    QUASI_STANDARD = "QuasiStandard"
    QUASI_LINEAR = "QuasiLinear"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class RationalMap:
    source: Signature
    target: Signature
    components: Tuple[PolyElement, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        components = tuple(self.components)
        if len(components) != self.target.n:
            raise DimensionError(f"{len(components)} components for a target of dimension {self.target.n}")
        ring = z_ring(self.source.n)
        for c in components:
            if c.ring != ring:
                raise DimensionError(f"component {format_polynomial(c)} is not a polynomial in "
                                     f"{self.source.n} variables")
        degrees = {degree_of(c) for c in components if c}
        if not degrees:
            raise IndeterminacyError("all components vanish identically")
        if len(degrees) != 1:
            raise DegreeMismatchError(f"components have different degrees {sorted(degrees)}")
        object.__setattr__(self, 'components', components)

    @classmethod
    def from_strings(cls, source: Signature, target: Signature, texts: Sequence[str],
                     label: Optional[str] = None) -> "RationalMap":
        return cls(source, target, tuple(parse_polynomial(t, source.n, pair=False) for t in texts), label)

    @classmethod
    def linear(cls, source: Signature, target: Signature, matrix: Sequence[Sequence],
               label: Optional[str] = None) -> "RationalMap":
        """Map z -> M z for an n' x n matrix M"""
        if len(matrix) != target.n or any(len(row) != source.n for row in matrix):
            raise ShapeError(f"expected a {target.n}x{source.n} matrix")
        ring = z_ring(source.n)
        components = []
        for row in matrix:
            terms = {}
            for j, c in enumerate(row):
                c = to_gaussian(c)
                if c:
                    terms[tuple(int(i == j) for i in range(source.n))] = c
            components.append(ring.from_dict(terms))
        return cls(source, target, tuple(components), label)

    @classmethod
    def identity(cls, sig: Signature) -> "RationalMap":
        return cls.linear(sig, sig, [[int(i == j) for j in range(sig.n)] for i in range(sig.n)], "identity")

    @property
    def degree(self) -> int:
        return next(degree_of(c) for c in self.components if c)

    @property
    def ring(self):
        return z_ring(self.source.n)

    def with_label(self, label: str) -> "RationalMap":
        return RationalMap(self.source, self.target, self.components, label)

    def texts(self) -> List[str]:
        return [format_polynomial(c) for c in self.components]

    def __str__(self):
        return f"[{', '.join(self.texts())}] : {self.source} -> {self.target}"


# ---------------------------------------------------------------------------
# evaluation and image

def evaluate_map(F: RationalMap, point) -> Vector:
    coords = point.coords if isinstance(point, Vector) else point
    if len(coords) != F.source.n:
        raise DimensionError(f"point of length {len(coords)} for a source of dimension {F.source.n}")
    return Vector(tuple(evaluate(c, coords) for c in F.components), F.target)


def coefficient_vectors(F: RationalMap) -> List[Tuple]:
    """One target vector per monomial occurring in F, in descending monomial order"""
    monomials = sorted({m for c in F.components for m in c.itermonoms()}, reverse=True)
    return [tuple(c.get(m, QQ_I.zero) for c in F.components)
            for m in monomials]


def image_span(F: RationalMap) -> Subspace:
    """Linear span of the image: monomials are independent functions"""
    return Subspace.span(coefficient_vectors(F), F.target)


def is_null_map(F: RationalMap) -> bool:
    return is_null_subspace(image_span(F))


# ---------------------------------------------------------------------------
# common factor and linear part

def remove_common_factor(F: RationalMap) -> Tuple[PolyElement, RationalMap]:
    phi = poly_gcd(list(F.components))
    if phi.is_ground:
        return phi, F
    reduced = tuple(exact_quotient(c, phi) if c else c for c in F.components)
    return phi, RationalMap(F.source, F.target, reduced, F.label)


def reduced_degree(F: RationalMap) -> int:
    return remove_common_factor(F)[1].degree


def is_constant(F: RationalMap) -> bool:
    return reduced_degree(F) == 0


def is_linear(F: RationalMap) -> bool:
    return reduced_degree(F) == 1


def linear_matrix(F: RationalMap) -> List[Tuple]:
    """n' x n matrix of a degree-one map"""
    if F.degree != 1:
        raise DegreeMismatchError(f"map of degree {F.degree} has no matrix")
    n = F.source.n
    units = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return [tuple(c.get(u, QQ_I.zero) for u in units) for c in F.components]


def gram_scalar(matrix: Sequence[Sequence], source: Signature, target: Signature):
    """
    lambda with M^H J' M = lambda J exactly, or None. J and J' are the
    (weighted) diagonal forms of source and target.
    """
    if len(matrix) != target.n or any(len(row) != source.n for row in matrix):
        raise ShapeError(f"expected a {target.n}x{source.n} matrix, got {len(matrix)} rows")
    matrix = [[to_gaussian(x) for x in row] for row in matrix]
    weighted = [tuple(e * x for x in row) for e, row in zip(target.eps_gaussian, matrix)]
    k = mat_mul(conj_transpose(matrix), weighted)
    eps = source.eps
    anchor = next((j for j in range(source.n) if eps[j]), None)
    if anchor is None:
        return None
    lam = k[anchor][anchor].x / eps[anchor]
    for i in range(source.n):
        for j in range(source.n):
            expected = lam * eps[i] if i == j else 0
            if k[i][j] != QQ_I(expected, 0):
                return None
    return lam


def gram_capacity_holds(lam, source: Signature, target: Signature) -> bool:
    """lambda > 0 forces r <= r' and s <= s'; lambda < 0 the swapped pair"""
    if lam is None or not lam:
        return True
    if lam > 0:
        return source.r <= target.r and source.s <= target.s
    return source.r <= target.s and source.s <= target.r


def is_standard(F: RationalMap):
    """Positive Gram scalar of the reduced linear map, or None"""
    _, reduced = remove_common_factor(F)
    if reduced.degree != 1:
        return None
    lam = gram_scalar(linear_matrix(reduced), F.source, F.target)
    return lam if lam is not None and lam > 0 else None


# ---------------------------------------------------------------------------
# orthogonality

def quadric_form(sig: Signature) -> PolyElement:
    """Q(z, w) = sum eps_j z_j w_j in the pair ring"""
    if sig.r + sig.s == 0:
        raise DegenerateFormError(f"the form of {sig} is identically zero")
    ring = pair_ring(sig.n)
    terms = {}
    for j, e in enumerate(sig.eps_gaussian):
        if e:
            terms[tuple(int(i == j or i == sig.n + j) for i in range(2 * sig.n))] = e
    return ring.from_dict(terms)


def hermitian_pullback(F: RationalMap) -> PolyElement:
    """P(z, w) = sum eps'_l F_l(z) conj(F_l)(w)"""
    ring = pair_ring(F.source.n)
    total = ring.zero
    for e, c in zip(F.target.eps_gaussian, F.components):
        if e and c:
            total += (lift_to_pair_ring(c) * conj_to_second_block(c)).mul_ground(e)
    return total


@dataclass(frozen=True)
class OrthogonalityResult:
    orthogonal: bool
    k: int
    rho: PolyElement
    remainder: PolyElement


def is_orthogonal(F: RationalMap) -> OrthogonalityResult:
    """
    F is orthogonal iff Q divides P. An identically zero pullback is
    orthogonal with k = 0 and rho = 0.
    """
    if F.source.r + F.source.s < 2:
        raise UnsupportedSignatureError(f"source {F.source} needs r+s >= 2 for the divisibility test")
    pullback = hermitian_pullback(F)
    zero = pullback.ring.zero
    if not pullback:
        return OrthogonalityResult(True, 0, zero, zero)
    result = reduce_by(pullback, quadric_form(F.source))
    if result.k:
        return OrthogonalityResult(True, result.k, result.quotient, zero)
    return OrthogonalityResult(False, 0, zero, result.remainder)


# ---------------------------------------------------------------------------
# decompositions and projections

@dataclass(frozen=True)
class OrthogonalDecomposition:
    A: Subspace
    B: Subspace

    def validate(self) -> "OrthogonalDecomposition":
        if self.A.sig != self.B.sig:
            raise DecompositionError("A and B live in different spaces")
        for a in self.A.basis:
            for b in self.B.basis:
                if form_value(self.A.sig, a, b):
                    raise DecompositionError("A and B are not orthogonal")
        if self.A.dim + self.B.dim != self.A.sig.n or self.A.sum(self.B).dim != self.A.sig.n:
            raise DecompositionError("A and B do not form a direct sum of the whole space")
        return self

    def swapped(self) -> "OrthogonalDecomposition":
        return OrthogonalDecomposition(self.B, self.A)


def restricted_signature(space: Subspace) -> Tuple[Signature, List[Tuple]]:
    """Weighted signature of the restricted form and the diagonal basis carrying it"""
    pairs = diagonal_basis(space)
    a, b, c = space.derived_abc
    return Signature(a, b, c, tuple(d for _, d in pairs)), [row for row, _ in pairs]


def project(F: RationalMap, S: Subspace, T: Optional[Subspace] = None) -> RationalMap:
    """
    pi_S o F for the declared decomposition S (+) T (T defaults to the
    orthogonal complement of S). Coordinates are taken in a diagonal basis of
    S so the projected map lands in the weighted signature of S.
    """
    if T is None:
        T = orthogonal_complement(S)
    OrthogonalDecomposition(S, T).validate()
    if not S.dim:
        raise IndeterminacyError("projection onto the zero subspace")
    sig, rows = restricted_signature(S)
    change = rows + list(T.basis)
    inverse = matrix_rows(domain_matrix(change, F.target.n).inv())
    ring = F.ring
    components = []
    for i in range(S.dim):
        total = ring.zero
        for l, c in enumerate(F.components):
            coefficient = inverse[l][i]
            if c and coefficient:
                total += c.mul_ground(coefficient)
        components.append(total)
    if not any(components):
        raise IndeterminacyError("the image lies entirely in the complementary subspace")
    return RationalMap(F.source, sig, tuple(components), F.label)


def verify_quasi(F: RationalMap, A: Subspace, B: Subspace, mode: str = "standard") -> bool:
    """Independent re-check of a quasi-standard / quasi-linear witness"""
    try:
        OrthogonalDecomposition(A, B).validate()
    except DecompositionError:
        return False
    try:
        part_a = project(F, A, B)
    except IndeterminacyError:
        return False
    if mode == "standard":
        if is_standard(part_a) is None:
            return False
    elif not is_linear(part_a):
        return False
    if not B.dim:
        return True
    try:
        part_b = project(F, B, A)
    except IndeterminacyError:
        return True
    return is_null_map(part_b)


def decompose_quasi(F: RationalMap, mode: str = "standard", retries: int = 8,
                    seed: int = 0, height: int = 10) -> Optional[OrthogonalDecomposition]:
    """
    A = nondegenerate part of the image span W, B = A's complement; the
    radical of W then sits in B. If the canonical A fails, retry with A
    shifted by random radical components.
    """
    if mode not in ("standard", "linear"):
        raise ValueError(f"mode must be 'standard' or 'linear', got {mode!r}")
    W = image_span(F)
    pairs = diagonal_basis(W)
    nondegenerate = [row for row, d in pairs if d]
    radical_rows = [row for row, d in pairs if not d]
    if not nondegenerate:
        return None

    candidates = [nondegenerate]
    if radical_rows:
        sampler = RationalSampler(derive_seed(seed, "decompose", mode), height)
        for _ in range(retries):
            shifted = []
            for row in nondegenerate:
                shift = list(row)
                for n_row in radical_rows:
                    c = sampler.gaussian()
                    if c:
                        shift = [x + c * y for x, y in zip(shift, n_row)]
                shifted.append(tuple(shift))
            candidates.append(shifted)

    for attempt, rows in enumerate(candidates):
        A = Subspace.span(rows, F.target)
        B = orthogonal_complement(A)
        if verify_quasi(F, A, B, mode):
            logger.debug(f"quasi-{mode} decomposition found on attempt {attempt}")
            return OrthogonalDecomposition(A, B)
    logger.debug(f"no quasi-{mode} decomposition after {len(candidates)} attempts")
    return None


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class MapClass:
    verdict: Verdict
    decomposition: Optional[OrthogonalDecomposition] = None
    common_factor: Optional[PolyElement] = None
    gram_scalar: Optional[object] = None

    @property
    def A(self) -> Optional[Subspace]:
        return self.decomposition.A if self.decomposition else None

    @property
    def B(self) -> Optional[Subspace]:
        return self.decomposition.B if self.decomposition else None


def classify(F: RationalMap, retries: int = 8, seed: int = 0) -> MapClass:
    phi, reduced = remove_common_factor(F)
    factor = phi if not phi.is_ground else None
    if reduced.degree == 0:
        return MapClass(Verdict.CONSTANT, common_factor=factor)
    if is_null_map(F):
        return MapClass(Verdict.NULL, common_factor=factor)
    if reduced.degree == 1:
        lam = gram_scalar(linear_matrix(reduced), F.source, F.target)
        if lam is not None and lam > 0:
            return MapClass(Verdict.STANDARD, common_factor=factor, gram_scalar=lam)
        return MapClass(Verdict.LINEAR, common_factor=factor)
    for mode, verdict in (("standard", Verdict.QUASI_STANDARD), ("linear", Verdict.QUASI_LINEAR)):
        decomposition = decompose_quasi(F, mode, retries, seed)
        if decomposition is not None:
            lam = is_standard(project(F, decomposition.A, decomposition.B)) if mode == "standard" else None
            return MapClass(verdict, decomposition, factor, lam)
    logger.debug(f"unclassified: {F}")
    return MapClass(Verdict.UNCLASSIFIED, common_factor=factor)


# ---------------------------------------------------------------------------
# symmetries and constructions

def _permute_variables(p: PolyElement, perm: Sequence[int], ring) -> PolyElement:
    """new variable i is old variable perm[i]"""
    return ring.from_dict({tuple(m[perm[i]] for i in range(len(perm))): c for m, c in p.iterterms()})


def swap_signature(F: RationalMap) -> RationalMap:
    """Negate both forms: (r, s) blocks exchange in source and target"""
    source, target = F.source.swapped(), F.target.swapped()
    ring = z_ring(source.n)
    source_perm = F.source.swap_permutation()
    target_perm = F.target.swap_permutation()
    components = tuple(_permute_variables(F.components[target_perm[i]], source_perm, ring)
                       for i in range(target.n))
    return RationalMap(source, target, components, F.label)


def swap_subspace(space: Subspace) -> Subspace:
    perm = space.sig.swap_permutation()
    return Subspace.span([tuple(row[perm[i]] for i in range(len(perm))) for row in space.basis],
                         space.sig.swapped())


def compose_linear_target(matrix: Sequence[Sequence], F: RationalMap,
                          target: Optional[Signature] = None) -> RationalMap:
    """z -> M F(z)"""
    target = target or F.target
    if len(matrix) != target.n or any(len(row) != F.target.n for row in matrix):
        raise ShapeError(f"expected a {target.n}x{F.target.n} matrix")
    components = []
    for row in matrix:
        total = F.ring.zero
        for c, p in zip(row, F.components):
            c = to_gaussian(c)
            if c and p:
                total += p.mul_ground(c)
        components.append(total)
    return RationalMap(F.source, target, tuple(components), F.label)


def compose_linear_source(F: RationalMap, matrix: Sequence[Sequence],
                          source: Optional[Signature] = None) -> RationalMap:
    """z -> F(M z) for an n x m matrix M"""
    source = source or F.source
    if len(matrix) != F.source.n or any(len(row) != source.n for row in matrix):
        raise ShapeError(f"expected a {F.source.n}x{source.n} matrix")
    ring = z_ring(source.n)
    return RationalMap(source, F.target,
                       tuple(substitute_linear(c, matrix, ring) for c in F.components), F.label)


def _block_order(sigs: Sequence[Signature]) -> List[Tuple[int, int]]:
    """(summand, coordinate) pairs in positive, negative, degenerate block order"""
    order = []
    for block in range(3):
        for k, sig in enumerate(sigs):
            start = (0, sig.r, sig.r + sig.s)[block]
            size = (sig.r, sig.s, sig.t)[block]
            order.extend((k, start + i) for i in range(size))
    return order


def direct_sum(F: RationalMap, G: RationalMap) -> RationalMap:
    """[F, G] into the orthogonal sum of the targets, blocks merged"""
    if F.source != G.source:
        raise DimensionError("direct sum needs a common source")
    sigs = [F.target, G.target]
    order = _block_order(sigs)
    weights = tuple(sigs[k].eps[i] for k, i in order)
    target = Signature(F.target.r + G.target.r, F.target.s + G.target.s, F.target.t + G.target.t, weights)
    maps = [F, G]
    return RationalMap(F.source, target, tuple(maps[k].components[i] for k, i in order))


def embed_degenerate(F: RationalMap, extra: int) -> RationalMap:
    """Append ``extra`` identically-zero degenerate components"""
    weights = F.target.eps + tuple([0] * extra)
    target = Signature(F.target.r, F.target.s, F.target.t + extra, weights)
    return RationalMap(F.source, target, F.components + (F.ring.zero,) * extra, F.label)


# ---------------------------------------------------------------------------
# sampling views

@dataclass
class SignReport:
    trials: int
    counts: Dict[Tuple[str, str], int] = field(default_factory=dict)
    indeterminate: int = 0

    def count(self, source_kind: PointKind, target_kind: PointKind) -> int:
        return self.counts.get((source_kind.value, target_kind.value), 0)

    @property
    def positive_to_positive(self) -> int:
        return self.count(PointKind.POSITIVE, PointKind.POSITIVE)

    @property
    def negative_to_negative(self) -> int:
        return self.count(PointKind.NEGATIVE, PointKind.NEGATIVE)

    @property
    def positive_violations(self) -> int:
        return sum(v for (a, b), v in self.counts.items() if a == "Positive" and b != "Positive")

    @property
    def negative_violations(self) -> int:
        return sum(v for (a, b), v in self.counts.items() if a == "Negative" and b != "Negative")

    @property
    def preserves_signs(self) -> bool:
        return not self.positive_violations and not self.negative_violations

    @property
    def single_point_evidence(self) -> bool:
        """some positive point went to a positive point, or a negative one to a negative"""
        return self.positive_to_positive > 0 or self.negative_to_negative > 0

    def to_dict(self) -> Dict:
        return {
            "trials": self.trials,
            "indeterminate": self.indeterminate,
            "counts": {f"{a}->{b}": v for (a, b), v in sorted(self.counts.items())},
        }


def sign_sample(F: RationalMap, trials: int, seed: int, height: int = 10) -> SignReport:
    sampler = RationalSampler(derive_seed(seed, "sign-sample"), height)
    counts: Counter = Counter()
    indeterminate = 0
    for _ in range(trials):
        z = Vector(sampler.nonzero_vector(F.source.n), F.source)
        image = evaluate_map(F, z)
        if image.is_zero:
            indeterminate += 1
            continue
        counts[(point_sign(z).kind.value, point_sign(image).kind.value)] += 1
    return SignReport(trials, dict(counts), indeterminate)


def random_orthogonal_pair(sig: Signature, sampler: RationalSampler) -> Tuple[Vector, Vector]:
    """p random, q = v - (<v,p>/<p,p>) p; the complement of p is sampled when p is null"""
    p = Vector(sampler.nonzero_vector(sig.n), sig)
    pp = form_value(sig, p.coords, p.coords)
    while True:
        if pp:
            v = sampler.nonzero_vector(sig.n)
            c = form_value(sig, v, p.coords) / pp
            coords = tuple(x - c * y for x, y in zip(v, p.coords))
        else:
            complement = orthogonal_complement(Subspace.span([p], sig))
            coords = [QQ_I.zero] * sig.n
            for row in complement.basis:
                c = sampler.gaussian()
                if c:
                    coords = [x + c * y for x, y in zip(coords, row)]
            coords = tuple(coords)
        if any(coords):
            return p, Vector(coords, sig)


def sample_orthogonality(F: RationalMap, pairs: int, seed: int,
                         height: int = 10) -> Optional[Tuple[Vector, Vector]]:
    """First orthogonal input pair whose images are not orthogonal, or None"""
    sampler = RationalSampler(derive_seed(seed, "orthogonal-pairs"), height)
    for _ in range(pairs):
        p, q = random_orthogonal_pair(F.source, sampler)
        fp, fq = evaluate_map(F, p), evaluate_map(F, q)
        if form_value(F.target, fp.coords, fq.coords):
            return p, q
    return None
