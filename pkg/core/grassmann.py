# grassmann.py
"""
Planes of C^{r,s,t}: the chart H_{A,B} = {(z+, z+ A, z+ B)}, the bounded
domain test I - A A^H > 0 and its Shilov boundary A A^H = I, and the linear
span of the image of a plane under a rational map.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from core.errors import DimensionError, IndeterminacyError, ShapeError
from core.gaussian import RationalSampler, derive_seed, to_gaussian
from core.hermitian import Row, Signature, Subspace, conj_transpose, domain_matrix, mat_mul, rank_of
from core.maps import RationalMap, swap_subspace
from core.polyalg import substitute_linear, z_ring

logger = logging.getLogger(__name__)


class PlaneKind(Enum):
    POSITIVE = "Positive"
    NULL = "Null"
    MIXED = "Mixed"


def _as_matrix(rows: Sequence[Sequence], n_rows: int, n_cols: int, name: str) -> Tuple[Row, ...]:
    rows = tuple(tuple(to_gaussian(x) for x in row) for row in rows)
    if len(rows) != n_rows or any(len(row) != n_cols for row in rows):
        raise ShapeError(f"{name} must be {n_rows}x{n_cols}")
    return rows


@dataclass(frozen=True)
class PlaneChart:
    """A is r x s, B is r x t. Empty matrices are tuples of empty rows."""
    A: Tuple[Row, ...]
    B: Tuple[Row, ...]
    sig: Signature

    def __post_init__(self):
        if self.sig.r < 1:
            raise ShapeError("the chart needs r >= 1")
        object.__setattr__(self, 'A', _as_matrix(self.A, self.sig.r, self.sig.s, "A"))
        object.__setattr__(self, 'B', _as_matrix(self.B, self.sig.r, self.sig.t, "B"))

    @classmethod
    def of(cls, sig: Signature, A: Sequence[Sequence], B: Optional[Sequence[Sequence]] = None) -> "PlaneChart":
        if B is None:
            B = [[0] * sig.t for _ in range(sig.r)]
        return cls(A, B, sig)


def plane_from_chart(chart: PlaneChart) -> Subspace:
    """Basis rows (e_i, e_i A, e_i B)"""
    r = chart.sig.r
    rows = []
    for i in range(r):
        unit = tuple(QQ_I.one if j == i else QQ_I.zero for j in range(r))
        rows.append(unit + chart.A[i] + chart.B[i])
    return Subspace.from_basis(rows, chart.sig)


def negative_plane_from_chart(chart: PlaneChart) -> Subspace:
    """(s-1)-plane {(w A, w, w B)} of the original space, chart taken on the swapped signature"""
    return swap_subspace(plane_from_chart(chart))


def _defect(A: Sequence[Sequence]) -> List[List]:
    """I - A A^H"""
    r = len(A)
    if not r:
        return []
    product = mat_mul(A, conj_transpose(A)) if len(A[0]) else [[QQ_I.zero] * r for _ in range(r)]
    return [[(QQ_I.one if i == j else QQ_I.zero) - product[i][j] for j in range(r)] for i in range(r)]


def leading_minors_positive(hermitian: Sequence[Sequence]) -> bool:
    """Sylvester's criterion for a Hermitian matrix"""
    size = len(hermitian)
    for k in range(1, size + 1):
        minor = domain_matrix([row[:k] for row in hermitian[:k]], k).det()
        if minor.y != 0 or minor.x <= 0:
            return False
    return True


def in_omega(A: Sequence[Sequence]) -> bool:
    """I - A A^H positive definite"""
    A = [tuple(to_gaussian(x) for x in row) for row in A]
    return leading_minors_positive(_defect(A))


def on_shilov(A: Sequence[Sequence]) -> bool:
    """A A^H = I exactly; only r <= s"""
    A = [tuple(to_gaussian(x) for x in row) for row in A]
    r, s = len(A), len(A[0]) if A else 0
    if r > s:
        raise ShapeError(f"Shilov boundary test needs r <= s, got {r}x{s}; swap the signature first")
    return all(not x for row in _defect(A) for x in row)


def plane_kind(chart: PlaneChart) -> PlaneKind:
    if in_omega(chart.A):
        return PlaneKind.POSITIVE
    if chart.sig.r <= chart.sig.s and on_shilov(chart.A):
        return PlaneKind.NULL
    return PlaneKind.MIXED


# ---------------------------------------------------------------------------
# exact random charts

def random_unitary(n: int, sampler: RationalSampler, rotations: Optional[int] = None) -> List[List]:
    """
    Exact n x n unitary over Q(i): unit-modulus diagonal, Cayley rotations
    ((1-t^2)/(1+t^2), 2t/(1+t^2)) on random coordinate pairs, and a permutation.
    """
    u = [[sampler.unit() if i == j else QQ_I.zero for j in range(n)] for i in range(n)]
    for _ in range(n if rotations is None else rotations):
        if n < 2:
            break
        i, j = sampler.rng.sample(range(n), 2)
        t = sampler.rational()
        c = (1 - t * t) / (1 + t * t)
        s = 2 * t / (1 + t * t)
        c, s = QQ_I(c, 0), QQ_I(s, 0)
        row_i, row_j = u[i], u[j]
        u[i] = [c * a - s * b for a, b in zip(row_i, row_j)]
        u[j] = [s * a + c * b for a, b in zip(row_i, row_j)]
    return sampler.shuffle(u)


def random_shilov_point(r: int, s: int, sampler: RationalSampler) -> List[Row]:
    """r x s matrix with A A^H = I: the first r rows of a random unitary"""
    if r > s:
        raise ShapeError(f"no Shilov boundary point for r={r} > s={s}")
    return [tuple(row) for row in random_unitary(s, sampler)[:r]]


def random_omega_point(r: int, s: int, sampler: RationalSampler) -> List[Row]:
    """Random A with I - A A^H > 0: a Shilov point contracted by a factor < 1"""
    if s == 0:
        return [tuple() for _ in range(r)]
    while True:
        scale = QQ_I(QQ(sampler.rng.randint(0, sampler.height - 1), sampler.height), 0)
        if r <= s:
            base = random_shilov_point(r, s, sampler)
        else:
            base = [tuple(row) for row in random_unitary(r, sampler)]
            base = [row[:s] for row in base]
        A = [tuple(scale * x for x in row) for row in base]
        if in_omega(A):
            return A


def random_chart(sig: Signature, sampler: RationalSampler, kind: Optional[PlaneKind] = None) -> PlaneChart:
    """Chart with random B; A random, or drawn from the domain / its Shilov boundary"""
    B = [sampler.vector(sig.t) for _ in range(sig.r)]
    if kind is PlaneKind.POSITIVE:
        A = random_omega_point(sig.r, sig.s, sampler)
    elif kind is PlaneKind.NULL:
        A = random_shilov_point(sig.r, sig.s, sampler)
    else:
        A = [sampler.vector(sig.s) for _ in range(sig.r)]
    return PlaneChart(tuple(A), tuple(B), sig)


def random_plane(sig: Signature, k: int, sampler: RationalSampler) -> Subspace:
    """Random projective k-plane"""
    if not 0 <= k <= sig.n - 1:
        raise DimensionError(f"no {k}-planes in a projective space of dimension {sig.n - 1}")
    while True:
        rows = [sampler.nonzero_vector(sig.n) for _ in range(k + 1)]
        if rank_of(rows, sig.n) == k + 1:
            return Subspace.from_basis(rows, sig)


# ---------------------------------------------------------------------------
# images of planes

def _parametrization(space: Subspace) -> List[List]:
    """n x k matrix M with z = M u"""
    return [[row[j] for row in space.basis] for j in range(space.sig.n)]


def span_of_image(F: RationalMap, space: Subspace) -> Subspace:
    if space.sig != F.source:
        raise DimensionError("plane does not live in the source of the map")
    if not space.dim:
        raise IndeterminacyError("the zero subspace has no image")
    matrix = _parametrization(space)
    ring = z_ring(space.dim)
    restricted = [substitute_linear(c, matrix, ring) for c in F.components]
    if not any(restricted):
        raise IndeterminacyError("the map vanishes identically on the plane")
    monomials = sorted({m for c in restricted for m in c.itermonoms()}, reverse=True)
    vectors = [tuple(c.get(m, QQ_I.zero) for c in restricted) for m in monomials]
    return Subspace.span(vectors, F.target)


def generic_plane_image_dim(F: RationalMap, k: int, trials: int, seed: int, height: int = 10) -> int:
    """
    Largest projective dimension of span_of_image over ``trials`` random
    k-planes; -1 if the map vanished on every sample.
    """
    n = F.source.n
    if not 0 <= k <= n - 1:
        raise DimensionError(f"k must lie in [0, {n - 1}], got {k}")
    sampler = RationalSampler(derive_seed(seed, "plane-image", k), height)
    best = -1
    for _ in range(trials):
        try:
            best = max(best, span_of_image(F, random_plane(F.source, k, sampler)).projective_dim)
        except IndeterminacyError:
            continue
    return best


def symbolic_plane_image_dim(F: RationalMap, k: int) -> int:
    """
    Generic value of the image span dimension over all k-planes: the plane's
    basis entries are indeterminates and the rank is taken over their
    polynomial ring by fraction-free elimination. The generic rank bounds
    every specialization from above.
    """
    n = F.source.n
    if not 0 <= k <= n - 1:
        raise DimensionError(f"k must lie in [0, {n - 1}], got {k}")
    m = k + 1
    u_names = [f"u{i}" for i in range(1, m + 1)]
    a_names = [f"a{i}_{j}" for i in range(1, m + 1) for j in range(1, n + 1)]
    full = PolyRing(",".join(u_names + a_names), QQ_I, grlex)
    params = PolyRing(",".join(a_names), QQ_I, grlex)
    u, a = full.gens[:m], full.gens[m:]
    images = [sum((u[i] * a[i * n + j] for i in range(m)), full.zero) for j in range(n)]

    restricted = []
    for c in F.components:
        total = full.zero
        for monom, coefficient in c.iterterms():
            term = full.ground_new(coefficient)
            for j, e in enumerate(monom):
                if e:
                    term *= images[j] ** e
            total += term
        restricted.append(total)
    if not any(restricted):
        raise IndeterminacyError("the map vanishes identically on every plane")

    grouped = {}
    for index, p in enumerate(restricted):
        for monom, coefficient in p.iterterms():
            grouped.setdefault(monom[:m], {}).setdefault(index, {})[monom[m:]] = coefficient
    rows = []
    for key in sorted(grouped):
        entries = grouped[key]
        rows.append([params.from_dict(entries.get(i, {})) for i in range(F.target.n)])
    domain = params.to_domain()
    _, _, pivots = DomainMatrix(rows, (len(rows), F.target.n), domain).rref_den(method='FF')
    logger.debug(f"symbolic image rank {len(pivots)} for {k}-planes")
    return len(pivots) - 1
