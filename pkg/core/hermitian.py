# hermitian.py
"""
The indefinite Hermitian structure on C^{r,s,t}: signatures, vectors,
subspaces in canonical row-echelon form, pairings, point signs, orthogonal
complements and exact inertia by Hermitian congruence.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from core.errors import DimensionError, InvalidPointError, RankError, SignatureError
from core.gaussian import GaussianRational, conj, sign_of, to_gaussian, to_rational

Row = Tuple[GaussianRational, ...]


@dataclass(frozen=True)
class Signature:
    """
    (r, s, t) with an optional diagonal weight vector. Weights must be
    positive on the first r slots, negative on the next s and zero on the
    last t; weights equal to the canonical +1/-1/0 pattern are dropped so
    that equality stays canonical.
    """
    r: int
    s: int
    t: int = 0
    weights: Optional[Tuple] = None

    def __post_init__(self):
        if min(self.r, self.s, self.t) < 0:
            raise SignatureError(f"negative entry in signature ({self.r},{self.s},{self.t})")
        if self.r + self.s + self.t <= 0:
            raise SignatureError("signature must have r+s+t > 0")
        if self.weights is None:
            return
        weights = tuple(to_rational(w) for w in self.weights)
        if len(weights) != self.n:
            raise SignatureError(f"expected {self.n} weights, got {len(weights)}")
        expected = [1] * self.r + [-1] * self.s + [0] * self.t
        if [sign_of(w) for w in weights] != expected:
            raise SignatureError(f"weights {[str(w) for w in weights]} do not have sign pattern of "
                                 f"({self.r},{self.s},{self.t})")
        if all(w == e for w, e in zip(weights, expected)):
            weights = None
        object.__setattr__(self, 'weights', weights)

    @property
    def n(self) -> int:
        return self.r + self.s + self.t

    @property
    def eps(self) -> Tuple:
        """Diagonal of the form as QQ elements"""
        if self.weights is not None:
            return self.weights
        return tuple([QQ(1)] * self.r + [QQ(-1)] * self.s + [QQ(0)] * self.t)

    @cached_property
    def eps_gaussian(self) -> Row:
        return tuple(QQ_I(w, 0) for w in self.eps)

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def canonical(self) -> "Signature":
        return Signature(self.r, self.s, self.t)

    def swapped(self) -> "Signature":
        """Signature of the negated form, coordinates reordered (z-, z+, z0)"""
        if self.weights is None:
            return Signature(self.s, self.r, self.t)
        w = self.weights
        negated = [-x for x in w[self.r:self.r + self.s]] + [-x for x in w[:self.r]] + list(w[self.r + self.s:])
        return Signature(self.s, self.r, self.t, tuple(negated))

    def swap_permutation(self) -> List[int]:
        """new coordinate i takes old coordinate perm[i]"""
        return (list(range(self.r, self.r + self.s)) + list(range(self.r))
                + list(range(self.r + self.s, self.n)))

    def label(self) -> str:
        return f"({self.r},{self.s},{self.t})"

    def __str__(self):
        return f"P^{{{self.r},{self.s},{self.t}}}"


class PointKind(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NULL = "Null"


@dataclass(frozen=True)
class PointSign:
    kind: PointKind
    special: bool = False

    def __str__(self):
        if self.kind is PointKind.NULL and self.special:
            return "Null (special)"
        return self.kind.value


@dataclass(frozen=True)
class Vector:
    coords: Row
    sig: Signature

    def __post_init__(self):
        coords = tuple(to_gaussian(c) for c in self.coords)
        if len(coords) != self.sig.n:
            raise DimensionError(f"vector of length {len(coords)} in a space of dimension {self.sig.n}")
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def unit(cls, sig: Signature, index: int) -> "Vector":
        coords = [QQ_I.zero] * sig.n
        coords[index] = QQ_I.one
        return cls(tuple(coords), sig)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Vector") -> "Vector":
        _check_same(self.sig, other.sig)
        return Vector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.sig)

    def scale(self, c) -> "Vector":
        c = to_gaussian(c)
        return Vector(tuple(c * a for a in self.coords), self.sig)


def _check_same(a: Signature, b: Signature):
    if a != b:
        raise DimensionError(f"signature mismatch: {a.label()} vs {b.label()}")


# ---------------------------------------------------------------------------
# exact linear algebra over QQ_I

def domain_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[to_gaussian(x) for x in row] for row in rows], (len(rows), ncols), QQ_I)


def matrix_rows(m: DomainMatrix) -> List[Row]:
    return [tuple(row) for row in m.to_list()]


def rref_rows(rows: Sequence[Sequence], ncols: int) -> Tuple[List[Row], Tuple[int, ...]]:
    """Nonzero rows of the reduced row-echelon form and the pivot columns"""
    if not rows:
        return [], ()
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return matrix_rows(reduced)[:len(pivots)], tuple(pivots)


def nullspace_rows(rows: Sequence[Sequence], ncols: int) -> List[Row]:
    """Basis of {x : row . x = 0 for every row}"""
    if not rows:
        return [tuple(QQ_I.one if i == j else QQ_I.zero for j in range(ncols)) for i in range(ncols)]
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return matrix_rows(reduced.nullspace_from_rref(pivots))


def rank_of(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[Row]:
    if not a or not b:
        return [tuple() for _ in a]
    return matrix_rows(domain_matrix(a, len(a[0])).matmul(domain_matrix(b, len(b[0]))))


def conj_transpose(m: Sequence[Sequence]) -> List[Row]:
    return [tuple(conj(m[i][j]) for i in range(len(m))) for j in range(len(m[0]))] if m else []


def identity_rows(n: int) -> List[Row]:
    return [tuple(QQ_I.one if i == j else QQ_I.zero for j in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# pairing and points

def form_value(sig: Signature, z: Sequence, w: Sequence) -> GaussianRational:
    total = QQ_I.zero
    for e, a, b in zip(sig.eps_gaussian, z, w):
        if e and a and b:
            total += e * a * conj(b)
    return total


def pairing(z: Vector, w: Vector) -> GaussianRational:
    """<z, w> = sum_j eps_j z_j conj(w_j)"""
    _check_same(z.sig, w.sig)
    return form_value(z.sig, z.coords, w.coords)


def norm2(z: Vector):
    """||z||^2 as a QQ element"""
    return pairing(z, z).x


def point_sign(z: Vector) -> PointSign:
    if z.is_zero:
        raise InvalidPointError("the zero vector is not a projective point")
    value = sign_of(norm2(z))
    if value > 0:
        return PointSign(PointKind.POSITIVE)
    if value < 0:
        return PointSign(PointKind.NEGATIVE)
    special = not any(z.coords[:z.sig.r + z.sig.s])
    return PointSign(PointKind.NULL, special)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A linear subspace, stored by the nonzero rows of its RREF basis"""
    basis: Tuple[Row, ...]
    sig: Signature

    @classmethod
    def span(cls, vectors: Iterable, sig: Signature) -> "Subspace":
        rows = [_as_row(v, sig) for v in vectors]
        reduced, _ = rref_rows(rows, sig.n)
        return cls(tuple(reduced), sig)

    @classmethod
    def from_basis(cls, vectors: Iterable, sig: Signature) -> "Subspace":
        rows = [_as_row(v, sig) for v in vectors]
        reduced, _ = rref_rows(rows, sig.n)
        if len(reduced) != len(rows):
            raise RankError(f"{len(rows)} vectors span only a {len(reduced)}-dimensional space")
        return cls(tuple(reduced), sig)

    @classmethod
    def whole(cls, sig: Signature) -> "Subspace":
        return cls(tuple(identity_rows(sig.n)), sig)

    @classmethod
    def zero(cls, sig: Signature) -> "Subspace":
        return cls((), sig)

    @classmethod
    def coordinate(cls, sig: Signature, indices: Iterable[int]) -> "Subspace":
        return cls.span([Vector.unit(sig, i) for i in indices], sig)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def projective_dim(self) -> int:
        return self.dim - 1

    def vectors(self) -> List[Vector]:
        return [Vector(row, self.sig) for row in self.basis]

    @cached_property
    def derived_abc(self) -> Tuple[int, int, int]:
        return inertia(gram_matrix(self.basis, self.sig))

    def contains(self, v) -> bool:
        return rank_of(list(self.basis) + [_as_row(v, self.sig)], self.sig.n) == self.dim

    def issubspace(self, other: "Subspace") -> bool:
        _check_same(self.sig, other.sig)
        return rank_of(list(other.basis) + list(self.basis), self.sig.n) == other.dim

    def sum(self, other: "Subspace") -> "Subspace":
        _check_same(self.sig, other.sig)
        return Subspace.span(list(self.basis) + list(other.basis), self.sig)

    def intersect(self, other: "Subspace") -> "Subspace":
        _check_same(self.sig, other.sig)
        if not self.dim or not other.dim:
            return Subspace.zero(self.sig)
        stacked = list(self.basis) + [tuple(-x for x in row) for row in other.basis]
        # left kernel of the stacked basis: columns of the transpose
        transpose = [tuple(stacked[i][j] for i in range(len(stacked))) for j in range(self.sig.n)]
        kernel = nullspace_rows(transpose, len(stacked))
        vectors = [_combine(k[:self.dim], self.basis) for k in kernel]
        return Subspace.span(vectors, self.sig)

    def describe(self) -> str:
        a, b, c = self.derived_abc
        return f"P^{{{a},{b},{c}}}: span{{{', '.join(format_row(row) for row in self.basis)}}}"


def _as_row(v, sig: Signature) -> Row:
    if isinstance(v, Vector):
        _check_same(v.sig, sig)
        return v.coords
    row = tuple(to_gaussian(x) for x in v)
    if len(row) != sig.n:
        raise DimensionError(f"vector of length {len(row)} in a space of dimension {sig.n}")
    return row


def _combine(coefficients: Sequence, rows: Sequence[Row]) -> Row:
    n = len(rows[0])
    out = [QQ_I.zero] * n
    for c, row in zip(coefficients, rows):
        if c:
            for j in range(n):
                out[j] += c * row[j]
    return tuple(out)


def format_row(row: Row) -> str:
    """e1 + (1/2)e3 style rendering of a coordinate row"""
    parts = []
    for j, c in enumerate(row):
        if not c:
            continue
        if c == QQ_I.one:
            term = f"e{j + 1}"
        elif c == -QQ_I.one:
            term = f"-e{j + 1}"
        else:
            term = f"({c})e{j + 1}"
        parts.append(term)
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def gram_matrix(rows: Sequence[Sequence], sig: Signature) -> List[List[GaussianRational]]:
    return [[form_value(sig, a, b) for b in rows] for a in rows]


def _swap(h, t, i, j):
    h[i], h[j] = h[j], h[i]
    for row in h:
        row[i], row[j] = row[j], row[i]
    t[i], t[j] = t[j], t[i]


def _add_multiple(h, t, target, source, m):
    """basis[target] += m * basis[source], applied to the Gram matrix by congruence"""
    k = len(h)
    h[target] = [h[target][c] + m * h[source][c] for c in range(k)]
    mc = conj(m)
    for row in h:
        row[target] = row[target] + mc * row[source]
    t[target] = [t[target][c] + m * t[source][c] for c in range(k)]


def congruence_diagonalize(gram: Sequence[Sequence]) -> Tuple[List[Row], List]:
    """
    Symmetric Gaussian elimination for a Hermitian matrix G. Returns (T, d)
    with T G T^H = diag(d), d real. A zero pivot is replaced by a later
    nonzero diagonal entry, or, when the remaining diagonal vanishes, by
    b_i + G_ij b_j whose norm is 2|G_ij|^2. Zero entries of d therefore mark
    vectors of the radical.
    """
    k = len(gram)
    h = [[to_gaussian(x) for x in row] for row in gram]
    t = [list(row) for row in identity_rows(k)]
    diagonal = []
    for i in range(k):
        if not h[i][i]:
            j = next((j for j in range(i + 1, k) if h[j][j]), None)
            if j is not None:
                _swap(h, t, i, j)
            else:
                j = next((j for j in range(i + 1, k) if h[i][j]), None)
                if j is not None:
                    _add_multiple(h, t, i, j, h[i][j])
        pivot = h[i][i]
        if pivot:
            for j in range(i + 1, k):
                if h[j][i]:
                    _add_multiple(h, t, j, i, -(h[j][i] / pivot))
        if h[i][i].y != 0:
            raise ValueError("matrix is not Hermitian")
        diagonal.append(h[i][i].x)
    return [tuple(row) for row in t], diagonal


def inertia(gram: Sequence[Sequence]) -> Tuple[int, int, int]:
    """(positive, negative, zero) counts of a Hermitian matrix"""
    _, diagonal = congruence_diagonalize(gram)
    signs = [sign_of(d) for d in diagonal]
    return signs.count(1), signs.count(-1), signs.count(0)


def diagonal_basis(space: Subspace) -> List[Tuple[Row, object]]:
    """
    Basis of the subspace on which the form is diagonal, as (row, weight)
    pairs ordered positive, negative, then radical (weight 0).
    """
    if not space.dim:
        return []
    t, diagonal = congruence_diagonalize(gram_matrix(space.basis, space.sig))
    rows = mat_mul(t, space.basis)
    order = sorted(range(len(rows)), key=lambda i: (-sign_of(diagonal[i]) if diagonal[i] else 2, i))
    return [(rows[i], diagonal[i]) for i in order]


def subspace_signature(space: Subspace) -> Tuple[int, int, int]:
    return space.derived_abc


def signature_of_vectors(vectors: Sequence, sig: Signature) -> Tuple[int, int, int]:
    """Inertia of the Gram matrix of an explicit basis; dependent input is an error"""
    rows = [_as_row(v, sig) for v in vectors]
    if rank_of(rows, sig.n) != len(rows):
        raise RankError("basis vectors are linearly dependent")
    return inertia(gram_matrix(rows, sig))


def is_null_subspace(space: Subspace) -> bool:
    return all(not x for row in gram_matrix(space.basis, space.sig) for x in row)


def is_positive_subspace(space: Subspace) -> bool:
    a, b, c = space.derived_abc
    return space.dim > 0 and b == c == 0


def is_negative_subspace(space: Subspace) -> bool:
    a, b, c = space.derived_abc
    return space.dim > 0 and a == c == 0


def radical(space: Subspace) -> Subspace:
    """Kernel of the restricted form: W intersected with its complement"""
    return Subspace.span([row for row, d in diagonal_basis(space) if not d], space.sig)


def orthogonal_complement(space: Subspace) -> Subspace:
    """{w : <v, w> = 0 for all v in the subspace}"""
    eps = space.sig.eps_gaussian
    # <v, w> = 0  <=>  sum_j eps_j conj(v_j) w_j = 0
    rows = [tuple(e * conj(x) for e, x in zip(eps, v)) for v in space.basis]
    rows = [row for row in rows if any(row)]
    return Subspace.span(nullspace_rows(rows, space.sig.n), space.sig)


def max_null_dimension(sig: Signature) -> int:
    """Projective dimension of a maximal null space; -1 when there are no null points"""
    return min(sig.r, sig.s) + sig.t - 1


def null_basis(sig: Signature) -> List[Row]:
    """Basis of a maximal null subspace: e_i + e_{r+i} for i < min(r, s), then the degenerate units"""
    if sig.is_weighted:
        raise SignatureError("null bases are built for canonical signatures only")
    rows = []
    for i in range(min(sig.r, sig.s)):
        rows.append(tuple(QQ_I.one if j in (i, sig.r + i) else QQ_I.zero for j in range(sig.n)))
    for k in range(sig.r + sig.s, sig.n):
        rows.append(tuple(QQ_I.one if j == k else QQ_I.zero for j in range(sig.n)))
    return rows
