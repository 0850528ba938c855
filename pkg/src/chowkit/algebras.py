"""Quaternion algebras over exact scalars and split matrix algebras.

Quaternion elements live over int, Fraction or Poly components (always
characteristic zero; modular components are deliberately rejected).  Split
algebras M_n(F) are handled over small prime fields, where right ideals can be
enumerated outright, and over the rationals for rank tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exact import Poly, is_prime


class AlgebraMismatchError(ValueError):
    """Operands belong to different algebras."""


class EmptyTupleError(ValueError):
    """Independence of the empty tuple is undefined."""


class TooLargeError(ValueError):
    """Enumeration request exceeds the desk-scale bound."""


_SCALAR_TYPES = (int, Fraction, Poly)


def _check_scalar(v, what: str):
    if not isinstance(v, _SCALAR_TYPES):
        raise TypeError(f"{what} must be int, Fraction or Poly, got {type(v).__name__}")
    return v


@dataclass(frozen=True)
class QuatAlgebra:
    """The four-dimensional algebra with i*i = a, j*j = b, i*j = -j*i = k."""

    a: object
    b: object

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b)):
            _check_scalar(v, f"structure constant {name}")
            if isinstance(v, (int, Fraction)) and v == 0:
                raise ValueError(f"structure constant {name} must be nonzero")

    def element(self, x=0, y=0, z=0, w=0) -> "QuatElement":
        return QuatElement(self, x, y, z, w)

    def one(self) -> "QuatElement":
        return self.element(1)

    def gen_i(self) -> "QuatElement":
        return self.element(0, 1)

    def gen_j(self) -> "QuatElement":
        return self.element(0, 0, 1)

    def gen_k(self) -> "QuatElement":
        return self.element(0, 0, 0, 1)

    @classmethod
    def symbolic(cls) -> "QuatAlgebra":
        return cls(Poly.var("a"), Poly.var("b"))


@dataclass(frozen=True)
class QuatElement:
    """x + y*i + z*j + w*k with components in the algebra's base ring."""

    algebra: QuatAlgebra
    x: object
    y: object
    z: object
    w: object

    def __post_init__(self):
        for v in (self.x, self.y, self.z, self.w):
            _check_scalar(v, "component")

    def components(self):
        return (self.x, self.y, self.z, self.w)

    def _same(self, other: "QuatElement"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError("elements of different quaternion algebras")

    def __add__(self, other: "QuatElement") -> "QuatElement":
        self._same(other)
        return QuatElement(self.algebra, self.x + other.x, self.y + other.y,
                           self.z + other.z, self.w + other.w)

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        self._same(other)
        return QuatElement(self.algebra, self.x - other.x, self.y - other.y,
                           self.z - other.z, self.w - other.w)

    def __neg__(self) -> "QuatElement":
        return QuatElement(self.algebra, -self.x, -self.y, -self.z, -self.w)

    def __mul__(self, other):
        if isinstance(other, QuatElement):
            return quat_mul(self, other)
        return QuatElement(self.algebra, self.x * other, self.y * other,
                           self.z * other, self.w * other)

    def __rmul__(self, other):
        # Scalars commute with everything.
        return self.__mul__(other)

    def __repr__(self):
        return f"QuatElement(x={self.x}, y={self.y}, z={self.z}, w={self.w})"


def quat_mul(u: QuatElement, v: QuatElement) -> QuatElement:
    """Product under i*i = a, j*j = b, i*j = -j*i = k."""
    u._same(v)
    a, b = u.algebra.a, u.algebra.b
    x1, y1, z1, w1 = u.components()
    x2, y2, z2, w2 = v.components()
    return QuatElement(
        u.algebra,
        x1 * x2 + a * y1 * y2 + b * z1 * z2 - a * b * w1 * w2,
        x1 * y2 + y1 * x2 - b * z1 * w2 + b * w1 * z2,
        x1 * z2 + z1 * x2 + a * y1 * w2 - a * w1 * y2,
        x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2,
    )


def conj(u: QuatElement) -> QuatElement:
    """Standard involution x - y*i - z*j - w*k, so u * conj(u) = nrd(u)."""
    return QuatElement(u.algebra, u.x, -u.y, -u.z, -u.w)


def nrd(u: QuatElement):
    """Reduced norm x^2 - a*y^2 - b*z^2 + a*b*w^2, exact (symbolic if needed)."""
    a, b = u.algebra.a, u.algebra.b
    x, y, z, w = u.components()
    return x * x - a * y * y - b * z * z + a * b * w * w


def trd(u: QuatElement):
    """Reduced trace 2x."""
    return 2 * u.x


def left_mult_matrix(u: QuatElement):
    """Matrix of left multiplication by u in the basis (1, i, j, k).

    Column t holds the coordinates of u * basis_t, so stacking these matrices
    turns independence of a quaternion tuple into a rank condition.
    """
    alg = u.algebra
    basis = (alg.one(), alg.gen_i(), alg.gen_j(), alg.gen_k())
    cols = [quat_mul(u, e).components() for e in basis]
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def symbolic_quaternion(prefix: str, algebra: QuatAlgebra | None = None) -> QuatElement:
    """Quaternion with fresh polynomial components x<prefix>, y<prefix>, ..."""
    alg = algebra if algebra is not None else QuatAlgebra.symbolic()
    return alg.element(*(Poly.var(n + prefix) for n in "xyzw"))


# -- exact linear algebra over F_p and Q -----------------------------------


def rank_modp(rows, p: int) -> int:
    """Rank of a matrix over F_p (rows of ints)."""
    m = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[rank])]
        rank += 1
    return rank


def rank_fractions(rows) -> int:
    """Rank of a matrix over Q (rows of ints or Fractions)."""
    m = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [v - f * w for v, w in zip(m[i], m[rank])]
        rank += 1
    return rank


# -- split matrix algebras ---------------------------------------------------


@dataclass(frozen=True)
class SplitAlgebra:
    """M_n(F) for F a prime field F_p (p prime) or the rationals (p = None)."""

    n: int
    p: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be positive")
        if self.p is not None and not is_prime(self.p):
            raise ValueError("base field order must be prime")

    def matrix(self, rows) -> tuple:
        rows = tuple(tuple(v for v in row) for row in rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"expected an {self.n}x{self.n} matrix")
        if self.p is not None:
            rows = tuple(tuple(int(v) % self.p for v in row) for row in rows)
        return rows

    def zero_matrix(self) -> tuple:
        return self.matrix([[0] * self.n for _ in range(self.n)])

    def identity_matrix(self) -> tuple:
        return self.matrix([[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)])

    def unit_matrix(self, i: int, j: int) -> tuple:
        return self.matrix([[1 if (r, c) == (i, j) else 0 for c in range(self.n)]
                            for r in range(self.n)])

    def all_elements(self):
        """Every element; only sensible over a small finite field."""
        if self.p is None:
            raise TooLargeError("cannot enumerate M_n(Q)")
        cells = self.n * self.n
        for values in product(range(self.p), repeat=cells):
            yield tuple(tuple(values[r * self.n + c] for c in range(self.n))
                        for r in range(self.n))

    def mat_mul(self, x, y) -> tuple:
        n = self.n
        out = [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return self.matrix(out)

    def _rank(self, rows) -> int:
        if self.p is None:
            return rank_fractions(rows)
        return rank_modp(rows, self.p)


def independent(alg: SplitAlgebra, elements) -> bool:
    """True iff no nonzero t satisfies e*t = 0 for every element e.

    For a split algebra this is equivalent to the stacked (l*n) x n matrix
    having full column rank n.
    """
    elements = tuple(elements)
    if not elements:
        raise EmptyTupleError("independence of an empty tuple")
    stacked = [row for e in elements for row in alg.matrix(e)]
    return alg._rank(stacked) == alg.n


def independent_left_ideal(alg: SplitAlgebra, elements) -> bool:
    """Second route: the left ideal generated by the tuple is all of M_n(F).

    Spans {u * e : u a matrix unit, e in elements} and tests for dimension
    n^2; agrees with the rank criterion and serves as its cross-check.
    """
    elements = tuple(elements)
    if not elements:
        raise EmptyTupleError("independence of an empty tuple")
    rows = []
    for e in elements:
        e = alg.matrix(e)
        for i in range(alg.n):
            for j in range(alg.n):
                prod_ = alg.mat_mul(alg.unit_matrix(i, j), e)
                rows.append([v for row in prod_ for v in row])
    return alg._rank(rows) == alg.n * alg.n


def quat_independent(elements) -> bool:
    """Independence for quaternions over Q via the regular representation.

    Stacks the 4x4 left-multiplication matrices into a (4l) x 4 rational
    matrix; the tuple is independent iff that matrix has rank 4.
    """
    elements = tuple(elements)
    if not elements:
        raise EmptyTupleError("independence of an empty tuple")
    for e in elements:
        if any(isinstance(v, Poly) for v in e.components()):
            raise TypeError("rank test needs numeric components")
    stacked = [row for e in elements for row in left_mult_matrix(e)]
    return rank_fractions(stacked) == 4


# -- subspaces and right ideals over small prime fields ----------------------


def subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n as reduced-row-echelon bases.

    Enumerates pivot column patterns, then all assignments of the free
    entries; each subspace appears exactly once.
    """
    if not 0 <= k <= n:
        return
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(n)
                if j > pivots[i] and j not in pivots]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def _in_span(alg: SplitAlgebra, basis_rows, vector) -> bool:
    base = [list(r) for r in basis_rows]
    return alg._rank(base + [list(vector)]) == alg._rank(base)


@dataclass(frozen=True)
class RightIdeal:
    """A right ideal of M_n(F_p) of rank k*n, recorded by its column space."""

    subspace: tuple          # RREF basis of U, the common column space
    matrix_basis: tuple      # k*n matrices spanning Hom(V, U)


def enumerate_right_ideals(alg: SplitAlgebra, k: int):
    """Right ideals of rank k*n in M_n(F_p): one for each k-subspace U.

    The ideal attached to U consists of the matrices whose columns lie in U;
    a basis is {u e_j^T}.  Each candidate is verified to be closed under right
    multiplication by all matrix units before being counted.  Returns
    (count, ideals) with the ideals sorted by their subspace basis.
    """
    if alg.p is None:
        raise TooLargeError("ideal enumeration needs a finite base field")
    if alg.p > 3 or alg.n > 3:
        raise TooLargeError("enumeration bound is q <= 3 and n <= 3")
    if not 0 <= k <= alg.n:
        raise ValueError("ideal rank parameter out of range")
    n, p = alg.n, alg.p
    ideals = []
    for basis in sorted(subspaces(n, k, p)):
        mats = []
        for u in basis:
            for j in range(n):
                mats.append(tuple(tuple(u[r] if c == j else 0 for c in range(n))
                                  for r in range(n)))
        flat = [[v for row in mat for v in row] for mat in mats]
        for mat in mats:
            for i in range(n):
                for j in range(n):
                    prod_ = alg.mat_mul(mat, alg.unit_matrix(i, j))
                    if not _in_span(alg, flat, [v for row in prod_ for v in row]):
                        raise AssertionError("candidate is not a right ideal")
        ideals.append(RightIdeal(basis, tuple(mats)))
    return len(ideals), tuple(ideals)
