"""The Chow ring of the Grassmannian Gr(k, n).

Basis classes are indexed by partitions inside the k x (n-k) box, written as
plain tuples of weakly decreasing positive ints ((), (1,), (3, 2, 1), ...).
Multiplication comes in two independent flavours: the Pieri rule (adding one
box in all valid ways) and a Schur-polynomial product that expands the product
of the corresponding Schur polynomials in k variables back into the Schur
basis.  The pair doubles as a built-in cross-check.
"""

from __future__ import annotations

from functools import lru_cache

from .exact import Poly, det_expansion


class CodimMismatchError(ValueError):
    """Pairing of classes whose codimensions do not complement."""


# -- partitions --------------------------------------------------------------


def normalize_partition(parts) -> tuple:
    parts = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be nonnegative")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return parts


def in_box(parts, k: int, cols: int) -> bool:
    return len(parts) <= k and (not parts or parts[0] <= cols)


def weight(parts) -> int:
    return sum(parts)


def complement_partition(parts, k: int, cols: int) -> tuple:
    """The complementary partition inside the k x cols box."""
    padded = tuple(parts) + (0,) * (k - len(parts))
    return normalize_partition(tuple(cols - padded[k - 1 - i] for i in range(k)))


def box_partitions(k: int, cols: int, weight_filter: int | None = None):
    """All partitions in the k x cols box, sorted by (weight, parts)."""
    out = []

    def rec(prefix, maxpart, rows_left):
        out.append(tuple(prefix))
        if rows_left == 0:
            return
        for p in range(1, maxpart + 1):
            rec(prefix + [p], p, rows_left - 1)

    rec([], cols, k)
    out = sorted(set(out), key=lambda p: (weight(p), p))
    if weight_filter is not None:
        out = [p for p in out if weight(p) == weight_filter]
    return out


def format_partition(parts) -> str:
    return "(" + ",".join(str(p) for p in parts) + ")"


def parse_partition(text: str) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return ()
    return normalize_partition(int(p) for p in body.split(","))


def add_box_targets(parts, k: int, cols: int):
    """Partitions obtained from parts by adding a single box, inside the box."""
    padded = list(parts) + [0] * (k - len(parts))
    out = []
    for row in range(k):
        cand = padded[:]
        cand[row] += 1
        if cand[row] > cols:
            continue
        if row > 0 and cand[row] > cand[row - 1]:
            continue
        out.append(normalize_partition(cand))
    return out


# -- Chow classes -------------------------------------------------------------


class GrChowClass:
    """Homogeneous integer combination of Schubert classes on Gr(k, n)."""

    __slots__ = ("k", "n", "codim", "terms")

    def __init__(self, k: int, n: int, codim: int, terms):
        cols = n - k
        cleaned = {}
        for parts, coeff in dict(terms).items():
            parts = normalize_partition(parts)
            coeff = int(coeff)
            if coeff == 0:
                continue
            if not in_box(parts, k, cols):
                raise ValueError(f"partition {parts} escapes the {k}x{cols} box")
            if weight(parts) != codim:
                raise ValueError("class is not homogeneous")
            cleaned[parts] = cleaned.get(parts, 0) + coeff
        cleaned = {p: c for p, c in cleaned.items() if c}
        # The zero class may sit in any degree (products past dim Gr vanish).
        if cleaned and not 0 <= codim <= k * cols:
            raise ValueError("codimension outside the Chow ring grading")
        if codim < 0:
            raise ValueError("negative codimension")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "codim", codim)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("GrChowClass is immutable")

    @classmethod
    def schubert(cls, k: int, n: int, parts) -> "GrChowClass":
        parts = normalize_partition(parts)
        return cls(k, n, weight(parts), {parts: 1})

    @classmethod
    def zero(cls, k: int, n: int, codim: int) -> "GrChowClass":
        return cls(k, n, codim, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _same_space(self, other: "GrChowClass"):
        if (self.k, self.n) != (other.k, other.n):
            raise ValueError("classes on different Grassmannians")

    def __add__(self, other: "GrChowClass") -> "GrChowClass":
        self._same_space(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.codim != other.codim:
            raise ValueError("sum of classes of different codimension")
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return GrChowClass(self.k, self.n, self.codim, out)

    def __neg__(self) -> "GrChowClass":
        return GrChowClass(self.k, self.n, self.codim, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "GrChowClass") -> "GrChowClass":
        return self + (-other)

    def scale(self, c: int) -> "GrChowClass":
        return GrChowClass(self.k, self.n, self.codim, {p: c * v for p, v in self.terms.items()})

    def coefficient(self, parts) -> int:
        return self.terms.get(normalize_partition(parts), 0)

    def __eq__(self, other):
        if not isinstance(other, GrChowClass):
            return NotImplemented
        return (self.k, self.n, self.terms) == (other.k, other.n, other.terms) \
            and (self.is_zero or self.codim == other.codim)

    def __hash__(self):
        return hash((self.k, self.n, self.codim, frozenset(self.terms.items())))

    def __str__(self):
        if self.is_zero:
            return "0"
        pieces = []
        for parts in sorted(self.terms):
            c = self.terms[parts]
            body = format_partition(parts) if abs(c) == 1 else f"{abs(c)}{format_partition(parts)}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"GrChowClass[{self.k},{self.n}]({self})"


def pieri(c: GrChowClass) -> GrChowClass:
    """Multiplication by the codimension-1 Schubert class.

    Each partition is replaced by the sum of all partitions obtained by adding
    one box; partitions leaving the box are dropped (the Chow-ring truncation).
    """
    cols = c.n - c.k
    out = {}
    for parts, coeff in c.terms.items():
        for target in add_box_targets(parts, c.k, cols):
            out[target] = out.get(target, 0) + coeff
    return GrChowClass(c.k, c.n, c.codim + 1, out)


@lru_cache(maxsize=None)
def schur_poly(parts: tuple, nvars: int) -> Poly:
    """Schur polynomial s_parts(x1..x_nvars) by the bialternant ratio.

    Numerator det(x_i^(lambda_j + n - j)) divided exactly by the Vandermonde
    determinant; exact polynomial division, no rational functions.
    """
    parts = normalize_partition(parts)
    if len(parts) > nvars:
        return Poly.zero()
    padded = tuple(parts) + (0,) * (nvars - len(parts))
    xs = [Poly.var(f"x{i + 1}") for i in range(nvars)]
    numerator = det_expansion(
        [[xs[i] ** (padded[j] + nvars - 1 - j) for j in range(nvars)] for i in range(nvars)]
    )
    vandermonde = det_expansion(
        [[xs[i] ** (nvars - 1 - j) for j in range(nvars)] for i in range(nvars)]
    )
    return numerator.divexact(vandermonde)


def _schur_expand(poly: Poly, nvars: int) -> dict:
    """Expand a symmetric polynomial in the Schur basis of nvars variables."""
    names = tuple(f"x{i + 1}" for i in range(nvars))
    coeffs = {}
    residue = poly
    while not residue.is_zero:
        exps, coeff = residue.leading()
        by_name = dict(zip(residue.variables, exps))
        padded = tuple(by_name.get(n, 0) for n in names)
        parts = normalize_partition(padded)  # symmetric => leading exps sorted
        coeffs[parts] = coeffs.get(parts, 0) + coeff
        residue = residue - coeff * schur_poly(parts, nvars)
    return coeffs


def schur_product(x: GrChowClass, y: GrChowClass) -> GrChowClass:
    """Littlewood-Richardson product via Schur polynomials in k variables.

    Multiplies the Schur polynomials of the two classes, expands the result in
    the Schur basis and drops partitions outside the box.  Independent of the
    Pieri route by construction.
    """
    x._same_space(y)
    k, cols = x.k, x.n - x.k
    prod_poly = Poly.zero()
    for p1, c1 in x.terms.items():
        for p2, c2 in y.terms.items():
            prod_poly = prod_poly + (c1 * c2) * (schur_poly(p1, k) * schur_poly(p2, k))
    out = {}
    for parts, coeff in _schur_expand(prod_poly, k).items():
        if in_box(parts, k, cols):
            out[parts] = out.get(parts, 0) + coeff
    return GrChowClass(x.k, x.n, x.codim + y.codim, out)


def duality_pairing(x: GrChowClass, y: GrChowClass) -> int:
    """Coefficient of the full-box class in the product of x and y.

    Defined when codim(x) + codim(y) equals dim Gr; on basis classes it is 1
    exactly when the partitions are complementary in the box.
    """
    x._same_space(y)
    k, cols = x.k, x.n - x.k
    if x.codim + y.codim != k * cols:
        raise CodimMismatchError("pairing needs complementary codimensions")
    box = tuple([cols] * k)
    return schur_product(x, y).coefficient(box)


def point_count(k: int, n: int, q: int) -> int:
    """Gaussian binomial [n choose k]_q: points of Gr(k, n) over F_q."""
    if not 0 <= k <= n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    if num % den:
        raise ArithmeticError("Gaussian binomial was not integral")
    return num // den
