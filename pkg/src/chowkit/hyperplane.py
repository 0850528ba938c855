"""Chow groups of the split hyperplane section X of Gr(3, 6).

X is the smooth 8-fold cut out of Gr(3, 6) by equating the determinants of the
two 3x3 blocks of a 6x3 point matrix.  Pull-back identifies CH^i(X) with
CH^i(Gr) for i <= 3, push-forward identifies CH^i(X) with CH^(i+1)(Gr) for
i >= 5, and in the middle degree only the rank-3 pulled-back part is modelled
(the extra vanishing-cycle generator has no rational representative and is
deliberately excluded; the certificates below only ever need the rank-3 part).

Labels therefore carry |parts| = codim for codim <= 4 and |parts| = codim + 1
for codim >= 5; degree 5 labels do not exist.  Multiplying by the hyperplane
class costs one Pieri step except out of the middle degree, where push-forward
and pull-back force two.
"""

from __future__ import annotations

import json

from .exact import IntMatrix, Poly, invertible_over_localization, smith_normal_form
from .schubert import (
    GrChowClass,
    add_box_targets,
    box_partitions,
    duality_pairing,
    format_partition,
    in_box,
    normalize_partition,
    pieri,
    schur_product,
    weight,
)

K, N = 3, 6
COLS = N - K
DIM_GR = K * COLS          # 9
DIM_X = DIM_GR - 1         # 8
MIDDLE = DIM_X // 2        # 4


class CodimOutOfRangeError(ValueError):
    """Restriction asked for a degree where pull-back is not injective-onto."""


class TopCodimError(ValueError):
    """Hyperplane multiplication out of the top degree."""


class CodimMismatchError(ValueError):
    """Pairing of classes whose codimensions do not sum to dim X."""


class RankMismatchError(ValueError):
    """Basis certificate got the wrong number of classes for the degree."""


class NotSelfDualError(ValueError):
    """Codimension multiset is not symmetric around the middle degree."""


class IndexOutOfRangeError(ValueError):
    """Rational cycle index outside 1..5."""


def label_weight(codim: int) -> int:
    """Degree of the Schubert labels used in CH^codim(X)."""
    if not 0 <= codim <= DIM_X:
        raise ValueError("codimension outside 0..8")
    return codim if codim <= MIDDLE else codim + 1


class SectionClass:
    """Integer combination of Schubert labels in one Chow group of X."""

    __slots__ = ("codim", "terms")

    def __init__(self, codim: int, terms):
        lw = label_weight(codim)
        cleaned = {}
        for parts, coeff in dict(terms).items():
            parts = normalize_partition(parts)
            coeff = int(coeff)
            if coeff == 0:
                continue
            if not in_box(parts, K, COLS):
                raise ValueError(f"partition {parts} escapes the 3x3 box")
            if weight(parts) != lw:
                raise ValueError(f"label {parts} does not live in CH^{codim}(X)")
            cleaned[parts] = cleaned.get(parts, 0) + coeff
        object.__setattr__(self, "codim", codim)
        object.__setattr__(self, "terms", {p: c for p, c in cleaned.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("SectionClass is immutable")

    @classmethod
    def label(cls, codim: int, parts) -> "SectionClass":
        return cls(codim, {normalize_partition(parts): 1})

    @classmethod
    def zero(cls, codim: int) -> "SectionClass":
        return cls(codim, {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SectionClass") -> "SectionClass":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.codim != other.codim:
            raise ValueError("sum of classes of different codimension")
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return SectionClass(self.codim, out)

    def __neg__(self) -> "SectionClass":
        return SectionClass(self.codim, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "SectionClass") -> "SectionClass":
        return self + (-other)

    def scale(self, c: int) -> "SectionClass":
        return SectionClass(self.codim, {p: c * v for p, v in self.terms.items()})

    def reduce_mod(self, m: int) -> "SectionClass":
        """Coefficients reduced to symmetric representatives mod m."""
        out = {}
        for p, c in self.terms.items():
            r = c % m
            if r > m // 2:
                r -= m
            out[p] = r
        return SectionClass(self.codim, out)

    def to_gr(self) -> GrChowClass:
        """The label combination as a Grassmannian class of degree |labels|."""
        return GrChowClass(K, N, label_weight(self.codim), self.terms)

    def coefficient(self, parts) -> int:
        return self.terms.get(normalize_partition(parts), 0)

    def __eq__(self, other):
        if not isinstance(other, SectionClass):
            return NotImplemented
        return self.terms == other.terms and (self.is_zero or self.codim == other.codim)

    def __hash__(self):
        return hash((self.codim, frozenset(self.terms.items())))

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
        return f"SectionClass(codim={self.codim}, {self})"

    def to_json(self) -> str:
        return json.dumps(
            {"codim": self.codim,
             "terms": {format_partition(p): c for p, c in sorted(self.terms.items())}},
            sort_keys=True,
        )


def fundamental_class() -> SectionClass:
    return SectionClass.label(0, ())


def point_class() -> SectionClass:
    return SectionClass.label(8, (3, 3, 3))


def restrict_from_gr(c: GrChowClass) -> SectionClass:
    """Pull a Grassmannian class of codimension <= 4 back to X, same labels."""
    if (c.k, c.n) != (K, N):
        raise ValueError("restriction is defined on Gr(3,6) classes")
    if c.codim > MIDDLE:
        raise CodimOutOfRangeError("pull-back labels stop at the middle degree")
    return SectionClass(c.codim, dict(c.terms))


def hyperplane_mul(x: SectionClass) -> SectionClass:
    """Product with the hyperplane class of X.

    One Pieri step on labels in every degree except the middle one, where the
    push-forward/pull-back detour costs two Pieri steps (labels jump from
    degree 4 to degree 6).
    """
    if x.codim >= DIM_X:
        raise TopCodimError("no room above the top degree")
    out = {}
    for parts, coeff in x.terms.items():
        if x.codim == MIDDLE:
            targets = []
            for mid in add_box_targets(parts, K, COLS):
                targets.extend(add_box_targets(mid, K, COLS))
        else:
            targets = add_box_targets(parts, K, COLS)
        for t in targets:
            out[t] = out.get(t, 0) + coeff
    return SectionClass(x.codim + 1, out)


def intersection_pairing(x: SectionClass, y: SectionClass) -> int:
    """Intersection number of classes with codim(x) + codim(y) = 8.

    Away from the middle degree the label degrees already complement to 9 and
    the Grassmannian duality pairing applies.  Two middle classes pair through
    the ambient triple product with one extra hyperplane factor (projection
    formula); this rule reproduces the reference Gram matrix exactly.
    """
    if x.codim + y.codim != DIM_X:
        raise CodimMismatchError("codimensions must sum to 8")
    if x.is_zero or y.is_zero:
        return 0
    if x.codim == MIDDLE and y.codim == MIDDLE:
        prod = schur_product(x.to_gr(), y.to_gr())
        return pieri(prod).coefficient((COLS,) * K)
    return duality_pairing(x.to_gr(), y.to_gr())


def gram_matrix(classes) -> IntMatrix:
    """Matrix of pairwise intersection numbers of middle-degree classes."""
    classes = list(classes)
    for c in classes:
        if 2 * c.codim != DIM_X:
            raise ValueError("Gram matrix is defined for middle-degree classes")
    size = len(classes)
    entries = [intersection_pairing(a, b) for a in classes for b in classes]
    return IntMatrix(size, size, entries)


# -- rational cycles on P^2 x X ----------------------------------------------


class P2SectionClass:
    """A class c0 + H*c1 + H^2*c2 on P^2 x X, H the hyperplane of P^2.

    Components are SectionClass values; the total codimension is homogeneous,
    so component d has codim total - d.  Powers H^3 and beyond vanish.
    """

    __slots__ = ("total_codim", "components")

    def __init__(self, total_codim: int, components):
        comps = {}
        for d, cls in dict(components).items():
            if d not in (0, 1, 2):
                raise ValueError("P^2 factor only supports H^0, H^1, H^2")
            if cls.is_zero:
                continue
            if cls.codim != total_codim - d:
                raise ValueError("components are not codimension-homogeneous")
            comps[d] = cls
        object.__setattr__(self, "total_codim", total_codim)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("P2SectionClass is immutable")

    def component(self, d: int) -> SectionClass:
        return self.components.get(d, SectionClass.zero(self.total_codim - d))

    @property
    def is_zero(self) -> bool:
        return not self.components

    def hyperplane_mul(self) -> "P2SectionClass":
        # H is pulled back from the other factor, so it commutes past each c_d.
        out = {d: hyperplane_mul(c) for d, c in self.components.items()}
        return P2SectionClass(self.total_codim + 1, out)

    def __sub__(self, other: "P2SectionClass") -> "P2SectionClass":
        if self.total_codim != other.total_codim:
            raise ValueError("difference of inhomogeneous classes")
        out = {}
        for d in (0, 1, 2):
            out[d] = self.component(d) - other.component(d)
        return P2SectionClass(self.total_codim, out)

    def reduce_mod(self, m: int) -> "P2SectionClass":
        return P2SectionClass(self.total_codim,
                              {d: c.reduce_mod(m) for d, c in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, P2SectionClass):
            return NotImplemented
        return all(self.component(d) == other.component(d) for d in (0, 1, 2)) \
            and (self.is_zero or self.total_codim == other.total_codim)

    def __hash__(self):
        return hash((self.total_codim, tuple(self.component(d) for d in (0, 1, 2))))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for d, prefix in ((0, ""), (1, "H*"), (2, "H^2*")):
            c = self.component(d)
            if not c.is_zero:
                parts.append(f"{prefix}[{c}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"P2SectionClass(codim={self.total_codim}, {self})"


# The five certified rational cycles, stored verbatim as label tables:
# index -> (total codim, {H-power: {partition: coefficient}}).
_CYCLE_TABLE = {
    1: (3, {0: {(3,): 1},
            1: {(2,): 1},
            2: {(1,): 1}}),
    2: (4, {0: {(3, 1): 1},
            1: {(3,): 1, (2, 1): 1},
            2: {(2,): 1, (1, 1): 1}}),
    3: (5, {0: {(3, 3): 1, (3, 2, 1): -1},
            1: {(3, 1): -1, (2, 2): 1, (2, 1, 1): 1},
            2: {(3,): 1, (2, 1): -1, (1, 1, 1): 1}}),
    4: (6, {0: {(3, 2, 2): -1},
            1: {(3, 2, 1): -1, (2, 2, 2): -1},
            2: {(2, 2): -1}}),
    5: (7, {0: {(3, 3, 2): -1},
            1: {(3, 3, 1): -1, (3, 2, 2): 1},
            2: {(3, 3): -1, (3, 2, 1): 1, (2, 2, 2): -1}}),
}


def rational_cycle(i: int) -> P2SectionClass:
    """The i-th certified rational cycle on P^2 x X, i in 1..5."""
    if i not in _CYCLE_TABLE:
        raise IndexOutOfRangeError("rational cycles are numbered 1..5")
    total, table = _CYCLE_TABLE[i]
    comps = {d: SectionClass(total - d, terms) for d, terms in table.items()}
    return P2SectionClass(total, comps)


def rational_cycles():
    return tuple(rational_cycle(i) for i in range(1, 6))


def verify_cycle_recursion(i: int):
    """Check that hyperplane * cycle(i) is cycle(i+1) modulo 3.

    Returns (holds, residual) where the residual is the mod-3 reduction of the
    difference; the recursion is a verification of the stored table, not a
    construction.
    """
    if not 1 <= i <= 4:
        raise IndexOutOfRangeError("recursion steps are numbered 1..4")
    lhs = rational_cycle(i).hyperplane_mul()
    residual = (lhs - rational_cycle(i + 1)).reduce_mod(3)
    return residual.is_zero, residual


# -- certificates -------------------------------------------------------------


def reference_bases() -> dict:
    """The certified generating sets of CH^c(X) for c in 1, 2, 3, 5, 6, 7.

    These are exactly the cycle components of the matching codimension; their
    unimodularity is what basis_certificate verifies.
    """
    out = {}
    for c in (1, 2, 3, 5, 6, 7):
        classes = []
        for i in range(1, 6):
            cyc = rational_cycle(i)
            for d in (0, 1, 2):
                comp = cyc.component(d)
                if comp.codim == c and not comp.is_zero:
                    classes.append(comp)
        out[c] = classes
    return out


def middle_classes():
    """The three pulled-back middle-degree label classes."""
    return tuple(SectionClass.label(4, p) for p in ((3, 1), (2, 2), (2, 1, 1)))


def basis_certificate(classes, codim: int) -> bool:
    """True iff the classes are a Z-basis of the label lattice in CH^codim(X).

    Expresses the classes in the Schubert label basis and demands an
    unimodular coefficient matrix (Smith diagonal all ones).
    """
    classes = list(classes)
    labels = box_partitions(K, COLS, weight_filter=label_weight(codim))
    if len(classes) != len(labels):
        raise RankMismatchError(
            f"need {len(labels)} classes at codim {codim}, got {len(classes)}")
    rows = []
    for cls in classes:
        if cls.codim != codim:
            raise ValueError("class of the wrong codimension")
        rows.append([cls.coefficient(p) for p in labels])
    smith = smith_normal_form(IntMatrix.from_rows(rows))
    return all(d == 1 for d in smith.diagonal)


def standard_collection():
    """Fundamental class, the fifteen cycle components, and the point class.

    The codimension multiset is 8-self-dual, as the Tate-isomorphism check
    requires.
    """
    coll = [(0, fundamental_class())]
    for i in range(1, 6):
        cyc = rational_cycle(i)
        for d in (0, 1, 2):
            comp = cyc.component(d)
            coll.append((comp.codim, comp))
    coll.append((8, point_class()))
    return coll


def pairing_matrix(classes) -> IntMatrix:
    """Full pairing matrix of a self-dual family of (codim, class) pairs.

    Entries vanish unless the two codimensions sum to 8 (there are no
    morphisms between the other summands); this is the matrix whose
    invertibility certifies the split.
    """
    classes = list(classes)
    counts = {}
    for codim, _ in classes:
        counts[codim] = counts.get(codim, 0) + 1
    for codim, count in counts.items():
        if counts.get(DIM_X - codim, 0) != count:
            raise NotSelfDualError(
                f"count at codim {codim} differs from count at {DIM_X - codim}")
    size = len(classes)
    entries = []
    for ci, xi in classes:
        for cj, xj in classes:
            if ci + cj == DIM_X:
                entries.append(intersection_pairing(xi, xj))
            else:
                entries.append(0)
    return IntMatrix(size, size, entries)


def tate_iso_check(classes, inverted_primes) -> bool:
    """True iff the pairing matrix determinant is a unit after localization."""
    return invertible_over_localization(pairing_matrix(classes), inverted_primes)


def c3_twist_residual() -> Poly:
    """Difference prod(x_i + h) - (e3 + h*e2 + h^2*e1) in Z[x1,x2,x3,h]."""
    x1, x2, x3, h = Poly.variables_of("x1", "x2", "x3", "h")
    lhs = (x1 + h) * (x2 + h) * (x3 + h)
    e1 = x1 + x2 + x3
    e2 = x1 * x2 + x1 * x3 + x2 * x3
    e3 = x1 * x2 * x3
    return lhs - (e3 + h * e2 + h * h * e1)


def verify_c3_twist_identity() -> bool:
    """Top Chern class of a line-bundle twist of a rank-3 bundle.

    The expansion of c3(L (x) E) as e3 + c1(L) e2 + c1(L)^2 e1 holds up to an
    exact residual of h^3, hence on any base where h^3 = 0 (such as P^2).
    """
    h = Poly.var("h")
    return c3_twist_residual() == h ** 3
