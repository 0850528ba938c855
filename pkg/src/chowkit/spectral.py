"""Symbolic slice spectral sequence in weights 1..3.

Groups are symbolic tokens (Z, nZ, Z/m, named atoms, their n-th power
subgroups and finite direct sums) rather than concrete abelian groups: the
answers of the computation are expressed in tokens like F* that have no finite
model, and the only operation the pages ever need is taking the kernel and
cokernel of a surjection "multiply by a unit mod n, then reduce".  The unit is
carried symbolically and never consulted by the rewrite rules, which is the
precise sense in which the output does not depend on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exact import is_prime
from .tate import NotPrimeError, d2_matrix, enumerate_multi_indices, slice_patterns


class WeightOutOfRangeError(ValueError):
    """Weights above 3 have no complete coefficient table."""


class UnresolvableDifferentialError(ValueError):
    """A differential whose source/target shapes match no rewrite rule."""


class HigherDifferentialError(ValueError):
    """Support would admit a d_3 or later arrow; assembly refuses to guess."""


# -- symbolic groups -----------------------------------------------------------


@dataclass(frozen=True)
class GroupExpr:
    pass


@dataclass(frozen=True)
class ZeroGroup(GroupExpr):
    pass


@dataclass(frozen=True)
class FreeZ(GroupExpr):
    pass


@dataclass(frozen=True)
class SubN(GroupExpr):
    """The index-n subgroup nZ of the free group."""


@dataclass(frozen=True)
class CyclicGroup(GroupExpr):
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclic order must be positive")


@dataclass(frozen=True)
class Atom(GroupExpr):
    name: str


@dataclass(frozen=True)
class PowerSubN(GroupExpr):
    """The subgroup of n-th powers (elements divisible by n) of an atom."""

    atom: Atom


@dataclass(frozen=True)
class SumGroup(GroupExpr):
    parts: tuple


ZERO = ZeroGroup()
Z = FreeZ()
NZ = SubN()


def cyclic(order: int) -> GroupExpr:
    # Z/1 is trivial.
    return ZERO if order == 1 else CyclicGroup(order)


def direct_sum(parts) -> GroupExpr:
    """Flattened, zero-free direct sum; empty sums collapse to zero."""
    flat = []
    for part in parts:
        if isinstance(part, SumGroup):
            flat.extend(part.parts)
        elif not isinstance(part, ZeroGroup):
            flat.append(part)
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return SumGroup(tuple(flat))


def render_group(g: GroupExpr) -> str:
    if isinstance(g, ZeroGroup):
        return "0"
    if isinstance(g, FreeZ):
        return "Z"
    if isinstance(g, SubN):
        return "nZ"
    if isinstance(g, CyclicGroup):
        return f"Z/{g.order}"
    if isinstance(g, Atom):
        return g.name
    if isinstance(g, PowerSubN):
        return f"({g.atom.name})^n"
    if isinstance(g, SumGroup):
        return " + ".join(render_group(p) for p in g.parts)
    raise TypeError(f"unknown group expression {g!r}")


# -- the coefficient tables -----------------------------------------------------


def cech_group(n: int, p: int, w: int) -> GroupExpr:
    """Motivic cohomology of the Cech object of the conic-like base, w <= 2.

    Weight 0 is Z in degree 0; weight 1 is the units F* in degree 1 and Z/n in
    degree 3 (the cyclic group generated by the algebra class); weight 2 keeps
    the field cohomology H^{p,2}(F) through degree 2 and the reduction
    K_1(F)/n[A] in degree 4.
    """
    if w < 0 or w > 2:
        raise ValueError("coefficient tables stop at weight 2")
    if w == 0:
        return Z if p == 0 else ZERO
    if w == 1:
        if p == 1:
            return Atom("F*")
        if p == 3:
            return cyclic(n)
        return ZERO
    if p <= 2:
        return Atom(f"H^{{{p},2}}(F)")
    if p == 4:
        return Atom("K1(F)/n[A]")
    return ZERO


# -- pages ---------------------------------------------------------------------


@dataclass(frozen=True)
class Differential:
    """A d_2 arrow (p, q) -> (p+2, q-1) given by a unit times reduction."""

    source: tuple
    target: tuple
    factor: int           # the bumped index value i_t mod n; a unit mod n
    unit: str             # symbolic unit carried along, never consulted

    def label(self) -> str:
        return f"{self.factor}*{self.unit}*[A]"


@dataclass(frozen=True)
class E2Page:
    n: int
    weight: int
    cells: dict = field(compare=True)
    differentials: tuple = ()

    def cell(self, p: int, q: int) -> GroupExpr:
        return self.cells.get((p, q), ZERO)

    def support(self):
        return sorted(self.cells)


def _row_summands(n: int, j: int, q: int):
    """Cell contributions of twist-q slices in weight j.

    Each multi-index I of weight q contributes the coefficient group
    H^(p - q + l(I), j - q) at column p; returns (index, p, group) triples for
    the nonzero ones.
    """
    out = []
    w = j - q
    for index in enumerate_multi_indices(n, weight=q):
        shift = 2 * q - len(index)
        # Nonzero table columns for this coefficient weight.
        for p0 in range(0, 5):
            group = cech_group(n, p0, w)
            if isinstance(group, ZeroGroup):
                continue
            p = p0 + shift - q
            out.append((index, p, group))
    return out


def build_e2(n: int, j: int, unit: str = "c") -> E2Page:
    """The weight-j E2 page for prime degree n, with differentials attached.

    Row q collects the coefficient groups of the twist-q slices; cells are
    nonzero only for 0 < q <= j.  A differential is attached from (p, q) to
    (p+2, q-1) whenever both cells are single summands and the matrix entry
    between the corresponding multi-indices is a unit mod n.
    """
    if not is_prime(n):
        raise NotPrimeError("the engine is stated for prime degree")
    if not 1 <= j <= 3:
        raise WeightOutOfRangeError("coefficient tables cover weights 1..3")
    patterns = slice_patterns(n)
    cells = {}
    members = {}
    for q in range(1, j + 1):
        if q not in patterns:
            continue
        for index, p, group in _row_summands(n, j, q):
            key = (p, q)
            members.setdefault(key, []).append((index, group))
            cells[key] = direct_sum([cells.get(key, ZERO), group])

    diffs = []
    for (p, q) in sorted(cells):
        if q < 2:
            continue
        target = (p + 2, q - 1)
        if target not in cells:
            continue
        src = members[(p, q)]
        tgt = members[target]
        if len(src) != 1 or len(tgt) != 1:
            raise UnresolvableDifferentialError(
                "differential between multi-summand cells is not supported")
        matrix = d2_matrix(n, q - 1)
        row = matrix.row_indices.index(tgt[0][0])
        col = matrix.col_indices.index(src[0][0])
        factor = matrix.entry(row, col)
        if factor % n:
            diffs.append(Differential((p, q), target, factor, unit))
    return E2Page(n, j, cells, tuple(diffs))


def _kernel(group: GroupExpr) -> GroupExpr:
    if isinstance(group, FreeZ):
        return NZ
    if isinstance(group, Atom):
        return PowerSubN(group)
    raise UnresolvableDifferentialError(
        f"no kernel rule for source {render_group(group)}")


def _check_target(group: GroupExpr):
    if isinstance(group, (CyclicGroup, Atom)):
        return
    raise UnresolvableDifferentialError(
        f"no cokernel rule for target {render_group(group)}")


def apply_d2(page: E2Page) -> E2Page:
    """Resolve every attached differential.

    Each arrow is a surjection G -> G/nG up to a unit: kernels are nZ for a
    free source and the n-th power subgroup for an atom source; cokernels
    vanish.  Cells not touched by any arrow pass through unchanged.
    """
    cells = dict(page.cells)
    for diff in page.differentials:
        source = cells[diff.source]
        target = cells[diff.target]
        _check_target(target)
        cells[diff.source] = _kernel(source)
        cells[diff.target] = ZERO
    cells = {key: g for key, g in cells.items() if not isinstance(g, ZeroGroup)}
    return E2Page(page.n, page.weight, cells, ())


def assemble(page: E2Page) -> dict:
    """Total cohomology by degree, assuming split extensions.

    Requires a page with differentials already resolved, and refuses to run if
    the remaining support admits any d_r arrow with r >= 3 (it never does in
    the implemented weights).  Summands along p + q are listed by decreasing
    filtration; extensions are taken split, which is an assumption recorded by
    the callers that report results.
    """
    if page.differentials:
        raise ValueError("apply_d2 must run before assembly")
    support = page.support()
    for (p, q) in support:
        for (p2, q2) in support:
            r = q - q2 + 1
            if r >= 3 and p2 - p == r:
                raise HigherDifferentialError(
                    f"support admits a d_{r} arrow from {(p, q)} to {(p2, q2)}")
    out = {}
    for (p, q) in sorted(support, key=lambda pq: (pq[0] + pq[1], -pq[1])):
        total = p + q
        out[total] = direct_sum([out.get(total, ZERO), page.cell(p, q)])
    return out


SPLIT_EXTENSION_NOTE = "extensions across the abutment filtration are taken split"


def weight_table(n: int, j: int, unit: str = "c") -> dict:
    """Assembled weight-j table for degree n: degree -> GroupExpr."""
    return assemble(apply_d2(build_e2(n, j, unit=unit)))


def table_to_json(table: dict) -> str:
    return json.dumps({str(p): render_group(g) for p, g in sorted(table.items())},
                      sort_keys=True)
