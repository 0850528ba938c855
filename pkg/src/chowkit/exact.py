"""Exact arithmetic kernel shared by the whole package.

Sparse multivariate polynomials with integer (or exact rational) coefficients,
immutable integer matrices, fraction-free determinants and Smith normal forms
with unimodular transforms.  No floating point appears anywhere: coefficients
are Python ints and ``fractions.Fraction`` values, both arbitrary precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence


class NonSquareError(ValueError):
    """A determinant-style operation was handed a rectangular matrix."""


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


def _norm_coeff(c):
    """Collapse integral Fractions back to int; keep everything exact."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


def _grlex(exps):
    # Graded lexicographic sort key: total degree first, then lex on exponents.
    return (sum(exps), exps)


class Poly:
    """Sparse polynomial in named variables over exact scalars.

    Terms map exponent tuples to coefficients over an ordered tuple of
    variable names.  The canonical form stores no zero coefficients and no
    unused variables, so structural equality is ring equality.  Term order is
    graded lexicographic throughout (printing, leading terms, division).
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        cleaned = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _norm_coeff(coeff)
                if coeff == 0:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(variables) or any(e < 0 for e in exps):
                    raise ValueError("exponent vector does not match variable list")
                cleaned[exps] = cleaned.get(exps, 0) + coeff
            cleaned = {e: c for e, c in cleaned.items() if c != 0}
        # Drop variables that never occur, so x+0*y == x structurally.
        if variables and cleaned:
            used = [i for i in range(len(variables)) if any(e[i] for e in cleaned)]
            if len(used) != len(variables):
                variables = tuple(variables[i] for i in used)
                cleaned = {tuple(e[i] for i in used): c for e, c in cleaned.items()}
        elif not cleaned:
            variables = ()
            cleaned = {}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls((), {})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls((name,), {(1,): 1})

    @classmethod
    def variables_of(cls, *names: str) -> tuple["Poly", ...]:
        return tuple(cls.var(n) for n in names)

    # -- coercion and variable alignment -----------------------------------

    @staticmethod
    def _coerce(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Poly")

    @staticmethod
    def _aligned(p: "Poly", q: "Poly"):
        if p.variables == q.variables:
            return p.variables, p.terms, q.terms
        merged = tuple(sorted(set(p.variables) | set(q.variables)))

        def remap(poly):
            idx = [merged.index(v) for v in poly.variables]
            out = {}
            for exps, c in poly.terms.items():
                full = [0] * len(merged)
                for pos, e in zip(idx, exps):
                    full[pos] = e
                out[tuple(full)] = c
            return out

        return merged, remap(p), remap(q)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        variables, a, b = self._aligned(self, other)
        out = dict(a)
        for exps, c in b.items():
            out[exps] = out.get(exps, 0) + c
        return Poly(variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        variables, a, b = self._aligned(self, other)
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return Poly(variables, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomial")
        result = Poly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def leading(self):
        """Leading (exponents, coefficient) pair in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex)
        return exps, self.terms[exps]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def constant_value(self):
        """Scalar value of a constant polynomial; raises otherwise."""
        if not self.terms:
            return 0
        if self.variables:
            raise ValueError("polynomial is not constant")
        return self.terms[()]

    def coefficient(self, name: str, power: int) -> "Poly":
        """Coefficient of name**power, as a polynomial in the other variables."""
        if name not in self.variables:
            return self if power == 0 else Poly.zero()
        i = self.variables.index(name)
        rest = self.variables[:i] + self.variables[i + 1:]
        out = {}
        for exps, c in self.terms.items():
            if exps[i] == power:
                key = exps[:i] + exps[i + 1:]
                out[key] = out.get(key, 0) + c
        return Poly(rest, out)

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    def substitute(self, values: Mapping[str, object]) -> "Poly":
        """Substitute scalars or polynomials for variables; exact throughout."""
        result = Poly.zero()
        cache = {}
        for exps, c in self.terms.items():
            term = Poly.const(c)
            for name, e in zip(self.variables, exps):
                if not e:
                    continue
                if name not in cache:
                    repl = values.get(name)
                    cache[name] = Poly.var(name) if repl is None else Poly._coerce(repl)
                term = term * cache[name] ** e
            result = result + term
        return result

    def divexact(self, other) -> "Poly":
        """Exact quotient self/other; raises InexactDivisionError otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        variables, a, b = self._aligned(self, other)
        lead_b = max(b, key=_grlex) if b else ()
        cb = b[lead_b]
        quotient = {}
        rem = dict(a)
        while rem:
            lead = max(rem, key=_grlex)
            exps = tuple(x - y for x, y in zip(lead, lead_b)) if variables else ()
            if any(e < 0 for e in exps):
                raise InexactDivisionError("leading term is not divisible")
            c = _norm_coeff(Fraction(rem[lead]) / Fraction(cb))
            quotient[exps] = quotient.get(exps, 0) + c
            for eb, vb in b.items():
                key = tuple(x + y for x, y in zip(exps, eb))
                nv = rem.get(key, 0) - c * vb
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        return Poly(variables, quotient)

    # -- printing -----------------------------------------------------------

    def _monomial_str(self, exps):
        parts = []
        for name, e in zip(self.variables, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = self._monomial_str(exps)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Poly({self})"


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Exact product of two polynomials (variable lists unify by name)."""
    return Poly._coerce(p) * Poly._coerce(q)


def det_expansion(rows):
    """Determinant by signed permutation expansion.

    Entries may live in any commutative ring with int coercion (ints,
    Fractions, Poly).  Intended for the small (<= 4x4) symbolic matrices used
    by chart equations and Schur alternants.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquareError("determinant of a non-square array")
    if n == 0:
        return 1
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        prod = rows[0][perm[0]]
        for i in range(1, n):
            prod = prod * rows[i][perm[i]]
        total = total + (prod if inversions % 2 == 0 else -prod)
    return total


class IntMatrix:
    """Immutable integer matrix, row-major storage."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls(rows, cols, [e for r in data for e in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum(self.entry(i, k) * other.entry(k, j) for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_lists()})"


def det_exact(m: IntMatrix) -> int:
    """Exact determinant via Bareiss fraction-free elimination.

    All intermediate values are integers (the Bareiss division is exact), so
    bit growth stays polynomial and the result is exact for any size.
    """
    if m.rows != m.cols:
        raise NonSquareError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """Diagonal d1 | d2 | ... with unimodular transforms: left*M*right is diagonal."""

    diagonal: tuple
    left: IntMatrix
    right: IntMatrix

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return IntMatrix.from_rows(out) if rows else IntMatrix(0, cols, [])


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Smith normal form over the integers with transform tracking."""
    r, c = m.rows, m.cols
    a = m.to_lists()
    left = IntMatrix.identity(r).to_lists()
    right = IntMatrix.identity(c).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, k):
        # row_i += k * row_j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        left[i] = [x + k * y for x, y in zip(left[i], left[j])]

    def add_col(i, j, k):
        # col_i += k * col_j
        for row in a:
            row[i] += k * row[j]
        for row in right:
            row[i] += k * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    limit = min(r, c)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best, pivot = v, (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(pivot[0], t)
        if pivot[1] != t:
            swap_cols(pivot[1], t)

        while True:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, r)) \
                    and all(a[t][j] == 0 for j in range(t + 1, c)):
                break

        # Divisibility: the pivot must divide the remaining block.
        offender = None
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    diagonal = tuple(a[i][i] for i in range(limit))
    return SmithForm(diagonal, IntMatrix.from_rows(left) if r else IntMatrix(0, 0, []),
                     IntMatrix.from_rows(right) if c else IntMatrix(0, 0, []))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def invertible_over_localization(m: IntMatrix, inverted_primes) -> bool:
    """True iff det(m) is, up to sign, a product of powers of the given primes."""
    for p in inverted_primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    d = det_exact(m)
    if d == 0:
        return False
    d = abs(d)
    for p in set(inverted_primes):
        while d % p == 0:
            d //= p
    return d == 1
