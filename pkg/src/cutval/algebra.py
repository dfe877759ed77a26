"""Finite-dimensional F-algebras by structure constants, plus F[y].

Elements of a :class:`StructureAlgebra` are plain tuples of field scalars
(coordinates in the ambient basis); all operations are free functions or
methods taking those tuples.  Exact linear algebra (fraction-free in
spirit: ordinary Gaussian elimination over the exact field with
first-nonzero pivoting) backs coordinate expansions.

The polynomial backend :class:`PolynomialAlgebra` represents F[y] with the
monomial basis; elements are sparse exponent -> coefficient dicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ConfigError, StructuralError
from .numfield import ValuedField

Element = tuple  # tuple of field scalars


@dataclass(frozen=True, eq=False)
class StructureAlgebra:
    field: ValuedField
    names: tuple[str, ...]
    table: tuple  # table[i][j] = coordinate vector of e_i * e_j
    unit: Element

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise StructuralError("algebra dimension must be >= 1")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise StructuralError("structure-constant table must be n x n")
        for row in self.table:
            for vec in row:
                if len(vec) != n:
                    raise StructuralError("table entries must be coordinate vectors of length n")
        if len(self.unit) != n:
            raise StructuralError("unit coordinates must have length n")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> Element:
        z = self.field.zero
        return (z,) * self.dim

    def basis_vector(self, i: int) -> Element:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dim))

    def element(self, coords) -> Element:
        coords = tuple(self.field.scalar(c) for c in coords)
        if len(coords) != self.dim:
            raise StructuralError(f"expected {self.dim} coordinates, got {len(coords)}")
        return coords

    def add(self, x: Element, y: Element) -> Element:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple(a - b for a, b in zip(x, y))

    def smul(self, c, x: Element) -> Element:
        return tuple(c * a for a in x)

    def mul(self, x: Element, y: Element) -> Element:
        if len(x) != self.dim or len(y) != self.dim:
            raise ConfigError("element does not belong to this algebra")
        out = list(self.zero)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(self.table[i][j]):
                    if t:
                        out[k] = out[k] + c * t
        return tuple(out)

    def is_zero(self, x: Element) -> bool:
        return all(not c for c in x)

    def scalar_of(self, x: Element):
        """alpha with x = alpha * 1, or None when x is not scalar."""
        pivot = next((i for i, u in enumerate(self.unit) if u), None)
        alpha = x[pivot] / self.unit[pivot]
        if x == self.smul(alpha, self.unit):
            return alpha
        return None

    def format_element(self, x: Element) -> str:
        return "(" + ", ".join(self.field.scalar_text(c) for c in x) + ")"


# --- exact linear algebra -------------------------------------------------


def solve_columns(fieldobj: ValuedField, columns, target):
    """Coordinates c with sum c_i * columns[i] = target, exactly.

    Raises StructuralError for dependent columns and for an inconsistent
    system (target outside the span when len(columns) < len(target)).
    """
    m = len(columns)
    n = len(target)
    rows = [[columns[i][r] for i in range(m)] + [target[r]] for r in range(n)]
    piv_rows: list[int] = []
    r0 = 0
    for col in range(m):
        pivot = next((r for r in range(r0, n) if rows[r][col]), None)
        if pivot is None:
            raise StructuralError("dependent columns in linear solve")
        rows[r0], rows[pivot] = rows[pivot], rows[r0]
        pv = rows[r0][col]
        rows[r0] = [a / pv for a in rows[r0]]
        for r in range(n):
            if r != r0 and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[r0])]
        piv_rows.append(r0)
        r0 += 1
    for r in range(r0, n):
        if rows[r][m]:
            raise StructuralError("target outside the span of the columns")
    return tuple(rows[piv_rows[col]][m] for col in range(m))


def rank_of(fieldobj: ValuedField, vectors) -> int:
    vecs = [list(v) for v in vectors]
    n = len(vecs[0]) if vecs else 0
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(vecs)) if vecs[r][col]), None)
        if pivot is None:
            continue
        vecs[rank], vecs[pivot] = vecs[pivot], vecs[rank]
        pv = vecs[rank][col]
        vecs[rank] = [a / pv for a in vecs[rank]]
        for r in range(len(vecs)):
            if r != rank and vecs[r][col]:
                f = vecs[r][col]
                vecs[r] = [a - f * b for a, b in zip(vecs[r], vecs[rank])]
        rank += 1
    return rank


def is_independent(fieldobj: ValuedField, vectors) -> bool:
    vectors = list(vectors)
    return rank_of(fieldobj, vectors) == len(vectors)


def coords_in_basis(alg: StructureAlgebra, x: Element, basis) -> tuple:
    """Expand x in an independent family; unique exact coordinates."""
    return solve_columns(alg.field, list(basis), x)


def in_span(alg: StructureAlgebra, x: Element, vectors) -> bool:
    try:
        solve_columns(alg.field, list(vectors), x)
        return True
    except StructuralError:
        return False


def extend_to_basis(alg: StructureAlgebra, vectors) -> list:
    """Greedily complete an independent family with ambient basis vectors."""
    out = list(vectors)
    if not is_independent(alg.field, out):
        raise StructuralError("cannot extend a dependent family")
    for i in range(alg.dim):
        if len(out) == alg.dim:
            break
        cand = alg.basis_vector(i)
        if is_independent(alg.field, out + [cand]):
            out.append(cand)
    if len(out) != alg.dim:
        raise StructuralError("failed to extend to a basis")
    return out


# --- validation -----------------------------------------------------------


@dataclass(frozen=True)
class TableReport:
    ok: bool
    dim: int
    failure: str | None = None
    witness: tuple | None = None

    def __str__(self):
        if self.ok:
            return f"OK: associative, unital (n={self.dim})"
        return f"FAIL: {self.failure} at {self.witness}"


def check_associative_unital(alg: StructureAlgebra) -> TableReport:
    """Exhaustive scan of all n^3 associativity triples and the unit laws."""
    n = alg.dim
    basis = [alg.basis_vector(i) for i in range(n)]
    for i in range(n):
        ei = basis[i]
        if alg.mul(alg.unit, ei) != ei:
            return TableReport(False, n, "left unit law fails", (i,))
        if alg.mul(ei, alg.unit) != ei:
            return TableReport(False, n, "right unit law fails", (i,))
    for i in range(n):
        for j in range(n):
            ij = alg.mul(basis[i], basis[j])
            for k in range(n):
                left = alg.mul(ij, basis[k])
                right = alg.mul(basis[i], alg.mul(basis[j], basis[k]))
                if left != right:
                    return TableReport(False, n, "associativity fails", (i, j, k))
    return TableReport(True, n)


# --- bundled algebras -----------------------------------------------------


def matrix_algebra(fieldobj: ValuedField, n: int) -> StructureAlgebra:
    """M_n(F) with the matrix-unit basis e11, e12, ..., enn (row-major)."""
    names = tuple(f"e{i + 1}{j + 1}" for i in range(n) for j in range(n))
    z, o = fieldobj.zero, fieldobj.one
    dim = n * n

    def idx(i, j):
        return i * n + j

    table = []
    for a in range(dim):
        i, j = divmod(a, n)
        row = []
        for b in range(dim):
            k, l = divmod(b, n)
            vec = [z] * dim
            if j == k:
                vec[idx(i, l)] = o
            row.append(tuple(vec))
        table.append(tuple(row))
    unit = tuple(o if divmod(a, n)[0] == divmod(a, n)[1] else z for a in range(dim))
    return StructureAlgebra(fieldobj, names, tuple(table), unit)


def quadratic_algebra(fieldobj: ValuedField, d) -> StructureAlgebra:
    """F[x]/(x^2 - d) with basis {1, s}; d = 2 gives Q(sqrt 2), d = 0 the
    nilpotent example Q[x]/(x^2)."""
    z, o = fieldobj.zero, fieldobj.one
    dd = fieldobj.scalar(d)
    names = ("1", "s")
    table = (
        ((o, z), (z, o)),
        ((z, o), (dd, z)),
    )
    unit = (o, z)
    return StructureAlgebra(fieldobj, names, table, unit)


def matrix_element(alg: StructureAlgebra, entries) -> Element:
    """Element of matrix_algebra from an n x n array of scalars."""
    flat = [alg.field.scalar(c) for row in entries for c in row]
    if len(flat) != alg.dim:
        raise StructuralError("matrix shape does not match the algebra")
    return tuple(flat)


# --- polynomial backend ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolynomialAlgebra:
    """F[y] with monomial basis {y^n}; elements are exponent->scalar dicts."""

    field: ValuedField

    @property
    def zero(self) -> dict:
        return {}

    @property
    def unit(self) -> dict:
        return {0: self.field.one}

    def monomial(self, n: int, c=None) -> dict:
        c = self.field.one if c is None else self.field.scalar(c)
        return {n: c} if c else {}

    def element(self, pairs) -> dict:
        out = {}
        for n, c in dict(pairs).items():
            c = self.field.scalar(c)
            if c:
                out[int(n)] = c
        return out

    def add(self, f: dict, g: dict) -> dict:
        out = dict(f)
        for n, c in g.items():
            s = out.get(n, self.field.zero) + c
            if s:
                out[n] = s
            else:
                out.pop(n, None)
        return out

    def sub(self, f: dict, g: dict) -> dict:
        return self.add(f, self.smul(-self.field.one, g))

    def smul(self, c, f: dict) -> dict:
        if not c:
            return {}
        return {n: c * a for n, a in f.items()}

    def mul(self, f: dict, g: dict) -> dict:
        out: dict = {}
        for i, a in f.items():
            for j, b in g.items():
                n = i + j
                s = out.get(n, self.field.zero) + a * b
                if s:
                    out[n] = s
                else:
                    out.pop(n, None)
        return out

    def is_zero(self, f: dict) -> bool:
        return not f

    def format_element(self, f: dict) -> str:
        if not f:
            return "0"
        terms = [f"{self.field.scalar_text(c)}*y^{n}" for n, c in sorted(f.items())]
        return " + ".join(terms)
