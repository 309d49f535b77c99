"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are tuples of row tuples.
Everything here is a pure function over immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or a ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        # Fraction raises ZeroDivisionError on "p/0" and ValueError on junk
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(x: Fraction) -> str:
    """Canonical ``"p/q"`` or ``"p"`` string."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not m:
        return 0, (cols or 0)
    return len(m), len(m[0])


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    r, c = shape(m, cols)
    return tuple(tuple(m[i][j] for i in range(r)) for j in range(c))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), ZERO)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def rref(m: Matrix, cols: int | None = None) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``m``
    and its first ``rank`` rows are the nonzero ones.
    """
    rows = [list(r) for r in m]
    nrows, ncols = shape(m, cols)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = [x * inv for x in pivot_row]
            rows[r] = pivot_row
        nz = [j for j in range(c, ncols) if pivot_row[j] != 0]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), r, pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def kernel_basis(m: Matrix, cols: int | None = None) -> list[Vector]:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    _, ncols = shape(m, cols)
    r, rk, pivots = rref(m, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][free]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, rhs: Sequence, cols: int | None = None) -> Vector | None:
    """One solution of ``m x = rhs`` with free variables set to zero.

    Returns ``None`` when the system is inconsistent.
    """
    nrows, ncols = shape(m, cols)
    rhs = vector(rhs)
    if len(rhs) != nrows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {nrows}")
    aug = tuple(row + (b,) for row, b in zip(m, rhs))
    r, rk, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = tuple(row + ident for row, ident in zip(m, identity(n)))
    r, rk, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in r[:n])


def is_invertible(m: Matrix) -> bool:
    r, c = shape(m)
    return r == c and rank(m) == r


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` stored by its RREF basis."""

    ambient_dim: int
    basis: Matrix = ()

    def __post_init__(self):
        rows = [tuple(to_fraction(x) for x in row) for row in self.basis]
        for row in rows:
            if len(row) != self.ambient_dim:
                raise ValueError("basis vector has the wrong length")
        r, rk, _ = rref(tuple(rows), self.ambient_dim)
        object.__setattr__(self, "basis", r[:rk])

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(ambient_dim, tuple(vector(v) for v in vectors))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        return cls(ambient_dim, tuple(unit(ambient_dim, i) for i in indices))

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis]

    def contains(self, v: Sequence) -> bool:
        v = vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        # reduce against the rref basis
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f != 0:
                for j in range(pc, self.ambient_dim):
                    w[j] -= f * row[j]
        return is_zero_vector(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_same_ambient(self, other)
        return all(self.contains(v) for v in other.basis)

    def complement_indices(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the stored basis (``v`` must lie in the span)."""
        v = vector(v)
        coeffs = tuple(v[pc] for pc in self.pivots)
        recon = [sum((c * row[j] for c, row in zip(coeffs, self.basis)), ZERO) for j in range(self.ambient_dim)]
        if tuple(recon) != v:
            raise ValueError("vector is not in the subspace")
        return coeffs

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def _check_same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_same_ambient(u, v)
    return Subspace(u.ambient_dim, u.basis + v.basis)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    # columns: u-basis then minus v-basis; kernel gives a u-combination equal to a v-combination
    cols = [tuple(x) for x in u.basis] + [tuple(-x for x in row) for row in v.basis]
    system = transpose(tuple(cols))
    ker = kernel_basis(system, len(cols))
    vecs = []
    for k in ker:
        coeffs = k[: u.dim]
        vecs.append(tuple(sum((c * row[j] for c, row in zip(coeffs, u.basis)), ZERO) for j in range(u.ambient_dim)))
    return Subspace(u.ambient_dim, tuple(vecs))
