"""Z2-graded spaces and even non-degenerate skew-symmetric forms.

Basis convention: indices ``0 .. dim_even-1`` are even, the rest odd.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    inverse,
    is_invertible,
    kernel_basis,
    matmul,
    matrix,
    matvec,
    transpose,
    unit,
)


class FormError(ValueError):
    """Raised when a bilinear form is not even, skew-symmetric and non-degenerate."""


@dataclass(frozen=True)
class SuperSpace:
    dim_even: int
    dim_odd: int

    def __post_init__(self):
        if self.dim_even < 0 or self.dim_odd < 0:
            raise ValueError("dimensions must be non-negative")

    @property
    def dim(self) -> int:
        return self.dim_even + self.dim_odd

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range for dimension {self.dim}")
        return 0 if i < self.dim_even else 1

    def parities(self) -> tuple[int, ...]:
        return (0,) * self.dim_even + (1,) * self.dim_odd

    def vector_parity(self, v: Sequence[Fraction]) -> int | None:
        """Parity of a homogeneous vector, ``None`` if mixed, 0 for the zero vector."""
        even = any(v[i] != 0 for i in range(self.dim_even))
        odd = any(v[i] != 0 for i in range(self.dim_even, self.dim))
        if even and odd:
            return None
        return 1 if odd else 0

    def is_graded(self, s: Subspace) -> bool:
        """True if ``s`` is the direct sum of its even and odd parts."""
        return all(self.vector_parity(row) is not None for row in s.basis)

    def is_even_map(self, m: Matrix, target: "SuperSpace | None" = None) -> bool:
        """True if the matrix (columns = images of basis vectors) preserves parity."""
        target = target or self
        for j in range(self.dim):
            for i in range(target.dim):
                if m[i][j] != 0 and target.parity(i) != self.parity(j):
                    return False
        return True


@dataclass
class FormReport:
    violations: list[str] = field(default_factory=list)
    nondegenerate: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations and self.nondegenerate


@dataclass(frozen=True)
class EvenSkewForm:
    """Matrix of ``(e_i, e_j)``; construction does not validate, see :func:`validate_even_skew_form`."""

    space: SuperSpace
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", matrix(self.matrix))
        d = self.space.dim
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise ValueError(f"form matrix must be {d}x{d}")

    @classmethod
    def standard(cls, space: SuperSpace) -> "EvenSkewForm":
        """Darboux pairs on the even part, identity on the odd part."""
        if space.dim_even % 2:
            raise FormError("an even block of odd dimension carries no non-degenerate skew form")
        d = space.dim
        rows = [[0] * d for _ in range(d)]
        for k in range(0, space.dim_even, 2):
            rows[k][k + 1] = 1
            rows[k + 1][k] = -1
        for k in range(space.dim_even, d):
            rows[k][k] = 1
        return cls(space, matrix(rows))

    def __call__(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((u[i] * x for i, x in enumerate(matvec(self.matrix, v)) if u[i] != 0), ZERO)

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def restricted(self, basis: Sequence[Sequence[Fraction]]) -> Matrix:
        """Gram matrix of the form on the given vectors."""
        return tuple(tuple(self(u, v) for v in basis) for u in basis)

    def inverse(self) -> Matrix:
        return inverse(self.matrix)


def validate_even_skew_form(f: EvenSkewForm) -> FormReport:
    sp, m = f.space, f.matrix
    rep = FormReport()
    d = sp.dim
    for i in range(d):
        for j in range(d):
            pi, pj = sp.parity(i), sp.parity(j)
            if pi != pj:
                if m[i][j] != 0:
                    rep.violations.append(f"mixed block entry ({i},{j}) = {m[i][j]} must be 0")
            elif pi == 0:
                if m[i][j] != -m[j][i] and i <= j:
                    rep.violations.append(f"even-even block not skew at ({i},{j})")
            elif m[i][j] != m[j][i] and i < j:
                rep.violations.append(f"odd-odd block not symmetric at ({i},{j})")
    rep.nondegenerate = is_invertible(m) if d else True
    if not rep.nondegenerate:
        rep.violations.append("form is degenerate (determinant 0)")
    return rep


def require_valid(f: EvenSkewForm) -> EvenSkewForm:
    rep = validate_even_skew_form(f)
    if not rep.ok:
        raise FormError("; ".join(rep.violations))
    return f


def orthogonal_complement(f: EvenSkewForm, s: Subspace) -> Subspace:
    """``{v : (v, s) = 0}``."""
    d = f.space.dim
    if s.ambient_dim != d:
        raise ValueError("subspace lives in a different space")
    if s.dim == 0:
        return Subspace.whole(d)
    # (v, s_j) = v . (F s_j)
    rows = tuple(matvec(f.matrix, b) for b in s.basis)
    return Subspace(d, tuple(kernel_basis(rows, d)))


def is_isotropic(f: EvenSkewForm, s: Subspace) -> bool:
    return all(x == 0 for row in f.restricted(s.basis) for x in row)


def dual_basis(f: EvenSkewForm, pairing_space: Sequence[Vector], targets: Sequence[Vector]) -> list[Vector]:
    """Basis ``b`` of span(pairing_space) with ``(b_l, targets_j) = delta_lj``."""
    p = tuple(tuple(f(u, v) for v in targets) for u in pairing_space)
    pinv = inverse(p)
    d = f.space.dim
    return [
        tuple(sum((pinv[l][k] * pairing_space[k][c] for k in range(len(pairing_space))), ZERO) for c in range(d))
        for l in range(len(targets))
    ]


def isotropic_complement(f: EvenSkewForm, i: Subspace, i_perp: Subspace | None = None) -> Subspace:
    """Isotropic ``h`` with ``a = i + h`` and the form non-degenerate on ``h + i_perp``.

    Requires ``i_perp`` (the orthogonal complement of ``i``) to lie inside ``i``.
    """
    return Subspace(f.space.dim, tuple(_isotropic_complement_basis(f, i, i_perp)))


def _isotropic_complement_basis(f: EvenSkewForm, i: Subspace, i_perp: Subspace | None = None) -> list[Vector]:
    d = f.space.dim
    if i_perp is None:
        i_perp = orthogonal_complement(f, i)
    if i.dim == d:
        raise ValueError("ideal equals the whole space; there is no complement to build")
    if not i.contains_subspace(i_perp):
        raise ValueError("orthogonal complement is not contained in the subspace")
    cands = [unit(d, j) for j in i.complement_indices()]
    perp_basis = list(i_perp.basis)
    # b_l in i_perp dual to the candidates
    b = dual_basis(f, perp_basis, cands)
    gram = f.restricted(cands)
    out = []
    for j, v in enumerate(cands):
        w = list(v)
        for k, bk in enumerate(b):
            g = gram[j][k]
            if g != 0:
                for c in range(d):
                    w[c] -= g * bk[c] / 2
        out.append(tuple(w))
    return out


@dataclass(frozen=True)
class BlockLayout:
    """Index bookkeeping for a direct sum of super vector spaces.

    Global indices keep the even-first convention: all even parts of the
    blocks (in block order) come first, then all odd parts.
    """

    blocks: tuple[SuperSpace, ...]

    @property
    def space(self) -> SuperSpace:
        return SuperSpace(sum(b.dim_even for b in self.blocks), sum(b.dim_odd for b in self.blocks))

    def index(self, block: int, local: int) -> int:
        sp = self.blocks[block]
        if local < sp.dim_even:
            return sum(b.dim_even for b in self.blocks[:block]) + local
        total_even = self.space.dim_even
        return total_even + sum(b.dim_odd for b in self.blocks[:block]) + (local - sp.dim_even)

    def indices(self, block: int) -> list[int]:
        return [self.index(block, k) for k in range(self.blocks[block].dim)]

    def locate(self, g: int) -> tuple[int, int]:
        for b in range(len(self.blocks)):
            for k in range(self.blocks[b].dim):
                if self.index(b, k) == g:
                    return b, k
        raise IndexError(g)

    def block_of(self) -> list[int]:
        out = [0] * self.space.dim
        for b in range(len(self.blocks)):
            for g in self.indices(b):
                out[g] = b
        return out


def orthogonal_sum(*forms: EvenSkewForm) -> tuple[EvenSkewForm, BlockLayout]:
    layout = BlockLayout(tuple(f.space for f in forms))
    d = layout.space.dim
    rows = [[ZERO] * d for _ in range(d)]
    for b, f in enumerate(forms):
        idx = layout.indices(b)
        for i, gi in enumerate(idx):
            for j, gj in enumerate(idx):
                rows[gi][gj] = f.matrix[i][j]
    return EvenSkewForm(layout.space, matrix(rows)), layout


def canonical_pairing_form(h: SuperSpace) -> EvenSkewForm:
    """Form on ``h + h*`` with ``(alpha, x) = alpha(x)`` and ``(x, alpha) = -(-1)^{|x||alpha|} alpha(x)``.

    Local layout is :class:`BlockLayout` of ``(h, h*)``; ``h*`` has the same
    parities as ``h``.
    """
    layout = BlockLayout((h, h))
    d = layout.space.dim
    rows = [[ZERO] * d for _ in range(d)]
    for k in range(h.dim):
        x = layout.index(0, k)
        a = layout.index(1, k)
        p = h.parity(k)
        rows[a][x] = Fraction(1)
        rows[x][a] = Fraction(-((-1) ** (p * p)))
    return EvenSkewForm(layout.space, matrix(rows))


def change_of_basis(f: EvenSkewForm, a: Matrix) -> Matrix:
    """Gram matrix in the basis given by the columns of ``a``."""
    return matmul(matmul(transpose(a), f.matrix), a)
