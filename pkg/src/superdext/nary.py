"""Commutative invariant n-ary superalgebras defined by a derived potential.

An algebra is a super vector space with an even skew form and a potential
``lam`` of degree ``n+1``; the product is the iterated bracket
``{a1, ..., an} = [a1, [a2, ... [an, lam] ...]]``.

Functions that only need the product (ideals, derived series,
homomorphisms) accept either an :class:`NAryAlgebra` or a
:class:`MultiplicationTable`; both expose ``space``, ``arity``,
``value(index_tuple)`` and ``evaluate(vectors)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .graded import (
    BlockLayout,
    EvenSkewForm,
    SuperSpace,
    orthogonal_complement,
    orthogonal_sum,
    require_valid,
)
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    is_zero_vector,
    kernel_basis,
    matvec,
    rank,
    solve,
    transpose,
    unit,
    vector,
)
from .report import Report
from .superpoly import (
    SuperPolynomial,
    bracket_vector,
    embed,
    left_derivative,
    map_generators,
    monomial_basis,
    normalize_monomial,
)


class InconsistentTable(ValueError):
    """The table is not the product of any potential (not commutative-invariant)."""

    def __init__(self, args: tuple[int, ...], expected: Vector, got: Vector | None = None):
        self.args = args
        self.expected = expected
        self.got = got
        super().__init__(f"table is inconsistent at argument tuple {args}")


def _zero(d: int) -> Vector:
    return (ZERO,) * d


@dataclass(frozen=True)
class MultiplicationTable:
    """Products of basis vectors.

    ``entries`` maps index tuples to coordinate vectors. Tuples that are not
    stored are obtained from a stored permutation with the Koszul sign, or
    are zero.
    """

    space: SuperSpace
    arity: int
    entries: Mapping[tuple[int, ...], Vector] = field(default_factory=dict)

    def __post_init__(self):
        d = self.space.dim
        clean = {}
        for k, v in self.entries.items():
            k = tuple(k)
            if len(k) != self.arity:
                raise ValueError(f"tuple {k} does not have {self.arity} entries")
            v = vector(v)
            if len(v) != d:
                raise ValueError(f"value for {k} has length {len(v)}, expected {d}")
            for i in k:
                if not 0 <= i < d:
                    raise IndexError(f"index {i} out of range in {k}")
            clean[k] = v
        object.__setattr__(self, "entries", clean)

    @cached_property
    def _canonical(self) -> dict[tuple[int, ...], Vector]:
        out: dict[tuple[int, ...], Vector] = {}
        for k in sorted(self.entries, key=lambda t: (t != tuple(sorted(t)), t)):
            norm = normalize_monomial(k, self.space)
            if norm is None:
                continue
            key, s = norm
            if key not in out:
                out[key] = tuple(s * x for x in self.entries[k])
        return out

    def value(self, idx: Sequence[int]) -> Vector:
        idx = tuple(idx)
        v = self.entries.get(idx)
        if v is not None:
            return v
        norm = normalize_monomial(idx, self.space)
        if norm is None:
            return _zero(self.space.dim)
        key, s = norm
        v = self._canonical.get(key)
        if v is None:
            return _zero(self.space.dim)
        return v if s == 1 else tuple(-x for x in v)

    def evaluate(self, vectors: Sequence[Sequence[Fraction]]) -> Vector:
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(vectors)}")
        d = self.space.dim
        supports = [[(i, x) for i, x in enumerate(v) if x != 0] for v in vectors]
        out = [ZERO] * d
        for combo in product(*supports):
            c = Fraction(1)
            for _, x in combo:
                c *= x
            val = self.value(tuple(i for i, _ in combo))
            for k, y in enumerate(val):
                if y != 0:
                    out[k] += c * y
        return tuple(out)


@dataclass(frozen=True)
class NAryAlgebra:
    space: SuperSpace
    form: EvenSkewForm
    arity: int
    potential: SuperPolynomial

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be at least 1")
        if self.form.space != self.space or self.potential.space != self.space:
            raise ValueError("form, potential and space disagree")
        require_valid(self.form)
        if not self.potential.is_homogeneous(self.arity + 1):
            raise ValueError(f"potential must be homogeneous of degree {self.arity + 1}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def evaluate(self, vectors: Sequence[Sequence[Fraction]]) -> Vector:
        # multilinear expansion over the cached basis table; product_of is the direct path
        return self.table.evaluate(vectors)

    def value(self, idx: Sequence[int]) -> Vector:
        return self.table.value(idx)

    @cached_property
    def table(self) -> MultiplicationTable:
        return table_from_potential(self)

    def with_potential(self, potential: SuperPolynomial) -> "NAryAlgebra":
        return NAryAlgebra(self.space, self.form, self.arity, potential)


def product_of(alg: NAryAlgebra, args: Sequence) -> Vector:
    """``{a1, ..., an}`` for coordinate vectors (or degree-one polynomials)."""
    if len(args) != alg.arity:
        raise ValueError(f"expected {alg.arity} arguments, got {len(args)}")
    out = alg.potential
    for a in reversed(list(args)):
        if isinstance(a, SuperPolynomial):
            a = a.to_vector()
        out = bracket_vector(a, out, alg.form)
        if out.is_zero():
            return _zero(alg.dim)
    return out.to_vector()


def table_from_potential(alg: NAryAlgebra) -> MultiplicationTable:
    """Evaluate the product on every canonical basis tuple."""
    d = alg.dim
    cache: dict[tuple[int, ...], SuperPolynomial] = {(): alg.potential}

    def suffix(t: tuple[int, ...]) -> SuperPolynomial:
        # t is a suffix of a canonical tuple; bracket its first entry onto the rest
        if t not in cache:
            inner = suffix(t[1:])
            cache[t] = inner if inner.is_zero() else bracket_vector(unit(d, t[0]), inner, alg.form)
        return cache[t]

    entries = {}
    for t in monomial_basis(alg.space, alg.arity):
        p = suffix(t)
        if not p.is_zero():
            entries[t] = p.to_vector()
    return MultiplicationTable(alg.space, alg.arity, entries)


def all_tuples(space: SuperSpace, n: int):
    return product(range(space.dim), repeat=n)


# -- potential from a table ---------------------------------------------------


def potential_from_table(
    space: SuperSpace, form: EvenSkewForm, table: MultiplicationTable, method: str = "dual"
) -> SuperPolynomial:
    """The potential whose derived product reproduces ``table``.

    ``method="dual"`` reads the coefficients off in the basis dual to the
    form, where the iterated bracket becomes an iterated derivative;
    ``method="solve"`` solves the dense linear system over all monomials.
    Either way the result is re-evaluated on every canonical tuple and every
    explicitly stored tuple; a mismatch raises :class:`InconsistentTable`.
    """
    require_valid(form)
    if table.space != space or form.space != space:
        raise ValueError("space mismatch")
    n = table.arity
    if method == "dual":
        mu = _potential_dual(space, form, table)
    elif method == "solve":
        mu = _potential_solve(space, form, table)
    else:
        raise ValueError(f"unknown method {method!r}")
    _verify_table(NAryAlgebra(space, form, n, mu), table)
    return mu


def _potential_dual(space: SuperSpace, form: EvenSkewForm, table: MultiplicationTable) -> SuperPolynomial:
    # f^k = sum_j M[j][k] e_j with M = F^{-1} satisfies [e_i, f^k] = delta_ik,
    # so the product on e_T is the iterated left derivative in f-coordinates.
    n = table.arity
    w = form.matrix
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for m in monomial_basis(space, n + 1):
        k, t = m[-1], m[:-1]
        # f-coordinates of the product vector are F v
        v = table.value(t)
        a_k = sum((w[k][j] * v[j] for j in range(space.dim) if v[j] != 0), ZERO)
        if a_k == 0:
            continue
        p = SuperPolynomial.monomial(space, m)
        for i in reversed(t):
            p = left_derivative(p, i)
        kappa = p.coefficient((k,))
        coeffs[m] = a_k / kappa
    mu_f = SuperPolynomial(space, coeffs)
    return map_generators(mu_f, form.inverse())


def _potential_solve(space: SuperSpace, form: EvenSkewForm, table: MultiplicationTable) -> SuperPolynomial:
    n = table.arity
    canon = list(monomial_basis(space, n))
    extra = [t for t in sorted(table.entries) if t not in set(canon)]
    targets = {t: table.value(t) for t in canon + extra}
    return solve_potential(space, form, n, targets, monomial_basis(space, n + 1))


def solve_potential(
    space: SuperSpace,
    form: EvenSkewForm,
    arity: int,
    targets: Mapping[tuple[int, ...], Vector],
    monomials: Sequence[tuple[int, ...]],
) -> SuperPolynomial:
    """Dense solve for a potential supported on ``monomials`` with prescribed products.

    Raises :class:`InconsistentTable` naming the first tuple (in the order of
    ``targets``) at which the system becomes unsolvable.
    """
    d = space.dim
    tuples = list(targets)
    cols = []
    for m in monomials:
        alg = NAryAlgebra(space, form, arity, SuperPolynomial.monomial(space, m))
        cols.append([alg.evaluate([unit(d, i) for i in t]) for t in tuples])
    blocks = []
    for ti, t in enumerate(tuples):
        rows = [tuple(cols[j][ti][k] for j in range(len(monomials))) for k in range(d)]
        blocks.append((rows, list(vector(targets[t]))))
    all_rows = tuple(r for rows, _ in blocks for r in rows)
    all_rhs = [x for _, b in blocks for x in b]
    x = solve(all_rows, all_rhs, len(monomials)) if all_rows else (ZERO,) * len(monomials)
    if x is None:
        acc_rows: tuple = ()
        acc_rhs: list = []
        for t, (rows, b) in zip(tuples, blocks):
            acc_rows += tuple(rows)
            acc_rhs += b
            if solve(acc_rows, acc_rhs, len(monomials)) is None:
                raise InconsistentTable(t, tuple(b))
        raise AssertionError("unreachable: full system inconsistent but every prefix solvable")
    return SuperPolynomial(space, {m: c for m, c in zip(monomials, x) if c != 0})


def _verify_table(alg: NAryAlgebra, table: MultiplicationTable) -> None:
    computed = alg.table
    seen = set()
    for t in list(monomial_basis(alg.space, alg.arity)) + sorted(table.entries):
        if t in seen:
            continue
        seen.add(t)
        want = table.value(t)
        got = computed.value(t)
        if want != got:
            raise InconsistentTable(t, want, got)
    # repeated odd indices must vanish
    for t in table.entries:
        if normalize_monomial(t, alg.space) is None and not is_zero_vector(table.entries[t]):
            raise InconsistentTable(t, table.entries[t], _zero(alg.dim))


def algebra_from_table(form: EvenSkewForm, table: MultiplicationTable, method: str = "dual") -> NAryAlgebra:
    mu = potential_from_table(form.space, form, table, method)
    return NAryAlgebra(form.space, form, table.arity, mu)


# -- identities --------------------------------------------------------------


def check_commutative(alg_or_table) -> Report:
    """Super-symmetry of the product under every adjacent transposition."""
    sp, n = alg_or_table.space, alg_or_table.arity
    rep = Report()
    for t in all_tuples(sp, n):
        lhs = alg_or_table.value(t)
        for p in range(n - 1):
            s = t[:p] + (t[p + 1], t[p]) + t[p + 2 :]
            sign = -1 if sp.parity(t[p]) and sp.parity(t[p + 1]) else 1
            rhs = alg_or_table.value(s)
            if any(x != sign * y for x, y in zip(lhs, rhs)):
                rep.add("commutative", False, (t, p), f"swap of slots {p},{p + 1}")
    if not rep.checks:
        rep.add("commutative", True)
    return rep


def check_invariant(alg_or_table, form: EvenSkewForm | None = None) -> Report:
    """``(a0, {a1, ..., an}) = (-1)^{|a0||a1|} (a1, {a0, a2, ..., an})`` on basis tuples."""
    if form is None:
        form = alg_or_table.form
    sp, n = alg_or_table.space, alg_or_table.arity
    w = form.matrix
    rep = Report()
    d = sp.dim

    def pair(i: int, v: Vector) -> Fraction:
        return sum((w[i][j] * v[j] for j in range(d) if v[j] != 0), ZERO)

    for t in all_tuples(sp, n + 1):
        a0, a1, rest = t[0], t[1], t[2:]
        lhs = pair(a0, alg_or_table.value((a1,) + rest))
        sign = -1 if sp.parity(a0) and sp.parity(a1) else 1
        rhs = sign * pair(a1, alg_or_table.value((a0,) + rest))
        if lhs != rhs:
            rep.add("invariant", False, t, f"{lhs} != {rhs}")
    if not rep.checks:
        rep.add("invariant", True)
    return rep


# -- subspaces ---------------------------------------------------------------


def _products_of(alg_or_table, slots: Sequence[Sequence[Vector]]) -> list[Vector]:
    return [alg_or_table.evaluate(list(vs)) for vs in product(*slots)]


def _unit_basis(d: int) -> list[Vector]:
    return [unit(d, i) for i in range(d)]


def is_subalgebra(alg_or_table, s: Subspace) -> bool:
    n = alg_or_table.arity
    return all(s.contains(v) for v in _products_of(alg_or_table, [s.basis] * n))


def ideal_witness(alg_or_table, s: Subspace):
    """First basis product ``{e_i1, ..., e_i(n-1), s_j}`` leaving ``s``, or None."""
    d = alg_or_table.space.dim
    n = alg_or_table.arity
    for idx in product(range(d), repeat=n - 1):
        for j, b in enumerate(s.basis):
            v = alg_or_table.evaluate([unit(d, i) for i in idx] + [b])
            if not s.contains(v):
                return idx, j
    return None


def is_ideal(alg_or_table, s: Subspace) -> bool:
    return ideal_witness(alg_or_table, s) is None


def ideal_closure(alg_or_table, s: Subspace) -> Subspace:
    """Smallest ideal containing ``s``."""
    d = alg_or_table.space.dim
    n = alg_or_table.arity
    amb = [_unit_basis(d)] * (n - 1)
    while True:
        new = _products_of(alg_or_table, amb + [list(s.basis)]) if s.dim else []
        t = Subspace(d, s.basis + tuple(new))
        if t.dim == s.dim:
            return s
        s = t


def _span_of_products(alg_or_table, basis: Sequence[Vector]) -> Subspace:
    d = alg_or_table.space.dim
    n = alg_or_table.arity
    vecs = [alg_or_table.evaluate(list(c)) for c in product(basis, repeat=n)]
    return Subspace(d, tuple(vecs))


def derived_ideal(alg_or_table) -> Subspace:
    d = alg_or_table.space.dim
    return _span_of_products(alg_or_table, _unit_basis(d))


def derived_series(alg_or_table) -> list[Subspace]:
    """``[a, a^(1), a^(2), ...]`` ending at ``{0}`` or at the first repeated term."""
    d = alg_or_table.space.dim
    series = [Subspace.whole(d)]
    while series[-1].dim:
        nxt = _span_of_products(alg_or_table, series[-1].basis)
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def is_solvable(alg_or_table) -> tuple[bool, int | None]:
    """``(True, K)`` with ``K`` the first index where the series is zero."""
    series = derived_series(alg_or_table)
    if series[-1].dim == 0:
        return True, len(series) - 1
    return False, None


# -- restrictions, quotients, homomorphisms ---------------------------------


def graded_basis(space: SuperSpace, s: Subspace) -> tuple[list[Vector], SuperSpace]:
    """Homogeneous basis of a graded subspace, even vectors first."""
    if not space.is_graded(s):
        raise ValueError("subspace is not graded")
    even = [b for b in s.basis if space.vector_parity(b) == 0]
    odd = [b for b in s.basis if space.vector_parity(b) == 1]
    return even + odd, SuperSpace(len(even), len(odd))


def _coords(basis: Sequence[Vector], v: Sequence[Fraction]) -> Vector:
    x = solve(transpose(tuple(basis)), v, len(basis)) if basis else ()
    if x is None:
        raise ValueError("vector is not in the span")
    return x


def restricted_table(alg_or_table, s: Subspace) -> tuple[MultiplicationTable, list[Vector]]:
    """Product of a graded subalgebra in coordinates of its homogeneous basis."""
    if not is_subalgebra(alg_or_table, s):
        raise ValueError("subspace is not a subalgebra")
    basis, sub = graded_basis(alg_or_table.space, s)
    n = alg_or_table.arity
    entries = {}
    for t in product(range(sub.dim), repeat=n):
        v = alg_or_table.evaluate([basis[i] for i in t])
        if not is_zero_vector(v):
            entries[t] = _coords(basis, v)
    return MultiplicationTable(sub, n, entries), basis


def quotient_table(alg_or_table, j: Subspace) -> tuple[MultiplicationTable, Matrix]:
    """Product on ``a / j`` for an ideal ``j``, with the projection matrix."""
    if not is_ideal(alg_or_table, j):
        raise ValueError("subspace is not an ideal")
    sp = alg_or_table.space
    d, n = sp.dim, alg_or_table.arity
    reps_idx = j.complement_indices()
    reps = [unit(d, i) for i in reps_idx]
    qs = SuperSpace(sum(1 for i in reps_idx if sp.parity(i) == 0), sum(1 for i in reps_idx if sp.parity(i) == 1))
    full = reps + list(j.basis)

    def project(v):
        return _coords(full, v)[: len(reps)]

    proj = transpose(tuple(project(unit(d, i)) for i in range(d)), d)
    entries = {}
    for t in product(range(qs.dim), repeat=n):
        v = project(alg_or_table.evaluate([reps[i] for i in t]))
        if not is_zero_vector(v):
            entries[t] = v
    return MultiplicationTable(qs, n, entries), proj


@dataclass
class Quotient:
    algebra: NAryAlgebra
    representatives: list[Vector]
    perp_basis: list[Vector]

    def project(self, v: Sequence[Fraction]) -> Vector:
        return _coords(self.representatives + self.perp_basis, v)[: len(self.representatives)]


def quotient_algebra(alg: NAryAlgebra, i: Subspace) -> Quotient:
    """The invariant algebra ``i / i_perp``."""
    d, n = alg.dim, alg.arity
    if not alg.space.is_graded(i):
        raise ValueError("subspace is not graded")
    w = ideal_witness(alg, i)
    if w is not None:
        raise ValueError(f"subspace is not an ideal (witness {w})")
    i_perp = orthogonal_complement(alg.form, i)
    if not i.contains_subspace(i_perp):
        raise ValueError("orthogonal complement is not contained in the ideal")
    perp = list(i_perp.basis)
    reps: list[Vector] = []
    cur = i_perp
    for b in i.basis:
        nxt = Subspace(d, cur.basis + (b,))
        if nxt.dim > cur.dim:
            reps.append(b)
            cur = nxt
    reps.sort(key=lambda v: alg.space.vector_parity(v))
    n_even = sum(1 for r in reps if alg.space.vector_parity(r) == 0)
    qs = SuperSpace(n_even, len(reps) - n_even)
    # well-definedness: products with an i_perp slot stay in i_perp
    for idx in product(range(len(i.basis)), repeat=n - 1):
        for p in perp:
            v = alg.evaluate([i.basis[k] for k in idx] + [p])
            if not i_perp.contains(v):
                raise ValueError("induced product is not well defined")
    full = reps + perp
    qform = EvenSkewForm(qs, alg.form.restricted(reps))
    entries = {}
    for t in monomial_basis(qs, n):
        v = _coords(full, alg.evaluate([reps[k] for k in t]))[: len(reps)]
        if not is_zero_vector(v):
            entries[t] = v
    table = MultiplicationTable(qs, n, entries)
    return Quotient(algebra_from_table(qform, table), reps, perp)


def check_homomorphism(src, dst, m: Matrix) -> bool:
    """``phi({a1..an}) = {phi(a1)..phi(an)}`` on basis tuples; ``m`` columns are images."""
    ds, dd = src.space.dim, dst.space.dim
    if len(m) != dd or any(len(r) != ds for r in m):
        raise ValueError("map has the wrong shape")
    if not src.space.is_even_map(m, dst.space):
        raise ValueError("map mixes parities")
    if src.arity != dst.arity:
        return False
    cols = transpose(m, ds)
    for t in all_tuples(src.space, src.arity):
        lhs = matvec(m, src.value(t))
        rhs = dst.evaluate([cols[i] for i in t])
        if lhs != rhs:
            return False
    ker = Subspace(ds, tuple(kernel_basis(m, ds)))
    if not is_ideal(src, ker):
        raise AssertionError("kernel of a homomorphism is not an ideal")
    return True


def direct_sum(a: NAryAlgebra, b: NAryAlgebra) -> tuple[NAryAlgebra, BlockLayout]:
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    form, layout = orthogonal_sum(a.form, b.form)
    sp = layout.space
    lam = embed(a.potential, sp, layout.indices(0)) + embed(b.potential, sp, layout.indices(1))
    return NAryAlgebra(sp, form, a.arity, lam), layout


def is_trivial_one_dimensional(alg_or_table) -> bool:
    """The one algebra excluded from simplicity: dimension one with zero product."""
    sp = alg_or_table.space
    return sp.dim == 1 and is_zero_vector(alg_or_table.value((0,) * alg_or_table.arity))


def check_simplicity_witness(alg_or_table, s: Subspace) -> bool:
    """True when ``s`` is a proper nonzero ideal, which refutes simplicity."""
    d = alg_or_table.space.dim
    return 0 < s.dim < d and is_ideal(alg_or_table, s)


def check_splitting(alg: NAryAlgebra, s: Subspace) -> Report:
    """Check that ``s`` and its orthogonal complement are non-degenerate ideals splitting ``a``."""
    rep = Report()
    perp = orthogonal_complement(alg.form, s)
    rep.add("s is an ideal", is_ideal(alg, s))
    rep.add("s_perp is an ideal", is_ideal(alg, perp))
    rep.add("form non-degenerate on s", rank(alg.form.restricted(s.basis)) == s.dim)
    rep.add("s + s_perp = a", (s + perp).dim == alg.dim)
    return rep
