"""Splitting an algebra along an ideal into a generalized double extension.

Given an ideal ``i`` with ``i_perp`` inside ``i``, choose an isotropic
complement ``h``, set ``w = i_perp + h`` and let ``g = w_perp``.  In the
adapted basis ``(g, h, h*)``, where ``h*`` is the basis of ``i_perp`` dual to
``h``, the potential falls into strata ``lam_ijk`` with ``i`` factors from
``h``, ``j`` from ``h*`` and ``k`` from ``g``.  Only ``i = 0`` and
``(i, k) = (1, 0)`` may occur.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .extension import (
    G,
    H,
    HSTAR,
    DoubleExtensionData,
    HComponent,
    _hh_layout,
    _hh_to_ambient,
    build_double_extension,
)
from .graded import (
    BlockLayout,
    EvenSkewForm,
    SuperSpace,
    _isotropic_complement_basis,
    change_of_basis,
    dual_basis,
    orthogonal_complement,
)
from .linalg import Matrix, Subspace, Vector, inverse, is_invertible, matmul, transpose, unit
from .nary import (
    NAryAlgebra,
    check_homomorphism,
    derived_ideal,
    derived_series,
    graded_basis,
    ideal_witness,
    is_subalgebra,
    quotient_algebra,
)
from .report import Check, Report, format_witness
from .superpoly import SuperPolynomial, map_generators, restrict, stratum_counts


class DecompositionError(ValueError):
    """The input is not in a situation the decomposition handles."""


class PatternViolation(DecompositionError):
    def __init__(self, report: Report):
        self.report = report
        bad = report.failures[0]
        super().__init__(f"{bad.name} (witness {bad.witness})")


@dataclass(frozen=True)
class DecompositionGrading:
    """Subspaces ``h``, ``i_perp``, ``w_perp`` and the adapted basis.

    Columns of ``adapted_basis`` follow the ambient layout of the
    ``(g, h, h*)`` extension: the ``g`` block holds a basis of ``w_perp``,
    the ``h*`` block the basis of ``i_perp`` dual to ``h``.
    """

    h: Subspace
    i_perp: Subspace
    w_perp: Subspace
    adapted_basis: Matrix
    layout: BlockLayout

    def validate(self, form: EvenSkewForm) -> Report:
        rep = Report()
        d = form.space.dim
        total = self.h.dim + self.i_perp.dim + self.w_perp.dim
        rep.add("h + i_perp + w_perp = a", total == d and (self.h + self.i_perp + self.w_perp).dim == d)
        w = self.h + self.i_perp
        rep.add("form non-degenerate on h + i_perp", is_invertible(form.restricted(w.basis)) if w.dim else True)
        rep.add("w_perp is the complement of w", orthogonal_complement(form, w) == self.w_perp)
        rep.add("adapted basis invertible", is_invertible(self.adapted_basis))
        return rep


@dataclass
class StratumSplit:
    """``lam_ijk`` keyed by ``(i, j, k)`` = (#h, #h*, #g) factors, adapted coordinates."""

    arity: int
    parts: dict[tuple[int, int, int], SuperPolynomial]
    space: SuperSpace

    def part(self, i: int, j: int, k: int) -> SuperPolynomial:
        return self.parts.get((i, j, k), SuperPolynomial.zero(self.space))

    def total(self) -> SuperPolynomial:
        out = SuperPolynomial.zero(self.space)
        for p in self.parts.values():
            out = out + p
        return out


@dataclass
class NotApplicable:
    reason: str
    report: Report = field(default_factory=Report)

    def __bool__(self) -> bool:
        return False


def stratum_split(lam_adapted: SuperPolynomial, layout: BlockLayout, arity: int) -> StratumSplit:
    """Bin the monomials of an adapted-basis potential by their factor counts."""
    block_of = layout.block_of()
    parts: dict[tuple[int, int, int], dict] = {}
    for m, c in lam_adapted:
        ng, nh, ns = stratum_counts(m, block_of, 3)
        parts.setdefault((nh, ns, ng), {})[m] = c
    sp = layout.space
    return StratumSplit(arity, {k: SuperPolynomial(sp, v) for k, v in sorted(parts.items())}, sp)


def verify_component_pattern(split: StratumSplit) -> Report:
    """Nonzero strata may only have no ``h`` factor, or one ``h`` factor and no ``g`` factor."""
    rep = Report()
    for (i, j, k), p in sorted(split.parts.items()):
        if p.is_zero():
            continue
        allowed = i == 0 or (i == 1 and k == 0)
        mono = next(iter(p))[0]
        rep.add(f"lam_{i}{j}{k} vanishes", allowed, mono if not allowed else None)
    if not rep.checks:
        rep.add("potential is zero", True)
    return rep


def compute_grading(alg: NAryAlgebra, i: Subspace) -> DecompositionGrading:
    """Build ``h``, ``i_perp``, ``w_perp`` and the adapted basis for an ideal ``i``."""
    sp, form = alg.space, alg.form
    d = sp.dim
    i_perp = orthogonal_complement(form, i)
    if not i.contains_subspace(i_perp):
        raise DecompositionError("orthogonal complement of the ideal is not contained in it")
    h_vecs = _isotropic_complement_basis(form, i, i_perp)
    h_sub = Subspace(d, tuple(h_vecs))
    h_basis, h_space = graded_basis(sp, h_sub)
    perp_basis, _ = graded_basis(sp, i_perp)
    hstar_basis = dual_basis(form, perp_basis, h_basis)
    w = i_perp + h_sub
    w_perp = orthogonal_complement(form, w)
    g_basis, g_space = graded_basis(sp, w_perp)
    layout = BlockLayout((g_space, h_space, h_space))
    cols: list[Vector] = [()] * d
    for block, vecs in ((G, g_basis), (H, h_basis), (HSTAR, hstar_basis)):
        for k, v in enumerate(vecs):
            cols[layout.index(block, k)] = tuple(v)
    return DecompositionGrading(h_sub, i_perp, w_perp, transpose(tuple(cols), d), layout)


def _require_ideal(alg: NAryAlgebra, i: Subspace) -> None:
    d = alg.dim
    if i.ambient_dim != d:
        raise DecompositionError("subspace lives in a different space")
    if not 0 < i.dim < d:
        raise DecompositionError("ideal must be proper and nonzero")
    if not alg.space.is_graded(i):
        raise DecompositionError("ideal must be a graded subspace")
    w = ideal_witness(alg, i)
    if w is not None:
        raise DecompositionError(f"subspace is not an ideal (witness {w})")


def decompose_along_ideal(alg: NAryAlgebra, i: Subspace) -> DoubleExtensionData:
    """Present ``alg`` as a generalized double extension along the ideal ``i``.

    The returned data carries the adapted basis; :func:`reassemble` inverts
    the construction exactly.  Maximality of ``i`` and irreducibility of the
    algebra are recorded as assumptions, everything else is checked.
    """
    _require_ideal(alg, i)
    n = alg.arity
    grading = compute_grading(alg, i)
    rep = Report()
    rep.add("i is an ideal", True)
    rep.add("i_perp contained in i", True)
    rep.extend(grading.validate(alg.form))
    a = grading.adapted_basis
    layout = grading.layout
    lam = map_generators(alg.potential, inverse(a))
    split = stratum_split(lam, layout, n)
    pattern = verify_component_pattern(split)
    rep.extend(pattern)
    if not pattern.ok:
        raise PatternViolation(pattern)

    amb_form = change_of_basis(alg.form, a)
    gi = layout.indices(G)
    g_space = layout.blocks[G]
    g_form = EvenSkewForm(g_space, tuple(tuple(amb_form[r][c] for c in gi) for r in gi))
    mu = restrict(split.part(0, 0, n + 1), g_space, gi)
    g = NAryAlgebra(g_space, g_form, n, mu)
    h_space = layout.blocks[H]
    hh = _hh_layout(h_space).space
    nu = restrict(split.part(1, n, 0), hh, _hh_to_ambient(layout, h_space))
    h = HComponent(h_space, n, nu)
    psis = [split.part(0, k, n + 1 - k) for k in range(1, n + 2)]
    ext = build_double_extension(g, h, psis)
    ext.adapted_basis = a
    rep.extend(ext.report)
    rep.add("adapted form matches the assembled form", ext.ambient.form.matrix == amb_form)
    rep.add("assembled potential matches the adapted potential", ext.ambient.potential == lam)

    rep.extend(quotient_report(alg, i, ext))
    rep.extend(corollary_report(alg, grading, ext))
    rep.assumptions.append("i is a maximal ideal (not verified)")
    rep.assumptions.append("the algebra is irreducible (not verified)")
    ext.report = rep
    return ext


def quotient_report(alg: NAryAlgebra, i: Subspace, ext: DoubleExtensionData) -> Report:
    """Check that ``g`` is isomorphic to ``i / i_perp`` through the adapted basis."""
    rep = Report()
    q = quotient_algebra(alg, i)
    a = ext.adapted_basis
    cols = transpose(a, len(a))
    images = [q.project(cols[k]) for k in ext.layout.indices(G)]
    m = transpose(tuple(images), q.algebra.dim) if images else tuple(() for _ in range(q.algebra.dim))
    iso = len(images) == q.algebra.dim and (not images or is_invertible(m))
    rep.add("g -> i/i_perp is bijective", iso)
    rep.add("g -> i/i_perp is a homomorphism", iso and check_homomorphism(ext.g, q.algebra, m))
    return rep


def corollary_report(alg: NAryAlgebra, grading: DecompositionGrading, ext: DoubleExtensionData) -> Report:
    rep = Report()
    n = alg.arity
    psi_top_zero = ext.psi[n - 1].is_zero() and ext.psi[n].is_zero()
    if is_subalgebra(alg, grading.h):
        rep.add("h is a subalgebra, so psi_n = psi_{n+1} = 0", psi_top_zero)
    else:
        rep.add("h is not a subalgebra, so psi_n or psi_{n+1} is nonzero", not psi_top_zero)
    if grading.h.dim == 1 and ext.layout.blocks[H].dim_odd == 1 and n >= 2:
        rest = all(p.is_zero() for p in ext.psi[1:])
        rep.add("codimension one: nu = 0 and psi_i = 0 for i != 1", ext.nu.is_zero() and rest)
    elif grading.h.dim == 1:
        rep.assumptions.append("codimension-one pattern not asserted: the complement is even or n = 1")
    return rep


def reassemble(ext: DoubleExtensionData) -> NAryAlgebra:
    """The algebra in original coordinates; the identity when no adapted basis is attached."""
    amb = ext.ambient
    a = ext.adapted_basis
    if a is None:
        return amb
    ainv = inverse(a)
    form = matmul(matmul(transpose(ainv), amb.form.matrix), ainv)
    return NAryAlgebra(amb.space, EvenSkewForm(amb.space, form), amb.arity, map_generators(amb.potential, a))


# -- solvable pipeline ------------------------------------------------------------


def hyperplane_candidates(alg: NAryAlgebra, base: Subspace) -> list[Subspace]:
    """Graded hyperplanes containing ``base`` built from standard basis vectors.

    The plain lowest-index completion comes first, then completions that skip
    one basis vector, in index order.
    """
    d = alg.dim
    out: list[Subspace] = []
    for skip in [None] + list(range(d)):
        s = base
        for j in range(d):
            if s.dim == d - 1:
                break
            if j == skip:
                continue
            e = unit(d, j)
            if not s.contains(e):
                s = s + Subspace.span(d, [e])
        if s.dim == d - 1 and s not in out:
            out.append(s)
    return out


def decompose_solvable_step(alg: NAryAlgebra) -> Union[DoubleExtensionData, NotApplicable]:
    """Decompose along a codimension-one ideal containing the derived ideal."""
    d = alg.dim
    if d == 0:
        return NotApplicable("the algebra is zero")
    a1 = derived_ideal(alg)
    if a1.dim == d:
        return NotApplicable("the derived ideal is the whole algebra")
    rep = Report()
    for i in hyperplane_candidates(alg, a1):
        perp = orthogonal_complement(alg.form, i)
        if i.contains_subspace(perp):
            ext = decompose_along_ideal(alg, i)
            ext.report.checks.insert(0, Check("hyperplane contains the derived ideal", True))
            return ext
        rep.add(f"hyperplane {format_witness(i.basis)} has i_perp inside i", False, perp.basis[0] if perp.basis else None)
    return NotApplicable("no searched hyperplane containing the derived ideal has i_perp inside i", rep)


def decompose_solvable(alg: NAryAlgebra) -> tuple[list[DoubleExtensionData], NAryAlgebra | NotApplicable]:
    """Iterate the solvable step on the ``g`` component.

    Returns the chain of extensions and the final ``g`` (zero-dimensional
    for a complete decomposition) or the :class:`NotApplicable` that stopped it.
    """
    steps: list[DoubleExtensionData] = []
    cur = alg
    while cur.dim:
        nxt = decompose_solvable_step(cur)
        if isinstance(nxt, NotApplicable):
            return steps, nxt
        steps.append(nxt)
        cur = nxt.g
    return steps, cur


def is_series_solvable(alg: NAryAlgebra) -> bool:
    return derived_series(alg)[-1].dim == 0


__all__ = [
    "DecompositionError",
    "DecompositionGrading",
    "NotApplicable",
    "PatternViolation",
    "StratumSplit",
    "compute_grading",
    "corollary_report",
    "decompose_along_ideal",
    "decompose_solvable",
    "decompose_solvable_step",
    "hyperplane_candidates",
    "quotient_report",
    "reassemble",
    "stratum_split",
    "verify_component_pattern",
]
