import random

import pytest

from builders import image_subspace, random_even_invertible, random_generalized_extension, transform
from superdext.catalog import cross_product, oscillator
from superdext.decompose import (
    DecompositionError,
    NotApplicable,
    PatternViolation,
    compute_grading,
    corollary_report,
    decompose_along_ideal,
    decompose_solvable,
    decompose_solvable_step,
    quotient_report,
    reassemble,
    stratum_split,
    verify_component_pattern,
)
from superdext.extension import HComponent, build_double_extension
from superdext.graded import BlockLayout, EvenSkewForm, SuperSpace, orthogonal_complement
from superdext.linalg import Subspace, inverse
from superdext.nary import NAryAlgebra, derived_ideal, direct_sum, ideal_closure, is_subalgebra
from superdext.superpoly import SuperPolynomial, map_generators

E3_IDEAL = Subspace.coordinate(4, [0, 1, 3])


def hyperbolic_pair():
    sp = SuperSpace(0, 2)
    return NAryAlgebra(sp, EvenSkewForm(sp, [[0, 1], [1, 0]]), 2, SuperPolynomial.zero(sp))


def test_stratum_split_examples():
    lay = BlockLayout((SuperSpace(0, 2), SuperSpace(0, 1), SuperSpace(0, 1)))
    assert stratum_split(SuperPolynomial.zero(lay.space), lay, 2).parts == {}
    lam = SuperPolynomial(lay.space, {(0, 1, 3): 1})
    split = stratum_split(lam, lay, 2)
    assert set(split.parts) == {(0, 1, 2)}
    assert split.total() == lam
    mixed = SuperPolynomial(lay.space, {(0, 1, 3): 2, (0, 2, 3): -1, (1, 2, 3): 1})
    assert stratum_split(mixed, lay, 2).total() == mixed
    assert stratum_split(mixed, lay, 2).part(1, 1, 1) == SuperPolynomial(lay.space, {(0, 2, 3): -1, (1, 2, 3): 1})


def test_pattern_on_oscillator_and_non_ideal():
    a = oscillator()
    gr = compute_grading(a, E3_IDEAL)
    split = stratum_split(map_generators(a.potential, inverse(gr.adapted_basis)), gr.layout, 2)
    assert verify_component_pattern(split).ok
    # span{e0, e2} is not an ideal, and lam picks up a forbidden stratum
    sp = SuperSpace(0, 3)
    b = NAryAlgebra(sp, EvenSkewForm(sp, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]), 2, SuperPolynomial(sp, {(0, 1, 2): 1}))
    gr = compute_grading(b, Subspace.coordinate(3, [0, 2]))
    split = stratum_split(map_generators(b.potential, inverse(gr.adapted_basis)), gr.layout, 2)
    assert set(split.parts) == {(1, 1, 1)}
    rep = verify_component_pattern(split)
    assert not rep.ok and rep.failures[0].witness == (0, 1, 2)


def test_oscillator_decomposition():
    a = oscillator()
    ext = decompose_along_ideal(a, E3_IDEAL)
    assert ext.report.ok
    assert ext.mu.is_zero() and ext.h.nu.is_zero()
    sp = ext.layout.space
    assert ext.psi[0] == SuperPolynomial(sp, {(0, 1, 3): 1})
    assert ext.psi[1].is_zero() and ext.psi[2].is_zero()
    assert ext.layout.blocks[1] == SuperSpace(0, 1)
    r = reassemble(ext)
    assert r.potential == a.potential and r.form == a.form
    assert any("maximal" in s for s in ext.report.assumptions)


def test_rejects_bad_ideals():
    a = oscillator()
    for s in (Subspace.whole(4), Subspace.zero(4), Subspace.coordinate(4, [2])):
        with pytest.raises(DecompositionError):
            decompose_along_ideal(a, s)
    double, lay = direct_sum(cross_product(), cross_product())
    with pytest.raises(DecompositionError):
        decompose_along_ideal(double, Subspace.coordinate(6, lay.indices(0)))
    with pytest.raises(DecompositionError):
        decompose_along_ideal(a, Subspace.coordinate(3, [0]))
    assert issubclass(PatternViolation, DecompositionError)


def test_random_round_trips_are_exact():
    rng = random.Random(51)
    for _ in range(30):
        ext = random_generalized_extension(rng, rng.choice([2, 3]))
        back = decompose_along_ideal(ext.ambient, ext.ideal())
        assert back.report.ok
        assert back.mu == ext.mu and back.h.nu == ext.h.nu
        assert list(back.psi) == list(ext.psi)
        r = reassemble(back)
        assert r.potential == ext.ambient.potential and r.form == ext.ambient.form


def test_transformed_instances():
    rng = random.Random(52)
    for _ in range(20):
        ext = random_generalized_extension(rng, rng.choice([2, 3]))
        t = random_even_invertible(ext.layout.space, rng)
        alg = transform(ext.ambient, t)
        i = image_subspace(t, ext.ideal())
        got = decompose_along_ideal(alg, i)
        assert got.report.ok
        r = reassemble(got)
        assert r.potential == alg.potential and r.form == alg.form
        assert got.ideal_in_original() == i
        assert quotient_report(alg, i, got).ok


def test_corollaries_on_random_extensions():
    rng = random.Random(53)
    seen = set()
    for _ in range(40):
        ext = random_generalized_extension(rng, rng.choice([2, 3]))
        alg, n = ext.ambient, ext.arity
        got = decompose_along_ideal(alg, ext.ideal())
        gr = compute_grading(alg, ext.ideal())
        assert corollary_report(alg, gr, got).ok
        top_zero = got.psi[n - 1].is_zero() and got.psi[n].is_zero()
        assert is_subalgebra(alg, gr.h) == top_zero
        seen.add(top_zero)
    assert seen == {True, False}


def test_codimension_one_odd_forces_trivial_components():
    # odd one-dimensional h, arity 2: a nonzero psi_2 is forced to vanish
    g = hyperbolic_pair()
    h = HComponent.zero(SuperSpace(0, 1), 2)
    sp = SuperSpace(0, 4)
    ext = build_double_extension(g, h, [SuperPolynomial(sp, {(0, 1, 3): 1})])
    got = decompose_along_ideal(ext.ambient, ext.ideal())
    assert got.h.nu.is_zero() and got.psi[1].is_zero() and got.psi[2].is_zero()
    assert not got.report.assumptions or all("codimension" not in a for a in got.report.assumptions)
    even = build_double_extension(g, HComponent.zero(SuperSpace(1, 0), 2), [])
    got = decompose_along_ideal(even.ambient, even.ideal())
    assert any("codimension" in a for a in got.report.assumptions)


def test_solvable_step_examples():
    ext = decompose_solvable_step(hyperbolic_pair())
    assert not isinstance(ext, NotApplicable) and ext.report.ok
    assert ext.g.dim == 0
    sp = SuperSpace(0, 2)
    ident = NAryAlgebra(sp, EvenSkewForm.standard(sp), 2, SuperPolynomial.zero(sp))
    na = decompose_solvable_step(ident)
    assert isinstance(na, NotApplicable) and not na
    assert na.report.failures
    e1 = decompose_solvable_step(cross_product())
    assert isinstance(e1, NotApplicable) and "whole algebra" in e1.reason


def test_oscillator_solvable_pipeline():
    steps, last = decompose_solvable(oscillator())
    assert len(steps) == 1
    assert steps[0].ideal_in_original().contains_subspace(derived_ideal(oscillator()))
    # the g component is an odd plane with the identity form, which has no admissible hyperplane
    assert isinstance(last, NotApplicable)
    assert steps[0].g.dim == 2 and steps[0].g.potential.is_zero()
    steps, last = decompose_solvable(hyperbolic_pair())
    assert len(steps) == 1 and last.dim == 0


def test_pattern_on_generated_ideals():
    rng = random.Random(54)
    checked = 0
    for _ in range(40):
        ext = random_generalized_extension(rng, 2)
        alg = ext.ambient
        d = alg.dim
        i = ideal_closure(alg, Subspace.coordinate(d, [rng.randrange(d)]))
        if not 0 < i.dim < d or not alg.space.is_graded(i):
            continue
        if not i.contains_subspace(orthogonal_complement(alg.form, i)):
            continue
        got = decompose_along_ideal(alg, i)
        assert got.report.ok
        checked += 1
    assert checked >= 3


def test_even_codimension_one_can_carry_psi_2():
    """With an even one-dimensional h the psi_2 stratum survives, so the pattern is only asserted for odd h."""
    gs = SuperSpace(2, 0)
    g = NAryAlgebra(gs, EvenSkewForm.standard(gs), 2, SuperPolynomial.zero(gs))
    h = HComponent.zero(SuperSpace(1, 0), 2)
    sp = SuperSpace(4, 0)
    ext = build_double_extension(g, h, [None, SuperPolynomial(sp, {(0, 3, 3): 1}), None])
    got = decompose_along_ideal(ext.ambient, ext.ideal())
    assert got.report.ok
    assert got.psi[1] == SuperPolynomial(sp, {(0, 3, 3): 1})
    assert any("codimension" in a for a in got.report.assumptions)
