import random
from fractions import Fraction

import pytest

import oracle
from builders import random_algebra
from superdext.catalog import cross_product, oscillator, symplectic_quartic
from superdext.graded import EvenSkewForm, SuperSpace, orthogonal_complement
from superdext.linalg import Subspace, identity, unit, zeros
from superdext.nary import (
    InconsistentTable,
    _coords as coordinates,
    MultiplicationTable,
    NAryAlgebra,
    algebra_from_table,
    check_commutative,
    check_homomorphism,
    check_invariant,
    check_simplicity_witness,
    check_splitting,
    derived_ideal,
    derived_series,
    direct_sum,
    ideal_closure,
    is_ideal,
    is_solvable,
    is_subalgebra,
    is_trivial_one_dimensional,
    potential_from_table,
    product_of,
    quotient_algebra,
    quotient_table,
    restricted_table,
    table_from_potential,
)
from superdext.superpoly import SuperPolynomial, bracket_vector

ODD3 = SuperSpace(0, 3)


def vec(*xs):
    return tuple(Fraction(x) for x in xs)


def test_products_of_cross_product_algebra():
    a = cross_product()
    assert product_of(a, [unit(3, 0), unit(3, 1)]) == vec(0, 0, -1)
    assert product_of(a, [unit(3, 1), unit(3, 0)]) == vec(0, 0, 1)
    t = table_from_potential(a)
    assert t.entries == {(0, 1): vec(0, 0, -1), (0, 2): vec(0, 1, 0), (1, 2): vec(-1, 0, 0)}
    with pytest.raises(ValueError):
        product_of(a, [unit(3, 0)])


def test_ternary_symplectic_product():
    a = symplectic_quartic()
    v = a.value((0, 0, 1))
    assert v == vec(-4, 0)
    assert v == tuple(oracle.product([0, 0, 1], {(0, 0, 1, 1): 1}, a.form.matrix, 2, 2))


def test_zero_potential_is_abelian():
    sp = SuperSpace(2, 1)
    a = NAryAlgebra(sp, EvenSkewForm.standard(sp), 2, SuperPolynomial.zero(sp))
    assert table_from_potential(a).entries == {}
    assert derived_ideal(a).dim == 0
    assert is_solvable(a) == (True, 1)


def test_unary_table_is_bracket_operator():
    rng = random.Random(2)
    a = random_algebra(rng, 1, max_dim=4)
    for i in range(a.dim):
        op = bracket_vector(unit(a.dim, i), a.potential, a.form)
        expect = op.to_vector() if not op.is_zero() else (Fraction(0),) * a.dim
        assert a.value((i,)) == expect


def test_potential_from_table_examples():
    form = EvenSkewForm.standard(ODD3)
    assert potential_from_table(ODD3, form, MultiplicationTable(ODD3, 2, {})).is_zero()
    so3 = MultiplicationTable(ODD3, 2, {(0, 1): vec(0, 0, 1), (1, 2): vec(1, 0, 0), (2, 0): vec(0, 1, 0)})
    for method in ("dual", "solve"):
        mu = potential_from_table(ODD3, form, so3, method=method)
        assert mu == SuperPolynomial(ODD3, {(0, 1, 2): -1})
        back = table_from_potential(NAryAlgebra(ODD3, form, 2, mu))
        assert all(back.value(k) == so3.value(k) for k in [(0, 1), (1, 0), (1, 2), (2, 0), (0, 2)])


def test_non_invariant_table_is_rejected():
    sp = SuperSpace(2, 0)
    form = EvenSkewForm.standard(sp)
    bad = MultiplicationTable(sp, 1, {(0,): vec(1, 0)})
    for method in ("dual", "solve"):
        with pytest.raises(InconsistentTable) as err:
            potential_from_table(sp, form, bad, method=method)
        assert len(err.value.args) == 1
    with pytest.raises(InconsistentTable):
        potential_from_table(ODD3, EvenSkewForm.standard(ODD3), MultiplicationTable(ODD3, 2, {(0, 1): vec(0, 0, 1)}))


def test_check_commutative_examples():
    assert check_commutative(cross_product()).ok
    even = MultiplicationTable(SuperSpace(2, 0), 2, {(0, 1): vec(1, 0), (1, 0): vec(-1, 0)})
    rep = check_commutative(even)
    assert not rep.ok and rep.failures[0].witness is not None
    odd = MultiplicationTable(ODD3, 2, {(0, 1): vec(0, 0, 1), (1, 0): vec(0, 0, -1)})
    assert check_commutative(odd).ok


def test_check_invariant_examples():
    a = cross_product()
    assert check_invariant(a).ok
    # (e2, {e0, e1}) = -1 and (e0, {e2, e1}) carries sign (-1)^{1*1}
    assert a.form(unit(3, 2), a.value((0, 1))) == -1
    assert a.form(unit(3, 0), a.value((2, 1))) == 1
    t = table_from_potential(a)
    entries = dict(t.entries)
    entries[(0, 1)] = vec(0, 0, -2)
    rep = check_invariant(MultiplicationTable(ODD3, 2, entries), a.form)
    assert not rep.ok and rep.failures[0].witness is not None


def test_ideals_and_subalgebras_of_oscillator():
    a = oscillator()
    d = 4
    for s in (Subspace.whole(d), Subspace.zero(d)):
        assert is_ideal(a, s) and is_subalgebra(a, s)
    i = Subspace.coordinate(d, [0, 1, 3])
    assert is_ideal(a, i)
    x = Subspace.coordinate(d, [2])
    assert is_subalgebra(a, x) and not is_ideal(a, x)
    assert ideal_closure(a, Subspace.coordinate(d, [0])) == i
    assert ideal_closure(a, i) == i
    assert ideal_closure(a, Subspace.zero(d)) == Subspace.zero(d)


def test_derived_series_examples():
    e1 = cross_product()
    assert derived_ideal(e1) == Subspace.whole(3)
    assert is_solvable(e1) == (False, None)
    series = derived_series(oscillator())
    assert [s.dim for s in series] == [4, 3, 1, 0]
    assert series[1] == Subspace.coordinate(4, [0, 1, 3])
    assert series[2] == Subspace.coordinate(4, [3])
    assert is_solvable(oscillator()) == (True, 3)


def test_quotients():
    a = oscillator()
    whole = quotient_algebra(a, Subspace.whole(4))
    assert whole.algebra.potential == a.potential
    q = quotient_algebra(a, Subspace.coordinate(4, [0, 1, 3]))
    assert q.algebra.dim == 2 and q.algebra.potential.is_zero()
    with pytest.raises(ValueError):
        quotient_algebra(a, Subspace.coordinate(4, [2]))
    for j in (Subspace.coordinate(4, [3]), Subspace.coordinate(4, [0, 1, 3])):
        table, proj = quotient_table(a, j)
        assert check_homomorphism(a, table, proj)


def test_homomorphism_examples():
    a = cross_product()
    assert check_homomorphism(a, a, identity(3))
    assert check_homomorphism(a, a, zeros(3, 3))
    twice = tuple(tuple(2 * x for x in r) for r in identity(3))
    assert not check_homomorphism(a, a, twice)
    sp = SuperSpace(2, 1)
    z = NAryAlgebra(sp, EvenSkewForm.standard(sp), 2, SuperPolynomial.zero(sp))
    mixing = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    with pytest.raises(ValueError):
        check_homomorphism(z, z, mixing)


def test_direct_sums():
    a = cross_product()
    zero = NAryAlgebra(SuperSpace(0, 0), EvenSkewForm.standard(SuperSpace(0, 0)), 2,
                       SuperPolynomial.zero(SuperSpace(0, 0)))
    same, _ = direct_sum(a, zero)
    assert same.potential == a.potential and same.form == a.form
    double, layout = direct_sum(a, a)
    first = Subspace.coordinate(6, layout.indices(0))
    rep = check_splitting(double, first)
    assert rep.ok
    assert orthogonal_complement(double.form, first) == Subspace.coordinate(6, layout.indices(1))
    assert check_simplicity_witness(double, first)
    assert not check_simplicity_witness(double, Subspace.whole(6))


def test_trivial_one_dimensional():
    sp = SuperSpace(0, 1)
    t = NAryAlgebra(sp, EvenSkewForm.standard(sp), 2, SuperPolynomial.zero(sp))
    assert is_trivial_one_dimensional(t)
    assert not is_trivial_one_dimensional(cross_product())


def test_random_tables_commutative_invariant_and_round_trip():
    rng = random.Random(31)
    for k in range(40):
        a = random_algebra(rng, 1 + k % 3, max_dim=5)
        t = table_from_potential(a)
        assert check_commutative(t).ok
        assert check_invariant(t, a.form).ok
        assert potential_from_table(a.space, a.form, t) == a.potential
        if k % 4 == 0:
            assert potential_from_table(a.space, a.form, t, method="solve") == a.potential


def test_derived_series_terms_are_nested_ideals():
    rng = random.Random(32)
    for _ in range(25):
        a = random_algebra(rng, 2, max_dim=5)
        series = derived_series(a)
        for big, small in zip(series, series[1:]):
            assert big.contains_subspace(small)
            sub, basis = restricted_table(a, big)
            coords = Subspace.span(len(basis), [coordinates(basis, v) for v in small.basis])
            assert is_ideal(sub, coords)


def test_quotient_outputs_are_valid():
    rng = random.Random(33)
    done = 0
    for _ in range(60):
        a = random_algebra(rng, 2, max_dim=5)
        i = derived_ideal(a)
        if i.dim == 0 or not a.space.is_graded(i):
            continue
        perp = orthogonal_complement(a.form, i)
        if not i.contains_subspace(perp):
            continue
        q = quotient_algebra(a, i)
        assert check_commutative(q.algebra).ok and check_invariant(q.algebra).ok
        done += 1
    assert done >= 3


def test_algebra_from_table_matches_potential():
    a = cross_product()
    b = algebra_from_table(a.form, table_from_potential(a))
    assert b.potential == a.potential


def test_evaluate_agrees_with_direct_product():
    rng = random.Random(34)
    for k in range(20):
        a = random_algebra(rng, 1 + k % 3, max_dim=5)
        args = [tuple(Fraction(rng.randint(-2, 2)) for _ in range(a.dim)) for _ in range(a.arity)]
        assert a.evaluate(args) == product_of(a, args)
