"""Small named algebras used in documentation, tests and CLI fixtures."""
from __future__ import annotations

from .extension import HComponent, QuadraticLieData, build_double_extension, encode_quadratic_lie
from .graded import EvenSkewForm, SuperSpace
from .linalg import matrix
from .nary import NAryAlgebra
from .superpoly import SuperPolynomial


def cross_product() -> NAryAlgebra:
    """so(3) type: three odd generators, identity form, potential ``e0 e1 e2``."""
    sp = SuperSpace(0, 3)
    return NAryAlgebra(sp, EvenSkewForm.standard(sp), 2, SuperPolynomial.monomial(sp, (0, 1, 2)))


def oscillator() -> NAryAlgebra:
    """Four odd generators ``e1, e2, x, x*`` (indices 0..3) with potential ``x* e1 e2``."""
    return oscillator_extension().ambient


def oscillator_extension():
    gs = SuperSpace(0, 2)
    g = NAryAlgebra(gs, EvenSkewForm.standard(gs), 2, SuperPolynomial.zero(gs))
    h = HComponent.zero(SuperSpace(0, 1), 2)
    psi1 = SuperPolynomial.monomial(SuperSpace(0, 4), (0, 1, 3))
    return build_double_extension(g, h, [psi1])


def symplectic_quartic() -> NAryAlgebra:
    """Ternary algebra on a symplectic plane with potential ``e0^2 e1^2``."""
    sp = SuperSpace(2, 0)
    return NAryAlgebra(sp, EvenSkewForm.standard(sp), 3, SuperPolynomial.monomial(sp, (0, 0, 1, 1)))


def so3_lie() -> QuadraticLieData:
    return QuadraticLieData.from_brackets(
        3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (2, 0): (0, 1, 0)}, matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    )


def sl2_lie() -> QuadraticLieData:
    """Basis ``h, e, f`` with the Killing form."""
    return QuadraticLieData.from_brackets(
        3, {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}, matrix([[8, 0, 0], [0, 0, 4], [0, 4, 0]])
    )


def so3_encoded() -> NAryAlgebra:
    return encode_quadratic_lie(so3_lie())
