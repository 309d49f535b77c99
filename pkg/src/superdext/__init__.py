"""Exact computations with commutative invariant n-ary superalgebras.

An algebra is a super vector space with an even non-degenerate skew form and
a potential in S^{n+1}; the product is the derived bracket of the potential.
"""

__version__ = "0.1.0"
