"""The super-symmetric algebra S*(a) and its Poisson bracket.

A monomial is an ascending tuple of basis indices. Even indices may repeat,
odd ones may not (an odd generator squares to zero). Every polynomial keeps
its monomials in this canonical form, so equality is dictionary equality.

The bracket extends the form on generators,

    [x, y] = (x, y)
    [v, w1 w2] = [v, w1] w2 + (-1)^{|v||w1|} w1 [v, w2]
    [v, w] = -(-1)^{|v||w|} [w, v]

and is evaluated by the closed formula it implies: pair one factor of the
left monomial (moved to its right end) with one factor of the right
monomial (moved to its left end), multiply by the form entry, and
multiply the leftovers.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Mapping, Sequence

from .graded import EvenSkewForm, SuperSpace
from .linalg import ZERO, Matrix, Vector, is_invertible

Monomial = tuple[int, ...]


class SpaceMismatch(ValueError):
    pass


def normalize_monomial(raw: Sequence[int], space: SuperSpace) -> tuple[Monomial, int] | None:
    """Sort a product of generators.

    Returns ``(monomial, sign)`` or ``None`` when an odd generator repeats.
    The sign counts transpositions of odd pairs only.
    """
    d, de = space.dim, space.dim_even
    for i in raw:
        if not 0 <= i < d:
            raise IndexError(f"basis index {i} out of range for dimension {d}")
    odd = [i for i in raw if i >= de]
    if len(set(odd)) != len(odd):
        return None
    inversions = sum(1 for a in range(len(odd)) for b in range(a + 1, len(odd)) if odd[a] > odd[b])
    return tuple(sorted(raw)), (-1 if inversions % 2 else 1)


def _merge(p: Monomial, q: Monomial, de: int) -> tuple[Monomial, int] | None:
    """Normalize the concatenation of two canonical monomials."""
    if not p:
        return q, 1
    if not q:
        return p, 1
    po = [i for i in p if i >= de]
    qo = [i for i in q if i >= de]
    sign = 1
    if po and qo:
        if set(po) & set(qo):
            return None
        # each odd factor of q moves left past the larger odd factors of p
        k = 0
        for b in qo:
            k += sum(1 for a in po if a > b)
        if k % 2:
            sign = -1
    return tuple(sorted(p + q)), sign


def _odd_count(m: Monomial, de: int) -> int:
    return sum(1 for i in m if i >= de)


class SuperPolynomial:
    """Element of S*(a) as a map from canonical monomials to nonzero rationals."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SuperSpace, terms: Mapping[Sequence[int], object] | None = None):
        self.space = space
        clean: dict[Monomial, Fraction] = {}
        for raw, c in (terms or {}).items():
            c = Fraction(c) if not isinstance(c, Fraction) else c
            if c == 0:
                continue
            norm = normalize_monomial(tuple(raw), space)
            if norm is None:
                continue
            mono, sign = norm
            _accumulate(clean, mono, sign * c)
        self.terms = clean

    @classmethod
    def _raw(cls, space: SuperSpace, terms: dict[Monomial, Fraction]) -> "SuperPolynomial":
        p = cls.__new__(cls)
        p.space = space
        p.terms = terms
        return p

    @classmethod
    def zero(cls, space: SuperSpace) -> "SuperPolynomial":
        return cls._raw(space, {})

    @classmethod
    def constant(cls, space: SuperSpace, c=1) -> "SuperPolynomial":
        return cls(space, {(): c})

    @classmethod
    def generator(cls, space: SuperSpace, i: int) -> "SuperPolynomial":
        return cls(space, {(i,): 1})

    @classmethod
    def monomial(cls, space: SuperSpace, indices: Sequence[int], c=1) -> "SuperPolynomial":
        return cls(space, {tuple(indices): c})

    @classmethod
    def from_vector(cls, space: SuperSpace, v: Sequence) -> "SuperPolynomial":
        return cls(space, {(i,): c for i, c in enumerate(v) if c != 0})

    def to_vector(self) -> Vector:
        """Coordinates of a polynomial of degree at most one (degree-0 part must vanish)."""
        out = [ZERO] * self.space.dim
        for m, c in self.terms.items():
            if len(m) != 1:
                raise ValueError(f"term {m} is not of degree 1")
            out[m[0]] = c
        return tuple(out)

    # -- queries ---------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        norm = normalize_monomial(tuple(mono), self.space)
        if norm is None:
            return ZERO
        m, s = norm
        return s * self.terms.get(m, ZERO)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds <= {degree}

    def parity(self) -> int | None:
        """Parity of a parity-homogeneous polynomial; ``None`` if mixed, 0 for zero."""
        de = self.space.dim_even
        ps = {_odd_count(m, de) % 2 for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def component(self, degree: int) -> "SuperPolynomial":
        return SuperPolynomial._raw(self.space, {m: c for m, c in self.terms.items() if len(m) == degree})

    def parity_component(self, parity: int) -> "SuperPolynomial":
        de = self.space.dim_even
        return SuperPolynomial._raw(
            self.space, {m: c for m, c in self.terms.items() if _odd_count(m, de) % 2 == parity}
        )

    def filter(self, keep) -> "SuperPolynomial":
        return SuperPolynomial._raw(self.space, {m: c for m, c in self.terms.items() if keep(m)})

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "SuperPolynomial") -> None:
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return SuperPolynomial._raw(self.space, out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial._raw(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scale(self, c) -> "SuperPolynomial":
        c = Fraction(c)
        if c == 0:
            return SuperPolynomial.zero(self.space)
        return SuperPolynomial._raw(self.space, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "SuperPolynomial":
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self:
            name = "*".join(f"e{i}" for i in m) or "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts)


def _accumulate(terms: dict[Monomial, Fraction], mono: Monomial, c: Fraction) -> None:
    v = terms.get(mono, ZERO) + c
    if v == 0:
        terms.pop(mono, None)
    else:
        terms[mono] = v


def multiply(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    p._check(q)
    de = p.space.dim_even
    out: dict[Monomial, Fraction] = {}
    for mp, cp in p.terms.items():
        for mq, cq in q.terms.items():
            merged = _merge(mp, mq, de)
            if merged is not None:
                mono, s = merged
                _accumulate(out, mono, s * cp * cq)
    return SuperPolynomial._raw(p.space, out)


def _left_factors(m: Monomial, de: int) -> list[tuple[int, int, Monomial]]:
    """``m = sign * x * rest`` for each position of ``m``: (x, sign, rest)."""
    out = []
    odd_before = 0
    for t, x in enumerate(m):
        xo = x >= de
        sign = -1 if (xo and odd_before % 2) else 1
        out.append((x, sign, m[:t] + m[t + 1 :]))
        if xo:
            odd_before += 1
    return out


def _right_factors(m: Monomial, de: int) -> list[tuple[int, int, Monomial]]:
    """``m = sign * rest * x`` for each position of ``m``: (x, sign, rest)."""
    out = []
    odd_after = _odd_count(m, de)
    for t, x in enumerate(m):
        xo = x >= de
        if xo:
            odd_after -= 1
        sign = -1 if (xo and odd_after % 2) else 1
        out.append((x, sign, m[:t] + m[t + 1 :]))
    return out


def _check_form(p: SuperPolynomial, form: EvenSkewForm) -> None:
    if form.space != p.space:
        raise SpaceMismatch("form and polynomial live on different spaces")


def poisson_bracket(p: SuperPolynomial, q: SuperPolynomial, form: EvenSkewForm) -> SuperPolynomial:
    p._check(q)
    _check_form(p, form)
    de = p.space.dim_even
    w = form.matrix
    out: dict[Monomial, Fraction] = {}
    q_left = {mq: _left_factors(mq, de) for mq in q.terms}
    for mp, cp in p.terms.items():
        for x, sx, prest in _right_factors(mp, de):
            row = w[x]
            for mq, cq in q.terms.items():
                for y, sy, qrest in q_left[mq]:
                    f = row[y]
                    if f == 0:
                        continue
                    merged = _merge(prest, qrest, de)
                    if merged is None:
                        continue
                    mono, s = merged
                    _accumulate(out, mono, s * sx * sy * f * cp * cq)
    return SuperPolynomial._raw(p.space, out)


def left_derivative(p: SuperPolynomial, k: int) -> SuperPolynomial:
    """Derivative along the generator ``k`` acting from the left."""
    de = p.space.dim_even
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        if k not in m:
            continue
        for x, s, rest in _left_factors(m, de):
            if x == k:
                _accumulate(out, rest, s * c)
    return SuperPolynomial._raw(p.space, out)


def bracket_vector(v: Sequence[Fraction], p: SuperPolynomial, form: EvenSkewForm) -> SuperPolynomial:
    """``[v, p]`` for a vector ``v`` in coordinates; ``[e_i, .] = sum_k (e_i, e_k) d_k``."""
    d = p.space.dim
    coeff = [ZERO] * d
    for i, vi in enumerate(v):
        if vi != 0:
            row = form.matrix[i]
            for k in range(d):
                if row[k] != 0:
                    coeff[k] += vi * row[k]
    out = SuperPolynomial.zero(p.space)
    for k, c in enumerate(coeff):
        if c != 0:
            out = out + left_derivative(p, k).scale(c)
    return out


def nested_bracket(args: Sequence, p: SuperPolynomial, form: EvenSkewForm) -> SuperPolynomial:
    """``[a1, [a2, ... [an, p] ...]]`` for degree-one arguments.

    Arguments may be SuperPolynomials of degree one or coordinate vectors.
    """
    _check_form(p, form)
    out = p
    for a in reversed(list(args)):
        if isinstance(a, SuperPolynomial):
            if not a.is_homogeneous(1):
                raise ValueError("nested_bracket arguments must have degree 1")
            a = a.to_vector()
        out = bracket_vector(a, out, form)
        if out.is_zero():
            break
    return out


def map_generators(p: SuperPolynomial, t: Matrix, check: bool = True) -> SuperPolynomial:
    """Substitute ``e_i -> sum_k t[k][i] e_k`` (column ``i`` of ``t``) and renormalize."""
    sp = p.space
    d = sp.dim
    if check:
        if len(t) != d or any(len(r) != d for r in t):
            raise ValueError("map has the wrong size")
        if not sp.is_even_map(t):
            raise ValueError("map mixes parities")
        if not is_invertible(t):
            raise ValueError("map is singular")
    images = [SuperPolynomial.from_vector(sp, [t[k][i] for k in range(d)]) for i in range(d)]
    cache: dict[Monomial, SuperPolynomial] = {(): SuperPolynomial.constant(sp)}

    def image(m: Monomial) -> SuperPolynomial:
        if m not in cache:
            cache[m] = multiply(image(m[:-1]), images[m[-1]])
        return cache[m]

    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for mono, v in image(m).terms.items():
            _accumulate(out, mono, c * v)
    return SuperPolynomial._raw(sp, out)


def embed(p: SuperPolynomial, target: SuperSpace, index_map: Sequence[int]) -> SuperPolynomial:
    """Relabel generator ``i`` of ``p`` as generator ``index_map[i]`` of ``target``."""
    for i in range(p.space.dim):
        if p.space.parity(i) != target.parity(index_map[i]):
            raise ValueError("embedding does not preserve parity")
    return SuperPolynomial(target, {tuple(index_map[i] for i in m): c for m, c in p.terms.items()})


def restrict(p: SuperPolynomial, target: SuperSpace, index_map: Sequence[int]) -> SuperPolynomial:
    """Inverse of :func:`embed`; every generator of ``p`` must lie in the image of ``index_map``."""
    back = {g: i for i, g in enumerate(index_map)}
    terms = {}
    for m, c in p.terms.items():
        if any(i not in back for i in m):
            raise ValueError(f"monomial {m} leaves the subspace")
        terms[tuple(back[i] for i in m)] = c
    return SuperPolynomial(target, terms)


@lru_cache(maxsize=None)
def monomial_basis(space: SuperSpace, degree: int) -> tuple[Monomial, ...]:
    """All canonical monomials of the given degree, in lexicographic order."""
    de = space.dim_even
    return tuple(
        m
        for m in combinations_with_replacement(range(space.dim), degree)
        if len({i for i in m if i >= de}) == _odd_count(m, de)
    )


def canonical_tuples(space: SuperSpace, n: int) -> tuple[Monomial, ...]:
    """Non-decreasing index tuples without repeated odd indices (same set as monomials)."""
    return monomial_basis(space, n)


def stratum_counts(m: Monomial, block_of: Sequence[int], nblocks: int) -> tuple[int, ...]:
    counts = [0] * nblocks
    for i in m:
        counts[block_of[i]] += 1
    return tuple(counts)


def random_polynomial(space: SuperSpace, degree: int, rng, nterms: int = 3, coeff_range: int = 3) -> SuperPolynomial:
    """Random homogeneous polynomial with small nonzero integer coefficients."""
    basis = monomial_basis(space, degree)
    if not basis:
        return SuperPolynomial.zero(space)
    picks = [basis[rng.randrange(len(basis))] for _ in range(nterms)]
    terms: dict = {}
    for m in picks:
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        terms[m] = terms.get(m, 0) + c
    return SuperPolynomial(space, terms)
