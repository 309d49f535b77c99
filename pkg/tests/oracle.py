"""Independent reference implementation of S*(a) and its bracket.

Polynomials are dicts from words (tuples of generator indices, any order) to
Fractions.  Signs come from an explicit bubble sort and the bracket from the
two Leibniz recursions, so nothing here shares code with the package.
"""
from __future__ import annotations

from fractions import Fraction


def parity(i: int, de: int) -> int:
    return 0 if i < de else 1


def sort_word(word, de: int):
    """``(sorted_word, sign)`` or ``None`` if an odd generator repeats."""
    w = list(word)
    sign = 1
    for end in range(len(w) - 1, 0, -1):
        for k in range(end):
            if w[k] > w[k + 1]:
                if parity(w[k], de) and parity(w[k + 1], de):
                    sign = -sign
                w[k], w[k + 1] = w[k + 1], w[k]
    for a, b in zip(w, w[1:]):
        if a == b and parity(a, de):
            return None
    return tuple(w), sign


def canon(p: dict, de: int) -> dict:
    out: dict = {}
    for w, c in p.items():
        s = sort_word(w, de)
        if s is None:
            continue
        key, sign = s
        out[key] = out.get(key, Fraction(0)) + sign * c
    return {k: v for k, v in out.items() if v != 0}


def word_parity(w, de: int) -> int:
    return sum(parity(i, de) for i in w) % 2


def gen_bracket_word(x: int, word, form, de: int) -> dict:
    """``[x, w1 ... wk]`` by Leibniz in the second slot."""
    out: dict = {}
    px = parity(x, de)
    passed = 0
    for j, y in enumerate(word):
        c = form[x][y]
        if c != 0:
            sign = -1 if (px * passed) % 2 else 1
            rest = tuple(word[:j]) + tuple(word[j + 1:])
            out[rest] = out.get(rest, Fraction(0)) + sign * Fraction(c)
        passed += parity(y, de)
    return out


def word_bracket(u, v, form, de: int) -> dict:
    """``[u, v]`` for words via ``[v1 . rest, w] = v1 . [rest, w] + (-1)^{|rest||w|} [v1, w] . rest``."""
    if not u or not v:
        return {}
    if len(u) == 1:
        return gen_bracket_word(u[0], v, form, de)
    v1, rest = u[0], tuple(u[1:])
    out: dict = {}
    for w, c in word_bracket(rest, v, form, de).items():
        key = (v1,) + w
        out[key] = out.get(key, Fraction(0)) + c
    sign = -1 if (word_parity(rest, de) * word_parity(v, de)) % 2 else 1
    for w, c in gen_bracket_word(v1, v, form, de).items():
        key = w + rest
        out[key] = out.get(key, Fraction(0)) + sign * c
    return out


def bracket(p: dict, q: dict, form, de: int) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            for w, c in word_bracket(u, v, form, de).items():
                out[w] = out.get(w, Fraction(0)) + a * b * c
    return canon(out, de)


def product(args, lam: dict, form, de: int, d: int):
    """``[a1, [..., [an, lam]]]`` for basis indices, as a coordinate vector."""
    p = dict(lam)
    for i in reversed(args):
        p = bracket({(i,): Fraction(1)}, p, form, de)
    vec = [Fraction(0)] * d
    for w, c in p.items():
        assert len(w) == 1
        vec[w[0]] += c
    return vec
