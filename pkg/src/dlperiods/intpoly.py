"""Dense univariate polynomials with exact integer/rational coefficients.

Coefficient lists are tuples starting at the constant term. The zero
polynomial is the empty tuple. Used for Green polynomials in q, Kostka
polynomials in t and cyclotomic polynomials.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return trim(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))


def neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def monomial(deg: int, c=1) -> Poly:
    return trim((0,) * deg + (c,))


def degree(a: Poly) -> int:
    return len(a) - 1


def evaluate(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def divmod_exact(a: Poly, b: Poly):
    """Polynomial division; exact over ZZ only when b is monic, else uses Fractions."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    db, lead = len(b) - 1, b[-1]
    while len(trim(rem)) - 1 >= db and trim(rem):
        rem = list(trim(rem))
        shift = len(rem) - 1 - db
        c = rem[-1] / lead if lead != 1 else rem[-1]
        if lead != 1 and not isinstance(c, Fraction):
            c = Fraction(rem[-1], lead)
        quo[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
    return trim(quo), trim(rem)


def div_exact(a: Poly, b: Poly) -> Poly:
    q, r = divmod_exact(a, b)
    if r:
        raise ValueError(f"inexact polynomial division, remainder {r}")
    return q


def to_int_poly(a: Poly) -> Poly:
    out = []
    for c in a:
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        else:
            out.append(c)
    return trim(out)


def compose_neg(a: Poly) -> Poly:
    """p(q) -> p(-q)."""
    return trim(tuple(c if i % 2 == 0 else -c for i, c in enumerate(a)))


def pretty(a: Poly, var: str = "q") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            x = var if i == 1 else f"{var}^{i}"
            if c == 1:
                term = x
            elif c == -1:
                term = f"-{x}"
            else:
                term = f"{c}*{x}"
        parts.append(term)
    s = " + ".join(parts).replace("+ -", "- ")
    return s
