"""Green functions of GL_n and U_n as exact integer polynomials in q.

GL values come from the classical combinatorics: the Green polynomial for
torus class rho at unipotent class lam is

    Q^lam_rho(q) = sum_mu chi^mu(rho) * Kt_{mu,lam}(q),

where chi is the symmetric-group character (Murnaghan-Nakayama) and
Kt_{mu,lam}(q) = sum over semistandard tableaux of shape mu, content lam of
q^(n(lam) - charge).  U values are the Ennola substitution q -> -q with a
global sign per (n, rho) pinned by the degree value at u = 1; the signs are
derived by exact polynomial division and asserted, never assumed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import intpoly
from .errors import UnsupportedError


def partitions_of(n: int):
    from .tori import partitions

    return partitions(n)


def springer_dim(lam: tuple) -> int:
    """dim of the unipotent fixed-flag variety: n(lam) = sum (i-1) lam_i."""
    return sum(i * part for i, part in enumerate(lam))


# ---------------------------------------------------------------------------
# tableaux, charge, Kostka-Foulkes


def semistandard_tableaux(shape: tuple, content: tuple):
    """All SSYT of the given shape and content (entries 1..len(content))."""
    if sum(shape) != sum(content):
        raise UnsupportedError("shape and content have different sizes")
    rows = len(shape)
    letters = len(content)
    tableau = [[0] * r for r in shape]
    remaining = list(content)
    out = []

    def rec(r, c):
        if r == rows:
            out.append(tuple(tuple(row) for row in tableau))
            return
        nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
        lo = tableau[r][c - 1] if c > 0 else 1
        above = tableau[r - 1][c] + 1 if r > 0 else 1
        lo = max(lo, above)
        for v in range(lo, letters + 1):
            if remaining[v - 1] == 0:
                continue
            tableau[r][c] = v
            remaining[v - 1] -= 1
            rec(nr, nc)
            remaining[v - 1] += 1
        tableau[r][c] = 0

    rec(0, 0)
    return out


def reading_word(tableau) -> tuple:
    word = []
    for row in tableau:
        word.extend(reversed(row))
    return tuple(word)


def charge(word: tuple) -> int:
    """Lascoux-Schutzenberger charge of a word with partition content.

    Standard subwords are extracted by the cyclic right-to-left scan; the
    index of letter r+1 grows by one exactly when it sits to the left of r.
    """
    values = list(word)
    total = 0
    while values:
        present = sorted(set(values))
        assert present == list(range(1, len(present) + 1)), "content must be a partition"
        used = set()
        chosen = {}
        cursor = len(values) - 1
        for letter in range(1, len(present) + 1):
            i = cursor
            for _ in range(len(values)):
                if values[i] == letter and i not in used:
                    break
                i = (i - 1) % len(values)
            else:
                raise AssertionError("letter missing from word")
            chosen[letter] = i
            used.add(i)
            cursor = (i - 1) % len(values)
        index = 0
        for letter in range(2, len(present) + 1):
            if chosen[letter] < chosen[letter - 1]:
                index += 1
            total += index
        values = [v for i, v in enumerate(values) if i not in used]
    return total


@lru_cache(maxsize=None)
def kostka_foulkes(lam: tuple, mu: tuple):
    """K_{lam,mu}(t) via the charge statistic; integer coefficient tuple."""
    if sum(lam) != sum(mu):
        raise UnsupportedError("partitions of different sizes")
    if sum(lam) > 6:
        raise UnsupportedError("Kostka-Foulkes table generation capped at size 6")
    coeffs = {}
    for T in semistandard_tableaux(lam, mu):
        c = charge(reading_word(T))
        coeffs[c] = coeffs.get(c, 0) + 1
    if not coeffs:
        return ()
    out = [0] * (max(coeffs) + 1)
    for c, v in coeffs.items():
        out[c] = v
    return tuple(out)


def kostka_number(lam: tuple, mu: tuple) -> int:
    return len(semistandard_tableaux(lam, mu))


def cocharge_kostka(mu: tuple, lam: tuple):
    """Kt_{mu,lam}(q) = q^{n(lam)} K_{mu,lam}(1/q): cocharge generating polynomial."""
    K = kostka_foulkes(mu, lam)
    n_lam = springer_dim(lam)
    out = [0] * (n_lam + 1)
    for c, v in enumerate(K):
        if v:
            assert c <= n_lam, "charge exceeds n(lam)"
            out[n_lam - c] += v
    return intpoly.trim(out)


# ---------------------------------------------------------------------------
# symmetric group characters (Murnaghan-Nakayama via beta-sets)


@lru_cache(maxsize=None)
def sym_char(mu: tuple, rho: tuple) -> int:
    """chi^mu(rho) for partitions of the same size."""
    if sum(mu) != sum(rho):
        raise UnsupportedError("size mismatch")
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    L = max(len(mu), 1)
    beta = sorted((mu[i] if i < len(mu) else 0) + (L - 1 - i) for i in range(L))
    total = 0
    bset = set(beta)
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        leg = sum(1 for x in beta if nb < x < b)
        nbeta = sorted((bset - {b}) | {nb}, reverse=True)
        nmu = tuple(x - (L - 1 - i) for i, x in enumerate(nbeta))
        nmu = tuple(v for v in nmu if v > 0)
        total += (-1) ** leg * sym_char(nmu, rest)
    return total


# ---------------------------------------------------------------------------
# Green polynomials


@lru_cache(maxsize=None)
def green_poly_gl(n: int, rho: tuple, lam: tuple):
    """The GL_n Green polynomial Q^lam_rho as an integer polynomial in q."""
    total = ()
    for mu in partitions_of(n):
        c = sym_char(mu, rho)
        if c:
            total = intpoly.add(total, intpoly.scale(cocharge_kostka(mu, lam), c))
    return total


def degree_poly(family: str, n: int, rho: tuple):
    """eps_G eps_T |G^F|_{p'} / |T^F| as an exact integer polynomial in q."""
    num = (1,)
    for i in range(1, n + 1):
        num = intpoly.mul(num, _torus_factor(family, i))
    den = (1,)
    for part in rho:
        den = intpoly.mul(den, _torus_factor(family, part))
    quo = intpoly.to_int_poly(intpoly.div_exact(num, den))
    sigma_g = n if family == "GL" else n // 2
    sigma_t = len(rho) if family == "GL" else sum(1 for x in rho if x % 2 == 0)
    return intpoly.scale(quo, (-1) ** (sigma_g + sigma_t))


def _torus_factor(family, i):
    if family == "GL":
        return intpoly.add(intpoly.monomial(i), (-1,))
    return intpoly.add(intpoly.monomial(i), ((-1) ** (i + 1),))


@lru_cache(maxsize=None)
def ennola_sign(n: int, rho: tuple) -> int:
    """Sign s with s * Q^{(1^n)}_rho(-q) = U_n degree polynomial; must be +-1."""
    target = degree_poly("U", n, rho)
    base = intpoly.compose_neg(green_poly_gl(n, rho, (1,) * n))
    if base == target:
        return 1
    if intpoly.neg(base) == target:
        return -1
    raise AssertionError(f"Ennola anchor failed for U_{n}, rho={rho}: {base} vs {target}")


@lru_cache(maxsize=None)
def green_poly(family: str, n: int, rho: tuple, lam: tuple):
    """Integer Green polynomial for the family; U is signed Ennola of GL."""
    if family == "GL":
        return green_poly_gl(n, rho, lam)
    if family == "U":
        return intpoly.scale(intpoly.compose_neg(green_poly_gl(n, rho, lam)), ennola_sign(n, rho))
    raise UnsupportedError(f"family {family!r}")


def green_value(family: str, n: int, rho: tuple, lam: tuple, q: int) -> int:
    """Q_T^G(u) for torus class rho and unipotent class lam, exact integer."""
    rho = tuple(sorted(rho, reverse=True))
    lam = tuple(sorted(lam, reverse=True))
    if sum(rho) != n or sum(lam) != n:
        raise UnsupportedError("rho and lam must be partitions of n")
    return intpoly.evaluate(green_poly(family, n, rho, lam), q)


def green_leading_limit(family: str, n: int, rho: tuple, lam: tuple, q: int, nu_list):
    """Ratios Q^{G,nu}(u) / q^{nu d_u} along nu_list plus the stabilized limit.

    The nu_list should lie in an arithmetic progression along which the
    torus class does not refine (gap divisible by lcm of the parts);
    otherwise the sample is reported as non-stabilizing.
    """
    from .tori import TorusClass

    d_u = springer_dim(lam)
    cls = TorusClass(family, n, tuple(sorted(rho, reverse=True)))
    ratios = []
    patterns = set()
    for nu in nu_list:
        refined = cls.refine(nu)
        fam_nu = family if (family == "GL" or nu % 2 == 1) else "GL"
        patterns.add((refined.parts, fam_nu))
        val = green_value(fam_nu, n, refined.parts, lam, q**nu)
        ratios.append(Fraction(val, q ** (nu * d_u)))
    if len(patterns) != 1:
        return {"ratios": ratios, "limit": None, "stabilized": False, "reason": "class refines over the sample"}
    (parts, fam_nu), = patterns
    poly = green_poly(fam_nu, n, parts, lam)
    deg = intpoly.degree(poly)
    if deg > d_u:
        return {"ratios": ratios, "limit": None, "stabilized": False, "reason": "ratio diverges"}
    limit = Fraction(poly[-1]) if deg == d_u else Fraction(0)
    if lam == (1,) * n and parts == cls.parts and fam_nu == family:
        sigma_g = n if family == "GL" else n // 2
        expected = Fraction((-1) ** (sigma_g - cls.sigma()))
        assert limit == expected, "u = 1 leading limit disagrees with the rank-sign formula"
    return {"ratios": ratios, "limit": limit, "stabilized": True}
