"""Exact integer-coefficient polynomials underlying all height computations.

A polynomial is stored dense and ascending: ``coeffs[k]`` multiplies ``x**k``.
All arithmetic in this module is exact (Python integers); floating point
enters only downstream, in the root finder and the height sums.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache


class PolynomialSyntaxError(ValueError):
    """Raised when polynomial text does not conform to the input grammar."""


class NotSquarefreeError(ValueError):
    """Raised when an input polynomial has a repeated root."""


def _content(coeffs: tuple[int, ...]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    return g


def normalize_coefficients(raw) -> tuple[tuple[int, ...], list[str]]:
    """Divide out the content and force a positive leading coefficient.

    Returns the canonical coefficient tuple together with human-readable
    notices for every normalization actually applied.
    """
    coeffs = [int(c) for c in raw]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    if len(coeffs) == 1:
        raise ValueError("degree-0 input: a nonzero constant has no roots")
    notices = []
    g = _content(tuple(coeffs))
    if g > 1:
        coeffs = [c // g for c in coeffs]
        notices.append(f"content {g} divided out")
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
        notices.append("sign flipped to make the leading coefficient positive")
    return tuple(coeffs), notices


@dataclass(frozen=True)
class PrimitivePolynomial:
    """Primitive squarefree integer polynomial with positive leading coefficient.

    Use :meth:`from_coeffs` or :func:`parse_polynomial` rather than the raw
    constructor; they normalize and validate the invariants.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if len(c) < 2:
            raise ValueError("degree must be at least 1")
        if c[-1] <= 0:
            raise ValueError("leading coefficient must be positive")
        if _content(c) != 1:
            raise ValueError("coefficients must be primitive (content 1)")
        if len(c) > 2 and not _is_squarefree(c):
            raise NotSquarefreeError(f"{_format(c)} has a repeated root")

    @classmethod
    def from_coeffs(cls, raw) -> "PrimitivePolynomial":
        coeffs, _ = normalize_coefficients(raw)
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def derivative_coeffs(self) -> tuple[int, ...]:
        return tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1)

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return _format(self.coeffs)


def _format(coeffs: tuple[int, ...]) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
    return " ".join(parts) if parts else "0"


_TERM_RE = re.compile(r"(?P<sign>[+-]?)(?P<coef>\d+)?(?P<var>x(?:\^(?P<exp>\d+))?)?")


def _parse_terms(text: str) -> dict[int, int]:
    compact = "".join(text.split())
    if not compact:
        raise PolynomialSyntaxError("empty input")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if m is None or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected {compact[pos]!r} at position {pos}")
        sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
        if coef is None and var is None:
            raise PolynomialSyntaxError(f"dangling sign at position {pos}")
        if not first and not sign:
            raise PolynomialSyntaxError(f"missing '+' or '-' before position {pos}")
        k = 0 if var is None else (1 if exp is None else int(exp))
        if k > 100000:
            raise PolynomialSyntaxError(f"exponent {k} is beyond any supported degree")
        c = 1 if coef is None else int(coef)
        if sign == "-":
            c = -c
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return terms


def parse_polynomial(text: str) -> PrimitivePolynomial:
    """Parse ``text`` (e.g. ``"x^2 - 2"``) into a normalized polynomial."""
    poly, _ = parse_polynomial_with_notices(text)
    return poly


def parse_polynomial_with_notices(text: str) -> tuple[PrimitivePolynomial, list[str]]:
    """Like :func:`parse_polynomial`, also returning normalization notices."""
    terms = _parse_terms(text)
    top = max(terms)
    raw = [terms.get(k, 0) for k in range(top + 1)]
    coeffs, notices = normalize_coefficients(raw)
    return PrimitivePolynomial(coeffs), notices


# ---------------------------------------------------------------------------
# points on the projective line
# ---------------------------------------------------------------------------

_ZERO_POLY = (0, 1)  # the polynomial "x", whose only root is the point 0


@dataclass(frozen=True)
class AlgebraicPoint:
    """A point of the projective line: a root multiset, or the point at infinity.

    ``poly is None`` encodes infinity; the polynomial ``x`` encodes the point 0.
    """

    poly: PrimitivePolynomial | None

    @classmethod
    def finite(cls, poly: PrimitivePolynomial) -> "AlgebraicPoint":
        return cls(poly)

    @classmethod
    def zero(cls) -> "AlgebraicPoint":
        return cls(PrimitivePolynomial(_ZERO_POLY))

    @classmethod
    def infinity(cls) -> "AlgebraicPoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def is_zero(self) -> bool:
        return self.poly is not None and self.poly.coeffs == _ZERO_POLY


# ---------------------------------------------------------------------------
# exact discriminants via modular resultants
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _crt_primes() -> tuple[int, ...]:
    # 62-bit primes; enough of them to cover discriminants of desk-scale input
    import sympy

    primes = []
    p = 2**62
    while len(primes) < 400:
        p = int(sympy.nextprime(p))
        primes.append(p)
    return tuple(primes)


def _resultant_mod(f: list[int], g: list[int], p: int) -> int:
    """Resultant of f and g over the field with p elements (Euclidean chain)."""
    a = [c % p for c in f]
    b = [c % p for c in g]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    res = 1
    while True:
        if not b:
            return 0
        if len(b) == 1:
            return res * pow(b[0], len(a) - 1, p) % p
        # remainder of a by b
        da, db = len(a) - 1, len(b) - 1
        inv = pow(b[-1], -1, p)
        r = list(a)
        for k in range(da, db - 1, -1):
            c = r[k] * inv % p
            if c:
                for j in range(db + 1):
                    r[k - db + j] = (r[k - db + j] - c * b[j]) % p
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1 if r else -1
        res = res * pow(b[-1], da - max(dr, 0), p) % p
        if da % 2 == 1 and db % 2 == 1:
            res = -res % p
        a, b = b, r


def _resultant_int(f: tuple[int, ...], g: tuple[int, ...]) -> int:
    """Exact integer resultant by Chinese remaindering over word-size primes."""
    da, db = len(f) - 1, len(g) - 1
    if da < 1 or db < 1:
        raise ValueError("resultant needs two nonconstant polynomials")
    # Hadamard bound on |Res|: product of Euclidean row norms of Sylvester
    nf = math.sqrt(sum(c * c for c in f))
    ng = math.sqrt(sum(c * c for c in g))
    bound = 2 * math.ceil(nf) ** db * math.ceil(ng) ** da + 1
    modulus = 1
    residue = 0
    for p in _crt_primes():
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue  # leading coefficient degenerates mod p
        r = _resultant_mod(list(f), list(g), p)
        # combine with existing residue
        if modulus == 1:
            modulus, residue = p, r
        else:
            inv = pow(modulus, -1, p)
            t = (r - residue) * inv % p
            residue = residue + modulus * t
            modulus *= p
        if modulus > bound:
            break
    else:
        raise RuntimeError("ran out of reduction primes for resultant")
    if residue > modulus // 2:
        residue -= modulus
    return residue


def discriminant(f: PrimitivePolynomial) -> int:
    """Exact discriminant; returns 1 for degree 1 by convention."""
    d = f.degree
    if d == 1:
        return 1
    res = _resultant_int(f.coeffs, f.derivative_coeffs())
    disc, rem = divmod(res, f.leading)
    if rem != 0:
        raise AssertionError("resultant not divisible by leading coefficient")
    if d % 4 in (2, 3):  # (-1)^(d(d-1)/2)
        disc = -disc
    return disc


def _is_squarefree(coeffs: tuple[int, ...]) -> bool:
    # A degree-0 gcd with f' modulo any good prime certifies squarefreeness;
    # only then is the exact discriminant consulted.
    fp = tuple(k * c for k, c in enumerate(coeffs) if k >= 1)
    checked = 0
    for p in _crt_primes():
        if coeffs[-1] % p == 0:
            continue
        if _gcd_degree_mod(coeffs, fp, p) == 0:
            return True
        checked += 1
        if checked >= 3:
            break
    res = _resultant_int(coeffs, fp)
    return res != 0


def _gcd_degree_mod(f, g, p: int) -> int:
    a = [c % p for c in f]
    b = [c % p for c in g]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    while b:
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[-1], -1, p)
        r = list(a)
        for k in range(da, db - 1, -1):
            c = r[k] * inv % p
            if c:
                for j in range(db + 1):
                    r[k - db + j] = (r[k - db + j] - c * b[j]) % p
        del r[db:]
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    return len(a) - 1


# ---------------------------------------------------------------------------
# coefficient reversal (the point 1/alpha)
# ---------------------------------------------------------------------------


def reverse(f: PrimitivePolynomial) -> PrimitivePolynomial:
    """Minimal-style polynomial of the inverted root set.

    Rejects the polynomial ``x``: inverting the point 0 gives the point at
    infinity, which is an :class:`AlgebraicPoint`, not a polynomial.
    """
    if f.coeffs[0] == 0:
        raise ValueError("cannot reverse a polynomial with constant term 0 "
                         "(1/0 is the point at infinity)")
    coeffs, _ = normalize_coefficients(tuple(reversed(f.coeffs)))
    return PrimitivePolynomial(coeffs)


# ---------------------------------------------------------------------------
# cyclotomic recognition
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> PrimitivePolynomial:
    """The n-th cyclotomic polynomial, computed by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d).coeffs))
    return PrimitivePolynomial(tuple(num))


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials when the division is exact and den is monic."""
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(den) - 1]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                r[k + j] -= c * dj
    if any(r[: len(den) - 1]):
        raise ValueError("division is not exact")
    return q


def _divides(den: tuple[int, ...], num: list[int]) -> list[int] | None:
    """num / den when exact (den monic), else None."""
    if len(den) > len(num):
        return None
    try:
        return _exact_div(num, list(den))
    except ValueError:
        return None


def is_cyclotomic(f: PrimitivePolynomial) -> bool:
    """True exactly when every root of f is a root of unity.

    Strips cyclotomic factors one at a time.  Any n with a degree-phi(n)
    factor of f satisfies phi(n) <= d, hence n <= 2*d^2 + 6 (phi(n) >= sqrt(n/2)),
    so the candidate list below is exhaustive.
    """
    d = f.degree
    if f.leading != 1 or abs(f.coeffs[0]) != 1:
        return False  # products of cyclotomics are monic with constant term +-1
    residual = list(f.coeffs)
    remaining = d
    for n in range(1, 2 * d * d + 7):
        if remaining == 0:
            break
        if _euler_phi(n) > remaining:
            continue
        q = _divides(cyclotomic_polynomial(n).coeffs, residual)
        if q is not None:
            residual = q
            remaining = len(residual) - 1
    return residual == [1]


@lru_cache(maxsize=None)
def _euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
