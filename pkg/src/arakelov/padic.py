"""p-adic root data: Newton polygons and certified root counting over Q_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .polynomials import PrimitivePolynomial


def require_prime(p: int) -> int:
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    return p


def valuation(n: int, p: int) -> int:
    """Exponent of p in n; raises on n = 0."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class NewtonPolygonResult:
    """Root valuations of a polynomial at p, from the lower hull of (i, v_p(a_i)).

    ``slopes`` lists (valuation, multiplicity) pairs with valuation = -hull slope,
    ordered by decreasing valuation; multiplicities sum to the degree.
    """

    prime: int
    slopes: tuple[tuple[Fraction, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.slopes)

    def valuation_sum(self) -> Fraction:
        return sum((v * m for v, m in self.slopes), Fraction(0))

    def positive_part_sum(self) -> Fraction:
        """Sum over roots of max(0, -valuation); equals v_p(leading) for primitive input."""
        return sum((max(-v, 0) * m for v, m in self.slopes), Fraction(0))


def newton_polygon(f: PrimitivePolynomial, p: int) -> NewtonPolygonResult:
    """Lower convex hull of the valuation points of f at the prime p.

    Requires a nonzero constant term (strip the root 0 first); with a_0 = 0
    one root valuation would be infinite.
    """
    require_prime(p)
    if f.coeffs[0] == 0:
        raise ValueError("newton_polygon requires a nonzero constant term")
    pts = [(i, valuation(c, p)) for i, c in enumerate(f.coeffs) if c != 0]
    hull = _lower_hull(pts)
    slopes = []
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        mult = i1 - i0
        slopes.append((Fraction(-(v1 - v0), mult), mult))
    slopes.sort(key=lambda t: t[0], reverse=True)
    return NewtonPolygonResult(prime=p, slopes=tuple(slopes))


def _lower_hull(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # keep only strictly convex turns (drop points on or above the chord)
            if (x1 - x0) * (pt[1] - y0) <= (pt[0] - x0) * (y1 - y0):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


# ---------------------------------------------------------------------------
# root counting in Q_p by residue enumeration and iterative lifting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicRootCount:
    """Number of roots in Q_p together with the certification status."""

    count: int
    certified: bool
    prime: int
    precision_exponent: int

    @property
    def status(self) -> str:
        return "certified" if self.certified else "inconclusive at this precision"


def p_adic_root_count(f: PrimitivePolynomial, p: int,
                      precision_exponent: int = 40) -> PadicRootCount:
    """Count the roots of f inside Q_p.

    Residues mod p are enumerated and lifted branch by branch; a branch is
    settled either by the simple-root criterion (unique Hensel lift) or by
    exclusion.  Branching beyond ``precision_exponent`` levels leaves the
    result inconclusive (a lower bound on the count).
    """
    require_prime(p)
    if precision_exponent < 1:
        raise ValueError("precision_exponent must be positive")
    coeffs = list(f.coeffs)
    count = 0
    if coeffs[0] == 0:
        count += 1  # the root 0; squarefree input carries a single factor x
        coeffs = coeffs[1:]
    certified = True
    if len(coeffs) > 1:
        c, ok = _count_in_zp(coeffs, p, precision_exponent, 0)
        count += c
        certified &= ok
        rev = list(reversed(coeffs))
        c, ok = _count_in_branch(rev, 0, p, precision_exponent, 0)
        count += c  # roots of valuation <= -1 correspond to reversed roots in pZ_p
        certified &= ok
    return PadicRootCount(count, certified, p, precision_exponent)


def _count_in_zp(g: list[int], p: int, budget: int, depth: int) -> tuple[int, bool]:
    count, certified = 0, True
    for r in _roots_mod_p(g, p):
        c, ok = _count_in_branch(g, r, p, budget, depth)
        count += c
        certified &= ok
    return count, certified


def _count_in_branch(g: list[int], r: int, p: int, budget: int,
                     depth: int) -> tuple[int, bool]:
    """Roots of g in the disk r + pZ_p."""
    if _eval_mod(g, r, p) != 0:
        return 0, True
    if _eval_mod(_deriv(g), r, p) != 0:
        return 1, True  # simple residue root: unique lift
    if depth >= budget:
        return 0, False
    h = _shift_and_rescale(g, r, p)
    return _count_in_zp(h, p, budget, depth + 1)


def _deriv(g: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(g) if k >= 1]


def _eval_mod(g: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(g):
        acc = (acc * x + c) % p
    return acc


def _shift_and_rescale(g: list[int], r: int, p: int) -> list[int]:
    """Primitive part of g(r + p*y): zooms into the residue disk."""
    shifted = list(g)
    n = len(shifted)
    for i in range(n - 1):  # Taylor shift by r via repeated synthetic division
        for k in range(n - 2, i - 1, -1):
            shifted[k] += r * shifted[k + 1]
    scaled = [c * p**k for k, c in enumerate(shifted)]
    v = min(valuation(c, p) for c in scaled if c != 0)
    return [c // p**v for c in scaled]


# ---------------------------------------------------------------------------
# roots of a polynomial over F_p
# ---------------------------------------------------------------------------

_BRUTE_FORCE_LIMIT = 3000


def _roots_mod_p(g: list[int], p: int) -> list[int]:
    gp = [c % p for c in g]
    while gp and gp[-1] == 0:
        gp.pop()
    if not gp:
        raise ValueError("polynomial vanishes mod p; divide out the content first")
    if len(gp) == 1:
        return []
    if p <= _BRUTE_FORCE_LIMIT:
        return sorted(x for x in range(p) if _eval_mod(gp, x, p) == 0)
    return sorted(_roots_mod_p_large(gp, p))


def _roots_mod_p_large(gp: list[int], p: int) -> list[int]:
    # gcd with x^p - x isolates the split part; then equal-degree splitting
    # with deterministic shifts (x + c)^((p-1)/2) - 1 for c = 0, 1, 2, ...
    xp = _pow_mod(p, gp, p)  # x^p mod g
    while len(xp) < 2:
        xp.append(0)
    xp[1] = (xp[1] - 1) % p  # x^p - x
    while len(xp) > 1 and xp[-1] == 0:
        xp.pop()
    split = _gcd_mod(gp, xp, p)
    if len(split) == 1:
        return []
    roots: list[int] = []
    stack = [split]
    shift = 0
    while stack:
        s = stack.pop()
        if len(s) == 2:
            roots.append(-s[0] * pow(s[1], -1, p) % p)
            continue
        while True:
            base = [shift % p, 1]
            shift += 1
            t = _pow_poly_mod(base, (p - 1) // 2, s, p)
            t[0] = (t[0] - 1) % p
            d = _gcd_mod(s, t, p)
            if 0 < len(d) - 1 < len(s) - 1:
                stack.append(d)
                stack.append(_div_exact_mod(s, d, p))
                break
    return roots


def _pow_mod(e: int, mod: list[int], p: int) -> list[int]:
    """x^e reduced mod the polynomial ``mod`` over F_p."""
    return _pow_poly_mod([0, 1], e, mod, p)


def _pow_poly_mod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    b = _rem_mod(base, mod, p)
    while e:
        if e & 1:
            result = _rem_mod(_mul_mod(result, b, p), mod, p)
        b = _rem_mod(_mul_mod(b, b, p), mod, p)
        e >>= 1
    return result


def _mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _rem_mod(a: list[int], b: list[int], p: int) -> list[int]:
    r = [c % p for c in a]
    inv = pow(b[-1], -1, p)
    while len(r) >= len(b):
        if r[-1] == 0:
            r.pop()
            continue
        c = r[-1] * inv % p
        off = len(r) - len(b)
        for j in range(len(b)):
            r[off + j] = (r[off + j] - c * b[j]) % p
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r if r else [0]


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b != [0] and any(b):
        a, b = b, _rem_mod(a, b, p)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _div_exact_mod(a: list[int], b: list[int], p: int) -> list[int]:
    q = [0] * (len(a) - len(b) + 1)
    r = [c % p for c in a]
    inv = pow(b[-1], -1, p)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j in range(len(b)):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return q
