"""Integer-coefficient polynomial toolkit.

Polynomials are tuples of Python ints, ascending powers, trailing entry
nonzero; ``()`` is the zero polynomial.  Everything here is exact integer
arithmetic: the root isolator runs Sturm chains on these, and the pure-Python
enumeration kernel runs fraction-free elimination on them.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

IntPoly = tuple[int, ...]

PZ_ZERO: IntPoly = ()
PZ_ONE: IntPoly = (1,)

# Trial-division bound for divisor enumeration in rational-root search.
_FACTOR_LIMIT = 1_000_000


def pz_strip(coeffs: Sequence[int]) -> IntPoly:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def pz_add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return pz_strip(out)


def pz_neg(a: IntPoly) -> IntPoly:
    return tuple(-c for c in a)


def pz_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return pz_strip(out)


def pz_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return PZ_ZERO
    if len(a) == 1:
        ca = a[0]
        return tuple(ca * c for c in b)
    if len(b) == 1:
        cb = b[0]
        return tuple(cb * c for c in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return pz_strip(out)


def pz_scale(a: IntPoly, k: int) -> IntPoly:
    if k == 0:
        return PZ_ZERO
    return tuple(c * k for c in a)


def pz_divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact division in Z[x]; raises ArithmeticError when not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return PZ_ZERO
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    dq = len(a) - 1 - db
    if dq < 0:
        raise ArithmeticError("inexact polynomial division")
    quot = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + db]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        quot[k] = q
        if q:
            for j, bc in enumerate(b):
                rem[k + j] -= q * bc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return pz_strip(quot)


def pz_content(a: IntPoly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def pz_primitive(a: IntPoly) -> IntPoly:
    """Divide out the (positive) content; sign of the leading coeff kept."""
    if not a:
        return a
    g = pz_content(a)
    if g <= 1:
        return a
    return tuple(c // g for c in a)


def pz_prem_pos(a: IntPoly, b: IntPoly) -> IntPoly:
    """Remainder of a by b, scaled only by positive integers.

    Positivity of the scale factors is what makes the result usable in a
    (generalized) Sturm chain.
    """
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    alead = abs(lead)
    sgn = 1 if lead > 0 else -1
    while len(rem) - 1 >= db and any(rem):
        rem = pz_strip(rem)
        if len(rem) - 1 < db:
            break
        cr = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * alead for c in rem]
        for j, bc in enumerate(b):
            rem[shift + j] -= sgn * cr * bc
        rem = list(pz_strip(rem))
    return pz_strip(rem)


def pz_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Gcd in Z[x] (content included), positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        ca, cb = pz_content(a), pz_content(b)
        cont = gcd(ca, cb)
        x, y = pz_primitive(a), pz_primitive(b)
        while y:
            x, y = y, pz_primitive(pz_prem_pos(x, y))
        g = pz_scale(pz_primitive(x), cont)
    if g and g[-1] < 0:
        g = pz_neg(g)
    return g


def pz_lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return PZ_ZERO
    out = pz_divexact(pz_mul(a, b), pz_gcd(a, b))
    if out[-1] < 0:
        out = pz_neg(out)
    return out


def pz_derivative(a: IntPoly) -> IntPoly:
    return pz_strip([i * c for i, c in enumerate(a)][1:])


def pz_squarefree(a: IntPoly) -> IntPoly:
    """Square-free part (primitive).  Requires a nonzero, deg >= 1."""
    g = pz_gcd(a, pz_derivative(a))
    if len(g) == 1:
        return pz_primitive(a)
    return pz_primitive(pz_divexact(a, g))


def pz_eval_frac(a: IntPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pz_sign_at(a: IntPoly, x: Fraction) -> int:
    """Sign of a(x) for rational x, computed in pure integer arithmetic."""
    if not a:
        return 0
    u, w = x.numerator, x.denominator
    # homogenized Horner: sign of sum c_i * u^i * w^(n-i)
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * u + c * w
        w *= x.denominator
    return (acc > 0) - (acc < 0)


def pz_from_fractions(coeffs: Iterable[Fraction]) -> IntPoly:
    """Clear denominators by the positive lcm (sign-preserving)."""
    coeffs = [Fraction(c) for c in coeffs]
    mult = 1
    for c in coeffs:
        mult = mult * c.denominator // gcd(mult, c.denominator)
    return pz_strip([int(c * mult) for c in coeffs])


def _divisors(n: int) -> list[int]:
    """Positive divisors of |n|; may be incomplete past the trial limit."""
    n = abs(n)
    if n == 0:
        return []
    small: list[int] = []
    large: list[int] = []
    d = 1
    limit = min(isqrt(n), _FACTOR_LIMIT)
    while d <= limit:
        if n % d == 0:
            small.append(d)
            large.append(n // d)
        d += 1
    if limit < isqrt(n):
        # Incomplete enumeration: callers tolerate missed rational roots.
        if n not in large and n not in small:
            large.append(n)
    out = small + large[::-1]
    return sorted(set(out))


def pz_rational_roots(a: IntPoly) -> tuple[list[Fraction], IntPoly]:
    """Rational roots of a square-free polynomial, plus the deflated cofactor.

    Best effort for astronomically large lead/constant coefficients (divisor
    enumeration is capped); the isolation loop catches any missed root.
    """
    roots: list[Fraction] = []
    q = list(a)
    while q and q[0] == 0:
        roots.append(Fraction(0))
        q = q[1:]
        break  # square-free: the root 0 is simple
    q = pz_strip(q)
    if len(q) <= 1:
        return sorted(roots), q
    candidates: set[Fraction] = set()
    for u in _divisors(q[0]):
        for w in _divisors(q[-1]):
            candidates.add(Fraction(u, w))
            candidates.add(Fraction(-u, w))
    for r in sorted(candidates):
        if len(q) <= 1:
            break
        if pz_sign_at(q, r) == 0:
            roots.append(r)
            q = pz_deflate(q, r)
    return sorted(roots), q


def pz_deflate(a: IntPoly, r: Fraction) -> IntPoly:
    """Divide by (den*x - num) for a known rational root r = num/den."""
    u, w = r.numerator, r.denominator
    # synthetic division by (w*x - u): a(x) = (w*x - u) * q(x)
    n = len(a) - 1
    out = [0] * n
    carry = a[-1]
    for i in range(n - 1, -1, -1):
        if carry % w:
            raise ArithmeticError("not a root")
        out[i] = carry // w
        carry = a[i] + out[i] * u
    if carry != 0:
        raise ArithmeticError("not a root")
    return pz_strip(out)
