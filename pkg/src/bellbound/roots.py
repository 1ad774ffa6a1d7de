"""Exact real-root isolation and sign analysis for parameter polynomials.

Roots are isolated by square-free reduction followed by Sturm-chain
bisection; rational roots are split off exactly beforehand, so every
irrational root lives strictly inside its bracket and brackets refine by
plain bisection with rational midpoints.  A ``Breakpoint`` -- either an exact
``Fraction`` or a ``RootBracket`` -- is the ordered scalar the optimizer uses
for interval endpoints, and all comparisons here are exact (brackets are
refined on demand; equality of two brackets is decided through a gcd).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence, Union

from . import _intpoly as iz
from ._intpoly import IntPoly
from .algebra import ParamPoly, ParamRat
from .errors import (PoleAtPoint, PoleInsideInterval, SignChangesInside,
                     ZeroPolynomial)


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------


def _sturm_chain(p: IntPoly) -> list[IntPoly]:
    chain = [p, iz.pz_derivative(p)]
    while chain[-1]:
        r = iz.pz_prem_pos(chain[-2], chain[-1])
        if not r:
            break
        chain.append(iz.pz_neg(iz.pz_primitive(r)))
    return [c for c in chain if c]


def _variations(chain: Sequence[IntPoly], x: Fraction) -> int:
    signs = [s for s in (iz.pz_sign_at(c, x) for c in chain) if s]
    count = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            count += 1
    return count


def _count_roots(chain: Sequence[IntPoly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in (lo, hi] for a square-free chain head."""
    if lo >= hi:
        return 0
    return _variations(chain, lo) - _variations(chain, hi)


# ---------------------------------------------------------------------------
# Root brackets and breakpoints
# ---------------------------------------------------------------------------


class RootBracket:
    """An isolating interval [lo, hi] holding exactly one real root.

    ``poly`` is the square-free part of the isolated polynomial; when the
    root is rational, ``exact`` is set and lo == hi == exact.  Refinement
    narrows [lo, hi] by bisection and never loses the root.
    """

    __slots__ = ("poly", "lo", "hi", "exact", "_ipoly", "_chain")

    def __init__(self, poly: ParamPoly, ipoly: IntPoly,
                 lo: Fraction, hi: Fraction, exact: Fraction | None = None):
        self.poly = poly
        self._ipoly = ipoly
        self._chain: list[IntPoly] | None = None
        self.lo = lo
        self.hi = hi
        self.exact = exact

    @property
    def chain(self) -> list[IntPoly]:
        if self._chain is None:
            self._chain = _sturm_chain(self._ipoly)
        return self._chain

    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self) -> None:
        """One bisection step; detects an exactly-rational midpoint root."""
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        s = iz.pz_sign_at(self._ipoly, mid)
        if s == 0:
            self.exact = mid
            self.lo = self.hi = mid
            return
        if iz.pz_sign_at(self._ipoly, self.lo) * s < 0:
            self.hi = mid
        else:
            self.lo = mid

    def refine_to(self, width: Fraction) -> None:
        while self.exact is None and self.hi - self.lo > width:
            self.refine()

    def midpoint(self) -> Fraction:
        if self.exact is not None:
            return self.exact
        return (self.lo + self.hi) / 2

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"RootBracket(exact={self.exact})"
        return f"RootBracket([{self.lo}, {self.hi}] of {self.poly})"


Breakpoint = Union[Fraction, RootBracket]


def bp_bounds(bp: Breakpoint) -> tuple[Fraction, Fraction]:
    if isinstance(bp, RootBracket):
        return bp.lo, bp.hi
    return bp, bp


def bp_exact(bp: Breakpoint) -> Fraction | None:
    if isinstance(bp, RootBracket):
        return bp.exact
    return bp


def _bracket_vs_fraction(b: RootBracket, f: Fraction) -> int:
    if b.exact is not None:
        v = b.exact
        return (v > f) - (v < f)
    if b.lo <= f <= b.hi and iz.pz_sign_at(b._ipoly, f) == 0:
        b.exact = f
        b.lo = b.hi = f
        return 0
    while b.lo <= f <= b.hi:
        b.refine()
        if b.exact is not None:
            return _bracket_vs_fraction(b, f)
    return -1 if b.hi < f else 1


def bp_cmp(a: Breakpoint, b: Breakpoint) -> int:
    """Exact three-way comparison of breakpoints; refines brackets as needed."""
    if a is b:
        return 0
    ea, eb = bp_exact(a), bp_exact(b)
    if ea is not None and eb is not None:
        return (ea > eb) - (ea < eb)
    if ea is not None:
        assert isinstance(b, RootBracket)
        return -_bracket_vs_fraction(b, ea)
    if eb is not None:
        assert isinstance(a, RootBracket)
        return _bracket_vs_fraction(a, eb)
    assert isinstance(a, RootBracket) and isinstance(b, RootBracket)
    g = iz.pz_gcd(a._ipoly, b._ipoly)
    gchain = _sturm_chain(g) if len(g) > 1 else None
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if gchain is not None:
            olo, ohi = max(a.lo, b.lo), min(a.hi, b.hi)
            if iz.pz_sign_at(g, olo) == 0 or _count_roots(gchain, olo, ohi) > 0:
                return 0
            gchain = None  # no common root: pure refinement from here on
        a.refine()
        b.refine()
        if a.exact is not None or b.exact is not None:
            return bp_cmp(a, b)


def bp_eq(a: Breakpoint, b: Breakpoint) -> bool:
    return bp_cmp(a, b) == 0


def rational_between(a: Breakpoint, b: Breakpoint) -> Fraction:
    """An exact rational strictly between two breakpoints (requires a < b)."""
    while True:
        ea, eb = bp_exact(a), bp_exact(b)
        ua = a.hi if ea is None else ea  # upper bound on a's value
        lb = b.lo if eb is None else eb  # lower bound on b's value
        if ua < lb:
            return (ua + lb) / 2
        if ea is not None and eb is not None:
            raise ValueError("breakpoints are not strictly ordered")
        if isinstance(a, RootBracket) and a.exact is None:
            a.refine()
        if isinstance(b, RootBracket) and b.exact is None:
            b.refine()


def bp_approx(bp: Breakpoint, tol: Fraction = Fraction(1, 10 ** 15)) -> Fraction:
    if isinstance(bp, RootBracket):
        bp.refine_to(tol)
        return bp.midpoint()
    return bp


def bp_decimal(bp: Breakpoint, digits: int = 15) -> str:
    """Decimal rendering with the given number of significant digits."""
    from decimal import Decimal, localcontext

    v = bp_approx(bp, Fraction(1, 10 ** (digits + 3)))
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(v.numerator) / Decimal(v.denominator)
    return str(d)


def sorted_breakpoints(bps: Iterable[Breakpoint]) -> list[Breakpoint]:
    """Sort and deduplicate, preferring exact representations."""
    out: list[Breakpoint] = []
    for bp in sorted(bps, key=cmp_to_key(bp_cmp)):
        if out and bp_eq(out[-1], bp):
            if bp_exact(out[-1]) is None and bp_exact(bp) is not None:
                out[-1] = bp
            continue
        out.append(bp)
    return out


class ParamInterval:
    """Closed parameter interval with breakpoint endpoints (lo <= hi)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Breakpoint, hi: Breakpoint):
        if bp_cmp(lo, hi) > 0:
            raise ValueError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def of(lo, hi) -> "ParamInterval":
        return ParamInterval(Fraction(lo), Fraction(hi))

    def is_point(self) -> bool:
        return bp_cmp(self.lo, self.hi) == 0

    def contains(self, bp: Breakpoint) -> bool:
        return bp_cmp(self.lo, bp) <= 0 and bp_cmp(bp, self.hi) <= 0

    def contains_interval(self, other: "ParamInterval") -> bool:
        return (bp_cmp(self.lo, other.lo) <= 0
                and bp_cmp(other.hi, self.hi) <= 0)

    def __repr__(self) -> str:
        return f"ParamInterval({self.lo!r}, {self.hi!r})"


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------


def _isolate_squarefree(q: IntPoly, lo: Fraction, hi: Fraction,
                        sf_param: ParamPoly) -> list[RootBracket]:
    """Isolate roots of a square-free q with q(lo) != 0 != q(hi)."""
    out: list[RootBracket] = []
    chain = _sturm_chain(q)
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _count_roots(chain, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(RootBracket(sf_param, q, a, b))
            continue
        m = (a + b) / 2
        if iz.pz_sign_at(q, m) == 0:
            # rational root missed by the divisor search: deflate and restart
            out.append(RootBracket(sf_param, q, m, m, exact=m))
            q2 = iz.pz_deflate(q, m)
            out.extend(_isolate_squarefree(q2, a, b, sf_param))
            continue
        stack.append((a, m))
        stack.append((m, b))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def isolate_roots(p: ParamPoly,
                  domain: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1)),
                  ) -> list[RootBracket]:
    """Disjoint brackets covering every distinct real root of p in domain.

    Rational roots come back exact; each remaining bracket holds exactly one
    (irrational) root of the square-free part, strictly inside the bracket.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    if lo > hi or p.degree == 0:
        return []
    ip = iz.pz_from_fractions(p.coeffs)
    sf = iz.pz_squarefree(ip)
    sf_param = ParamPoly(sf)
    rat_roots, q = iz.pz_rational_roots(sf)
    rat_roots = [r for r in rat_roots if lo <= r <= hi]
    brackets: list[RootBracket] = []
    if len(q) > 1:
        # endpoints of the search range must not be roots of q
        for endpoint in (lo, hi):
            if iz.pz_sign_at(q, endpoint) == 0:
                rat_roots.append(endpoint)
                q = iz.pz_deflate(q, endpoint)
        if len(q) > 1:
            brackets = _isolate_squarefree(q, lo, hi, sf_param)
    out = [RootBracket(sf_param, sf, r, r, exact=r) for r in sorted(set(rat_roots))]
    # keep brackets clear of the exact roots they might incidentally cover
    for b in brackets:
        for r in rat_roots:
            while b.exact is None and b.lo <= r <= b.hi:
                b.refine()
    out.extend(brackets)
    out.sort(key=lambda r: (r.lo, r.hi))
    # make the isolating intervals pairwise disjoint as sets
    for i in range(len(out) - 1):
        left, right = out[i], out[i + 1]
        while left.hi >= right.lo:
            if left.exact is None and (right.exact is not None
                                       or left.width() >= right.width()):
                left.refine()
            elif right.exact is None:
                right.refine()
            else:
                break  # two exact roots are distinct by construction
    return out


def poly_roots_in(p: ParamPoly, lo: Fraction, hi: Fraction) -> list[Breakpoint]:
    """Roots of p over [lo, hi] as breakpoints (exact ones as Fractions)."""
    if p.is_zero() or p.degree <= 0:
        return []
    out: list[Breakpoint] = []
    for b in isolate_roots(p, (lo, hi)):
        out.append(b.exact if b.exact is not None else b)
    return out


# ---------------------------------------------------------------------------
# Sign analysis
# ---------------------------------------------------------------------------


def _poly_sign_at_bracket(p: ParamPoly, bp: RootBracket) -> int:
    """Sign of p at the algebraic number isolated by bp (0 if it vanishes)."""
    if p.is_zero():
        return 0
    if bp.exact is not None:
        return iz.pz_sign_at(iz.pz_from_fractions(p.coeffs), bp.exact)
    ip = iz.pz_from_fractions(p.coeffs)
    g = iz.pz_gcd(ip, bp._ipoly)
    if len(g) > 1:
        gchain = _sturm_chain(g)
        if (iz.pz_sign_at(g, bp.lo) == 0
                or _count_roots(gchain, bp.lo, bp.hi) > 0):
            return 0
    sf = iz.pz_squarefree(ip)
    chain = _sturm_chain(sf)
    while (iz.pz_sign_at(ip, bp.lo) == 0
           or _count_roots(chain, bp.lo, bp.hi) > 0):
        bp.refine()
        if bp.exact is not None:
            return iz.pz_sign_at(ip, bp.exact)
    return iz.pz_sign_at(ip, bp.lo)


def sign_at(f: ParamRat, bp: Breakpoint) -> int:
    """Exact sign of a rational function at a breakpoint."""
    e = bp_exact(bp)
    if e is not None:
        den = f.den.eval(e)
        if den == 0:
            raise PoleAtPoint(f"denominator vanishes at {e}")
        num = f.num.eval(e)
        if num == 0:
            return 0
        return 1 if (num > 0) == (den > 0) else -1
    assert isinstance(bp, RootBracket)
    sd = _poly_sign_at_bracket(f.den, bp)
    if sd == 0:
        raise PoleAtPoint("denominator vanishes at an algebraic breakpoint")
    sn = _poly_sign_at_bracket(f.num, bp)
    return sn * sd


def sign_over(f: ParamRat, iv: ParamInterval) -> int:
    """Constant sign of f on the interior of iv: one of -1, 0, +1.

    The caller must have split the interval so that neither num nor den of f
    has a root strictly inside; violations raise SignChangesInside.
    """
    if f.num.is_zero():
        return 0
    if iv.is_point():
        return sign_at(f, iv.lo)
    hull_lo = bp_bounds(iv.lo)[0]
    hull_hi = bp_bounds(iv.hi)[1]
    for poly in (f.num, f.den):
        if poly.degree <= 0:
            continue
        for root in poly_roots_in(poly, hull_lo, hull_hi):
            if bp_cmp(iv.lo, root) < 0 and bp_cmp(root, iv.hi) < 0:
                raise SignChangesInside(
                    f"root of {poly} lies strictly inside the interval")
    sample = rational_between(iv.lo, iv.hi)
    v = f.eval(sample)
    return (v > 0) - (v < 0)


def crossings(f: ParamRat, g: ParamRat, iv: ParamInterval) -> list[Breakpoint]:
    """Ordered points in iv where f - g vanishes (sign changes and tangencies).

    Both functions must be pole-free on the closed interval.
    """
    hull_lo = bp_bounds(iv.lo)[0]
    hull_hi = bp_bounds(iv.hi)[1]
    for h in (f, g):
        if h.den.degree <= 0:
            continue
        for root in poly_roots_in(h.den, hull_lo, hull_hi):
            if iv.contains(root):
                raise PoleInsideInterval(
                    "a pole of an operand lies inside the interval")
    d = f - g
    if d.num.is_zero():
        return []
    out = [r for r in poly_roots_in(d.num, hull_lo, hull_hi) if iv.contains(r)]
    return out
