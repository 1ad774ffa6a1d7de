"""Exact arithmetic over the field of rational functions of one parameter.

Scalars are arbitrary-precision rationals (``fractions.Fraction``).  A
``ParamPoly`` is a dense tuple of rational coefficients in the single free
parameter (ascending powers, trailing coefficient nonzero, ``()`` is the zero
polynomial).  A ``ParamRat`` is a reduced num/den pair with *monic*
denominator and constant gcd, so mathematical equality coincides with
structural equality -- which is what candidate deduplication relies on.

Variables of linear/quadratic expressions are stable integer ids; the name
table lives with the problem definition, not here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DivisionByZero, InconsistentSolution, PoleAtPoint

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _strip(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class ParamPoly:
    """Univariate polynomial in the parameter with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "ParamPoly":
        return ParamPoly()

    @staticmethod
    def one() -> "ParamPoly":
        return ParamPoly((1,))

    @staticmethod
    def const(value: Union[int, Fraction]) -> "ParamPoly":
        return ParamPoly((Fraction(value),))

    @staticmethod
    def param() -> "ParamPoly":
        """The parameter itself, as a degree-1 polynomial."""
        return ParamPoly((0, 1))

    # -- queries --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def constant_value(self) -> Fraction:
        if not self.coeffs:
            return _ZERO
        if len(self.coeffs) > 1:
            raise ValueError("polynomial is not constant")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("ParamPoly", self.coeffs))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ParamPoly(out)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly([-c for c in self.coeffs])

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ParamPoly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return ParamPoly(out)

    def scale(self, k: Union[int, Fraction]) -> "ParamPoly":
        k = Fraction(k)
        return ParamPoly([c * k for c in self.coeffs])

    def monic(self) -> "ParamPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return self.scale(1 / lead)

    def derivative(self) -> "ParamPoly":
        return ParamPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "ParamPoly") -> tuple["ParamPoly", "ParamPoly"]:
        """Euclidean division: self = q*other + r with deg r < deg other."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ParamPoly(), self
        quot = [_ZERO] * (dq + 1)
        dcoeffs = other.coeffs
        dlead = dcoeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(dcoeffs) - 1] / dlead
            if c:
                quot[k] = c
                for j, dc in enumerate(dcoeffs):
                    rem[k + j] -= c * dc
        return ParamPoly(quot), ParamPoly(rem)

    def eval(self, value: Fraction) -> Fraction:
        """Exact evaluation at a rational point (Horner)."""
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift_pow(self, k: int) -> "ParamPoly":
        """Multiply by the k-th power of the parameter."""
        if self.is_zero():
            return self
        return ParamPoly((_ZERO,) * k + self.coeffs)

    # -- rendering --------------------------------------------------------

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Monic gcd over the rationals (Euclid); gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def format_poly(p: ParamPoly, symbol: str = "PD") -> str:
    """Render in descending powers, e.g. ``-4*PD^2 + 4*PD + 2``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = symbol if i == 1 else f"{symbol}^{i}"
            body = var if mag == 1 else f"{mag}*{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = first_body if first_sign == "+" else f"-{first_body}"
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


class ParamRat:
    """Rational function of the parameter in canonical form.

    Canonical form: the denominator is monic and gcd(num, den) is constant,
    so two ParamRat are mathematically equal iff structurally equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: ParamPoly = ParamPoly((1,))):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num = ParamPoly()
            self.den = ParamPoly.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(value: Union[int, Fraction]) -> "ParamRat":
        return ParamRat(ParamPoly.const(value))

    @staticmethod
    def param() -> "ParamRat":
        """The free parameter as a rational function."""
        return ParamRat(ParamPoly.param())

    @staticmethod
    def from_poly(p: ParamPoly) -> "ParamRat":
        return ParamRat(p)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        if self.num.is_zero():
            return _ZERO
        return self.num.coeffs[0] / self.den.coeffs[0]

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, ParamRat)
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        return hash(("ParamRat", self.num.coeffs, self.den.coeffs))

    # -- field arithmetic -------------------------------------------------

    def __add__(self, other: "ParamRat") -> "ParamRat":
        return ParamRat(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __neg__(self) -> "ParamRat":
        return ParamRat(-self.num, self.den)

    def __sub__(self, other: "ParamRat") -> "ParamRat":
        return ParamRat(self.num * other.den - other.num * self.den,
                        self.den * other.den)

    def __mul__(self, other: "ParamRat") -> "ParamRat":
        return ParamRat(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "ParamRat") -> "ParamRat":
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return ParamRat(self.num * other.den, self.den * other.num)

    def eval(self, value: Fraction) -> Fraction:
        d = self.den.eval(value)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {value}")
        return self.num.eval(value) / d

    # -- rendering --------------------------------------------------------

    def __repr__(self) -> str:
        return f"ParamRat({self})"

    def __str__(self) -> str:
        if self.den.degree == 0 and self.den.leading() == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


RAT_ZERO = ParamRat.const(0)
RAT_ONE = ParamRat.const(1)


def ratfun_arith(op: str, a: ParamRat, b: ParamRat) -> ParamRat:
    """Exact field arithmetic dispatch: op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def eval_at(e: Union[ParamRat, ParamPoly], value: Union[int, Fraction]) -> Fraction:
    """Exact substitution of a rational value for the parameter."""
    value = Fraction(value)
    if isinstance(e, ParamPoly):
        return e.eval(value)
    return e.eval(value)


# ---------------------------------------------------------------------------
# Linear and quadratic expressions over integer variable ids
# ---------------------------------------------------------------------------


class LinExpr:
    """Affine expression: sum of coeff*var plus a constant, all ParamRat."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Mapping[int, ParamRat] | None = None,
                 const: ParamRat = RAT_ZERO):
        self.coeffs = {v: c for v, c in (coeffs or {}).items() if not c.is_zero()}
        self.const = const

    def variables(self) -> frozenset[int]:
        return frozenset(self.coeffs)

    def coefficient(self, var: int) -> ParamRat:
        return self.coeffs.get(var, RAT_ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs and self.const.is_zero()

    def __add__(self, other: "LinExpr") -> "LinExpr":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, RAT_ZERO) + c
        return LinExpr(out, self.const + other.const)

    def __neg__(self) -> "LinExpr":
        return LinExpr({v: -c for v, c in self.coeffs.items()}, -self.const)

    def __sub__(self, other: "LinExpr") -> "LinExpr":
        return self + (-other)

    def scale(self, k: ParamRat) -> "LinExpr":
        if k.is_zero():
            return LinExpr()
        return LinExpr({v: c * k for v, c in self.coeffs.items()},
                       self.const * k)

    def evaluate(self, assignment: Mapping[int, ParamRat]) -> ParamRat:
        acc = self.const
        for v, c in self.coeffs.items():
            acc = acc + c * assignment[v]
        return acc

    def eval_numeric(self, point: Mapping[int, Fraction], pd: Fraction) -> Fraction:
        acc = self.const.eval(pd)
        for v, c in self.coeffs.items():
            acc += c.eval(pd) * point[v]
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinExpr)
                and self.coeffs == other.coeffs and self.const == other.const)

    def __repr__(self) -> str:
        terms = [f"{c}*x{v}" for v, c in sorted(self.coeffs.items())]
        terms.append(str(self.const))
        return "LinExpr(" + " + ".join(terms) + ")"


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


class QuadExpr:
    """Quadratic expression with ParamRat coefficients.

    ``quad`` maps canonically ordered variable pairs (i <= j) to coefficients;
    zero coefficients are never stored.
    """

    __slots__ = ("quad", "lin", "const")

    def __init__(self,
                 quad: Mapping[tuple[int, int], ParamRat] | None = None,
                 lin: Mapping[int, ParamRat] | None = None,
                 const: ParamRat = RAT_ZERO):
        self.quad = {}
        for (i, j), c in (quad or {}).items():
            if not c.is_zero():
                self.quad[_pair(i, j)] = c
        self.lin = {v: c for v, c in (lin or {}).items() if not c.is_zero()}
        self.const = const

    def variables(self) -> frozenset[int]:
        vs = set(self.lin)
        for i, j in self.quad:
            vs.add(i)
            vs.add(j)
        return frozenset(vs)

    def is_constant(self) -> bool:
        return not self.quad and not self.lin

    def __add__(self, other: "QuadExpr") -> "QuadExpr":
        quad = dict(self.quad)
        for k, c in other.quad.items():
            quad[k] = quad.get(k, RAT_ZERO) + c
        lin = dict(self.lin)
        for v, c in other.lin.items():
            lin[v] = lin.get(v, RAT_ZERO) + c
        return QuadExpr(quad, lin, self.const + other.const)

    def __neg__(self) -> "QuadExpr":
        return QuadExpr({k: -c for k, c in self.quad.items()},
                        {v: -c for v, c in self.lin.items()}, -self.const)

    def __sub__(self, other: "QuadExpr") -> "QuadExpr":
        return self + (-other)

    def scale(self, k: ParamRat) -> "QuadExpr":
        if k.is_zero():
            return QuadExpr()
        return QuadExpr({p: c * k for p, c in self.quad.items()},
                        {v: c * k for v, c in self.lin.items()},
                        self.const * k)

    def evaluate(self, assignment: Mapping[int, ParamRat]) -> ParamRat:
        acc = self.const
        for (i, j), c in self.quad.items():
            acc = acc + c * assignment[i] * assignment[j]
        for v, c in self.lin.items():
            acc = acc + c * assignment[v]
        return acc

    def eval_numeric(self, point: Mapping[int, Fraction], pd: Fraction) -> Fraction:
        acc = self.const.eval(pd)
        for (i, j), c in self.quad.items():
            acc += c.eval(pd) * point[i] * point[j]
        for v, c in self.lin.items():
            acc += c.eval(pd) * point[v]
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadExpr) and self.quad == other.quad
                and self.lin == other.lin and self.const == other.const)

    def __repr__(self) -> str:
        terms = [f"{c}*x{i}*x{j}" for (i, j), c in sorted(self.quad.items())]
        terms += [f"{c}*x{v}" for v, c in sorted(self.lin.items())]
        terms.append(str(self.const))
        return "QuadExpr(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# Linear systems over the rational-function field
# ---------------------------------------------------------------------------


class SolutionKind(Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Solution:
    """Result of solving a linear system over the function field.

    ``assignments`` expresses each dependent variable as a LinExpr over the
    free variables; it is None exactly when the system is inconsistent.
    """

    kind: SolutionKind
    assignments: dict[int, LinExpr] | None
    free: frozenset[int]

    def point(self) -> dict[int, ParamRat]:
        """The unique solution as constants (kind must be UNIQUE)."""
        if self.kind is not SolutionKind.UNIQUE:
            raise ValueError("solution is not unique")
        assert self.assignments is not None
        return {v: e.const for v, e in self.assignments.items()}


IDENTITY_SOLUTION = Solution(SolutionKind.UNDERDETERMINED, {}, frozenset())


def linear_solve(equations: Sequence[LinExpr],
                 variables: Sequence[int] | None = None) -> Solution:
    """Solve a system of LinExpr = 0 over the rational-function field.

    Gauss-Jordan elimination with deterministic pivoting: columns are taken
    in ascending variable id, the pivot row is the first remaining row with
    a nonzero coefficient.  Inconsistency is a Solution kind, not an error.
    """
    universe: set[int] = set(variables or ())
    for eq in equations:
        universe.update(eq.coeffs)
    order = sorted(universe)

    rows: list[tuple[dict[int, ParamRat], ParamRat]] = [
        (dict(eq.coeffs), eq.const) for eq in equations
    ]
    pivots: list[tuple[int, int]] = []  # (row index, var)
    used: set[int] = set()
    for var in order:
        pivot_row = None
        for r, (coeffs, _) in enumerate(rows):
            if r not in used and coeffs.get(var):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        coeffs, const = rows[pivot_row]
        inv = RAT_ONE / coeffs[var]
        coeffs = {v: c * inv for v, c in coeffs.items() if not c.is_zero()}
        const = const * inv
        rows[pivot_row] = (coeffs, const)
        for r, (rc, rconst) in enumerate(rows):
            if r == pivot_row:
                continue
            factor = rc.get(var)
            if factor is None or factor.is_zero():
                continue
            new = dict(rc)
            for v, c in coeffs.items():
                acc = new.get(v, RAT_ZERO) - factor * c
                if acc.is_zero():
                    new.pop(v, None)
                else:
                    new[v] = acc
            rows[r] = (new, rconst - factor * const)
        used.add(pivot_row)
        pivots.append((pivot_row, var))

    for r, (coeffs, const) in enumerate(rows):
        if r not in used and not const.is_zero():
            return Solution(SolutionKind.INCONSISTENT, None, frozenset())

    dependent = {var for _, var in pivots}
    free = frozenset(universe - dependent)
    assignments: dict[int, LinExpr] = {}
    for r, var in pivots:
        coeffs, const = rows[r]
        expr = LinExpr({v: -c for v, c in coeffs.items() if v != var}, -const)
        assignments[var] = expr
    kind = SolutionKind.UNIQUE if not free else SolutionKind.UNDERDETERMINED
    return Solution(kind, assignments, free)


def _lin_product(a: LinExpr, b: LinExpr) -> QuadExpr:
    quad: dict[tuple[int, int], ParamRat] = {}
    lin: dict[int, ParamRat] = {}
    for i, ca in a.coeffs.items():
        for j, cb in b.coeffs.items():
            k = _pair(i, j)
            quad[k] = quad.get(k, RAT_ZERO) + ca * cb
    if not b.const.is_zero():
        for i, ca in a.coeffs.items():
            lin[i] = lin.get(i, RAT_ZERO) + ca * b.const
    if not a.const.is_zero():
        for j, cb in b.coeffs.items():
            lin[j] = lin.get(j, RAT_ZERO) + a.const * cb
    return QuadExpr(quad, lin, a.const * b.const)


def substitute(f: QuadExpr, s: Solution) -> QuadExpr:
    """Plug a linear Solution into a quadratic; result mentions free vars only."""
    if s.kind is SolutionKind.INCONSISTENT:
        raise InconsistentSolution("cannot substitute an inconsistent solution")
    assert s.assignments is not None

    def replacement(v: int) -> LinExpr:
        expr = s.assignments.get(v)
        if expr is None:
            return LinExpr({v: RAT_ONE})
        return expr

    out = QuadExpr(const=f.const)
    for (i, j), c in f.quad.items():
        out = out + _lin_product(replacement(i), replacement(j)).scale(c)
    for v, c in f.lin.items():
        r = replacement(v)
        out = out + QuadExpr(lin=r.coeffs, const=r.const).scale(c)
    return out


def gradient(f: QuadExpr, variables: Sequence[int]) -> list[LinExpr]:
    """Partial derivatives of a quadratic, one LinExpr per variable."""
    out = []
    for v in variables:
        coeffs: dict[int, ParamRat] = {}
        for (i, j), c in f.quad.items():
            if i == j == v:
                coeffs[v] = coeffs.get(v, RAT_ZERO) + c + c
            elif i == v:
                coeffs[j] = coeffs.get(j, RAT_ZERO) + c
            elif j == v:
                coeffs[i] = coeffs.get(i, RAT_ZERO) + c
        const = f.lin.get(v, RAT_ZERO)
        out.append(LinExpr(coeffs, const))
    return out
