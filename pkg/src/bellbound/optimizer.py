"""Parametric quadratic optimizer: exact piecewise maxima with witnesses.

The pipeline has four stages.  (1) Enumerate active subsets of the
inequality constraints (capped at |variables| members, merged with every
equality constraint) and solve each equality system over the rational
function field.  (2) Restrict the objective to the intersection and solve
the stationarity system; underdetermined systems are ridges whose extremes
reappear on other active sets, so they are discarded.  (3) For every
surviving candidate, split the parameter domain at the roots of the
substituted constraints and keep the closed cells where all of them hold.
(4) Superpose all candidates into the exact upper envelope, splitting at
value crossings, and merge equal-value neighbours.

Stages 1-2 run in the enumeration kernel (compiled when available) and are
partitioned deterministically across worker processes; the reduction behind
stages 3-4 is canonical, so results are identical for any worker count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterator, Mapping, Sequence

from . import _kernel
from ._intpoly import pz_from_fractions, pz_mul
from .algebra import (LinExpr, ParamPoly, ParamRat, QuadExpr, RAT_ZERO,
                      Solution, SolutionKind, gradient, linear_solve, poly_gcd,
                      substitute)
from .errors import (AuditFailure, EmptyCandidateSet, NonlinearConstraint,
                     NonQuadraticObjective, PoleAtPoint, TargetOutOfRange)
from .roots import (Breakpoint, ParamInterval, bp_cmp, bp_eq, bp_exact,
                    crossings, poly_roots_in, rational_between, sign_at,
                    sorted_breakpoints)


class Relation(Enum):
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class LinConstraint:
    """A linear constraint, stored as expr <= 0 or expr = 0."""

    expr: LinExpr
    relation: Relation = Relation.LE


@dataclass(frozen=True)
class ProblemSpec:
    """Quadratic objective over linearly constrained variables.

    Variable ids are indices into ``variables``; the free parameter ranges
    over the closed rational ``domain``.
    """

    variables: tuple[str, ...]
    objective: QuadExpr
    constraints: tuple[LinConstraint, ...]
    domain: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))
    name: str = ""

    def validate(self) -> None:
        n = len(self.variables)
        if not isinstance(self.objective, QuadExpr):
            raise NonQuadraticObjective("objective must be a QuadExpr")
        if any(v >= n for v in self.objective.variables()):
            raise NonQuadraticObjective("objective mentions unknown variables")
        for con in self.constraints:
            if not isinstance(con.expr, LinExpr):
                raise NonlinearConstraint("constraints must be LinExpr")
            if any(v >= n for v in con.expr.coeffs):
                raise NonlinearConstraint("constraint mentions unknown variables")
        lo, hi = self.domain
        if lo > hi:
            raise ValueError("empty parameter domain")


@dataclass
class CandidateOptimum:
    """A stationary point of the objective on one constraint intersection."""

    active: tuple[int, ...]
    witness: dict[int, ParamRat]
    value: ParamRat
    feasible: tuple[ParamInterval, ...] = ()


@dataclass
class Segment:
    interval: ParamInterval
    value: ParamRat
    witness: dict[int, ParamRat]
    active: tuple[int, ...]


@dataclass
class PiecewiseBound:
    """The exact optimum per parameter interval; intervals tile the domain."""

    segments: tuple[Segment, ...]

    def value_at(self, pd: Fraction) -> Fraction:
        for seg in self.segments:
            if seg.interval.contains(Fraction(pd)):
                return seg.value.eval(Fraction(pd))
        raise ValueError(f"{pd} outside the solved domain")

    def witness_at(self, pd: Fraction) -> dict[int, Fraction]:
        for seg in self.segments:
            if seg.interval.contains(Fraction(pd)):
                return {v: r.eval(Fraction(pd)) for v, r in seg.witness.items()}
        raise ValueError(f"{pd} outside the solved domain")


@dataclass
class SolveStats:
    subsets_attempted: int = 0
    inconsistent: int = 0
    ridges_discarded: int = 0
    candidates_emitted: int = 0
    candidates_unique: int = 0
    candidates_feasible: int = 0


# ---------------------------------------------------------------------------
# Stage 1-2, reference path (spec-level operations on algebra objects)
# ---------------------------------------------------------------------------


def intersect_all(spec: ProblemSpec, max_rank: int
                  ) -> Iterator[tuple[tuple[int, ...], Solution, QuadExpr]]:
    """Stream of (active subset, Solution, reduced objective).

    Active subsets run over all inequality-constraint index sets of size at
    most ``max_rank`` in deterministic (size, lexicographic) order, each
    joined with every equality constraint; inconsistent systems are skipped.
    """
    eq_exprs = [c.expr for c in spec.constraints if c.relation is Relation.EQ]
    ineq_idx = [i for i, c in enumerate(spec.constraints)
                if c.relation is Relation.LE]
    var_ids = range(len(spec.variables))
    for k in range(max_rank + 1):
        for combo in combinations(ineq_idx, k):
            eqs = eq_exprs + [spec.constraints[i].expr for i in combo]
            sol = linear_solve(eqs, var_ids)
            if sol.kind is SolutionKind.INCONSISTENT:
                continue
            yield combo, sol, substitute(spec.objective, sol)


def stationary(reduced: QuadExpr, free_vars: Sequence[int]
               ) -> dict[int, ParamRat] | None:
    """Unique stationary point of the reduced objective, or None (ridge).

    None covers both underdetermined gradients (a ridge: its extremes show
    up again on other boundaries) and inconsistent ones (no stationary
    point on this intersection).
    """
    order = sorted(free_vars)
    sol = linear_solve(gradient(reduced, order), order)
    if sol.kind is not SolutionKind.UNIQUE:
        return None
    return sol.point()


# ---------------------------------------------------------------------------
# Kernel encoding
# ---------------------------------------------------------------------------


def _poly_lcm(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    g = poly_gcd(a, b)
    return (a * b).divmod(g)[0].monic()


def _clear_row(entries: Sequence[ParamRat]) -> tuple[tuple[int, ...], ...]:
    """Scale a row of rational functions to integer polynomials."""
    den = ParamPoly.one()
    for e in entries:
        if e.den.degree > 0:
            den = _poly_lcm(den, e.den)
    polys = []
    for e in entries:
        p = e.num
        if e.den != den:
            p = p * den.divmod(e.den)[0]
        polys.append(p)
    scale = 1
    for p in polys:
        for c in p.coeffs:
            d = c.denominator
            scale = scale * d // gcd(scale, d)
    return tuple(pz_from_fractions(p.scale(scale).coeffs) for p in polys)


def _conflict_masks(rows, nvars: int) -> tuple[int, ...]:
    """Bit i of mask[j]: rows i and j can never both hold as equalities."""
    n = len(rows)
    masks = [0] * n
    firsts = []
    for coeffs, _const in rows:
        firsts.append(next((k for k, p in enumerate(coeffs) if p), None))
    for i in range(n):
        ai, ci = rows[i]
        if firsts[i] is None and ci:
            masks[i] |= 1 << i  # 0 = nonzero: impossible on its own
            continue
        for j in range(i + 1, n):
            aj, cj = rows[j]
            if firsts[j] is None:
                continue
            if firsts[i] != firsts[j]:
                continue
            k = firsts[i]
            parallel = all(pz_mul(ai[k], aj[l]) == pz_mul(ai[l], aj[k])
                           for l in range(k + 1, nvars))
            if parallel and pz_mul(ai[k], cj) != pz_mul(aj[k], ci):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return tuple(masks)


def _kernel_problem(spec: ProblemSpec, max_rank: int):
    nvars = len(spec.variables)
    rows = []
    for con in spec.constraints:
        entries = [con.expr.coeffs.get(v, RAT_ZERO) for v in range(nvars)]
        entries.append(con.expr.const)
        cleared = _clear_row(entries)
        rows.append((cleared[:nvars], cleared[nvars]))
    eq_idx = tuple(i for i, c in enumerate(spec.constraints)
                   if c.relation is Relation.EQ)
    ineq_idx = tuple(i for i, c in enumerate(spec.constraints)
                     if c.relation is Relation.LE)
    conflict = _conflict_masks(rows, nvars)

    obj = spec.objective
    quad_items = sorted(obj.quad.items())
    lin_items = sorted(obj.lin.items())
    entries = ([c for _, c in quad_items] + [c for _, c in lin_items]
               + [obj.const, ParamRat.const(1)])
    cleared = _clear_row(entries)
    nq = len(quad_items)
    nl = len(lin_items)
    quad_t = tuple((i, j, cleared[k]) for k, ((i, j), _) in enumerate(quad_items))
    lin_t = tuple((v, cleared[nq + k]) for k, (v, _) in enumerate(lin_items))
    const_p = cleared[nq + nl]
    den_p = cleared[nq + nl + 1]  # the cleared image of 1 == the common scale
    objective = (quad_t, lin_t, const_p, den_p)
    return (nvars, tuple(rows), eq_idx, ineq_idx, conflict, objective,
            max_rank)


def _enumeration_worker(args):
    problem, offset, stride, backend = args
    return _kernel.get_backend(backend).run_enumeration(problem, offset, stride)


def _run_enumeration(problem, workers: int):
    backend = _kernel.BACKEND
    if workers <= 1:
        results = [_kernel.run_enumeration(problem, 0, 1)]
    else:
        from concurrent.futures import ProcessPoolExecutor

        jobs = [(problem, w, workers, backend) for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_enumeration_worker, jobs))
    stats = SolveStats()
    raw = []
    for (attempted, inconsistent, discarded, emitted), cands in results:
        stats.subsets_attempted += attempted
        stats.inconsistent += inconsistent
        stats.ridges_discarded += discarded
        stats.candidates_emitted += emitted
        raw.extend(cands)
    return raw, stats


def _pair_to_ratfun(pair) -> ParamRat:
    num, den = pair
    return ParamRat(ParamPoly(num), ParamPoly(den))


def _dedupe(raw, eq_idx: tuple[int, ...]) -> list[CandidateOptimum]:
    """Merge duplicate (witness, value) candidates, keeping the
    lexicographically smallest active set; canonical output order."""
    best: dict[tuple, tuple[int, ...]] = {}
    for combo, witness, value in raw:
        key = (witness, value)
        active = tuple(sorted(eq_idx + combo))
        old = best.get(key)
        if old is None or active < old:
            best[key] = active
    out = []
    for (witness, value), active in sorted(best.items(),
                                           key=lambda kv: (kv[0], kv[1])):
        out.append(CandidateOptimum(
            active=active,
            witness={v: _pair_to_ratfun(p) for v, p in enumerate(witness)},
            value=_pair_to_ratfun(value),
        ))
    return out


# ---------------------------------------------------------------------------
# Stage 3: feasibility intervals in the parameter
# ---------------------------------------------------------------------------


def _roots_in_domain(p: ParamPoly, dlo: Fraction, dhi: Fraction) -> list[Breakpoint]:
    if p.is_zero() or p.degree <= 0:
        return []
    return poly_roots_in(p, dlo, dhi)


def feasible(witness: Mapping[int, ParamRat], spec: ProblemSpec,
             value: ParamRat | None = None) -> list[ParamInterval]:
    """Closed parameter intervals on which the witness satisfies every
    constraint (empty list: nowhere feasible).

    The domain is split at every root of the substituted constraints and at
    every pole of the witness coordinates; cells are kept on an exact
    interior sample, and single points surviving between failing cells are
    kept as degenerate intervals.
    """
    dlo, dhi = Fraction(spec.domain[0]), Fraction(spec.domain[1])
    gs_le: list[ParamRat] = []
    gs_eq: list[ParamRat] = []
    for con in spec.constraints:
        g = con.expr.evaluate(witness)
        (gs_eq if con.relation is Relation.EQ else gs_le).append(g)

    pole_polys = [w.den for w in witness.values() if w.den.degree > 0]
    pole_polys += [g.den for g in gs_le + gs_eq if g.den.degree > 0]
    if value is not None and value.den.degree > 0:
        pole_polys.append(value.den)

    def point_ok(bp: Breakpoint) -> bool:
        try:
            return (all(sign_at(g, bp) <= 0 for g in gs_le)
                    and all(sign_at(g, bp) == 0 for g in gs_eq))
        except PoleAtPoint:
            return False

    nonzero_eq = [g for g in gs_eq if not g.num.is_zero()]
    if nonzero_eq:
        # the witness meets the equalities only at isolated parameter values
        pts = [r for r in _roots_in_domain(nonzero_eq[0].num, dlo, dhi)
               if point_ok(r)]
        return [ParamInterval(p, p) for p in pts]

    bps: list[Breakpoint] = [dlo, dhi]
    for g in gs_le:
        bps.extend(_roots_in_domain(g.num, dlo, dhi))
        bps.extend(_roots_in_domain(g.den, dlo, dhi))
    pole_bps: list[Breakpoint] = []
    for p in pole_polys:
        pole_bps.extend(_roots_in_domain(p, dlo, dhi))
    bps.extend(pole_bps)
    bps = sorted_breakpoints(bps)

    def is_pole(bp: Breakpoint) -> bool:
        return any(bp_eq(bp, q) for q in pole_bps)

    passing = []
    if dlo == dhi:
        return [ParamInterval(dlo, dhi)] if point_ok(dlo) else []
    for a, b in zip(bps, bps[1:]):
        s = rational_between(a, b)
        if all(g.eval(s) <= 0 for g in gs_le):
            passing.append([a, b])

    intervals: list[ParamInterval] = []
    covered: list[Breakpoint] = []
    for cell in passing:
        if (intervals and bp_eq(intervals[-1].hi, cell[0])
                and not is_pole(cell[0])):
            intervals[-1] = ParamInterval(intervals[-1].lo, cell[1])
        else:
            intervals.append(ParamInterval(cell[0], cell[1]))
        covered.extend(cell)
    # isolated feasible points between failing cells
    for bp in bps:
        if any(iv.contains(bp) for iv in intervals):
            continue
        if point_ok(bp):
            intervals.append(ParamInterval(bp, bp))
    intervals.sort(key=lambda iv: _bp_sort_key(iv.lo))
    return intervals


def _bp_sort_key(bp: Breakpoint):
    from functools import cmp_to_key
    return cmp_to_key(bp_cmp)(bp)


# ---------------------------------------------------------------------------
# Stage 4: upper envelope
# ---------------------------------------------------------------------------


def _bp_min(a: Breakpoint, b: Breakpoint) -> Breakpoint:
    return a if bp_cmp(a, b) <= 0 else b


def _bp_max(a: Breakpoint, b: Breakpoint) -> Breakpoint:
    return a if bp_cmp(a, b) >= 0 else b


def _value_gt_at(f: ParamRat, g: ParamRat, bp: Breakpoint) -> bool:
    return sign_at(f - g, bp) > 0


def _overlay(cells, iv: ParamInterval, idx: int, cands):
    """Superpose candidate ``idx`` (on interval iv) onto the envelope cells."""
    out = []
    f = cands[idx].value
    for lo, hi, winner in cells:
        olo = _bp_max(lo, iv.lo)
        ohi = _bp_min(hi, iv.hi)
        if bp_cmp(olo, ohi) > 0:
            out.append((lo, hi, winner))
            continue
        pieces = []
        if winner is None:
            pieces.append((olo, ohi, idx))
        elif cands[winner].value == f:
            pieces.append((olo, ohi, winner))
        elif bp_cmp(olo, ohi) == 0:
            w = idx if _value_gt_at(f, cands[winner].value, olo) else winner
            pieces.append((olo, ohi, w))
        else:
            g = cands[winner].value
            d = f - g
            pts = [r for r in poly_roots_in(d.num, *_hull(olo, ohi))
                   if bp_cmp(olo, r) < 0 and bp_cmp(r, ohi) < 0]
            marks = [olo] + pts + [ohi]
            for a, b in zip(marks, marks[1:]):
                s = rational_between(a, b)
                w = idx if f.eval(s) > g.eval(s) else winner
                if pieces and pieces[-1][2] == w:
                    pieces[-1] = (pieces[-1][0], b, w)
                else:
                    pieces.append((a, b, w))
        if all(p[2] == winner for p in pieces):
            out.append((lo, hi, winner))
            continue
        if bp_cmp(lo, olo) < 0:
            out.append((lo, olo, winner))
        out.extend(pieces)
        if bp_cmp(ohi, hi) < 0:
            out.append((ohi, hi, winner))
    # coalesce neighbours with the same winner
    merged = []
    for cell in out:
        if merged and merged[-1][2] == cell[2] and bp_eq(merged[-1][1], cell[0]):
            merged[-1] = (merged[-1][0], cell[1], cell[2])
        else:
            merged.append(cell)
    return merged


def _hull(lo: Breakpoint, hi: Breakpoint) -> tuple[Fraction, Fraction]:
    from .roots import bp_bounds
    return bp_bounds(lo)[0], bp_bounds(hi)[1]


def piecewise_max(candidates: Sequence[CandidateOptimum],
                  domain: tuple[Fraction, Fraction]) -> PiecewiseBound:
    """Exact upper envelope of the candidates over the domain.

    Ties between identical value expressions go to the lexicographically
    smallest active set; adjacent segments with identical value expressions
    are merged, preferring a witness that is feasible across the whole
    merged interval.
    """
    cands = [c for c in candidates if c.feasible]
    if not cands:
        raise EmptyCandidateSet("no candidate is feasible anywhere")
    dlo, dhi = Fraction(domain[0]), Fraction(domain[1])

    probes = [dlo + (dhi - dlo) * Fraction(k, 8) for k in range(9)]

    def peak(i: int) -> Fraction:
        best = None
        for p in probes:
            try:
                v = cands[i].value.eval(p)
            except PoleAtPoint:
                continue
            best = v if best is None or v > best else best
        return best if best is not None else Fraction(0)

    order = sorted(range(len(cands)), key=lambda i: (-peak(i), i))

    cells: list[tuple[Breakpoint, Breakpoint, int | None]] = [(dlo, dhi, None)]
    for idx in order:
        for iv in cands[idx].feasible:
            cells = _overlay(cells, iv, idx, cands)

    gaps = [c for c in cells if c[2] is None]
    if gaps:
        lo, hi, _ = gaps[0]
        raise EmptyCandidateSet(
            f"no feasible candidate on [{bp_exact(lo) or lo}, "
            f"{bp_exact(hi) or hi}]")

    # merge runs with identical value expressions
    runs: list[tuple[Breakpoint, Breakpoint, ParamRat]] = []
    for lo, hi, winner in cells:
        v = cands[winner].value
        if runs and runs[-1][2] == v:
            runs[-1] = (runs[-1][0], hi, v)
        else:
            runs.append((lo, hi, v))

    by_value: dict[ParamRat, list[int]] = {}
    for i, c in enumerate(cands):
        by_value.setdefault(c.value, []).append(i)

    def covering(value: ParamRat, lo: Breakpoint, hi: Breakpoint) -> int | None:
        pool = [i for i in by_value[value]
                if any(iv.contains_interval(ParamInterval(lo, hi))
                       for iv in cands[i].feasible)]
        if not pool:
            return None
        return min(pool, key=lambda i: cands[i].active)

    segments: list[Segment] = []
    for lo, hi, v in runs:
        best = covering(v, lo, hi)
        if best is not None:
            segments.append(Segment(ParamInterval(lo, hi), v,
                                    dict(cands[best].witness),
                                    cands[best].active))
            continue
        # no single witness spans the run: canonical per-piece subdivision
        marks = [lo, hi]
        for i in by_value[v]:
            for iv in cands[i].feasible:
                for bp in (iv.lo, iv.hi):
                    if bp_cmp(lo, bp) < 0 and bp_cmp(bp, hi) < 0:
                        marks.append(bp)
        marks = sorted_breakpoints(marks)
        for a, b in zip(marks, marks[1:]):
            best = covering(v, a, b)
            assert best is not None, "envelope winner lost its cover"
            segments.append(Segment(ParamInterval(a, b), v,
                                    dict(cands[best].witness),
                                    cands[best].active))
    return PiecewiseBound(tuple(segments))


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------


def solve_with_stats(spec: ProblemSpec, workers: int = 1,
                     max_rank: int | None = None
                     ) -> tuple[PiecewiseBound, SolveStats]:
    """Run the four-stage pipeline; also report enumeration statistics."""
    spec.validate()
    n_ineq = sum(1 for c in spec.constraints if c.relation is Relation.LE)
    if max_rank is None:
        max_rank = min(len(spec.variables), n_ineq)
    problem = _kernel_problem(spec, max_rank)
    raw, stats = _run_enumeration(problem, max(1, workers))
    eq_idx = tuple(i for i, c in enumerate(spec.constraints)
                   if c.relation is Relation.EQ)
    cands = _dedupe(raw, eq_idx)
    stats.candidates_unique = len(cands)
    for c in cands:
        c.feasible = tuple(feasible(c.witness, spec, c.value))
    kept = [c for c in cands if c.feasible]
    stats.candidates_feasible = len(kept)
    bound = piecewise_max(kept, spec.domain)
    return bound, stats


def solve(spec: ProblemSpec, workers: int = 1,
          max_rank: int | None = None) -> PiecewiseBound:
    """Exact piecewise maximum of the objective over the parameter domain."""
    return solve_with_stats(spec, workers, max_rank)[0]


# ---------------------------------------------------------------------------
# Independent candidate audit
# ---------------------------------------------------------------------------


@dataclass
class AuditReport:
    samples: tuple[Fraction, ...]
    checks: tuple[str, ...]


def verify_candidate(c: CandidateOptimum, spec: ProblemSpec,
                     samples: Sequence[Fraction]) -> AuditReport:
    """Exact audit of a candidate at given parameter samples.

    Checks constraint satisfaction, value consistency, and stationarity on
    the active-set tangent space; raises AuditFailure on the first violation.
    """
    checks = []
    for s in samples:
        s = Fraction(s)
        point = {}
        for v, w in c.witness.items():
            try:
                point[v] = w.eval(s)
            except PoleAtPoint as exc:
                raise AuditFailure(f"witness pole at {s}") from exc
        for i, con in enumerate(spec.constraints):
            val = con.expr.eval_numeric(point, s)
            if con.relation is Relation.LE and val > 0:
                raise AuditFailure(
                    f"constraint {i} violated at {s}: {val} > 0")
            if con.relation is Relation.EQ and val != 0:
                raise AuditFailure(
                    f"equality constraint {i} violated at {s}: {val} != 0")
        checks.append(f"constraints@{s}")
        if spec.objective.eval_numeric(point, s) != c.value.eval(s):
            raise AuditFailure(f"objective value mismatch at {s}")
        checks.append(f"value@{s}")
        # gradient must lie in the row space of the active constraint normals
        nvars = len(spec.variables)
        grads = gradient(spec.objective, range(nvars))
        gvec = []
        for gexpr in grads:
            acc = gexpr.const.eval(s)
            for v, coef in gexpr.coeffs.items():
                acc += coef.eval(s) * point[v]
            gvec.append(acc)
        rows = []
        for i in c.active:
            expr = spec.constraints[i].expr
            rows.append([expr.coeffs.get(v, RAT_ZERO).eval(s)
                         for v in range(nvars)])
        if not _in_row_space(rows, gvec):
            raise AuditFailure(f"gradient not stationary at {s}")
        checks.append(f"stationarity@{s}")
    return AuditReport(tuple(Fraction(s) for s in samples), tuple(checks))


def _in_row_space(rows: list[list[Fraction]], vec: list[Fraction]) -> bool:
    work = [list(r) for r in rows]
    target = list(vec)
    n = len(vec)
    pivots = []
    r = 0
    for cidx in range(n):
        pick = next((i for i in range(r, len(work)) if work[i][cidx] != 0), None)
        if pick is None:
            continue
        work[r], work[pick] = work[pick], work[r]
        inv = 1 / work[r][cidx]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][cidx] != 0:
                f = work[i][cidx]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append((r, cidx))
        r += 1
    for rr, cidx in pivots:
        f = target[cidx]
        if f != 0:
            target = [x - f * y for x, y in zip(target, work[rr])]
    return all(x == 0 for x in target)


# ---------------------------------------------------------------------------
# Threshold queries against a piecewise bound
# ---------------------------------------------------------------------------


def threshold_rational(bound: PiecewiseBound, target: Fraction) -> Breakpoint:
    """Smallest parameter value at which the bound reaches ``target``."""
    target_rat = ParamRat.const(target)
    for seg in bound.segments:
        if sign_at(seg.value - target_rat, seg.interval.lo) >= 0:
            return seg.interval.lo
        pts = crossings(seg.value, target_rat, seg.interval)
        if pts:
            return pts[0]
    raise TargetOutOfRange(f"bound never reaches {target}")


def threshold_sqrt(bound: PiecewiseBound, radicand: Fraction) -> Breakpoint:
    """Smallest parameter value at which the bound reaches sqrt(radicand).

    Works entirely in rational arithmetic by squaring: candidate points are
    roots of value^2 - radicand, filtered to the positive branch.
    """
    rad = ParamRat.const(radicand)
    for seg in bound.segments:
        v = seg.value
        sq = v * v - rad
        if sign_at(v, seg.interval.lo) > 0 and sign_at(sq, seg.interval.lo) >= 0:
            return seg.interval.lo
        for p in crossings(v * v, rad, seg.interval):
            if sign_at(v, p) > 0:
                return p
    raise TargetOutOfRange(f"bound never reaches sqrt({radicand})")
