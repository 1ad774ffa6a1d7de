"""Pure-Python enumeration kernel.

This is the portable twin of the compiled kernel in ``_ckernel.pyx``: both
implement exactly the same contract and must produce bit-identical output.

The kernel owns the hot loop of the optimizer: for every active subset of
inequality constraints (size-capped, merged with all equalities) it solves
the equality system by fraction-free Bareiss elimination over Z[t] (t is the
free constraint parameter), restricts the quadratic objective to the
intersection, solves the stationarity system over the free variables, and
emits the surviving candidate as canonically reduced integer polynomial
fractions.  Underdetermined or inconsistent stationarity systems are ridges
and are discarded.

Problem encoding (a plain nested tuple, picklable for worker processes):

    (nvars,
     rows,        # per constraint: (coeff IntPoly * nvars, const IntPoly)
     eq_idx,      # indices of equality rows (always active)
     ineq_idx,    # indices of inequality rows (enumerated)
     conflict,    # per constraint: bitmask of pairwise-inconsistent partners
     objective,   # (quad terms (i, j, IntPoly), lin terms (i, IntPoly),
                  #  const IntPoly, den IntPoly)
     max_rank)    # active-subset size cap

A candidate is ``(subset, witness, value)`` with witness a tuple of
(num, den) IntPoly pairs per variable and value one such pair; pairs are
coprime with primitive positive-leading denominator, so equal candidates are
structurally equal across backends and worker partitions.
"""

from __future__ import annotations

from itertools import combinations

from .._intpoly import (PZ_ONE, PZ_ZERO, pz_add, pz_divexact, pz_gcd, pz_lcm,
                        pz_mul, pz_neg, pz_sub)

PR_ZERO = (PZ_ZERO, PZ_ONE)
PR_ONE = (PZ_ONE, PZ_ONE)

BACKEND = "python"


def pr_norm(num, den):
    """Canonical pair: coprime, primitive, positive-leading denominator."""
    if not num:
        return PR_ZERO
    g = pz_gcd(num, den)
    if g != PZ_ONE:
        num = pz_divexact(num, g)
        den = pz_divexact(den, g)
    if den[-1] < 0:
        num = pz_neg(num)
        den = pz_neg(den)
    return num, den


def pr_add(a, b):
    if not a[0]:
        return b
    if not b[0]:
        return a
    return pr_norm(pz_add(pz_mul(a[0], b[1]), pz_mul(b[0], a[1])),
                   pz_mul(a[1], b[1]))


def pr_sub(a, b):
    if not b[0]:
        return a
    return pr_norm(pz_sub(pz_mul(a[0], b[1]), pz_mul(b[0], a[1])),
                   pz_mul(a[1], b[1]))


def pr_neg(a):
    return (pz_neg(a[0]), a[1])


def pr_mul(a, b):
    if not a[0] or not b[0]:
        return PR_ZERO
    return pr_norm(pz_mul(a[0], b[0]), pz_mul(a[1], b[1]))


def pr_div(a, b):
    if not b[0]:
        raise ZeroDivisionError("pair division by zero")
    if not a[0]:
        return PR_ZERO
    return pr_norm(pz_mul(a[0], b[1]), pz_mul(a[1], b[0]))


def ff_solve(rows, nvars):
    """Fraction-free Gaussian elimination over Z[t] with back-substitution.

    ``rows`` holds constraint rows [c_0 .. c_{nvars-1}, const] read as
    sum c_i x_i + const = 0.  Pivot columns are taken in ascending variable
    order (first row with a nonzero entry wins).  Returns
    ``(forms, free)`` or ``(None, None)`` when inconsistent; ``forms`` maps
    every variable to a linear form (coeff-pair dict over free vars, const
    pair) and free variables map to identity forms.
    """
    m = len(rows)
    M = [list(r) for r in rows]
    ncols = nvars + 1
    prev = PZ_ONE
    pivots = []
    pr = 0
    for c in range(nvars):
        pi = -1
        for i in range(pr, m):
            if M[i][c]:
                pi = i
                break
        if pi < 0:
            continue
        if pi != pr:
            M[pr], M[pi] = M[pi], M[pr]
        piv = M[pr][c]
        row_p = M[pr]
        one_prev = prev == PZ_ONE
        for i in range(pr + 1, m):
            row_i = M[i]
            mic = row_i[c]
            if mic:
                for j in range(c + 1, ncols):
                    num = pz_sub(pz_mul(piv, row_i[j]), pz_mul(mic, row_p[j]))
                    row_i[j] = num if one_prev else pz_divexact(num, prev)
                row_i[c] = PZ_ZERO
            else:
                for j in range(c + 1, ncols):
                    if row_i[j]:
                        num = pz_mul(piv, row_i[j])
                        row_i[j] = num if one_prev else pz_divexact(num, prev)
        pivots.append((pr, c))
        prev = piv
        pr += 1
    for i in range(pr, m):
        if M[i][nvars]:
            return None, None
    pivot_cols = {c for _, c in pivots}
    free = tuple(c for c in range(nvars) if c not in pivot_cols)
    forms = {f: ({f: PR_ONE}, PR_ZERO) for f in free}
    for r, c in reversed(pivots):
        piv = (M[r][c], PZ_ONE)
        row = M[r]
        coeffs = {}
        const = (pz_neg(row[nvars]), PZ_ONE) if row[nvars] else PR_ZERO
        for j in range(c + 1, nvars):
            mj = row[j]
            if not mj:
                continue
            neg = (pz_neg(mj), PZ_ONE)
            cj, kj = forms[j]
            for v, cv in cj.items():
                add = pr_mul(neg, cv)
                coeffs[v] = pr_add(coeffs[v], add) if v in coeffs else add
            if kj[0]:
                const = pr_add(const, pr_mul(neg, kj))
        coeffs = {v: pr_div(cv, piv) for v, cv in coeffs.items() if cv[0]}
        forms[c] = (coeffs, pr_div(const, piv))
    return forms, free


def _reduce_objective(objective, forms):
    """Restrict the objective to the intersection; coefficients become pairs."""
    quad_t, lin_t, const_p, _den = objective
    rq = {}
    rl = {}
    rc = (const_p, PZ_ONE) if const_p else PR_ZERO
    for i, j, q in quad_t:
        qp = (q, PZ_ONE)
        ci, ki = forms[i]
        cj, kj = forms[j]
        for v, cv in ci.items():
            for w, cw in cj.items():
                key = (v, w) if v <= w else (w, v)
                add = pr_mul(qp, pr_mul(cv, cw))
                rq[key] = pr_add(rq[key], add) if key in rq else add
        if kj[0]:
            for v, cv in ci.items():
                add = pr_mul(qp, pr_mul(cv, kj))
                rl[v] = pr_add(rl[v], add) if v in rl else add
        if ki[0]:
            for w, cw in cj.items():
                add = pr_mul(qp, pr_mul(ki, cw))
                rl[w] = pr_add(rl[w], add) if w in rl else add
            if kj[0]:
                rc = pr_add(rc, pr_mul(qp, pr_mul(ki, kj)))
    for i, lc in lin_t:
        lp = (lc, PZ_ONE)
        ci, ki = forms[i]
        for v, cv in ci.items():
            add = pr_mul(lp, cv)
            rl[v] = pr_add(rl[v], add) if v in rl else add
        if ki[0]:
            rc = pr_add(rc, pr_mul(lp, ki))
    rq = {k: v for k, v in rq.items() if v[0]}
    rl = {k: v for k, v in rl.items() if v[0]}
    return rq, rl, rc


def _stationary_point(rq, rl, free):
    """Solve grad = 0 over the free vars; None when ridge/inconsistent."""
    fl = sorted(free)
    n = len(fl)
    pos = {v: k for k, v in enumerate(fl)}
    rows = []
    for a in fl:
        coeffs = {}
        for (i, j), q in rq.items():
            if i == a:
                if j == a:
                    q2 = pr_add(q, q)
                    coeffs[a] = pr_add(coeffs[a], q2) if a in coeffs else q2
                else:
                    coeffs[j] = pr_add(coeffs[j], q) if j in coeffs else q
            elif j == a:
                coeffs[i] = pr_add(coeffs[i], q) if i in coeffs else q
        const = rl.get(a, PR_ZERO)
        # clear pair denominators into an integer-polynomial row
        lcm = PZ_ONE
        for p in coeffs.values():
            if p[1] != PZ_ONE:
                lcm = pz_lcm(lcm, p[1])
        if const[0] and const[1] != PZ_ONE:
            lcm = pz_lcm(lcm, const[1])
        row = []
        for v in fl:
            p = coeffs.get(v)
            if p is None or not p[0]:
                row.append(PZ_ZERO)
            elif lcm == p[1]:
                row.append(p[0])
            else:
                row.append(pz_mul(p[0], pz_divexact(lcm, p[1])))
        if const[0]:
            row.append(pz_mul(const[0], pz_divexact(lcm, const[1]))
                       if lcm != const[1] else const[0])
        else:
            row.append(PZ_ZERO)
        rows.append(row)
    forms, g_free = ff_solve(rows, n)
    if forms is None or g_free:
        return None
    return {fl[k]: forms[pos[fl[k]]][1] for k in range(n)}


def _eval_form(form, vals):
    coeffs, const = form
    acc = const
    for v, cv in coeffs.items():
        acc = pr_add(acc, pr_mul(cv, vals[v]))
    return acc


def _eval_reduced(rq, rl, rc, vals):
    acc = rc
    for (i, j), q in rq.items():
        acc = pr_add(acc, pr_mul(q, pr_mul(vals[i], vals[j])))
    for i, lc in rl.items():
        acc = pr_add(acc, pr_mul(lc, vals[i]))
    return acc


def run_enumeration(problem, offset=0, stride=1):
    """Process every stride-th active subset starting at ``offset``.

    Returns ``(stats, candidates)`` with stats a 4-tuple
    (attempted, inconsistent, discarded_ridges, emitted).
    """
    nvars, rows, eq_idx, ineq_idx, conflict, objective, max_rank = problem
    base = [list(r[0]) + [r[1]] for r in rows]
    eq_rows = [base[e] for e in eq_idx]
    bit = [1 << i for i in range(len(rows))]
    eq_acc = 0
    eq_bad = False
    for e in eq_idx:
        if eq_acc & bit[e] or conflict[e] & bit[e]:
            eq_bad = True
        eq_acc |= conflict[e]
    obj_den_pair = (objective[3], PZ_ONE)

    attempted = inconsistent = discarded = emitted = 0
    candidates = []
    counter = -1
    for k in range(max_rank + 1):
        for combo in combinations(ineq_idx, k):
            counter += 1
            if counter % stride != offset:
                continue
            attempted += 1
            acc = eq_acc
            bad = eq_bad
            if not bad:
                for i in combo:
                    b = bit[i]
                    if acc & b or conflict[i] & b:
                        bad = True
                        break
                    acc |= conflict[i]
            if bad:
                inconsistent += 1
                continue
            sys_rows = eq_rows + [base[i] for i in combo]
            forms, free = ff_solve(sys_rows, nvars)
            if forms is None:
                inconsistent += 1
                continue
            rq, rl, rc = _reduce_objective(objective, forms)
            if free:
                vals = _stationary_point(rq, rl, free)
                if vals is None:
                    discarded += 1
                    continue
                value = _eval_reduced(rq, rl, rc, vals)
                witness = tuple(_eval_form(forms[v], vals)
                                for v in range(nvars))
            else:
                value = rc
                witness = tuple(forms[v][1] for v in range(nvars))
            value = pr_div(value, obj_den_pair)
            emitted += 1
            candidates.append((combo, witness, value))
    return (attempted, inconsistent, discarded, emitted), candidates
