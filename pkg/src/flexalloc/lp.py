"""Exact rational linear programming and the fractional FBAP programs.

``simplex_solve`` is a bounded-variable primal simplex over ``Fraction`` with
Bland's rule. ``build_lp_fba`` writes the capacity-reduced fractional FBAP
program with the split wide variables; ``round_lp_fba`` turns its optimum into
an integral allocation by flooring the extra wide amounts and re-solving the
interval (consecutive-ones) program for the base amounts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .model import Instance, event_points


class LpInfeasible(Exception):
    pass


class LpUnbounded(Exception):
    pass


class BadParams(ValueError):
    pass


class WTooSmall(ValueError):
    pass


class NonIntegralVertex(AssertionError):
    pass


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted on the exact LP path")
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


@dataclass
class LpProblem:
    """max objective . x  s.t.  rows (sum coef * x <= rhs),  lo <= x <= hi."""
    names: List[str] = field(default_factory=list)
    lo: List[Fraction] = field(default_factory=list)
    hi: List[Fraction] = field(default_factory=list)
    objective: Dict[int, Fraction] = field(default_factory=dict)
    rows: List[tuple] = field(default_factory=list)    # (dict var -> coef, rhs, label)

    def add_var(self, name: str, lo=0, hi=None) -> int:
        lo = as_fraction(lo)
        hi = None if hi is None else as_fraction(hi)
        if hi is not None and hi < lo:
            raise BadParams(f"variable {name}: lower bound {lo} > upper bound {hi}")
        self.names.append(name)
        self.lo.append(lo)
        self.hi.append(hi)
        return len(self.names) - 1

    def add_row(self, coefs: dict, rhs, label: str = ""):
        for v in coefs:
            if not 0 <= v < len(self.names):
                raise BadParams(f"row {label!r} references unknown variable {v}")
        self.rows.append(({v: as_fraction(c) for v, c in coefs.items() if c}, as_fraction(rhs), label))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def dump(self) -> str:
        """LP-format-like text, for inspection only."""
        def term(c, v):
            return f"{'+' if c >= 0 else '-'} {abs(c)} {self.names[v]}"
        lines = ["maximize", "  obj: " + " ".join(term(c, v) for v, c in sorted(self.objective.items())),
                 "subject to"]
        for k, (coefs, rhs, label) in enumerate(self.rows):
            body = " ".join(term(c, v) for v, c in sorted(coefs.items()))
            lines.append(f"  {label or f'r{k}'}: {body} <= {rhs}")
        lines.append("bounds")
        for v, name in enumerate(self.names):
            hi = "inf" if self.hi[v] is None else self.hi[v]
            lines.append(f"  {self.lo[v]} <= {name} <= {hi}")
        lines.append("end")
        return "\n".join(lines)


@dataclass
class LpSolution:
    values: List[Fraction]
    objective: Fraction
    names: List[str] = field(default_factory=list)
    status: str = "optimal"
    pivots: int = 0

    def value(self, name: str) -> Fraction:
        return self.values[self.names.index(name)]

    def get(self, name: str, default=None):
        return self.values[self.names.index(name)] if name in self.names else default

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(zip(self.names, self.values))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def simplex_solve(prob: LpProblem) -> LpSolution:
    """Exact optimal basic solution; raises LpInfeasible / LpUnbounded."""
    n = len(prob.names)
    m = len(prob.rows)
    # shift to 0 <= x' <= u
    upper = []
    for v in range(n):
        upper.append(None if prob.hi[v] is None else prob.hi[v] - prob.lo[v])
    A = [[Fraction(0)] * n for _ in range(m)]
    b = []
    for r, (coefs, rhs, _) in enumerate(prob.rows):
        for v, c in coefs.items():
            A[r][v] = c
        b.append(rhs - sum(c * prob.lo[v] for v, c in coefs.items()))

    # columns: structural 0..n-1, slacks n..n+m-1, artificials after
    ncol = n + m
    art_rows = [r for r in range(m) if b[r] < 0]
    ncol += len(art_rows)
    T = []
    basis = []
    vals = [Fraction(0)] * ncol
    ub = upper + [None] * m + [None] * len(art_rows)
    for r in range(m):
        row = A[r] + [Fraction(0)] * (m + len(art_rows))
        if b[r] < 0:
            row = [-x for x in row]
            row[n + r] = Fraction(-1)
            a = n + m + art_rows.index(r)
            row[a] = Fraction(1)
            basis.append(a)
            vals[a] = -b[r]
        else:
            row[n + r] = Fraction(1)
            basis.append(n + r)
            vals[n + r] = b[r]
        T.append(row)

    pivots = 0
    if art_rows:
        cost = [Fraction(0)] * ncol
        for a in range(n + m, ncol):
            cost[a] = Fraction(-1)
        pivots += _run(T, basis, vals, ub, cost)
        if any(vals[a] > 0 for a in range(n + m, ncol)):
            raise LpInfeasible("no feasible point")
        for a in range(n + m, ncol):
            ub[a] = Fraction(0)
    cost = [Fraction(0)] * ncol
    for v, c in prob.objective.items():
        cost[v] = as_fraction(c)
    pivots += _run(T, basis, vals, ub, cost)

    x = [vals[v] + prob.lo[v] for v in range(n)]
    obj = sum(as_fraction(c) * x[v] for v, c in prob.objective.items())
    return LpSolution(x, Fraction(obj), list(prob.names), "optimal", pivots)


def _run(T, basis, vals, ub, cost) -> int:
    """Primal simplex iterations with bounded variables; mutates the tableau in place."""
    m = len(T)
    ncol = len(vals)
    pivots = 0
    while True:
        in_basis = set(basis)
        # reduced costs d_j = c_j - c_B . T_j
        entering = None
        direction = 0
        for j in range(ncol):
            if j in in_basis:
                continue
            d = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m) if T[i][j])
            if d > 0 and (ub[j] is None or vals[j] < ub[j]):
                entering, direction = j, 1
                break
            if d < 0 and vals[j] > 0:
                entering, direction = j, -1
                break
        if entering is None:
            return pivots
        j = entering
        # ratio test; the entering variable's own bound flip is candidate -1
        best_t = None
        best_key = None
        if direction > 0 and ub[j] is not None:
            best_t, best_key = ub[j] - vals[j], (j, -1)
        elif direction < 0:
            best_t, best_key = vals[j], (j, -1)
        for i in range(m):
            alpha = direction * T[i][j]
            if alpha == 0:
                continue
            bv = basis[i]
            if alpha > 0:
                t = vals[bv] / alpha
            elif ub[bv] is not None:
                t = (ub[bv] - vals[bv]) / (-alpha)
            else:
                continue
            key = (bv, i)
            if best_t is None or t < best_t or (t == best_t and key < best_key):
                best_t, best_key = t, key
        if best_t is None:
            raise LpUnbounded("objective unbounded")
        t = best_t
        if t:
            vals[j] += direction * t
            for i in range(m):
                if T[i][j]:
                    vals[basis[i]] -= direction * t * T[i][j]
        r = best_key[1]
        if r < 0:
            continue
        # pivot on (r, j)
        piv = T[r][j]
        row_r = [x / piv for x in T[r]]
        T[r] = row_r
        for i in range(m):
            if i != r and T[i][j]:
                f = T[i][j]
                Ti = T[i]
                T[i] = [Ti[c] - f * row_r[c] if row_r[c] else Ti[c] for c in range(ncol)]
        leaving = basis[r]
        basis[r] = j
        assert vals[leaving] == 0 or vals[leaving] == ub[leaving], "leaving variable off its bounds"
        pivots += 1


# --- the fractional FBAP program ---------------------------------------------

def _check_eps(epsilon, name="epsilon"):
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise BadParams(f"{name} must lie strictly between 0 and 1, got {eps}")
    return eps


def wide_threshold(W: int, epsilon) -> Fraction:
    return as_fraction(epsilon) * W


def wide_ids(inst: Instance, epsilon) -> list:
    thr = wide_threshold(inst.capacity, epsilon)
    return [j.id for j in inst.jobs if j.r_max >= thr]


def reduced_capacity(W: int, epsilon) -> int:
    return math.floor((1 - as_fraction(epsilon)) * W)


def base_cap(W: int, epsilon) -> int:
    return math.ceil(as_fraction(epsilon) * W)


def _capacity_rows(inst: Instance, members):
    """One row per start coordinate, minus duplicates and rows contained in another row."""
    sets = []
    for t in event_points(inst):
        s = frozenset(members(t))
        if s:
            sets.append((t, s))
    unique = {}
    for t, s in sets:
        unique.setdefault(s, t)
    keep = []
    for s, t in unique.items():
        if any(s < other for other in unique):
            continue
        keep.append((t, s))
    keep.sort(key=lambda ts: ts[0])
    return keep


def build_lp_fba(inst: Instance, epsilon, beta, opt_guess) -> LpProblem:
    eps = _check_eps(epsilon)
    beta = _check_eps(beta, "beta")
    guess = as_fraction(opt_guess)
    if guess < 0:
        raise BadParams("opt_guess must be >= 0")
    W = inst.capacity
    thr = wide_threshold(W, eps)
    cap_x = base_cap(W, eps)
    prob = LpProblem()
    xv, yv = {}, {}
    for j in inst.jobs:
        xv[j.id] = prob.add_var(f"x{j.id}", 0, min(j.r_max, cap_x))
        if j.r_max >= thr:
            yv[j.id] = prob.add_var(f"y{j.id}", 0, j.r_max - cap_x)
    for j in inst.jobs:
        prob.objective[xv[j.id]] = Fraction(j.profit)
        if j.id in yv:
            prob.objective[yv[j.id]] = Fraction(j.profit)
    if yv:
        prob.add_row({yv[i]: inst.job(i).profit for i in yv}, beta * (1 - eps) * guess, "wide_profit")
    jobs = inst.jobs
    rhs = reduced_capacity(W, eps)
    for t, ids in _capacity_rows(inst, lambda t: [j.id for j in jobs if j.start <= t < j.end]):
        coefs = {}
        for i in ids:
            coefs[xv[i]] = 1
            if i in yv:
                coefs[yv[i]] = 1
        prob.add_row(coefs, rhs, f"cap_t{t}")
    return prob


@dataclass
class RoundedLp:
    x: Dict[int, int]                  # integral base amounts
    b: Dict[int, int]                  # floored extra amounts of wide jobs
    fractional_objective: Fraction
    lp_round: LpProblem
    lp_round_solution: LpSolution

    def amounts(self) -> Dict[int, int]:
        return {i: self.x.get(i, 0) + self.b.get(i, 0) for i in set(self.x) | set(self.b)}

    def profit(self, inst: Instance) -> int:
        jobs = inst.by_id()
        return sum(jobs[i].profit * a for i, a in self.amounts().items())


def normalize_wide(inst: Instance, frac: LpSolution, epsilon):
    """Shift mass from y_i to x_i so that y_i > 0 implies x_i = ceil(eps W)."""
    cap_x = base_cap(inst.capacity, epsilon)
    x = {j.id: frac.value(f"x{j.id}") for j in inst.jobs}
    y = {}
    for j in inst.jobs:
        v = frac.get(f"y{j.id}")
        if v is not None:
            y[j.id] = v
    for i, yi in y.items():
        if yi > 0 and x[i] < cap_x:
            d = min(yi, cap_x - x[i])
            x[i] += d
            y[i] -= d
    return x, y


def round_lp_fba(inst: Instance, frac: LpSolution, epsilon,
                 check_w: bool = True) -> RoundedLp:
    eps = _check_eps(epsilon)
    W = inst.capacity
    if check_w and W < 1 / eps ** 2:
        raise WTooSmall(f"W={W} < 1/eps^2 = {1 / eps ** 2}")
    x, y = normalize_wide(inst, frac, eps)
    b = {i: math.floor(yi) for i, yi in y.items() if yi > 0}
    cap_x = base_cap(W, eps)
    rnd = LpProblem()
    xv = {}
    for j in inst.jobs:
        xv[j.id] = rnd.add_var(f"x{j.id}", 0, min(j.r_max, cap_x))
        rnd.objective[xv[j.id]] = Fraction(j.profit)
    rhs = reduced_capacity(W, eps)
    jobs = inst.jobs
    for t, ids in _capacity_rows(inst, lambda t: [j.id for j in jobs if j.start <= t < j.end]):
        fixed = sum(b.get(i, 0) for i in ids)
        rnd.add_row({xv[i]: 1 for i in ids}, rhs - fixed, f"cap_t{t}")
    sol = simplex_solve(rnd)
    if not sol.is_integral():
        raise NonIntegralVertex(f"LP_round vertex not integral: {sol.values}")
    xi = {j.id: int(sol.value(f"x{j.id}")) for j in inst.jobs}
    return RoundedLp(xi, b, frac.objective, rnd, sol)
