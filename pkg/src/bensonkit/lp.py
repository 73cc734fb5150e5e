"""Exact rational linear programming with verifiable certificates.

Two-phase simplex over Fraction arithmetic with Bland's entering and
leaving rule, so cycling is impossible and runs are deterministic. Every
outcome carries data that re-checks by plain rational arithmetic:

* optimal: a feasible point plus row multipliers proving the bound,
* unbounded: a feasible point plus a strictly improving recession ray,
* infeasible: a nonnegative row combination equivalent to 0 <= -1.

Free variables are split into differences of nonnegative pairs; no
scaling or perturbation is ever applied.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .errors import DimensionMismatch, InternalCheckError
from .rationals import dot, solve_linear, vector

if TYPE_CHECKING:  # pragma: no cover - type-only import avoids a cycle
    from .polyhedra import HPolyhedron

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_Z = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPProblem:
    objective: tuple
    sense: str
    feasible_set: "HPolyhedron"

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise DimensionMismatch(f"sense must be 'min' or 'max', got {self.sense!r}")
        object.__setattr__(self, "objective",
                           vector(self.objective, self.feasible_set.dim))


@dataclass(frozen=True)
class LPOutcome:
    """Solver result plus its certificate.

    ``dual_ineq`` holds one multiplier per inequality row, ``dual_eq``
    one per equality row. For optimal outcomes the multipliers satisfy
    ``A^T dual_ineq + E^T dual_eq == objective`` (max) or ``== -objective``
    (min) with ``dual_ineq >= 0``, and the combined right-hand sides
    reproduce the optimal value exactly. For infeasible outcomes the
    combination cancels to the contradiction 0 <= -1.
    """

    status: str
    point: tuple | None = None
    value: Fraction | None = None
    ray: tuple | None = None
    dual_ineq: tuple | None = None
    dual_eq: tuple | None = None

    def verify(self, problem: LPProblem) -> None:
        """Re-check the certificate by exact arithmetic; raise on failure."""
        P = problem.feasible_set
        c = problem.objective
        n = P.dim
        if self.status == OPTIMAL:
            if self.point is None or self.value is None:
                raise InternalCheckError("optimal outcome missing point or value")
            if not P.contains(self.point):
                raise InternalCheckError("optimal point infeasible")
            if dot(c, self.point) != self.value:
                raise InternalCheckError("objective value mismatch at optimal point")
            lam, mu = self.dual_ineq, self.dual_eq
            if lam is None or mu is None:
                raise InternalCheckError("optimal outcome missing dual multipliers")
            if any(l < 0 for l in lam):
                raise InternalCheckError("negative multiplier on an inequality row")
            target = c if problem.sense == "max" else tuple(-x for x in c)
            for k in range(n):
                combo = sum((l * a[k] for l, a in zip(lam, P.ineq_lhs)), _Z)
                combo += sum((m * e[k] for m, e in zip(mu, P.eq_lhs)), _Z)
                if combo != target[k]:
                    raise InternalCheckError("dual combination does not match objective")
            bound = dot(lam, P.ineq_rhs) + dot(mu, P.eq_rhs)
            expect = self.value if problem.sense == "max" else -self.value
            if bound != expect:
                raise InternalCheckError("dual bound does not match optimal value")
        elif self.status == UNBOUNDED:
            if self.point is None or self.ray is None:
                raise InternalCheckError("unbounded outcome missing point or ray")
            if not P.contains(self.point):
                raise InternalCheckError("unbounded outcome's point infeasible")
            if all(r == 0 for r in self.ray):
                raise InternalCheckError("zero ray")
            if any(dot(a, self.ray) > 0 for a in P.ineq_lhs):
                raise InternalCheckError("ray leaves an inequality halfspace")
            if any(dot(e, self.ray) != 0 for e in P.eq_lhs):
                raise InternalCheckError("ray leaves an equality hyperplane")
            gain = dot(c, self.ray)
            if problem.sense == "max" and gain <= 0:
                raise InternalCheckError("ray does not improve a max objective")
            if problem.sense == "min" and gain >= 0:
                raise InternalCheckError("ray does not improve a min objective")
        elif self.status == INFEASIBLE:
            lam, mu = self.dual_ineq, self.dual_eq
            if lam is None or mu is None:
                raise InternalCheckError("infeasible outcome missing multipliers")
            if any(l < 0 for l in lam):
                raise InternalCheckError("negative multiplier in infeasibility certificate")
            for k in range(n):
                combo = sum((l * a[k] for l, a in zip(lam, P.ineq_lhs)), _Z)
                combo += sum((m * e[k] for m, e in zip(mu, P.eq_lhs)), _Z)
                if combo != 0:
                    raise InternalCheckError("infeasibility combination does not cancel")
            if dot(lam, P.ineq_rhs) + dot(mu, P.eq_rhs) >= 0:
                raise InternalCheckError("infeasibility combination bound not negative")
        else:
            raise InternalCheckError(f"unknown status {self.status!r}")


class _Audit:
    """Counter used by the certificate-auditing context manager."""

    def __init__(self):
        self.count = 0


_audit: _Audit | None = None


@contextmanager
def audit_certificates():
    """Verify every certificate produced while the context is active.

    Yields a counter whose ``count`` field reports how many solves were
    audited. Any failed verification raises InternalCheckError at the
    offending solve.
    """
    global _audit
    previous = _audit
    _audit = _Audit()
    try:
        yield _audit
    finally:
        _audit = previous


# ---------------------------------------------------------------------------
# Simplex worker
# ---------------------------------------------------------------------------

def _pivot(T, rhs, zrow, basis, r, c):
    piv = T[r][c]
    inv = 1 / piv
    T[r] = [x * inv for x in T[r]]
    rhs[r] *= inv
    prow = T[r]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            row = T[i]
            T[i] = [x - f * y for x, y in zip(row, prow)]
            rhs[i] -= f * rhs[r]
    if zrow is not None and zrow[c] != 0:
        f = zrow[c]
        for k in range(len(zrow)):
            zrow[k] -= f * prow[k]
    basis[r] = c


def _initial_zrow(T, rhs, basis, costs):
    zrow = list(costs)
    for r, bcol in enumerate(basis):
        cb = costs[bcol]
        if cb != 0:
            for k in range(len(zrow)):
                zrow[k] -= cb * T[r][k]
    return zrow


def _run(T, rhs, basis, costs, enterable):
    """Minimize; Bland's rule. Returns ("optimal", None) or ("unbounded", col)."""
    zrow = _initial_zrow(T, rhs, basis, costs)
    while True:
        enter = None
        for j in enterable:
            if zrow[j] < 0:
                enter = j
                break
        if enter is None:
            return OPTIMAL, None
        leave = None
        best = None
        for r in range(len(T)):
            t = T[r][enter]
            if t > 0:
                ratio = rhs[r] / t
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave is None:
            return UNBOUNDED, enter
        _pivot(T, rhs, zrow, basis, leave, enter)


def _solve_raw(P: "HPolyhedron", objective: Sequence[Fraction], sense: str) -> LPOutcome:
    n = P.dim
    n_ineq = len(P.ineq_lhs)
    n_eq = len(P.eq_lhs)
    m_rows = n_ineq + n_eq
    n_struct = 2 * n + n_ineq

    # Standard form over z >= 0 with x = u - v and one slack per inequality.
    # Inequality rows with a nonnegative right-hand side start with their
    # slack basic, so they need no artificial variable; rows flipped to
    # make the right-hand side nonnegative, and all equality rows, get one.
    rows: list[list[Fraction]] = []
    b: list[Fraction] = []
    sigma: list[Fraction] = []
    needs_art: list[bool] = []
    for i in range(n_ineq):
        a = P.ineq_lhs[i]
        row = list(a) + [-x for x in a] + [_Z] * n_ineq
        row[2 * n + i] = _ONE
        rb = P.ineq_rhs[i]
        if rb < 0:
            row = [-x for x in row]
            rb = -rb
            sigma.append(Fraction(-1))
            needs_art.append(True)
        else:
            sigma.append(_ONE)
            needs_art.append(False)
        rows.append(row)
        b.append(rb)
    for j in range(n_eq):
        e = P.eq_lhs[j]
        row = list(e) + [-x for x in e] + [_Z] * n_ineq
        rd = P.eq_rhs[j]
        if rd < 0:
            row = [-x for x in row]
            rd = -rd
            sigma.append(Fraction(-1))
        else:
            sigma.append(_ONE)
        needs_art.append(True)
        rows.append(row)
        b.append(rd)

    art_col: dict[int, int] = {}
    for r in range(m_rows):
        if needs_art[r]:
            art_col[r] = n_struct + len(art_col)
    n_art = len(art_col)

    A0: list[list[Fraction]] = []
    basis: list[int] = []
    for r in range(m_rows):
        full = rows[r] + [_Z] * n_art
        if r in art_col:
            full[art_col[r]] = _ONE
            basis.append(art_col[r])
        else:
            basis.append(2 * n + r)  # the row's own slack column
        A0.append(full)
    T = [list(row) for row in A0]
    rhs = list(b)
    structural = range(n_struct)

    min_obj = list(objective) if sense == "min" else [-x for x in objective]

    def duals(row_ids: list[int], costs: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """Recover y from B^T y = c_B over the kept rows; map to original rows."""
        k = len(row_ids)
        bt = [[A0[row_ids[j]][basis[i]] for j in range(k)] for i in range(k)]
        cb = [costs[basis[i]] for i in range(k)]
        y = solve_linear(bt, cb)
        if y is None:
            raise InternalCheckError("singular basis while extracting duals")
        full = [_Z] * m_rows
        for j, rid in enumerate(row_ids):
            full[rid] = y[j]
        lam = [-sigma[i] * full[i] for i in range(n_ineq)]
        mu = [-sigma[n_ineq + j] * full[n_ineq + j] for j in range(n_eq)]
        return lam, mu

    row_ids = list(range(m_rows))
    if n_art:
        # Phase 1: drive the artificial variables to zero.
        cost1 = [_Z] * n_struct + [_ONE] * n_art
        _run(T, rhs, basis, cost1, structural)
        phase1_value = sum((rhs[r] for r in range(len(T)) if basis[r] >= n_struct), _Z)
        if phase1_value > 0:
            lam, mu = duals(row_ids, cost1)
            # Scale so the contradiction reads 0 <= -1 exactly.
            total = dot(lam, P.ineq_rhs) + dot(mu, P.eq_rhs)
            scale = -1 / total
            lam = [scale * l for l in lam]
            mu = [scale * m for m in mu]
            return LPOutcome(INFEASIBLE, dual_ineq=tuple(lam), dual_eq=tuple(mu))

        # Pivot leftover artificials out; rows that cannot pivot are redundant.
        r = 0
        while r < len(T):
            if basis[r] >= n_struct:
                col = next((j for j in structural if T[r][j] != 0), None)
                if col is None:
                    T.pop(r)
                    rhs.pop(r)
                    basis.pop(r)
                    row_ids.pop(r)
                    continue
                _pivot(T, rhs, None, basis, r, col)
            r += 1

    # Phase 2 on the real objective.
    cost2 = min_obj + [-x for x in min_obj] + [_Z] * n_ineq + [_Z] * n_art
    status, enter = _run(T, rhs, basis, cost2, structural)

    def x_of(values: dict[int, Fraction]) -> tuple[Fraction, ...]:
        return tuple(values.get(k, _Z) - values.get(n + k, _Z) for k in range(n))

    if status == UNBOUNDED:
        direction = {enter: _ONE}
        for r in range(len(T)):
            if T[r][enter] != 0:
                direction[basis[r]] = -T[r][enter]
        point = x_of({basis[r]: rhs[r] for r in range(len(T))})
        ray = x_of(direction)
        return LPOutcome(UNBOUNDED, point=point, ray=ray)

    point = x_of({basis[r]: rhs[r] for r in range(len(T))})
    value = dot(objective, point)
    lam, mu = duals(row_ids, cost2)
    return LPOutcome(OPTIMAL, point=point, value=value,
                     dual_ineq=tuple(lam), dual_eq=tuple(mu))


def solve(problem: LPProblem) -> LPOutcome:
    """Classify the LP as optimal, unbounded, or infeasible, with certificate."""
    outcome = _solve_raw(problem.feasible_set, problem.objective, problem.sense)
    if _audit is not None:
        outcome.verify(problem)
        _audit.count += 1
    return outcome


def feasible_point(P: "HPolyhedron") -> tuple | None:
    """A rational point of P, or None; phase-1 simplex only."""
    out = solve(LPProblem((_Z,) * P.dim, "min", P))
    return out.point if out.status == OPTIMAL else None
