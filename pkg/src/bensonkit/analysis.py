"""Set-level analysis: candidate generation, classification, and the
structural checks that hold for every linear problem.

The solution sets involved are infinite, so they are never materialized;
all checks run pointwise over finite certified candidate sets. A report
therefore verifies a structural statement on its candidates only, which
it says explicitly.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lp
from .efficiency import (PLAIN, Verdict, benson_forms_agree, is_benson_proper,
                         is_eps_efficient)
from .errors import DimensionTooLarge, InternalCheckError
from .fixtures import halfplane_problem, sign_flip_problem, wedge_problem
from .model import LinearVOP, Perturbation, shift_of, validate_perturbation
from .polyhedra import (HPolyhedron, PolyCone, boxed_extremal_rays, box,
                        nonneg_orthant, orthant_cone, recession_cone)
from .rationals import (frac, frac_str, solve_linear, vec_add, vec_scale,
                        vec_sub, vector, vector_str)

_Z = Fraction(0)

_DIM_CAP_ENV = "BENSONKIT_MAX_DIM"
_DEFAULT_DIM_CAP = 6


def _dim_cap() -> int:
    raw = os.environ.get(_DIM_CAP_ENV)
    if raw is None:
        return _DEFAULT_DIM_CAP
    try:
        return int(raw)
    except ValueError:
        return _DEFAULT_DIM_CAP


# ---------------------------------------------------------------------------
# Candidate generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CandidateSet:
    """Finite certified stand-in for the infinite solution sets."""

    points: tuple
    provenance: tuple  # one tag per point: vertex | midpoint | ray | lattice | anchor

    def __len__(self):
        return len(self.points)


def enumerate_vertices(P: HPolyhedron, cap: int = 40) -> list[tuple]:
    """Vertices by exhaustive active-row selection with exact solves."""
    d = P.dim
    n_eq = len(P.eq_lhs)
    if n_eq > d:
        need = 0
    else:
        need = d - n_eq
    found: list[tuple] = []
    seen = set()
    for combo in itertools.combinations(range(len(P.ineq_lhs)), need):
        rows = list(P.eq_lhs) + [P.ineq_lhs[i] for i in combo]
        rhs = list(P.eq_rhs) + [P.ineq_rhs[i] for i in combo]
        if len(rows) != d:
            break
        x = solve_linear(rows, rhs)
        if x is None or x in seen or not P.contains(x):
            continue
        seen.add(x)
        found.append(x)
        if len(found) >= cap:
            break
    return found


def enumerate_candidates(problem: LinearVOP, max_vertices: int = 40,
                         ray_steps: int = 3, grid_step=1,
                         lattice_extent=3) -> CandidateSet:
    """Vertices, edge midpoints, recession-ray probes, and lattice points.

    Desk-scale only: refuses decision dimensions above the configured cap
    (override with the BENSONKIT_MAX_DIM environment variable).
    """
    n = problem.n
    cap = _dim_cap()
    if n > cap:
        raise DimensionTooLarge(f"decision dimension {n} exceeds the cap {cap}")
    X = problem.X
    step = frac(grid_step)
    points: list[tuple] = []
    tags: list[str] = []
    seen = set()

    def add(pt, tag):
        if pt not in seen and X.contains(pt):
            seen.add(pt)
            points.append(pt)
            tags.append(tag)

    vertices = enumerate_vertices(X, cap=max_vertices)
    for v in vertices:
        add(v, "vertex")
    for a, b in itertools.combinations(vertices, 2):
        add(tuple((x + y) / 2 for x, y in zip(a, b)), "midpoint")

    anchor = vertices[0] if vertices else lp.feasible_point(X)
    if anchor is not None:
        add(tuple(anchor), "anchor")
        for ray in boxed_extremal_rays(recession_cone(X)):
            t = Fraction(1)
            for _ in range(ray_steps):
                add(vec_add(anchor, vec_scale(t, ray)), "ray")
                t *= 2

    if anchor is not None and step > 0:
        lo, hi = [], []
        for i in range(n):
            obj = [_Z] * n
            obj[i] = Fraction(1)
            low = lp.solve(lp.LPProblem(tuple(obj), "min", X))
            high = lp.solve(lp.LPProblem(tuple(obj), "max", X))
            lo.append(low.value if low.status == lp.OPTIMAL else anchor[i] - frac(lattice_extent))
            hi.append(high.value if high.status == lp.OPTIMAL else anchor[i] + frac(lattice_extent))
        axes = []
        for i in range(n):
            vals = []
            v = lo[i]
            while v <= hi[i] and len(vals) <= 64:
                vals.append(v)
                v += step
            axes.append(vals)
        budget = 512
        for pt in itertools.product(*axes):
            if budget <= 0:
                break
            budget -= 1
            add(pt, "lattice")

    return CandidateSet(tuple(points), tuple(tags))


# ---------------------------------------------------------------------------
# Classification and structural checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassificationRow:
    point: tuple
    provenance: str
    eps_efficient: bool
    benson_proper: bool
    eps_verdict: Verdict
    proper_verdict: Verdict | None


@dataclass(frozen=True)
class DichotomyReport:
    """Either every shifted-efficient candidate is proper, or none is.

    A violation pair can only come from an implementation bug; the
    underlying structural statement excludes it.
    """

    outcome: str  # "all-proper" | "none-proper" | "violation"
    violation: tuple | None = None
    efficient_count: int = 0
    proper_count: int = 0


def classify(problem: LinearVOP, pert, kind: str,
             candidates: CandidateSet, form: str = PLAIN) -> list[ClassificationRow]:
    """One row per candidate: shifted efficiency and the cone criterion."""
    shift = shift_of(pert if not isinstance(pert, Perturbation) else pert)
    validate_perturbation(problem, shift, kind)
    rows = []
    for pt, tag in zip(candidates.points, candidates.provenance):
        eps = is_eps_efficient(problem, pt, shift)
        proper = is_benson_proper(problem, pt, shift, form=form)
        rows.append(ClassificationRow(pt, tag, eps.member, proper.member, eps, proper))
    return rows


def dichotomy_check(rows: Sequence[ClassificationRow]) -> DichotomyReport:
    """All-or-none properness over the shifted-efficient candidates."""
    efficient = [r for r in rows if r.eps_efficient]
    proper = [r for r in efficient if r.benson_proper]
    improper = [r for r in efficient if not r.benson_proper]
    if proper and improper:
        return DichotomyReport("violation", (proper[0], improper[0]),
                               len(efficient), len(proper))
    if improper:
        return DichotomyReport("none-proper", None, len(efficient), len(proper))
    return DichotomyReport("all-proper", None, len(efficient), len(proper))


@dataclass(frozen=True)
class ZeroShiftReport:
    """With no shift, every efficient candidate must satisfy the criterion."""

    candidates: int
    efficient_count: int
    counterexamples: tuple


def verify_efficient_implies_proper(problem: LinearVOP,
                                    candidates: CandidateSet) -> ZeroShiftReport:
    """Classical check at zero perturbation: efficient implies proper."""
    zero = (_Z,) * problem.m
    rows = classify(problem, zero, "e", candidates)
    efficient = [r for r in rows if r.eps_efficient]
    bad = tuple(r for r in efficient if not r.benson_proper)
    return ZeroShiftReport(len(rows), len(efficient), bad)


# ---------------------------------------------------------------------------
# Random problem generation (deterministic per seed)
# ---------------------------------------------------------------------------

def random_problem(seed: int, max_n: int = 3, max_m: int = 3,
                   row_budget: int = 4) -> LinearVOP:
    """Small random problem with a nonempty X and a pointed cone.

    X is anchored: every inequality is generated to hold at a random
    anchor point, so feasibility holds by construction. K is either the
    orthant or {v : G v >= 0} for a random invertible integer G, which
    is pointed because G kills no nonzero vector.
    """
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    m = rng.randint(2, max_m)
    anchor = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))

    rows, rhs = [], []
    for _ in range(rng.randint(2, max(2, row_budget))):
        while True:
            a = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            if any(c != 0 for c in a):
                break
        slack = Fraction(rng.randint(0, 4))
        rows.append(a)
        rhs.append(sum(c * z for c, z in zip(a, anchor)) + slack)
    X = HPolyhedron(n, tuple(rows), tuple(rhs))

    if rng.random() < 0.5:
        K = orthant_cone(m)
    else:
        while True:
            G = [[Fraction(rng.randint(-3, 3)) for _ in range(m)] for _ in range(m)]
            if solve_linear(G, [_Z] * m) is not None:  # invertible
                break
        K = PolyCone.from_rows(m, ineq_lhs=tuple(tuple(-c for c in row) for row in G))

    M = tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)) for _ in range(m))
    q = tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
    return LinearVOP(n, m, M, q, X, K)


def random_cone_element(K: PolyCone, rng: random.Random,
                        allow_zero: bool = False) -> tuple:
    """A random cone member: nonnegative combination of extremal rays."""
    rays = boxed_extremal_rays(K)
    if not rays:
        return (_Z,) * K.dim
    while True:
        coeffs = [Fraction(rng.randint(0, 3)) for _ in rays]
        e = tuple(sum(c * r[i] for c, r in zip(coeffs, rays)) for i in range(K.dim))
        if allow_zero or any(c != 0 for c in e):
            return e


def random_feasible_point(problem: LinearVOP, rng: random.Random,
                          candidates: CandidateSet | None = None) -> tuple:
    pool = candidates.points if candidates else ()
    if pool:
        return pool[rng.randrange(len(pool))]
    pt = lp.feasible_point(problem.X)
    if pt is None:
        raise InternalCheckError("random problem lost its anchor point")
    return pt


# ---------------------------------------------------------------------------
# Randomized verification suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteReport:
    name: str
    seed: int
    runs: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"name": self.name, "seed": self.seed, "runs": self.runs,
                "ok": self.ok, "failures": list(self.failures)}


def _suite_candidates(problem: LinearVOP, rng: random.Random,
                      cap: int = 8) -> CandidateSet:
    cand = enumerate_candidates(problem, max_vertices=6, ray_steps=2,
                                grid_step=0, lattice_extent=2)
    if len(cand) <= cap:
        return cand
    idx = sorted(rng.sample(range(len(cand)), cap))
    return CandidateSet(tuple(cand.points[i] for i in idx),
                        tuple(cand.provenance[i] for i in idx))


def forms_agreement_suite(count: int = 200, seed: int = 0) -> SuiteReport:
    """Plain and fattened criterion forms must agree on random triples."""
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        problem = random_problem(rng.randrange(2 ** 30))
        xbar = random_feasible_point(problem, rng)
        e = random_cone_element(problem.K, rng, allow_zero=True)
        agree, plain, lifted = benson_forms_agree(problem, xbar, e)
        if not agree:
            failures.append(f"run {k}: plain={plain.member} fattened={lifted.member} "
                            f"at x={vector_str(xbar)} e={vector_str(e)}")
    return SuiteReport("criterion-forms-agree", seed, count, tuple(failures))


def zero_shift_suite(count: int = 100, seed: int = 0) -> SuiteReport:
    """With zero shift, efficient candidates must satisfy the criterion."""
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        problem = random_problem(rng.randrange(2 ** 30))
        cand = _suite_candidates(problem, rng)
        report = verify_efficient_implies_proper(problem, cand)
        if report.counterexamples:
            bad = report.counterexamples[0]
            failures.append(f"run {k}: efficient-but-not-proper at "
                            f"{vector_str(bad.point)}")
    return SuiteReport("efficient-implies-proper", seed, count, tuple(failures))


def dichotomy_suite(count: int = 200, seed: int = 0,
                    orthant_only: bool = False) -> SuiteReport:
    """All-or-none properness of shifted-efficient candidates, nonzero shift."""
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        problem = random_problem(rng.randrange(2 ** 30))
        if orthant_only and not problem.has_orthant_cone:
            problem = LinearVOP(problem.n, problem.m, problem.objective_matrix,
                                problem.objective_offset, problem.X,
                                orthant_cone(problem.m))
        e = random_cone_element(problem.K, rng, allow_zero=False)
        cand = _suite_candidates(problem, rng)
        rows = classify(problem, e, "e", cand)
        report = dichotomy_check(rows)
        if report.outcome == "violation":
            proper, improper = report.violation
            failures.append(f"run {k}: proper {vector_str(proper.point)} vs "
                            f"improper {vector_str(improper.point)} "
                            f"with e={vector_str(e)}")
    name = "dichotomy-orthant" if orthant_only else "dichotomy"
    return SuiteReport(name, seed, count, tuple(failures))


# ---------------------------------------------------------------------------
# Built-in example reproduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixtureReport:
    name: str
    checks: tuple  # of (label, bool)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)


@dataclass(frozen=True)
class ExamplesReport:
    fixtures: tuple

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.fixtures)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "fixtures": [
                {"name": f.name, "ok": f.ok,
                 "checks": [{"label": l, "ok": ok} for l, ok in f.checks]}
                for f in self.fixtures
            ],
        }

    def to_text(self) -> str:
        lines = []
        for f in self.fixtures:
            lines.append(f"[{'PASS' if f.ok else 'FAIL'}] fixture {f.name}")
            for label, ok in f.checks:
                lines.append(f"    {'ok ' if ok else 'BAD'} {label}")
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines)


def _grid(xs, ys):
    return [(frac(a), frac(b)) for a in xs for b in ys]


def reproduce_examples() -> ExamplesReport:
    """Run the three built-in fixtures in their interesting regimes and
    assert the known shape of their solution sets on a candidate lattice."""
    from .polyhedra import generated_cone_closure

    reports = []

    # Sign-flip problem, shift (0, 1): the shifted-efficient set is the
    # strip 0 <= x2 < 1, and no point of it satisfies the criterion.
    p = sign_flip_problem()
    eps = (0, 1)
    checks = []
    for pt in _grid((0, 1, 2, 3), (0, Fraction(1, 2), Fraction(3, 4))):
        eff = is_eps_efficient(p, pt, eps)
        prop = is_benson_proper(p, pt, eps)
        ok = eff.member and not prop.member
        try:
            prop.verify(p, pt, eps)
        except InternalCheckError:
            ok = False
        checks.append((f"strip point {vector_str(pt)} efficient, not proper", ok))
    for pt in _grid((0, 1, 2, 3), (1, 2)):
        eff = is_eps_efficient(p, pt, eps)
        ok = not eff.member
        try:
            eff.verify(p, pt, eps)
        except InternalCheckError:
            ok = False
        checks.append((f"point {vector_str(pt)} above the strip not efficient", ok))
    shifted = p.objective_image.translate(
        tuple(-v for v in vec_sub(p.evaluate((0, 0)), vector(eps))))
    gcc = generated_cone_closure(shifted)
    axis_ok = (gcc.contains((-1, 0)) and not gcc.contains((-1, -1))
               and not gcc.contains((0, -1)))
    checks.append(("criterion cone meets -K exactly in the nonpositive first axis",
                   axis_ok))
    reports.append(FixtureReport("sign-flip", tuple(checks)))

    # Halfplane problem, shift (1, 0): shifted-efficient set is the strip
    # 0 <= x1 < 1; the generated cone closure of the shifted image is the
    # halfplane {y1 >= 0}, so again nothing is proper.
    p = halfplane_problem()
    eps = (1, 0)
    checks = []
    for pt in _grid((0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)), (-2, 0, 3)):
        eff = is_eps_efficient(p, pt, eps)
        prop = is_benson_proper(p, pt, eps)
        checks.append((f"strip point {vector_str(pt)} efficient, not proper",
                       eff.member and not prop.member))
    for pt in _grid((1, 2), (-1, 0)):
        checks.append((f"point {vector_str(pt)} beyond the strip not efficient",
                       not is_eps_efficient(p, pt, eps).member))
    shifted = p.objective_image.translate(
        tuple(-v for v in vec_sub(p.evaluate((Fraction(1, 2), 0)), vector(eps))))
    gcc = generated_cone_closure(shifted)
    hp_ok = (all(gcc.contains((1, t)) for t in (-5, 0, 5))
             and not gcc.contains((-1, 0)))
    checks.append(("generated cone closure is the halfplane {y1 >= 0}", hp_ok))
    reports.append(FixtureReport("halfplane", tuple(checks)))

    # Wedge problem: for e in the wedge with e1 = 1, the shifted-efficient
    # set is the strip 0 <= x1 <= 1 and every point of it is proper.
    p = wedge_problem()
    checks = []
    for e in ((1, 0), (1, Fraction(1, 2))):
        for pt in _grid((0, Fraction(1, 2), 1), (-1, 0, 7)):
            eff = is_eps_efficient(p, pt, e)
            prop = is_benson_proper(p, pt, e)
            checks.append(
                (f"e={vector_str(vector(e))}: strip point {vector_str(pt)} "
                 "efficient and proper", eff.member and prop.member))
        for pt in _grid((Fraction(3, 2), 3), (0, 2)):
            eff = is_eps_efficient(p, pt, e)
            prop = is_benson_proper(p, pt, e)
            checks.append(
                (f"e={vector_str(vector(e))}: point {vector_str(pt)} beyond "
                 "the strip neither efficient nor proper",
                 not eff.member and not prop.member))
    zero = (0, 0)
    for pt in _grid((0,), (-1, 0, 2)):
        eff = is_eps_efficient(p, pt, zero)
        prop = is_benson_proper(p, pt, zero)
        checks.append((f"zero shift: boundary point {vector_str(pt)} efficient "
                       "and proper", eff.member and prop.member))
    for pt in _grid((1, 2), (0,)):
        checks.append((f"zero shift: interior point {vector_str(pt)} not efficient",
                       not is_eps_efficient(p, pt, zero).member))
    reports.append(FixtureReport("wedge", tuple(checks)))

    return ExamplesReport(tuple(reports))
