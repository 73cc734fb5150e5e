"""Decision procedures for shifted efficiency and proper efficiency.

A point is shifted-efficient when no feasible competitor dominates the
shifted objective value f(xbar) - shift in the cone order without
matching it exactly. Proper efficiency is decided through the
Benson-style criterion: the closed cone generated by the shifted image
(optionally fattened by the ordering cone) must meet the negated
ordering cone only in the origin.

Every negative verdict carries a witness that re-verifies by plain row
arithmetic: a dominating competitor, or a nonzero common ray together
with its preimage data. Every positive verdict carries the LP outcomes
that prove it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import (InternalCheckError, NotEpsEfficient, NotPointed,
                     PointNotFeasible, TrivialCone)
from . import lp
from .model import (LinearVOP, coords_of, shift_of, validate_perturbation)
from .polyhedra import (HPolyhedron, box, boxed_extremal_rays,
                        cone_intersection_nontrivial, negate, recession_cone)
from .rationals import (dot, frac, is_zero, mat_vec, vec_add, vec_scale,
                        vec_sub, vector)

_Z = Fraction(0)

PLAIN = "plain"
PLUSK = "plusK"


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DominationWitness:
    """A competitor y with f(y) dominating the shifted value and not equal."""

    competitor: tuple
    objective_value: tuple
    shifted_bound: tuple

    def verify(self, problem: LinearVOP, x, pert) -> None:
        target = vec_sub(problem.evaluate(coords_of(x)), shift_of(pert))
        if target != self.shifted_bound:
            raise InternalCheckError("witness bound does not match query data")
        y = self.competitor
        if not problem.X.contains(y):
            raise InternalCheckError("witness competitor is infeasible")
        fy = problem.evaluate(y)
        if fy != self.objective_value:
            raise InternalCheckError("stored objective value is wrong")
        if not problem.K.contains(vec_sub(target, fy)):
            raise InternalCheckError("witness does not dominate in the cone order")
        if fy == target:
            raise InternalCheckError("witness matches the shifted value exactly")


@dataclass(frozen=True)
class ConeWitness:
    """A nonzero vector of cl cone S intersected with -K, plus preimage data.

    branch "base": ray == scale * y for y in S, exhibited through a point
    of X (and a cone element for the fattened form). branch "recession":
    ray is a recession direction of S, exhibited through a recession
    direction of X (and a cone element for the fattened form).
    """

    ray: tuple
    branch: str               # "base" | "recession"
    form: str                 # "plain" | "plusK"
    scale: Fraction | None = None
    preimage_point: tuple | None = None
    preimage_ray: tuple | None = None
    cone_part: tuple | None = None

    def verify(self, problem: LinearVOP, x, pert) -> None:
        w = self.ray
        if is_zero(w):
            raise InternalCheckError("cone witness ray is zero")
        if not negate(problem.K).contains(w):
            raise InternalCheckError("cone witness ray is not in -K")
        c = vec_sub(problem.evaluate(coords_of(x)), shift_of(pert))
        k = self.cone_part if self.cone_part is not None else (_Z,) * problem.m
        if self.form == PLAIN and not is_zero(k):
            raise InternalCheckError("plain-form witness carries a cone part")
        if not problem.K.contains(k):
            raise InternalCheckError("witness cone part is not in K")
        if self.branch == "base":
            if self.scale is None or self.scale <= 0 or self.preimage_point is None:
                raise InternalCheckError("base witness missing scale or preimage")
            if not problem.X.contains(self.preimage_point):
                raise InternalCheckError("witness preimage point is infeasible")
            y = vec_sub(vec_add(problem.evaluate(self.preimage_point), k), c)
            if vec_scale(self.scale, y) != w:
                raise InternalCheckError("base witness does not reproduce the ray")
        elif self.branch == "recession":
            r = self.preimage_ray
            if r is None:
                raise InternalCheckError("recession witness missing direction")
            if any(dot(a, r) > 0 for a in problem.X.ineq_lhs):
                raise InternalCheckError("witness direction leaves the constraint set")
            if any(dot(e, r) != 0 for e in problem.X.eq_lhs):
                raise InternalCheckError("witness direction leaves an equality")
            if vec_add(mat_vec(problem.objective_matrix, r), k) != w:
                raise InternalCheckError("recession witness does not reproduce the ray")
        else:
            raise InternalCheckError(f"unknown witness branch {self.branch!r}")


@dataclass(frozen=True)
class LPEvidence:
    """Bundle of labeled LP outcomes backing a positive (member) verdict."""

    description: str
    outcomes: tuple  # of (label, lp.LPOutcome)


@dataclass(frozen=True)
class Verdict:
    """Membership decision plus its machine-checkable certificate."""

    test: str
    member: bool
    certificate: object | None = None
    form: str | None = None

    def verify(self, problem: LinearVOP, x, pert) -> None:
        if isinstance(self.certificate, (DominationWitness, ConeWitness)):
            self.certificate.verify(problem, x, pert)


# ---------------------------------------------------------------------------
# Shared row construction
# ---------------------------------------------------------------------------

def _cone_rows_on_x(problem: LinearVOP, g: Sequence[Fraction]):
    """Rows over decision space expressing (g - M x) in K."""
    M = problem.objective_matrix
    n, m = problem.n, problem.m

    def left(a):
        return tuple(-sum(a[i] * M[i][j] for i in range(m)) for j in range(n))

    ineqs = [(left(a), -dot(a, g)) for a in problem.K.carrier.ineq_lhs]
    eqs = [(tuple(-c for c in left(e)), dot(e, g)) for e in problem.K.carrier.eq_lhs]
    return ineqs, eqs


def _with_rows(base: HPolyhedron, ineqs, eqs) -> HPolyhedron:
    return HPolyhedron(base.dim,
                       base.ineq_lhs + tuple(a for a, _ in ineqs),
                       base.ineq_rhs + tuple(b for _, b in ineqs),
                       base.eq_lhs + tuple(e for e, _ in eqs),
                       base.eq_rhs + tuple(d for _, d in eqs))


def _require_feasible_query(problem: LinearVOP, x) -> tuple:
    pt = coords_of(x)
    if len(pt) != problem.n or not problem.X.contains(pt):
        raise PointNotFeasible("query point is outside the constraint set")
    return pt


# ---------------------------------------------------------------------------
# Shifted efficiency
# ---------------------------------------------------------------------------

def is_eps_efficient(problem: LinearVOP, x, pert) -> Verdict:
    """Decide shifted efficiency of x for the given objective-space shift.

    The competitor set {y in X : f(xbar) - shift - f(y) in K} is built as
    plain rows over decision space; if it is empty the point is trivially
    a member, otherwise each objective component is minimized and
    maximized over it. The point is a member exactly when every optimum
    pins the component to the shifted value.
    """
    xbar = _require_feasible_query(problem, x)
    shift = vector(shift_of(pert), problem.m)
    target = vec_sub(problem.evaluate(xbar), shift)
    g = vec_sub(target, problem.objective_offset)
    ineqs, eqs = _cone_rows_on_x(problem, g)
    P = _with_rows(problem.X, ineqs, eqs)

    outcomes = []
    probe = lp.solve(lp.LPProblem((_Z,) * problem.n, "min", P))
    outcomes.append(("competitor-set-feasibility", probe))
    if probe.status == lp.INFEASIBLE:
        return Verdict("eps-efficient", True,
                       LPEvidence("no feasible competitor", tuple(outcomes)))

    def witness(y) -> Verdict:
        cert = DominationWitness(tuple(y), problem.evaluate(y), target)
        return Verdict("eps-efficient", False, cert)

    for i in range(problem.m):
        row = problem.objective_matrix[i]
        for sense in ("min", "max"):
            out = lp.solve(lp.LPProblem(row, sense, P))
            outcomes.append((f"component-{i}-{sense}", out))
            if out.status == lp.UNBOUNDED:
                y = out.point
                if problem.evaluate(y) == target:
                    y = vec_add(y, out.ray)
                return witness(y)
            value = out.value + problem.objective_offset[i]
            if value != target[i]:
                return witness(out.point)
    return Verdict("eps-efficient", True,
                   LPEvidence("all competitors match the shifted value",
                              tuple(outcomes)))


# ---------------------------------------------------------------------------
# Benson-style proper efficiency
# ---------------------------------------------------------------------------

def _nonzero_point(T: HPolyhedron):
    """A nonzero point of T, or None; records the LP outcomes consulted."""
    evidence = []
    probe = lp.solve(lp.LPProblem((_Z,) * T.dim, "min", T))
    evidence.append(("intersection-feasibility", probe))
    if probe.status == lp.INFEASIBLE:
        return None, evidence
    if not is_zero(probe.point):
        return probe.point, evidence
    boxed = T.intersect(box(T.dim))
    for i in range(T.dim):
        obj = [_Z] * T.dim
        obj[i] = Fraction(1)
        for sense in ("max", "min"):
            out = lp.solve(lp.LPProblem(tuple(obj), sense, boxed))
            evidence.append((f"box-coordinate-{i}-{sense}", out))
            if (sense == "max" and out.value > 0) or (sense == "min" and out.value < 0):
                return out.point, evidence
    return None, evidence


def _base_preimage(problem: LinearVOP, c, y, form: str):
    """x in X (and cone part) with f(x) [+ k] - c == y; exact LP search."""
    g = vec_sub(vec_add(y, c), problem.objective_offset)
    if form == PLAIN:
        eqs = [(problem.objective_matrix[i], g[i]) for i in range(problem.m)]
        P = _with_rows(problem.X, [], eqs)
    else:
        ineqs, eqs = _cone_rows_on_x(problem, g)
        P = _with_rows(problem.X, ineqs, eqs)
    pt = lp.feasible_point(P)
    if pt is None:
        raise InternalCheckError("image point has no preimage; projection bug")
    k = vec_sub(vec_add(y, c), problem.evaluate(pt)) if form == PLUSK else None
    return pt, k


def _recession_preimage(problem: LinearVOP, w, form: str):
    """Recession direction r of X (and cone part) with M r [+ k] == w."""
    rec = recession_cone(problem.X).carrier
    M = problem.objective_matrix
    if form == PLAIN:
        eqs = [(M[i], w[i]) for i in range(problem.m)]
        P = _with_rows(rec, [], eqs)
    else:
        n, m = problem.n, problem.m

        def left(a):
            return tuple(-sum(a[i] * M[i][j] for i in range(m)) for j in range(n))

        ineqs = [(left(a), -dot(a, w)) for a in problem.K.carrier.ineq_lhs]
        eqs = [(tuple(-c for c in left(e)), dot(e, w)) for e in problem.K.carrier.eq_lhs]
        P = _with_rows(rec, ineqs, eqs)
    r = lp.feasible_point(P)
    if r is None:
        raise InternalCheckError("ray has no recession preimage; projection bug")
    k = vec_sub(w, mat_vec(M, r)) if form == PLUSK else None
    return r, k


def is_benson_proper(problem: LinearVOP, x, pert, form: str = PLAIN) -> Verdict:
    """Benson-style criterion with objective-space shift e in K.

    Member exactly when cl cone S meets -K only in the origin, where
    S = f(X) - (f(xbar) - e) for the plain form and S = f(X) + K -
    (f(xbar) - e) for the fattened form. Membership of a nonzero vector
    in the closed generated cone splits into a positive multiple of a
    point of S or a recession direction of S; the two branches are
    searched separately and a hit in either yields a ConeWitness.
    """
    if form not in (PLAIN, PLUSK):
        raise InternalCheckError(f"unknown criterion form {form!r}")
    xbar = _require_feasible_query(problem, x)
    shift = vector(shift_of(pert), problem.m)
    validate_perturbation(problem, shift, "e")
    if problem.cone_is_trivial:
        raise TrivialCone("proper efficiency needs a nontrivial ordering cone")
    if not problem.cone_is_pointed:
        raise NotPointed("the criterion requires a pointed ordering cone")

    c = vec_sub(problem.evaluate(xbar), shift)
    base_set = problem.objective_image if form == PLAIN else problem.objective_image_plus_cone
    S = base_set.translate(tuple(-v for v in c))
    minus_k = negate(problem.K)

    point, evidence = _nonzero_point(S.intersect(minus_k.carrier))
    if point is not None:
        pre, k = _base_preimage(problem, c, point, form)
        cert = ConeWitness(ray=tuple(point), branch="base", form=form,
                           scale=Fraction(1), preimage_point=tuple(pre),
                           cone_part=k)
        return Verdict("benson-proper", False, cert, form=form)

    ray = cone_intersection_nontrivial(recession_cone(base_set), minus_k)
    if ray is not None:
        pre, k = _recession_preimage(problem, ray, form)
        cert = ConeWitness(ray=tuple(ray), branch="recession", form=form,
                           preimage_ray=tuple(pre), cone_part=k)
        return Verdict("benson-proper", False, cert, form=form)

    return Verdict("benson-proper", True,
                   LPEvidence("both membership branches are trivial",
                              tuple(evidence)), form=form)


def is_eps_properly_efficient(problem: LinearVOP, x, pert) -> Verdict:
    """Orthant-cone proper efficiency via the criterion, both forms.

    Both the plain and the fattened criterion forms are computed; they
    are provably equivalent for pointed cones, so a disagreement is an
    internal bug and raises rather than returning.
    """
    shift = vector(shift_of(pert), problem.m)
    validate_perturbation(problem, shift, "epsilon")
    plain = is_benson_proper(problem, x, shift, form=PLAIN)
    lifted = is_benson_proper(problem, x, shift, form=PLUSK)
    if plain.member != lifted.member:
        raise InternalCheckError(
            "plain and fattened criterion forms disagree: "
            f"{plain.member} vs {lifted.member}")
    return replace(plain, test="eps-properly-efficient")


def benson_forms_agree(problem: LinearVOP, x, pert):
    """Run both criterion forms independently; returns (agree, plain, fattened)."""
    plain = is_benson_proper(problem, x, pert, form=PLAIN)
    lifted = is_benson_proper(problem, x, pert, form=PLUSK)
    return plain.member == lifted.member, plain, lifted


# ---------------------------------------------------------------------------
# Trade-off ratio profiling (falsifier for the uniform-bound property)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioProbe:
    """One sampled trade-off ratio: losing component i against the best
    compensating component j at sample point x."""

    i: int
    j: int
    x: tuple
    ratio: Fraction


@dataclass(frozen=True)
class RatioProfile:
    sup_estimate: Fraction
    diverging: bool
    diverging_ray: tuple | None
    probes: tuple
    samples_used: int


_DIVERGENCE_THRESHOLD = Fraction(10) ** 6
_MAX_DOUBLINGS = 22


def geoffrion_ratio_profile(problem: LinearVOP, x, pert, budget: int = 2048,
                            radius=4, seed: int = 0) -> RatioProfile:
    """Sample trade-off ratios around a shifted-efficient point.

    For each sample with a component strictly below the shifted value,
    the smallest ratio of that loss against any strictly compensating
    gain is recorded; the running supremum estimates the least uniform
    bound that could work. Divergence along a single recession ray (a
    strictly increasing ratio sequence passing 10^6) raises the
    infinite flag. This is a falsifier only: a bounded sample proves
    nothing, and the cone criterion stays authoritative.
    """
    shift = vector(shift_of(pert), problem.m)
    validate_perturbation(problem, shift, "epsilon")
    xbar = _require_feasible_query(problem, x)
    if not is_eps_efficient(problem, xbar, shift).member:
        raise NotEpsEfficient("ratio profiling is defined on shifted-efficient points")

    target = vec_sub(problem.evaluate(xbar), shift)
    probes: list[RatioProbe] = []
    sup = _Z
    samples_used = 0

    def ratios_at(pt):
        """Largest over losing components of the best compensating ratio."""
        nonlocal sup, samples_used
        fx = problem.evaluate(pt)
        if fx == target and pt == xbar:
            return None
        samples_used += 1
        worst = None
        for i in range(problem.m):
            if fx[i] >= target[i]:
                continue
            best = None
            best_j = None
            for j in range(problem.m):
                if fx[j] > target[j]:
                    a = (target[i] - fx[i]) / (fx[j] - target[j])
                    if best is None or a < best:
                        best, best_j = a, j
            if best is None:
                raise InternalCheckError(
                    "sample dominates a shifted-efficient point; decision bug")
            probes.append(RatioProbe(i, best_j, tuple(pt), best))
            if worst is None or best > worst:
                worst = best
        if worst is not None and worst > sup:
            sup = worst
        return worst

    diverging = False
    diverging_ray = None
    rays = boxed_extremal_rays(recession_cone(problem.X))
    for ray in rays:
        if samples_used >= budget or diverging:
            break
        values = []
        t = Fraction(1)
        for _ in range(_MAX_DOUBLINGS):
            if samples_used >= budget:
                break
            pt = vec_add(xbar, vec_scale(t, ray))
            worst = ratios_at(pt)
            if worst is not None:
                values.append(worst)
            t *= 2
        if (len(values) >= 2
                and all(a < b for a, b in zip(values, values[1:]))
                and values[-1] > _DIVERGENCE_THRESHOLD):
            diverging = True
            diverging_ray = ray

    remaining = budget - samples_used
    if remaining > 0:
        r = frac(radius)
        den = 1
        while (2 * (den + 1) + 1) ** problem.n <= remaining:
            den += 1
        offsets = [Fraction(k) * r / den for k in range(-den, den + 1)]
        grid = list(itertools.product(offsets, repeat=problem.n))
        random.Random(seed).shuffle(grid)
        for off in grid:
            if samples_used >= budget:
                break
            pt = vec_add(xbar, off)
            if problem.X.contains(pt):
                ratios_at(pt)

    return RatioProfile(sup, diverging, diverging_ray, tuple(probes), samples_used)


# ---------------------------------------------------------------------------
# Verdict serialization (exact "p/q" strings, round-trip stable)
# ---------------------------------------------------------------------------

def _svec(v):
    from .rationals import frac_str

    return None if v is None else [frac_str(c) for c in v]


def _pvec(v):
    return None if v is None else vector(v)


def outcome_to_dict(out: lp.LPOutcome) -> dict:
    from .rationals import frac_str

    return {
        "status": out.status,
        "point": _svec(out.point),
        "value": None if out.value is None else frac_str(out.value),
        "ray": _svec(out.ray),
        "dual_ineq": _svec(out.dual_ineq),
        "dual_eq": _svec(out.dual_eq),
    }


def outcome_from_dict(doc: dict) -> lp.LPOutcome:
    return lp.LPOutcome(
        status=doc["status"],
        point=_pvec(doc.get("point")),
        value=None if doc.get("value") is None else frac(doc["value"]),
        ray=_pvec(doc.get("ray")),
        dual_ineq=_pvec(doc.get("dual_ineq")),
        dual_eq=_pvec(doc.get("dual_eq")),
    )


def certificate_to_dict(cert) -> dict | None:
    from .rationals import frac_str

    if cert is None:
        return None
    if isinstance(cert, DominationWitness):
        return {
            "type": "domination",
            "competitor": _svec(cert.competitor),
            "objective_value": _svec(cert.objective_value),
            "shifted_bound": _svec(cert.shifted_bound),
        }
    if isinstance(cert, ConeWitness):
        return {
            "type": "cone",
            "ray": _svec(cert.ray),
            "branch": cert.branch,
            "form": cert.form,
            "scale": None if cert.scale is None else frac_str(cert.scale),
            "preimage_point": _svec(cert.preimage_point),
            "preimage_ray": _svec(cert.preimage_ray),
            "cone_part": _svec(cert.cone_part),
        }
    if isinstance(cert, LPEvidence):
        return {
            "type": "lp-evidence",
            "description": cert.description,
            "outcomes": [[label, outcome_to_dict(out)] for label, out in cert.outcomes],
        }
    raise InternalCheckError(f"unknown certificate type {type(cert).__name__}")


def certificate_from_dict(doc: dict | None):
    if doc is None:
        return None
    kind = doc.get("type")
    if kind == "domination":
        return DominationWitness(_pvec(doc["competitor"]),
                                 _pvec(doc["objective_value"]),
                                 _pvec(doc["shifted_bound"]))
    if kind == "cone":
        return ConeWitness(ray=_pvec(doc["ray"]), branch=doc["branch"],
                           form=doc["form"],
                           scale=None if doc.get("scale") is None else frac(doc["scale"]),
                           preimage_point=_pvec(doc.get("preimage_point")),
                           preimage_ray=_pvec(doc.get("preimage_ray")),
                           cone_part=_pvec(doc.get("cone_part")))
    if kind == "lp-evidence":
        return LPEvidence(doc["description"],
                          tuple((label, outcome_from_dict(out))
                                for label, out in doc["outcomes"]))
    raise InternalCheckError(f"unknown certificate type in document: {kind!r}")


def verdict_to_dict(verdict: Verdict) -> dict:
    return {
        "test": verdict.test,
        "member": verdict.member,
        "form": verdict.form,
        "certificate": certificate_to_dict(verdict.certificate),
    }


def verdict_from_dict(doc: dict) -> Verdict:
    return Verdict(test=doc["test"], member=doc["member"],
                   certificate=certificate_from_dict(doc.get("certificate")),
                   form=doc.get("form"))
