"""Exact polyhedra and polyhedral cones in halfspace form.

A set is stored as the solution set of ``A x <= b``, ``E x = d`` over
exact rationals. Projection is Fourier-Motzkin elimination (equalities
are used for substitution first), affine images and Minkowski sums are
computed by lifting and eliminating, and emptiness / redundancy /
nontrivial-ray questions are settled by exact LPs. Nothing is rounded.

All types are immutable values; every operation is a pure function, so
concurrent callers can share them freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptySet, NotACone
from .rationals import dot, frac, is_zero, vector

Vector = tuple[Fraction, ...]
Row = tuple[Vector, Fraction]

_Z = Fraction(0)


def _coerce_rows(entries: Iterable[Sequence], dim: int) -> tuple[Vector, ...]:
    return tuple(vector(row, dim) for row in entries)


@dataclass(frozen=True)
class HPolyhedron:
    """Closed convex set {x : ineq_lhs x <= ineq_rhs, eq_lhs x = eq_rhs}."""

    dim: int
    ineq_lhs: tuple = ()
    ineq_rhs: tuple = ()
    eq_lhs: tuple = ()
    eq_rhs: tuple = ()

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 0:
            raise DimensionMismatch(f"bad dimension {self.dim!r}")
        object.__setattr__(self, "ineq_lhs", _coerce_rows(self.ineq_lhs, self.dim))
        object.__setattr__(self, "ineq_rhs", vector(self.ineq_rhs))
        object.__setattr__(self, "eq_lhs", _coerce_rows(self.eq_lhs, self.dim))
        object.__setattr__(self, "eq_rhs", vector(self.eq_rhs))
        if len(self.ineq_lhs) != len(self.ineq_rhs):
            raise DimensionMismatch("one right-hand side per inequality row")
        if len(self.eq_lhs) != len(self.eq_rhs):
            raise DimensionMismatch("one right-hand side per equality row")

    # -- basic queries ----------------------------------------------------

    def ineqs(self) -> tuple[Row, ...]:
        return tuple(zip(self.ineq_lhs, self.ineq_rhs))

    def eqs(self) -> tuple[Row, ...]:
        return tuple(zip(self.eq_lhs, self.eq_rhs))

    def contains(self, x: Sequence) -> bool:
        """Exact row-by-row membership test."""
        pt = vector(x, self.dim)
        return (all(dot(a, pt) <= b for a, b in self.ineqs())
                and all(dot(e, pt) == d for e, d in self.eqs()))

    @cached_property
    def is_empty(self) -> bool:
        """Feasibility, decided by one exact LP and cached."""
        from . import lp

        return lp.feasible_point(self) is None

    # -- cheap constructions ----------------------------------------------

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if self.dim != other.dim:
            raise DimensionMismatch("intersecting sets of different dimensions")
        return HPolyhedron(self.dim,
                           self.ineq_lhs + other.ineq_lhs,
                           self.ineq_rhs + other.ineq_rhs,
                           self.eq_lhs + other.eq_lhs,
                           self.eq_rhs + other.eq_rhs)

    def translate(self, t: Sequence) -> "HPolyhedron":
        """The set {x + t : x in self}; pure right-hand-side arithmetic."""
        shift = vector(t, self.dim)
        return HPolyhedron(self.dim,
                           self.ineq_lhs,
                           tuple(b + dot(a, shift) for a, b in self.ineqs()),
                           self.eq_lhs,
                           tuple(d + dot(e, shift) for e, d in self.eqs()))


@dataclass(frozen=True)
class PolyCone:
    """Polyhedral cone: an HPolyhedron whose right-hand sides are all zero."""

    carrier: HPolyhedron

    def __post_init__(self):
        if any(b != 0 for b in self.carrier.ineq_rhs) or any(d != 0 for d in self.carrier.eq_rhs):
            raise NotACone("cone rows must have zero right-hand sides")

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def contains(self, v: Sequence) -> bool:
        return self.carrier.contains(v)

    @classmethod
    def from_rows(cls, dim: int, ineq_lhs: Iterable[Sequence] = (),
                  eq_lhs: Iterable[Sequence] = ()) -> "PolyCone":
        ineq = tuple(ineq_lhs)
        eq = tuple(eq_lhs)
        return cls(HPolyhedron(dim, ineq, (_Z,) * len(ineq), eq, (_Z,) * len(eq)))


@dataclass(frozen=True)
class GeneratedConeClosure:
    """Smallest closed cone containing a nonempty polyhedron C, held lazily.

    A vector w belongs to the closure exactly when w is a positive
    multiple of a point of C, or w is a recession direction of C. The
    two branches are decided separately so that a membership witness
    always names which one fired.
    """

    base: HPolyhedron
    recession: PolyCone

    def split(self, w: Sequence):
        """Return ("base", lam, y) with w == lam*y, y in base, lam > 0,
        or ("recession", None, w), or None when w is not a member."""
        pt = vector(w, self.base.dim)
        mu = _positive_scale_into(self.base, pt)
        if mu is not None:
            y = tuple(mu * c for c in pt)
            return ("base", 1 / mu, y)
        if self.recession.contains(pt):
            return ("recession", None, pt)
        return None

    def contains(self, w: Sequence) -> bool:
        return self.split(w) is not None


def _positive_scale_into(P: HPolyhedron, w: Vector) -> Fraction | None:
    """Some mu > 0 with mu*w in P, found by exact 1-d interval arithmetic."""
    lo = _Z          # mu >= lo (closed); positivity handled at the end
    hi: Fraction | None = None
    pins: list[Fraction] = []
    for a, b in P.ineqs():
        s = dot(a, w)
        if s > 0:
            hi = b / s if hi is None else min(hi, b / s)
        elif s < 0:
            lo = max(lo, b / s)
        elif b < 0:
            return None
    for e, d in P.eqs():
        s = dot(e, w)
        if s == 0:
            if d != 0:
                return None
        else:
            pins.append(d / s)
    if pins:
        mu = pins[0]
        if any(p != mu for p in pins):
            return None
        if mu <= 0 or mu < lo or (hi is not None and mu > hi):
            return None
        return mu
    if hi is None:
        return max(lo, Fraction(1))
    if hi <= 0 or hi < lo:
        return None
    return hi


# ---------------------------------------------------------------------------
# Row cleanup and Fourier-Motzkin elimination
# ---------------------------------------------------------------------------

def _canon_ineq(a: Vector, b: Fraction) -> Row | None:
    """Scale so the first nonzero coefficient has absolute value 1.

    Trivially true rows collapse to None; contradictions collapse to the
    canonical row 0 <= -1.
    """
    pivot = next((c for c in a if c != 0), None)
    if pivot is None:
        if b >= 0:
            return None
        return (a, Fraction(-1))
    s = abs(pivot)
    return (tuple(c / s for c in a), b / s)


def _canon_eq(e: Vector, d: Fraction) -> Row | None:
    idx = next((i for i, c in enumerate(e) if c != 0), None)
    if idx is None:
        if d == 0:
            return None
        return (e, d)  # contradiction 0 = d, kept as is
    s = e[idx]
    return (tuple(c / s for c in e), d / s)


def _cleanup(dim: int, ineqs: list[Row], eqs: list[Row]) -> tuple[list[Row], list[Row]]:
    """Deduplicate rows; for equal normals keep the tightest bound."""
    best: dict[Vector, Fraction] = {}
    order: list[Vector] = []
    contradiction = False
    for a, b in ineqs:
        canon = _canon_ineq(a, b)
        if canon is None:
            continue
        ca, cb = canon
        if is_zero(ca):
            contradiction = True
            continue
        if ca not in best:
            best[ca] = cb
            order.append(ca)
        elif cb < best[ca]:
            best[ca] = cb
    out_ineqs = [(a, best[a]) for a in order]
    seen = set()
    out_eqs: list[Row] = []
    for e, d in eqs:
        canon = _canon_eq(e, d)
        if canon is None:
            continue
        if is_zero(canon[0]):
            contradiction = True
            continue
        if canon not in seen:
            seen.add(canon)
            out_eqs.append(canon)
    if contradiction:
        zero = (_Z,) * dim
        out_ineqs.append((zero, Fraction(-1)))
    return out_ineqs, out_eqs


def _drop_coord(v: Vector, idx: int) -> Vector:
    return v[:idx] + v[idx + 1:]


def fm_eliminate(P: HPolyhedron, var_index: int, prune: bool = False) -> HPolyhedron:
    """Orthogonal projection of P dropping the given coordinate.

    An equality row with a nonzero coefficient on the variable is used
    for substitution when available; otherwise inequality rows are
    combined pairwise by sign. Duplicate and trivially dominated rows
    are removed; full LP pruning only runs when requested.
    """
    if not 0 <= var_index < P.dim:
        raise DimensionMismatch(f"variable index {var_index} out of range for dim {P.dim}")
    ineqs = list(P.ineqs())
    eqs = list(P.eqs())
    pivot = next((k for k, (e, _) in enumerate(eqs) if e[var_index] != 0), None)
    if pivot is not None:
        e, d = eqs.pop(pivot)
        ev = e[var_index]

        def subst(row: Vector, rhs: Fraction) -> Row:
            c = row[var_index]
            if c == 0:
                return _drop_coord(row, var_index), rhs
            t = c / ev
            new = tuple(r - t * s for r, s in zip(row, e))
            return _drop_coord(new, var_index), rhs - t * d

        new_ineqs = [subst(a, b) for a, b in ineqs]
        new_eqs = [subst(a, b) for a, b in eqs]
    else:
        pos, neg, zero = [], [], []
        for a, b in ineqs:
            c = a[var_index]
            (pos if c > 0 else neg if c < 0 else zero).append((a, b))
        new_ineqs = [(_drop_coord(a, var_index), b) for a, b in zero]
        for pa, pb in pos:
            for na, nb in neg:
                pc, nc = pa[var_index], na[var_index]
                # pc > 0 and nc < 0, so -nc*row_p + pc*row_n is a
                # nonnegative combination that cancels the variable
                comb = tuple(-nc * p + pc * q for p, q in zip(pa, na))
                new_ineqs.append((_drop_coord(comb, var_index), -nc * pb + pc * nb))
        new_eqs = [(_drop_coord(e, var_index), d) for e, d in eqs]
    new_ineqs, new_eqs = _cleanup(P.dim - 1, new_ineqs, new_eqs)
    out = HPolyhedron(P.dim - 1,
                      tuple(a for a, _ in new_ineqs), tuple(b for _, b in new_ineqs),
                      tuple(e for e, _ in new_eqs), tuple(d for _, d in new_eqs))
    return prune_redundant(out) if prune else out


_PRUNE_THRESHOLD = 24


def _eliminate_leading(P: HPolyhedron, count: int, prune: bool) -> HPolyhedron:
    """Eliminate the first `count` coordinates, cheapest variable first.

    Variables reachable through an equality are substituted away for
    free; the rest are ordered by the classic positive-times-negative
    row-count estimate, with LP pruning whenever the system grows past
    a small threshold.
    """
    cur = P
    targets = list(range(count))
    while targets:
        best_pos, best_cost = None, None
        for pos in targets:
            if any(e[pos] != 0 for e in cur.eq_lhs):
                cost = -1
            else:
                npos = sum(1 for a in cur.ineq_lhs if a[pos] > 0)
                nneg = sum(1 for a in cur.ineq_lhs if a[pos] < 0)
                cost = npos * nneg - npos - nneg
            if best_cost is None or cost < best_cost:
                best_pos, best_cost = pos, cost
        cur = fm_eliminate(cur, best_pos)
        if len(cur.ineq_lhs) > _PRUNE_THRESHOLD:
            cur = prune_redundant(cur)
        targets = [t - 1 if t > best_pos else t for t in targets if t != best_pos]
    return prune_redundant(cur) if prune else cur


def affine_image(P: HPolyhedron, M: Sequence[Sequence], q: Sequence | None = None,
                 prune: bool = True) -> HPolyhedron:
    """The set {M x + q : x in P}, via lifting to (x, y) and eliminating x."""
    rows = tuple(vector(r, P.dim) for r in M)
    m = len(rows)
    off = vector(q, m) if q is not None else (_Z,) * m
    n = P.dim
    pad = (_Z,) * m
    ineq_lhs = tuple(a + pad for a in P.ineq_lhs)
    eq_lhs = [e + pad for e in P.eq_lhs]
    eq_rhs = list(P.eq_rhs)
    for i in range(m):
        unit = tuple(Fraction(1) if j == i else _Z for j in range(m))
        eq_lhs.append(tuple(-c for c in rows[i]) + unit)
        eq_rhs.append(off[i])
    lifted = HPolyhedron(n + m, ineq_lhs, P.ineq_rhs, tuple(eq_lhs), tuple(eq_rhs))
    return _eliminate_leading(lifted, n, prune)


def minkowski_sum(P: HPolyhedron, Q: HPolyhedron, prune: bool = True) -> HPolyhedron:
    """The set {p + q : p in P, q in Q}, via lifting to (p, q, s), s = p + q."""
    if P.dim != Q.dim:
        raise DimensionMismatch("Minkowski sum of sets with different dimensions")
    d = P.dim
    pad = (_Z,) * d
    ineq_lhs = tuple(a + pad + pad for a in P.ineq_lhs) + tuple(pad + a + pad for a in Q.ineq_lhs)
    ineq_rhs = P.ineq_rhs + Q.ineq_rhs
    eq_lhs = [e + pad + pad for e in P.eq_lhs] + [pad + e + pad for e in Q.eq_lhs]
    eq_rhs = list(P.eq_rhs) + list(Q.eq_rhs)
    for i in range(d):
        row = [_Z] * (3 * d)
        row[i] = Fraction(-1)
        row[d + i] = Fraction(-1)
        row[2 * d + i] = Fraction(1)
        eq_lhs.append(tuple(row))
        eq_rhs.append(_Z)
    lifted = HPolyhedron(3 * d, ineq_lhs, ineq_rhs, tuple(eq_lhs), tuple(eq_rhs))
    return _eliminate_leading(lifted, 2 * d, prune)


def recession_cone(P: HPolyhedron) -> PolyCone:
    """Directions v with x + t v in P for all t >= 0; homogenization of the rows."""
    if P.is_empty:
        raise EmptySet("recession cone of an empty set is undefined")
    return PolyCone.from_rows(P.dim, P.ineq_lhs, P.eq_lhs)


def generated_cone_closure(C: HPolyhedron) -> GeneratedConeClosure:
    """Closure of the cone generated by a nonempty polyhedron, held lazily."""
    if C.is_empty:
        raise EmptySet("generated cone of an empty set is undefined")
    return GeneratedConeClosure(C, recession_cone(C))


# ---------------------------------------------------------------------------
# LP-backed predicates
# ---------------------------------------------------------------------------

def box(dim: int, radius=1) -> HPolyhedron:
    """The cube [-radius, radius]^dim."""
    r = frac(radius)
    lhs, rhs = [], []
    for i in range(dim):
        unit = [_Z] * dim
        unit[i] = Fraction(1)
        lhs.append(tuple(unit))
        rhs.append(r)
        lhs.append(tuple(-c for c in unit))
        rhs.append(r)
    return HPolyhedron(dim, tuple(lhs), tuple(rhs))


def full_space(dim: int) -> HPolyhedron:
    return HPolyhedron(dim)


def nonneg_orthant(dim: int) -> HPolyhedron:
    lhs = []
    for i in range(dim):
        row = [_Z] * dim
        row[i] = Fraction(-1)
        lhs.append(tuple(row))
    return HPolyhedron(dim, tuple(lhs), (_Z,) * dim)


def orthant_cone(dim: int) -> PolyCone:
    return PolyCone(nonneg_orthant(dim))


def negate(K: PolyCone) -> PolyCone:
    """The cone -K = {-v : v in K}."""
    c = K.carrier
    return PolyCone.from_rows(c.dim,
                              tuple(tuple(-x for x in a) for a in c.ineq_lhs),
                              tuple(tuple(-x for x in e) for e in c.eq_lhs))


def contains(P: HPolyhedron, x: Sequence) -> bool:
    return P.contains(x)


def cone_intersection_nontrivial(A: PolyCone, B: PolyCone) -> Vector | None:
    """A nonzero ray in A intersect B, or None when the intersection is {0}.

    Both systems are intersected with the cube [-1, 1]^dim, which meets
    every ray of the cone; each coordinate is then maximized and
    minimized by exact LP, and any nonzero optimum is a witness.
    """
    if A.dim != B.dim:
        raise DimensionMismatch("cones of different dimensions")
    from . import lp

    dim = A.dim
    system = A.carrier.intersect(B.carrier).intersect(box(dim))
    for i in range(dim):
        obj = [_Z] * dim
        obj[i] = Fraction(1)
        for sense in ("max", "min"):
            out = lp.solve(lp.LPProblem(tuple(obj), sense, system))
            if out.status != lp.OPTIMAL:  # boxed and contains 0: cannot happen
                raise EmptySet("boxed cone intersection must be feasible and bounded")
            if (sense == "max" and out.value > 0) or (sense == "min" and out.value < 0):
                return out.point
    return None


def is_pointed(K: PolyCone) -> bool:
    """True when K meets -K only in the origin."""
    return cone_intersection_nontrivial(K, negate(K)) is None


def boxed_extremal_rays(K: PolyCone) -> tuple[Vector, ...]:
    """Nonzero directions spanning the extreme behavior of a cone.

    Each coordinate is maximized and minimized over the cone clipped to
    the unit cube; nonzero optima are then refined lexicographically
    (pinning coordinates one at a time) so they land on vertices of the
    boxed cone. Desk-scale heuristic: the result contains every extreme
    ray of a pointed cone in low dimension, possibly with extra interior
    directions, which is harmless for probing.
    """
    from . import lp

    dim = K.dim
    boxed = K.carrier.intersect(box(dim))
    rays: list[Vector] = []
    seen: set[Vector] = set()
    for i in range(dim):
        obj = [_Z] * dim
        obj[i] = Fraction(1)
        for sense in ("max", "min"):
            out = lp.solve(lp.LPProblem(tuple(obj), sense, boxed))
            if out.value == 0:
                continue
            for lex_sense in ("min", "max"):
                pinned = _with_equality(boxed, tuple(obj), out.value)
                point = [None] * dim
                point[i] = out.value
                for j in range(dim):
                    if j == i:
                        continue
                    unit = [_Z] * dim
                    unit[j] = Fraction(1)
                    step = lp.solve(lp.LPProblem(tuple(unit), lex_sense, pinned))
                    point[j] = step.value
                    pinned = _with_equality(pinned, tuple(unit), step.value)
                ray = tuple(point)
                if not is_zero(ray) and ray not in seen:
                    seen.add(ray)
                    rays.append(ray)
    return tuple(rays)


def _with_equality(P: HPolyhedron, row: Vector, value: Fraction) -> HPolyhedron:
    return HPolyhedron(P.dim, P.ineq_lhs, P.ineq_rhs,
                       P.eq_lhs + (row,), P.eq_rhs + (value,))


def is_trivial(K: PolyCone) -> bool:
    """True when K = {0}."""
    return cone_intersection_nontrivial(K, K) is None


def prune_redundant(P: HPolyhedron) -> HPolyhedron:
    """Drop inequality rows implied by the rest, one exact LP per row."""
    from . import lp

    ineqs, eqs = _cleanup(P.dim, list(P.ineqs()), list(P.eqs()))
    if any(is_zero(a) for a, _ in ineqs):
        # syntactically contradictory system; pruning an empty set is moot
        return HPolyhedron(P.dim,
                           tuple(a for a, _ in ineqs), tuple(b for _, b in ineqs),
                           tuple(e for e, _ in eqs), tuple(d for _, d in eqs))
    kept = list(ineqs)
    i = 0
    while i < len(kept):
        a, b = kept[i]
        rest = kept[:i] + kept[i + 1:]
        test = HPolyhedron(P.dim,
                           tuple(r for r, _ in rest), tuple(v for _, v in rest),
                           tuple(e for e, _ in eqs), tuple(d for _, d in eqs))
        out = lp.solve(lp.LPProblem(a, "max", test))
        if out.status == lp.UNBOUNDED:
            i += 1
        elif out.status == lp.OPTIMAL and out.value > b:
            i += 1
        else:
            # optimum <= b, or the rest is already infeasible: row adds nothing
            kept.pop(i)
    return HPolyhedron(P.dim,
                       tuple(a for a, _ in kept), tuple(b for _, b in kept),
                       tuple(e for e, _ in eqs), tuple(d for _, d in eqs))


def is_orthant(K: PolyCone, semantic: bool = False) -> bool:
    """Whether K is the nonnegative orthant of its space.

    The default test is structural: after pruning, the rows must be
    exactly the canonical orthant rows. With ``semantic=True`` a
    set-equality fallback runs instead (mutual inclusion by LPs).
    """
    dim = K.dim
    if semantic:
        from . import lp

        boxed_orthant = nonneg_orthant(dim).intersect(box(dim))
        for a in K.carrier.ineq_lhs:
            out = lp.solve(lp.LPProblem(a, "max", boxed_orthant))
            if out.value > 0:
                return False
        for e in K.carrier.eq_lhs:
            for sense in ("max", "min"):
                out = lp.solve(lp.LPProblem(e, sense, boxed_orthant))
                if out.value != 0:
                    return False
        boxed_k = K.carrier.intersect(box(dim))
        for i in range(dim):
            obj = [_Z] * dim
            obj[i] = Fraction(-1)
            out = lp.solve(lp.LPProblem(tuple(obj), "max", boxed_k))
            if out.value > 0:
                return False
        return True
    pruned = prune_redundant(K.carrier)
    if pruned.eq_lhs:
        return False
    want = set()
    for i in range(dim):
        row = [_Z] * dim
        row[i] = Fraction(-1)
        want.add(tuple(row))
    got = set(pruned.ineq_lhs)
    return got == want and len(pruned.ineq_lhs) == dim
