"""Linear vector optimization problems: definition, validation, ingestion.

A problem minimizes an affine map ``f(x) = M x + q`` over a polyhedral
constraint set with respect to a polyhedral ordering cone. Problems are
read from JSON documents whose scalars are integers or "p/q" strings;
floating-point literals are rejected outright.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import (ConeMismatch, DimensionMismatch, EmptyConstraintSet,
                     NotACone, ParseError, PerturbationOutsideCone,
                     PointNotFeasible)
from .polyhedra import (HPolyhedron, PolyCone, affine_image, is_orthant,
                        minkowski_sum)
from .rationals import frac, frac_str, mat_vec, matrix, vec_add, vector


@dataclass(frozen=True)
class LinearVOP:
    """Minimize (M x + q) over X, ordered by the cone K."""

    n: int
    m: int
    objective_matrix: tuple
    objective_offset: tuple
    X: HPolyhedron
    K: PolyCone

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DimensionMismatch("decision and objective dimensions must be >= 1")
        object.__setattr__(self, "objective_matrix",
                           matrix(self.objective_matrix, self.n))
        object.__setattr__(self, "objective_offset",
                           vector(self.objective_offset, self.m))
        if len(self.objective_matrix) != self.m:
            raise DimensionMismatch("objective matrix must have one row per objective")
        if self.X.dim != self.n:
            raise DimensionMismatch("constraint set lives in the wrong dimension")
        if self.K.dim != self.m:
            raise DimensionMismatch("ordering cone lives in the wrong dimension")

    def evaluate(self, x: Sequence) -> tuple[Fraction, ...]:
        pt = vector(x, self.n)
        return vec_add(mat_vec(self.objective_matrix, pt), self.objective_offset)

    @cached_property
    def objective_image(self) -> HPolyhedron:
        """The image f(X), a polyhedron in objective space."""
        return affine_image(self.X, self.objective_matrix, self.objective_offset)

    @cached_property
    def objective_image_plus_cone(self) -> HPolyhedron:
        """The set f(X) + K."""
        return minkowski_sum(self.objective_image, self.K.carrier)

    @cached_property
    def has_orthant_cone(self) -> bool:
        return is_orthant(self.K)

    @cached_property
    def cone_is_pointed(self) -> bool:
        from .polyhedra import is_pointed

        return is_pointed(self.K)

    @cached_property
    def cone_is_trivial(self) -> bool:
        from .polyhedra import is_trivial

        return is_trivial(self.K)


@dataclass(frozen=True)
class Perturbation:
    """Objective-space shift: componentwise epsilon on the orthant, or a
    cone element e for general ordering cones."""

    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", vector(self.vector))

    @property
    def dim(self) -> int:
        return len(self.vector)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vector)


@dataclass(frozen=True)
class QueryPoint:
    """A candidate decision point, validated to lie in the constraint set."""

    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", vector(self.x))


def query_point(problem: LinearVOP, coords: Sequence) -> QueryPoint:
    pt = vector(coords, problem.n)
    if not problem.X.contains(pt):
        raise PointNotFeasible(f"point {tuple(map(frac_str, pt))} is outside the constraint set")
    return QueryPoint(pt)


def coords_of(x) -> tuple[Fraction, ...]:
    """Accept a QueryPoint or a raw coordinate sequence."""
    return x.x if isinstance(x, QueryPoint) else vector(x)


def shift_of(pert) -> tuple[Fraction, ...]:
    """Accept a Perturbation or a raw vector."""
    return pert.vector if isinstance(pert, Perturbation) else vector(pert)


def evaluate_objective(problem: LinearVOP, x: Sequence) -> tuple[Fraction, ...]:
    """Exact M x + q."""
    return problem.evaluate(coords_of(x))


def validate_perturbation(problem: LinearVOP, pert, kind: str,
                          semantic_orthant_check: bool = False) -> None:
    """Check the shift vector against the requested query kind.

    kind="epsilon" demands the orthant ordering cone and a componentwise
    nonnegative shift; kind="e" demands a member of the ordering cone.
    The zero shift is accepted by both and routes the downstream tests
    to their classical unshifted versions.
    """
    v = shift_of(pert)
    if len(v) != problem.m:
        raise DimensionMismatch("perturbation has the wrong dimension")
    if kind == "epsilon":
        if not (problem.has_orthant_cone
                or (semantic_orthant_check and is_orthant(problem.K, semantic=True))):
            raise ConeMismatch("componentwise epsilon queries need the orthant ordering cone")
        if any(c < 0 for c in v):
            raise PerturbationOutsideCone("epsilon must be componentwise nonnegative")
    elif kind == "e":
        if not problem.K.contains(v):
            raise PerturbationOutsideCone("shift vector is not an element of the ordering cone")
    else:
        raise ParseError(f"unknown perturbation kind {kind!r}; use 'epsilon' or 'e'")


# ---------------------------------------------------------------------------
# Document ingestion (strict, bit-exact)
# ---------------------------------------------------------------------------

def _reject_float(text: str):
    raise ParseError(f"floating-point literal {text!r} rejected; use 'p/q' strings")


def _field(doc: dict, key: str, where: str = "document"):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r} in {where}")
    return doc[key]


def _int_field(doc: dict, key: str) -> int:
    raw = _field(doc, key)
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ParseError(f"field {key!r} must be an integer")
    return raw


def _vec(raw, dim: int, where: str) -> tuple:
    if not isinstance(raw, list):
        raise ParseError(f"{where} must be an array")
    try:
        return vector(raw, dim)
    except DimensionMismatch as exc:
        raise ParseError(f"{where}: {exc}") from exc


def _mat(raw, width: int, where: str) -> tuple:
    if not isinstance(raw, list):
        raise ParseError(f"{where} must be an array of arrays")
    try:
        return tuple(vector(row, width) for row in raw)
    except DimensionMismatch as exc:
        raise ParseError(f"{where}: {exc}") from exc


def load_problem(doc: dict) -> LinearVOP:
    """Build and validate a problem from a parsed JSON document."""
    n = _int_field(doc, "n")
    m = _int_field(doc, "m")
    if n < 1 or m < 1:
        raise ParseError("'n' and 'm' must be positive")
    obj = _field(doc, "objective")
    mat = _mat(_field(obj, "matrix", "objective"), n, "objective.matrix")
    if len(mat) != m:
        raise ParseError("objective.matrix must have m rows")
    off = _vec(obj.get("offset", [0] * m), m, "objective.offset")

    cons = doc.get("constraints", {})
    ineq_lhs = _mat(cons.get("ineq_lhs", []), n, "constraints.ineq_lhs")
    ineq_rhs = _vec(cons.get("ineq_rhs", []), len(ineq_lhs), "constraints.ineq_rhs")
    eq_lhs = _mat(cons.get("eq_lhs", []), n, "constraints.eq_lhs")
    eq_rhs = _vec(cons.get("eq_rhs", []), len(eq_lhs), "constraints.eq_rhs")
    X = HPolyhedron(n, ineq_lhs, ineq_rhs, eq_lhs, eq_rhs)

    cone = _field(doc, "cone")
    cone_lhs = _mat(_field(cone, "ineq_lhs", "cone"), m, "cone.ineq_lhs")
    if "ineq_rhs" in cone and any(frac(v) != 0 for v in cone["ineq_rhs"]):
        raise NotACone("cone block carries a nonzero right-hand side")
    K = PolyCone.from_rows(m, cone_lhs)

    problem = LinearVOP(n, m, mat, off, X, K)
    if problem.X.is_empty:
        raise EmptyConstraintSet("the constraint set has no feasible point")
    return problem


def loads_problem(text: str) -> LinearVOP:
    try:
        doc = json.loads(text, parse_float=_reject_float,
                         parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return load_problem(doc)


def load_problem_file(path) -> LinearVOP:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_problem(fh.read())


def serialize_problem(problem: LinearVOP) -> dict:
    """Document form of a problem; reparsing yields an identical problem."""
    def srow(row):
        return [frac_str(c) for c in row]

    return {
        "n": problem.n,
        "m": problem.m,
        "objective": {
            "matrix": [srow(r) for r in problem.objective_matrix],
            "offset": srow(problem.objective_offset),
        },
        "constraints": {
            "ineq_lhs": [srow(r) for r in problem.X.ineq_lhs],
            "ineq_rhs": srow(problem.X.ineq_rhs),
            "eq_lhs": [srow(r) for r in problem.X.eq_lhs],
            "eq_rhs": srow(problem.X.eq_rhs),
        },
        "cone": {
            "ineq_lhs": [srow(r) for r in problem.K.carrier.ineq_lhs],
        },
    }
