"""Built-in two-dimensional problems used by the report and plot paths.

Three small unbounded problems that exercise the interesting regimes:
a sign-flipping objective over the first quadrant, the identity map over
a halfplane with the orthant order, and the same halfplane ordered by a
wedge cone. The first two have shifted-efficient points none of which
are properly efficient; the third has the two solution sets coincide.
"""

from __future__ import annotations

from .model import LinearVOP
from .polyhedra import HPolyhedron, PolyCone, nonneg_orthant, orthant_cone


def sign_flip_problem() -> LinearVOP:
    """X = K = first quadrant, f(x) = (-x1, x2)."""
    return LinearVOP(2, 2, ((-1, 0), (0, 1)), (0, 0),
                     nonneg_orthant(2), orthant_cone(2))


def halfplane_problem() -> LinearVOP:
    """X = {x1 >= 0} with x2 free, f = identity, K = first quadrant."""
    X = HPolyhedron(2, ((-1, 0),), (0,))
    return LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, orthant_cone(2))


def wedge_problem() -> LinearVOP:
    """X = {x1 >= 0}, f = identity, K = {0 <= v2 <= v1}."""
    X = HPolyhedron(2, ((-1, 0),), (0,))
    K = PolyCone.from_rows(2, ineq_lhs=((0, -1), (-1, 1)))
    return LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, K)


BUILTIN = {
    "sign-flip": sign_flip_problem,
    "halfplane": halfplane_problem,
    "wedge": wedge_problem,
}


def builtin_problem(name: str) -> LinearVOP:
    try:
        return BUILTIN[name]()
    except KeyError:
        from .errors import ParseError

        raise ParseError(f"unknown builtin problem {name!r}; "
                         f"choose from {sorted(BUILTIN)}") from None
