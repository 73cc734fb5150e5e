"""Exact LP tests: statuses, certificates, and a vertex-enumeration oracle."""

import itertools
import random
from fractions import Fraction as F

import pytest

from bensonkit import lp
from bensonkit.analysis import enumerate_vertices
from bensonkit.errors import InternalCheckError
from bensonkit.polyhedra import HPolyhedron, box, nonneg_orthant


def ineq(dim, rows):
    return HPolyhedron(dim, tuple(r[:-1] for r in rows), tuple(r[-1] for r in rows))


@pytest.fixture(autouse=True)
def _audit():
    with lp.audit_certificates() as counter:
        yield counter


def test_optimal_over_unit_box():
    B = box(2).intersect(nonneg_orthant(2))
    out = lp.solve(lp.LPProblem((1, 0), "max", B))
    assert out.status == lp.OPTIMAL
    assert out.value == 1
    assert B.contains(out.point)


def test_infeasible_with_farkas_row():
    P = ineq(1, [(1, 0), (-1, -1)])  # x <= 0 and x >= 1
    out = lp.solve(lp.LPProblem((1,), "min", P))
    assert out.status == lp.INFEASIBLE
    lam = out.dual_ineq
    assert all(l >= 0 for l in lam)
    assert lam[0] * 1 + lam[1] * (-1) == 0
    assert lam[0] * 0 + lam[1] * (-1) == -1  # reads 0 <= -1


def test_unbounded_over_halfplane():
    P = ineq(2, [(-1, 0, 0)])  # x1 >= 0
    out = lp.solve(lp.LPProblem((1, 0), "max", P))
    assert out.status == lp.UNBOUNDED
    assert out.ray[0] > 0 and out.ray[1] == 0
    assert P.contains(out.point)


def test_feasible_point_of_orthant():
    pt = lp.feasible_point(nonneg_orthant(2))
    assert pt is not None and nonneg_orthant(2).contains(pt)


def test_feasible_point_of_empty_interval():
    P = ineq(1, [(1, 0), (-1, -1)])
    assert lp.feasible_point(P) is None


def test_feasible_point_of_shifted_image_set():
    # image of the first quadrant under (x1,x2) -> (-x1,x2), shifted by
    # -(f(0,0) - (0,1)) = (0,1): the set {z1 <= 0, z2 >= 1}
    from bensonkit.fixtures import sign_flip_problem
    from bensonkit.rationals import vec_sub

    problem = sign_flip_problem()
    c = vec_sub(problem.evaluate((0, 0)), (F(0), F(1)))
    S = problem.objective_image.translate(tuple(-v for v in c))
    # independent nonemptiness: shifted lattice values of f over X
    lattice_hits = []
    for y in itertools.product(range(0, 3), range(0, 3)):
        z = vec_sub(problem.evaluate(y), c)
        if S.contains(z):
            lattice_hits.append(z)
    assert lattice_hits, "oracle says the set is nonempty"
    pt = lp.feasible_point(S)
    assert pt is not None and S.contains(pt)


def bounded_random(seed, dim):
    rng = random.Random(seed)
    rows = []
    for _ in range(rng.randint(2, 5)):
        a = tuple(F(rng.randint(-3, 3)) for _ in range(dim))
        if all(c == 0 for c in a):
            continue
        rows.append(a + (F(rng.randint(0, 5)),))
    P = ineq(dim, rows).intersect(box(dim, 4))
    return P


@pytest.mark.parametrize("seed", range(12))
def test_optimum_matches_vertex_enumeration_oracle(seed):
    dim = 2 + seed % 2
    P = bounded_random(seed, dim)
    rng = random.Random(seed + 1000)
    obj = tuple(F(rng.randint(-3, 3)) for _ in range(dim))
    verts = enumerate_vertices(P, cap=200)
    out = lp.solve(lp.LPProblem(obj, "max", P))
    if not verts:
        assert out.status == lp.INFEASIBLE
        return
    best = max(sum(c * v for c, v in zip(obj, vert)) for vert in verts)
    assert out.status == lp.OPTIMAL
    assert out.value == best


def test_duality_gap_is_zero():
    P = ineq(2, [(1, 1, 4), (-1, 0, 0), (0, -1, 0)])
    problem = lp.LPProblem((2, 3), "max", P)
    out = lp.solve(problem)
    assert out.status == lp.OPTIMAL
    bound = sum(l * b for l, b in zip(out.dual_ineq, P.ineq_rhs))
    assert bound == out.value


def test_identical_inputs_identical_outcomes():
    P = bounded_random(5, 3)
    problem = lp.LPProblem((1, -2, 3), "min", P)
    assert lp.solve(problem) == lp.solve(problem)


def test_audit_counts_and_catches(_audit):
    lp.solve(lp.LPProblem((1, 0), "max", box(2)))
    assert _audit.count >= 1
    bad = lp.LPOutcome(lp.OPTIMAL, point=(F(99), F(0)), value=F(99))
    with pytest.raises(InternalCheckError):
        bad.verify(lp.LPProblem((1, 0), "max", box(2)))


def test_equality_rows_and_negative_rhs():
    # x1 + x2 = -1 with x1 <= -2: max x1 is attained at (-2, 1)
    P = HPolyhedron(2, ((1, 0),), (F(-2),), ((1, 1),), (F(-1),))
    out = lp.solve(lp.LPProblem((1, 0), "max", P))
    assert out.status == lp.OPTIMAL
    assert out.point == (F(-2), F(1)) and out.value == -2
    # and max x2 runs away along the equality line
    out2 = lp.solve(lp.LPProblem((0, 1), "max", P))
    assert out2.status == lp.UNBOUNDED


def test_redundant_equality_rows_are_survived():
    # duplicated equality makes the phase-1 basis singular without cleanup
    P = HPolyhedron(2, ((-1, 0),), (F(0),), ((1, 1), (2, 2)), (F(2), F(4)))
    out = lp.solve(lp.LPProblem((1, 0), "min", P))
    assert out.status == lp.OPTIMAL
    assert out.value == 0
