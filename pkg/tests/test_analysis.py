"""Harness tests: candidate generation, classification, structural suites."""

import random
from fractions import Fraction as F

import pytest

from bensonkit import analysis, lp
from bensonkit.analysis import (CandidateSet, ClassificationRow, classify,
                                dichotomy_check, enumerate_candidates,
                                enumerate_vertices, random_problem,
                                reproduce_examples,
                                verify_efficient_implies_proper)
from bensonkit.errors import DimensionTooLarge
from bensonkit.fixtures import sign_flip_problem, wedge_problem
from bensonkit.model import LinearVOP
from bensonkit.polyhedra import HPolyhedron, box, is_pointed, orthant_cone


def unit_box_problem():
    X = HPolyhedron(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), (1, 0, 1, 0))
    return LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, orthant_cone(2))


def test_box_candidates_have_vertices_and_midpoints():
    cand = enumerate_candidates(unit_box_problem(), grid_step=0)
    verts = {p for p, t in zip(cand.points, cand.provenance) if t == "vertex"}
    assert verts == {(F(0), F(0)), (F(0), F(1)), (F(1), F(0)), (F(1), F(1))}
    mids = {p for p, t in zip(cand.points, cand.provenance) if t == "midpoint"}
    assert (F(1, 2), F(1, 2)) in mids
    assert all(unit_box_problem().X.contains(p) for p in cand.points)


def test_halfplane_candidates_are_vertex_free_with_rays():
    p = wedge_problem()  # X = {x1 >= 0}, no vertices
    cand = enumerate_candidates(p, grid_step=1, lattice_extent=2)
    tags = set(cand.provenance)
    assert "vertex" not in tags
    assert "ray" in tags and "lattice" in tags
    assert all(p.X.contains(pt) for pt in cand.points)


@pytest.mark.parametrize("seed", range(5))
def test_vertices_have_enough_tight_rows(seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(4):
        a = tuple(F(rng.randint(-2, 2)) for _ in range(3))
        if all(c == 0 for c in a):
            continue
        rows.append((a, F(rng.randint(1, 4))))
    P = HPolyhedron(3, tuple(a for a, _ in rows),
                    tuple(b for _, b in rows)).intersect(box(3, 3))
    for v in enumerate_vertices(P, cap=64):
        tight = sum(1 for a, b in P.ineqs() if sum(c * x for c, x in zip(a, v)) == b)
        assert tight >= 3


def test_dimension_cap_and_env_override(monkeypatch):
    X = HPolyhedron(7, ((tuple([1] + [0] * 6)),), (1,))
    p = LinearVOP(7, 2, (tuple([1] + [0] * 6), tuple([0, 1] + [0] * 5)),
                  (0, 0), X, orthant_cone(2))
    with pytest.raises(DimensionTooLarge):
        enumerate_candidates(p, grid_step=0)
    monkeypatch.setenv("BENSONKIT_MAX_DIM", "8")
    cand = enumerate_candidates(p, grid_step=0, max_vertices=2, ray_steps=1)
    assert len(cand) > 0


def test_classify_sign_flip_strip():
    p = sign_flip_problem()
    pts = [(F(0), F(0)), (F(1), F(1, 2)), (F(2), F(3, 4)), (F(0), F(1)), (F(3), F(2))]
    cand = CandidateSet(tuple(pts), ("lattice",) * len(pts))
    rows = classify(p, (0, 1), "epsilon", cand)
    for row in rows:
        expect_eff = row.point[1] < 1
        assert row.eps_efficient == expect_eff
        assert not row.benson_proper
    report = dichotomy_check(rows)
    assert report.outcome == "none-proper"
    assert report.efficient_count == 3


def test_classify_wedge_strip():
    p = wedge_problem()
    pts = [(F(0), F(-1)), (F(1, 2), F(3)), (F(1), F(0)), (F(3, 2), F(0)), (F(4), F(1))]
    cand = CandidateSet(tuple(pts), ("lattice",) * len(pts))
    rows = classify(p, (1, 0), "e", cand)
    for row in rows:
        inside = row.point[0] <= 1
        assert row.eps_efficient == inside
        assert row.benson_proper == inside
    assert dichotomy_check(rows).outcome == "all-proper"


def test_classify_empty_candidates():
    p = sign_flip_problem()
    rows = classify(p, (0, 1), "epsilon", CandidateSet((), ()))
    assert rows == []
    assert dichotomy_check(rows).outcome == "all-proper"  # vacuous


def test_classify_is_order_independent():
    p = wedge_problem()
    pts = ((F(0), F(0)), (F(2), F(0)), (F(1, 2), F(1)))
    cand = CandidateSet(pts, ("lattice",) * 3)
    rows = classify(p, (1, 0), "e", cand)
    perm = (2, 0, 1)
    cand2 = CandidateSet(tuple(pts[i] for i in perm), ("lattice",) * 3)
    rows2 = classify(p, (1, 0), "e", cand2)
    for j, i in enumerate(perm):
        assert rows2[j] == rows[i]


def test_zero_shift_check_on_wedge():
    p = wedge_problem()
    cand = enumerate_candidates(p, grid_step=F(1, 2), lattice_extent=2)
    report = verify_efficient_implies_proper(p, cand)
    assert report.counterexamples == ()
    assert report.efficient_count > 0


def test_zero_shift_check_on_bounded_orthant_problem():
    # bounded X with at least 50 candidates: no efficient point may fail
    X = HPolyhedron(2, ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)),
                    (2, 0, 2, 0, 3))
    p = LinearVOP(2, 2, ((-1, 0), (0, -1)), (0, 0), X, orthant_cone(2))
    cand = enumerate_candidates(p, grid_step=F(1, 4))
    assert len(cand) >= 50
    report = verify_efficient_implies_proper(p, cand)
    assert report.counterexamples == ()


def test_random_problem_determinism_and_validity():
    for seed in range(100):
        a = random_problem(seed)
        b = random_problem(seed)
        assert a == b
    rng = random.Random(0)
    for _ in range(100):
        p = random_problem(rng.randrange(2 ** 30))
        assert is_pointed(p.K)
        assert lp.feasible_point(p.X) is not None


def test_suites_pass_at_small_scale():
    assert analysis.forms_agreement_suite(count=10, seed=5).ok
    assert analysis.zero_shift_suite(count=6, seed=6).ok
    assert analysis.dichotomy_suite(count=8, seed=7).ok
    assert analysis.dichotomy_suite(count=5, seed=8, orthant_only=True).ok


def test_reproduce_examples_report():
    report = reproduce_examples()
    assert report.ok
    text = report.to_text()
    assert "overall: PASS" in text
    assert {f.name for f in report.fixtures} == {"sign-flip", "halfplane", "wedge"}
    doc = report.to_dict()
    assert doc["ok"] is True and len(doc["fixtures"]) == 3
