"""Decision-procedure tests on the built-in fixtures and random problems."""

import random
from fractions import Fraction as F

import pytest

from bensonkit import analysis, lp
from bensonkit.efficiency import (ConeWitness, DominationWitness, LPEvidence,
                                  benson_forms_agree, geoffrion_ratio_profile,
                                  is_benson_proper, is_eps_efficient,
                                  is_eps_properly_efficient, verdict_from_dict,
                                  verdict_to_dict)
from bensonkit.errors import (ConeMismatch, NotEpsEfficient, NotPointed,
                              PointNotFeasible)
from bensonkit.fixtures import (halfplane_problem, sign_flip_problem,
                                wedge_problem)
from bensonkit.model import LinearVOP
from bensonkit.polyhedra import HPolyhedron, PolyCone, orthant_cone


@pytest.fixture(autouse=True)
def _audit():
    with lp.audit_certificates() as counter:
        yield counter


# ---------------------------------------------------------------------------
# Shifted efficiency
# ---------------------------------------------------------------------------

def test_sign_flip_strip_point_is_efficient():
    p = sign_flip_problem()
    v = is_eps_efficient(p, (2, F(1, 2)), (0, 1))
    assert v.member
    assert isinstance(v.certificate, LPEvidence)


def test_sign_flip_high_point_is_dominated():
    p = sign_flip_problem()
    v = is_eps_efficient(p, (0, 2), (0, 1))
    assert not v.member
    assert isinstance(v.certificate, DominationWitness)
    v.verify(p, (0, 2), (0, 1))
    # the witness dominates the shifted value (0, 1) without matching it
    fy = v.certificate.objective_value
    assert fy != (F(0), F(1)) and fy[0] <= 0 and fy[1] <= 1


def test_singleton_with_zero_shift_is_efficient():
    X = HPolyhedron(1, eq_lhs=((1,),), eq_rhs=(3,))
    p = LinearVOP(1, 2, ((2,), (-1,)), (0, 0), X, orthant_cone(2))
    assert is_eps_efficient(p, (3,), (0, 0)).member


def test_wedge_strip_point_is_shift_efficient():
    p = wedge_problem()
    assert is_eps_efficient(p, (F(1, 2), 7), (1, 0)).member


def test_query_point_must_be_feasible():
    p = sign_flip_problem()
    with pytest.raises(PointNotFeasible):
        is_eps_efficient(p, (-1, 0), (0, 1))


# ---------------------------------------------------------------------------
# Benson-style criterion
# ---------------------------------------------------------------------------

def test_sign_flip_criterion_fails_with_axis_witness():
    p = sign_flip_problem()
    v = is_benson_proper(p, (0, 0), (0, 1), form="plain")
    assert not v.member
    cert = v.certificate
    assert isinstance(cert, ConeWitness)
    assert cert.ray == (F(-1), F(0)) and cert.branch == "recession"
    v.verify(p, (0, 0), (0, 1))


def test_halfplane_criterion_fails_downward():
    p = halfplane_problem()
    v = is_benson_proper(p, (0, 5), (1, 0))
    assert not v.member
    assert v.certificate.ray == (F(0), F(-1))
    v.verify(p, (0, 5), (1, 0))


def test_wedge_boundary_point_is_proper():
    p = wedge_problem()
    for form in ("plain", "plusK"):
        v = is_benson_proper(p, (1, 0), (1, 0), form=form)
        assert v.member, form


def test_wedge_zero_shift_classical_case():
    p = wedge_problem()
    v = is_benson_proper(p, (0, 0), (0, 0))
    assert v.member


def test_criterion_requires_pointed_cone():
    X = HPolyhedron(2, ((-1, 0),), (0,))
    halfplane_cone = PolyCone.from_rows(2, ineq_lhs=((-1, 0),))
    p = LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, halfplane_cone)
    with pytest.raises(NotPointed):
        is_benson_proper(p, (0, 0), (0, 0))


def test_properly_efficient_on_sign_flip_strip_is_always_no():
    p = sign_flip_problem()
    for x1 in (0, 1, 2):
        for x2 in (0, F(1, 2)):
            v = is_eps_properly_efficient(p, (x1, x2), (0, 1))
            assert not v.member
            v.verify(p, (x1, x2), (0, 1))


def test_properly_efficient_on_halfplane_strip_is_always_no():
    p = halfplane_problem()
    v = is_eps_properly_efficient(p, (F(1, 2), -3), (1, 0))
    assert not v.member


def test_singleton_zero_shift_is_properly_efficient():
    X = HPolyhedron(2, eq_lhs=((1, 0), (0, 1)), eq_rhs=(1, 2))
    p = LinearVOP(2, 2, ((3, 1), (-2, 5)), (1, 1), X, orthant_cone(2))
    v = is_eps_properly_efficient(p, (1, 2), (0, 0))
    assert v.member


def test_properly_efficient_rejects_non_orthant_cone():
    with pytest.raises(ConeMismatch):
        is_eps_properly_efficient(wedge_problem(), (0, 0), (1, 0))


def test_proper_implies_efficient_on_random_problems():
    rng = random.Random(11)
    hits = 0
    for _ in range(25):
        p = analysis.random_problem(rng.randrange(2 ** 30))
        x = analysis.random_feasible_point(p, rng)
        e = analysis.random_cone_element(p.K, rng, allow_zero=True)
        proper = is_benson_proper(p, x, e)
        if proper.member:
            hits += 1
            assert is_eps_efficient(p, x, e).member
    assert hits > 0


def test_forms_agree_on_fixtures_and_random_problems():
    for p, pert, x in ((sign_flip_problem(), (0, 1), (1, 0)),
                       (halfplane_problem(), (1, 0), (F(1, 2), 2)),
                       (wedge_problem(), (1, 0), (F(1, 2), 0))):
        agree, _, _ = benson_forms_agree(p, x, pert)
        assert agree
    rng = random.Random(23)
    for _ in range(15):
        p = analysis.random_problem(rng.randrange(2 ** 30))
        x = analysis.random_feasible_point(p, rng)
        e = analysis.random_cone_element(p.K, rng, allow_zero=True)
        agree, plain, lifted = benson_forms_agree(p, x, e)
        assert agree, (plain, lifted)


def test_interior_cone_point_trivially_proper():
    # single image point sitting inside the ordering cone
    X = HPolyhedron(2, eq_lhs=((1, 0), (0, 1)), eq_rhs=(1, 1))
    p = LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, orthant_cone(2))
    agree, plain, lifted = benson_forms_agree(p, (1, 1), (0, 0))
    assert agree and plain.member and lifted.member


def test_eps_monotonicity_on_random_orthant_problems():
    rng = random.Random(31)
    checked = 0
    for _ in range(40):
        p = analysis.random_problem(rng.randrange(2 ** 30))
        if not p.has_orthant_cone:
            continue
        x = analysis.random_feasible_point(p, rng)
        small = tuple(F(rng.randint(0, 2)) for _ in range(p.m))
        big = tuple(s + F(rng.randint(0, 2)) for s in small)
        if is_eps_efficient(p, x, small).member:
            assert is_eps_efficient(p, x, big).member
            checked += 1
    assert checked > 0


# ---------------------------------------------------------------------------
# Ratio profiling
# ---------------------------------------------------------------------------

def test_profile_diverges_on_sign_flip():
    p = sign_flip_problem()
    prof = geoffrion_ratio_profile(p, (0, 0), (0, 1), budget=200)
    assert prof.diverging
    assert prof.sup_estimate > 10 ** 3
    # along the first-axis ray the ratio equals the step exactly:
    # loss (0 - (-t) - 0) over gain (0 - 0 + 1)
    axis = [pr for pr in prof.probes if pr.x[1] == 0 and pr.x[0] > 0]
    assert axis
    for pr in axis:
        assert pr.ratio == pr.x[0]


def test_profile_empty_for_singleton():
    X = HPolyhedron(2, eq_lhs=((1, 0), (0, 1)), eq_rhs=(2, 3))
    p = LinearVOP(2, 2, ((1, 0), (0, 1)), (0, 0), X, orthant_cone(2))
    prof = geoffrion_ratio_profile(p, (2, 3), (0, 0), budget=50)
    assert prof.probes == () and prof.sup_estimate == 0 and not prof.diverging


def test_profile_rejects_wedge_cone():
    with pytest.raises(ConeMismatch):
        geoffrion_ratio_profile(wedge_problem(), (0, 0), (1, 0))


def test_profile_requires_shift_efficiency():
    p = sign_flip_problem()
    with pytest.raises(NotEpsEfficient):
        geoffrion_ratio_profile(p, (0, 2), (0, 1), budget=50)


def test_profile_stays_bounded_on_proper_instance():
    # orthant rewrite of the wedge problem: objective (x2, x1 - x2)
    X = HPolyhedron(2, ((-1, 0),), (0,))
    p = LinearVOP(2, 2, ((0, 1), (1, -1)), (0, 0), X, orthant_cone(2))
    assert is_eps_properly_efficient(p, (F(1, 2), 3), (0, 1)).member
    prof = geoffrion_ratio_profile(p, (F(1, 2), 3), (0, 1), budget=300)
    assert not prof.diverging
    assert prof.sup_estimate <= 10 ** 6


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def test_verdict_round_trip_through_documents():
    p = sign_flip_problem()
    for verdict in (is_eps_efficient(p, (0, 2), (0, 1)),
                    is_eps_efficient(p, (2, F(1, 2)), (0, 1)),
                    is_benson_proper(p, (0, 0), (0, 1)),
                    is_benson_proper(wedge_problem(), (1, 0), (1, 0))):
        doc = verdict_to_dict(verdict)
        again = verdict_from_dict(doc)
        assert again == verdict
        assert verdict_to_dict(again) == doc
