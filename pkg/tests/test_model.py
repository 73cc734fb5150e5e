"""Problem ingestion, validation, and serialization round-trips."""

import json
import random
from fractions import Fraction as F

import pytest

from bensonkit.errors import (ConeMismatch, DimensionMismatch,
                              EmptyConstraintSet, NotACone, ParseError,
                              PerturbationOutsideCone, PointNotFeasible)
from bensonkit.model import (evaluate_objective, load_problem, loads_problem,
                             query_point, serialize_problem,
                             validate_perturbation)

SIGN_FLIP_DOC = {
    "n": 2, "m": 2,
    "objective": {"matrix": [["-1", "0"], ["0", "1"]], "offset": ["0", "0"]},
    "constraints": {"ineq_lhs": [["-1", "0"], ["0", "-1"]],
                    "ineq_rhs": ["0", "0"], "eq_lhs": [], "eq_rhs": []},
    "cone": {"ineq_lhs": [["-1", "0"], ["0", "-1"]]},
}

WEDGE_DOC = {
    "n": 2, "m": 2,
    "objective": {"matrix": [["1", "0"], ["0", "1"]], "offset": ["0", "0"]},
    "constraints": {"ineq_lhs": [["-1", "0"]], "ineq_rhs": ["0"],
                    "eq_lhs": [], "eq_rhs": []},
    "cone": {"ineq_lhs": [["0", "-1"], ["-1", "1"]]},
}


def test_load_sign_flip_document():
    p = load_problem(SIGN_FLIP_DOC)
    assert p.n == p.m == 2
    assert p.cone_is_pointed
    assert p.has_orthant_cone
    assert p.evaluate((2, 3)) == (F(-2), F(3))


def test_load_rejects_empty_constraint_set():
    doc = dict(SIGN_FLIP_DOC)
    doc["constraints"] = {"ineq_lhs": [["1", "0"], ["-1", "0"]],
                          "ineq_rhs": ["0", "-1"], "eq_lhs": [], "eq_rhs": []}
    with pytest.raises(EmptyConstraintSet):
        load_problem(doc)


def test_load_wedge_cone_document():
    p = load_problem(WEDGE_DOC)
    assert p.cone_is_pointed
    assert not p.has_orthant_cone
    assert p.K.contains((1, F(1, 2)))
    assert not p.K.contains((1, 2))


def test_load_rejects_nonzero_cone_rhs():
    doc = dict(WEDGE_DOC)
    doc["cone"] = {"ineq_lhs": [["0", "-1"]], "ineq_rhs": ["1"]}
    with pytest.raises(NotACone):
        load_problem(doc)


def test_float_literals_rejected_everywhere():
    with pytest.raises(ParseError):
        loads_problem(json.dumps(SIGN_FLIP_DOC).replace('"0", "1"', '"0", 1.5'))
    doc = dict(SIGN_FLIP_DOC)
    doc["objective"] = {"matrix": [["-1", "0"], ["0", "1.5"]], "offset": ["0", "0"]}
    with pytest.raises(ParseError):
        load_problem(doc)


def test_evaluate_objective_examples():
    p = load_problem(SIGN_FLIP_DOC)
    assert evaluate_objective(p, (2, 3)) == (F(-2), F(3))
    assert evaluate_objective(p, (0, 0)) == (F(0), F(0))
    with pytest.raises(DimensionMismatch):
        evaluate_objective(p, (1, 2, 3))


@pytest.mark.parametrize("seed", range(6))
def test_evaluate_matches_naive_dot_oracle(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    doc = {
        "n": n, "m": m,
        "objective": {
            "matrix": [[str(rng.randint(-5, 5)) for _ in range(n)] for _ in range(m)],
            "offset": [str(rng.randint(-5, 5)) for _ in range(m)],
        },
        "constraints": {},
        "cone": {"ineq_lhs": [["-1" if j == i else "0" for j in range(m)]
                              for i in range(m)]},
    }
    p = load_problem(doc)
    x = tuple(F(rng.randint(-4, 4)) for _ in range(n))
    naive = tuple(
        sum(p.objective_matrix[i][j] * x[j] for j in range(n)) + p.objective_offset[i]
        for i in range(m))
    assert evaluate_objective(p, x) == naive


@pytest.mark.parametrize("seed", range(4))
def test_evaluate_is_affine(seed):
    rng = random.Random(100 + seed)
    p = load_problem(SIGN_FLIP_DOC)
    x = tuple(F(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(2))
    y = tuple(F(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(2))
    mid = tuple((a + b) / 2 for a, b in zip(x, y))
    fx, fy = p.evaluate(x), p.evaluate(y)
    assert p.evaluate(mid) == tuple((a + b) / 2 for a, b in zip(fx, fy))


def test_serialize_round_trip():
    for doc in (SIGN_FLIP_DOC, WEDGE_DOC):
        p = load_problem(doc)
        again = load_problem(serialize_problem(p))
        assert again == p


def test_validate_perturbation_cases():
    orthant = load_problem(SIGN_FLIP_DOC)
    wedge = load_problem(WEDGE_DOC)
    validate_perturbation(orthant, (0, 1), "epsilon")
    validate_perturbation(wedge, (1, 0), "e")
    validate_perturbation(wedge, (0, 0), "e")  # zero shift is legal
    with pytest.raises(PerturbationOutsideCone):
        validate_perturbation(orthant, (-1, 0), "epsilon")
    with pytest.raises(ConeMismatch):
        validate_perturbation(wedge, (1, 0), "epsilon")
    with pytest.raises(PerturbationOutsideCone):
        validate_perturbation(wedge, (0, 1), "e")  # above the wedge


def test_query_point_validation():
    p = load_problem(SIGN_FLIP_DOC)
    q = query_point(p, ("1/2", "0"))
    assert q.x == (F(1, 2), F(0))
    with pytest.raises(PointNotFeasible):
        query_point(p, (-1, 0))
