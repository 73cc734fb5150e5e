"""Exact certification of approximate (proper) efficiency in linear
vector optimization.

The package decides, over exact rational arithmetic with machine-checkable
certificates, whether a point of a linear vector optimization problem is
shifted-efficient or properly efficient in the Benson/Geoffrion sense,
and verifies the structural facts that hold for every linear problem
(form equivalence, efficient-implies-proper at zero shift, and the
all-or-none properness dichotomy under a nonzero shift).
"""

from .efficiency import (ConeWitness, DominationWitness, LPEvidence,
                         RatioProbe, RatioProfile, Verdict,
                         benson_forms_agree, geoffrion_ratio_profile,
                         is_benson_proper, is_eps_efficient,
                         is_eps_properly_efficient)
from .errors import BensonkitError
from .lp import LPOutcome, LPProblem, audit_certificates, feasible_point, solve
from .model import (LinearVOP, Perturbation, QueryPoint, evaluate_objective,
                    load_problem, load_problem_file, loads_problem,
                    query_point, serialize_problem, validate_perturbation)
from .polyhedra import (GeneratedConeClosure, HPolyhedron, PolyCone,
                        affine_image, cone_intersection_nontrivial,
                        fm_eliminate, generated_cone_closure, is_pointed,
                        minkowski_sum, negate, prune_redundant,
                        recession_cone)

__version__ = "0.1.0"

__all__ = [
    "BensonkitError",
    "ConeWitness",
    "DominationWitness",
    "GeneratedConeClosure",
    "HPolyhedron",
    "LPEvidence",
    "LPOutcome",
    "LPProblem",
    "LinearVOP",
    "Perturbation",
    "PolyCone",
    "QueryPoint",
    "RatioProbe",
    "RatioProfile",
    "Verdict",
    "affine_image",
    "audit_certificates",
    "benson_forms_agree",
    "cone_intersection_nontrivial",
    "evaluate_objective",
    "feasible_point",
    "fm_eliminate",
    "generated_cone_closure",
    "geoffrion_ratio_profile",
    "is_benson_proper",
    "is_eps_efficient",
    "is_eps_properly_efficient",
    "is_pointed",
    "load_problem",
    "load_problem_file",
    "loads_problem",
    "minkowski_sum",
    "negate",
    "prune_redundant",
    "query_point",
    "recession_cone",
    "serialize_problem",
    "solve",
    "validate_perturbation",
]
