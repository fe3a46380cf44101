"""Functional PIR and functional batch codes over finite fields."""

from ._core import (
    BudgetExceeded,
    Error,
    Field,
    Matrix,
    NotPrimePower,
    SeedIntegrityError,
    SumNonzero,
    ZeroColumn,
    ZeroVector,
    asymptotic_ratio_fp,
    can_serve,
    construct,
    eval_bounds,
    field_new,
    hall_ordering,
    in_span,
    is_functional_batch,
    is_functional_pir,
    known_value,
    min_length,
    projective_canonical,
    projective_points,
    run_criterion,
    verify_plan,
)

__all__ = [
    "BudgetExceeded",
    "Error",
    "Field",
    "Matrix",
    "NotPrimePower",
    "SeedIntegrityError",
    "SumNonzero",
    "ZeroColumn",
    "ZeroVector",
    "asymptotic_ratio_fp",
    "can_serve",
    "construct",
    "eval_bounds",
    "field_new",
    "hall_ordering",
    "in_span",
    "is_functional_batch",
    "is_functional_pir",
    "known_value",
    "min_length",
    "projective_canonical",
    "projective_points",
    "run_criterion",
    "verify_plan",
]
