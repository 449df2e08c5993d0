"""Decide integral points on root stacks P^1[sqrt f] over Z[1/2q] and
compute invariants of stacky curves."""

from .arith import (
    REAL,
    Factorization,
    FactorizationBudgetExceeded,
    Place,
    SquareClass,
    factorize,
    hilbert_symbol,
    is_local_square,
    legendre,
    multiply_classes,
    squarefree_class,
    valuation,
)
from .decider import BehGroup, Outcome, Verdict, beh_group, beh_value, decide, verify_obstruction
from .forms import (
    BinaryQuadraticForm,
    DegenerateFormError,
    bad_places,
    discriminant,
    epsilon_invariant,
    has_rational_root,
    parse_form,
    transform,
)
from .invariants import (
    FiniteAbelianGroup,
    Signature,
    StackyLocusPoint,
    d_of_curve,
    d_of_point,
    genus,
    is_simply_connected,
    pic0_group,
    smith_normal_form,
)
from .oracle import (
    Consistency,
    ProjectivePoint,
    SearchReport,
    cross_validate,
    is_integral_point,
    search,
    verify_local,
)

__version__ = "0.1.0"
