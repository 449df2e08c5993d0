"""Integral points on the root stack P^1[sqrt f] over Z[1/2q].

The stack has local integral points everywhere, and the only obstruction
to a global one comes from the finite group of locally constant Brauer
classes.  Those classes are square classes d built from -1 and the primes
of 2q, taken modulo the class of q.  A class obstructs exactly when the
product of the epsilon invariants of f over the bad places where d is not
a local square equals -1.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .arith import (
    Place,
    SquareClass,
    is_local_square,
    multiply_classes,
    product_of_signs,
)
from .forms import (
    BinaryQuadraticForm,
    _as_form,
    _is_square,
    bad_places,
    discriminant,
    epsilon_invariant,
    has_rational_root,
)

__all__ = [
    "Outcome",
    "BehGroup",
    "PlaceEvidence",
    "Verdict",
    "ConventionError",
    "beh_candidates",
    "beh_group",
    "beh_value",
    "obstruction_products",
    "decide",
    "verify_obstruction",
]


class Outcome(enum.Enum):
    EXISTS = "exists"
    OBSTRUCTION = "obstruction"
    DEGENERATE = "degenerate"


class ConventionError(AssertionError):
    """The two obstruction products disagreed; the product formula failed."""


@dataclass(frozen=True)
class BehGroup:
    q_class: SquareClass
    representatives: tuple[SquareClass, ...]
    places: tuple[Place, ...]

    @property
    def order(self) -> int:
        return len(self.representatives)

    def __contains__(self, d) -> bool:
        d = SquareClass.of(d)
        return d in self.representatives or multiply_classes(d, self.q_class) in self.representatives

    def __iter__(self):
        return iter(self.representatives)

    def __len__(self):
        return len(self.representatives)


def _rep_key(d: SquareClass):
    # prefer odd classes, then small |d|, then negative sign
    return (2 in d.primes, abs(d.value), d.sign > 0)


def _membership(d: SquareClass, q_class: SquareClass, places) -> bool:
    dq = multiply_classes(d, q_class)
    return all(is_local_square(d, v) or is_local_square(dq, v) for v in places)


def beh_candidates(f) -> list[SquareClass]:
    """Every signed squarefree divisor of 2q meeting the local conditions.

    The real place is included among the places checked, which is the
    same as requiring d > 0 when q > 0.
    """
    f = _as_form(f)
    disc = discriminant(f)
    if _is_square(disc.q):
        raise ValueError(f"discriminant {disc.q} of {f} is a square; f has a rational root")
    places = bad_places(f)
    out = []
    for sign in (1, -1):
        for k in range(len(disc.bad_primes) + 1):
            for subset in itertools.combinations(disc.bad_primes, k):
                d = SquareClass(sign, subset)
                if _membership(d, disc.square_class, places):
                    out.append(d)
    return out


def beh_group(f) -> BehGroup:
    f = _as_form(f)
    disc = discriminant(f)
    qbar = disc.square_class
    one = SquareClass(1)
    reps = [one]
    seen = {one, qbar}
    for d in sorted(beh_candidates(f), key=_rep_key):
        if d in seen:
            continue
        partner = multiply_classes(d, qbar)
        seen.update((d, partner))
        reps.append(min(d, partner, key=_rep_key))
    return BehGroup(qbar, tuple(reps), tuple(bad_places(f)))


def _epsilons(f: BinaryQuadraticForm, places) -> dict[Place, int]:
    return {v: epsilon_invariant(f, v) for v in places}


def obstruction_products(f, d) -> tuple[int, int]:
    """(product of eps_v where d is not a local square, product where it is).

    Both run over the bad places only.
    """
    f = _as_form(f)
    d = SquareClass.of(d)
    places = bad_places(f)
    eps = _epsilons(f, places)
    off = product_of_signs(eps[v] for v in places if not is_local_square(d, v))
    on = product_of_signs(eps[v] for v in places if is_local_square(d, v))
    return off, on


def beh_value(f, d) -> int:
    f = _as_form(f)
    d = SquareClass.of(d)
    disc = discriminant(f)
    places = bad_places(f)
    if not _membership(d, disc.square_class, places):
        raise ValueError(f"class {d} is not locally trivial modulo q for {f}")
    off, on = obstruction_products(f, d)
    if off != on:
        raise ConventionError(f"products disagree for f={f}, d={d}: {off} vs {on}")
    return off


@dataclass(frozen=True)
class PlaceEvidence:
    place: Place
    epsilon: int
    d_square: bool
    dq_square: bool


@dataclass(frozen=True)
class Verdict:
    form: BinaryQuadraticForm
    outcome: Outcome
    q: int
    witness_class: SquareClass | None = None
    witness_point: tuple[int, int] | None = None
    beh_order: int | None = None
    epsilon: dict = field(default_factory=dict)
    evidence: tuple[PlaceEvidence, ...] = ()

    @property
    def has_point(self) -> bool:
        return self.outcome is Outcome.EXISTS

    def with_point(self, point) -> "Verdict":
        return Verdict(
            self.form, self.outcome, self.q, self.witness_class, point,
            self.beh_order, self.epsilon, self.evidence,
        )


def _evidence(f, d: SquareClass, qbar: SquareClass, eps) -> tuple[PlaceEvidence, ...]:
    dq = multiply_classes(d, qbar)
    return tuple(
        PlaceEvidence(v, e, is_local_square(d, v), is_local_square(dq, v))
        for v, e in eps.items()
    )


def decide(f) -> Verdict:
    """Decide whether P^1[sqrt f] has a Z[1/2q]-point.

    Degenerate forms (q = 0) and forms with a rational root are settled
    before any Brauer class is looked at; a rational root is itself a
    (stacky) integral point.
    """
    f = _as_form(f)
    q = f.q
    if q == 0:
        return Verdict(f, Outcome.DEGENERATE, q)
    root = has_rational_root(f)
    if root is not None:
        return Verdict(f, Outcome.EXISTS, q, witness_point=root)

    group = beh_group(f)
    eps = _epsilons(f, group.places)
    for d in group.representatives[1:]:
        if beh_value(f, d) == -1:
            return Verdict(
                f, Outcome.OBSTRUCTION, q,
                witness_class=d,
                beh_order=group.order,
                epsilon=eps,
                evidence=_evidence(f, d, group.q_class, eps),
            )
    return Verdict(f, Outcome.EXISTS, q, beh_order=group.order, epsilon=eps)



def verify_obstruction(f, d) -> bool:
    """Re-check a witness class against both conditions from scratch.

    (1) at every bad place d or d*q is a local square; (2) the epsilon
    product over places where d is not a square and the one over places
    where it is are both -1.
    """
    f = _as_form(f)
    d = SquareClass.of(d)
    disc = discriminant(f)
    if _is_square(disc.q):
        return False
    if not _membership(d, disc.square_class, bad_places(f)):
        return False
    return obstruction_products(f, d) == (-1, -1)
