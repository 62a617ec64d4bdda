"""Graded concept possession: total information minus selection information.

``degree = T - R`` where ``T`` is the information needed to specify a
concept outright and ``R`` the information the environment still has to
supply before the system represents it. ``R = inf`` (the concept lies
outside the system's closure) gives ``degree = -inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .hypotheses import BudgetedSpace, contains_semantics
from .inference import LikelihoodModel, PosteriorTable, PriorModel, posterior, selection_info
from .terms import Basis, Term, term_size

BITS = "bits"
NATS = "nats"
UNITS = (BITS, NATS)


class UnitMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class InfoQuantity:
    value: float
    unit: str = BITS
    lower_bound: bool = False

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValueError(f"unit must be one of {UNITS}")
        if self.value < 0:
            raise ValueError("information quantities are non-negative")

    def to(self, unit: str) -> InfoQuantity:
        if unit == self.unit:
            return self
        if unit == BITS:
            return InfoQuantity(self.value / math.log(2), BITS, self.lower_bound)
        if unit == NATS:
            return InfoQuantity(self.value * math.log(2), NATS, self.lower_bound)
        raise ValueError(f"unit must be one of {UNITS}")

    def __str__(self) -> str:
        return f"{self.value:.4f} {self.unit}"


def log_factorial(n: int, unit: str = BITS) -> InfoQuantity:
    """``log n!`` by exact term-by-term summation (no Stirling approximation)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if unit not in UNITS:
        raise ValueError(f"unit must be one of {UNITS}")
    log = math.log2 if unit == BITS else math.log
    return InfoQuantity(math.fsum(log(k) for k in range(2, n + 1)), unit)


def stirling_log_factorial(n: int, unit: str = BITS) -> float:
    """Stirling series with two correction terms; a cross-check only."""
    if n < 2:
        return 0.0
    nats = (
        n * math.log(n) - n + 0.5 * math.log(2 * math.pi * n)
        + 1 / (12 * n) - 1 / (360 * n**3)
    )
    return nats / math.log(2) if unit == BITS else nats


def text_info(char_count: int, bits_per_char: float) -> InfoQuantity:
    if char_count < 0:
        raise ValueError("char_count must be >= 0")
    if bits_per_char <= 0:
        raise ValueError("bits_per_char must be positive")
    return InfoQuantity(char_count * bits_per_char, BITS)


KEYBOARD = "keyboard"
ONE_BUTTON = "one-button"
ORDERED_BUTTONS = "ordered-buttons"
RESTRICTED_SPACE = "restricted-space"
MODEL_KINDS = (KEYBOARD, ONE_BUTTON, ORDERED_BUTTONS, RESTRICTED_SPACE)


@dataclass(frozen=True)
class SelectionModel:
    """How an interface makes a user pick out a target.

    * ``keyboard``: type ``symbol_count`` symbols at ``bits_per_symbol`` each.
    * ``one-button``: pick one of ``action_count`` affordances.
    * ``ordered-buttons``: press ``n`` unlabeled buttons in the right order.
    * ``restricted-space``: select from a budgeted hypothesis space. With no
      space attached the target is taken to lie outside the closure.
    """

    kind: str
    n: int = 0
    bits_per_symbol: float = 0.0
    symbol_count: int = 0
    action_count: int = 1
    space: BudgetedSpace | None = field(default=None, compare=False)
    target: Term | None = None
    table: PosteriorTable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"model kind must be one of {', '.join(MODEL_KINDS)}")
        if self.kind == ORDERED_BUTTONS and self.n < 0:
            raise ValueError("ordered-buttons needs n >= 0")
        if self.kind == ONE_BUTTON and self.action_count < 1:
            raise ValueError("one-button needs action_count >= 1")

    @property
    def label(self) -> str:
        if self.kind == ORDERED_BUTTONS:
            return f"{self.kind}:{self.n}"
        return self.kind


def required_info(model: SelectionModel) -> InfoQuantity:
    if model.kind == KEYBOARD:
        return text_info(model.symbol_count, model.bits_per_symbol)
    if model.kind == ONE_BUTTON:
        return InfoQuantity(math.log2(model.action_count), BITS)
    if model.kind == ORDERED_BUTTONS:
        return log_factorial(model.n, BITS)
    # restricted-space
    if model.space is None or model.target is None:
        return InfoQuantity(math.inf, BITS)
    found, witness = contains_semantics(model.space, model.space.table_of(model.target))
    if not found:
        return InfoQuantity(math.inf, BITS)
    table = model.table or posterior(model.space, PriorModel(), LikelihoodModel(), [])
    return InfoQuantity(selection_info(table, witness), BITS)


@dataclass(frozen=True)
class PossessionReport:
    concept_id: str
    T: InfoQuantity
    R: InfoQuantity

    @property
    def unit(self) -> str:
        return self.T.unit

    @property
    def degree(self) -> float:
        if math.isinf(self.R.value):
            return -math.inf
        return self.T.value - self.R.value

    @property
    def fraction(self) -> float | None:
        if self.T.value > 0 and self.R.value <= self.T.value:
            return self.degree / self.T.value
        return None


def degree_of_possession(T: InfoQuantity, R: InfoQuantity, concept_id: str = "") -> PossessionReport:
    if T.unit != R.unit:
        raise UnitMismatchError(f"T is in {T.unit} but R is in {R.unit}; convert first")
    return PossessionReport(concept_id, T, R)


def term_total_info(t: Term, reference: Basis, budget: int) -> InfoQuantity:
    """Description length of the smallest co-extensive term in ``reference``.

    Searches every term up to ``budget`` symbols. When nothing within the
    budget matches, the result is a lower bound of ``budget + 1`` symbols.
    """
    space = BudgetedSpace(reference, budget)
    per_symbol = math.log2(len(reference))
    found, witness = contains_semantics(space, space.table_of(t))
    if found:
        return InfoQuantity(term_size(witness) * per_symbol, BITS)
    return InfoQuantity((budget + 1) * per_symbol, BITS, lower_bound=True)
