"""Bayesian belief fixation over a budgeted hypothesis space.

The posterior only reweights hypotheses the prior already supports; the
selection information of a concept is ``-log2`` of its posterior mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypotheses import BudgetedSpace, FeatureObject
from .terms import Term, term_size

SYNTACTIC = "syntactic"
SEMANTIC = "semantic"
GRANULARITIES = (SYNTACTIC, SEMANTIC)

Example = tuple[FeatureObject, bool]


class OutOfSpaceError(KeyError):
    """The queried concept is not a hypothesis of the space at all."""


def _logsumexp(values: Sequence[float]) -> float:
    m = max(values, default=-math.inf)
    if m == -math.inf:
        return -math.inf
    return m + math.log(math.fsum(math.exp(v - m) for v in values))


@dataclass(frozen=True)
class PriorModel:
    """Description-length prior: ``bits(t) = size(t) * log2(#symbols)``."""

    kind: str = "size-based"

    def __post_init__(self):
        if self.kind != "size-based":
            raise ValueError(f"unsupported prior kind {self.kind!r}")

    def bits(self, t: Term, space: BudgetedSpace) -> float:
        return term_size(t) * math.log2(len(space.basis))

    def log_weights(self, space: BudgetedSpace) -> list[float]:
        """Normalized natural-log prior, aligned with ``space.terms``."""
        raw = [-self.bits(t, space) * math.log(2) for t in space.terms]
        z = _logsumexp(raw)
        return [w - z for w in raw]


@dataclass(frozen=True)
class LikelihoodModel:
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 0.5:
            raise ValueError("epsilon must be in [0, 0.5)")

    @property
    def log_hit(self) -> float:
        return math.log1p(-self.epsilon)

    @property
    def log_miss(self) -> float:
        return math.log(self.epsilon) if self.epsilon > 0 else -math.inf

    def log_likelihood(self, hits: int, misses: int) -> float:
        if misses == 0:
            return hits * self.log_hit
        return hits * self.log_hit + misses * self.log_miss


@dataclass(frozen=True)
class PosteriorTable:
    space: BudgetedSpace
    log_probs: tuple[float, ...]
    dataset_size: int
    degenerate: bool = False

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(math.exp(v) for v in self.log_probs)

    @property
    def entries(self) -> list[tuple[Term, float]]:
        return list(zip(self.space.terms, self.probabilities))

    def probability(self, t: Term) -> float:
        return math.exp(self.log_probability(t))

    def log_probability(self, t: Term) -> float:
        i = self._position(t)
        if self.log_probs[i] > -math.inf and len(self.support()) == 1:
            return 0.0
        return self.log_probs[i]

    def class_probability(self, t: Term) -> float:
        return math.exp(self.class_log_probability(t))

    def class_log_probability(self, t: Term) -> float:
        """Natural-log posterior mass of every hypothesis co-extensive with ``t``.

        Exactly 0 once the class holds the entire support, so that a fully
        fixated concept costs exactly zero bits.
        """
        self._position(t)
        target = self.space.table_of(t)
        inside, outside = [], False
        for lp, tt in zip(self.log_probs, self.space.tables):
            if lp == -math.inf:
                continue
            if tt == target:
                inside.append(lp)
            else:
                outside = True
        if inside and not outside:
            return 0.0
        return _logsumexp(inside)

    def support(self) -> set[Term]:
        return {t for t, lp in zip(self.space.terms, self.log_probs) if lp > -math.inf}

    def _position(self, t: Term) -> int:
        try:
            return self.space.index[t]
        except KeyError:
            raise OutOfSpaceError(f"{t} is not in the hypothesis space") from None


def _misses(space: BudgetedSpace, data: Iterable[Example]) -> list[int]:
    atoms = space.atoms
    idx = [(obj.index(atoms), bool(label)) for obj, label in data]
    return [sum(((tt >> j) & 1) != y for j, y in idx) for tt in space.tables]


def _normalize(space: BudgetedSpace, log_unnorm: list[float], n: int) -> PosteriorTable:
    z = _logsumexp(log_unnorm)
    if z == -math.inf:
        return PosteriorTable(space, tuple(-math.inf for _ in log_unnorm), n, degenerate=True)
    return PosteriorTable(space, tuple(v - z for v in log_unnorm), n)


def posterior(
    space: BudgetedSpace,
    prior: PriorModel,
    like: LikelihoodModel,
    data: Sequence[Example],
) -> PosteriorTable:
    """Posterior over ``space`` computed in log space.

    If no hypothesis is consistent with the data (only possible when
    ``epsilon == 0``) the table is all zeros and flagged ``degenerate``.
    """
    n = len(data)
    log_prior = prior.log_weights(space)
    misses = _misses(space, data)
    log_unnorm = [
        lp + like.log_likelihood(n - m, m) for lp, m in zip(log_prior, misses)
    ]
    return _normalize(space, log_unnorm, n)


def selection_info(table: PosteriorTable, c: Term, granularity: str = SEMANTIC) -> float:
    """Bits needed to select ``c``: ``-log2`` of its (class) posterior probability."""
    if granularity == SYNTACTIC:
        lp = table.log_probability(c)
    elif granularity == SEMANTIC:
        lp = table.class_log_probability(c)
    else:
        raise ValueError(f"granularity must be one of {GRANULARITIES}")
    if lp == -math.inf:
        return math.inf
    return -lp / math.log(2) if lp else 0.0


def fixation_curve(
    space: BudgetedSpace,
    prior: PriorModel,
    like: LikelihoodModel,
    data_stream: Sequence[Example],
    target: Term,
    granularity: str = SEMANTIC,
) -> list[tuple[int, float]]:
    """Selection information of ``target`` after each prefix of the data."""
    if target not in space:
        raise OutOfSpaceError(f"{target} is not in the hypothesis space")
    atoms = space.atoms
    tables = space.tables
    log_post = prior.log_weights(space)
    curve = [(0, selection_info(_normalize(space, log_post, 0), target, granularity))]
    for n, (obj, label) in enumerate(data_stream, 1):
        j = obj.index(atoms)
        hit, miss = like.log_hit, like.log_miss
        log_post = [
            lp + (hit if ((tt >> j) & 1) == label else miss)
            for lp, tt in zip(log_post, tables)
        ]
        curve.append((n, selection_info(_normalize(space, log_post, n), target, granularity)))
    return curve
