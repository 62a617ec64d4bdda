"""Chunk extraction and the expressive power it buys under a symbol budget.

A chunk is a closed subterm given a fresh one-symbol name. Because names
count as a single symbol, a budget that could only hold a few primitives can
hold compositions of chunks whose expansions exceed the budget.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hypotheses import BudgetedSpace, concept_atoms, semantic_classes
from .terms import Basis, BasisError, Term, expand_chunks, render_term, term_size

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChunkCandidate:
    definition: Term
    usage_count: int
    mdl_gain: float  # bits
    symbol_gain: int

    @property
    def size(self) -> int:
        return term_size(self.definition)


def symbol_gain(usage_count: int, size: int) -> int:
    """Symbols saved by naming a subterm: each use shrinks by ``size - 1``,
    and the definition costs ``size + 1`` (body plus the new name)."""
    return usage_count * (size - 1) - (size + 1)


def extract_chunks(
    corpus: Sequence[Term], max_chunks: int, basis: Basis | None = None
) -> list[ChunkCandidate]:
    """Rank repeated subterms by description-length savings.

    Symbol savings are converted to bits with a fixed-width code of
    ``log2(len(basis))`` bits per symbol, or over the corpus's own symbol
    inventory when no basis is given. Ties go to the smaller definition,
    then to the lexicographically smaller rendering.
    """
    if max_chunks <= 0:
        return []
    counts: Counter[Term] = Counter()
    inventory: set[str] = set()
    for t in corpus:
        for sub in t.subterms():
            inventory.add(sub.head.name)
            if sub.children:
                counts[sub] += 1
    n_symbols = len(basis) if basis is not None else len(inventory)
    bits_per_symbol = math.log2(n_symbols) if n_symbols > 1 else 1.0

    scored = []
    for sub, n in counts.items():
        if n < 2:
            continue
        gain = symbol_gain(n, term_size(sub))
        if gain > 0:
            scored.append(ChunkCandidate(sub, n, gain * bits_per_symbol, gain))
    scored.sort(key=lambda c: (-c.symbol_gain, c.size, render_term(c.definition)))
    return scored[:max_chunks]


def _fresh_name(basis: Basis, start: int) -> tuple[str, int]:
    i = start
    while f"c{i}" in basis:
        i += 1
    return f"c{i}", i + 1


def extend_basis(basis: Basis, chunks: Iterable[ChunkCandidate | Term]) -> Basis:
    """Append chunks under fresh names ``c1``, ``c2``, ... in order.

    Later chunks may use the names of earlier ones. The input basis is not
    modified.
    """
    counter = 1
    seen = {render_term(expand_chunks(d, basis)): s.name for s, d in basis.chunks}
    for chunk in chunks:
        definition = chunk.definition if isinstance(chunk, ChunkCandidate) else chunk
        name, counter = _fresh_name(basis, counter)
        try:
            basis = basis.with_chunk(name, definition)
        except BasisError as exc:
            raise BasisError(f"cannot add chunk {render_term(definition)}: {exc}") from exc
        key = render_term(expand_chunks(definition, basis))
        if key in seen:
            log.warning("chunk %s duplicates %s (%s)", name, seen[key], key)
        else:
            seen[key] = name
    return basis


def duplicate_chunks(basis: Basis) -> list[tuple[str, str]]:
    """Pairs ``(later, earlier)`` of chunks with identical expansions."""
    seen: dict[str, str] = {}
    dups = []
    for sym, definition in basis.chunks:
        key = render_term(expand_chunks(definition, basis))
        if key in seen:
            dups.append((sym.name, seen[key]))
        else:
            seen[key] = sym.name
    return dups


@dataclass(frozen=True)
class NewConcept:
    table: int
    witness: Term
    expanded_size: int


@dataclass(frozen=True)
class GainReport:
    budget: int
    before: int
    after: int
    newly_expressible: tuple[NewConcept, ...]
    basis: Basis
    duplicates: tuple[tuple[str, str], ...] = ()

    @property
    def gain(self) -> int:
        return self.after - self.before


def expressive_gain(
    basis: Basis,
    budget: int,
    chunks: Sequence[ChunkCandidate | Term],
    atoms: Iterable[str] | None = None,
) -> GainReport:
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if atoms is not None and set(atoms) != set(concept_atoms(basis)):
        raise ValueError("atoms must match the basis's feature atoms")
    extended = extend_basis(basis, chunks)
    before = {c.table for c in semantic_classes(BudgetedSpace(basis, budget))}
    after_classes = semantic_classes(BudgetedSpace(extended, budget))
    new = tuple(
        NewConcept(c.table, c.representative, term_size(expand_chunks(c.representative, extended)))
        for c in after_classes
        if c.table not in before
    )
    return GainReport(
        budget=budget,
        before=len(before),
        after=len(after_classes),
        newly_expressible=new,
        basis=extended,
        duplicates=tuple(duplicate_chunks(extended)),
    )
