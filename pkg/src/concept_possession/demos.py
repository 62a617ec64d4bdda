"""Canned experiments: the word-processor arithmetic, chunking, and dax learning."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chunks import GainReport, expressive_gain, extract_chunks
from .hypotheses import DEFAULT_ATOMS, DEFAULT_BASIS, BudgetedSpace, all_objects, contains_semantics, evaluate
from .inference import SEMANTIC, SYNTACTIC, LikelihoodModel, PriorModel, fixation_curve
from .possession import (
    BITS,
    NATS,
    InfoQuantity,
    PossessionReport,
    SelectionModel,
    degree_of_possession,
    log_factorial,
    required_info,
)
from .terms import Term, parse_term, term_size

HOBBIT_BITS = 587_000
HOBBIT_CHARS = 489_000
HOBBIT_CHAPTERS = 19
HOBBIT_SENTENCES = 4_850


@dataclass(frozen=True)
class HobbitRow:
    model: str
    report: PossessionReport
    r_unit_note: str = ""


def hobbit_rows() -> list[HobbitRow]:
    """The four word processors, in order: keyboard, one button, chapters, sentences.

    The sentence row reproduces the published figure of 36,316, which is
    ``ln(4850!)``; its value is carried into bits unchanged so that the
    subtraction matches the published 550,684. :func:`hobbit_sentences_log2`
    gives the base-2 reading.
    """
    T = InfoQuantity(HOBBIT_BITS, BITS)
    keyboard = SelectionModel(
        "keyboard", symbol_count=HOBBIT_CHARS, bits_per_symbol=HOBBIT_BITS / HOBBIT_CHARS
    )
    chapters = SelectionModel("ordered-buttons", n=HOBBIT_CHAPTERS)
    sentences_nats = log_factorial(HOBBIT_SENTENCES, NATS)
    return [
        HobbitRow("keyboard", degree_of_possession(T, required_info(keyboard), "hobbit")),
        HobbitRow("one-button", degree_of_possession(T, required_info(SelectionModel("one-button")), "hobbit")),
        HobbitRow(f"chapters={HOBBIT_CHAPTERS}", degree_of_possession(T, required_info(chapters), "hobbit")),
        HobbitRow(
            f"sentences={HOBBIT_SENTENCES}",
            degree_of_possession(T, InfoQuantity(sentences_nats.value, BITS), "hobbit"),
            "ln, as printed",
        ),
    ]


def hobbit_sentences_log2() -> HobbitRow:
    T = InfoQuantity(HOBBIT_BITS, BITS)
    R = required_info(SelectionModel("ordered-buttons", n=HOBBIT_SENTENCES))
    return HobbitRow(f"sentences={HOBBIT_SENTENCES}", degree_of_possession(T, R, "hobbit"), "log2")


# -- chunking -------------------------------------------------------------------

CHUNK_BUDGET = 5
CHUNK_TARGET = "(or (and small red) (and circle blue))"
CHUNK_CORPUS = (
    "(or (and small red) circle)",
    "(not (and small red))",
    "(and (and small red) blue)",
    "(or (and circle blue) small)",
    "(not (and circle blue))",
    "(and (and circle blue) red)",
)


@dataclass(frozen=True)
class ChunkingResult:
    target: Term
    naive_size: int
    gain: GainReport
    target_witness: Term | None

    @property
    def target_new(self) -> bool:
        return self.target_witness is not None


def chunking_demo(search_limit: int = 7) -> ChunkingResult:
    """Learn two size-3 chunks from a small corpus and re-measure budget-5 expressiveness."""
    basis = DEFAULT_BASIS
    corpus = [parse_term(line, basis) for line in CHUNK_CORPUS]
    chunks = extract_chunks(corpus, 2, basis)
    gain = expressive_gain(basis, CHUNK_BUDGET, chunks)
    target = parse_term(CHUNK_TARGET, basis)
    table = BudgetedSpace(basis, 1).table_of(target)
    found, naive = contains_semantics(BudgetedSpace(basis, search_limit), table)
    naive_size = term_size(naive) if found else search_limit + 1
    witness = next((n.witness for n in gain.newly_expressible if n.table == table), None)
    return ChunkingResult(target, naive_size, gain, witness)


# -- dax ------------------------------------------------------------------------

DAX_TARGET = "(or small red)"
DAX_BUDGET = 3


def dax_data(seed: int = 0, target: str = DAX_TARGET):
    """Every feature object labeled by the target concept, in a seeded order."""
    basis = DEFAULT_BASIS
    t = parse_term(target, basis)
    objs = all_objects(DEFAULT_ATOMS)
    data = [(o, evaluate(t, o)) for o in objs]
    random.Random(seed).shuffle(data)
    return data


def dax_curves(seed: int = 0, epsilon: float = 0.0) -> dict[str, list[tuple[int, float]]]:
    space = BudgetedSpace(DEFAULT_BASIS, DAX_BUDGET)
    target = parse_term(DAX_TARGET, DEFAULT_BASIS)
    data = dax_data(seed)
    prior, like = PriorModel(), LikelihoodModel(epsilon)
    return {
        g: fixation_curve(space, prior, like, data, target, g) for g in (SEMANTIC, SYNTACTIC)
    }
