import logging
import math

import pytest

from concept_possession.chunks import (
    ChunkCandidate,
    duplicate_chunks,
    expressive_gain,
    extend_basis,
    extract_chunks,
    symbol_gain,
)
from concept_possession.hypotheses import DEFAULT_BASIS, BudgetedSpace, semantic_classes
from concept_possession.terms import BasisError, expand_chunks, parse_term, render_term, term_size

P = lambda text: parse_term(text, DEFAULT_BASIS)


def brute_force_scores(corpus_texts, n_symbols):
    """Count every parenthesized substring of the rendered corpus."""
    counts = {}
    for text in corpus_texts:
        for i, ch in enumerate(text):
            if ch != "(":
                continue
            depth = 0
            for j in range(i, len(text)):
                depth += {"(": 1, ")": -1}.get(text[j], 0)
                if depth == 0:
                    sub = text[i:j + 1]
                    counts[sub] = counts.get(sub, 0) + 1
                    break
    out = []
    for sub, n in counts.items():
        size = len(sub.replace("(", " ").replace(")", " ").split())
        gain = n * (size - 1) - (size + 1)
        if n >= 2 and gain > 0:
            out.append((-gain, size, sub, n, gain * math.log2(n_symbols)))
    return sorted(out)


CORPUS = [
    "(or (and small red) circle)",
    "(not (and small red))",
    "(and blue (and small red))",
    "(or (not circle) (and small red))",
    "(and (and small red) (or blue circle))",
]


def test_symbol_gain_formula():
    assert symbol_gain(5, 3) == 5 * 2 - 4
    assert symbol_gain(1, 3) < 0


def test_top_candidate_is_repeated_conjunction():
    chunks = extract_chunks([P(t) for t in CORPUS], 3, DEFAULT_BASIS)
    assert render_term(chunks[0].definition) == "(and small red)"
    assert chunks[0].usage_count == 5
    assert chunks[0].symbol_gain == 6
    assert chunks[0].mdl_gain == pytest.approx(6 * math.log2(7))


def test_extract_matches_exhaustive_scoring():
    corpus = CORPUS + ["(or (not circle) blue)", "(and (or (not circle) blue) red)",
                       "(or (not circle) blue)"]
    got = extract_chunks([P(t) for t in corpus], 10, DEFAULT_BASIS)
    oracle = brute_force_scores(corpus, len(DEFAULT_BASIS))
    assert [(render_term(c.definition), c.usage_count) for c in got] == [(o[2], o[3]) for o in oracle][:10]
    for c, o in zip(got, oracle):
        assert c.mdl_gain == pytest.approx(o[4])


def test_distinct_leaves_give_nothing():
    assert extract_chunks([P("small"), P("red"), P("blue")], 5) == []


def test_max_zero():
    assert extract_chunks([P(t) for t in CORPUS], 0) == []


def test_single_use_not_a_candidate():
    assert extract_chunks([P("(and (or small red) (not blue))")], 3) == []


def test_tie_break_by_size_then_text():
    corpus = [P(t) for t in ["(or (and small red) (and circle blue))"] * 2]
    chunks = extract_chunks(corpus, 5, DEFAULT_BASIS)
    # The whole term (size 7, gain 2*6-8=4) outranks the size-3 parts (gain 0, excluded).
    assert [render_term(c.definition) for c in chunks] == ["(or (and small red) (and circle blue))"]
    corpus = [P(t) for t in ["(not (and circle blue))", "(not (and small red))"] * 3]
    names = [render_term(c.definition) for c in extract_chunks(corpus, 5, DEFAULT_BASIS)]
    # Equal gains and sizes: lexicographic.
    assert names == ["(not (and circle blue))", "(not (and small red))",
                     "(and circle blue)", "(and small red)"]
    # Equal gains (3*3-5 == 4*2-4): the smaller definition first.
    corpus = [P("(not (and circle blue))")] * 3 + [P("(or (and circle blue) small)")]
    chunks = extract_chunks(corpus, 5, DEFAULT_BASIS)
    assert [(render_term(c.definition), c.symbol_gain) for c in chunks] == [
        ("(and circle blue)", 4), ("(not (and circle blue))", 4)]


def test_extract_is_deterministic():
    corpus = [P(t) for t in CORPUS]
    assert extract_chunks(corpus, 4) == extract_chunks(list(corpus), 4)


def test_extend_one_chunk():
    basis = extend_basis(DEFAULT_BASIS, [P("(and small red)")])
    assert len(basis) == len(DEFAULT_BASIS) + 1
    assert basis.lookup("c1").arity == 0
    assert len(DEFAULT_BASIS.chunks) == 0


def test_extend_layered():
    first = extend_basis(DEFAULT_BASIS, [P("(and small red)")])
    layered = extend_basis(first, [parse_term("(or c1 blue)", first)])
    assert [s.name for s, _ in layered.chunks] == ["c1", "c2"]
    t = parse_term("(not c2)", layered)
    assert render_term(expand_chunks(t, layered)) == "(not (or (and small red) blue))"


def test_extend_unknown_symbol():
    other = extend_basis(DEFAULT_BASIS, [P("(and small red)")])
    with pytest.raises(BasisError, match="cannot add chunk"):
        extend_basis(DEFAULT_BASIS, [parse_term("(not c1)", other)])


def test_extend_duplicate_is_named_and_flagged(caplog):
    with caplog.at_level(logging.WARNING):
        basis = extend_basis(DEFAULT_BASIS, [P("(and small red)"), P("(and small red)")])
    assert [s.name for s, _ in basis.chunks] == ["c1", "c2"]
    assert duplicate_chunks(basis) == [("c2", "c1")]
    assert "duplicates" in caplog.text
    report = expressive_gain(DEFAULT_BASIS, 2, [P("(and small red)"), P("(and small red)")])
    assert report.duplicates == (("c2", "c1"),)


def test_extend_accepts_candidates():
    cand = ChunkCandidate(P("(and small red)"), 3, 1.0, 2)
    assert extend_basis(DEFAULT_BASIS, [cand]).chunk_definitions["c1"] == P("(and small red)")


def test_empty_chunk_list_is_identity():
    r = expressive_gain(DEFAULT_BASIS, 3, [])
    assert r.before == r.after and r.newly_expressible == ()


def test_two_chunk_scenario():
    chunks = [P("(and small red)"), P("(and circle blue)")]
    report = expressive_gain(DEFAULT_BASIS, 5, chunks)
    target = BudgetedSpace(DEFAULT_BASIS, 1).table_of(P("(or (and small red) (and circle blue))"))
    hits = [n for n in report.newly_expressible if n.table == target]
    assert len(hits) == 1
    assert term_size(hits[0].witness) == 3
    assert hits[0].expanded_size == 7
    assert report.after > report.before


def test_redundant_chunks_can_add_nothing():
    # Chunks that already fit, at a budget where every class they could
    # build is already reachable.
    r = expressive_gain(DEFAULT_BASIS, 2, [P("(not small)")])
    assert r.newly_expressible == ()
    assert len(BudgetedSpace(r.basis, 2)) > len(BudgetedSpace(DEFAULT_BASIS, 2))


@pytest.mark.parametrize("budget", [1, 2, 3, 4])
def test_gain_invariants(budget):
    chunks = [P("(and small red)"), P("(or circle (not blue))")]
    r = expressive_gain(DEFAULT_BASIS, budget, chunks)
    before = {c.table for c in semantic_classes(BudgetedSpace(DEFAULT_BASIS, budget))}
    after = {c.table for c in semantic_classes(BudgetedSpace(r.basis, budget))}
    assert before <= after
    assert r.after >= r.before
    for new in r.newly_expressible:
        assert new.expanded_size > budget
        assert new.table in after - before


def test_gain_rejects_mismatched_atoms():
    with pytest.raises(ValueError):
        expressive_gain(DEFAULT_BASIS, 2, [], atoms={"small"})
    assert expressive_gain(DEFAULT_BASIS, 1, [], atoms={"small", "red", "circle", "blue"}).before == 4
