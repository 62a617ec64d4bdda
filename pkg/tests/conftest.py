import itertools

import pytest
from hypothesis import strategies as st

from concept_possession.terms import Basis, Symbol, Term, make_basis

ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture
def record_acceptance():
    def record(line: str) -> None:
        ACCEPTANCE_RESULTS.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


MIXED_BASIS = make_basis(
    [("a", 0), ("b", 0), ("c", 0), ("neg", 1), ("pair", 2), ("if3", 3)]
)


def terms_over(basis: Basis, max_leaves: int = 12):
    leaves = [s for s in basis.symbols if s.arity == 0]
    inner = [s for s in basis.symbols if s.arity > 0]
    leaf_st = st.sampled_from(leaves).map(Term)
    if not inner:
        return leaf_st

    def extend(children):
        return st.sampled_from(inner).flatmap(
            lambda s: st.tuples(*[children] * s.arity).map(lambda kids: Term(s, kids))
        )

    return st.recursive(leaf_st, extend, max_leaves=max_leaves)


def prefix_oracle(symbols: list[Symbol], budget: int) -> set[tuple[str, ...]]:
    """Every well-formed term up to ``budget`` symbols, as preorder name tuples.

    Generate-and-filter: try every symbol string of each length and keep the
    ones that form exactly one complete prefix-notation term.
    """
    out = set()
    for n in range(1, budget + 1):
        for seq in itertools.product(symbols, repeat=n):
            need = 1
            ok = True
            for i, s in enumerate(seq):
                need += s.arity - 1
                if need == 0 and i != n - 1:
                    ok = False
                    break
            if ok and need == 0:
                out.add(tuple(s.name for s in seq))
    return out


def preorder(t: Term) -> tuple[str, ...]:
    return tuple(s.head.name for s in t.subterms())
