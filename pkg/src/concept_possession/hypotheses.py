"""Budgeted compositional closures over a Boolean concept language.

Concepts are terms over feature atoms (``small``, ``red``, ...) joined by
``and``, ``or`` and ``not``. A space holds every well-formed term of at
most ``budget`` symbols; named chunks count as one symbol each.

Truth tables are Python ints over the ``2**n`` feature objects of the
space's ``n`` atoms: object ``j`` makes atom ``i`` true iff bit ``i`` of
``j`` is set, and bit ``j`` of a table is the concept's value on object ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Callable, Iterator, Mapping

from .terms import Basis, Symbol, Term, make_basis, term_size

CONNECTIVES = {"and": 2, "or": 2, "not": 1}
DEFAULT_ATOMS = ("small", "red", "circle", "blue")


class EvaluationError(ValueError):
    pass


def concept_basis(atoms=DEFAULT_ATOMS, connectives=("and", "or", "not")) -> Basis:
    return make_basis([(a, 0) for a in atoms] + [(c, CONNECTIVES[c]) for c in connectives])


DEFAULT_BASIS = concept_basis()


@dataclass(frozen=True)
class FeatureObject:
    assignment: Mapping[str, bool]

    def __getitem__(self, atom: str) -> bool:
        try:
            return self.assignment[atom]
        except KeyError:
            raise EvaluationError(f"atom {atom!r} missing from feature assignment") from None

    def index(self, atoms: tuple[str, ...]) -> int:
        return sum(1 << i for i, a in enumerate(atoms) if self[a])

    def __str__(self) -> str:
        return " ".join(f"{k}={'T' if v else 'F'}" for k, v in self.assignment.items())


def all_objects(atoms: tuple[str, ...]) -> list[FeatureObject]:
    """Every feature object, listed so that position ``j`` has index ``j``."""
    return [
        FeatureObject({a: bool((j >> i) & 1) for i, a in enumerate(atoms)})
        for j in range(1 << len(atoms))
    ]


def evaluate(t: Term, obj: FeatureObject, basis: Basis | None = None) -> bool:
    """Boolean value of ``t`` on ``obj``; chunk symbols are looked up in ``basis``."""
    defs = basis.chunk_definitions if basis is not None else {}
    name = t.head.name
    if name in defs:
        return evaluate(defs[name], obj, basis)
    if name == "and" and len(t.children) == 2:
        return evaluate(t.children[0], obj, basis) and evaluate(t.children[1], obj, basis)
    if name == "or" and len(t.children) == 2:
        return evaluate(t.children[0], obj, basis) or evaluate(t.children[1], obj, basis)
    if name == "not" and len(t.children) == 1:
        return not evaluate(t.children[0], obj, basis)
    if t.children:
        raise EvaluationError(f"symbol {name!r} has no Boolean semantics")
    return obj[name]


def concept_atoms(basis: Basis) -> tuple[str, ...]:
    """Arity-0 primitives other than chunks: the features objects assign."""
    return tuple(s.name for s in basis.primitives if s.arity == 0)


def table_from_function(atoms: tuple[str, ...], fn: Callable[[FeatureObject], bool]) -> int:
    return sum(1 << j for j, obj in enumerate(all_objects(atoms)) if fn(obj))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` positive integers, lexicographic."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@dataclass(frozen=True)
class SemanticClass:
    table: int
    representative: Term
    members: tuple[Term, ...]

    @property
    def min_size(self) -> int:
        return term_size(self.representative)


@dataclass(frozen=True)
class BudgetedSpace:
    basis: Basis
    budget: int

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")

    @property
    def atoms(self) -> tuple[str, ...]:
        return concept_atoms(self.basis)

    @cached_property
    def by_size(self) -> tuple[tuple[Term, ...], ...]:
        """``by_size[n]`` holds all terms of exactly ``n`` symbols (index 0 empty)."""
        layers: list[tuple[Term, ...]] = [()]
        for n in range(1, self.budget + 1):
            layer = []
            for sym in self.basis.symbols:
                if sym.arity == 0:
                    if n == 1:
                        layer.append(Term(sym))
                    continue
                for sizes in _compositions(n - 1, sym.arity):
                    for kids in product(*(layers[k] for k in sizes)):
                        layer.append(Term(sym, kids))
            layers.append(tuple(layer))
        return tuple(layers)

    @cached_property
    def terms(self) -> tuple[Term, ...]:
        return tuple(t for layer in self.by_size for t in layer)

    @cached_property
    def index(self) -> dict[Term, int]:
        return {t: i for i, t in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, t: Term) -> bool:
        return t in self.index

    @cached_property
    def tables(self) -> tuple[int, ...]:
        """Truth table of every term, aligned with :attr:`terms`."""
        atoms = self.atoms
        full = (1 << (1 << len(atoms))) - 1
        atom_tables = {a: table_from_function(atoms, lambda o, a=a: o[a]) for a in atoms}
        defs = self.basis.chunk_definitions
        memo: dict[Term, int] = {}

        def tt(t: Term) -> int:
            got = memo.get(t)
            if got is not None:
                return got
            name = t.head.name
            if name in defs:
                v = tt(defs[name])
            elif name == "and" and len(t.children) == 2:
                v = tt(t.children[0]) & tt(t.children[1])
            elif name == "or" and len(t.children) == 2:
                v = tt(t.children[0]) | tt(t.children[1])
            elif name == "not" and len(t.children) == 1:
                v = full & ~tt(t.children[0])
            elif name in atom_tables:
                v = atom_tables[name]
            else:
                raise EvaluationError(f"symbol {name!r} has no Boolean semantics")
            memo[t] = v
            return v

        return tuple(tt(t) for t in self.terms)

    def table_of(self, t: Term) -> int:
        if t in self.index:
            return self.tables[self.index[t]]
        return truth_table(t, self.basis)


def truth_table(t: Term, basis: Basis) -> int:
    atoms = concept_atoms(basis)
    return table_from_function(atoms, lambda o: evaluate(t, o, basis))


def enumerate_closure(space: BudgetedSpace) -> Iterator[Term]:
    """Every term within budget exactly once, smallest first.

    Within a size, terms follow the basis symbol order, then the
    lexicographic order of child sizes, then the children themselves.
    """
    for layer in space.by_size:
        yield from layer


def semantic_classes(space: BudgetedSpace) -> list[SemanticClass]:
    groups: dict[int, list[Term]] = {}
    for t, tt in zip(space.terms, space.tables):
        groups.setdefault(tt, []).append(t)
    return [SemanticClass(tt, members[0], tuple(members)) for tt, members in groups.items()]


def contains_semantics(space: BudgetedSpace, target: int) -> tuple[bool, Term | None]:
    """Whether some term in the space denotes ``target``, with a smallest witness."""
    for t, tt in zip(space.terms, space.tables):
        if tt == target:
            return True, t
    return False, None


def minimal_witness_size(basis: Basis, target: int, max_budget: int) -> int | None:
    """Smallest budget at which ``target`` becomes expressible, searching up to ``max_budget``."""
    found, witness = contains_semantics(BudgetedSpace(basis, max_budget), target)
    return term_size(witness) if found else None


# -- labeled data files -------------------------------------------------------

def _flag(text: str) -> bool:
    if text in ("T", "t", "true", "1"):
        return True
    if text in ("F", "f", "false", "0"):
        return False
    raise ValueError(f"expected T or F, got {text!r}")


def parse_dataset(text: str) -> list[tuple[FeatureObject, bool]]:
    """Parse lines of the form ``label T ; small=T red=F ...``."""
    data = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, _, features = line.partition(";")
            keyword, label = head.split()
            if keyword != "label":
                raise ValueError("line must start with 'label'")
            assignment = {}
            for item in features.split():
                name, _, value = item.partition("=")
                assignment[name] = _flag(value)
            data.append((FeatureObject(assignment), _flag(label)))
        except ValueError as exc:
            raise ValueError(f"data line {lineno}: {exc}") from exc
    return data


def render_dataset(data) -> str:
    return "".join(f"label {'T' if y else 'F'} ; {obj}\n" for obj, y in data)


def load_dataset(path: str | Path) -> list[tuple[FeatureObject, bool]]:
    return parse_dataset(Path(path).read_text())


def format_table(table: int, atoms: tuple[str, ...]) -> str:
    """Truth table as a bit string, object 0 first."""
    return "".join(str((table >> j) & 1) for j in range(1 << len(atoms)))

