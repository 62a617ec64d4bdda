"""Terms over a named basis of primitives and chunks.

A term is a rooted ordered tree whose nodes are symbols of fixed arity.
The canonical text form is parenthesized prefix notation with single
spaces, leaves unparenthesized::

    (or small red)
    (cause x (go y up))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator


class TermError(ValueError):
    """Malformed term text or a term that does not fit its basis."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BasisError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __post_init__(self):
        if not self.name or any(ch.isspace() or ch in "()" for ch in self.name):
            raise BasisError(f"invalid symbol name {self.name!r}")
        if self.arity < 0:
            raise BasisError(f"symbol {self.name!r} has negative arity")


@dataclass(frozen=True)
class Term:
    head: Symbol
    children: tuple[Term, ...] = ()

    def __post_init__(self):
        if len(self.children) != self.head.arity:
            raise TermError(
                f"{self.head.name} expects {self.head.arity} argument(s), "
                f"got {len(self.children)}"
            )

    def __str__(self) -> str:
        return render_term(self)

    def subterms(self) -> Iterator[Term]:
        """Yield every subterm, preorder, including ``self``."""
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.children))

    def symbols(self) -> set[str]:
        return {t.head.name for t in self.subterms()}


def leaf(symbol: Symbol) -> Term:
    return Term(symbol, ())


@dataclass(frozen=True)
class Basis:
    """Primitives plus an ordered, layered list of named chunks.

    Chunk definitions may only mention primitives or chunks defined
    earlier in the list, which guarantees that expansion terminates.
    """

    primitives: tuple[Symbol, ...]
    chunks: tuple[tuple[Symbol, Term], ...] = ()
    _index: dict[str, Symbol] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: dict[str, Symbol] = {}
        for sym in self.primitives:
            if sym.name in index:
                raise BasisError(f"duplicate symbol {sym.name!r}")
            index[sym.name] = sym
        for sym, definition in self.chunks:
            if sym.name in index:
                raise BasisError(f"duplicate symbol {sym.name!r}")
            if sym.arity != 0:
                raise BasisError(f"chunk {sym.name!r} must be closed (arity 0)")
            for node in definition.subterms():
                known = index.get(node.head.name)
                if known is None:
                    raise BasisError(
                        f"chunk {sym.name!r} references undefined symbol "
                        f"{node.head.name!r}"
                    )
                if known != node.head:
                    raise BasisError(f"arity clash for {node.head.name!r}")
            index[sym.name] = sym
        object.__setattr__(self, "_index", index)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        """All symbols in enumeration order: primitives, then chunks."""
        return self.primitives + tuple(sym for sym, _ in self.chunks)

    @property
    def chunk_definitions(self) -> dict[str, Term]:
        return {sym.name: d for sym, d in self.chunks}

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def lookup(self, name: str) -> Symbol:
        try:
            return self._index[name]
        except KeyError:
            raise BasisError(f"unknown symbol {name!r}") from None

    def is_chunk(self, name: str) -> bool:
        return any(sym.name == name for sym, _ in self.chunks)

    def with_chunk(self, name: str, definition: Term) -> Basis:
        return Basis(self.primitives, self.chunks + ((Symbol(name, 0), definition),))


def make_basis(primitives: Iterable[tuple[str, int]], chunks=()) -> Basis:
    """Convenience constructor from ``(name, arity)`` pairs.

    ``chunks`` is a sequence of ``(name, term_text)`` pairs parsed in order,
    each against the basis built so far.
    """
    basis = Basis(tuple(Symbol(n, a) for n, a in primitives))
    for name, text in chunks:
        basis = basis.with_chunk(name, parse_term(text, basis))
    return basis


def parse_term(text: str, basis: Basis) -> Term:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the regex matches any non-space
            raise TermError("unexpected character", pos)
        kind = "(" if m.group(1) else ")" if m.group(2) else "atom"
        tokens.append((kind, m.group(3), m.start(m.lastindex)))
        pos = m.end()
    if not tokens:
        raise TermError("empty term", 0)

    i = 0

    def parse() -> Term:
        nonlocal i
        if i >= len(tokens):
            raise TermError("unbalanced parentheses: unexpected end", len(text))
        kind, name, at = tokens[i]
        i += 1
        if kind == ")":
            raise TermError("unbalanced parentheses: unexpected ')'", at)
        if kind == "atom":
            sym = _resolve(name, at)
            if sym.arity != 0:
                raise TermError(
                    f"arity mismatch: {name} expects {sym.arity} argument(s), got 0", at
                )
            return Term(sym)
        if i >= len(tokens) or tokens[i][0] != "atom":
            raise TermError("expected a symbol after '('", tokens[i][2] if i < len(tokens) else len(text))
        _, name, head_at = tokens[i]
        i += 1
        sym = _resolve(name, head_at)
        children = []
        while True:
            if i >= len(tokens):
                raise TermError("unbalanced parentheses: missing ')'", len(text))
            if tokens[i][0] == ")":
                i += 1
                break
            children.append(parse())
        if len(children) != sym.arity or sym.arity == 0:
            raise TermError(
                f"arity mismatch: {name} expects {sym.arity} argument(s), "
                f"got {len(children)}",
                head_at,
            )
        return Term(sym, tuple(children))

    def _resolve(name: str, at: int) -> Symbol:
        if name not in basis:
            raise TermError(f"unknown symbol {name!r}", at)
        return basis.lookup(name)

    term = parse()
    if i != len(tokens):
        raise TermError("trailing input after term", tokens[i][2])
    return term


def render_term(t: Term) -> str:
    if not t.children:
        return t.head.name
    return "(" + " ".join([t.head.name, *(render_term(c) for c in t.children)]) + ")"


def term_size(t: Term) -> int:
    """Node count; a chunk symbol counts once, unexpanded."""
    return sum(1 for _ in t.subterms())


def expand_chunks(t: Term, basis: Basis) -> Term:
    defs = basis.chunk_definitions
    cache: dict[str, Term] = {}

    def expand(node: Term) -> Term:
        name = node.head.name
        if name in defs:
            if name not in cache:
                cache[name] = expand(defs[name])
            return cache[name]
        if name not in basis:
            raise BasisError(f"undefined chunk symbol {name!r}")
        if not node.children:
            return node
        return Term(node.head, tuple(expand(c) for c in node.children))

    return expand(t)


# -- basis files -------------------------------------------------------------

def parse_basis(text: str) -> Basis:
    """Read the line format ``prim <name> <arity>`` / ``chunk <name> <arity> = <term>``.

    Blank lines and ``#`` comments are ignored.
    """
    basis = Basis(())
    prims: list[Symbol] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("prim "):
                _, name, arity = line.split()
                prims.append(Symbol(name, int(arity)))
                basis = Basis(tuple(prims), basis.chunks)
            elif line.startswith("chunk "):
                lhs, rhs = line.split("=", 1)
                _, name, arity = lhs.split()
                if int(arity) != 0:
                    raise BasisError(f"chunk {name!r} must have arity 0")
                basis = basis.with_chunk(name, parse_term(rhs.strip(), basis))
            else:
                raise BasisError(f"unrecognized directive {line.split()[0]!r}")
        except (ValueError, TermError) as exc:
            raise BasisError(f"line {lineno}: {exc}") from exc
    return basis


def render_basis(basis: Basis) -> str:
    lines = [f"prim {s.name} {s.arity}" for s in basis.primitives]
    lines += [f"chunk {s.name} 0 = {render_term(d)}" for s, d in basis.chunks]
    return "\n".join(lines) + "\n"


def load_basis(path: str | Path) -> Basis:
    return parse_basis(Path(path).read_text())
