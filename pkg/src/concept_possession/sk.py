"""SK combinatory logic with normal-order (leftmost-outermost) reduction.

Two rewrite rules drive everything::

    K x y   => x
    S x y z => x z (y z)

Lowercase tokens are free atoms and never reduce.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

NORMAL_FORM = "normal-form"
FUEL_EXHAUSTED = "fuel-exhausted"


class SkSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UndecodableError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fun: SkTerm
    arg: SkTerm

    def __str__(self) -> str:
        return sk_render(self)


SkTerm = Union[Atom, App]

S = Atom("S")
K = Atom("K")
I = App(App(S, K), K)


def apply(f: SkTerm, *args: SkTerm) -> SkTerm:
    for a in args:
        f = App(f, a)
    return f


def sk_render(t: SkTerm) -> str:
    """Left-associated rendering; only right-nested applications get parentheses."""
    if isinstance(t, Atom):
        return t.name
    parts = []
    while isinstance(t, App):
        parts.append(t.arg)
        t = t.fun
    out = [t.name]
    for a in reversed(parts):
        out.append(a.name if isinstance(a, Atom) else f"({sk_render(a)})")
    return " ".join(out)


_SK_TOKEN = re.compile(r"\s*(?:(\()|(\))|([SK])|([a-z][a-z0-9_]*))")


def sk_parse(text: str) -> SkTerm:
    pos = 0
    end = len(text.rstrip())

    def skip() -> None:
        nonlocal pos
        while pos < end and text[pos].isspace():
            pos += 1

    def parse_seq(closing: bool, start: int) -> SkTerm:
        nonlocal pos
        term = None
        while True:
            skip()
            if pos >= end:
                if closing:
                    raise SkSyntaxError("missing ')'", pos)
                break
            if text[pos] == ")":
                if not closing:
                    raise SkSyntaxError("unexpected ')'", pos)
                pos += 1
                break
            if text[pos] == "(":
                pos += 1
                item = parse_seq(True, pos - 1)
            else:
                m = _SK_TOKEN.match(text, pos)
                if m is None or m.group(3) is None and m.group(4) is None:
                    raise SkSyntaxError(f"unexpected character {text[pos]!r}", pos)
                item = Atom(m.group(3) or m.group(4))
                pos = m.end()
            term = item if term is None else App(term, item)
        if term is None:
            raise SkSyntaxError("empty expression", start)
        return term

    return parse_seq(False, 0)


def _spine(t: SkTerm) -> tuple[SkTerm, list[SkTerm]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def sk_step(t: SkTerm) -> SkTerm | None:
    """Contract the leftmost-outermost redex once; ``None`` if there is none."""
    head, args = _spine(t)
    if head == K and len(args) >= 2:
        return apply(args[0], *args[2:])
    if head == S and len(args) >= 3:
        x, y, z = args[:3]
        return apply(App(App(x, z), App(y, z)), *args[3:])
    for i, a in enumerate(args):
        reduced = sk_step(a)
        if reduced is not None:
            return apply(head, *args[:i], reduced, *args[i + 1:])
    return None


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[SkTerm, ...]
    status: str

    @property
    def result(self) -> SkTerm:
        return self.steps[-1]

    def __len__(self) -> int:
        return len(self.steps) - 1


def sk_normalize(t: SkTerm, fuel: int) -> ReductionTrace:
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    steps = [t]
    for _ in range(fuel):
        nxt = sk_step(steps[-1])
        if nxt is None:
            return ReductionTrace(tuple(steps), NORMAL_FORM)
        steps.append(nxt)
    status = NORMAL_FORM if sk_step(steps[-1]) is None else FUEL_EXHAUSTED
    return ReductionTrace(tuple(steps), status)


# -- encodings ---------------------------------------------------------------

TRUE = K
FALSE = App(S, K)
# B f g x => f (g x); used for the Church successor S B.
B = apply(S, App(K, S), K)
SUCC = App(S, B)
ZERO = App(K, I)
MAX_NAT = 10


def sk_encode(value) -> SkTerm:
    """Encode a boolean, a natural number up to 10, or a 2-tuple of encodables.

    SK terms pass through unchanged so pairs of free atoms can be built.
    A pair ``(a, b)`` becomes ``S (S I (K a)) (K b)``, which behaves as
    ``λf. f a b``: applied to ``K`` it yields ``a``, to ``S K`` it yields ``b``.
    Naturals are Church numerals built as ``n`` applications of ``S B`` to
    ``K I``.
    """
    if isinstance(value, (Atom, App)):
        return value
    if isinstance(value, bool):
        return TRUE if value else FALSE
    if isinstance(value, int):
        if not 0 <= value <= MAX_NAT:
            raise ValueError(f"natural {value} outside supported range 0..{MAX_NAT}")
        term = ZERO
        for _ in range(value):
            term = App(SUCC, term)
        return term
    if isinstance(value, tuple) and len(value) == 2:
        a, b = (sk_encode(v) for v in value)
        return apply(S, apply(S, I, App(K, a)), App(K, b))
    raise ValueError(f"cannot encode {value!r}")


def _fresh_atoms(t: SkTerm, count: int) -> list[Atom]:
    used = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, App):
            stack += [node.fun, node.arg]
        else:
            used.add(node.name)
    out, i = [], 0
    while len(out) < count:
        name = f"v{i}"
        if name not in used:
            out.append(Atom(name))
        i += 1
    return out


def sk_decode_bool(t: SkTerm, fuel: int = 1000) -> bool:
    a, b = _fresh_atoms(t, 2)
    trace = sk_normalize(apply(t, a, b), fuel)
    if trace.status == NORMAL_FORM:
        if trace.result == a:
            return True
        if trace.result == b:
            return False
    raise UndecodableError(f"{sk_render(t)} does not select between two arguments")


def sk_decode_nat(t: SkTerm, fuel: int = 10_000) -> int:
    f, x = _fresh_atoms(t, 2)
    trace = sk_normalize(apply(t, f, x), fuel)
    n, cur = 0, trace.result
    while isinstance(cur, App) and cur.fun == f:
        n, cur = n + 1, cur.arg
    if trace.status != NORMAL_FORM or cur != x:
        raise UndecodableError(f"{sk_render(t)} is not a Church numeral")
    return n
