"""Elementary cellular automata (Wolfram numbering) on finite tapes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

FIXED_WHITE = "fixed-white"
CYCLIC = "cyclic"
BOUNDARIES = (FIXED_WHITE, CYCLIC)
MIN_WIDTH = 3


class TapeError(ValueError):
    pass


@dataclass(frozen=True)
class Tape:
    cells: tuple[int, ...]
    boundary: str = FIXED_WHITE

    def __post_init__(self):
        if self.boundary not in BOUNDARIES:
            raise TapeError(f"boundary must be one of {', '.join(BOUNDARIES)}")
        if any(c not in (0, 1) for c in self.cells):
            raise TapeError("cells must be 0 (white) or 1 (black)")

    @classmethod
    def from_string(cls, text: str, boundary: str = FIXED_WHITE) -> Tape:
        bad = set(text) - {"0", "1"}
        if bad:
            raise TapeError(f"tape may only contain 0 and 1, found {sorted(bad)}")
        return cls(tuple(int(ch) for ch in text), boundary)

    @classmethod
    def single_black(cls, width: int, boundary: str = FIXED_WHITE) -> Tape:
        cells = [0] * width
        cells[width // 2] = 1
        return cls(tuple(cells), boundary)

    def __len__(self) -> int:
        return len(self.cells)

    def __str__(self) -> str:
        return "".join(map(str, self.cells))

    def render(self) -> str:
        return "".join("#" if c else "." for c in self.cells)


@dataclass(frozen=True)
class RuleTable:
    rule_number: int
    mapping: dict[tuple[int, int, int], int]

    def __getitem__(self, neighborhood: tuple[int, int, int]) -> int:
        return self.mapping[neighborhood]


def rule_table(rule_number: int) -> RuleTable:
    if not 0 <= rule_number <= 255:
        raise ValueError("rule must be 0..255")
    mapping = {
        (l, c, r): (rule_number >> (4 * l + 2 * c + r)) & 1
        for l, c, r in product((0, 1), repeat=3)
    }
    return RuleTable(rule_number, mapping)


def _check_width(tape: Tape) -> None:
    if len(tape) < MIN_WIDTH:
        raise TapeError(f"tape needs at least {MIN_WIDTH} cells, got {len(tape)}")


def ca_step(tape: Tape, table: RuleTable) -> Tape:
    _check_width(tape)
    cells = tape.cells
    n = len(cells)
    if tape.boundary == CYCLIC:
        padded = (cells[-1],) + cells + (cells[0],)
    else:
        padded = (0,) + cells + (0,)
    new = tuple(table[padded[i], padded[i + 1], padded[i + 2]] for i in range(n))
    return Tape(new, tape.boundary)


def ca_step_bits(tape: Tape, rule_number: int) -> Tape:
    """Vectorized step that shifts the rule number by the neighborhood code.

    Independent of :func:`ca_step`'s lookup table; used to cross-check it.
    """
    _check_width(tape)
    x = np.asarray(tape.cells, dtype=np.int64)
    mode = "wrap" if tape.boundary == CYCLIC else "constant"
    p = np.pad(x, 1, mode=mode)
    code = (p[:-2] << 2) | (p[1:-1] << 1) | p[2:]
    out = (rule_number >> code) & 1
    return Tape(tuple(int(v) for v in out), tape.boundary)


def ca_run(tape: Tape, table: RuleTable, steps: int) -> list[Tape]:
    if steps < 0:
        raise ValueError("steps must be >= 0")
    _check_width(tape)
    rows = [tape]
    for _ in range(steps):
        rows.append(ca_step(rows[-1], table))
    return rows
