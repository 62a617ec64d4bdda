"""Command-line entry point.

Each subcommand prints a plain-text report. With ``--out FILE`` it also
writes a tab-separated record file and, where the command has one, a PNG
figure next to it (``FILE`` with a ``.png`` suffix).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import report
from .ca import BOUNDARIES, FIXED_WHITE, Tape, TapeError, ca_run, rule_table
from .chunks import expressive_gain, extend_basis, extract_chunks
from .demos import (
    CHUNK_BUDGET,
    CHUNK_TARGET,
    DAX_BUDGET,
    DAX_TARGET,
    HOBBIT_BITS,
    chunking_demo,
    dax_curves,
    hobbit_rows,
    hobbit_sentences_log2,
)
from .hypotheses import (
    DEFAULT_BASIS,
    BudgetedSpace,
    enumerate_closure,
    format_table,
    load_dataset,
    semantic_classes,
)
from .inference import GRANULARITIES, SEMANTIC, LikelihoodModel, PriorModel, fixation_curve
from .possession import (
    BITS,
    InfoQuantity,
    SelectionModel,
    degree_of_possession,
    required_info,
)
from .sk import sk_normalize, sk_parse, sk_render
from .terms import load_basis, parse_term, render_basis, render_term, term_size

DEMOS = ("hobbit", "chunking", "dax")


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    out: Path | None = None
    figure: bool = True
    seed: int = 0

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> ExperimentConfig:
        params = {k: v for k, v in vars(ns).items()
                  if k not in ("command", "out", "no_figure", "seed")}
        return cls(ns.command, params, ns.out, not getattr(ns, "no_figure", False),
                   getattr(ns, "seed", 0))

    def __getitem__(self, key: str) -> Any:
        return self.params.get(key)


def validate(config: ExperimentConfig) -> list[str]:
    """Diagnostics for out-of-range parameters and missing input files."""
    diags = []
    p = config.params
    if p.get("rule") is not None and not 0 <= p["rule"] <= 255:
        diags.append(f"--rule: rule must be 0..255 (got {p['rule']})")
    if p.get("epsilon") is not None and not 0 <= p["epsilon"] < 0.5:
        diags.append(f"--epsilon: epsilon must be in [0, 0.5) (got {p['epsilon']})")
    if p.get("budget") is not None and p["budget"] < 1:
        diags.append(f"--budget: budget must be >= 1 (got {p['budget']})")
    if p.get("fuel") is not None and p["fuel"] < 1:
        diags.append(f"--fuel: fuel must be >= 1 (got {p['fuel']})")
    if p.get("steps") is not None and p["steps"] < 0:
        diags.append(f"--steps: steps must be >= 0 (got {p['steps']})")
    if p.get("max") is not None and p["max"] < 0:
        diags.append(f"--max: max must be >= 0 (got {p['max']})")
    if p.get("total_bits") is not None and p["total_bits"] < 0:
        diags.append(f"--total-bits: total bits must be >= 0 (got {p['total_bits']})")
    tape = p.get("tape")
    if tape is not None:
        if set(tape) - {"0", "1"}:
            diags.append("--tape: tape must be a string of 0 and 1")
        elif len(tape) < 3:
            diags.append(f"--tape: tape needs at least 3 cells (got {len(tape)})")
    for key in ("basis", "corpus", "data"):
        path = p.get(key)
        if path is not None and not Path(path).is_file():
            diags.append(f"--{key}: file not found: {path}")
    return diags


# -- subcommands ----------------------------------------------------------------

def _basis(config):
    return load_basis(config["basis"]) if config["basis"] else DEFAULT_BASIS


def cmd_reduce(config):
    trace = sk_normalize(sk_parse(config["term"]), config["fuel"])
    shown = trace.steps if config["trace"] else trace.steps[-1:]
    text = "\n".join(sk_render(t) for t in shown)
    print(f"status: {trace.status} after {len(trace)} step(s)", file=sys.stderr)
    records = [{"step": i, "term": sk_render(t), "status": trace.status}
               for i, t in enumerate(trace.steps)]
    return text, records, None


def cmd_ca(config):
    tape = Tape.from_string(config["tape"], config["boundary"])
    rows = ca_run(tape, rule_table(config["rule"]), config["steps"])
    text = "\n".join(r.render() if config["render"] else str(r) for r in rows)
    records = [{"row": i, "cells": str(r)} for i, r in enumerate(rows)]

    def figure(path):
        report.plot_ca([r.cells for r in rows], path, f"rule {config['rule']}")

    return text, records, figure


def cmd_enumerate(config):
    basis = _basis(config)
    space = BudgetedSpace(basis, config["budget"])
    if not config["classes"]:
        terms = list(enumerate_closure(space))
        records = [{"size": term_size(t), "term": render_term(t)} for t in terms]
        text = "\n".join(render_term(t) for t in terms)
        return text, records, None
    classes = sorted(semantic_classes(space), key=lambda c: space.index[c.representative])
    atoms = space.atoms
    rows = [(format_table(c.table, atoms), c.min_size, len(c.members), render_term(c.representative))
            for c in classes]
    text = report.render_table(("table", "size", "members", "representative"), rows)
    text += f"\n{len(space)} terms, {len(classes)} classes at budget {config['budget']}"
    records = [{"table": r[0], "min_size": r[1], "members": r[2], "representative": r[3]}
               for r in rows]

    def figure(path):
        pts = [(b, len(semantic_classes(BudgetedSpace(basis, b))))
               for b in range(1, config["budget"] + 1)]
        report.plot_class_counts({"classes": pts}, path, "semantic classes by budget")

    return text, records, figure


def cmd_learn(config):
    basis = _basis(config)
    space = BudgetedSpace(basis, config["budget"])
    data = load_dataset(config["data"])
    target = parse_term(config["target"], basis)
    curve = fixation_curve(space, PriorModel(), LikelihoodModel(config["epsilon"]), data,
                           target, config["granularity"])
    text = report.render_table(("examples_seen", "R_bits"), [(n, report.fmt_bits(r)) for n, r in curve])
    records = [{"examples_seen": n, "R_bits": r} for n, r in curve]

    def figure(path):
        report.plot_fixation({config["granularity"]: curve}, path, render_term(target))

    return text, records, figure


def cmd_learn_chunks(config):
    basis = _basis(config)
    lines = [ln for ln in Path(config["corpus"]).read_text().splitlines()
             if ln.split("#", 1)[0].strip()]
    corpus = [parse_term(ln.split("#", 1)[0], basis) for ln in lines]
    chunks = extract_chunks(corpus, config["max"], basis)
    extended = extend_basis(basis, chunks)
    names = [s.name for s, _ in extended.chunks[len(basis.chunks):]]
    rows = [(name, render_term(c.definition), c.usage_count, c.symbol_gain, report.fmt_bits(c.mdl_gain))
            for name, c in zip(names, chunks)]
    text = report.render_table(("name", "definition", "uses", "gain_symbols", "gain_bits"), rows)
    records = [{"kind": "chunk", "name": n, "definition": render_term(c.definition),
                "usage_count": c.usage_count, "symbol_gain": c.symbol_gain, "mdl_gain_bits": c.mdl_gain}
               for n, c in zip(names, chunks)]
    if config["write_basis"]:
        Path(config["write_basis"]).write_text(render_basis(extended))
    figure = None
    if config["budget"]:
        gain = expressive_gain(basis, config["budget"], chunks)
        text += "\n\n" + _gain_text(gain)
        records += _gain_records(gain)
        figure = _gain_figure(basis, chunks, config["budget"])
    return text, records, figure


def _gain_text(gain) -> str:
    lines = [report.render_table(
        ("budget", "before", "after", "new"),
        [(gain.budget, gain.before, gain.after, len(gain.newly_expressible))])]
    for a, b in gain.duplicates:
        lines.append(f"warning: chunk {a} duplicates {b}")
    return "\n".join(lines)


def _gain_records(gain) -> list[dict]:
    recs = [{"kind": "gain", "budget": gain.budget, "before": gain.before, "after": gain.after,
             "new": len(gain.newly_expressible)}]
    atoms = tuple(s.name for s in gain.basis.primitives if s.arity == 0)
    recs += [{"kind": "new", "table": format_table(n.table, atoms), "witness": render_term(n.witness),
              "expanded_size": n.expanded_size} for n in gain.newly_expressible]
    return recs


def _gain_figure(basis, chunks, budget):
    def figure(path):
        extended = extend_basis(basis, chunks)
        series = {
            label: [(b, len(semantic_classes(BudgetedSpace(bb, b)))) for b in range(1, budget + 1)]
            for label, bb in (("primitives only", basis), ("with chunks", extended))
        }
        report.plot_class_counts(series, path, "expressible concepts")
    return figure


def parse_model(spec: str) -> SelectionModel:
    kind, _, arg = spec.partition(":")
    if kind == "ordered-buttons":
        if not arg.isdigit():
            raise UsageError("--model: ordered-buttons needs a count, e.g. ordered-buttons:19")
        return SelectionModel(kind, n=int(arg))
    if kind == "one-button":
        if arg and not arg.isdigit():
            raise UsageError("--model: one-button takes an optional action count")
        return SelectionModel(kind, action_count=int(arg) if arg else 1)
    if kind == "keyboard":
        chars, _, bpc = arg.partition(":")
        try:
            return SelectionModel(kind, symbol_count=int(chars), bits_per_symbol=float(bpc))
        except ValueError:
            raise UsageError("--model: keyboard needs CHARS:BITS_PER_CHAR, e.g. keyboard:489000:1.2") from None
    if kind == "restricted-space":
        return SelectionModel(kind)
    raise UsageError(f"--model: unknown model {kind!r}; expected keyboard, one-button, "
                     "ordered-buttons:N or restricted-space")


def cmd_possess(config):
    model = parse_model(config["model"])
    if model.kind == "restricted-space" and config["target"]:
        basis = _basis(config)
        space = BudgetedSpace(basis, config["budget"] or 3)
        model = SelectionModel("restricted-space", space=space, target=parse_term(config["target"], basis))
    R = required_info(model)
    rep = degree_of_possession(InfoQuantity(config["total_bits"], BITS), R, model.label)
    text = report.render_table(
        ("model", "T_bits", "R_bits", "degree_bits", "fraction"),
        [(model.label, report.fmt_bits(rep.T.value), report.fmt_bits(rep.R.value),
          report.fmt_bits(rep.degree), report.fmt_percent(rep.fraction))])
    records = [{"model": model.label, "T_bits": rep.T.value, "R_bits": rep.R.value,
                "degree_bits": rep.degree, "fraction": rep.fraction}]
    return text, records, None


def _demo_hobbit(config):
    rows = hobbit_rows()
    alt = hobbit_sentences_log2()
    table_rows = [(r.model, report.fmt_bits(r.report.T.value), report.fmt_bits(r.report.R.value),
                   report.fmt_bits(r.report.degree), report.fmt_percent(r.report.fraction))
                  for r in rows]
    last = rows[-1].report
    printed_R = round(last.R.value)
    lines = [
        "note: the sentence row uses ln(4850!) = "
        f"{report.fmt_bits(last.R.value)}, the value printed as 36,316 bits; "
        f"log2(4850!) = {report.fmt_bits(alt.report.R.value)} bits would give degree "
        f"{report.fmt_bits(alt.report.degree)} ({report.fmt_percent(alt.report.fraction)})",
        report.render_table(("model", "T_bits", "R_bits", "degree_bits", "fraction"), table_rows),
        f"as printed: {HOBBIT_BITS:,} - {printed_R:,} = {HOBBIT_BITS - printed_R:,} bits, "
        f"or {100 * (HOBBIT_BITS - printed_R) / HOBBIT_BITS:.0f}%",
    ]
    records = [{"model": r.model, "R_log": r.r_unit_note, "T_bits": r.report.T.value,
                "R_bits": r.report.R.value, "degree_bits": r.report.degree,
                "fraction": r.report.fraction} for r in rows + [alt]]

    def figure(path):
        report.plot_possession([r.model for r in rows], [r.report.T.value for r in rows],
                               [r.report.R.value for r in rows], path, "The Hobbit word processors")

    return "\n".join(lines), records, figure


def _demo_chunking(config):
    res = chunking_demo()
    gain = res.gain
    chunk_lines = [f"{s.name} := {render_term(d)}" for s, d in gain.basis.chunks]
    lines = [
        "learned chunks: " + "; ".join(chunk_lines),
        _gain_text(gain),
        f"target {render_term(res.target)}: minimal chunk-free size {res.naive_size} "
        f"> budget {CHUNK_BUDGET}",
        f"after chunking: witness {render_term(res.target_witness) if res.target_witness else 'none'}"
        f" (size {term_size(res.target_witness) if res.target_witness else '-'})",
    ]
    records = _gain_records(gain)
    records.append({"kind": "target", "target": CHUNK_TARGET, "naive_size": res.naive_size,
                    "witness": render_term(res.target_witness) if res.target_witness else None,
                    "newly_expressible": res.target_new})
    return "\n".join(lines), records, _gain_figure(DEFAULT_BASIS, [d for _, d in gain.basis.chunks],
                                                   CHUNK_BUDGET)


def _demo_dax(config):
    curves = dax_curves(config.seed, config["epsilon"] or 0.0)
    sem, syn = curves[SEMANTIC], curves["syntactic"]
    rows = [(n, report.fmt_bits(r1), report.fmt_bits(r2)) for (n, r1), (_, r2) in zip(sem, syn)]
    text = (f"target {DAX_TARGET}, budget {DAX_BUDGET}, seed {config.seed}\n"
            + report.render_table(("examples_seen", "R_semantic", "R_syntactic"), rows))
    records = [{"examples_seen": n, "R_semantic_bits": r1, "R_syntactic_bits": r2}
               for (n, r1), (_, r2) in zip(sem, syn)]

    def figure(path):
        report.plot_fixation(curves, path, f"dax = {DAX_TARGET}")

    return text, records, figure


def cmd_demo(config):
    return {"hobbit": _demo_hobbit, "chunking": _demo_chunking, "dax": _demo_dax}[config["name"]](config)


COMMANDS = {
    "reduce": cmd_reduce,
    "ca": cmd_ca,
    "enumerate": cmd_enumerate,
    "learn": cmd_learn,
    "learn-chunks": cmd_learn_chunks,
    "possess": cmd_possess,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="concept-possession", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", type=Path, help="write a tab-separated record file (and figure)")
        p.add_argument("--no-figure", action="store_true", help="skip the figure next to --out")
        return p

    p = add("reduce", "normalize an SK term")
    p.add_argument("term")
    p.add_argument("--fuel", type=int, default=100)
    p.add_argument("--trace", action="store_true", help="print every intermediate term")

    p = add("ca", "run an elementary cellular automaton")
    p.add_argument("--rule", type=int, default=110)
    p.add_argument("--tape", required=True)
    p.add_argument("--steps", type=int, default=16)
    p.add_argument("--boundary", choices=BOUNDARIES, default=FIXED_WHITE)
    p.add_argument("--render", action="store_true", help="draw cells as . and #")

    p = add("enumerate", "list a budgeted compositional closure")
    p.add_argument("--basis")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--classes", action="store_true", help="group terms by truth table")

    p = add("learn", "fixation curve of a target concept")
    p.add_argument("--basis")
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--granularity", choices=GRANULARITIES, default=SEMANTIC)

    p = add("learn-chunks", "extract chunks from a corpus of terms")
    p.add_argument("--basis")
    p.add_argument("--corpus", required=True)
    p.add_argument("--max", type=int, default=2)
    p.add_argument("--write-basis", help="write the extended basis file here")
    p.add_argument("--budget", type=int, help="also report expressive gain at this budget")

    p = add("possess", "degree of possession under a selection model")
    p.add_argument("--model", required=True,
                   help="keyboard:CHARS:BPC | one-button[:ACTIONS] | ordered-buttons:N | restricted-space")
    p.add_argument("--total-bits", type=float, required=True)
    p.add_argument("--basis")
    p.add_argument("--budget", type=int)
    p.add_argument("--target", help="restricted-space target term")

    p = add("demo", "built-in experiments")
    p.add_argument("name", choices=DEMOS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float)
    return parser


def run(config: ExperimentConfig) -> int:
    diags = validate(config)
    if diags:
        for d in diags:
            print(f"error: {d}", file=sys.stderr)
        return 2
    try:
        text, records, figure = COMMANDS[config.subcommand](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TapeError, OSError) as exc:
        print(f"error: {config.subcommand}: {exc}", file=sys.stderr)
        return 1
    print(text)
    if config.out is not None:
        report.write_records(config.out, records)
        if figure is not None and config.figure:
            figure(report.figure_path(config.out))
    return 0


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(ExperimentConfig.from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
