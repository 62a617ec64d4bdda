"""Plain-text tables, tab-delimited record files, and matplotlib figures."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# Strip the version stamp so figures are byte-stable across runs.
_PNG_METADATA = {"Software": None}


def fmt_bits(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.4f}"


def fmt_percent(fraction: float | None) -> str:
    return "n/a" if fraction is None else f"{100 * fraction:.2f}%"


def render_table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out += [line(r) for r in rows]
    return "\n".join(out)


def _cell(v: Any) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if v is None:
        return ""
    return str(v)


def write_records(path: str | Path, records: Sequence[Mapping[str, Any]]) -> Path:
    """One tab-separated record per result row; floats at full precision."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields: list[str] = []
    for r in records:
        fields += [k for k in r if k not in fields]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(fields)
        for r in records:
            w.writerow([_cell(r.get(k)) for k in fields])
    return path


def read_records(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh, delimiter="\t"))


def figure_path(out: str | Path) -> Path:
    return Path(out).with_suffix(".png")


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def plot_ca(rows: Sequence[Sequence[int]], path: str | Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(max(3, len(rows[0]) / 6), max(2, len(rows) / 6)))
    ax.imshow(rows, cmap="Greys", interpolation="nearest", vmin=0, vmax=1)
    ax.set_xticks([])
    ax.set_ylabel("step")
    ax.set_title(title)
    return _save(fig, path)


def plot_fixation(curves: Mapping[str, Sequence[tuple[int, float]]], path: str | Path,
                  title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for label, curve in curves.items():
        xs = [n for n, r in curve if math.isfinite(r)]
        ys = [r for _, r in curve if math.isfinite(r)]
        ax.step(xs, ys, where="post", marker="o", ms=3, label=label)
    ax.set_xlabel("examples seen")
    ax.set_ylabel("R (bits)")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path)


def plot_possession(labels: Sequence[str], totals: Sequence[float], required: Sequence[float],
                    path: str | Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ys = range(len(labels))
    held = [t - r if math.isfinite(r) else 0.0 for t, r in zip(totals, required)]
    ax.barh(ys, held, color="0.3", label="possessed (T - R)")
    ax.barh(ys, [min(r, t) if math.isfinite(r) else t for t, r in zip(totals, required)],
            left=held, color="0.8", label="required (R)")
    ax.set_yticks(list(ys), labels)
    ax.invert_yaxis()
    ax.set_xlabel("bits")
    ax.set_title(title)
    ax.legend(frameon=False, fontsize="small")
    fig.tight_layout()
    return _save(fig, path)


def plot_class_counts(series: Mapping[str, Sequence[tuple[int, int]]], path: str | Path,
                      title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for label, pts in series.items():
        ax.plot([b for b, _ in pts], [c for _, c in pts], marker="o", label=label)
    ax.set_xlabel("symbol budget")
    ax.set_ylabel("distinct concepts")
    ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    return _save(fig, path)
