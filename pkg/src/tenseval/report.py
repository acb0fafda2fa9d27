"""Score-report rendering: delimited tables plus matplotlib figures.

Used by the CLI ``report`` subcommand; figures land next to the TSV/JSON
outputs so a run directory is self-contained.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .metrics import (
    AccuracyResult,
    ConfusionMatrix,
    TenseDistribution,
    confusion,
    distribution,
    tense_accuracy,
)
from .tense_en import SentenceLabel, TenseCategory

__all__ = [
    "write_distribution_tsv",
    "write_confusion_tsv",
    "render_distribution_figure",
    "render_confusion_figure",
    "write_report",
]

_CATEGORY_ORDER = [c.value for c in TenseCategory]


def write_distribution_tsv(
    dist: TenseDistribution, path: str | Path, header: Mapping[str, str] | None = None
) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for key, value in (header or {}).items():
            handle.write(f"# {key}={value}\n")
        handle.write("category\tcount\tproportion\n")
        for name in _CATEGORY_ORDER:
            cat = TenseCategory(name)
            count = dist.counts.get(cat, 0)
            handle.write(f"{name}\t{count}\t{count / dist.total:.4f}\n")
        handle.write(f"total\t{dist.total}\t1.0000\n")


def write_confusion_tsv(
    matrix: ConfusionMatrix, path: str | Path, header: Mapping[str, str] | None = None
) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for key, value in (header or {}).items():
            handle.write(f"# {key}={value}\n")
        handle.write("ref\\hyp\t" + "\t".join(matrix.labels) + "\n")
        for ref in matrix.labels:
            cells = "\t".join(str(matrix.cell(ref, hyp)) for hyp in matrix.labels)
            handle.write(f"{ref}\t{cells}\n")


def render_distribution_figure(
    dists: Mapping[str, TenseDistribution], path: str | Path
) -> None:
    """Grouped bar chart of per-category proportions, one group per corpus."""
    names = list(dists)
    x = np.arange(len(_CATEGORY_ORDER))
    width = 0.8 / max(1, len(names))
    fig, ax = plt.subplots(figsize=(8, 4))
    for k, name in enumerate(names):
        dist = dists[name]
        heights = [
            dist.counts.get(TenseCategory(cat), 0) / dist.total
            for cat in _CATEGORY_ORDER
        ]
        ax.bar(x + k * width, heights, width, label=name)
    ax.set_xticks(x + width * (len(names) - 1) / 2)
    ax.set_xticklabels(_CATEGORY_ORDER, rotation=30, ha="right")
    ax.set_ylabel("proportion of structures")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_confusion_figure(matrix: ConfusionMatrix, path: str | Path) -> None:
    data = np.array(matrix.rows(), dtype=float)
    fig, ax = plt.subplots(figsize=(6.5, 5.5))
    im = ax.imshow(data, cmap="Blues")
    ax.set_xticks(range(len(matrix.labels)))
    ax.set_yticks(range(len(matrix.labels)))
    ax.set_xticklabels(matrix.labels, rotation=45, ha="right")
    ax.set_yticklabels(matrix.labels)
    ax.set_xlabel("hypothesis")
    ax.set_ylabel("reference")
    for i in range(len(matrix.labels)):
        for j in range(len(matrix.labels)):
            value = int(data[i, j])
            if value:
                ax.text(
                    j, i, str(value), ha="center", va="center", fontsize=8,
                    color="white" if data[i, j] > data.max() / 2 else "black",
                )
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(
    refs: Sequence[SentenceLabel],
    hyps: Sequence[SentenceLabel],
    outdir: str | Path,
    mode: str = "multiset",
    metadata: Mapping[str, str] | None = None,
) -> dict[str, Path]:
    """Full evaluation report: accuracy record, distribution and confusion
    tables, and the corresponding figures.  Returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    metadata = dict(metadata or {})

    acc = tense_accuracy(refs, hyps, mode)
    matrix = confusion(refs, hyps)
    ref_dist = distribution(refs)
    hyp_dist = distribution(hyps)

    paths = {
        "report": outdir / "report.json",
        "distribution_ref": outdir / "distribution_ref.tsv",
        "distribution_hyp": outdir / "distribution_hyp.tsv",
        "confusion": outdir / "confusion.tsv",
        "distribution_figure": outdir / "distribution.png",
        "confusion_figure": outdir / "confusion.png",
    }

    record = {
        "metadata": metadata,
        "n_correct": acc.n_correct,
        "n_total": acc.n_total,
        "accuracy": acc.accuracy,
        "mode": acc.mode,
        "structure_accuracy": matrix.structure_accuracy,
        "ref_distribution": {c.value: n for c, n in ref_dist.counts.items()},
        "hyp_distribution": {c.value: n for c, n in hyp_dist.counts.items()},
    }
    with open(paths["report"], "w", encoding="utf-8") as handle:
        json.dump(record, handle, ensure_ascii=False, indent=2, sort_keys=True)
        handle.write("\n")

    write_distribution_tsv(ref_dist, paths["distribution_ref"], metadata)
    write_distribution_tsv(hyp_dist, paths["distribution_hyp"], metadata)
    write_confusion_tsv(matrix, paths["confusion"], metadata)
    render_distribution_figure(
        {"reference": ref_dist, "hypothesis": hyp_dist},
        paths["distribution_figure"],
    )
    render_confusion_figure(matrix, paths["confusion_figure"])
    return paths
