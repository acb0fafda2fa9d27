"""Tense prediction accuracy, distribution/confusion reports, and corpus BLEU.

All counting is exact integer arithmetic; ratios are formed once at the end.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .tense_en import SentenceLabel, TenseCategory

__all__ = [
    "MODES",
    "AccuracyResult",
    "TenseDistribution",
    "ConfusionMatrix",
    "labels_equal",
    "tense_accuracy",
    "distribution",
    "confusion",
    "corpus_bleu",
    "NULL_LABEL",
]

MODES = ("sequence", "multiset", "set")
NULL_LABEL = "(none)"


def labels_equal(ref: SentenceLabel, hyp: SentenceLabel, mode: str) -> bool:
    """Label equality under the chosen reading of "same tense".

    sequence: ordered list equality; multiset: bag equality; set:
    deduplicated equality.  Two empty labels are equal in every mode.
    """
    if mode == "sequence":
        return ref.categories == hyp.categories
    if mode == "multiset":
        return Counter(ref.categories) == Counter(hyp.categories)
    if mode == "set":
        return set(ref.categories) == set(hyp.categories)
    raise ValueError(f"unknown comparison mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class AccuracyResult:
    n_correct: int
    n_total: int
    mode: str

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_total


def tense_accuracy(
    refs: Sequence[SentenceLabel],
    hyps: Sequence[SentenceLabel],
    mode: str = "multiset",
) -> AccuracyResult:
    """Fraction of hypotheses whose tense label matches the reference."""
    if len(refs) != len(hyps):
        raise ValueError(
            f"aligned label lists required: {len(refs)} refs vs {len(hyps)} hyps"
        )
    if not refs:
        raise ValueError("empty input: at least one label pair is required")
    if mode not in MODES:
        raise ValueError(f"unknown comparison mode {mode!r}; expected one of {MODES}")
    n_correct = sum(
        1 for ref, hyp in zip(refs, hyps) if labels_equal(ref, hyp, mode)
    )
    return AccuracyResult(n_correct, len(refs), mode)


@dataclass(frozen=True)
class TenseDistribution:
    counts: dict[TenseCategory, int]
    total: int

    @property
    def proportions(self) -> dict[TenseCategory, float]:
        return {cat: n / self.total for cat, n in self.counts.items()}


def distribution(labels: Sequence[SentenceLabel]) -> TenseDistribution:
    """Count every tense structure occurrence across all labels."""
    if not labels:
        raise ValueError("empty input: at least one label is required")
    counts: dict[TenseCategory, int] = {}
    for label in labels:
        for cat in label.categories:
            counts[cat] = counts.get(cat, 0) + 1
    total = sum(counts.values())
    if total == 0:
        raise ValueError("no tense structures found in the given labels")
    return TenseDistribution(counts, total)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Structure-level confusion over the seven categories plus a null bucket.

    Structures align by position only when the reference and hypothesis
    labels of a sentence have the same length; otherwise every structure of
    that sentence goes to the null bucket (null column for reference
    structures, null row for hypothesis structures).
    """

    labels: tuple[str, ...]
    counts: dict[tuple[str, str], int]
    aligned_total: int
    diagonal_total: int

    def cell(self, ref: str, hyp: str) -> int:
        return self.counts.get((ref, hyp), 0)

    @property
    def structure_accuracy(self) -> float | None:
        if self.aligned_total == 0:
            return None
        return self.diagonal_total / self.aligned_total

    def rows(self) -> list[list[int]]:
        return [
            [self.cell(r, c) for c in self.labels] for r in self.labels
        ]


def confusion(
    refs: Sequence[SentenceLabel], hyps: Sequence[SentenceLabel]
) -> ConfusionMatrix:
    if len(refs) != len(hyps):
        raise ValueError(
            f"aligned label lists required: {len(refs)} refs vs {len(hyps)} hyps"
        )
    counts: dict[tuple[str, str], int] = {}
    aligned_total = 0
    diagonal_total = 0
    for ref, hyp in zip(refs, hyps):
        if len(ref.categories) == len(hyp.categories):
            for r, h in zip(ref.categories, hyp.categories):
                counts[(r.value, h.value)] = counts.get((r.value, h.value), 0) + 1
                aligned_total += 1
                if r is h:
                    diagonal_total += 1
        else:
            for r in ref.categories:
                counts[(r.value, NULL_LABEL)] = (
                    counts.get((r.value, NULL_LABEL), 0) + 1
                )
            for h in hyp.categories:
                counts[(NULL_LABEL, h.value)] = (
                    counts.get((NULL_LABEL, h.value), 0) + 1
                )
    labels = tuple(c.value for c in TenseCategory) + (NULL_LABEL,)
    return ConfusionMatrix(labels, counts, aligned_total, diagonal_total)


# ------------------------------------------------------------------- BLEU

_TOKEN_RE = re.compile(r"[\w']+|[^\w\s]", re.UNICODE)


def bleu_tokenize(text: str) -> list[str]:
    """Deterministic BLEU tokenization: lowercase, punctuation split off."""
    return _TOKEN_RE.findall(text.lower())


def _ngram_counts(tokens: Sequence[str], order: int) -> Counter:
    return Counter(
        tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1)
    )


def corpus_bleu(
    refs: Sequence[str], hyps: Sequence[str], max_order: int = 4
) -> float:
    """Corpus-level BLEU in [0, 100]: geometric mean of n-gram precisions up
    to ``max_order`` with a brevity penalty; orders with zero matches get
    add-one smoothing.
    """
    if len(refs) != len(hyps):
        raise ValueError(
            f"aligned corpora required: {len(refs)} refs vs {len(hyps)} hyps"
        )
    if not refs:
        raise ValueError("empty input: at least one sentence pair is required")

    matches = [0] * max_order
    totals = [0] * max_order
    ref_len = 0
    hyp_len = 0
    for ref, hyp in zip(refs, hyps):
        ref_tokens = bleu_tokenize(ref)
        hyp_tokens = bleu_tokenize(hyp)
        ref_len += len(ref_tokens)
        hyp_len += len(hyp_tokens)
        for order in range(1, max_order + 1):
            hyp_counts = _ngram_counts(hyp_tokens, order)
            if not hyp_counts:
                continue
            ref_counts = _ngram_counts(ref_tokens, order)
            totals[order - 1] += sum(hyp_counts.values())
            matches[order - 1] += sum(
                min(count, ref_counts[gram]) for gram, count in hyp_counts.items()
            )

    if hyp_len == 0:
        return 0.0
    log_precision_sum = 0.0
    for m, t in zip(matches, totals):
        p = m / t if m > 0 else 1.0 / (t + 1)
        log_precision_sum += math.log(p)
    geo_mean = math.exp(log_precision_sum / max_order)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * geo_mean
